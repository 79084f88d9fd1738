"""Enumerate minimal cycle types and save the catalog as JSON."""
from __future__ import annotations

import argparse
from collections import Counter

from fareylab.lprime import enumerate_cycle_types


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-vertices", type=int, default=8)
    ap.add_argument("--out", default="cycle_catalog.json")
    args = ap.parse_args()
    cat = enumerate_cycle_types(args.max_vertices)
    cat.save(args.out)
    sizes = Counter(t.graph.vertex_count for t in cat.types)
    print(f"{len(cat.types)} types written to {args.out}")
    for k in sorted(sizes):
        print(f"  {k} vertices: {sizes[k]}")


if __name__ == "__main__":
    main()
