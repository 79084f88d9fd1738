"""Solution counts of lozenge atoms across Farey levels.

Prints the single-atom count P_lozenge(x, a) per level (grows without bound)
and pair counts P_lozenge(x, a) & P_lozenge(x, b) (stabilise once F_3 is
fixed as the core).
"""
from __future__ import annotations

import argparse
import itertools

from fareylab import build_level
from fareylab.lprime import DeltaSequence, count_solutions, enumerate_cycle_types


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-level", type=int, default=7)
    ap.add_argument("--core", type=int, default=0)
    args = ap.parse_args()
    loz = DeltaSequence((enumerate_cycle_types(8).get("lozenge"),))
    graphs = {n: build_level(n).graph for n in range(1, args.max_level + 1)}
    print("level  single")
    for n, g in graphs.items():
        print(f"{n:5d}  {count_solutions(g, [(loz, args.core)])}")
    print("\npairs in F_3 with a solution at level 4:")
    for a, b in itertools.combinations(range(16), 2):
        counts = [count_solutions(graphs[n], [(loz, a), (loz, b)]) for n in range(4, args.max_level + 1)]
        if counts[0]:
            print(f"  ({a:2d},{b:2d})  {counts}")


if __name__ == "__main__":
    main()
