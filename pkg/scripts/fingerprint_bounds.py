"""Find coordinate-wise minimal fingerprint bounds separating F_m inside F_n."""
from __future__ import annotations

import argparse
import time

from fareylab import build_level
from fareylab.lprime import FingerprintBounds, separating_bounds


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--host", type=int, default=5, help="level of the ambient Farey graph")
    ap.add_argument("--inner", type=int, default=3, help="level whose vertices must be separated")
    ap.add_argument("--start", type=int, nargs=4, default=FingerprintBounds().as_tuple(),
                    metavar=("CYCLE", "DELTA", "EPS", "LEVEL"))
    args = ap.parse_args()
    g = build_level(args.host).graph
    targets = range(2 ** (args.inner + 1))
    t0 = time.perf_counter()
    bounds = separating_bounds(g, (0, 1, 2), targets, FingerprintBounds(*args.start))
    took = time.perf_counter() - t0
    if bounds is None:
        print(f"start bounds {tuple(args.start)} do not separate ({took:.1f}s)")
    else:
        print(f"minimal bounds (cycle, delta, eps, level) = {bounds.as_tuple()} ({took:.1f}s)")


if __name__ == "__main__":
    main()
