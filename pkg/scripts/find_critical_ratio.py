"""Pin the critical coefficient ratio z = b/(-a) of the standing-wave branch.

The quadratic bounds on the normalized index change sign at
(107 + 9 sqrt(237))/26 ~ 9.44436 (last z certified stable) and
(517 + 9 sqrt(5385))/112 ~ 10.51288 (first z certified unstable); the
bisection locates the actual crossing of the numeric index inside that gap.

Usage:
    python scripts/find_critical_ratio.py [--grid-n 1024] [--tol 1e-4]
"""

from __future__ import annotations

import argparse
import json
import math
from pathlib import Path

from pulsestab import build_grid, critical_ratio_bisection

BOUND_STABLE = (107.0 + 9.0 * math.sqrt(237.0)) / 26.0
BOUND_UNSTABLE = (517.0 + 9.0 * math.sqrt(5385.0)) / 112.0


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--grid-n", type=int, default=1024)
    parser.add_argument("--grid-len", type=float, default=100.0)
    parser.add_argument("--zmin", type=float, default=9.0)
    parser.add_argument("--zmax", type=float, default=11.0)
    parser.add_argument("--tol", type=float, default=1e-4)
    parser.add_argument("--out", type=str, default="results/critical_ratio.json")
    args = parser.parse_args()

    grid = build_grid(args.grid_n, args.grid_len)
    result = critical_ratio_bisection(args.zmin, args.zmax, args.tol, grid)

    print(f"analytic bracket: stable below {BOUND_STABLE:.5f}, unstable above {BOUND_UNSTABLE:.5f}")
    print(f"numeric crossing: z* = {result.z_star:.6f} "
          f"(bracket [{result.bracket_lo:.6f}, {result.bracket_hi:.6f}], "
          f"{result.evaluations} index evaluations)")

    payload = {
        "z_star": result.z_star,
        "bracket_lo": result.bracket_lo,
        "bracket_hi": result.bracket_hi,
        "iterations": result.iterations,
        "evaluations": result.evaluations,
        "grid_n": args.grid_n,
        "grid_len": args.grid_len,
        "tol": args.tol,
        "analytic_stable_below": BOUND_STABLE,
        "analytic_unstable_above": BOUND_UNSTABLE,
    }
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(payload, indent=2) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
