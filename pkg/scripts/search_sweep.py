"""Time kappa-pattern searches over keyword bounds and prefix depths.

    python3 scripts/search_sweep.py --depths 3 4 5 --max-keyword 3 5 7
"""

import argparse
import time

from leech.pattern import NAMED_PATTERNS
from leech.search import SearchBounds, search_instances


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depths", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--max-keyword", type=int, nargs="+", default=[3, 7])
    args = ap.parse_args()

    print(f"{'pattern':<8} {'depth':>5} {'max':>4} {'instances':>10} {'assignments':>12} {'seconds':>8}")
    for name, p in NAMED_PATTERNS.items():
        for depth in args.depths:
            for k in args.max_keyword:
                t = time.perf_counter()
                res = search_instances(p, SearchBounds(k, depth))
                dt = time.perf_counter() - t
                print(f"{name:<8} {depth:>5} {k:>4} {len(res):>10} {len(res.assignments):>12} {dt:>8.2f}")


if __name__ == "__main__":
    main()
