"""Factor and rigidity census of the Leech word for a range of lengths.

    python3 scripts/census.py --max-length 10 --depth 5
"""

import argparse

from leech.blocks import StabilizationError
from leech.search import rigidity_census
from leech.words import factor_set


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-length", type=int, default=10)
    ap.add_argument("--depth", type=int, default=5)
    args = ap.parse_args()

    print(f"{'m':>3} {'factors':>8} {'orbits':>7} {'rigid':>6} {'stable':>7}  nonrigid orbits")
    for m in range(1, args.max_length + 1):
        fs = factor_set(m, args.depth)
        try:
            c = rigidity_census(m, args.depth)
        except StabilizationError:
            print(f"{m:>3} {len(fs):>8} {len(fs.orbits()):>7} {'-':>6} {'no':>7}")
            continue
        shown = " ".join(c.nonrigid_orbits)
        if len(shown) > 60:
            shown = shown[:57] + "..."
        print(f"{m:>3} {c.total:>8} {len(c.orbits):>7} {len(c.rigid):>6} {'yes':>7}  {shown}")


if __name__ == "__main__":
    main()
