"""Expand each base kappa2 instance k times under P, then reduce it back,
printing the anchor and length at every round.

    python3 scripts/reduction_demo.py --times 2
"""

import argparse

from leech.blocks import reduce_fully, round_bound, shift_to_flush
from leech.pattern import KAPPA2
from leech.search import SearchBounds, search_instances


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--times", type=int, default=2, help="number of P-expansions")
    ap.add_argument("--base-depth", type=int, default=3)
    args = ap.parse_args()

    first = {}
    for inst in search_instances(KAPPA2, SearchBounds(7, args.base_depth)).instances:
        first.setdefault(inst.assignment, inst)

    for s, base in sorted(first.items(), key=lambda kv: kv[0].sort_key()):
        inst = base
        for _ in range(args.times):
            inst = inst.expand()
        _, plan = shift_to_flush(inst)
        chain = reduce_fully(inst)
        print(f"{s}: shift m={plan.m}, {len(chain) - 1} rounds (bound {round_bound(len(inst))})")
        for step in chain:
            print(f"    depth {step.depth}  anchor {step.anchor:>8}  length {len(step):>6}")
        assert chain[-1] == base


if __name__ == "__main__":
    main()
