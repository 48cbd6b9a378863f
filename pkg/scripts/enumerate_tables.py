#!/usr/bin/env python3
"""Census of small LA-semigroups: counts per order and hypothesis-class breakdown.

Usage:
    python scripts/enumerate_tables.py [--max-order 4]
"""
import argparse
import time

from agfuzzy.enumeration import EnumSpec, enumerate_tables
from agfuzzy.harness import structure_hypotheses


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-order", type=int, default=4)
    args = parser.parse_args()

    header = f"{'order':>5} {'raw':>8} {'iso':>6} {'left id':>8} {'weakly':>7} {'w+e':>5} {'regular':>8} {'intra':>6}"
    print(header)
    print("-" * len(header))
    for order in range(1, args.max_order + 1):
        start = time.perf_counter()
        raw = sum(1 for _ in enumerate_tables(EnumSpec(order, isomorph_reject=False)))
        reps = list(enumerate_tables(EnumSpec(order)))
        hyp = [structure_hypotheses(t) for t in reps]
        left_id = sum("left_identity" in h for h in hyp)
        weakly = sum("weakly_regular" in h for h in hyp)
        weakly_e = sum("weakly_regular" in h and "left_identity" in h for h in hyp)
        regular = sum("regular" in h for h in hyp)
        intra = sum("intra_regular" in h for h in hyp)
        elapsed = time.perf_counter() - start
        print(f"{order:>5} {raw:>8} {len(reps):>6} {left_id:>8} {weakly:>7} {weakly_e:>5} "
              f"{regular:>8} {intra:>6}   ({elapsed:.1f} s)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
