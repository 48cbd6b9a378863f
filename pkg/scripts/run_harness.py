#!/usr/bin/env python3
"""Run the full statement catalog over its default scopes and print a verdict table.

Usage:
    python scripts/run_harness.py [--max-order 4] [--json]

Exit code 0 when everything confirms, 2 when anything is refuted.
"""
import argparse
import json

from agfuzzy.harness import default_scope, verdict_to_dict, verify
from agfuzzy.statements import CATALOG_IDS, get_statement


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-order", type=int, default=4)
    parser.add_argument("--json", action="store_true", help="emit one verdict JSON per line")
    args = parser.parse_args()

    refuted = []
    for stmt_id in CATALOG_IDS:
        stmt = get_statement(stmt_id)
        verdict = verify(stmt, default_scope(stmt, max_order=args.max_order))
        if args.json:
            print(json.dumps(verdict_to_dict(verdict), separators=(", ", ": ")))
        else:
            print(f"{stmt_id:16s} {verdict.status:22s} structures={verdict.structures:4d} "
                  f"checks={verdict.samples:9d} wall={verdict.wall_time:7.1f}s")
        if verdict.status == "refuted":
            refuted.append(stmt_id)
    if refuted and not args.json:
        print("refuted:", ", ".join(refuted))
    return 2 if refuted else 0


if __name__ == "__main__":
    raise SystemExit(main())
