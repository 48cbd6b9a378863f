"""Command-line surface: check, classify, enumerate, verify, example."""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import harness
from .classifiers import classify_fuzzy, verdict_to_dict
from .enumeration import (
    DEFAULT_SEED,
    EnumSpec,
    canonical_key,
    enumerate_tables,
    passes_filters,
    raw_tables_pinned,
    table_from_key,
    thresholds_grid,
)
from .errors import BudgetExceeded, GradeError, HypothesisMismatch, TableFormatError
from .fuzzy import FuzzySubset, Thresholds, as_grade, compose, fuzzy_from_json, leq, meet
from .magma import (
    CONDITIONAL_LAWS_NOTE,
    CayleyTable,
    CrispSubset,
    check_laws,
    classify_crisp,
    regularity,
    table_from_json,
    table_to_dict,
)
from .statements import CATALOG, CATALOG_IDS

EXIT_OK = 0
EXIT_FILE_ERROR = 1
EXIT_REFUTED = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64

WORKERS_ENV = "AGFUZZY_WORKERS"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(obj: dict, fmt: str, text_lines) -> None:
    if fmt == "json":
        print(json.dumps(obj, separators=(", ", ": ")))
    else:
        for line in text_lines:
            print(line)


def _load_table(path: str) -> CayleyTable:
    return table_from_json(Path(path).read_text())


def _load_fuzzy(path: str) -> FuzzySubset:
    return fuzzy_from_json(Path(path).read_text())


def _parse_subset(spec: str, order: int) -> CrispSubset:
    """Inline '0,2,3' (0-based indices) or a JSON file holding {"indices": [...]}."""
    text = spec.strip()
    if text and all(c.isdigit() or c == "," for c in text):
        indices = [int(tok) for tok in text.split(",") if tok]
    else:
        obj = json.loads(Path(spec).read_text())
        if not isinstance(obj, dict) or "indices" not in obj:
            raise ValueError(f'subset file {spec!r} must hold an object with an "indices" list')
        indices = obj["indices"]
    return CrispSubset.from_indices(order, indices)


def _law_dict(table: CayleyTable) -> dict:
    rep = check_laws(table)
    return {
        "left_invertive": rep.left_invertive,
        "left_invertive_violation": rep.left_invertive_violation and list(rep.left_invertive_violation),
        "medial": rep.medial,
        "medial_violation": rep.medial_violation and list(rep.medial_violation),
        "paramedial": rep.paramedial,
        "paramedial_violation": rep.paramedial_violation and list(rep.paramedial_violation),
        "extended": rep.extended,
        "extended_violation": rep.extended_violation and list(rep.extended_violation),
        "left_identities": list(rep.left_identities),
        "note": CONDITIONAL_LAWS_NOTE,
    }


def _regularity_dict(table: CayleyTable) -> dict:
    rep = regularity(table)
    return {
        "regular": rep.regular,
        "regular_witnesses": [w for w in rep.regular_witnesses],
        "intra_regular": rep.intra_regular,
        "intra_regular_witnesses": [w and list(w) for w in rep.intra_regular_witnesses],
        "weakly_regular": rep.weakly_regular,
        "weakly_regular_witnesses": [w and list(w) for w in rep.weakly_regular_witnesses],
    }


def _cmd_check(args) -> int:
    table = _load_table(args.magma)
    laws = _law_dict(table)
    reg = _regularity_dict(table)
    lab = table.label

    def law_line(name: str, holds: bool, violation) -> str:
        if holds:
            return f"{name}: holds"
        pretty = ", ".join(lab(x) for x in violation)
        return f"{name}: FAILS at ({pretty})"

    lines = [
        law_line("left invertive law (ab)c = (cb)a", laws["left_invertive"], laws["left_invertive_violation"]),
        law_line("medial law (ab)(cd) = (ac)(bd)", laws["medial"], laws["medial_violation"]),
        law_line("paramedial law (ab)(cd) = (db)(ca)", laws["paramedial"], laws["paramedial_violation"]),
        law_line("extended law a(bc) = b(ac)", laws["extended"], laws["extended_violation"]),
        "left identities: " + (", ".join(lab(e) for e in laws["left_identities"]) or "none"),
        f"note: {CONDITIONAL_LAWS_NOTE}",
        f"regular: {reg['regular']}",
        f"intra-regular: {reg['intra_regular']}",
        f"weakly regular: {reg['weakly_regular']}",
    ]
    _emit({"laws": laws, "regularity": reg}, args.format, lines)
    return EXIT_OK if laws["left_invertive"] else EXIT_REFUTED


def _cmd_classify(args) -> int:
    table = _load_table(args.magma)
    lab = table.label
    if args.what == "crisp":
        subset = _parse_subset(args.subset, table.order)
        rep = classify_crisp(table, subset)
        fields = (
            ("la_subsemigroup", rep.la_subsemigroup, rep.la_subsemigroup_violation),
            ("left_ideal", rep.left_ideal, rep.left_ideal_violation),
            ("right_ideal", rep.right_ideal, rep.right_ideal_violation),
            ("two_sided_ideal", rep.two_sided_ideal, rep.two_sided_ideal_violation),
            ("bi_ideal", rep.bi_ideal, rep.bi_ideal_violation),
            ("generalized_bi_ideal", rep.generalized_bi_ideal, rep.generalized_bi_ideal_violation),
            ("quasi_ideal", rep.quasi_ideal, rep.quasi_ideal_violation),
            ("interior_ideal", rep.interior_ideal, rep.interior_ideal_violation),
        )
        obj = {
            "subset": list(subset.indices()),
            "classes": {
                name: {"verdict": holds, "violation": violation and list(violation)}
                for name, holds, violation in fields
            },
        }
        lines = [f"subset {{{', '.join(lab(x) for x in subset.indices())}}}"]
        for name, holds, violation in fields:
            if holds:
                lines.append(f"  {name}: yes")
            else:
                lines.append(f"  {name}: no (witness {', '.join(lab(x) for x in violation)})")
        _emit(obj, args.format, lines)
        return EXIT_OK
    mu = _load_fuzzy(args.fuzzy)
    th = Thresholds(as_grade(args.gamma), as_grade(args.delta))
    report = classify_fuzzy(table, mu, th)
    obj = {
        "thresholds": {"gamma": str(th.gamma), "delta": str(th.delta)},
        "classes": [verdict_to_dict(v) for v in report.verdicts],
    }
    lines = [f"thresholds {th}"]
    for v in report.verdicts:
        if v.holds:
            lines.append(f"  {v.kind.value}: yes")
        else:
            viol = v.violation
            pretty = ", ".join(lab(x) for x in viol.elements)
            lines.append(
                f"  {v.kind.value}: no ({viol.part} at ({pretty}): {viol.lhs} < {viol.rhs}; "
                f"{v.violation_count} violations)"
            )
    _emit(obj, args.format, lines)
    return EXIT_OK


def _parallel_raw(order: int, workers: int):
    with ProcessPoolExecutor(max_workers=workers) as pool:
        chunks = pool.map(raw_tables_pinned, [order] * order, range(order))
        for chunk in chunks:
            yield from chunk


def _cmd_enumerate(args) -> int:
    workers = args.workers or int(os.environ.get(WORKERS_ENV, "1"))
    spec = EnumSpec(
        order=args.order,
        require_left_identity=args.left_identity,
        filters=frozenset(args.filter or ()),
        isomorph_reject=not args.raw,
        cell_budget=args.budget,
    )
    if workers > 1 and args.budget is not None:
        print("error: --budget requires --workers 1", file=sys.stderr)
        return EXIT_USAGE

    def tables():
        if workers <= 1:
            yield from enumerate_tables(spec)
            return
        accepted = (
            CayleyTable(spec.order, rows)
            for rows in _parallel_raw(spec.order, workers)
        )
        filtered = (t for t in accepted if passes_filters(t, spec))
        if not spec.isomorph_reject:
            yield from filtered
            return
        keys = sorted({canonical_key(t) for t in filtered})
        for key in keys:
            yield table_from_key(key, spec.order)

    if args.count_only:
        raw = 0
        keys = set()
        raw_spec = EnumSpec(
            order=spec.order,
            require_left_identity=spec.require_left_identity,
            filters=spec.filters,
            isomorph_reject=False,
            cell_budget=spec.cell_budget,
        )
        source = (
            (CayleyTable(spec.order, rows) for rows in _parallel_raw(spec.order, workers))
            if workers > 1 else enumerate_tables(raw_spec)
        )
        for table in source:
            if workers > 1 and not passes_filters(table, raw_spec):
                continue
            raw += 1
            keys.add(canonical_key(table))
        summary = {"order": spec.order, "raw": raw, "up_to_iso": len(keys)}
        _emit(summary, args.format, [f"order {spec.order}: {raw} raw tables, {len(keys)} up to isomorphism"])
        return EXIT_OK
    for table in tables():
        print(json.dumps(table_to_dict(table), separators=(", ", ": ")))
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.id not in CATALOG:
        print(f"unknown statement id {args.id!r}; catalog:", file=sys.stderr)
        for sid in CATALOG_IDS:
            print(f"  {sid}: {CATALOG[sid].title}", file=sys.stderr)
        return EXIT_USAGE
    stmt = CATALOG[args.id]
    overrides = {"thresholds": thresholds_grid(args.gamma_delta_grid), "denominator": args.grid, "seed": args.seed}
    if args.random is not None:
        seed_text, _, count_text = args.random.partition(",")
        overrides.update(mode="random", seed=int(seed_text), random_count=int(count_text or "10000"))
    if args.magma is not None:
        scope = harness.Scope(structures=(_load_table(args.magma),), **overrides)
    else:
        scope = harness.default_scope(stmt, max_order=args.order, **overrides)
    verdict = harness.verify(stmt, scope, budget=args.budget)
    obj = harness.verdict_to_dict(verdict)
    lines = [
        f"{verdict.id}: {verdict.status}",
        f"  structures checked: {verdict.structures}",
        f"  quantifier checks:  {verdict.samples}",
        f"  coverage: {json.dumps(verdict.coverage_dict())}",
    ]
    if verdict.counterexample is not None:
        lines.append("  counterexample: " + json.dumps(harness.counterexample_to_dict(verdict.counterexample)))
    _emit(obj, args.format, lines)
    return EXIT_OK if verdict.status.startswith("confirmed") else EXIT_REFUTED


def _cmd_example(args) -> int:
    ex = harness.worked_example()
    checks = ex.checks()
    prod = compose(ex.table, ex.mu, ex.nu)
    m = meet(ex.mu, ex.nu)
    obj = {
        "table": table_to_dict(ex.table),
        "mu": {"den": 10, "num": [3, 2, 6, 3]},
        "nu": {"den": 10, "num": [4, 3, 4, 5]},
        "product_at_4": str(prod[3]),
        "meet_at_4": str(m[3]),
        "product_not_below_meet": not leq(prod, m),
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks],
    }
    lines = [
        f"(mu o nu)(4) = {prod[3]}",
        f"(mu ^ nu)(4) = {m[3]}",
        f"product not <= meet: {'TRUE' if not leq(prod, m) else 'FALSE'}",
    ]
    lines += [f"{'PASS' if c.passed else 'FAIL'}  {c.name}" for c in checks]
    _emit(obj, args.format, lines)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_REFUTED


def build_parser() -> _Parser:
    parser = _Parser(prog="agfuzzy", description="Finite LA-semigroup and threshold fuzzy ideal toolkit.")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="law and regularity report for a magma file")
    p.add_argument("magma")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("classify", help="classify a crisp or fuzzy subset")
    what = p.add_subparsers(dest="what", required=True)
    crisp = what.add_parser("crisp")
    crisp.add_argument("magma")
    crisp.add_argument("subset", help="comma-separated 0-based indices, or a JSON file")
    crisp.set_defaults(fn=_cmd_classify)
    fuzzy = what.add_parser("fuzzy")
    fuzzy.add_argument("magma")
    fuzzy.add_argument("fuzzy")
    fuzzy.add_argument("--gamma", required=True, help="exact fraction p/q or terminating decimal")
    fuzzy.add_argument("--delta", required=True)
    fuzzy.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("enumerate", help="generate LA-semigroups of one order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--left-identity", action="store_true")
    p.add_argument("--filter", action="append", choices=("regular", "intra_regular", "weakly_regular"))
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--raw", action="store_true", help="emit raw tables instead of isomorphism-class representatives")
    p.add_argument("--budget", type=int, default=None, help="cell-assignment budget")
    p.add_argument("--workers", type=int, default=None, help=f"worker count (default ${WORKERS_ENV} or 1)")
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("verify", help="verify one catalog statement")
    p.add_argument("id")
    p.add_argument("--order", type=int, default=4, help="check structures of order 1..N (default 4)")
    p.add_argument("--magma", default=None, help="check one explicit magma file instead")
    p.add_argument("--grid", type=int, default=4, help="grade grid denominator")
    p.add_argument("--random", default=None, metavar="SEED,COUNT", help="random fuzzy sampling instead of the grid")
    p.add_argument("--gamma-delta-grid", type=int, default=4, help="threshold grid denominator")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("example", help="replay the bundled worked example")
    p.set_defaults(fn=_cmd_example)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.fn(args)
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename}", file=sys.stderr)
        return EXIT_FILE_ERROR
    except HypothesisMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TableFormatError, GradeError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FILE_ERROR
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    raise SystemExit(main())
