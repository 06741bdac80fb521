"""Command-line front end: ingest hypergraph JSON, run sweeps, emit reports.

Subcommands: check-tu, cover-ideal, ai-table, reg-table, delta-table,
verify.  Reports are written atomically and contain no timestamps, so two
runs with the same configuration are byte-identical.  Exit codes: 0 all
checks passed, 1 a check failed, 2 usage/input error or refused budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .cohomology import (
    DEFAULT_SCAN_BUDGET,
    MethodDisagreement,
    NEG_INF,
    ai_patterns_table,
    ai_oracle_table,
    ai_table,
    field_label,
    fit_linear,
    is_finite,
    verify_theorems,
)
from .exactlin import CapExceeded
from .hypergraph import (
    DEFAULT_TU_CAP,
    Hypergraph,
    ValidationError,
    is_totally_unimodular,
)
from .monomial import cover_ideal, krull_dim_quotient, monomial_str, symbolic_power_cover
from .polytopes import EdgePattern, delta_sequence, dual_fit


@dataclass
class ExperimentConfig:
    s_max: int | None
    t_max: int | None
    field: int | None
    method: str
    tu_cap: int
    scan_budget: int
    out_dir: Path | None
    formats: tuple[str, ...]


def _parse_field(text: str) -> int | None:
    if text == "q":
        return None
    if text.startswith("fp:"):
        try:
            p = int(text[3:])
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad field spec {text!r}") from None
        if p < 2 or any(p % k == 0 for k in range(2, int(math.isqrt(p)) + 1)):
            raise argparse.ArgumentTypeError(f"{p} is not prime")
        return p
    raise argparse.ArgumentTypeError("field must be 'q' or 'fp:<prime>'")


def _parse_formats(text: str) -> tuple[str, ...]:
    parts = tuple(p.strip() for p in text.split(",") if p.strip())
    for p in parts:
        if p not in ("csv", "json"):
            raise argparse.ArgumentTypeError(f"unknown format {p!r}")
    return parts


def load_hypergraph(path: str) -> tuple[str, Hypergraph]:
    """Read and strictly validate one hypergraph JSON file."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"{path}: {exc}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    try:
        h = Hypergraph.from_json_dict(obj)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from None
    return p.stem, h


def corpus_paths() -> list[str]:
    """Paths of the hypergraph corpus shipped inside the package."""
    root = resources.files("coverreg") / "corpus"
    return sorted(str(p) for p in root.iterdir() if p.name.endswith(".json"))


def _resolve_inputs(args) -> list[tuple[str, Hypergraph]]:
    paths = list(args.inputs)
    if getattr(args, "corpus", False):
        paths.extend(corpus_paths())
    if not paths:
        raise ValidationError("no inputs given (pass files or --corpus)")
    return [load_hypergraph(p) for p in paths]


def _atomic_write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _write_json(cfg: ExperimentConfig, name: str, payload) -> None:
    if cfg.out_dir is None or "json" not in cfg.formats:
        return
    _atomic_write(cfg.out_dir / f"{name}.json", json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _write_csv(cfg: ExperimentConfig, name: str, header, rows) -> None:
    if cfg.out_dir is None or "csv" not in cfg.formats:
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _atomic_write(cfg.out_dir / f"{name}.csv", buf.getvalue())


def _ai_str(v) -> str:
    return str(v) if is_finite(v) else "-inf"


def _config(args) -> ExperimentConfig:
    return ExperimentConfig(
        s_max=getattr(args, "s_max", None),
        t_max=getattr(args, "t_max", None),
        field=getattr(args, "field", None),
        method=getattr(args, "method", "patterns"),
        tu_cap=getattr(args, "tu_cap", DEFAULT_TU_CAP),
        scan_budget=getattr(args, "scan_budget", DEFAULT_SCAN_BUDGET),
        out_dir=Path(args.out) if getattr(args, "out", None) else None,
        formats=getattr(args, "formats", ("csv", "json")),
    )


def _auto_s_max(h: Hypergraph) -> int:
    return h.rank() * math.ceil(h.n / 2) + 2


def _require_edges(name: str, h: Hypergraph):
    if not h.edges:
        raise ValidationError(f"{name}: hypergraph has no edges")


# -- subcommands ---------------------------------------------------------


def cmd_check_tu(args) -> int:
    cfg = _config(args)
    inputs = _resolve_inputs(args)
    all_tu = True
    records = []
    for name, h in inputs:
        result = is_totally_unimodular(h.incidence_matrix(), cap=cfg.tu_cap)
        rec = {"hypergraph": name, "totally_unimodular": bool(result)}
        if result:
            print(f"{name}: totally unimodular: true")
        else:
            all_tu = False
            rec["witness"] = {
                "rows": [i + 1 for i in result.witness_rows],
                "cols": [j + 1 for j in result.witness_cols],
                "det": result.witness_det,
            }
            print(
                f"{name}: totally unimodular: false "
                f"(witness rows {rec['witness']['rows']}, cols {rec['witness']['cols']}, "
                f"det {result.witness_det})"
            )
        records.append(rec)
    _write_json(cfg, "check_tu", records)
    return 0 if all_tu else 1


def cmd_cover_ideal(args) -> int:
    cfg = _config(args)
    records = []
    for name, h in _resolve_inputs(args):
        _require_edges(name, h)
        hs = h.simplify()
        ideal = cover_ideal(hs)
        gens = [list(g) for g in ideal.gens]
        print(f"{name}: J = ({', '.join(monomial_str(g) for g in ideal.gens)})")
        records.append(
            {
                "hypergraph": name,
                "n": ideal.n,
                "generators": gens,
                "d_of_J": ideal.max_gen_degree(),
                "dim_quotient": krull_dim_quotient(hs),
            }
        )
    _write_json(cfg, "cover_ideal", records)
    _write_csv(
        cfg,
        "cover_ideal",
        ["hypergraph", "generator"],
        [
            (rec["hypergraph"], monomial_str(g))
            for rec in records
            for g in rec["generators"]
        ],
    )
    return 0


def _ai_rows(name: str, table: dict, method: str, field: int | None):
    rows = []
    for (p, s), v in sorted(table.items()):
        rows.append((name, p, s, _ai_str(v), method, field_label(field)))
    return rows


def cmd_ai_table(args) -> int:
    cfg = _config(args)
    failures = 0
    all_rows = []
    payload = []
    for name, h in _resolve_inputs(args):
        _require_edges(name, h)
        hs = h.simplify()
        s_max = cfg.s_max or min(_auto_s_max(hs), 6)
        try:
            tab = ai_table(
                hs,
                range(1, s_max + 1),
                method=cfg.method,
                field=cfg.field,
                name=name,
                box_budget=cfg.scan_budget,
                tu_cap=cfg.tu_cap,
            )
        except MethodDisagreement as exc:
            failures += 1
            print(f"{name}: METHOD DISAGREEMENT: {exc}", file=sys.stderr)
            payload.append({"hypergraph": name, "error": str(exc)})
            continue
        rows = _ai_rows(name, tab.entries, cfg.method, cfg.field)
        all_rows.extend(rows)
        payload.append(
            {
                "hypergraph": name,
                "method": cfg.method,
                "field": field_label(cfg.field),
                "entries": [
                    {"p": p, "s": s, "value": _ai_str(v)}
                    for (p, s), v in sorted(tab.entries.items())
                ],
            }
        )
        for (p, s), v in sorted(tab.entries.items()):
            print(f"{name}: a_{p}(R/J^{s}) = {_ai_str(v)}")
    _write_csv(cfg, "ai_table", ["hypergraph", "p", "s", "value", "method", "field"], all_rows)
    _write_json(cfg, "ai_table", payload)
    return 1 if failures else 0


def cmd_reg_table(args) -> int:
    cfg = _config(args)
    rows = []
    payload = []
    failures = 0
    for name, h in _resolve_inputs(args):
        _require_edges(name, h)
        hs = h.simplify()
        s_max = cfg.s_max or _auto_s_max(hs)
        dim = krull_dim_quotient(hs)
        try:
            values = {}
            for s in range(1, s_max + 1):
                table = _cmd_tables(hs, s, cfg)
                values[s] = 1 + max(v + p for p, v in table.items())
        except MethodDisagreement as exc:
            failures += 1
            print(f"{name}: METHOD DISAGREEMENT: {exc}", file=sys.stderr)
            continue
        fit = fit_linear(values)
        for s in sorted(values):
            rows.append((name, s, values[s], cfg.method, field_label(cfg.field)))
            print(f"{name}: reg J^{s} = {values[s]}")
        fit_info = None
        if fit is not None:
            fit_info = {"d": fit.d, "e": fit.intercept, "onset": fit.onset}
            print(f"{name}: fit reg J^s = {fit.d}*s + {fit.intercept} from s = {fit.onset}")
        payload.append(
            {
                "hypergraph": name,
                "dim_quotient": dim,
                "values": {str(s): v for s, v in sorted(values.items())},
                "fit": fit_info,
            }
        )
    _write_csv(cfg, "reg_table", ["hypergraph", "s", "reg", "method", "field"], rows)
    _write_json(cfg, "reg_table", payload)
    return 1 if failures else 0


def _cmd_tables(h: Hypergraph, s: int, cfg: ExperimentConfig) -> dict:
    from .cohomology import _table_by_method

    return _table_by_method(h, s, cfg.method, cfg.field, cfg.scan_budget, cfg.tu_cap)


def cmd_delta_table(args) -> int:
    cfg = _config(args)
    rows = []
    payload = []
    failures = 0
    for name, h in _resolve_inputs(args):
        _require_edges(name, h)
        hs = h.simplify()
        gone = args.localize or []
        sub = hs.localize(gone).hypergraph
        if not sub.edges:
            raise ValidationError(f"{name}: localization removed every edge")
        if args.lower:
            lower = [j - 1 for j in args.lower]
        else:
            lower = list(range(len(sub.edges)))
        pattern = EdgePattern(sub, lower)
        t_max = cfg.t_max or (sub.rank() * math.ceil(sub.n / 2) + 2)
        seq = delta_sequence(pattern, range(1, t_max + 1), realized=False)
        dual = dual_fit(pattern)
        for t in sorted(seq.values):
            v = seq.values[t]
            sval = "empty" if v is None else str(v)
            et = seq.e_values.get(t)
            rows.append((name, t, sval, "" if et is None else str(et)))
            print(f"{name}: delta(P_{t}) = {sval}")
        print(
            f"{name}: d = {seq.d}, e = {seq.e}, onset = {seq.onset}, "
            f"dual (a, b) = ({dual.a}, {dual.b})"
        )
        ok = seq.ok and dual.ok
        if not ok:
            failures += 1
            for v in list(seq.violations) + list(dual.violations):
                print(f"{name}: VIOLATION {v.kind}: {v.detail}", file=sys.stderr)
        payload.append(
            {
                "hypergraph": name,
                "localize": sorted(gone),
                "lower": sorted(j + 1 for j in pattern.lower),
                "values": {str(t): (None if v is None else str(v)) for t, v in sorted(seq.values.items())},
                "d": seq.d,
                "e": seq.e,
                "onset": seq.onset,
                "dual": {"a": dual.a, "b": dual.b},
                "ok": ok,
            }
        )
    _write_csv(cfg, "delta_table", ["hypergraph", "t", "delta", "e_t"], rows)
    _write_json(cfg, "delta_table", payload)
    return 1 if failures else 0


def _verify_one(name: str, h_input: Hypergraph, cfg: ExperimentConfig) -> dict:
    rec: dict = {"hypergraph": name, "n": h_input.n, "edges": [sorted(e) for e in h_input.edges]}
    h = h_input.simplify()
    rec["simplified"] = h.edges != h_input.edges
    failed = []

    tu = is_totally_unimodular(h.incidence_matrix(), cap=cfg.tu_cap)
    rec["totally_unimodular"] = bool(tu)
    if not tu:
        rec["tu_witness"] = {
            "rows": [i + 1 for i in tu.witness_rows],
            "cols": [j + 1 for j in tu.witness_cols],
            "det": tu.witness_det,
        }

    ideal = cover_ideal(h)
    rec["cover_ideal"] = [list(g) for g in ideal.gens]
    rec["d_of_J"] = ideal.max_gen_degree()
    rec["dim_quotient"] = krull_dim_quotient(h)

    # Symbolic vs ordinary powers; equality is asserted only in the
    # unimodular case (where it must hold), otherwise just reported.
    sym_rows = []
    for s in (1, 2, 3):
        sym = symbolic_power_cover(h, s)
        ordinary = ideal.power(s)
        equal = sym == ordinary
        row = {
            "s": s,
            "equal": equal,
            "ordinary_inside_symbolic": sym.contains_ideal(ordinary),
        }
        sym_rows.append(row)
        if tu and not equal:
            failed.append(f"symbolic power != ordinary power at s = {s}")
    rec["symbolic_vs_ordinary"] = sym_rows

    if tu:
        s_max = cfg.s_max or _auto_s_max(h)
        report = verify_theorems(h, s_max=s_max, field=cfg.field, tu_cap=cfg.tu_cap)
        rec["theorems"] = report.to_dict()
        if not report.passed:
            failed.extend(
                f"theorem check {c.name} failed: {c.detail}" for c in report.checks if not c.passed
            )

        # oracle vs pattern equivalence on the low powers
        equiv = {"compared_s": [], "mismatches": [], "skipped": []}
        dim = rec["dim_quotient"]
        for s in range(1, min(4, s_max) + 1):
            if (s + 2) ** h.n > cfg.scan_budget:
                equiv["skipped"].append({"s": s, "reason": "scan budget"})
                continue
            oracle = ai_oracle_table(ideal.power(s), s, cfg.field, cfg.scan_budget)
            patterns = ai_patterns_table(h, s, cfg.field, cfg.tu_cap)
            equiv["compared_s"].append(s)
            for p in range(dim + 1):
                ov = oracle.get(p, NEG_INF)
                pv = patterns.get(p, NEG_INF)
                if ov != pv:
                    equiv["mismatches"].append(
                        {"p": p, "s": s, "oracle": _ai_str(ov), "patterns": _ai_str(pv)}
                    )
        rec["method_equivalence"] = equiv
        if equiv["mismatches"]:
            failed.append("oracle/pattern disagreement")
    else:
        rec["theorems"] = {"skipped": "not totally unimodular"}
        rec["method_equivalence"] = {"skipped": "not totally unimodular"}

    rec["failures"] = failed
    rec["passed"] = not failed
    return rec


def cmd_verify(args) -> int:
    cfg = _config(args)
    inputs = _resolve_inputs(args)
    for name, h in inputs:
        _require_edges(name, h)
    records = [_verify_one(name, h, cfg) for name, h in inputs]
    all_passed = all(rec["passed"] for rec in records)
    for rec in records:
        status = "PASS" if rec["passed"] else "FAIL"
        tu = "TU" if rec["totally_unimodular"] else "not TU"
        print(f"{rec['hypergraph']}: {status} ({tu})")
        for msg in rec["failures"]:
            print(f"  {msg}", file=sys.stderr)
    payload = {"reports": records, "passed": all_passed}
    _write_json(cfg, "verify_report", payload)
    rows = []
    for rec in records:
        theorems = rec.get("theorems", {})
        ai_values = theorems.get("ai_values", {})
        for p, row in sorted(ai_values.items(), key=lambda kv: int(kv[0])):
            for s, v in sorted(row.items(), key=lambda kv: int(kv[0])):
                rows.append(
                    (rec["hypergraph"], p, s, v, "patterns", field_label(cfg.field))
                )
    _write_csv(cfg, "verify_tables", ["hypergraph", "p", "s", "value", "method", "field"], rows)
    return 0 if all_passed else 1


# -- parser ----------------------------------------------------------------


def _add_common(sub, with_method=True):
    sub.add_argument("inputs", nargs="*", help="hypergraph JSON files")
    sub.add_argument("--corpus", action="store_true", help="include the shipped corpus")
    sub.add_argument("--field", type=_parse_field, default=None, help="q or fp:<p> (default q)")
    sub.add_argument("--s-max", dest="s_max", type=int, default=None)
    sub.add_argument("--t-max", dest="t_max", type=int, default=None)
    if with_method:
        sub.add_argument(
            "--method",
            choices=("oracle", "patterns", "both"),
            default="patterns",
        )
    sub.add_argument("--tu-cap", dest="tu_cap", type=int, default=DEFAULT_TU_CAP)
    sub.add_argument(
        "--scan-budget", dest="scan_budget", type=int, default=DEFAULT_SCAN_BUDGET
    )
    sub.add_argument("--out", default=None, help="output directory for reports")
    sub.add_argument(
        "--format",
        dest="formats",
        type=_parse_formats,
        default=("csv", "json"),
        help="comma list of csv,json",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coverreg",
        description="a_i-invariants and regularity of powers of cover ideals "
        "of unimodular hypergraphs, in exact arithmetic",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("check-tu", help="total-unimodularity verdict per input")
    _add_common(sub, with_method=False)
    sub.set_defaults(func=cmd_check_tu)

    sub = subs.add_parser("cover-ideal", help="minimal generators of the cover ideal")
    _add_common(sub, with_method=False)
    sub.set_defaults(func=cmd_cover_ideal)

    sub = subs.add_parser("ai-table", help="a_p(R/J^s) table over a power sweep")
    _add_common(sub)
    sub.set_defaults(func=cmd_ai_table)

    sub = subs.add_parser("reg-table", help="reg J^s table with its linear fit")
    _add_common(sub)
    sub.set_defaults(func=cmd_reg_table)

    sub = subs.add_parser("delta-table", help="delta(P_t) sweep for an edge pattern")
    _add_common(sub, with_method=False)
    sub.add_argument(
        "--localize",
        type=lambda t: [int(x) for x in t.split(",") if x],
        default=None,
        help="comma list of vertices to remove before building the pattern",
    )
    sub.add_argument(
        "--lower",
        type=lambda t: [int(x) for x in t.split(",") if x],
        default=None,
        help="comma list of 1-based edge indices of the localized hypergraph "
        "taken as lower edges (default: all)",
    )
    sub.set_defaults(func=cmd_delta_table)

    sub = subs.add_parser("verify", help="full verification suite per input")
    _add_common(sub)
    sub.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
