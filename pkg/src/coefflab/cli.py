"""Command line front end.

    coefflab eval --function f1 --det T3,3
    coefflab eval --coeffs "1,2i,-3,-4i,5" --det T2,2 --format csv
    coefflab bounds --all
    coefflab bounds --theorem thm3_i
    coefflab search --objective T3,2 --a2zero --starts 200 --seed 7
    coefflab membership --function f1 --radius 0.99
    coefflab report --all --format json --out report.json

Every command emits one document with the same top-level shape:
tool_version, command, inputs, results, flags_of_concern.  JSON is the
canonical format (complex numbers as [re, im] pairs, keys sorted); csv and
text are flattened renderings of the same payload.  Identical inputs produce
byte-identical output.

Exit codes: 0 success, 2 argument or parse errors, 3 runtime evaluation
failures (window too short, non-finite evaluator values).
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bound_calculus import (
    UnknownConstant,
    UnknownTheorem,
    theorem_chain,
    THEOREM_IDS,
    verify_stated_values,
)
from .class_u import (
    CATALOG_NAMES,
    EvaluationFailure,
    UnknownName,
    catalog,
    membership_max_defect,
    named_evaluator,
)
from .functionals import (
    CoefficientWindow,
    DeterminantId,
    UnsupportedId,
    WindowTooShort,
    closed_form,
    det_value,
)
from .search import (
    DOCUMENTED_SEEDS,
    Objective,
    SearchConfig,
    campaign,
    catalog_witness,
    objective_reference,
    sample_point,
)

#: Tolerance for "campaign stayed at or under its reference bound".
REFERENCE_SLACK = 1e-6

#: Default radii for membership sampling.
DEFAULT_RADII = (0.9, 0.99)
DEFAULT_SAMPLES = 256

#: Seeds for the report's oracle sweeps (documented in the README).
ORACLE_WINDOW_SEED = 1357
ORACLE_MAP_SEED = 2468
ORACLE_COUNT = 1000


# ---------------------------------------------------------------------------
# Parsing and rendering helpers
# ---------------------------------------------------------------------------


def parse_complex(text: str) -> complex:
    """Parse 'a+bi' style literals: 1, -3, 2i, -4i, 1.5-0.25i."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty complex literal")
    try:
        return complex(s.replace("i", "j").replace("I", "j"))
    except ValueError:
        raise ValueError(
            f"bad complex literal {text!r}; use forms like 1, -3, 2i, 1-4i"
        ) from None


def parse_window(text: str) -> CoefficientWindow:
    values = tuple(parse_complex(part) for part in text.split(","))
    return CoefficientWindow(values)


def _fmt_float(x: float) -> str:
    return format(x, ".12g")


def fmt_complex(z: complex) -> str:
    re, im = z.real, z.imag
    if im == 0.0:
        return _fmt_float(re)
    if re == 0.0:
        return _fmt_float(im) + "i"
    sign = "+" if im >= 0 else "-"
    return f"{_fmt_float(re)}{sign}{_fmt_float(abs(im))}i"


def jsonable(x):
    """Lower a payload to plain JSON types; complex becomes [re, im]."""
    if isinstance(x, complex):
        return [x.real + 0.0, x.imag + 0.0]  # + 0.0 drops negative zero
    if isinstance(x, float):
        return x + 0.0
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if dataclasses.is_dataclass(x):
        return {f.name: jsonable(getattr(x, f.name)) for f in dataclasses.fields(x)}
    return str(x)


def document(command: str, inputs: dict, results: dict, flags: list[str]) -> dict:
    return {
        "tool_version": __version__,
        "command": command,
        "inputs": inputs,
        "results": results,
        "flags_of_concern": flags,
    }


def render_json(doc: dict) -> str:
    return json.dumps(jsonable(doc), sort_keys=True, indent=2) + "\n"


def _cell(x) -> str:
    if isinstance(x, complex):
        return fmt_complex(x)
    if isinstance(x, float):
        return _fmt_float(x)
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return ""
    return str(x)


def _csv_table(doc: dict) -> tuple[list[str], list[list[str]]]:
    cmd = doc["command"]
    r = doc["results"]
    if cmd == "eval":
        header = ["function", "determinant", "value", "modulus", "closed_form", "crosscheck_delta"]
        rows = [[
            _cell(r["function"]), _cell(r["determinant"]), _cell(r["value"]),
            _cell(r["modulus"]), _cell(r["closed_form"]), _cell(r["crosscheck_delta"]),
        ]]
    elif cmd == "bounds":
        header = ["theorem_id", "determinant", "function_class", "a2_zero",
                  "computed_value", "stated_value", "match", "delta", "note"]
        rows = [[
            _cell(ch["theorem_id"]), _cell(ch["determinant"]), _cell(ch["function_class"]),
            _cell(ch["a2_zero"]), _cell(ch["computed_value"]), _cell(ch["stated_value"]),
            _cell(ch["match"]), _cell(ch["delta"]), _cell(ch["note"]),
        ] for ch in r["chains"]]
    elif cmd == "search":
        header = ["objective", "a2_mode", "seed", "restarts", "best_value",
                  "evaluations_used", "reference_id", "reference_value",
                  "witness_name", "witness_value"]
        rows = [[
            _cell(r["objective"]), _cell(r["a2_mode"]), _cell(r["seed"]),
            _cell(r["restarts"]), _cell(r["best_value"]), _cell(r["evaluations_used"]),
            _cell(r["reference"]["id"]), _cell(r["reference"]["value"]),
            _cell(r["witness"]["name"]), _cell(r["witness"]["value"]),
        ]]
    elif cmd == "membership":
        header = ["function", "radii", "samples", "max_defect", "argmax", "verdict"]
        rows = [[
            _cell(r["function"]), ";".join(_fmt_float(v) for v in r["radii"]),
            _cell(r["samples"]), _cell(r["max_defect"]), _cell(r["argmax"]),
            _cell(r["verdict"]),
        ]]
    elif cmd == "report":
        header = ["section", "item", "value", "detail"]
        rows = []
        for row in r["sharp_values"]:
            rows.append(["sharp_values", f"{row['function']} {row['determinant']}",
                         _cell(row["modulus"]), f"delta={_fmt_float(row['crosscheck_delta'])}"])
        for ch in r["bound_chains"]:
            rows.append(["bound_chains", ch["theorem_id"], _cell(ch["computed_value"]),
                         f"stated={ch['stated_text']} match={_cell(ch['match'])}"])
        rows.append(["oracles", "closed_form_vs_determinant",
                     _cell(r["closed_form_oracle"]["max_delta"]),
                     f"windows={r['closed_form_oracle']['windows']}"])
        rows.append(["oracles", "map_vs_series",
                     _cell(r["coefficient_map_oracle"]["max_delta"]),
                     f"points={r['coefficient_map_oracle']['points']}"])
        for row in r["campaigns"]:
            rows.append(["campaigns", row["objective"], _cell(row["best_value"]),
                         f"reference={_fmt_float(row['reference']['value'])} "
                         f"within={_cell(row['within_reference'])}"])
        for row in r["membership"]:
            rows.append(["membership", row["function"], _cell(row["max_defect"]),
                         row["verdict"]])
    else:  # pragma: no cover
        header = ["key", "value"]
        rows = [[k, _cell(v)] for k, v in sorted(r.items())]
    return header, rows


def render_csv(doc: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header, rows = _csv_table(doc)
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def render_text(doc: dict) -> str:
    lines = [f"coefflab {doc['command']} (v{doc['tool_version']})"]
    inputs = ", ".join(f"{k}={_cell(v)}" for k, v in doc["inputs"].items())
    lines.append(f"inputs: {inputs}" if inputs else "inputs: (none)")
    header, rows = _csv_table(doc)
    widths = [max(len(header[i]), *(len(row[i]) for row in rows)) if rows else len(header[i])
              for i in range(len(header))]
    lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    if doc["flags_of_concern"]:
        lines.append("flags of concern:")
        for flag in doc["flags_of_concern"]:
            lines.append(f"  - {flag}")
    else:
        lines.append("flags of concern: none")
    return "\n".join(lines) + "\n"


def emit(doc: dict, fmt: str, out: str | None) -> None:
    if fmt == "json":
        text = render_json(doc)
    elif fmt == "csv":
        text = render_csv(doc)
    else:
        text = render_text(doc)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_eval(args) -> dict:
    det = DeterminantId.parse(args.det)
    if args.function is not None:
        label = args.function
        window = catalog(args.function).window
    else:
        label = "coeffs"
        window = parse_window(args.coeffs)
    value = det_value(window, det)
    try:
        cf = closed_form(window, det)
        delta = abs(cf - value)
    except UnsupportedId:
        cf, delta = None, None
    results = {
        "function": label,
        "determinant": str(det),
        "window": list(window.a),
        "value": value,
        "modulus": abs(value),
        "closed_form": cf,
        "crosscheck_delta": delta,
    }
    inputs = {"function": args.function, "coeffs": args.coeffs, "det": args.det}
    return document("eval", inputs, results, [])


def _chain_payload(ch) -> dict:
    return {
        "theorem_id": ch.theorem_id,
        "function_class": ch.function_class,
        "a2_zero": ch.a2_zero,
        "determinant": ch.determinant,
        "steps": list(ch.steps),
        "computed_value": ch.computed_value,
        "stated_value": ch.stated_value,
        "stated_text": ch.stated_text,
        "truncated": ch.truncated,
        "match": ch.match,
        "delta": ch.delta,
        "note": ch.note,
    }


def _chain_flags(chains) -> list[str]:
    flags = []
    for ch in chains:
        if not ch["match"]:
            flags.append(
                f"{ch['theorem_id']}: recomputed {_fmt_float(ch['computed_value'])} "
                f"vs stated {ch['stated_text']} (delta {_fmt_float(ch['delta'])})"
            )
        if ch["note"]:
            flags.append(f"{ch['theorem_id']}: {ch['note']}")
    return flags


def cmd_bounds(args) -> dict:
    if args.all:
        report = verify_stated_values(use_stated=args.use_stated)
        chains = [_chain_payload(ch) for tid in THEOREM_IDS
                  for ch in (next(c for c in report.matches + report.mismatches
                                  if c.theorem_id == tid),)]
    else:
        ch = theorem_chain(args.theorem)
        if args.use_stated:
            ch = dataclasses.replace(ch, computed_value=ch.stated_value, match=True)
        chains = [_chain_payload(ch)]
    mismatch_ids = [ch["theorem_id"] for ch in chains if not ch["match"]]
    results = {
        "chains": chains,
        "summary": {"total": len(chains), "matches": len(chains) - len(mismatch_ids),
                    "mismatch_ids": mismatch_ids},
    }
    inputs = {"theorem": args.theorem, "all": args.all, "use_stated": args.use_stated}
    return document("bounds", inputs, results, _chain_flags(chains))


def _campaign_flags(label: str, best: float, ref_kind: str, ref_id: str,
                    ref_value: float) -> list[str]:
    flags = []
    if best > ref_value + REFERENCE_SLACK:
        flags.append(
            f"{label}: campaign best {_fmt_float(best)} exceeds its reference "
            f"{ref_id} = {_fmt_float(ref_value)}"
        )
    if ref_kind == "chain":
        ch = theorem_chain(ref_id)
        if not ch.match and best > ch.stated_value + 1e-9:
            flags.append(
                f"{label}: campaign best {_fmt_float(best)} exceeds the published "
                f"statement {ch.stated_text} = {_fmt_float(ch.stated_value)} "
                f"(recomputed chain allows {_fmt_float(ch.computed_value)})"
            )
    return flags


def cmd_search(args) -> dict:
    objective = Objective(DeterminantId.parse(args.objective),
                          "zero" if args.a2zero else "free")
    config = SearchConfig(seed=args.seed, restarts=args.starts,
                          refine_budget=args.budget, step_init=args.step_init,
                          step_min=args.step_min)
    result = campaign(objective, config)
    ref_kind, ref_id, ref_value = objective_reference(objective)
    wit_name, wit_value = catalog_witness(objective)
    p = result.best_point
    results = {
        "objective": str(objective.det),
        "a2_mode": objective.a2_mode,
        "seed": args.seed,
        "restarts": args.starts,
        "refine_budget": args.budget,
        "best_value": result.best_value,
        "best_point": {"a2": p.a2, "c1": p.schwarz.c1, "c2": p.schwarz.c2,
                       "c3": p.schwarz.c3},
        "best_window": list(result.best_window),
        "evaluations_used": result.evaluations_used,
        "per_restart": [list(item) for item in result.per_restart],
        "reference": {"kind": ref_kind, "id": ref_id, "value": ref_value},
        "witness": {"name": wit_name, "value": wit_value},
    }
    inputs = {"objective": args.objective, "a2zero": args.a2zero, "seed": args.seed,
              "starts": args.starts, "budget": args.budget,
              "step_init": args.step_init, "step_min": args.step_min}
    flags = _campaign_flags(objective.label, result.best_value, ref_kind, ref_id,
                            ref_value)
    return document("search", inputs, results, flags)


def cmd_membership(args) -> dict:
    evaluator = named_evaluator(args.function)
    radii = tuple(args.radius) if args.radius else DEFAULT_RADII
    report = membership_max_defect(evaluator, radii, args.samples)
    verdict = "evidence-member" if report.max_defect < 1.0 else "non-member-witness"
    results = {
        "function": args.function,
        "radii": list(radii),
        "samples": args.samples,
        "max_defect": report.max_defect,
        "argmax": report.argmax,
        "verdict": verdict,
    }
    inputs = {"function": args.function, "radius": list(radii), "samples": args.samples}
    return document("membership", inputs, results, [])


# Sharp attainments surfaced in the standard report: catalog witnesses for
# the free-mode bounds and for the a2 = 0 bounds.
_SHARP_ROWS = (
    ("f1", "T2,2"), ("f1", "T2,3"), ("f1", "T3,1"), ("f1", "T3,2"), ("f1", "T3,3"),
    ("f2", "T2,2"), ("f2", "T2,3"), ("f3", "T3,1"), ("f4", "T3,2"),
)


def _report_sharp_values() -> list[dict]:
    rows = []
    for name, det_text in _SHARP_ROWS:
        det = DeterminantId.parse(det_text)
        window = catalog(name).window
        value = closed_form(window, det)
        delta = abs(value - det_value(window, det))
        rows.append({
            "function": name,
            "determinant": det_text,
            "value": value,
            "modulus": abs(value),
            "crosscheck_delta": delta,
        })
    return rows


def _report_closed_form_oracle() -> dict:
    from .functionals import SUPPORTED_CLOSED_FORM_IDS
    rng = np.random.default_rng(ORACLE_WINDOW_SEED)
    worst = 0.0
    for _ in range(ORACLE_COUNT):
        coeffs = [1.0]
        for _k in range(4):
            r = 5.0 * np.sqrt(rng.random())
            th = 2.0 * np.pi * rng.random()
            coeffs.append(complex(r * np.cos(th), r * np.sin(th)))
        w = CoefficientWindow(tuple(coeffs))
        for det in SUPPORTED_CLOSED_FORM_IDS:
            worst = max(worst, abs(closed_form(w, det) - det_value(w, det)))
    return {"windows": ORACLE_COUNT, "seed": ORACLE_WINDOW_SEED, "max_delta": worst}


def _report_map_oracle() -> dict:
    from .class_u import u_coefficients
    from .series import TruncatedSeries, series_reciprocal
    rng = np.random.default_rng(ORACLE_MAP_SEED)
    worst = 0.0
    for _ in range(ORACLE_COUNT):
        pt = sample_point(rng, "free")
        w = u_coefficients(pt, 5)
        p = pt.schwarz
        recip = series_reciprocal(TruncatedSeries((1.0, -pt.a2, -p.c1, -p.c2, -p.c3)))
        for k in range(5):
            worst = max(worst, abs(w.a[k] - recip.coeffs[k]))
    return {"points": ORACLE_COUNT, "seed": ORACLE_MAP_SEED, "max_delta": worst}


def _report_campaigns(starts: int, budget: int) -> tuple[list[dict], list[str]]:
    rows = []
    flags = []
    for label, seed in DOCUMENTED_SEEDS.items():
        det_text, mode = label.split("|")
        objective = Objective(DeterminantId.parse(det_text), mode)
        config = SearchConfig(seed=seed, restarts=starts, refine_budget=budget)
        result = campaign(objective, config)
        ref_kind, ref_id, ref_value = objective_reference(objective)
        wit_name, wit_value = catalog_witness(objective)
        within = result.best_value <= ref_value + REFERENCE_SLACK
        rows.append({
            "objective": label,
            "seed": seed,
            "restarts": starts,
            "refine_budget": budget,
            "best_value": result.best_value,
            "evaluations_used": result.evaluations_used,
            "reference": {"kind": ref_kind, "id": ref_id, "value": ref_value},
            "witness": {"name": wit_name, "value": wit_value},
            "within_reference": within,
        })
        flags.extend(_campaign_flags(label, result.best_value, ref_kind, ref_id,
                                     ref_value))
    return rows, flags


def _report_membership() -> list[dict]:
    rows = []
    for name in CATALOG_NAMES:
        rep = membership_max_defect(catalog(name).evaluator, DEFAULT_RADII,
                                    DEFAULT_SAMPLES)
        rows.append({
            "function": name,
            "radii": list(DEFAULT_RADII),
            "max_defect": rep.max_defect,
            "argmax": rep.argmax,
            "verdict": "evidence-member" if rep.max_defect < 1.0 else "non-member-witness",
        })
    rep = membership_max_defect(named_evaluator("z+2z3"), (0.7,), DEFAULT_SAMPLES)
    rows.append({
        "function": "z+2z3",
        "radii": [0.7],
        "max_defect": rep.max_defect,
        "argmax": rep.argmax,
        "verdict": "evidence-member" if rep.max_defect < 1.0 else "non-member-witness",
    })
    return rows


def cmd_report(args) -> dict:
    chains = [_chain_payload(theorem_chain(tid)) for tid in THEOREM_IDS]
    campaign_rows, campaign_flags = _report_campaigns(args.starts, args.budget)
    results = {
        "sharp_values": _report_sharp_values(),
        "bound_chains": chains,
        "closed_form_oracle": _report_closed_form_oracle(),
        "coefficient_map_oracle": _report_map_oracle(),
        "campaigns": campaign_rows,
        "membership": _report_membership(),
    }
    flags = _chain_flags(chains) + campaign_flags
    inputs = {"all": True, "starts": args.starts, "budget": args.budget,
              "campaign_seeds": dict(DOCUMENTED_SEEDS),
              "oracle_seeds": {"windows": ORACLE_WINDOW_SEED, "map": ORACLE_MAP_SEED}}
    return document("report", inputs, results, flags)


# ---------------------------------------------------------------------------
# Parser and entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coefflab",
        description="Toeplitz and Hankel coefficient determinant laboratory",
    )
    parser.add_argument("--version", action="version", version=f"coefflab {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", default=None, help="write the document to this path")

    p = sub.add_parser("eval", parents=[common],
                       help="evaluate one determinant on a window")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--function", help=f"catalog name, one of {CATALOG_NAMES}")
    group.add_argument("--coeffs", help="comma-separated a1,a2,... with a1 = 1")
    p.add_argument("--det", required=True, help="determinant id, e.g. T3,3 or H2,3")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("bounds", parents=[common],
                       help="recompute published bound chains")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--all", action="store_true")
    group.add_argument("--theorem", help=f"one of {THEOREM_IDS}")
    p.add_argument("--use-stated", action="store_true", dest="use_stated",
                   help="substitute stated values for computed ones (self-comparison)")
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("search", parents=[common],
                       help="seeded multi-start maximization of |det|")
    p.add_argument("--objective", required=True, help="determinant id, e.g. T2,2")
    p.add_argument("--a2zero", action="store_true", help="pin a2 = 0")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--starts", type=int, default=200)
    p.add_argument("--budget", type=int, default=20_000)
    p.add_argument("--step-init", type=float, default=0.25, dest="step_init")
    p.add_argument("--step-min", type=float, default=1e-7, dest="step_min")
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser("membership", parents=[common],
                       help="sample the defect on circles")
    p.add_argument("--function", required=True,
                   help=f"catalog name or the specimen 'z+2z3'; catalog: {CATALOG_NAMES}")
    p.add_argument("--radius", type=float, action="append",
                   help="repeatable; default 0.9 and 0.99")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.set_defaults(handler=cmd_membership)

    p = sub.add_parser("report", parents=[common],
                       help="run the full verification sweep")
    p.add_argument("--all", action="store_true", help="accepted for symmetry; the report is always complete")
    p.add_argument("--starts", type=int, default=200)
    p.add_argument("--budget", type=int, default=20_000)
    p.set_defaults(handler=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        doc = args.handler(args)
    except (WindowTooShort, EvaluationFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (UnknownName, UnsupportedId, UnknownTheorem, UnknownConstant,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    emit(doc, args.format, args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
