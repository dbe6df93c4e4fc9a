"""Command-line front end.

Exit status: 0 success, 1 malformed arguments, 2 domain errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from . import classify, curves, extensions
from .forms import (
    QForm,
    StructureType,
    checked_form,
    enumerate_forms,
    eval_form,
    exists,
    serialize,
)
from .homology import HomologyModel, model_for, parse_surface
from .veesum import vee

RECORD_KEYS = ("surface", "type", "values", "qt", "sigma", "orbit")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _surface_arg(text: str):
    try:
        return parse_surface(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _type_arg(text: str) -> StructureType:
    try:
        return StructureType.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def record(q: QForm, orbit: Optional[int] = None) -> dict:
    model = q.model
    qt = classify.two_torsion_value(q) if model.torsion is not None else None
    sigma = (
        classify.brown_invariant(q)
        if q.type is StructureType.PIN_MINUS and model.spec.closed
        else None
    )
    return {
        "surface": model.spec.name,
        "type": q.type.label,
        "values": list(q.values),
        "qt": qt,
        "sigma": sigma,
        "orbit": orbit,
    }


def _emit_records(records: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(records) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(RECORD_KEYS)
        for r in records:
            w.writerow(
                [
                    r["surface"],
                    r["type"],
                    "[" + ",".join(map(str, r["values"])) + "]",
                    *("" if r[k] is None else r[k] for k in ("qt", "sigma", "orbit")),
                ]
            )
        out.write(buf.getvalue())
    else:
        for r in records:
            line = f"{r['type']}:[{','.join(map(str, r['values']))}]"
            for k in ("qt", "sigma", "orbit"):
                if r[k] is not None:
                    line += f"  {k}={r[k]}"
            out.write(line + "\n")


def _missing_note(model: HomologyModel, stype: StructureType) -> str:
    return (
        f"# no {stype.label} structures on {model.spec.name}: "
        f"{stype.a}*w2 + {stype.b}*w1^2 evaluates to 1"
    )


# -- subcommands ----------------------------------------------------------------


def cmd_surface_info(args, out) -> int:
    model = model_for(args.surface)
    info = {
        "surface": model.spec.name,
        "orientable": model.spec.orientable,
        "genus": model.spec.genus,
        "boundary": model.spec.boundary,
        "euler_characteristic": model.spec.euler_characteristic,
        "b1": model.b1,
        "elements": model.element_count(),
        "generators": list(model.generators),
        "pairing": [list(r) for r in model.B],
        "w1": list(model.w1),
        "relations": [list(r) for r in model.relations],
        "torsion": list(model.torsion) if model.torsion else None,
        "w2": model.w2_eval,
        "w1sq": model.w1sq_eval,
    }
    if args.format == "json":
        out.write(json.dumps(info) + "\n")
    else:
        for k, v in info.items():
            out.write(f"{k}: {v}\n")
    return 0


def cmd_forms_list(args, out) -> int:
    model = model_for(args.surface)
    stype = args.type
    forms = enumerate_forms(model, stype)
    if not forms and args.format == "text":
        out.write(_missing_note(model, stype) + "\n")
    _emit_records([record(q) for q in forms], args.format, out)
    return 0


def cmd_forms_classify(args, out) -> int:
    model = model_for(args.surface)
    stype = args.type
    orbits = classify.orbits(model, stype)
    if not orbits and args.format == "text":
        out.write(_missing_note(model, stype) + "\n")
    records = [record(q, k) for k, orbit in enumerate(orbits) for q in orbit]
    _emit_records(records, args.format, out)
    return 0


def cmd_forms_exists(args, out) -> int:
    model = model_for(args.surface)
    stype = args.type
    answer = exists(model, stype)
    if args.format == "json":
        out.write(json.dumps({"surface": model.spec.name, "type": stype.label, "exists": answer}) + "\n")
    else:
        out.write(("true" if answer else "false") + "\n")
    return 0


def cmd_forms_sum(args, out) -> int:
    model = model_for(args.surface)
    q1 = checked_form(args.left, model)
    q2 = checked_form(args.right, model)
    r = vee(q1, q2)
    if args.format == "json":
        out.write(json.dumps(record(r)) + "\n")
    else:
        out.write(f"{serialize(r)}\ntype: {r.type.label}\n")
    return 0


def cmd_groups_vee(args, out) -> int:
    t1, t2 = args.left, args.right
    G = extensions.vee_group(extensions.representative(t1), extensions.representative(t2))
    iso = extensions.iso_class(G)
    if args.format == "json":
        out.write(
            json.dumps(
                {
                    "left": t1.label,
                    "right": t2.label,
                    "label": G.label.label,
                    "iso_class": iso,
                    "elements": [[list(p) for p in c] for c in G.elements],
                    "table": [list(r) for r in G.table],
                    "kernel_gen": G.kernel_gen,
                }
            )
            + "\n"
        )
    else:
        names = ["{" + ",".join(f"({x},{y})" for x, y in c) + "}" for c in G.elements]
        for i, n in enumerate(names):
            out.write(f"[{i}] {n}  proj={'-1' if G.proj[i] else '+1'}\n")
        out.write("table:\n")
        for row in G.table:
            out.write("  " + " ".join(str(x) for x in row) + "\n")
        out.write(f"label: {t1.label} v {t2.label} = {G.label.label}\n")
        out.write(f"iso class: {iso}\n")
    return 0


def cmd_curve_eval(args, out) -> int:
    model = model_for(args.surface)
    q = checked_form(args.form, model)
    S = curves.parse_words(args.words, model)
    phi = curves.calibrate(q)
    rep = curves.curve_report(model, S, phi, q.type)
    cls = curves.homology_class(model, S)
    algebraic = eval_form(q, cls)
    result = {
        "surface": model.spec.name,
        "words": curves.format_words(S, model),
        "class": list(cls.coefficients),
        "n": rep.n,
        "i": rep.i,
        "h": rep.h,
        "q_curve": rep.q,
        "q_algebraic": algebraic,
    }
    if args.format == "json":
        out.write(json.dumps(result) + "\n")
    else:
        for k, v in result.items():
            out.write(f"{k}: {v}\n")
    return 0


def cmd_selftest(args, out) -> int:
    from .acceptance import run_all

    results = run_all(inject_fault=args.inject_fault)
    for r in results:
        out.write(r.line() + "\n")
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pinsurf", description="Pin-type structures on surfaces as quadratic forms")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(sp, choices=("text", "json")):
        sp.add_argument("--format", choices=choices, default="text")

    surface = sub.add_parser("surface").add_subparsers(dest="action", required=True, parser_class=_Parser)
    sp = surface.add_parser("info")
    sp.add_argument("--surface", required=True, type=_surface_arg)
    fmt(sp)
    sp.set_defaults(func=cmd_surface_info)

    forms = sub.add_parser("forms").add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name, func, formats in (
        ("list", cmd_forms_list, ("text", "json", "csv")),
        ("classify", cmd_forms_classify, ("text", "json", "csv")),
        ("exists", cmd_forms_exists, ("text", "json")),
    ):
        sp = forms.add_parser(name)
        sp.add_argument("--surface", required=True, type=_surface_arg)
        sp.add_argument("--type", required=True, type=_type_arg)
        fmt(sp, formats)
        sp.set_defaults(func=func)
    sp = forms.add_parser("sum")
    sp.add_argument("--surface", required=True, type=_surface_arg)
    sp.add_argument("left")
    sp.add_argument("right")
    fmt(sp)
    sp.set_defaults(func=cmd_forms_sum)

    groups = sub.add_parser("groups").add_subparsers(dest="action", required=True, parser_class=_Parser)
    sp = groups.add_parser("vee")
    sp.add_argument("left", type=_type_arg)
    sp.add_argument("right", type=_type_arg)
    fmt(sp)
    sp.set_defaults(func=cmd_groups_vee)

    curve = sub.add_parser("curve").add_subparsers(dest="action", required=True, parser_class=_Parser)
    sp = curve.add_parser("eval")
    sp.add_argument("--surface", required=True, type=_surface_arg)
    sp.add_argument("--words", required=True)
    sp.add_argument("--form", required=True)
    fmt(sp)
    sp.set_defaults(func=cmd_curve_eval)

    sp = sub.add_parser("selftest")
    sp.add_argument("--inject-fault", action="store_true", help="add a corrupted form as a negative control")
    sp.set_defaults(func=cmd_selftest)
    return p


def run(argv: Sequence[str], out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except UsageError as e:
        err.write(str(e) + "\n")
        return 1
    except SystemExit as e:  # --help
        return int(e.code or 0)
    try:
        return args.func(args, out)
    except ValueError as e:
        err.write(f"error: {e}\n")
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
