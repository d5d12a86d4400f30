"""Command-line reports for conjugacy classes of PSL(2,q), their subracks,
associated groups, and finitely presented groups.

Every command prints an aligned text table by default, or a JSON envelope
with ``--json``:

    {"command", "field": {"p", "n", "q", "modulus"}, "oracle_status",
     "result", "version"}

``oracle_status`` is ``symbolic-only`` when nothing was checked by brute
force, otherwise ``oracle-verified`` or ``oracle-failed``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import __version__
from .conjugacy import all_classes, class_by_id, class_elements, is_real, psl_table
from .field import Field, FieldError, field_of_order
from .fpgroup import (
    COSET_LIMIT,
    DEFAULT_STRATEGY,
    ROBERTSON_A6_COVER,
    SCHUR_A6_COVER,
    STRATEGIES,
    analyze_group,
    central_quotient,
    parse_presentation,
    regular_group,
    todd_coxeter,
)
from .matrices import DEFAULT_ENUM_BOUND
from .subracks import class_type, classify_subracks, cross_validate, minimal_bruteforce, minimality_verdict

BUILTIN_PRESENTATIONS = {"a6cover": ROBERTSON_A6_COVER, "a6cover-schur": SCHUR_A6_COVER}


class UsageError(ValueError):
    pass


def _field(q: int) -> Field:
    if q > DEFAULT_ENUM_BOUND:
        raise UsageError(f"q={q} exceeds the enumeration bound {DEFAULT_ENUM_BOUND} (PSLRACK_MAX_Q)")
    try:
        return field_of_order(q)
    except FieldError as exc:
        raise UsageError(str(exc)) from None


def _classes(F: Field, class_id: str | None):
    if class_id is None:
        return all_classes(F)[1:]
    try:
        cd = class_by_id(F, class_id)
    except (KeyError, ValueError):
        known = ", ".join(c.class_id for c in all_classes(F))
        raise UsageError(f"unknown class id {class_id!r}; known: {known}") from None
    if cd.kind == "identity":
        raise UsageError("the identity class is not allowed here")
    return [cd]


def _status(checked: bool, ok: bool = True) -> str:
    if not checked:
        return "symbolic-only"
    return "oracle-verified" if ok else "oracle-failed"


# -- commands: each returns (field or None, result, oracle status) --------------

def cmd_classes(q: int, verify: bool = False):
    F = _field(q)
    T = psl_table(F)
    rows = []
    ok = True
    for cd in all_classes(F):
        el = class_elements(cd)
        generates = T.generate(el).size == T.order
        row = {
            "class_id": cd.class_id,
            "name": str(cd),
            "type": class_type(cd),
            "size": cd.size,
            "element_order": cd.element_order,
            "char_poly": cd.char_poly.format(F.format),
            "real": is_real(cd),
            "generates": bool(generates),
        }
        if verify:
            ok &= el.size == cd.size and int(T.element_orders[el[0]]) == cd.element_order
        rows.append(row)
    return F, {"classes": rows}, _status(verify, ok)


def cmd_subracks(q: int, class_id: str | None, verify: bool = False, mode: str = "auto"):
    F = _field(q)
    out = []
    ok = True
    for cd in _classes(F, class_id):
        rep = classify_subracks(cd).to_json()
        if verify:
            v = cross_validate(cd, mode=mode)
            rep["validation"] = v.to_json()
            ok &= v.passed
        out.append(rep)
    return F, {"reports": out}, _status(verify, ok)


def cmd_minimal(q: int, class_id: str | None, verify: bool = False):
    F = _field(q)
    rows = []
    ok = True
    for cd in _classes(F, class_id):
        v = minimality_verdict(cd)
        row = {"class_id": cd.class_id, "name": str(cd), "size": cd.size, **v.to_json()}
        if verify:
            b = minimal_bruteforce(cd)
            row["bruteforce"] = b.verdict
            ok &= b.verdict == v.verdict
        rows.append(row)
    return F, {"verdicts": rows}, _status(verify, ok)


def cmd_ass(q: int, class_id: str | None):
    from . import assoc

    F = _field(q)
    rows = []
    ok = True
    for cd in _classes(F, class_id):
        try:
            a = assoc.ass_descriptor(cd)
        except assoc.UnsupportedError as exc:
            raise UsageError(str(exc)) from None
        row = a.to_json()
        row["expected_relative_multiplier"] = assoc.expected_relative_multiplier(cd)
        ok &= a.consistent() and row["expected_relative_multiplier"] == a.rel_multiplier
        rows.append(row)
    # the multiplier is always computed from lifts, so the result is checked
    return F, {"classes": rows}, _status(True, ok)


def cmd_h2(q: int, class_id: str | None):
    from . import assoc

    F = _field(q)
    rows = []
    for cd in _classes(F, class_id):
        try:
            h2 = assoc.h2_quandle(cd)
        except assoc.UnsupportedError as exc:
            raise UsageError(str(exc)) from None
        rows.append({"class_id": cd.class_id, "name": str(cd), "h2": h2})
    return F, {"classes": rows}, _status(True)


def _read_presentation(source: str) -> str:
    if source in BUILTIN_PRESENTATIONS:
        return BUILTIN_PRESENTATIONS[source]
    if source == "-":
        return sys.stdin.read()
    path = Path(source)
    if not path.exists():
        raise UsageError(f"no such file or built-in presentation: {source!r} "
                         f"(built-ins: {', '.join(BUILTIN_PRESENTATIONS)})")
    # allow comment lines starting with '#'
    lines = [ln for ln in path.read_text().splitlines() if not ln.lstrip().startswith("#")]
    return " ".join(lines)


def cmd_fpgroup(source: str, classes: bool = False, quotient: int | None = None,
                limit: int = COSET_LIMIT, strategy: str = DEFAULT_STRATEGY):
    P = parse_presentation(_read_presentation(source))
    T = todd_coxeter(P, limit=limit, strategy=strategy)
    result = {
        "presentation": P.to_text(),
        "cosets": T.index,
        "cosets_defined": T.defined,
        "closed": T.is_closed(),
    }
    if classes or quotient is not None:
        G = regular_group(T)
        result["group"] = analyze_group(G).to_json()
        if quotient is not None:
            cq = central_quotient(G, quotient)
            result["quotient"] = {"n": quotient, **cq.analysis.to_json(), "fibres": cq.fibre_table()}
    return None, result, _status(True, result["closed"])


def _parse_qs(text: str) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = (int(x) for x in part.split("-", 1))
            for q in range(lo, hi + 1):
                try:
                    field_of_order(q)
                except FieldError:
                    continue
                out.append(q)
        else:
            out.append(int(part))
    if not out:
        raise UsageError(f"no prime powers in {text!r}")
    return out


def cmd_verify(qs: str, only: list[str] | None = None):
    from .checks import run_checks

    reports = [run_checks(_field(q), only) for q in _parse_qs(qs)]
    ok = all(r.passed for r in reports)
    return None, {"passed": ok, "fields": [r.to_json() for r in reports]}, _status(True, ok)


# -- output ---------------------------------------------------------------------

def envelope(command: str, F: Field | None, result: dict, status: str) -> dict:
    fld = None if F is None else {"p": F.p, "n": F.n, "q": F.q, "modulus": F.modulus_str()}
    return {"version": __version__, "command": command, "field": fld, "result": result, "oracle_status": status}


def dumps(env: dict) -> str:
    return json.dumps(env, sort_keys=True, indent=2, ensure_ascii=False)


def _table(rows: list[dict], cols: list[str]) -> str:
    cells = [[str(r.get(c, "")) for c in cols] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines)


def render_text(command: str, F: Field | None, result: dict, status: str) -> str:
    head = f"PSL(2,{F.q}), modulus {F.modulus_str()}" if F is not None else command
    out = [head]
    if command == "classes":
        out.append(_table(result["classes"], ["class_id", "name", "type", "size", "element_order",
                                              "char_poly", "real", "generates"]))
    elif command == "subracks":
        for rep in result["reports"]:
            out.append(f"\n{rep['class_id']} ({rep['class_type']}, size {rep['size']}, "
                       f"order {rep['element_order']}): {rep['minimality']['verdict']}")
            rows = [{**f, "instances": "; ".join(f"{i['label']} {tuple(i['class_sizes'])}" for i in f["instances"])}
                    for f in rep["families"]]
            out.append(_table(rows, ["name", "group", "holds", "extension", "instances"]))
            if "validation" in rep:
                v = rep["validation"]
                out.append(f"validation ({v['mode']}): {'pass' if v['passed'] else 'FAIL'}, "
                           f"{v['subrack_types_found']} subrack types; unmatched {v['unmatched']}, "
                           f"unwitnessed {v['unwitnessed']}")
    elif command == "minimal":
        out.append(_table(result["verdicts"], ["class_id", "name", "size", "verdict", "bruteforce", "reason"]))
    elif command == "ass":
        out.append(_table(result["classes"], ["class_id", "name", "covering_group", "mu_image_order",
                                              "relative_multiplier", "dx", "dx_order", "ass"]))
    elif command == "h2":
        out.append(_table(result["classes"], ["class_id", "name", "h2"]))
    elif command == "fpgroup":
        out.append(f"presentation: <{result['presentation']}>")
        out.append(f"cosets: {result['cosets']} ({result['cosets_defined']} defined), closed: {result['closed']}")
        if "group" in result:
            g = result["group"]
            out.append(f"order {g['order']}, center {g['center_order']} (cyclic: {g['center_cyclic']}), "
                       f"derived subgroup {g['derived_order']}, {g['class_count']} classes {g['class_sizes']}")
        if "quotient" in result:
            qd = result["quotient"]
            out.append(f"quotient by central subgroup of order {qd['n']}: order {qd['order']}, "
                       f"{qd['class_count']} classes")
            out.append(_table(qd["fibres"], ["size", "covering_class_sizes"]))
    elif command == "verify":
        for fr in result["fields"]:
            out.append(f"\nq={fr['q']}: {'pass' if fr['passed'] else 'FAIL'}")
            out.append(_table(fr["checks"], ["name", "passed", "detail"]))
    out.append(f"\noracle status: {status}")
    return "\n".join(out)


def render_csv(result: dict) -> str:
    rows = result["classes"]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pslrack", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--json", action="store_true", help="JSON envelope instead of a text table")
        return sp

    sp = add("classes", "conjugacy classes of PSL(2,q)")
    sp.add_argument("q", type=int)
    sp.add_argument("--csv", action="store_true", help="CSV class table")
    sp.add_argument("--verify", action="store_true", help="check sizes and orders against the enumerated group")

    sp = add("subracks", "subrack families of a class (all classes if no id)")
    sp.add_argument("q", type=int)
    sp.add_argument("class_id", nargs="?")
    sp.add_argument("--verify", action="store_true", help="cross-validate against brute force")
    sp.add_argument("--mode", default=os.environ.get("PSLRACK_ORACLE_MODE", "auto"),
                    choices=["auto", "lattice", "powerset", "seeded"])

    sp = add("minimal", "minimal non-abelian verdicts")
    sp.add_argument("q", type=int)
    sp.add_argument("class_id", nargs="?")
    sp.add_argument("--verify", action="store_true", help="compare with pair-closure brute force")

    for name, text in (("ass", "relative Schur multiplier and associated group"),
                       ("h2", "second quandle homology")):
        sp = add(name, text)
        sp.add_argument("q", type=int)
        sp.add_argument("class_id", nargs="?")

    sp = add("fpgroup", "coset enumeration for a presentation file")
    sp.add_argument("source", help=f"file, '-' for stdin, or one of {', '.join(BUILTIN_PRESENTATIONS)}")
    sp.add_argument("--cosets", action="store_true", help="coset count only (the default)")
    sp.add_argument("--classes", action="store_true", help="center and conjugacy classes")
    sp.add_argument("--quotient", type=int, metavar="N", help="quotient by the central subgroup of order N")
    sp.add_argument("--limit", type=int, default=COSET_LIMIT, help="coset limit (PSLRACK_COSET_LIMIT)")
    sp.add_argument("--strategy", default=os.environ.get("PSLRACK_STRATEGY", DEFAULT_STRATEGY), choices=STRATEGIES)

    sp = add("verify", "run the invariant checks; exit status 1 on any failure")
    sp.add_argument("qs", help="prime powers, e.g. '2,3,4,5' or '2-9'")
    sp.add_argument("--only", nargs="*", help="restrict to the named checks")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "classes":
            F, result, status = cmd_classes(args.q, args.verify)
        elif args.command == "subracks":
            F, result, status = cmd_subracks(args.q, args.class_id, args.verify, args.mode)
        elif args.command == "minimal":
            F, result, status = cmd_minimal(args.q, args.class_id, args.verify)
        elif args.command == "ass":
            F, result, status = cmd_ass(args.q, args.class_id)
        elif args.command == "h2":
            F, result, status = cmd_h2(args.q, args.class_id)
        elif args.command == "fpgroup":
            F, result, status = cmd_fpgroup(args.source, args.classes, args.quotient, args.limit, args.strategy)
        else:
            F, result, status = cmd_verify(args.qs, args.only)
    except (UsageError, ValueError, RuntimeError) as exc:
        print(f"pslrack {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(dumps(envelope(args.command, F, result, status)))
    elif getattr(args, "csv", False):
        print(render_csv(result), end="")
    else:
        print(render_text(args.command, F, result, status))
    return 1 if status == "oracle-failed" else 0


if __name__ == "__main__":
    sys.exit(main())
