"""Command-line front end.

Exit status: 0 for a definite verdict (including "not Frobenius"), 1 for
input that cannot be used, 2 when a computational budget ran out.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import List, Optional

from . import constructions as K
from .analysis import CYReport, analyze
from .category import base_category, roundtrip, serre_structure, verify_serre
from .errors import BUDGET_ERRORS, FcyError, MalformedInput
from .frobenius import parse_character
from .linalg import parse_field
from .quiver import Presentation

log = logging.getLogger("fcy")

DEFAULT_TABLE = "A1,A2,A3,A4,A5,D4,D5,E6"


def _read_json(path: str, what: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise MalformedInput(f"cannot read {what} file {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _window(text: str):
    try:
        lo, hi = (int(t) for t in text.split(":"))
    except ValueError:
        raise MalformedInput(f"--window expects lo:hi, got {text!r}") from None
    if lo > hi:
        raise MalformedInput(f"--window {text}: lo exceeds hi")
    return lo, hi


def load_presentation(args) -> Presentation:
    fam = getattr(args, "family", None)
    if fam == "typeA":
        if args.d_param is None or args.s is None:
            raise MalformedInput("--family typeA needs --d-param and --s")
        return K.higher_typeA(args.d_param, args.s)
    if fam:
        return K.family(fam)
    if not getattr(args, "quiver", None):
        raise MalformedInput("give --family or --quiver")
    data = _read_json(args.quiver, "quiver")
    if not isinstance(data, dict):
        raise MalformedInput(f"{args.quiver}: expected a JSON object")
    pres = Presentation.from_json(data, name=os.path.basename(args.quiver))
    if getattr(args, "potential", None):
        if not getattr(args, "cut", None):
            raise MalformedInput("--potential needs --cut")
        w = K.Potential.from_json(pres.quiver, _read_json(args.potential, "potential"))
        cut = _read_json(args.cut, "cut")
        if not isinstance(cut, dict) or "cut" not in cut:
            raise MalformedInput(f"{args.cut}: expected {{\"cut\": [...]}}")
        pres = K.jacobi_presentation(pres.quiver, w, [str(a) for a in cut["cut"]], name=pres.name)
    return pres


def category_checks(rep: CYReport, chi, window) -> dict:
    c = base_category(rep.algebra)
    out = {"roundtrip": roundtrip(c, *window)}
    if rep.frobenius and rep.twisted is not None:
        out["serre"] = verify_serre(c, serre_structure(c, rep.form, rep.twisted), chi)
    return out


def _emit(text: str, args):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    field = parse_field(args.field)
    pres = load_presentation(args)
    chi = parse_character(args.char, pres.grading_rank, pres.projection, args.d, field)
    rep = analyze(pres, d=args.d, chi=chi, k_max=args.kmax, max_len=args.maxlen,
                  allow_inner=args.allow_inner, seed=args.seed, field=field, form_seed=args.form_seed)
    if args.window:
        rep.category_checks = category_checks(rep, chi, _window(args.window))
    _emit(rep.tsv() if args.format == "tsv" else rep.dumps(), args)
    return 2 if rep.verdict == "no-order-found" else 0


def cmd_preprojective(args) -> int:
    if args.dynkin:
        try:
            t, n = args.dynkin.split(":")
            pres, _ = K.preprojective_dynkin(t, int(n), path_length=args.path_length)
        except ValueError:
            raise MalformedInput(f"--dynkin expects TYPE:N, got {args.dynkin!r}") from None
    elif args.quiver:
        q = Presentation.from_json(_read_json(args.quiver, "quiver")).quiver
        pres = K.classical_preprojective(q, path_length=args.path_length)
    else:
        raise MalformedInput("give --dynkin or --quiver")
    _emit(pres.dumps(), args)
    return 0


def cmd_jacobi(args) -> int:
    if args.family == "cobweb" or (not args.quiver and not args.family):
        pres = K.cobweb_presentation()
    else:
        pres = load_presentation(args)
        if pres.potential is None:
            raise MalformedInput("jacobi needs --potential and --cut")
    if args.cut_subalgebra:
        pres = K.cut_subalgebra(pres)
    _emit(pres.dumps(), args)
    return 0


def cmd_typeA(args) -> int:
    if args.d_param is None or args.s is None:
        raise MalformedInput("typeA needs --d-param and --s")
    _emit(K.higher_typeA(args.d_param, args.s).dumps(), args)
    return 0


def dynkin_rows(types: List[str], field, kmax=64, maxlen=64, seed=0) -> List[dict]:
    rows = []
    for t in types:
        t = t.strip()
        if not t:
            continue
        typ, n = t[0].upper(), t[1:]
        try:
            n = int(n)
        except ValueError:
            raise MalformedInput(f"bad Dynkin type {t!r}") from None
        pres, data = K.preprojective_dynkin(typ, n)
        rep = analyze(pres, d=1, chi="sgn", k_max=kmax, max_len=maxlen, seed=seed, field=field)
        h = data.h
        expected = [h // 2 - 1, h // 2] if data.rho_is_identity() else [h - 2, h]
        rows.append({"type": data.name, "n": n, "h": h, "R": data.R,
                     "k": rep.k, "N": rep.N, "m": rep.m, "expected": expected,
                     "match": [rep.N, rep.m] == expected})
    return rows


def cmd_dynkin_table(args) -> int:
    rows = dynkin_rows(args.types.split(","), parse_field(args.field), args.kmax, args.maxlen, args.seed)
    if args.format == "tsv":
        keys = list(rows[0]) if rows else []
        lines = ["\t".join(keys)]
        for r in rows:
            lines.append("\t".join(json.dumps(r[k], separators=(",", ":")) if isinstance(r[k], list)
                                   else str(r[k]).lower() if isinstance(r[k], bool) else str(r[k])
                                   for k in keys))
        _emit("\n".join(lines) + "\n", args)
    else:
        _emit(json.dumps(rows, indent=2) + "\n", args)
    return 0


def cmd_roundtrip(args) -> int:
    field = parse_field(args.field)
    pres = load_presentation(args)
    chi = parse_character(args.char, pres.grading_rank, pres.projection, args.d, field)
    window = _window(args.window or "-3:3")
    rep = analyze(pres, d=args.d, chi=chi, k_max=args.kmax, max_len=args.maxlen,
                  seed=args.seed, field=field)
    out = {"family": pres.name, "frobenius": rep.frobenius,
           "category_checks": category_checks(rep, chi, window)}
    if args.format == "tsv":
        checks = out["category_checks"]
        text = "family\troundtrip\tserre\n%s\t%s\t%s\n" % (
            pres.name, str(checks["roundtrip"]["pass"]).lower(),
            str(checks.get("serre", {}).get("pass", "")).lower())
    else:
        text = json.dumps(out, indent=2, ensure_ascii=False) + "\n"
    _emit(text, args)
    return 0


class _Parser(argparse.ArgumentParser):
    """Usage errors count as malformed input (exit 1); 2 is kept for budgets."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser, inputs=True):
    if inputs:
        p.add_argument("--family", help="builtin: dynkin:A:4, typeA:d=2:s=3, typeA, cobweb, eg:twistorno")
        p.add_argument("--quiver", help="presentation JSON file")
        p.add_argument("--potential", help="potential JSON file (with --quiver and --cut)")
        p.add_argument("--cut", help="cut JSON file")
        p.add_argument("--d-param", type=int, dest="d_param", help="d of a higher type A family")
        p.add_argument("--s", type=int, help="s of a higher type A family")
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--char", default="sgn^d", help="tr, sgn, sgn^d, sgn^<n> or a nonzero rational")
    p.add_argument("--kmax", type=int, default=64)
    p.add_argument("--maxlen", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", default="q", help="q or fp:<prime>")
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.add_argument("--out")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="fcy", description="Fractional Calabi-Yau checks for graded Frobenius algebras.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="run the Calabi-Yau pipeline on one algebra")
    _common(p)
    p.add_argument("--allow-inner", dest="allow_inner", action="store_true", default=True)
    p.add_argument("--no-allow-inner", dest="allow_inner", action="store_false")
    p.add_argument("--form-seed", type=int, default=None, help="randomize the Frobenius form coefficients")
    p.add_argument("--window", help="also run category checks on lo:hi")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("preprojective", help="print a classical preprojective presentation")
    p.add_argument("--dynkin", help="TYPE:N, e.g. A:4")
    p.add_argument("--quiver", help="acyclic quiver as presentation JSON")
    p.add_argument("--path-length", action="store_true", help="grade every arrow in degree 1")
    p.add_argument("--out")
    p.set_defaults(func=cmd_preprojective)

    p = sub.add_parser("jacobi", help="print a Jacobi presentation with its cut grading")
    p.add_argument("--family", help="cobweb")
    p.add_argument("--quiver")
    p.add_argument("--potential")
    p.add_argument("--cut")
    p.add_argument("--cut-subalgebra", action="store_true", help="print the degree-0 subalgebra instead")
    p.add_argument("--out")
    p.set_defaults(func=cmd_jacobi)

    p = sub.add_parser("typeA", help="print a higher type A presentation")
    p.add_argument("--d-param", type=int, dest="d_param")
    p.add_argument("--s", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_typeA)

    p = sub.add_parser("dynkin-table", help="Calabi-Yau dimensions of Dynkin preprojective algebras")
    _common(p, inputs=False)
    p.add_argument("--types", default=DEFAULT_TABLE)
    p.set_defaults(func=cmd_dynkin_table)

    p = sub.add_parser("roundtrip", help="smash/orbit round trip and Serre verification")
    _common(p)
    p.add_argument("--window", default="-3:3")
    p.set_defaults(func=cmd_roundtrip)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    level = os.environ.get("FCY_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BUDGET_ERRORS as exc:
        print(f"fcy: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except FcyError as exc:
        print(f"fcy: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
