"""Command-line front end and the JSON interchange format.

Documents look like::

    {"dim":2,"basis":["e1","e2"],"gram":[["1/1","0/1"],["0/1","1/1"]],
     "roots":[["-1/1","0/1"],...],"label":"B_2"}

Every number is a reduced ``p/q`` string. Roots are written in sorted order
and the output is compact UTF-8 JSON followed by a newline.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction as Q
from typing import List, Optional, Sequence, TextIO

from .axioms import report_dict, verify_lattice, verify_T, verify_Tprime
from .catalog import FAMILIES, ALIASES, TypeLabel, construct
from .classify import (
    IsoWitness,
    UnrecognizedSystem,
    check_isomorphism,
    classify,
    connected_components,
    find_isomorphism,
    lambda_orbit,
    truncation_tower,
)
from .exactlin import GramForm, format_rational, parse_rational, zero
from .orbits import small_orbit_search
from .system import RootSupersystem
from .weyl import orbit, root_string

_KEYS = ("dim", "basis", "gram", "roots", "label")


class DocumentError(ValueError):
    pass


def _rationals(row, what: str) -> tuple:
    if not isinstance(row, list):
        raise DocumentError(f"{what} must be a list")
    try:
        return tuple(parse_rational(x) for x in row)
    except ValueError as exc:
        raise DocumentError(f"{what}: {exc}") from None


def parse_document(text: str) -> RootSupersystem:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    extra = set(doc) - set(_KEYS)
    missing = {"dim", "gram", "roots"} - set(doc)
    if extra or missing:
        raise DocumentError(f"unexpected keys {sorted(extra)} / missing keys {sorted(missing)}")
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise DocumentError("dim must be a positive integer")
    basis = doc.get("basis") or [f"e{i + 1}" for i in range(dim)]
    if (not isinstance(basis, list) or len(basis) != dim
            or not all(isinstance(b, str) for b in basis)):
        raise DocumentError("basis must list one string per dimension")
    gram = doc["gram"]
    if not isinstance(gram, list) or len(gram) != dim:
        raise DocumentError("gram must have dim rows")
    rows = [_rationals(r, f"gram row {i}") for i, r in enumerate(gram)]
    if any(len(r) != dim for r in rows):
        raise DocumentError("gram must be square")
    try:
        form = GramForm(tuple(rows))
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    if not isinstance(doc["roots"], list):
        raise DocumentError("roots must be a list")
    roots = [_rationals(r, f"root {i}") for i, r in enumerate(doc["roots"])]
    if any(len(r) != dim for r in roots):
        raise DocumentError("every root must have dim coordinates")
    if len(set(roots)) != len(roots):
        raise DocumentError("duplicate roots")
    if zero(dim) not in set(roots):
        raise DocumentError("the zero root is missing")
    label = doc.get("label")
    if label is not None:
        if not isinstance(label, str):
            raise DocumentError("label must be a string or null")
        try:
            label = TypeLabel.parse(label)
        except ValueError as exc:
            raise DocumentError(str(exc)) from None
    return RootSupersystem(form, tuple(roots), tuple(basis), label)


def document_dict(S: RootSupersystem) -> dict:
    return {
        "dim": S.dim,
        "basis": list(S.basis_labels),
        "gram": [[format_rational(x) for x in row] for row in S.form.entries],
        "roots": [[format_rational(x) for x in r] for r in S.roots],
        "label": None if S.label is None else str(S.label),
    }


def _dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":")) + "\n"


def serialize(S: RootSupersystem) -> str:
    return _dumps(document_dict(S))


def _fmt(v) -> str:
    return "(" + ",".join(format_rational(x) for x in v) + ")"


_COORD_RE = re.compile(r"^-?\d+(/\d+)?$")


def parse_coords(text: str) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    if not all(_COORD_RE.match(p) for p in parts):
        raise ValueError(f"coordinates must be integers or p/q fractions: {text!r}")
    return tuple(Q(p) for p in parts)


def _label_from_args(args) -> TypeLabel:
    name = args.type
    family = ALIASES.get(name, name)
    if family not in FAMILIES:
        return TypeLabel.parse(name)
    lam = Q(args.lam) if args.lam is not None else None
    if args.rank is not None:
        params = (args.rank,)
    elif args.t is not None and args.p is not None:
        params = (args.t, args.p)
    elif args.t is not None:
        params = (args.t,)
    else:
        params = ()
    return TypeLabel(family, params, lam)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str) -> RootSupersystem:
    return parse_document(_read(path))


def _parse_params(text: str) -> List:
    out = []
    for item in text.split(","):
        item = item.strip()
        out.append(tuple(int(x) for x in item.split(":")) if ":" in item else int(item))
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rootsuper",
                                 description="Build, verify and classify finite root supersystems.")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a catalog system as a JSON document")
    g.add_argument("--type", required=True, help="family code (B, A0T, B_TT, ...) or a label")
    g.add_argument("--rank", type=int)
    g.add_argument("--t", type=int)
    g.add_argument("--p", type=int)
    g.add_argument("--lambda", dest="lam")
    g.add_argument("--t0", type=int, default=1)
    g.add_argument("--out")

    v = sub.add_parser("verify", help="check the axioms")
    v.add_argument("file")
    v.add_argument("--mode", choices=("t", "tprime", "lattice"), default="t")

    c = sub.add_parser("classify", help="print the classification label")
    c.add_argument("file")

    k = sub.add_parser("components", help="print each irreducible component as a document")
    k.add_argument("file")

    o = sub.add_parser("orbits", help="Weyl orbit of a vector, or a small-orbit search")
    o.add_argument("file")
    mode = o.add_mutually_exclusive_group(required=True)
    mode.add_argument("--seed")
    mode.add_argument("--small", action="store_true")
    o.add_argument("--bound", type=int, default=4)

    s = sub.add_parser("string", help="alpha-string through beta")
    s.add_argument("file")
    s.add_argument("--alpha", required=True)
    s.add_argument("--beta", required=True)

    i = sub.add_parser("isomorphic", help="search for or check an isomorphism")
    i.add_argument("a")
    i.add_argument("b")
    how = i.add_mutually_exclusive_group(required=True)
    how.add_argument("--search", action="store_true")
    how.add_argument("--witness")
    i.add_argument("--dim-limit", type=int, default=4)

    t = sub.add_parser("tower", help="check a chain of nested catalog systems")
    t.add_argument("--type", required=True)
    t.add_argument("--params", required=True, help='e.g. "2,3,4" or "2:3,2:4,3:4"')
    t.add_argument("--t0", type=int, default=1)
    return ap


def _cmd_generate(args, out: TextIO) -> int:
    label = _label_from_args(args)
    S = construct(label, args.t0) if label.family in ("A0T", "C0T") else construct(label)
    text = serialize(S)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def _cmd_verify(args, out: TextIO) -> int:
    S = _load(args.file)
    if args.mode == "t":
        report = verify_T(S)
    elif args.mode == "tprime":
        report = verify_Tprime(S)
    else:
        fractional = next((r for r in S.roots if any(x.denominator != 1 for x in r)), None)
        if fractional is not None:
            raise DocumentError(f"lattice mode needs integral coordinates; root {_fmt(fractional)} is not")
        report = verify_lattice(S.dim, S.form, S.roots)
    out.write(_dumps(report_dict(report)))
    return 0 if report.verdict else 1


def _cmd_classify(args, out: TextIO) -> int:
    S = _load(args.file).relabel(None)
    try:
        label = classify(S)
    except UnrecognizedSystem as exc:
        out.write(_dumps({"error": "unrecognized", "profile": exc.profile}))
        return 1
    except ValueError as exc:
        out.write(_dumps({"error": str(exc)}))
        return 1
    out.write(f"{label}\n")
    if label.family == "D_21L":
        out.write("lambda-orbit: " + " ".join(str(x) for x in lambda_orbit(label.lam)) + "\n")
    return 0


def _cmd_components(args, out: TextIO) -> int:
    dec = connected_components(_load(args.file))
    for comp in dec.components:
        out.write(serialize(comp))
    return 0


def _cmd_orbits(args, out: TextIO) -> int:
    S = _load(args.file)
    if args.seed:
        O = orbit(S, parse_coords(args.seed))
        out.write(f"size={len(O)}\n")
        for e in O:
            out.write(_fmt(e) + "\n")
        return 0
    report = small_orbit_search(S, args.bound)
    for c in report.candidates:
        verdict = "not-weight" if not c.is_weight else "small" if c.is_small else "not-small"
        out.write(f"seed={_fmt(c.seed)} size={c.size} {verdict}\n")
    out.write(f"small orbits: {len(report.small_orbits())}\n")
    return 0


def _cmd_string(args, out: TextIO) -> int:
    S = _load(args.file)
    rs = root_string(S, parse_coords(args.beta), parse_coords(args.alpha))
    out.write(f"p={rs.p} q={rs.q}\n")
    out.write("members: " + " ".join(_fmt(m) for m in rs.members) + "\n")
    return 0


def _cmd_isomorphic(args, out: TextIO) -> int:
    A, B = _load(args.a), _load(args.b)
    if args.search:
        w = find_isomorphism(A, B, args.dim_limit)
        if w is None:
            out.write("not isomorphic\n")
            return 1
        out.write("isomorphic\n")
        out.write(_dumps({"matrix": [[format_rational(x) for x in row] for row in w.matrix],
                          "scalar_r": format_rational(w.scalar_r)}))
        return 0
    doc = json.loads(_read(args.witness))
    w = IsoWitness(tuple(tuple(parse_rational(x) for x in row) for row in doc["matrix"]),
                   parse_rational(doc["scalar_r"]))
    ok = check_isomorphism(A, B, w)
    out.write("valid\n" if ok else "invalid\n")
    return 0 if ok else 1


def _cmd_tower(args, out: TextIO) -> int:
    family = ALIASES.get(args.type, args.type)
    report = truncation_tower(family, _parse_params(args.params), args.t0)
    for label, cl, irr in zip(report.labels, report.classified, report.irreducible):
        out.write(f"{label}: irreducible={irr} classified={cl}\n")
    for (a, b), iso, inc in zip(zip(report.labels, report.labels[1:]), report.isometric,
                                report.inclusions):
        status = "ok" if iso and inc.verdict else "FAIL"
        out.write(f"{a} < {b}: {status}\n")
    out.write("pass\n" if report.passed else "fail\n")
    return 0 if report.passed else 1


_COMMANDS = {
    "generate": _cmd_generate,
    "verify": _cmd_verify,
    "classify": _cmd_classify,
    "components": _cmd_components,
    "orbits": _cmd_orbits,
    "string": _cmd_string,
    "isomorphic": _cmd_isomorphic,
    "tower": _cmd_tower,
}


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    """Execute one subcommand; returns 0 on success, 1 on a negative verdict, 2 on bad usage."""
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, out)
    except (OSError, DocumentError, KeyError, json.JSONDecodeError) as exc:
        print(f"rootsuper: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"rootsuper: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
