"""Command-line front end.

Exit status: 0 success, 1 a check failed, 2 the input was rejected.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .cellular import bredon_cohomology, bredon_table
from .coeff import GroupMismatch, NotAFunctor, NotAnAction
from .csupp import bredon_csupp
from .documents import ParseError, ValidationError, load_complex, load_group, load_matrix, load_pair, load_system
from .gcomplex import InvalidComplex, NonRegular, apply_subdivision_policy
from .linalg import FGAbGroup, smith
from .poset import check_functor, cohomology_poset, stabilizer_functor
from .verify import CHECKS, default_corpus, run_all

OK, CHECK_FAILED, INPUT_ERROR = 0, 1, 2


class CheckFailed(RuntimeError):
    pass


def _subdivide(value: str) -> str | int:
    if value in ("auto", "off"):
        return value
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("expected auto, off or a nonnegative integer") from None
    if n < 0:
        raise argparse.ArgumentTypeError("subdivision count must be nonnegative")
    return n


def _degrees(value: str) -> tuple[int, int]:
    try:
        if ".." in value:
            a, b = value.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a..b or a single degree") from None
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError("need 0 <= a <= b")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bredon", description="Bredon cohomology of finite G-simplicial complexes")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, pair: bool = False, coefficients: bool = True):
        p.add_argument("--group", help="group document, inline JSON, or a name such as Z/2 or S_3")
        if pair:
            p.add_argument("--pair", required=True, help="pair document (complex plus subcomplex_facets)")
        else:
            p.add_argument("--complex", required=True, help="complex document or inline JSON")
        if coefficients:
            p.add_argument("--coefficients", required=True, help="coefficient document or inline JSON")
        p.add_argument("--subdivide", type=_subdivide, default="auto", help="auto, off, or a count")
        p.add_argument("--degrees", type=_degrees, default=None, help="degree range a..b")

    def output(p):
        p.add_argument("--format", choices=["text", "json-document"], default="text")
        p.add_argument("--out", help="write output here instead of stdout")

    p = sub.add_parser("cohomology", help="Bredon cohomology of a G-complex")
    common(p)
    p.add_argument("--route", choices=["cellular", "poset", "both"], default="both")
    output(p)

    p = sub.add_parser("csupport", help="compactly supported cohomology of X minus a subcomplex")
    common(p, pair=True)
    p.add_argument("--path", choices=["relative", "collapsed", "both"], default="relative")
    output(p)

    p = sub.add_parser("table", help="cohomology of X × G/H for every subgroup H")
    common(p)
    output(p)

    p = sub.add_parser("functor-dump", help="stabilizer functor on the quotient face poset")
    common(p)
    output(p)

    p = sub.add_parser("verify", help="run the structural checks over the seeded corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random", type=int, default=3, help="random equivariant complexes per group")
    p.add_argument("--checks", nargs="*", choices=sorted(CHECKS), default=None)
    p.add_argument("--timings", action="store_true", help="include wall-clock timings")
    output(p)

    p = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    p.add_argument("--matrix", required=True, help="matrix document or inline JSON")
    output(p)
    return parser


def _inputs(args):
    G = load_group(args.group) if args.group else None
    if getattr(args, "pair", None):
        P = load_pair(args.pair, G)
        G = P.total.group
        return G, P, load_system(args.coefficients, G)
    X = load_complex(args.complex, G)
    return X.group, X, load_system(args.coefficients, X.group)


def _window(groups: list[FGAbGroup], degrees: tuple[int, int] | None) -> list[tuple[int, FGAbGroup]]:
    lo, hi = degrees if degrees else (0, max(len(groups) - 1, 0))
    return [(n, groups[n] if n < len(groups) else FGAbGroup(0)) for n in range(lo, hi + 1)]


def _render_groups(window, fmt: str, extra: dict | None = None) -> str:
    if fmt == "text":
        return "\n".join(f"H{n} = {g}" for n, g in window)
    doc = dict(extra or {})
    doc["cohomology"] = [{"degree": n, **g.to_document()} for n, g in window]
    return json.dumps(doc, indent=2)


def cmd_cohomology(args) -> str:
    G, X, E = _inputs(args)
    X = apply_subdivision_policy(X, args.subdivide)
    results = {}
    if args.route in ("cellular", "both"):
        results["cellular"] = bredon_cohomology(X, E, subdivide="off")
    if args.route in ("poset", "both"):
        results["poset"] = cohomology_poset(X, E, subdivide="off")
    groups = next(iter(results.values()))
    if len(results) == 2:
        a, b = (_window(r, args.degrees) for r in results.values())
        if [g.normal_form for _, g in a] != [g.normal_form for _, g in b]:
            raise CheckFailed("cellular and poset routes disagree: "
                              f"{[str(g) for _, g in a]} vs {[str(g) for _, g in b]}")
    return _render_groups(_window(groups, args.degrees), args.format, {"route": args.route})


def cmd_csupport(args) -> str:
    G, P, E = _inputs(args)
    paths = ["relative", "collapsed"] if args.path == "both" else [args.path]
    results = [bredon_csupp(P, E, path=p, subdivide=args.subdivide) for p in paths]
    if len(results) == 2:
        a, b = (_window(r.groups, args.degrees) for r in results)
        if [g.normal_form for _, g in a] != [g.normal_form for _, g in b]:
            raise CheckFailed("relative and collapsed paths disagree")
    window = _window(results[0].groups, args.degrees)
    if args.format == "text":
        return "\n".join(f"Hc{n} = {g}" for n, g in window)
    return _render_groups(window, args.format, {"models": [r.model for r in results]})


def cmd_table(args) -> str:
    G, X, E = _inputs(args)
    table = bredon_table(X, E, subdivide=args.subdivide)
    cls = G.conjugacy_poset
    if args.format == "text":
        lines = []
        for i, (H, groups) in enumerate(table.items()):
            cells = ", ".join(f"H{n} = {g}" for n, g in _window(groups, args.degrees))
            lines.append(f"subgroup {i} {list(H.elements)} (class {cls.index(H)}): {cells}")
        return "\n".join(lines)
    rows = [{"subgroup": list(H.elements), "class": cls.index(H),
             "cohomology": [{"degree": n, **g.to_document()} for n, g in _window(groups, args.degrees)]}
            for H, groups in table.items()]
    return json.dumps({"table": rows}, indent=2)


def cmd_functor_dump(args) -> str:
    G, X, E = _inputs(args)
    X = apply_subdivision_policy(X, args.subdivide)
    F = stabilizer_functor(X, E)
    report = check_functor(F, X, E)
    doc = F.to_document()
    doc["checks"] = {"commutative": report.commutative, "constructible": report.constructible,
                     "stalks": report.stalks, "witnesses": report.witnesses}
    if not report.passed:
        raise CheckFailed(json.dumps(doc["checks"]))
    if args.format == "text":
        lines = [f"cell {x['cell']}: stratum {x['stratum']}, value {FGAbGroup.from_normal_form(x['value']['rank'], x['value']['torsion'])}"
                 for x in doc["elements"]]
        lines += [f"{c['lower']} <= {c['upper']}: {c['matrix']['rows']}x{c['matrix']['cols']} matrix"
                  for c in doc["covers"]]
        return "\n".join(lines)
    return json.dumps(doc, indent=2)


def cmd_verify(args) -> tuple[str, bool]:
    corpus = default_corpus(args.seed, n_random=args.random)
    report = run_all(corpus, args.checks)
    if args.format == "text":
        return report.table(timings=args.timings), report.passed
    return json.dumps(report.to_document(timings=args.timings), indent=2), report.passed


def cmd_snf(args) -> str:
    A = load_matrix(args.matrix)
    dec = smith(A)
    if args.format == "text":
        return f"diagonal = {list(dec.diagonal)}\nrank = {dec.rank}"
    return json.dumps({"diagonal": list(dec.diagonal), "rank": dec.rank,
                       "U": dec.U.to_dense(), "V": dec.V.to_dense()}, indent=2)


COMMANDS = {"cohomology": cmd_cohomology, "csupport": cmd_csupport, "table": cmd_table,
            "functor-dump": cmd_functor_dump, "snf": cmd_snf}


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            text, passed = cmd_verify(args)
            _emit(text, args.out)
            return OK if passed else CHECK_FAILED
        _emit(COMMANDS[args.command](args), args.out)
        return OK
    except CheckFailed as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return CHECK_FAILED
    except NonRegular as exc:
        where = getattr(args, "complex", None) or getattr(args, "pair", None)
        label = "<inline>" if where and where.lstrip().startswith("{") else where
        print(f"input error: {label}: field 'action': action is not regular ({exc}); "
              "try --subdivide auto", file=sys.stderr)
        return INPUT_ERROR
    except (ParseError, ValidationError, GroupMismatch, InvalidComplex, NotAnAction, NotAFunctor) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
