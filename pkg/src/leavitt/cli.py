"""Command-line front end (``lpa``).

Exit codes: 0 ok, 2 parse or input error, 3 relation violation,
4 math-domain error, 5 oracle failures.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path as FsPath

from .algebra import LeavittPathAlgebra, format_element
from .errors import GraphError, LeavittError, ParseError, RelationError
from .graph import parse_graph, rose
from .modules import (TwistedModule, format_sfc, sfc_act, sfc_equiv, sfc_witness)
from .morphisms import (AlgMatrix, GenMap, apply_hom, build_anick, build_phi_pq,
                        check_relations, iso_condition)
from .oracle import SUITES, SampleConfig, check_suite
from .parsing import (format_genmap, parse_descriptor, parse_element,
                      parse_genmap, parse_module_element, parse_sfc_descriptor)
from .scalars import Field

EXIT_OK, EXIT_PARSE, EXIT_RELATION, EXIT_DOMAIN, EXIT_ORACLE = 0, 2, 3, 4, 5

DEMOS = ("example-2-4", "example-3-7")


def _session(args) -> LeavittPathAlgebra:
    if (args.graph is None) == (args.rose is None):
        raise ParseError("give exactly one of --graph FILE or --rose N")
    if args.rose is not None:
        graph = rose(args.rose)
    else:
        try:
            text = FsPath(args.graph).read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read graph file: {exc}") from None
        graph = parse_graph(text)
    return LeavittPathAlgebra(graph, Field.parse(args.field))


def _module(args, alg):
    if not args.module:
        raise ParseError("--module sfc:c=...,f=... is required")
    spec, twist = parse_sfc_descriptor(args.module, alg, args.assume_irreducible)
    if getattr(args, "twist", None):
        if twist is not None:
            raise ParseError("twist given both in the descriptor and as --twist")
        twist = parse_element(args.twist, alg)
    return spec, twist


def _hom(text: str, alg: LeavittPathAlgebra, inverse: bool) -> GenMap:
    if text.startswith("anick:"):
        fields = parse_descriptor(text, "anick")
        missing = {"p", "e1", "e2"} - set(fields)
        if missing:
            raise ParseError(f"anick descriptor is missing {sorted(missing)}")
        sigma, sigma_inv = build_anick(parse_element(fields["p"], alg),
                                       fields["e1"], fields["e2"])
        return sigma_inv if inverse else sigma
    if inverse:
        raise ParseError("--inverse is only available for anick: maps")
    try:
        body = FsPath(text).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read map file: {exc}") from None
    return parse_genmap(body, alg)


def _matrix(text: str, alg: LeavittPathAlgebra) -> AlgMatrix:
    rows = [[parse_element(x, alg) for x in row.split(",")] for row in text.split(";")]
    return AlgMatrix(alg, rows)


# -- verbs ----------------------------------------------------------------


def cmd_normalize(args, out):
    alg = _session(args)
    print(format_element(parse_element(args.expr, alg)), file=out)
    return EXIT_OK


def cmd_apply(args, out):
    alg = _session(args)
    m = _hom(args.hom, alg, args.inverse)
    if not m.verified:
        m = m.verify()
    print(format_element(apply_hom(m, parse_element(args.expr, alg))), file=out)
    return EXIT_OK


def cmd_check_hom(args, out):
    alg = _session(args)
    violations = check_relations(_hom(args.hom, alg, args.inverse))
    for v in violations:
        print(f"violated {v}", file=out)
    if violations:
        return EXIT_RELATION
    print("ok", file=out)
    return EXIT_OK


def cmd_iso_cond(args, out):
    alg = _session(args)
    edges = [e.strip() for e in args.edges.split(",")]
    P, Q = _matrix(args.P, alg), _matrix(args.Q, alg)
    phi = build_phi_pq(edges, P, Q)
    w = alg.graph.range(edges[0])
    print(format_genmap(phi), file=out)
    print(f"iso_condition: {str(iso_condition(phi, P, Q, w)).lower()}", file=out)
    return EXIT_OK


def cmd_act(args, out):
    alg = _session(args)
    spec, twist = _module(args, alg)
    r = parse_element(args.r, alg)
    m = parse_module_element(args.m, spec)
    result = TwistedModule(spec, twist).act(r, m) if twist is not None else sfc_act(r, m, spec)
    print(format_sfc(result), file=out)
    return EXIT_OK


def cmd_equiv(args, out):
    alg = _session(args)
    spec, _ = _module(args, alg)
    same = sfc_equiv(parse_element(args.p, alg), parse_element(args.q, alg), spec)
    print("equivalent" if same else "not equivalent", file=out)
    return EXIT_OK


def cmd_witness(args, out):
    alg = _session(args)
    spec, _ = _module(args, alg)
    print(format_element(sfc_witness(parse_module_element(args.m, spec), spec)), file=out)
    return EXIT_OK


def cmd_oracle(args, out):
    alg = _session(args)
    cfg = SampleConfig(alg, seed=args.seed, max_len=args.max_len, samples=args.samples)
    subject = None
    if args.suite == "module":
        subject, _ = _module(args, alg)
    elif args.suite == "hom":
        if not args.hom:
            raise ParseError("the hom suite needs --hom")
        subject = _hom(args.hom, alg, args.inverse)
    report = check_suite(args.suite, cfg, subject)
    for line in report:
        print(line, file=out)
    if report:
        return EXIT_ORACLE
    print(f"ok {args.suite} seed={args.seed} samples={args.samples}", file=out)
    return EXIT_OK


def demo_unfixed_unit(out):
    alg = LeavittPathAlgebra(parse_graph("vertex v\nedge e v v"))
    P = AlgMatrix(alg, [[alg.ghost("e")]])
    Q = AlgMatrix(alg, [[alg.edge("e")]])
    phi = build_phi_pq(["e"], P, Q)
    print("R_1, P = e', Q = e", file=out)
    print(format_genmap(phi), file=out)
    print(f"phi(P) = {format_element(apply_hom(phi, P[0, 0]))}", file=out)
    print(f"iso_condition: {str(iso_condition(phi, P, Q, 'v')).lower()}", file=out)


def demo_twist_equivalence(out):
    from .modules import SfcSpec
    from .scalars import IrrPoly, parse_poly

    alg = LeavittPathAlgebra(rose(2))
    spec = SfcSpec(alg, alg.graph.path(("e2",)), IrrPoly.make(parse_poly("1 - x", alg.field)))
    p, q = alg.edge("e1"), parse_element("e1*e2'", alg)
    diff = parse_element("e1*e2'*(v - e2)", alg)
    print("R_2, c = e2, f = 1 - x", file=out)
    print(f"e1*e2' - e1 == e1*e2'*(v - e2): {str(q - p == diff).lower()}", file=out)
    for a, b in ((p, q), (p, alg.zero())):
        verdict = "equivalent" if sfc_equiv(a, b, spec) else "not equivalent"
        print(f"{format_element(a)} ~ {format_element(b)}: {verdict}", file=out)


def cmd_demo(args, out):
    {"example-2-4": demo_unfixed_unit, "example-3-7": demo_twist_equivalence}[args.name](out)
    return EXIT_OK


# -- argument parsing -----------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", metavar="FILE", help="graph description file")
    common.add_argument("--rose", type=int, metavar="N", help="use the rose with N petals")
    common.add_argument("--field", default="Q", help="Q or Fp:<prime> (default Q)")
    common.add_argument("--assume-irreducible", action="store_true",
                        help="accept f when irreducibility cannot be decided")

    parser = argparse.ArgumentParser(prog="lpa", description="Leavitt path algebra toolkit")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("normalize", parents=[common], help="print the normal form")
    p.add_argument("expr")
    p.set_defaults(func=cmd_normalize)

    for verb, func, text in (("apply", cmd_apply, "apply a homomorphism"),
                             ("check-hom", cmd_check_hom, "check the defining relations")):
        p = sub.add_parser(verb, parents=[common], help=text)
        p.add_argument("--hom", required=True,
                       help="map file or anick:p=<expr>,e1=<name>,e2=<name>")
        p.add_argument("--inverse", action="store_true", help="use the inverse Anick map")
        if verb == "apply":
            p.add_argument("expr")
        p.set_defaults(func=func)

    p = sub.add_parser("iso-cond", parents=[common], help="build phi_{P,Q} and test invertibility")
    p.add_argument("--edges", required=True, help="comma separated edge names")
    p.add_argument("--P", required=True, help="rows separated by ';', entries by ','")
    p.add_argument("--Q", required=True)
    p.set_defaults(func=cmd_iso_cond)

    p = sub.add_parser("act", parents=[common], help="act on a module element")
    p.add_argument("--module", required=True)
    p.add_argument("--twist", help="Anick parameter p for the twisted module")
    p.add_argument("r")
    p.add_argument("m")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("equiv", parents=[common], help="test p ~ q modulo L f(c)")
    p.add_argument("--module", required=True)
    p.add_argument("p")
    p.add_argument("q")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("witness", parents=[common], help="find r with r.m = z")
    p.add_argument("--module", required=True)
    p.add_argument("m")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("oracle", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--module")
    p.add_argument("--hom")
    p.add_argument("--inverse", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("demo", help="worked examples")
    p.add_argument("name", choices=DEMOS)
    p.set_defaults(func=cmd_demo)
    return parser


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, LeavittError):
        return exc.exit_code
    if isinstance(exc, (GraphError, ValueError)):
        return EXIT_PARSE
    return 1


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except RelationError as exc:
        print(f"error: {exc}", file=err)
        for v in exc.violations:
            print(f"  violated {v}", file=err)
        return EXIT_RELATION
    except (LeavittError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())
