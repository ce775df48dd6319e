"""Command line interface.

All results go to stdout as JSON (SVG goes to the ``--out`` file).  Exit
status is 0 on success, 1 on a domain error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import atf, germ, io, locality, markov, reduction
from .errors import ArtifactError
from .lattice import det2
from .polytope import as_ratvec
from .render import RenderOptions, render_svg


def _rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}")


def _list_of(conv: Callable) -> Callable:
    def parse(s: str):
        try:
            return [conv(x) for x in s.split(",") if x.strip()]
        except (ValueError, ZeroDivisionError, argparse.ArgumentTypeError):
            raise argparse.ArgumentTypeError(f"not a comma separated list: {s!r}")

    return parse


def _int(s: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")


def _triple(s: str):
    vals = _list_of(_int)(s)
    if len(vals) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma separated integers, got {s!r}")
    return tuple(vals)


def _bound(s: str):
    try:
        return locality.parse_bound(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational or 'inf', got {s!r}")


def _emit(obj) -> None:
    sys.stdout.write(io.dumps(obj))


# -- handlers -----------------------------------------------------------------

def cmd_markov_tree(args) -> None:
    _emit(markov.tree_to_json(markov.markov_tree(args.max_entry)))


def cmd_markov_verify(args) -> None:
    nodes = markov.markov_tree(args.max_entry)
    bad_eq = [list(n.triple) for n in nodes if not markov.is_markov(n.triple)]
    bad_inv = [
        [list(n.triple), s]
        for n in nodes
        for s in (1, 2, 3)
        if markov.mutate_triple(markov.mutate_triple(n.triple, s), s) != n.triple
    ]
    _emit({"count": len(nodes), "equation_failures": bad_eq, "involution_failures": bad_inv,
           "ok": not bad_eq and not bad_inv})


def cmd_delta_m(args) -> None:
    d = atf.diagram_for_triple(args.triple, args.path)
    _, labels = atf.triangle_normals(d)
    _emit(io.diagram_to_json(d, triple=list(markov.canonical(args.triple)), corner_labels=list(labels)))


def cmd_mutate(args) -> None:
    d = io.diagram_from_json(io.load(args.input))
    if not 0 <= args.node < len(d.nodes):
        raise SystemExit(_usage(f"--node: index {args.node} out of range (diagram has {len(d.nodes)} nodes)"))
    out, tau = atf.mutate_diagram(d, args.node)
    with open(args.out, "w") as fh:
        fh.write(io.dumps(io.diagram_to_json(out)))
    _emit({"tau": tau.to_json(), "node": args.node, "facets": len(out.polytope.facets)})


def cmd_render(args) -> None:
    d = io.diagram_from_json(io.load(args.input))
    opts = RenderOptions(args.width, args.height, chambers=args.chambers, nodes=not args.no_nodes,
                         labels=args.labels)
    svg = render_svg(d, opts)
    with open(args.out, "w") as fh:
        fh.write(svg)
    _emit({"svg": args.out, "bytes": len(svg.encode())})


def cmd_germ_upsilon(args) -> None:
    _emit(germ.germ_upsilon(reduction.UpsilonParams(args.k, args.a1, args.a2)).to_json())


def cmd_germ_theta(args) -> None:
    (normals, _) = atf.triangle_normals(atf.diagram_for_triple(args.triple))
    t = list(markov.canonical(args.triple))
    if args.tail:
        g = germ.germ_theta_product(normals, args.area, args.tail, triple=t)
    else:
        g = germ.germ_theta(normals, args.area, mode=args.mode, triple=t)
    _emit(g.to_json())


def cmd_germ_product(args) -> None:
    _emit(germ.germ_product_torus(args.a).to_json())


def cmd_germ_toric(args) -> None:
    poly = io.polytope_from_json(io.load(args.polytope))
    _emit(germ.germ_toric_fibre(poly, as_ratvec(args.point)).to_json())


def cmd_germ_compare(args) -> None:
    left = io.germ_from_json(io.load(args.left))
    right = io.germ_from_json(io.load(args.right))
    _emit(germ.germ_equivalent(left, right).to_json())


def cmd_germ_invariants(args) -> None:
    _emit(germ.germ_invariants(io.germ_from_json(io.load(args.input))))


def cmd_check_cs(args) -> None:
    ok, margins = locality.has_property_cs(args.torus, locality.ChartSpec(args.radius, args.lambda_s))
    _emit({"cs": ok, "slack_capacity": margins["slack_capacity"], "slack_sphere": margins["slack_sphere"]})


def cmd_check_epsilon(args) -> None:
    eps = locality.epsilon_threshold(args.family, locality.ChartSpec(args.radius, args.lambda_s))
    _emit({"family": args.family, "epsilon": locality.format_bound(eps)})


def cmd_check_theorem_d(args) -> None:
    ok, report = locality.theorem_d_condition(args.area, args.tail or [], locality.ChartSpec(args.radius, args.lambda_s))
    report["ok"] = ok
    _emit(report)


def cmd_verify_dia(args) -> None:
    path = markov.path_to(args.triple)
    diagram = atf.cp2_diagram()
    triple = (1, 1, 1)
    steps = []
    for s in path:
        k = atf.node_for_slot(diagram, s)
        nxt, tau = atf.mutate_diagram(diagram, k)
        rep = atf.check_dia_invariance(diagram, nxt, tau, args.samples, args.seed)
        new = markov.canonical(markov.mutate_triple(triple, s))
        steps.append({"from": list(triple), "to": list(new), "node": k, "tau": tau.to_json(), **rep.to_json()})
        diagram, triple = nxt, new
    _emit({"triple": list(markov.canonical(args.triple)), "seed": args.seed, "steps": steps,
           "ok": all(st["ok"] for st in steps)})


def cmd_verify_triangles(args) -> None:
    rows = []
    for n in markov.triples_to_depth(args.depth):
        d = atf.delta_m(markov.path_to(n.triple))
        (u, v, w), labels = atf.triangle_normals(d)
        offsets_ok = all(o == Fraction(1, 3) for o in d.polytope.offsets)
        div_ok = all(
            all(c % p == 0 for c in (x[0] - y[0], x[1] - y[1]))
            for (x, y), p in zip(((u, v), (v, w), (w, u)), labels)
        )
        rows.append({"triple": list(n.triple), "dets": [det2(u, v), det2(v, w), det2(w, u)],
                     "offsets_ok": offsets_ok, "differences_divisible": div_ok,
                     "ok": offsets_ok and div_ok and sorted(labels) == list(n.triple)})
    _emit({"depth": args.depth, "triangles": rows, "ok": all(r["ok"] for r in rows)})


# -- parser -------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def _usage(message: str) -> int:
    sys.stderr.write(f"usage error: {message}\n")
    return 2


def _chart_args(p) -> None:
    p.add_argument("--radius", type=_rational, required=True)
    p.add_argument("--lambda-s", dest="lambda_s", type=_bound, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="atfgerm", description="Exact lattice computations for ATF diagrams and displacement energy germs.")
    top = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    mk = top.add_parser("markov").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = mk.add_parser("tree")
    p.add_argument("--max-entry", type=_int, required=True)
    p.set_defaults(func=cmd_markov_tree)
    p = mk.add_parser("verify")
    p.add_argument("--max-entry", type=_int, required=True)
    p.set_defaults(func=cmd_markov_verify)

    dg = top.add_parser("diagram").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = dg.add_parser("delta-m")
    p.add_argument("--triple", type=_triple, required=True)
    p.add_argument("--path", type=_list_of(_int))
    p.set_defaults(func=cmd_delta_m)
    p = dg.add_parser("mutate")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--node", type=_int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_mutate)
    p = dg.add_parser("render")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--chambers", action="store_true")
    p.add_argument("--no-nodes", action="store_true")
    p.add_argument("--labels", action="store_true")
    p.add_argument("--width", type=_int, default=400)
    p.add_argument("--height", type=_int, default=400)
    p.set_defaults(func=cmd_render)

    gm = top.add_parser("germ").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = gm.add_parser("upsilon")
    p.add_argument("-k", type=_int, required=True)
    p.add_argument("--a1", type=_rational, required=True)
    p.add_argument("--a2", type=_rational, required=True)
    p.set_defaults(func=cmd_germ_upsilon)
    p = gm.add_parser("theta")
    p.add_argument("--triple", type=_triple, required=True)
    p.add_argument("--area", type=_rational, required=True)
    p.add_argument("--tail", type=_list_of(_rational))
    p.add_argument("--mode", choices=("literal", "cone"), default="literal")
    p.set_defaults(func=cmd_germ_theta)
    p = gm.add_parser("product")
    p.add_argument("--a", type=_list_of(_rational), required=True)
    p.set_defaults(func=cmd_germ_product)
    p = gm.add_parser("toric")
    p.add_argument("--polytope", required=True)
    p.add_argument("--point", type=_list_of(_rational), required=True)
    p.set_defaults(func=cmd_germ_toric)
    p = gm.add_parser("compare")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(func=cmd_germ_compare)
    p = gm.add_parser("invariants")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_germ_invariants)

    ck = top.add_parser("check").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = ck.add_parser("cs")
    p.add_argument("--torus", type=_list_of(_rational), required=True)
    _chart_args(p)
    p.set_defaults(func=cmd_check_cs)
    p = ck.add_parser("epsilon")
    p.add_argument("--family", choices=("upsilon", "theta"), required=True)
    _chart_args(p)
    p.set_defaults(func=cmd_check_epsilon)
    p = ck.add_parser("theorem-d")
    p.add_argument("--area", type=_rational, required=True)
    p.add_argument("--tail", type=_list_of(_rational), required=True)
    _chart_args(p)
    p.set_defaults(func=cmd_check_theorem_d)

    vf = top.add_parser("verify").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = vf.add_parser("dia-invariance")
    p.add_argument("--triple", type=_triple, required=True)
    p.add_argument("--samples", type=_int, default=1000)
    p.add_argument("--seed", type=_int, default=0)
    p.set_defaults(func=cmd_verify_dia)
    p = vf.add_parser("triangles")
    p.add_argument("--depth", type=_int, default=6)
    p.set_defaults(func=cmd_verify_triangles)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except ArtifactError as exc:
        sys.stderr.write(io.dumps({"error": exc.code, "message": str(exc)}))
        return 1
    except (OSError, KeyError, ValueError) as exc:
        sys.stderr.write(io.dumps({"error": type(exc).__name__, "message": str(exc)}))
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
