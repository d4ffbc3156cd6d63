"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 degenerate geometry.
"""
from __future__ import annotations

import argparse
import sys

from . import __version__
from .bestpair import best_pair, certify_pair, supporting_hyperplanes, tangent_sphere
from .errors import CoincidentPoints, FlatpairError
from .linalg import DEFAULT_TOL, Backend, nullspace_basis
from .minnorm import min_norm_general, project_point
from .problemfile import (
    FORMAT_VERSION,
    ProblemFile,
    format_number,
    format_vector,
    load_problem,
    render_json,
    render_text,
)


def _echo(problem: ProblemFile, backend: Backend, varieties=(), points=()) -> dict:
    conv = (lambda x: x) if backend is Backend.EXACT else float
    echo = {"dimension": problem.dimension, "varieties": {}, "points": {}}
    for name in varieties:
        spec = problem.varieties[name]
        echo["varieties"][name] = {
            "A": [[format_number(conv(x)) for x in row] for row in spec.A],
            "c": [format_number(conv(x)) for x in spec.c],
        }
    for name in points:
        echo["points"][name] = [format_number(conv(x)) for x in problem.points[name]]
    return echo


def _document(operation: str, backend: Backend, echo: dict, outputs: dict,
              residuals: dict) -> dict:
    return {
        "format": FORMAT_VERSION,
        "operation": operation,
        "backend": backend.value,
        "input": echo,
        "outputs": outputs,
        "residuals": residuals,
    }


def _max_abs(*groups):
    values = [abs(x) for g in groups for x in g]
    return format_number(max(values)) if values else "0"


def _certificate_dict(cert) -> dict:
    return {
        "membership1": format_vector(cert.membership1),
        "membership2": format_vector(cert.membership2),
        "orthogonality1": format_vector(cert.orthogonality1),
        "orthogonality2": format_vector(cert.orthogonality2),
        "verdict": cert.verdict,
    }


def cmd_minnorm(problem: ProblemFile, name: str, backend: Backend, tol: float) -> dict:
    V = problem.variety(name, backend, tol)
    res = min_norm_general(V)
    membership = V.A @ res.point - V.c
    outputs = {"point": format_vector(res.point), "dist_sq": format_number(res.dist_sq)}
    residuals = {"membership": format_vector(membership), "max_abs": _max_abs(membership)}
    return _document("minnorm", backend, _echo(problem, backend, [name]), outputs, residuals)


def cmd_project(problem: ProblemFile, name: str, point: str, backend: Backend,
                tol: float) -> dict:
    V = problem.variety(name, backend, tol)
    q = problem.point(point, backend)
    res = project_point(V, q)
    membership = V.A @ res.point - V.c
    d = q - res.point
    orth = [d.dot(b) for b in nullspace_basis(V.A, tol)]
    outputs = {"point": format_vector(res.point), "dist_sq": format_number(res.dist_sq)}
    residuals = {
        "membership": format_vector(membership),
        "orthogonality": format_vector(orth),
        "max_abs": _max_abs(membership, orth),
    }
    return _document("project", backend, _echo(problem, backend, [name], [point]),
                     outputs, residuals)


def cmd_pair(problem: ProblemFile, name1: str, name2: str, backend: Backend, tol: float,
             full: bool = False) -> dict:
    V1 = problem.variety(name1, backend, tol)
    V2 = problem.variety(name2, backend, tol)
    pair = best_pair(V1, V2, tol)
    cert = certify_pair(V1, V2, pair.s1, pair.s2, tol)
    outputs = {
        "s1": format_vector(pair.s1),
        "s2": format_vector(pair.s2),
        "dist_sq": format_number(pair.dist_sq),
    }
    if backend is Backend.FLOAT:
        outputs["distance"] = format_number(pair.distance)
    outputs["params1"] = dict(zip(pair.names1, format_vector(pair.params1)))
    outputs["params2"] = dict(zip(pair.names2, format_vector(pair.params2)))
    outputs["family_dim"] = pair.family_dim
    outputs["certificate"] = _certificate_dict(cert)
    if full:
        sphere = tangent_sphere(pair)
        outputs["sphere"] = {"center": format_vector(sphere.center),
                             "radius_sq": format_number(sphere.radius_sq)}
        try:
            h1, h2 = supporting_hyperplanes(pair, tol)
            outputs["hyperplanes"] = [
                {"normal": format_vector(h.normal), "offset": format_number(h.offset)}
                for h in (h1, h2)
            ]
        except CoincidentPoints:
            outputs["hyperplanes"] = None
    residuals = {
        "max_abs": format_number(cert.max_residual()),
        "verdict": cert.verdict,
    }
    return _document("pair", backend, _echo(problem, backend, [name1, name2]),
                     outputs, residuals)


def cmd_check(problem: ProblemFile, name1: str, name2: str, point1: str, point2: str,
              backend: Backend, tol: float) -> dict:
    V1 = problem.variety(name1, backend, tol)
    V2 = problem.variety(name2, backend, tol)
    s1 = problem.point(point1, backend)
    s2 = problem.point(point2, backend)
    cert = certify_pair(V1, V2, s1, s2, tol)
    outputs = {"certificate": _certificate_dict(cert),
               "dist_sq": format_number((s1 - s2).norm_sq())}
    residuals = {"max_abs": format_number(cert.max_residual()), "verdict": cert.verdict}
    return _document("check", backend,
                     _echo(problem, backend, [name1, name2], [point1, point2]),
                     outputs, residuals)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="backend", action="store_const", const=Backend.EXACT,
                      help="exact rational arithmetic (default)")
    mode.add_argument("--float", dest="backend", action="store_const", const=Backend.FLOAT,
                      help="float64 arithmetic")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="float-mode tolerance (default %(default)g)")
    common.add_argument("--output", choices=("json", "text"), default="json")
    common.set_defaults(backend=Backend.EXACT)

    parser = argparse.ArgumentParser(
        prog="flatpair",
        description="Closest points of linear varieties via Gram determinants.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("minnorm", parents=[common], help="point of a variety nearest the origin")
    p.add_argument("problem")
    p.add_argument("variety")

    p = sub.add_parser("project", parents=[common], help="project a query point onto a variety")
    p.add_argument("problem")
    p.add_argument("variety")
    p.add_argument("point")

    p = sub.add_parser("pair", parents=[common], help="best approximation pair of two varieties")
    p.add_argument("problem")
    p.add_argument("variety1")
    p.add_argument("variety2")
    p.add_argument("--full", action="store_true",
                   help="also emit the tangent sphere and supporting hyperplanes")

    p = sub.add_parser("check", parents=[common], help="certify a user-supplied pair of points")
    p.add_argument("problem")
    p.add_argument("variety1")
    p.add_argument("variety2")
    p.add_argument("point1")
    p.add_argument("point2")
    return parser


def run(args: argparse.Namespace) -> dict:
    problem = load_problem(args.problem)
    if args.command == "minnorm":
        return cmd_minnorm(problem, args.variety, args.backend, args.tol)
    if args.command == "project":
        return cmd_project(problem, args.variety, args.point, args.backend, args.tol)
    if args.command == "pair":
        return cmd_pair(problem, args.variety1, args.variety2, args.backend, args.tol,
                        args.full)
    return cmd_check(problem, args.variety1, args.variety2, args.point1, args.point2,
                     args.backend, args.tol)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = run(args)
    except FlatpairError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    render = render_json if args.output == "json" else render_text
    sys.stdout.write(render(doc))
    return 0
