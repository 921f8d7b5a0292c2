"""Command-line front end.

Exit codes: 0 pass/converged/reliable, 1 violated/diverged/unreliable,
2 usage or spec errors.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import certify as C
from .certify import SampleConfig, _jsonable
from .cones import IceCream, Orthant, parse_cone_spec
from .degree import (Interval, check_theorem, degree, degree_2d, Disk, Box,
                     locate_fixed_points, parse_region_spec, THEOREMS)
from .maps import BUILTIN_NAMES, Builtin, FunctionMap, parse_map_spec, unimodal_sigmoid_layer
from .solvers import (HypothesisViolation, IterationTrace, SolveResult, contraction_solve,
                      iterate, monotone_descent)

PROPERTIES = ("monotone", "sup_monotone", "scalable", "subhomogeneous", "contractive",
              "norm_monotone", "guiding_g", "guiding_g2", "invariant_cone")
DEMOS = ("example3", "zigzag", "contraction", "winding", "theorems", "unimodal")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- io helpers

def load_doc(text: str):
    """Inline JSON, a path to a JSON file, or a bare builtin name."""
    s = text.strip()
    if s.startswith("{") or s.startswith("["):
        return json.loads(s)
    if os.path.exists(text):
        with open(text) as fh:
            return json.load(fh)
    if s in BUILTIN_NAMES:
        return {"type": "builtin", "name": s}
    raise UsageError(f"cannot read spec {text!r}: not JSON, not a file, not a builtin name")


def dumps(doc) -> str:
    return json.dumps(_jsonable(doc), indent=2, sort_keys=True, allow_nan=True)


def _vec(text):
    if text is None:
        return None
    try:
        vals = json.loads(text) if text.strip().startswith("[") else \
            [float(t) for t in text.replace(",", " ").split()]
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"bad vector {text!r}") from exc
    return np.atleast_1d(np.asarray(vals, dtype=float))


def emit_trace(result: SolveResult | IterationTrace, fmt: str = "tabular") -> str:
    """Render a trace.  Tabular rows: k, x components, residual_w, order
    flag, bound; floats use shortest round-trip form."""
    trace = result.trace if isinstance(result, SolveResult) else result
    if fmt == "structured":
        return json.dumps(_jsonable({
            "iterates": trace.iterates, "residual_w": trace.residual_w,
            "order_descending": trace.order_descending,
            "bound_certificate": trace.bound_certificate, "status": trace.status,
            "message": trace.message}), sort_keys=True)
    if fmt != "tabular":
        raise ValueError(f"unknown trace format {fmt!r}")
    dim = len(trace.iterates[0])
    head = ["k"] + [f"x{i + 1}" for i in range(dim)] + ["residual_w", "order_flag", "bound"]
    lines = ["\t".join(head)]
    for k, r in enumerate(trace.residual_w, start=1):
        x = trace.iterates[k]
        b = trace.bound_certificate[k] if trace.bound_certificate else None
        row = [str(k)] + [repr(float(v)) for v in x] + [
            repr(float(r)), "1" if trace.order_descending[k - 1] else "0",
            "" if b is None else repr(float(b))]
        lines.append("\t".join(row))
    return "\n".join(lines) + "\n"


def parse_trace(text: str) -> IterationTrace:
    """Inverse of the structured form of :func:`emit_trace`."""
    d = json.loads(text)
    return IterationTrace(
        iterates=[np.asarray(x, dtype=float) for x in d["iterates"]],
        residual_w=[float(r) for r in d["residual_w"]],
        order_descending=[bool(f) for f in d["order_descending"]],
        bound_certificate=None if d["bound_certificate"] is None
        else [float(b) for b in d["bound_certificate"]],
        status=d["status"], message=d.get("message", ""))


# ---------------------------------------------------------------- parser

def _seed_default():
    env = os.environ.get("CONEFIX_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"CONEFIX_SEED must be an integer, got {env!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="conefix", description="Cone-ordered fixed-point analysis.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def common(sp, cone=True, sampling=True):
        sp.add_argument("--map", required=True, help="map spec: JSON, file, or builtin name")
        if cone:
            sp.add_argument("--cone", help="cone spec (default: orthant of the map dimension)")
        if sampling:
            sp.add_argument("--seed", type=int, default=None)
            sp.add_argument("--samples", type=int, default=10_000)
            sp.add_argument("--low", help="sampling box lower corner")
            sp.add_argument("--high", help="sampling box upper corner")
            sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--output", help="write the report here instead of stdout")

    c = sub.add_parser("check", help="sample a mapping property")
    common(c)
    c.add_argument("--property", required=True, choices=PROPERTIES)
    c.add_argument("--strength", default=None)
    c.add_argument("--alpha-range", nargs=2, type=float, default=None)
    c.add_argument("--theta-range", nargs=2, type=float, default=None)
    c.add_argument("--w", help="reference vector for contractivity")
    c.add_argument("--v", help="weight vector for norm-monotonicity")
    c.add_argument("--gamma", type=float, default=math.pi / 2)
    c.add_argument("--axis", help="axis for the invariant-cone search")
    c.add_argument("--betas", help="decreasing beta grid for the invariant-cone search")

    s = sub.add_parser("solve", help="fixed-point iteration")
    common(s, sampling=False)
    s.add_argument("--x0")
    s.add_argument("--tol", type=float, default=1e-10)
    s.add_argument("--max-iter", type=int, default=1000)
    s.add_argument("--norm-w", help="weight of the stopping norm (plain iteration)")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--contraction", action="store_true")
    g.add_argument("--monotone-descent", action="store_true")
    s.add_argument("--w")
    s.add_argument("--c", type=float)
    s.add_argument("--from", dest="start")
    s.add_argument("--format", choices=("structured", "tabular"), default="structured",
                   help="trace format embedded in the report")

    d = sub.add_parser("degree", help="degree of I - f on a region")
    common(d, cone=False, sampling=False)
    d.add_argument("--region", required=True)
    d.add_argument("--boundary-samples", type=int, default=64)

    lo = sub.add_parser("locate", help="locate fixed points by subdivision")
    common(lo, cone=False, sampling=False)
    lo.add_argument("--region", required=True)
    lo.add_argument("--depth", type=int, default=20)
    lo.add_argument("--boundary-samples", type=int, default=64)

    f = sub.add_parser("feasible", help="sample feasible points f(x) <=_K x")
    common(f)
    f.add_argument("--region", help="sampling region (box or interval spec)")
    f.add_argument("--limit", type=int, default=20, help="number of points to print")

    t = sub.add_parser("theorem", help="check an existence theorem")
    common(t)
    t.add_argument("--name", required=True, choices=THEOREMS)
    t.add_argument("--points", required=True, help='JSON object, e.g. {"x_prime": [0.3]}')
    t.add_argument("--gamma", type=float, default=math.pi / 2)
    t.add_argument("--radius", type=float, default=None)
    t.add_argument("--depth", type=int, default=20)

    dm = sub.add_parser("demo", help="run a worked example")
    dm.add_argument("name", choices=DEMOS)
    dm.add_argument("--seed", type=int, default=None)
    dm.add_argument("--output")
    return p


# ---------------------------------------------------------------- verbs

def _map(args):
    return parse_map_spec(load_doc(args.map))


def _cone(args, dim):
    if getattr(args, "cone", None):
        cone = parse_cone_spec(load_doc(args.cone))
        if cone.dim != dim:
            raise UsageError(f"dimension mismatch: map has {dim}, cone has {cone.dim}")
        return cone
    return Orthant(dim)


def _region(text, dim):
    reg = parse_region_spec(load_doc(text))
    if reg.dim != dim:
        raise UsageError(f"dimension mismatch: map has {dim}, region has {reg.dim}")
    return reg


def _cfg(args, dim, **extra):
    low, high = _vec(args.low), _vec(args.high)
    if (low is None) != (high is None):
        raise UsageError("--low and --high go together")
    if low is not None and (low.size != dim or high.size != dim):
        raise UsageError("dimension mismatch in --low/--high")
    return SampleConfig(seed=args.seed, count=args.samples,
                        low=None if low is None else tuple(low),
                        high=None if high is None else tuple(high),
                        threads=args.threads, **extra)


def cmd_check(args):
    m = _map(args)
    cone = _cone(args, m.in_dim)
    extra = {}
    if args.alpha_range:
        extra["alpha_range"] = tuple(args.alpha_range)
    if args.theta_range:
        extra["theta_range"] = tuple(args.theta_range)
    cfg = _cfg(args, m.in_dim, **extra)
    prop = args.property
    out = {}
    if prop == "monotone":
        rep = C.check_monotone(m, cone, cfg, args.strength or "monotone")
    elif prop == "sup_monotone":
        rep = C.check_sup_monotone(m, cone, cfg, args.strength or "monotone")
    elif prop == "scalable":
        rep = C.check_scalable(m, cone, cfg, args.strength or "weak")
    elif prop == "subhomogeneous":
        rep = C.check_subhomogeneous(m, cone, cfg, args.strength or "weak")
    elif prop == "contractive":
        w = _vec(args.w) if args.w else np.ones(m.in_dim)
        c_hat, rep = C.estimate_contraction(m, cone, w, cfg)
        out["c_hat"] = c_hat
    elif prop == "norm_monotone":
        v = _vec(args.v) if args.v else np.ones(m.out_dim)
        rep = C.check_norm_monotone(m, cone, v, cfg)
    elif prop == "guiding_g":
        rep = C.check_guiding_G(m, cfg)
    elif prop == "guiding_g2":
        rep = C.check_guiding_G2(m, args.gamma, cfg)
    else:
        axis = _vec(args.axis) if args.axis else np.ones(m.in_dim)
        betas = _vec(args.betas) if args.betas else np.round(np.linspace(0.95, 0.05, 19), 10)
        beta, rep = C.find_invariant_icecream(m, axis, betas, cfg)
        out["beta_star"] = beta
    out.update(rep.to_dict())
    return out, 1 if rep.violated else 0


def cmd_solve(args):
    m = _map(args)
    cone = _cone(args, m.in_dim)
    config = {}
    if args.monotone_descent:
        if args.start is None:
            raise UsageError("--monotone-descent needs --from")
        res = monotone_descent(m, cone, _vec(args.start), args.tol, args.max_iter)
        config["mode"] = "monotone_descent"
    elif args.contraction:
        if args.c is None or args.w is None or args.x0 is None:
            raise UsageError("--contraction needs --w, --c and --x0")
        res = contraction_solve(m, cone, _vec(args.w), args.c, _vec(args.x0), args.tol,
                                args.max_iter)
        config["mode"] = "contraction"
    else:
        if args.x0 is None:
            raise UsageError("solve needs --x0")
        norm_w = _vec(args.norm_w) if args.norm_w else None
        res = iterate(m, _vec(args.x0), args.tol, args.max_iter, norm_w, cone)
        config["mode"] = "iterate"
    trace = emit_trace(res, args.format)
    out = {"fixed_point": res.fixed_point, "status": res.trace.status,
           "iterations": res.trace.iterations, "residual": res.residual,
           "certified_rate": res.certified_rate, "f0_positive": res.f0_positive,
           "trace": json.loads(trace) if args.format == "structured" else trace,
           "mode": config["mode"]}
    return out, 0 if res.converged else 1


def cmd_degree(args):
    m = _map(args)
    reg = _region(args.region, m.in_dim)
    rep = degree(m, reg) if m.in_dim == 1 else degree_2d(m, reg, args.boundary_samples)
    return rep.to_dict(), 0 if rep.reliable else 1


def cmd_locate(args):
    m = _map(args)
    reg = _region(args.region, m.in_dim)
    rep = locate_fixed_points(m, reg, args.depth, args.boundary_samples)
    ok = all(b.resolved for b in rep.boxes)
    return rep.to_dict(), 0 if ok else 1


def cmd_feasible(args):
    m = _map(args)
    cone = _cone(args, m.in_dim)
    if args.region:
        reg = _region(args.region, m.in_dim)
        lo, hi = reg.bounds()
        args.low, args.high = json.dumps(lo.tolist()), json.dumps(hi.tolist())
    cfg = _cfg(args, m.in_dim)
    pts = C.find_feasible(m, cone, cfg)
    grades = {}
    for p in pts:
        grades[p.grade] = grades.get(p.grade, 0) + 1
    out = {"count": len(pts), "grades": grades, "config": cfg.to_dict(),
           "points": [p.to_dict() for p in pts[: args.limit]]}
    return out, 0


def cmd_theorem(args):
    m = _map(args)
    cone = _cone(args, m.in_dim)
    try:
        points = json.loads(args.points)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--points must be a JSON object: {exc}") from None
    if not isinstance(points, dict):
        raise UsageError("--points must be a JSON object")
    points = {k: ([v] if isinstance(v, (int, float)) and k != "lambda" else v)
              for k, v in points.items()}
    low, high = _vec(args.low), _vec(args.high)
    cfg = SampleConfig(seed=args.seed, count=args.samples,
                       low=None if low is None else tuple(low),
                       high=None if high is None else tuple(high), threads=args.threads)
    rep = check_theorem(m, cone, args.name, points, cfg, gamma=args.gamma, radius=args.radius,
                        max_depth=args.depth)
    ok = rep.hypotheses_hold and rep.conclusion_holds is not False
    return rep.to_dict(), 0 if ok else 1


# ---------------------------------------------------------------- demos

def _demo_example3(seed):
    m = Builtin("example3")
    rep = locate_fixed_points(m, Interval(0.0, 1.0), max_depth=20)
    whole = degree(m, Interval(0.0, 1.0))
    pts = [{"fixed_point": b.point, "degree": b.degree, "box": [b.low, b.high]}
           for b in rep.boxes]
    ok = [p["degree"] for p in pts] == [1, -1, 1] and whole.degree == 1
    return {"fixed_points": pts, "degree_on_[0,1]": whole.degree,
            "sum_of_degrees": rep.total_degree}, ok


def _demo_zigzag(seed):
    m = Builtin("zigzag")
    cfg = SampleConfig(seed=seed, count=100_000, low=(0.0, 0.0), high=(8.0, 8.0))
    rep = C.check_monotone(m, Orthant(2), cfg, pairs=[((2.0, 0.0), (4.0, 0.0))])
    return {"I(2,0)": m([2.0, 0.0]), "I(4,0)": m([4.0, 0.0]),
            "monotone": rep.to_dict()}, rep.violated


def _demo_contraction(seed):
    m = Builtin("piecewise_contraction")
    res = contraction_solve(m, Orthant(1), [1.0], 0.5, [1.0], tol=1e-10)
    xs = (1 - math.sqrt(0.96)) / 2
    return {"fixed_point": res.fixed_point, "closed_form": xs,
            "iterations": res.trace.iterations, "certified_rate": res.certified_rate,
            "trace": emit_trace(res, "tabular")}, abs(res.fixed_point[0] - xs) < 1e-9


def _demo_winding(seed):
    ident_res = FunctionMap(lambda X: np.zeros_like(X), 2, name="zero", vectorized=True)
    square = FunctionMap(lambda X: X - np.stack([X[:, 0] ** 2 - X[:, 1] ** 2,
                                                 2 * X[:, 0] * X[:, 1]], 1),
                         2, name="z^2 residual", vectorized=True)
    rows = {
        "zero map, unit disk": degree_2d(ident_res, Disk((0.0, 0.0), 1.0)),
        "z^2 residual, unit disk": degree_2d(square, Disk((0.0, 0.0), 1.0)),
        "zero map, box [2,3]^2": degree_2d(ident_res, Box((2.0, 2.0), (3.0, 3.0))),
    }
    ok = [r.degree for r in rows.values()] == [1, 2, 0]
    return {k: v.to_dict() for k, v in rows.items()}, ok


def _demo_theorems(seed):
    m, K = Builtin("example3"), Orthant(1)
    cfg = SampleConfig(seed=seed)
    runs = {
        "thm6": {"x_prime": [0.3], "x_second": [0.6]},
        "thm8": {"x_second": [0.1], "x_prime": [2.0]},
        "three_fixed_points": {"x_prime": [0.1], "x": [0.4], "x_second": [2.0]},
    }
    reps = {k: check_theorem(m, K, k, v, cfg) for k, v in runs.items()}
    ok = all(r.conclusion_holds for r in reps.values())
    return {k: r.to_dict() for k, r in reps.items()}, ok


def _demo_unimodal(seed):
    m = unimodal_sigmoid_layer()
    beta = math.cos(math.atan(10 / 9))
    cfg = SampleConfig(seed=seed, count=100_000, low=(-1.0, -1.0), high=(2.0, 2.0))
    found, rep = C.find_invariant_icecream(m, [1.0, 1.0], [beta], cfg)
    data = np.array([[0.0, 1.0], [1.0, 0.2]])
    fd = m.batch(data)
    pos = bool(np.all(fd > 0))
    return {"beta": beta, "invariant_cone": rep.to_dict(), "dataset": data, "f(dataset)": fd,
            "f(dataset) > 0": pos}, found is not None and pos


def cmd_demo(args):
    fn = {"example3": _demo_example3, "zigzag": _demo_zigzag, "contraction": _demo_contraction,
          "winding": _demo_winding, "theorems": _demo_theorems, "unimodal": _demo_unimodal}
    body, ok = fn[args.name](args.seed)
    return {"demo": args.name, "as_expected": bool(ok), "result": body}, 0 if ok else 1


VERBS = {"check": cmd_check, "solve": cmd_solve, "degree": cmd_degree, "locate": cmd_locate,
         "feasible": cmd_feasible, "theorem": cmd_theorem, "demo": cmd_demo}


def run(argv=None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "seed", "absent") is None:
            args.seed = _seed_default()
        body, code = VERBS[args.verb](args)
    except HypothesisViolation as exc:
        body = {"error": str(exc), "kind": type(exc).__name__, "witness": exc.witness}
        code = 1
    except (UsageError, ValueError, OSError, KeyError, TypeError, json.JSONDecodeError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"conefix: error: {msg}", file=sys.stderr)
        return 2
    config = {k: v for k, v in sorted(vars(args).items()) if k != "output"}
    doc = dumps({"config": config, "exit_code": code, "report": body})
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(doc + "\n")
    else:
        stdout.write(doc + "\n")
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
