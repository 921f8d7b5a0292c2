"""Fixed-point iteration: plain, order-monotone descent, and certified contraction."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

from .certify import FeasiblePoint
from .cones import Cone, Orthant, as_vector, delta_K, weighted_max_norm
from .maps import Map

GUARD = 1e9


class HypothesisViolation(RuntimeError):
    """A solver detected that the map breaks an assumption it relies on."""

    def __init__(self, message: str, witness: dict, trace: "IterationTrace | None" = None):
        super().__init__(message)
        self.witness = witness
        self.trace = trace


class MonotonicityViolation(HypothesisViolation):
    pass


class ContractionViolation(HypothesisViolation):
    pass


@dataclass
class IterationTrace:
    iterates: list = field(default_factory=list)
    residual_w: list = field(default_factory=list)
    order_descending: list = field(default_factory=list)
    bound_certificate: list | None = None
    status: str = "max_iter"
    message: str = ""

    @property
    def iterations(self) -> int:
        return len(self.residual_w)


@dataclass
class SolveResult:
    fixed_point: np.ndarray
    trace: IterationTrace
    residual: float
    certified_rate: float | None = None
    f0_positive: bool | None = None

    @property
    def converged(self) -> bool:
        return self.trace.status == "converged"


def _norm_weight(norm_w, dim):
    if norm_w is None:
        return np.ones(dim)
    w = as_vector(norm_w, dim, "norm_w")
    if np.any(w <= 0):
        raise ValueError("norm weight must be strictly positive")
    return w


def _run(m: Map, x0, tol, max_iter, w, cone, stop, step_check=None, guard=GUARD):
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    if m.in_dim != m.out_dim:
        raise ValueError("fixed-point iteration needs a self-map")
    x = as_vector(x0, m.in_dim, "x0")
    trace = IterationTrace(iterates=[x.copy()])
    for k in range(max_iter):
        with np.errstate(all="ignore"):
            y = m(x)
        if not np.all(np.isfinite(y)) or np.any(np.abs(y) > guard):
            trace.status = "diverged"
            trace.message = f"iterate {k + 1} left the guard box"
            trace.iterates.append(y)
            return x, trace
        r = float(weighted_max_norm(y - x, w))
        flag = bool(cone.contains(x - y))
        trace.iterates.append(y.copy())
        trace.residual_w.append(r)
        trace.order_descending.append(flag)
        if step_check is not None:
            step_check(trace)
        x = y
        if r <= stop:
            trace.status = "converged"
            return x, trace
    trace.status = "max_iter"
    return x, trace


def _fixed_point_residual(m, x):
    with np.errstate(all="ignore"):
        fx = m(x)
    return float(np.max(np.abs(fx - x))) if np.all(np.isfinite(fx)) else math.inf


def iterate(m: Map, x0, tol: float = 1e-10, max_iter: int = 1000, norm_w=None,
            cone: Cone | None = None, guard: float = GUARD) -> SolveResult:
    """Plain iteration ``x <- f(x)`` until ``||x_{k+1} - x_k||_w <= tol``."""
    w = _norm_weight(norm_w, m.in_dim)
    cone = Orthant(m.in_dim) if cone is None else cone
    x, trace = _run(m, x0, tol, max_iter, w, cone, tol, guard=guard)
    return SolveResult(x, trace, _fixed_point_residual(m, x))


def monotone_descent(m: Map, cone: Cone, p, tol: float = 1e-10,
                     max_iter: int = 1000) -> SolveResult:
    """Iterate from a feasible point, asserting ``x_{k+1} <=_K x_k`` each step.

    Raises :class:`MonotonicityViolation` when the order fails; the witness
    is an ordered pair whose images are out of order.
    """
    if isinstance(p, FeasiblePoint):
        p = p.x
    p = as_vector(p, cone.dim, "p")
    fp = m(p)
    if not (cone.contains(p) and cone.contains(p - fp)):
        raise ValueError("starting point is not feasible: need 0 <=_K p and f(p) <=_K p")
    w = np.ones(cone.dim)

    def check(trace):
        if not trace.order_descending[-1]:
            k = len(trace.residual_w)
            xk, xprev = trace.iterates[k - 1], trace.iterates[k - 2] if k >= 2 else None
            witness = {"step": k, "x": xk, "f_x": trace.iterates[k]}
            if xprev is not None:
                witness.update({"x_prev": xprev, "f_x_prev": xk})
            raise MonotonicityViolation(
                f"order descent failed at step {k}: f(x_k) is not <=_K x_k", witness, trace)

    x, trace = _run(m, p, tol, max_iter, w, cone, tol, step_check=check)
    return SolveResult(x, trace, _fixed_point_residual(m, x))


def contraction_solve(m: Map, cone: Cone, w, c: float, x0, tol: float = 1e-10,
                      max_iter: int = 1000, delta: float | None = None,
                      ratio_tol: float = 1e-9) -> SolveResult:
    """Iteration for an order-contractive map with a certified error bound.

    With ``q = c * delta(K) < 1`` the loop stops once
    ``||x_{k+1} - x_k||_w <= tol (1 - q) / q``, which bounds the distance to
    the fixed point by ``tol``.  Observed step ratios above ``q`` abort with
    :class:`ContractionViolation`.
    """
    w = as_vector(w, cone.dim, "w")
    if delta is None:
        delta = delta_K(cone, w)
    q = c * delta
    if not 0 <= c:
        raise ValueError("c must be nonnegative")
    if q >= 1:
        raise ValueError(f"c * delta(K) = {q} is not below 1")
    stop = tol * (1 - q) / q if q > 0 else math.inf

    def check(trace):
        r = trace.residual_w
        if len(r) >= 2:
            floor = 1e-15 * max(1.0, float(weighted_max_norm(trace.iterates[-1], w)))
            if r[-1] > (q + ratio_tol) * r[-2] + floor:
                k = len(r) - 1
                raise ContractionViolation(
                    f"step ratio {r[-1] / r[-2]:.6g} exceeds c*delta = {q:.6g}",
                    {"step": k, "x_prev": trace.iterates[k - 1], "x": trace.iterates[k],
                     "f_x": trace.iterates[k + 1], "ratio": r[-1] / r[-2], "rate": q},
                    trace)

    x, trace = _run(m, x0, tol, max_iter, w, cone, stop, step_check=check)
    errs = [float(weighted_max_norm(xi - x, w)) for xi in trace.iterates]
    trace.bound_certificate = [q ** k * errs[0] for k in range(len(trace.iterates))]
    f0 = m(np.zeros(cone.dim))
    f0_pos = bool(cone.contains(f0) and np.any(f0 != 0))
    return SolveResult(x, trace, _fixed_point_residual(m, x), certified_rate=q, f0_positive=f0_pos)


@dataclass
class MultistartReport:
    starts: int
    converged: int
    clusters: list
    cluster_sizes: list
    non_converged: list
    self_fixed_starts: int
    non_isolated: bool
    unique_consistent: bool


def start_points(low, high, starts: int) -> np.ndarray:
    """Deterministic Halton points in the box; the i-th point depends on i only."""
    low, high = np.atleast_1d(np.asarray(low, float)), np.atleast_1d(np.asarray(high, float))
    u = qmc.Halton(d=low.size, scramble=False).random(starts)
    return low + (high - low) * u


def multistart_uniqueness(m: Map, region, starts: int = 100, tol: float = 1e-10,
                          cluster_radius: float | None = None, max_iter: int = 10_000,
                          norm_w=None):
    """Run :func:`iterate` from many starts and cluster the limits.

    One cluster is consistent with a unique fixed point; several refute it.
    Returns ``(limits, report)`` with one representative per cluster.
    """
    if starts < 2:
        raise ValueError("need at least two starts")
    low, high = region
    radius = 1e3 * tol if cluster_radius is None else cluster_radius
    limits, sizes, failed = [], [], []
    self_fixed = 0
    for i, x0 in enumerate(start_points(low, high, starts)):
        res = iterate(m, x0, tol, max_iter, norm_w)
        if not res.converged:
            failed.append({"index": i, "x0": x0.tolist(), "status": res.trace.status})
            continue
        if res.trace.iterations == 1 and res.trace.residual_w[0] == 0.0:
            self_fixed += 1
        x = res.fixed_point
        for j, c in enumerate(limits):
            if np.max(np.abs(c - x)) <= radius:
                sizes[j] += 1
                break
        else:
            limits.append(x)
            sizes.append(1)
    non_isolated = self_fixed >= 2 and len(limits) >= 2
    report = MultistartReport(starts, starts - len(failed), [c.tolist() for c in limits], sizes,
                              failed, self_fixed, non_isolated, len(limits) == 1)
    return limits, report
