"""Degree of ``I - f`` in one and two dimensions, root localization by
subdivision, and hypothesis/conclusion reports for existence theorems."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, root

from .certify import (NO_VIOLATION, SampleConfig, _jsonable, check_guiding_G, check_guiding_G2,
                      check_monotone, check_sup_monotone, cone_points, evaluate,
                      probe_Sf_bounded)
from .cones import Cone, IceCream, Orthant, as_vector, compare, gauge_norm
from .maps import Map, Symmetric
from .solvers import HypothesisViolation, monotone_descent, multistart_uniqueness

RESIDUAL_TOL = 1e-12


# ---------------------------------------------------------------- regions

@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.a < self.b):
            raise ValueError("interval needs finite a < b")

    dim = 1

    def bounds(self):
        return np.array([self.a]), np.array([self.b])


@dataclass(frozen=True)
class Box:
    low: tuple
    high: tuple

    def __post_init__(self):
        lo, hi = np.asarray(self.low, float), np.asarray(self.high, float)
        if lo.shape != hi.shape or lo.ndim != 1 or not np.all(lo < hi):
            raise ValueError("box needs low < high componentwise")
        object.__setattr__(self, "low", tuple(lo.tolist()))
        object.__setattr__(self, "high", tuple(hi.tolist()))

    @property
    def dim(self):
        return len(self.low)

    def bounds(self):
        return np.array(self.low), np.array(self.high)


@dataclass(frozen=True)
class Disk:
    center: tuple
    radius: float

    def __post_init__(self):
        c = np.asarray(self.center, float)
        if c.shape != (2,) or not self.radius > 0:
            raise ValueError("disk needs a 2-D center and positive radius")
        object.__setattr__(self, "center", tuple(c.tolist()))

    dim = 2

    def bounds(self):
        c = np.array(self.center)
        return c - self.radius, c + self.radius

    def contains(self, X):
        X = np.atleast_2d(X)
        return np.linalg.norm(X - np.array(self.center), axis=1) <= self.radius


@dataclass(frozen=True)
class OrderBody:
    """``D(anchor) = {z : |z| <=_K anchor}``; handled through its bounding box."""

    cone: Cone
    anchor: tuple

    def __post_init__(self):
        a = as_vector(self.anchor, self.cone.dim, "anchor")
        object.__setattr__(self, "anchor", tuple(a.tolist()))

    @property
    def dim(self):
        return self.cone.dim

    def bounds(self):
        h = body_halfwidths(self.cone, np.array(self.anchor))
        return -h, h

    def contains(self, X):
        X = np.atleast_2d(X)
        return self.cone.contains(np.array(self.anchor) - np.abs(X))


@dataclass(frozen=True)
class Annulus:
    outer: object
    inner: object

    @property
    def dim(self):
        return self.outer.dim


def parse_region_spec(doc: dict):
    if not isinstance(doc, dict) or "type" not in doc:
        raise ValueError("region spec must be an object with a 'type' field")
    kind = doc["type"]
    try:
        if kind == "interval":
            return Interval(float(doc["a"]), float(doc["b"]))
        if kind == "box":
            return Box(tuple(doc["low"]), tuple(doc["high"]))
        if kind == "disk":
            return Disk(tuple(doc["center"]), float(doc["radius"]))
    except KeyError as exc:
        raise ValueError(f"region spec is missing {exc}") from None
    raise ValueError(f"unknown region type {kind!r}")


def region_to_spec(region) -> dict:
    if isinstance(region, Interval):
        return {"type": "interval", "a": region.a, "b": region.b}
    if isinstance(region, Box):
        return {"type": "box", "low": list(region.low), "high": list(region.high)}
    if isinstance(region, Disk):
        return {"type": "disk", "center": list(region.center), "radius": region.radius}
    if isinstance(region, OrderBody):
        return {"type": "order_body", "cone": region.cone.to_spec(), "anchor": list(region.anchor)}
    if isinstance(region, Annulus):
        return {"type": "annulus", "outer": region_to_spec(region.outer),
                "inner": region_to_spec(region.inner)}
    raise TypeError(f"not a region: {region!r}")


def body_halfwidths(cone: Cone, anchor, directions: int = 2001, pad: float = 1.02) -> np.ndarray:
    """Per-coordinate half widths of a box enclosing ``D(anchor)``.

    The body is symmetric under sign flips, so only nonnegative directions
    are scanned; the radial extent along each is found by bisection.
    """
    anchor = np.asarray(anchor, float)
    if isinstance(cone, Orthant):
        return anchor.copy()
    n = cone.dim
    if n == 2:
        t = np.linspace(0.0, math.pi / 2, directions)
        U = np.stack([np.cos(t), np.sin(t)], axis=1)
    else:
        rng = np.random.default_rng(0)
        U = np.vstack([np.eye(n), rng.dirichlet(np.ones(n), directions)])
        U /= np.linalg.norm(U, axis=1, keepdims=True)
    inside = lambda s: cone.contains(anchor - s[:, None] * U)
    hi = np.full(len(U), float(np.linalg.norm(anchor)) + 1.0)
    while not np.all(~inside(hi)):
        hi = np.where(inside(hi), 2.0 * hi, hi)
        if np.max(hi) > 1e12:
            raise ValueError("D(anchor) is unbounded for this cone")
    lo = np.zeros(len(U))
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        ok = inside(mid)
        lo = np.where(ok, mid, lo)
        hi = np.where(ok, hi, mid)
    return pad * np.max(lo[:, None] * U, axis=0)


# ---------------------------------------------------------------- degree

@dataclass
class DegreeReport:
    degree: int | None
    boundary_min_residual: float
    samples: int
    reliable: bool
    winding: float | None = None
    message: str = ""

    def to_dict(self):
        return _jsonable(self.__dict__)


def _residual(m: Map):
    return lambda X: np.asarray(X, float) - evaluate(m, np.asarray(X, float))


def degree_1d(m: Map, interval, tol: float = RESIDUAL_TOL) -> DegreeReport:
    """``(sign g(b) - sign g(a)) / 2`` with ``g = x - f(x)``."""
    if not isinstance(interval, Interval):
        interval = Interval(*map(float, interval))
    if m.in_dim != 1:
        raise ValueError("degree_1d needs a map of R")
    g = _residual(m)(np.array([[interval.a], [interval.b]]))[:, 0]
    rmin = float(np.min(np.abs(g)))
    if rmin <= tol:
        return DegreeReport(None, rmin, 2, False, message="residual vanishes at an endpoint")
    d = int((np.sign(g[1]) - np.sign(g[0])) // 2)
    return DegreeReport(d, rmin, 2, True)


def _boundary(region):
    """Closed boundary curve ``t in [0, 1) -> R^2``."""
    if isinstance(region, Disk):
        c, r = np.array(region.center), region.radius
        return lambda t: c + r * np.stack([np.cos(2 * math.pi * t), np.sin(2 * math.pi * t)], 1)
    if isinstance(region, Box):
        lo, hi = region.bounds()
        w, h = hi - lo
        P = 2 * (w + h)
        corners = np.array([lo, [hi[0], lo[1]], hi, [lo[0], hi[1]], lo])
        cum = np.array([0, w, w + h, 2 * w + h, P]) / P

        def curve(t):
            t = np.asarray(t, float) % 1.0
            k = np.clip(np.searchsorted(cum, t, side="right") - 1, 0, 3)
            s = ((t - cum[k]) / (cum[k + 1] - cum[k]))[:, None]
            return corners[k] + s * (corners[k + 1] - corners[k])
        return curve
    raise ValueError("2-D degree needs a box or disk region")


def degree_2d(m: Map, region, boundary_samples: int = 64, max_points: int = 1 << 16,
              tol: float = RESIDUAL_TOL, safety: float = 2.0) -> DegreeReport:
    """Winding number of ``g = x - f(x)`` along the region boundary.

    The boundary is refined until every segment turns by less than pi/2
    and cannot hide a zero of ``g`` under a Lipschitz bound estimated from
    the samples: ``|g_i| + |g_{i+1}| > L h_i``.
    """
    if isinstance(region, Annulus):
        a = degree_2d(m, region.outer, boundary_samples, max_points, tol, safety)
        b = degree_2d(m, region.inner, boundary_samples, max_points, tol, safety)
        ok = a.reliable and b.reliable
        return DegreeReport(a.degree - b.degree if ok else None,
                            min(a.boundary_min_residual, b.boundary_min_residual),
                            a.samples + b.samples, ok, message="outer minus inner")
    if m.in_dim != 2 or m.out_dim != 2:
        raise ValueError("degree_2d needs a map of R^2")
    if boundary_samples < 64:
        raise ValueError("boundary_samples must be at least 64")
    curve = _boundary(region)
    gfun = _residual(m)
    t = np.arange(boundary_samples) / boundary_samples
    P = curve(t)
    G = gfun(P)
    while True:
        Pn, Gn = np.roll(P, -1, 0), np.roll(G, -1, 0)
        z, zn = G[:, 0] + 1j * G[:, 1], Gn[:, 0] + 1j * Gn[:, 1]
        absz = np.abs(z)
        h = np.linalg.norm(Pn - P, axis=1)
        if np.min(absz) <= tol:
            return DegreeReport(None, float(np.min(absz)), len(t), False,
                                message="residual vanishes on the boundary")
        dtheta = np.angle(zn / z)
        L = safety * float(np.max(np.abs(zn - z) / h))
        bad = (np.abs(dtheta) >= math.pi / 2) | (absz + np.abs(zn) <= L * h)
        if not bad.any():
            w = float(np.sum(dtheta) / (2 * math.pi))
            return DegreeReport(int(round(w)), float(np.min(absz)), len(t), True, w)
        if len(t) + int(bad.sum()) > max_points:
            w = float(np.sum(dtheta) / (2 * math.pi))
            return DegreeReport(None, float(np.min(absz)), len(t), False, w,
                                "boundary refinement cap reached")
        tn = np.append(t[1:], 1.0)
        mids = 0.5 * (t[bad] + tn[bad])
        Pm = curve(mids)
        t = np.concatenate([t, mids])
        P = np.vstack([P, Pm])
        G = np.vstack([G, gfun(Pm)])
        order = np.argsort(t, kind="stable")
        t, P, G = t[order], P[order], G[order]


def degree(m: Map, region, **kw) -> DegreeReport:
    if isinstance(region, Interval):
        return degree_1d(m, region)
    if m.in_dim == 1 and isinstance(region, Box):
        return degree_1d(m, Interval(region.low[0], region.high[0]))
    return degree_2d(m, region, **kw)


# ---------------------------------------------------------------- localization

@dataclass
class LocatedBox:
    low: np.ndarray
    high: np.ndarray
    degree: int | None
    point: np.ndarray | None = None
    residual: float | None = None
    resolved: bool = True
    flag: str = ""

    @property
    def center(self):
        return 0.5 * (self.low + self.high)

    def to_dict(self):
        return _jsonable(self.__dict__)


def _signs_cover(G):
    """Every residual component takes both signs (or vanishes) on the samples."""
    return bool(np.all((G.min(axis=0) <= 0) & (G.max(axis=0) >= 0)))


class _Scan:
    """Residual on a regular grid over the whole region; a box inherits the
    grid points it contains, so shallow boxes are not pruned on a few samples."""

    def __init__(self, gf, lo, hi, n):
        self.axes = [np.linspace(l, h, n + 1) for l, h in zip(lo, hi)]
        mesh = np.stack(np.meshgrid(*self.axes, indexing="ij"), -1)
        self.values = gf(mesh.reshape(-1, len(lo))).reshape(mesh.shape)

    def covers(self, lo, hi):
        idx = tuple(slice(np.searchsorted(ax, l, "left"), np.searchsorted(ax, h, "right"))
                    for ax, l, h in zip(self.axes, lo, hi))
        V = self.values[idx].reshape(-1, self.values.shape[-1])
        return len(V) > 0 and _signs_cover(V)


def _locate_1d(gf, a, b, max_depth, tol, scan=4096):
    found, hidden = [], 0
    grid = _Scan(gf, [a], [b], scan)
    ga, gb = gf(np.array([[a], [b]]))[:, 0]
    if min(abs(ga), abs(gb)) <= tol:
        return [LocatedBox(np.array([a]), np.array([b]), None, resolved=False,
                           flag="residual vanishes on the boundary")], 0
    stack = [(a, b, ga, gb, 0)]
    while stack:
        lo, hi, glo, ghi, d = stack.pop()
        deg = int((np.sign(ghi) - np.sign(glo)) // 2)
        if deg == 0:
            s = gf(np.linspace(lo, hi, 9)[1:-1, None])[:, 0]
            if np.all(np.sign(s) == np.sign(glo)) and not grid.covers([lo], [hi]):
                continue
        if d == max_depth:
            if deg != 0:
                found.append(LocatedBox(np.array([lo]), np.array([hi]), deg))
            else:
                hidden += 1
            continue
        mid = 0.5 * (lo + hi)
        gm = gf(np.array([[mid]]))[0, 0]
        shift = 0
        while abs(gm) <= tol and shift < 8:
            shift += 1
            mid = lo + (hi - lo) * (0.5 + 0.618 ** (shift + 2))
            gm = gf(np.array([[mid]]))[0, 0]
        if abs(gm) <= tol:
            found.append(LocatedBox(np.array([lo]), np.array([hi]), None, resolved=False,
                                    flag="could not split away from a zero"))
            continue
        stack.append((mid, hi, gm, ghi, d + 1))
        stack.append((lo, mid, glo, gm, d + 1))
    found.sort(key=lambda bx: bx.low[0])
    for bx in found:
        if bx.degree:
            f = lambda x: gf(np.array([[x]]))[0, 0]
            x = brentq(f, bx.low[0], bx.high[0], xtol=1e-15, rtol=4 * np.finfo(float).eps)
            bx.point, bx.residual = np.array([x]), abs(f(x))
    return found, hidden


def _locate_2d(m, gf, lo0, hi0, max_depth, boundary_samples, tol, max_boxes, scan=256):
    found, hidden = [], 0
    grid = _Scan(gf, lo0, hi0, scan)
    stack = [(lo0, hi0, 0)]
    visited = 0
    while stack:
        lo, hi, d = stack.pop()
        visited += 1
        if visited > max_boxes:
            found.append(LocatedBox(lo, hi, None, resolved=False, flag="box budget exhausted"))
            continue
        rep = degree_2d(m, Box(tuple(lo), tuple(hi)), boundary_samples, tol=tol)
        if not rep.reliable:
            if d == max_depth:
                found.append(LocatedBox(lo, hi, None, resolved=False, flag=rep.message))
                continue
        elif rep.degree == 0:
            g = np.linspace(0, 1, 6)
            U = np.stack(np.meshgrid(g, g), -1).reshape(-1, 2)
            if not _signs_cover(gf(lo + (hi - lo) * U)) and not grid.covers(lo, hi):
                continue
        if d == max_depth:
            if rep.degree:
                found.append(LocatedBox(lo, hi, rep.degree))
            else:
                hidden += 1
            continue
        mid = 0.5 * (lo + hi)
        kids = [(np.array([x0, y0]), np.array([x1, y1]))
                for (x0, x1) in ((lo[0], mid[0]), (mid[0], hi[0]))
                for (y0, y1) in ((lo[1], mid[1]), (mid[1], hi[1]))]
        stack.extend((a, b, d + 1) for a, b in reversed(kids))
    found.sort(key=lambda bx: tuple(bx.low))
    for bx in found:
        if bx.degree:
            span = bx.high - bx.low
            res = lambda x: float(np.max(np.abs(gf(x[None, :])[0])))
            sol = root(lambda x: gf(x[None, :])[0], bx.center, method="hybr")
            if np.all(np.abs(sol.x - bx.center) <= span) and res(sol.x) <= res(bx.center):
                bx.point = sol.x
            else:
                bx.point = bx.center
            bx.residual = res(bx.point)
    return found, hidden


@dataclass
class LocateReport:
    boxes: list
    hidden_even_boxes: int
    region: dict
    total_degree: int | None

    def to_dict(self):
        return {"boxes": [b.to_dict() for b in self.boxes], "hidden_even_boxes":
                self.hidden_even_boxes, "region": self.region, "total_degree": self.total_degree}


def locate_fixed_points(m: Map, region, max_depth: int = 20, boundary_samples: int = 64,
                        tol: float = RESIDUAL_TOL, max_boxes: int = 200_000) -> LocateReport:
    """Bisect the region, pruning boxes with zero degree and no sign change.

    Returns minimal boxes of side ``2**-max_depth`` times the initial side
    with nonzero degree, each with a refined fixed-point estimate.  Disk and
    order-body regions are searched over their bounding box and filtered by
    the refined point (or box center).
    """
    if m.in_dim != m.out_dim or m.in_dim > 2:
        raise ValueError("localization is available for self-maps of R or R^2")
    if isinstance(region, Annulus):
        raise ValueError("locate over the outer region and filter instead")
    lo, hi = region.bounds()
    gf = _residual(m)
    if m.in_dim == 1:
        boxes, hidden = _locate_1d(gf, float(lo[0]), float(hi[0]), max_depth, tol)
    else:
        boxes, hidden = _locate_2d(m, gf, lo, hi, max_depth, boundary_samples, tol, max_boxes)
    if hasattr(region, "contains"):
        keep = []
        for b in boxes:
            p = b.point if b.point is not None else b.center
            if bool(np.all(region.contains(p))):
                keep.append(b)
        boxes = keep
    total = None
    if all(b.resolved for b in boxes) and not hidden:
        total = int(sum(b.degree for b in boxes))
    return LocateReport(boxes, hidden, region_to_spec(region), total)


# ---------------------------------------------------------------- theorems

THEOREMS = ("degreerzero", "three_fixed_points", "thm5", "thm6", "thm8", "thm9",
            "guiding_G", "guiding_G2")
REQUIRED_POINTS = {
    "degreerzero": ("x_prime",),
    "three_fixed_points": ("x_prime", "x", "x_second"),
    "thm5": ("x_prime",),
    "thm6": ("x_prime", "x_second"),
    "thm8": ("x_second", "x_prime"),
    "thm9": ("x_second", "x_prime"),
    "guiding_G": ("x_prime",),
    "guiding_G2": (),
}
YES, NO, SAMPLED = "yes", "no", "sampled_only"


@dataclass
class Hypothesis:
    name: str
    verified: str
    detail: dict = field(default_factory=dict)


@dataclass
class TheoremReport:
    theorem: str
    hypotheses: list
    conclusion_check: list | None = None
    promised: int | None = None
    found: int | None = None
    conclusion_holds: bool | None = None
    method: str | None = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def hypotheses_hold(self) -> bool:
        return all(h.verified != NO for h in self.hypotheses)

    def verdict(self, name: str) -> str:
        for h in self.hypotheses:
            if h.name == name:
                return h.verified
        raise KeyError(name)

    def to_dict(self):
        return _jsonable({
            "theorem": self.theorem,
            "hypotheses": [h.__dict__ for h in self.hypotheses],
            "conclusion_check": self.conclusion_check, "promised": self.promised,
            "found": self.found, "conclusion_holds": self.conclusion_holds,
            "method": self.method, "diagnostics": self.diagnostics})


def _exact(name, ok, **detail):
    return Hypothesis(name, YES if ok else NO, detail)


def _sampled(name, report):
    detail = {"samples": report.samples_tested}
    if report.witness is not None:
        detail["witness"] = report.witness
    detail.update({k: v for k, v in report.details.items() if k in ("min_cosine", "strength")})
    return Hypothesis(name, SAMPLED if report.verdict == NO_VIOLATION else NO, detail)


def _leq(cone, x, y):
    return bool(cone.contains(np.asarray(y) - np.asarray(x)))


def _ll(cone, x, y):
    return cone.solid and bool(cone.contains(np.asarray(y) - np.asarray(x), interior=True))


def _lt(cone, x, y):
    return compare(cone, x, y).lt


def _in_Sf(m, cone, x):
    return bool(cone.contains(x)) and _leq(cone, m(x), x)


def _sample_cfg(cfg, cone, hi):
    """Sampling box ``[0, hi]`` unless the caller gave one."""
    if cfg.low is not None:
        return cfg
    from dataclasses import replace
    return replace(cfg, low=tuple([0.0] * cone.dim), high=tuple(np.broadcast_to(hi, cone.dim)))


def _monotone_hyp(m, cone, cfg, sup=False):
    if sup and isinstance(cone, Orthant):
        return _sampled("K-sup-monotone", check_sup_monotone(m, cone, cfg))
    h = _sampled("K-monotone", check_monotone(m, cone, cfg))
    if sup:
        h.name = "K-sup-monotone"
        h.detail["via"] = "K-monotone (sup is only defined for the orthant)"
    return h


def _icecream_hyp(cone):
    ok = isinstance(cone, IceCream) or (isinstance(cone, Orthant) and cone.dim <= 2)
    return _exact("K is an ice-cream cone C(w, beta)", ok, cone=cone.to_spec())


def _maps_into_orthant(m, cone, cfg):
    x = cone_points(Orthant(cone.dim), cfg)
    fx = evaluate(m, x, cfg.threads)
    bad = np.flatnonzero(np.any(fx < 0, axis=1))
    detail = {"samples": len(x)}
    if len(bad):
        detail["witness"] = {"x": x[bad[0]], "fx": fx[bad[0]]}
    return Hypothesis("f maps R^N_+ into R^N_+", NO if len(bad) else SAMPLED, detail)


def _radii(top):
    return [top * 2.0 ** k for k in range(-6, 1)]


def _sf_probe(m, cone, cfg, top):
    rep = probe_Sf_bounded(m, cone, _radii(top), cfg)
    return rep


def _t_set_samples(cone, x2, n, rng):
    """Points ``z >=_K 0`` with ``x2`` on the boundary of ``z + K``."""
    dim = cone.dim
    if dim == 1:
        return x2[None, :].copy()
    if isinstance(cone, Orthant):
        # x2 - z lies on a facet: some coordinate of z equals that of x2
        z = rng.random((n, dim)) * x2
        j = rng.integers(0, dim, n)
        z[np.arange(n), j] = x2[j]
        return z
    # boundary ray r of C(w, beta): angle arccos(beta) from the axis
    u = cone.axis
    out = []
    while sum(len(o) for o in out) < n:
        v = rng.normal(size=(n, dim))
        v -= (v @ u)[:, None] * u
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        beta = cone.beta
        r = beta * u + math.sqrt(max(0.0, 1 - beta * beta)) * v
        tmax = float(np.linalg.norm(x2)) * 4.0 + 1.0
        t = rng.random(n) * tmax
        z = x2 - t[:, None] * r
        out.append(z[cone.contains(z)])
    return np.vstack(out)[:n]


def gauge_batch(Z, anchor, cone: Cone, iters: int = 64) -> np.ndarray:
    """Row-wise ``D(anchor)`` gauge by vectorized bisection; agrees with
    :func:`gauge_norm` to about ``2**-iters`` relative accuracy."""
    Z = np.abs(np.atleast_2d(np.asarray(Z, float)))
    anchor = np.asarray(anchor, float)
    if isinstance(cone, Orthant):
        return np.max(Z / anchor, axis=1)
    gauge_norm(anchor, anchor, cone)  # validates the anchor and boundedness
    from dataclasses import replace
    exact = replace(cone, tau=0.0)
    ok = lambda s: exact.contains(s[:, None] * anchor - Z)
    hi = np.maximum(np.max(Z / anchor, axis=1), 1e-300)
    while not np.all(ok(hi)):
        hi = np.where(ok(hi), hi, 2.0 * hi)
    lo = np.zeros(len(Z))
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        good = ok(mid)
        hi = np.where(good, mid, hi)
        lo = np.where(good, lo, mid)
    return np.where(np.any(Z > 0, axis=1), hi, 0.0)


def _gauge_boundary_samples(cone, x2, n, rng):
    """Points of the cone with unit ``D(x2)``-gauge."""
    if cone.dim == 1:
        return x2[None, :].copy()
    from .certify import cone_directions
    d = np.abs(cone_directions(cone, rng, n)) if isinstance(cone, Orthant) else \
        cone_directions(cone, rng, n)
    d = d[np.all(d >= 0, axis=1) & np.any(d > 0, axis=1)]
    return d / gauge_batch(d, x2, cone)[:, None]


def _locate_points(m, cone, region, max_depth, boundary_samples, cfg):
    """Fixed points inside ``region`` using the symmetric extension; N > 2
    falls back to multistart iteration."""
    ext = Symmetric(m)
    if m.in_dim <= 2:
        rep = locate_fixed_points(ext, region, max_depth, boundary_samples)
        pts = []
        for b in rep.boxes:
            if b.degree and b.point is not None:
                pts.append({"point": b.point, "degree": b.degree, "low": b.low, "high": b.high,
                            "residual": b.residual})
            elif not b.resolved:
                pts.append({"point": None, "degree": None, "low": b.low, "high": b.high,
                            "unresolved": b.flag})
        return pts, "degree"
    lo, hi = region.bounds()
    limits, _ = multistart_uniqueness(ext, (lo, hi), starts=max(cfg.count // 100, 50))
    pts = [{"point": x, "degree": None} for x in limits
           if not hasattr(region, "contains") or region.contains(x).all()]
    return pts, "multistart"


def _conclude(report, pts, method, promised, keep=lambda p: True):
    report.method = method
    kept = [p for p in pts if p["point"] is not None and keep(np.asarray(p["point"]))]
    report.conclusion_check = [dict(p, counted=any(p is k for k in kept)) for p in pts]
    report.promised = promised
    report.found = len(kept)
    report.conclusion_holds = len(kept) >= promised
    return kept


def check_theorem(m: Map, cone: Cone, theorem: str, points: dict, cfg: SampleConfig | None = None,
                  gamma: float = math.pi / 2, radius: float | None = None,
                  max_depth: int = 20, boundary_samples: int = 64) -> TheoremReport:
    """Verify hypotheses of an existence theorem and, when they hold, look for
    the promised fixed points.

    Pointwise hypotheses are checked exactly at the supplied points; universal
    ones are sampled (verdict ``sampled_only`` when no violation is found).
    The search region is the order body ``D(x'')`` (or ``D(x')``), which the
    pointwise hypotheses make invariant, so the feasible-set boundedness
    probe is reported as a diagnostic for the multi-point theorems.
    """
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")
    missing = [k for k in REQUIRED_POINTS[theorem] if k not in points]
    if missing:
        raise ValueError(f"{theorem} needs points: {', '.join(missing)}")
    if m.in_dim != cone.dim or m.out_dim != cone.dim:
        raise ValueError("map and cone dimensions differ")
    cfg = SampleConfig() if cfg is None else cfg
    P = {k: as_vector(v, cone.dim, k) for k, v in points.items() if k != "lambda"}
    zero = np.zeros(cone.dim)
    H = []
    rep = TheoremReport(theorem, H)
    scale = max([float(np.max(np.abs(v))) for v in P.values()] + [1.0])
    scfg = _sample_cfg(cfg, cone, scale)
    rng = cfg.rng()
    promised, region, keep = 0, None, lambda p: True

    if theorem == "degreerzero":
        xp = P["x_prime"]
        contains_orthant = isinstance(cone, Orthant) or bool(
            np.all(cone.contains(np.eye(cone.dim))))
        H.append(_exact("R^N_+ is contained in K", contains_orthant))
        H.append(_monotone_hyp(m, cone, scfg, sup=True))
        H.append(_exact("x' strongly feasible", _in_Sf(m, cone, xp) and _ll(cone, zero, xp)))
        rep.diagnostics["sf_probe"] = _sf_probe(m, cone, scfg, 4 * scale).to_dict()
        promised, region = 1, OrderBody(cone, tuple(xp)) if _ll(cone, zero, xp) else None
        keep = lambda p: _lt(cone, zero, p)

    elif theorem == "three_fixed_points":
        x1, x, x2 = P["x_prime"], P["x"], P["x_second"]
        H.append(_monotone_hyp(m, cone, scfg))
        H.append(_exact("x' >_K 0 and x' in S_f", _lt(cone, zero, x1) and _in_Sf(m, cone, x1)))
        H.append(_exact("x'' >_K 0 and x'' in S_f", _lt(cone, zero, x2) and _in_Sf(m, cone, x2)))
        H.append(_exact("f(x') <<_K x'", _ll(cone, m(x1), x1), fx=m(x1)))
        H.append(_exact("f(x'') <<_K x''", _ll(cone, m(x2), x2), fx=m(x2)))
        H.append(_exact("x' <=_K x <=_K x''", _leq(cone, x1, x) and _leq(cone, x, x2)))
        H.append(_exact("x <<_K f(x)", _ll(cone, x, m(x)), fx=m(x)))
        rep.diagnostics["sf_probe"] = _sf_probe(m, cone, scfg, 4 * scale).to_dict()
        promised = 3
        region = OrderBody(cone, tuple(x2)) if _ll(cone, zero, x2) else None
        keep = lambda p: bool(cone.contains(p))

    elif theorem == "thm5":
        xp = P["x_prime"]
        H.append(_icecream_hyp(cone))
        H.append(_monotone_hyp(m, cone, scfg))
        H.append(_exact("x' > 0 and x' in S_f", _lt(cone, zero, xp) and _in_Sf(m, cone, xp)))
        top = radius if radius is not None else 64 * scale
        probe = _sf_probe(m, cone, scfg, top)
        H.append(_sampled("S_f bounded", probe))
        rep.diagnostics["sf_probe"] = probe.to_dict()
        R = radius if radius is not None else top
        promised = 1
        region = OrderBody(cone, tuple(np.full(cone.dim, R))) if isinstance(cone, Orthant) \
            else Box(tuple(-np.full(cone.dim, R)), tuple(np.full(cone.dim, R)))
        keep = lambda p: bool(cone.contains(p))

    elif theorem == "thm6":
        x1, x2 = P["x_prime"], P["x_second"]
        H.append(_icecream_hyp(cone))
        H.append(_maps_into_orthant(m, cone, scfg))
        H.append(_monotone_hyp(m, cone, scfg))
        H.append(_exact("x' >>_K 0 and x' in S_f", _ll(cone, zero, x1) and _in_Sf(m, cone, x1)))
        H.append(_exact("x'' >>_K x'", _ll(cone, x1, x2)))
        T = _t_set_samples(cone, x2, cfg.count if cone.dim > 1 else 1, rng)
        fT = evaluate(m, T)
        bad = np.flatnonzero(cone.contains(x2 - fT))
        d = {"samples": len(T)}
        if len(bad):
            d["witness"] = {"z": T[bad[0]], "fz": fT[bad[0]]}
        exact_T = cone.dim == 1
        H.append(Hypothesis("x'' not in f(z) + K on T", NO if len(bad) else
                            (YES if exact_T else SAMPLED), d))
        if _ll(cone, zero, x2):
            n = min(cfg.count, 2000)
            Z = _gauge_boundary_samples(cone, x2, n, rng)
            fZ = evaluate(m, Z)
            g = gauge_batch(fZ, x2, cone)
            bad = np.flatnonzero(g <= 1.0)
            d = {"samples": len(Z), "min_gauge_of_image": float(g.min()) if len(g) else None}
            if len(bad):
                d["witness"] = {"z": Z[bad[0]], "fz": fZ[bad[0]], "gauge": float(g[bad[0]])}
            H.append(Hypothesis("gauge form: |z|_D(x'') = 1 implies |f(z)|_D(x'') > 1",
                                NO if len(bad) else (YES if exact_T else SAMPLED), d))
        promised = 1
        region = OrderBody(cone, tuple(x2)) if _ll(cone, zero, x2) else None
        keep = lambda p: (bool(cone.contains(p)) and _leq(cone, p, x2)
                          and not _ll(cone, p, x1))

    elif theorem == "thm8":
        x2, x1 = P["x_second"], P["x_prime"]
        H.append(_monotone_hyp(m, cone, scfg))
        H.append(_exact("x'' in S_f", _in_Sf(m, cone, x2)))
        H.append(_exact("x' in S_f", _in_Sf(m, cone, x1)))
        H.append(_exact("x'' <<_K x'", _ll(cone, x2, x1)))
        rep.diagnostics["sf_probe"] = _sf_probe(m, cone, scfg, 4 * scale).to_dict()
        promised = 2
        region = OrderBody(cone, tuple(x1)) if _ll(cone, zero, x1) else None
        xbar = None
        if all(h.verified != NO for h in H):
            try:
                xbar = monotone_descent(m, cone, x2, tol=1e-13, max_iter=100_000).fixed_point
            except HypothesisViolation as exc:
                H.append(Hypothesis("descent from x'' is K-nonincreasing", NO, exc.witness))
        rep.diagnostics["x_bar"] = xbar
        keep = lambda p: bool(cone.contains(p))

    elif theorem == "thm9":
        x2, x1 = P["x_second"], P["x_prime"]
        H.append(_maps_into_orthant(m, cone, scfg))
        H.append(_monotone_hyp(m, cone, scfg, sup=True))
        H.append(_exact("x'' in S_f and x' in S_f", _in_Sf(m, cone, x2) and _in_Sf(m, cone, x1)))
        H.append(_exact("0 <<_K x'' <<_K x'", _ll(cone, zero, x2) and _ll(cone, x2, x1)))
        top = radius if radius is not None else 64 * scale
        probe = _sf_probe(m, cone, scfg, top)
        H.append(_sampled("S_f bounded", probe))
        rep.diagnostics["sf_probe"] = probe.to_dict()
        promised = 2
        region = Box(tuple(-np.full(cone.dim, top)), tuple(np.full(cone.dim, top)))
        keep = lambda p: bool(cone.contains(p))

    elif theorem in ("guiding_G", "guiding_G2"):
        if not isinstance(cone, Orthant):
            raise ValueError("guiding-function theorems are stated for the orthant")
        gcfg = _sample_cfg(cfg, cone, 4 * scale)
        if theorem == "guiding_G":
            xp = P["x_prime"]
            r = xp - m(xp)
            lam = float(r[0])
            H.append(_exact("x' > 0", _lt(cone, zero, xp)))
            H.append(_exact("x' - f(x') = lambda 1 with lambda >= 0",
                            lam >= 0 and np.allclose(r, lam, rtol=0, atol=1e-12), residual=r))
            H.append(_sampled("guiding condition G", check_guiding_G(m, gcfg)))
        else:
            H.append(_sampled("guiding condition G2", check_guiding_G2(m, gamma, gcfg)))
            if "lambda" in points:
                lam = float(points["lambda"])
                one = np.ones(cone.dim)
                H.append(_exact("f(lambda 1) <=_K lambda 1", lam > 0 and _leq(cone, m(lam * one),
                                                                              lam * one)))
                x = cone_points(cone, gcfg)
                r = evaluate(m, x) - x
                lhs = r.sum(axis=1)
                rhs = (math.pi / 2 - gamma) * np.linalg.norm(r, axis=1)
                bad = np.flatnonzero(lhs > rhs + 1e-12)
                d = {"samples": len(x)}
                if len(bad):
                    d["witness"] = {"x": x[bad[0]], "lhs": lhs[bad[0]], "rhs": rhs[bad[0]]}
                H.append(Hypothesis("<f(x) - x, 1> <= (pi/2 - gamma) |f(x) - x|_2",
                                    NO if len(bad) else SAMPLED, d))
        top = radius if radius is not None else 64 * scale
        probe = _sf_probe(m, cone, gcfg, top)
        H.append(_sampled("S_f bounded", probe))
        rep.diagnostics["sf_probe"] = probe.to_dict()
        promised = 1
        region = OrderBody(cone, tuple(np.full(cone.dim, top)))
        keep = lambda p: _lt(cone, zero, p)

    if region is None or not rep.hypotheses_hold:
        return rep
    pts, method = _locate_points(m, cone, region, max_depth, boundary_samples, cfg)
    kept = _conclude(rep, pts, method, promised, keep)
    if theorem == "thm8":
        xbar = rep.diagnostics.get("x_bar")
        above = [p for p in kept if xbar is not None and _lt(cone, xbar, p["point"])
                 and np.max(np.abs(np.asarray(p["point"]) - xbar)) > 1e-8]
        below = [p for p in kept if xbar is not None
                 and np.max(np.abs(np.asarray(p["point"]) - xbar)) <= 1e-8]
        rep.diagnostics["x_tilde"] = [p["point"] for p in above]
        rep.conclusion_holds = bool(below) and bool(above)
    return rep
