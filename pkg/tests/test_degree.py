import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import brentq

from conefix.cones import IceCream, Orthant
from conefix.degree import (Annulus, Box, Disk, Interval, OrderBody, degree, degree_1d,
                            degree_2d, locate_fixed_points, parse_region_spec, region_to_spec)
from conefix.maps import Builtin, DenseLayer, FunctionMap, Network

E3 = Builtin("example3")
ROOTS = [brentq(lambda t: E3([t])[0] - t, a, b, xtol=1e-15)
         for a, b in ((0.0, 0.1), (0.2, 0.4), (0.5, 1.0))]
# two copies of the example3 neuron side by side: nine fixed points
E3X2 = Network([DenseLayer([[10, 0], [0, 10]], [-4, -4], "sigmoid")])


def vmap(fn, dim):
    return FunctionMap(fn, dim, vectorized=True)


def from_residual(g):
    """Map whose fixed-point residual x - f(x) is ``g``."""
    return vmap(lambda X: X - g(X), 2)


def test_example3_degrees():
    assert degree_1d(E3, (0.0, 0.1)).degree == 1
    assert degree_1d(E3, (0.2, 0.4)).degree == -1
    assert degree_1d(E3, (0.5, 1.0)).degree == 1
    assert degree_1d(E3, (0.0, 1.0)).degree == 1
    assert degree_1d(E3, (0.05, 0.2)).degree == 0


def test_degree_1d_endpoint_zero():
    rep = degree_1d(vmap(lambda X: X.copy(), 1), (0.0, 1.0))
    assert rep.degree is None and not rep.reliable


def test_degree_1d_validation():
    with pytest.raises(ValueError):
        Interval(1.0, 0.0)
    with pytest.raises(ValueError):
        degree_1d(E3X2, (0.0, 1.0))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=6))
def test_additivity_1d(cuts):
    cuts = [c for c in cuts if min(abs(c - r) for r in ROOTS) > 1e-6 and 0 < c < 1]
    edges = sorted({0.0, 1.0, *cuts})
    total = sum(degree_1d(E3, (a, b)).degree for a, b in zip(edges, edges[1:]))
    assert total == degree_1d(E3, (0.0, 1.0)).degree


@settings(max_examples=15, deadline=None)
@given(st.floats(-0.4, 1.4), st.booleans())
def test_additivity_2d(cut, vertical):
    if min(abs(cut - r) for r in ROOTS) < 1e-3:
        return
    lo, hi = (-0.5, -0.5), (1.5, 1.5)
    if vertical:
        parts = [Box(lo, (cut, hi[1])), Box((cut, lo[1]), hi)]
    else:
        parts = [Box(lo, (hi[0], cut)), Box((lo[0], cut), hi)]
    whole = degree_2d(E3X2, Box(lo, hi))
    reps = [degree_2d(E3X2, p) for p in parts]
    assert whole.reliable and all(r.reliable for r in reps)
    assert sum(r.degree for r in reps) == whole.degree == 1


def test_product_degree_oracle():
    # degree of a product map is the product of the 1-D degrees
    for (a, b), expect in (((0.0, 0.1), 1), ((0.2, 0.4), -1), ((0.5, 1.0), 1)):
        for (c, d), other in (((0.0, 0.1), 1), ((0.2, 0.4), -1)):
            rep = degree_2d(E3X2, Box((a, c), (b, d)))
            assert rep.degree == expect * other


def test_lift_consistency():
    # f(x, y) = (example3(x), y / 2) has residual (g(x), y / 2): 2-D degree equals 1-D degree
    lift = vmap(lambda X: np.stack([E3.batch(X[:, :1])[:, 0], X[:, 1] / 2], 1), 2)
    for a, b in ((0.0, 0.1), (0.2, 0.4), (0.0, 1.0), (0.05, 0.2)):
        assert degree_2d(lift, Box((a, -1), (b, 1))).degree == degree_1d(E3, (a, b)).degree


@settings(max_examples=10, deadline=None)
@given(st.floats(0.0, 1.0))
def test_homotopy_invariance(t):
    # f_t maps the disk into its interior for all t, so no boundary zeros appear
    R = np.array([[0.0, -1.0], [1.0, 0.0]])
    ft = vmap(lambda X: (1 - t) * 0.5 * X @ R.T + t * np.tanh(X) * 0.3 + 0.1, 2)
    rep = degree_2d(ft, Disk((0.0, 0.0), 1.0))
    assert rep.reliable and rep.degree == 1


def test_winding_units():
    disk = Disk((0.0, 0.0), 1.0)
    assert degree_2d(vmap(lambda X: 0 * X, 2), disk).degree == 1
    assert degree_2d(vmap(lambda X: 2 * X, 2), disk).degree == 1
    # residual z^2 has a double zero at the origin
    sq = from_residual(lambda X: np.stack([X[:, 0] ** 2 - X[:, 1] ** 2,
                                           2 * X[:, 0] * X[:, 1]], 1))
    assert degree_2d(sq, disk).degree == 2
    # residual conj(z) has degree -1
    conj = from_residual(lambda X: X * np.array([1.0, -1.0]))
    assert degree_2d(conj, disk).degree == -1
    assert degree_2d(vmap(lambda X: 0 * X, 2), Box((2, 2), (3, 3))).degree == 0


def test_winding_is_near_integer():
    rep = degree_2d(E3X2, Box((-0.5, -0.5), (1.5, 1.5)))
    assert abs(rep.winding - rep.degree) < 1e-9


def test_boundary_zero_reported():
    rep = degree_2d(vmap(lambda X: 0 * X, 2), Box((0.0, -1.0), (1.0, 1.0)))
    assert rep.degree is None and not rep.reliable


def test_refinement_cap():
    # a residual that winds fast exhausts a tiny cap instead of guessing
    fast = from_residual(lambda X: np.stack([np.cos(40 * np.arctan2(X[:, 1], X[:, 0])),
                                             np.sin(40 * np.arctan2(X[:, 1], X[:, 0]))], 1))
    rep = degree_2d(fast, Disk((0.0, 0.0), 1.0), max_points=100)
    assert rep.degree is None and "cap" in rep.message
    rep = degree_2d(fast, Disk((0.0, 0.0), 1.0))
    assert rep.degree == 40


def test_boundary_samples_floor():
    with pytest.raises(ValueError):
        degree_2d(E3X2, Disk((0.0, 0.0), 1.0), boundary_samples=32)


def test_annulus():
    box = Box((-0.5, -0.5), (1.5, 1.5))
    inner = Box((0.2, 0.2), (0.4, 0.4))
    rep = degree_2d(E3X2, Annulus(box, inner))
    assert rep.degree == 1 - 1


def test_degree_dispatch():
    assert degree(E3, Interval(0.0, 1.0)).degree == 1
    assert degree(E3, Box((0.0,), (1.0,))).degree == 1
    assert degree(E3X2, Box((0.0, 0.0), (0.1, 0.1))).degree == 1


def test_locate_example3():
    rep = locate_fixed_points(E3, Interval(0.0, 1.0))
    assert [b.degree for b in rep.boxes] == [1, -1, 1]
    for b, r in zip(rep.boxes, ROOTS):
        assert abs(b.point[0] - r) <= 1e-12 and b.resolved
    assert rep.total_degree == 1 and rep.hidden_even_boxes == 0


def test_locate_2d_nine_points():
    rep = locate_fixed_points(E3X2, Box((-0.5, -0.5), (1.5, 1.5)))
    pts = sorted(tuple(np.round(b.point, 9)) for b in rep.boxes)
    expect = sorted((round(a, 9), round(b, 9)) for a in ROOTS for b in ROOTS)
    assert len(pts) == 9
    assert np.allclose(pts, expect, atol=1e-8)
    assert rep.total_degree == 1


def test_located_points_have_small_residual():
    rep = locate_fixed_points(E3X2, Box((-0.5, -0.5), (1.5, 1.5)))
    for b in rep.boxes:
        assert b.residual <= 1e-9
        assert np.all(b.low <= b.point) and np.all(b.point <= b.high)


def test_locate_identity_unresolved():
    rep = locate_fixed_points(vmap(lambda X: X.copy(), 1), Interval(0.0, 1.0), max_depth=6)
    assert rep.total_degree is None
    assert any(not b.resolved for b in rep.boxes)


def test_locate_disk_filter():
    rep = locate_fixed_points(E3X2, Disk((0.0, 0.0), 0.1))
    assert len(rep.boxes) == 1
    assert np.allclose(rep.boxes[0].point, [ROOTS[0]] * 2, atol=1e-9)


def test_order_body_region():
    body = OrderBody(Orthant(2), (1.0, 2.0))
    lo, hi = body.bounds()
    assert np.allclose(hi, [1.0, 2.0], rtol=0.03) and np.all(hi >= [1.0, 2.0])
    assert body.contains([[0.5, -1.5]])[0] and not body.contains([[1.5, 0.0]])[0]
    ic = OrderBody(IceCream((1, 1), 0.9), (1.0, 1.0))
    lo, hi = ic.bounds()
    assert np.all(hi > 0) and np.allclose(lo, -hi)


def test_region_specs_roundtrip():
    for r in (Interval(0.0, 1.0), Box((0, 0), (1, 2)), Disk((0, 0), 1.5)):
        assert parse_region_spec(region_to_spec(r)) == r
    with pytest.raises(ValueError):
        parse_region_spec({"type": "ellipse"})
    with pytest.raises(ValueError):
        parse_region_spec({"type": "box", "low": [0]})
    with pytest.raises(ValueError):
        Box((0, 0), (1, 0))
    with pytest.raises(ValueError):
        Disk((0, 0), -1)


def test_degree_report_json():
    d = degree_2d(E3X2, Box((0.0, 0.0), (0.1, 0.1))).to_dict()
    assert d["degree"] == 1 and d["reliable"] is True and math.isfinite(d["winding"])
