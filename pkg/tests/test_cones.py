import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conefix.certify import cone_directions
from conefix.degree import gauge_batch
from conefix.cones import (IceCream, Orthant, compare, contains, delta_K, gauge_norm, geometry,
                           inf_orthant, lambda_coefficient, leq_lambda_2d, opening_angle,
                           parse_cone_spec, sup_orthant, weighted_max_norm)

R2 = math.sqrt(2) / 2
finite = st.floats(-1e3, 1e3, allow_nan=False)
vec2 = st.tuples(finite, finite).map(np.array)


def cones_2d():
    return [Orthant(2), IceCream((1, 1), R2), IceCream((1, 1), 0.9), IceCream((1, 2), 0.5)]


# contains / compare

def test_contains_examples():
    assert contains(Orthant(2), [1, 0])
    assert not contains(Orthant(2), [1, 0], interior=True)
    assert contains(IceCream((1, 1), R2), [1, 1])
    assert not contains(IceCream((1, 1), R2), [1, -0.1])


def test_zero_in_cone_not_interior():
    for K in cones_2d():
        assert contains(K, [0, 0])
        assert not contains(K, [0, 0], interior=True)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        contains(Orthant(2), [1, 2, 3])
    with pytest.raises(ValueError):
        compare(Orthant(2), [1, 2], [1])


def test_compare_examples():
    r = compare(Orthant(2), [1, 5], [3, 5])
    assert (r.leq, r.lt, r.ll) == (True, True, False)
    r = compare(IceCream((1, 1), 0.5), [0, 0], [1, -0.2])
    assert r.leq
    # direct evaluation of <y - x, w> >= beta |y - x| |w|
    assert 0.8 >= 0.5 * math.sqrt(1.04) * math.sqrt(2)


@given(vec2)
def test_compare_reflexive(x):
    for K in cones_2d():
        r = compare(K, x, x)
        assert (r.leq, r.lt, r.ll) == (True, False, False)


def test_icecream_axis_zero_rejected():
    with pytest.raises(ValueError):
        IceCream((0, 0), 0.5)


def test_orthant_equals_quarter_icecream_in_2d():
    rng = np.random.default_rng(3)
    v = rng.normal(size=(20_000, 2))
    ice = IceCream((1, 1), R2, tau=0.0)
    near = np.abs(np.minimum(v[:, 0], v[:, 1])) < 1e-9
    assert np.all(Orthant(2, tau=0.0).contains(v)[~near] == ice.contains(v)[~near])


def test_parse_cone_spec():
    assert parse_cone_spec({"type": "orthant", "dim": 3}) == Orthant(3)
    K = parse_cone_spec({"type": "ice_cream", "w": [1, 1], "beta": 0.5})
    assert K == IceCream((1, 1), 0.5)
    for bad in [{"type": "x"}, {"type": "orthant"}, {"type": "ice_cream", "w": [1], "beta": 2}]:
        with pytest.raises(ValueError):
            parse_cone_spec(bad)


# order axioms on random triples

@pytest.mark.parametrize("seed", [0, 1, 2])
def test_order_axioms(seed):
    rng = np.random.default_rng(seed)
    n = 10_000
    for K in [Orthant(2), Orthant(3), IceCream((1, 1), 0.5), IceCream((1, 2, 3), 0.8)]:
        d = K.dim
        x = rng.normal(size=(n, d))
        # half the increments are cone directions so transitivity is exercised
        k1, k2 = rng.normal(size=(n, d)), rng.normal(size=(n, d))
        k1[: n // 2] = cone_directions(K, rng, n // 2)
        k2[: n // 2] = cone_directions(K, rng, n // 2)
        y, z = x + k1, x + k1 + k2
        leq = lambda a, b: K.contains(b - a)
        both = leq(x, y) & leq(y, z)
        assert both.sum() > n // 4
        assert np.all(leq(x, z)[both])
        assert np.all(leq(x, x))
        a = rng.normal(size=(n, d))
        lam = rng.uniform(0.1, 10, (n, 1))
        # translation and scaling only move points off the tolerance band
        far = np.abs(_margin(K, y - x)) > 1e-9 * (1 + np.abs(y - x).max(axis=1))
        assert np.all((leq(x + a, y + a) == leq(x, y))[far])
        assert np.all((leq(lam * x, lam * y) == leq(x, y))[far])


def _margin(K, v):
    if isinstance(K, Orthant):
        return v.min(axis=1)
    return v @ K.axis - K.beta * np.linalg.norm(v, axis=1)


def test_pointedness():
    rng = np.random.default_rng(0)
    for K in [Orthant(2), IceCream((1, 1), 0.3), IceCream((1, 1), R2)]:
        x = rng.normal(size=(5000, 2))
        y = np.vstack([x[:2500], rng.normal(size=(2500, 2))])
        both = K.contains(y - x) & K.contains(x - y)
        assert np.all(np.all(x[both] == y[both], axis=1))


# lambda form

def test_lambda_values():
    assert lambda_coefficient(R2) == 0.0
    assert lambda_coefficient(0.5) == pytest.approx(-0.2679491924311228, abs=1e-12)
    # independent: gamma = sqrt(2)/2, 1 - gamma^2 = 1/2
    assert lambda_coefficient(0.5) == pytest.approx((-1 + math.sqrt(0.75)) / 0.5)
    with pytest.raises(ValueError):
        lambda_coefficient(0.8)


@pytest.mark.parametrize("beta", [0.1, 0.3, 0.5, R2])
def test_lambda_equivalence(beta):
    rng = np.random.default_rng(7)
    x = rng.uniform(-1, 1, (100_000, 2))
    y = rng.uniform(-1, 1, (100_000, 2))
    d = y - x
    margin = d.sum(axis=1) - beta * np.linalg.norm(d, axis=1) * math.sqrt(2)
    band = np.abs(margin) <= 1e-12
    direct = margin >= 0
    assert np.all(leq_lambda_2d(beta, x, y)[~band] == direct[~band])
    assert leq_lambda_2d(beta, [0, 0], [1, 1])


# sup / inf

def test_sup_inf():
    assert np.array_equal(sup_orthant([1, 5], [3, 2]), [3, 5])
    assert np.array_equal(inf_orthant([1, 5], [3, 2]), [1, 2])
    assert np.array_equal(sup_orthant([1, 5], [1, 5]), [1, 5])


@given(vec2, vec2)
def test_sup_is_upper_bound(x, y):
    s = sup_orthant(x, y)
    K = Orthant(2, tau=0.0)
    assert K.contains(s - x) and K.contains(s - y)


# norms

def test_weighted_norm_examples():
    assert weighted_max_norm([2, -3], [1, 1]) == 3
    assert weighted_max_norm([2, -3], [2, 3]) == 1
    assert weighted_max_norm([0, 0], [2, 3]) == 0
    with pytest.raises(ValueError):
        weighted_max_norm([1, 1], [1, 0])


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_norm_axioms(seed):
    rng = np.random.default_rng(seed)
    n = 10_000
    x, y = rng.normal(size=(n, 2)), rng.normal(size=(n, 2))
    v = np.array([0.5, 2.0])
    nx, ny, nxy = (weighted_max_norm(a, v) for a in (x, y, x + y))
    assert np.all(nxy <= nx + ny + 1e-12)
    lam = rng.normal(size=n)
    assert np.allclose(weighted_max_norm(lam[:, None] * x, v), np.abs(lam) * nx, rtol=1e-12)
    assert np.all(nx > 0)


def test_gauge_examples():
    assert gauge_norm([2, -3], [1, 1], Orthant(2)) == 3
    K = IceCream((1, 1), R2)
    assert gauge_norm([1, 2], [1, 2], K) == pytest.approx(1, abs=1e-12)
    assert gauge_norm([0.5, 1], [1, 2], K) == pytest.approx(0.5, abs=1e-12)
    assert gauge_norm([1, 2], [1, 2], IceCream((1, 1), 0.5)) == pytest.approx(1, abs=1e-12)


def test_gauge_errors():
    with pytest.raises(ValueError):
        gauge_norm([1, 1], [0, 1], Orthant(2))
    with pytest.raises(ValueError):
        gauge_norm([1, 1], [1, 1], IceCream((1, -1), 0.1))


def test_gauge_axioms():
    rng = np.random.default_rng(0)
    K = IceCream((1, 1), 0.5)
    a = np.array([1.0, 1.5])
    for _ in range(200):
        x, y = rng.normal(size=2), rng.normal(size=2)
        gx, gy = gauge_norm(x, a, K), gauge_norm(y, a, K)
        assert gauge_norm(x + y, a, K) <= gx + gy + 1e-12
        lam = rng.normal()
        assert gauge_norm(lam * x, a, K) == pytest.approx(abs(lam) * gx, rel=1e-10, abs=1e-13)
        assert gx > 0
        assert gauge_batch(x, a, K)[0] == pytest.approx(gx, rel=1e-12)
    assert gauge_norm([0, 0], a, K) == 0


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_gauge_axioms_batch(seed):
    rng = np.random.default_rng(seed)
    n = 10_000
    a = np.array([1.0, 1.5])
    for K in [IceCream((1, 1), 0.5), IceCream((1, 1), R2), Orthant(2)]:
        x, y = rng.normal(size=(n, 2)), rng.normal(size=(n, 2))
        gx, gy = gauge_batch(x, a, K), gauge_batch(y, a, K)
        assert np.all(gauge_batch(x + y, a, K) <= gx + gy + 1e-12)
        lam = rng.uniform(-5, 5, n)
        assert np.allclose(gauge_batch(lam[:, None] * x, a, K), np.abs(lam) * gx,
                           rtol=1e-12, atol=1e-14)
        assert np.all(gx > 0)


# geometry

def test_opening_angle():
    assert opening_angle(IceCream((1, 0), R2)) == pytest.approx(math.pi / 4)
    assert opening_angle(Orthant(2)) == pytest.approx(math.pi / 4)
    assert opening_angle(Orthant(4)) == pytest.approx(math.pi / 3)


def test_opening_angle_orthant_oracle():
    # largest angle between the all-ones axis and an extreme ray
    for n in (2, 3, 5):
        axis = np.ones(n) / math.sqrt(n)
        assert opening_angle(Orthant(n)) == pytest.approx(math.acos(np.eye(n)[0] @ axis))


def test_delta_orthant():
    assert delta_K(Orthant(3), [1, 2, 3]) == 1.0
    assert delta_K(Orthant(2), [1, 2], method="grid", resolution=200) == pytest.approx(1, abs=1e-3)


def test_delta_icecream():
    assert delta_K(IceCream((1, 1), R2), [1, 1]) == pytest.approx(1, abs=1e-3)
    a = delta_K(IceCream((1, 1), 0.9), [1, 1], resolution=250)
    b = delta_K(IceCream((1, 1), 0.9), [1, 1], resolution=1000)
    assert 0 < a < math.inf and abs(a - b) < 1e-3
    assert a >= 1 - 1e-9


def test_delta_wide_cone():
    # C((1,1), 1/2) has half-angle 60 degrees; sup attained at v = (1, -1) scaled
    d = delta_K(IceCream((1, 1), 0.5), [1, 1], resolution=400)
    assert d == pytest.approx(math.sqrt(3), abs=1e-3)


def test_delta_errors():
    with pytest.raises(ValueError):
        delta_K(IceCream((1, 1), 0.0), [1, 1])
    with pytest.raises(ValueError):
        delta_K(Orthant(2), [1, 0])


def test_geometry_record():
    g = geometry(Orthant(2))
    assert g.delta_K == 1.0 and g.solid and g.opening_angle < math.pi / 2


def test_v_below_norm_times_w():
    rng = np.random.default_rng(1)
    w = np.array([1.0, 2.0])
    for K in [Orthant(2), IceCream((1, 1), 0.5)]:
        v = rng.normal(size=(10_000, 2))
        nv = weighted_max_norm(v, w)
        assert np.all(K.contains(nv[:, None] * w - v))


def test_order_box_norm_bound_orthant():
    rng = np.random.default_rng(2)
    w = np.array([1.0, 3.0])
    eps = 0.25
    v = rng.uniform(-1, 1, (10_000, 2)) * eps * w
    assert np.all(weighted_max_norm(v, w) <= eps * delta_K(Orthant(2), w) + 1e-15)


def test_bounded_intersection():
    rng = np.random.default_rng(0)
    K = IceCream((1, 1), 0.8)
    x, y = np.zeros(2), np.array([1.0, 1.0])
    radii = []
    for n in (10_000, 100_000):
        p = rng.uniform(-5, 5, (n, 2))
        keep = K.contains(p - x) & K.contains(y - p)
        radii.append(np.linalg.norm(p[keep], axis=1).max())
    assert radii[1] < 5 and abs(radii[1] - radii[0]) < 0.05
