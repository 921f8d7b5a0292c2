import json

import numpy as np
import pytest
from scipy.optimize import brentq

from conefix.certify import SampleConfig
from conefix.cones import IceCream, Orthant
from conefix.degree import THEOREMS, check_theorem
from conefix.maps import Builtin, FunctionMap

E3 = Builtin("example3")
K1 = Orthant(1)
ROOTS = [brentq(lambda t: E3([t])[0] - t, a, b, xtol=1e-15)
         for a, b in ((0.0, 0.1), (0.2, 0.4), (0.5, 1.0))]
# x^2 + 0.1 has a bounded feasible set [0.1127, 0.8873]
Q1 = FunctionMap(lambda X: X * X + 0.1, 1, vectorized=True)
Q2 = FunctionMap(lambda X: X * X + 0.1, 2, vectorized=True)
Q_ROOTS = [(1 - 0.6 ** 0.5) / 2, (1 + 0.6 ** 0.5) / 2]


def points_of(rep):
    return sorted(float(c["point"][0]) for c in rep.conclusion_check if c.get("counted"))


def test_degreerzero_example3():
    rep = check_theorem(E3, K1, "degreerzero", {"x_prime": [2.0]})
    assert rep.hypotheses_hold and rep.conclusion_holds and rep.method == "degree"
    assert np.allclose(points_of(rep), ROOTS, atol=1e-12)
    assert rep.diagnostics["sf_probe"]["verdict"] == "violated"


def test_three_fixed_points_example3():
    rep = check_theorem(E3, K1, "three_fixed_points",
                        {"x_prime": [0.1], "x": [0.4], "x_second": [2.0]})
    assert rep.hypotheses_hold and rep.conclusion_holds and rep.found == 3
    assert np.allclose(points_of(rep), ROOTS, atol=1e-12)


def test_three_fixed_points_hypothesis_fails():
    rep = check_theorem(E3, K1, "three_fixed_points",
                        {"x_prime": [0.1], "x": [0.4], "x_second": [0.9]})
    assert not rep.hypotheses_hold and rep.conclusion_holds is None
    assert rep.verdict("f(x'') <<_K x''") == "no"


def test_thm6_example3():
    rep = check_theorem(E3, K1, "thm6", {"x_prime": [0.3], "x_second": [0.6]})
    assert rep.hypotheses_hold and rep.conclusion_holds
    assert np.allclose(points_of(rep), [ROOTS[1]], atol=1e-12)
    assert rep.verdict("x'' not in f(z) + K on T") == "yes"


def test_thm8_example3():
    rep = check_theorem(E3, K1, "thm8", {"x_second": [0.1], "x_prime": [2.0]})
    assert rep.hypotheses_hold and rep.conclusion_holds
    assert rep.diagnostics["x_bar"][0] == pytest.approx(ROOTS[0], abs=1e-10)
    assert all(x[0] > ROOTS[0] for x in rep.diagnostics["x_tilde"])


@pytest.mark.parametrize("theorem,points", [
    ("thm5", {"x_prime": [2.0]}),
    ("thm9", {"x_second": [0.1], "x_prime": [2.0]}),
    ("guiding_G", {"x_prime": [2.0]}),
    ("guiding_G2", {}),
])
def test_unbounded_feasible_set_blocks(theorem, points):
    # S_f contains the whole ray past the top root, so these theorems do not apply
    rep = check_theorem(E3, K1, theorem, points)
    assert rep.verdict("S_f bounded") == "no" and not rep.hypotheses_hold
    assert rep.conclusion_holds is None


@pytest.mark.parametrize("m,K,x1", [(Q1, K1, [0.5]), (Q2, Orthant(2), [0.5, 0.5])])
def test_thm5_bounded(m, K, x1):
    rep = check_theorem(m, K, "thm5", {"x_prime": x1})
    assert rep.hypotheses_hold and rep.conclusion_holds
    assert rep.verdict("S_f bounded") == "sampled_only"


def test_thm9_bounded():
    rep = check_theorem(Q1, K1, "thm9", {"x_second": [0.2], "x_prime": [0.8]})
    assert rep.hypotheses_hold and rep.conclusion_holds
    assert np.allclose(points_of(rep), Q_ROOTS, atol=1e-12)
    rep = check_theorem(Q2, Orthant(2), "thm9",
                        {"x_second": [0.2, 0.2], "x_prime": [0.8, 0.8]})
    assert rep.conclusion_holds and rep.found == 4


def test_guiding_bounded_1d():
    rep = check_theorem(Q1, K1, "guiding_G", {"x_prime": [0.5]})
    assert rep.hypotheses_hold and rep.conclusion_holds
    rep = check_theorem(Q1, K1, "guiding_G2", {})
    assert rep.hypotheses_hold and rep.conclusion_holds


def test_guiding_g2_lambda_condition():
    rep = check_theorem(Q1, K1, "guiding_G2", {"lambda": 0.5})
    assert rep.verdict("f(lambda 1) <=_K lambda 1") == "yes"
    assert not rep.hypotheses_hold


def test_guiding_needs_orthant():
    with pytest.raises(ValueError):
        check_theorem(Q2, IceCream((1, 1), 0.9), "guiding_G", {"x_prime": [0.5, 0.5]})


def test_monotonicity_failure_reported():
    rep = check_theorem(Q2, IceCream((1, 1), 0.9), "thm5", {"x_prime": [0.5, 0.5]})
    assert rep.verdict("K-monotone") == "no" and not rep.hypotheses_hold


def test_point_validation():
    with pytest.raises(ValueError, match="needs points"):
        check_theorem(E3, K1, "thm6", {"x_prime": [0.3]})
    with pytest.raises(ValueError, match="unknown theorem"):
        check_theorem(E3, K1, "thm7", {})
    with pytest.raises(ValueError):
        check_theorem(E3, Orthant(2), "thm5", {"x_prime": [1.0, 1.0]})


def test_reports_serialize_and_repeat():
    for th in THEOREMS:
        pts = {"x_prime": [0.1], "x": [0.4], "x_second": [2.0]}
        if th in ("thm6",):
            pts = {"x_prime": [0.3], "x_second": [0.6]}
        if th in ("thm8", "thm9"):
            pts = {"x_second": [0.1], "x_prime": [2.0]}
        a = json.dumps(check_theorem(E3, K1, th, pts, SampleConfig(seed=1)).to_dict(),
                       sort_keys=True)
        b = json.dumps(check_theorem(E3, K1, th, pts, SampleConfig(seed=1)).to_dict(),
                       sort_keys=True)
        assert a == b
