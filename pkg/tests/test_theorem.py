import numpy as np
import pytest

from subord_lab.analytic import Compose, Z, differentiate, evaluate, pow_principal
from subord_lab.errors import CenterMismatch
from subord_lab.families import janowski
from subord_lab.geometry import Outcome, SampleGrid
from subord_lab.params import ParamSet
from subord_lab.theorem import (bracket, build_auxiliaries, check_hypotheses, class_membership,
                                cond23_expr, transform_flat, transform_P, verify_dominant, verify_sandwich,
                                verify_subordinant)

PS = ParamSet()
Q = janowski(0.5, -0.5)
COARSE = SampleGrid(angular_count=512)


def test_class_membership_examples():
    assert class_membership(Q, PS).passed
    assert class_membership(1 + Z, PS).passed
    r = class_membership(1 - 2 * Z, PS)
    assert not r.passed
    assert abs(r.argmin - 0.5) < 0.01


def test_class_membership_requires_center():
    with pytest.raises(CenterMismatch):
        class_membership(2 + Z, PS)


def test_class_membership_branch_margin_for_fractional_powers():
    ps = ParamSet(alpha=0.5, mu=1.0)
    assert class_membership(Q, ps).passed
    assert not class_membership(1 + 1.5 * Z, ps).passed


def test_transforms_at_half():
    assert evaluate(transform_P(Q, PS), 0.5) == pytest.approx(11 / 3)
    assert evaluate(transform_flat(Q, PS), 0.5) == pytest.approx(11 / 3)


def test_transforms_at_origin():
    assert evaluate(transform_P(Q, PS), 0.0) == pytest.approx(1.0)
    assert evaluate(transform_flat(Q, PS), 0.0) == pytest.approx(1.0)
    assert evaluate(transform_flat(Q, ParamSet(delta=2)), 0.0) == pytest.approx(3.0)


def test_auxiliaries():
    aux = build_auxiliaries(Q, PS)
    assert evaluate(aux.R, 0.5) == pytest.approx(8 / 15)
    assert evaluate(aux.Q, 0.5) == pytest.approx(8 / 9)
    assert evaluate(aux.h, 0.5) == pytest.approx(11 / 3)
    assert evaluate(aux.R, 0.0) == 0
    assert evaluate(aux.Q, 0.0) == 0
    assert evaluate(aux.h, 0.0) == pytest.approx(1.0)


@pytest.mark.parametrize("q", [janowski(0.5, -0.5), janowski(0.9, -0.1), janowski(1.0, -1.0),
                               janowski(0.3, 0.1), 1 + Z])
@pytest.mark.parametrize("ps", [PS, ParamSet(alpha=0.5, mu=0.7, beta=2, gamma=0.5, delta=1 + 1j)])
def test_h_is_the_flat_transform(q, ps):
    rng = np.random.default_rng(4)
    z = 0.9 * np.sqrt(rng.uniform(size=100)) * np.exp(2j * np.pi * rng.uniform(size=100))
    aux = build_auxiliaries(q, ps)
    assert np.max(np.abs(evaluate(transform_flat(q, ps), z) - evaluate(aux.h, z))) <= 1e-10


def test_hypotheses_reference_values():
    reports = check_hypotheses(Q, PS)
    assert [r.name for r in reports] == ["cond-2.2", "cond-2.3", "Q-starlike"]
    assert reports[0].min_value == pytest.approx(2 / 3, abs=2e-3)
    assert reports[1].min_value == pytest.approx(0.3338, abs=2e-3)
    assert reports[2].min_value == pytest.approx(0.3338, abs=2e-3)
    assert all(r.passed for r in reports)


@pytest.mark.parametrize("A,B,m", [(0.5, -0.5, 1.0), (0.8, -0.3, 0.5), (0.3, -0.9, 0.8)])
def test_cond23_matches_convexity_expression(A, B, m):
    # with alpha = mu, beta = 1 and gamma = delta = 0 the condition reduces to
    # Re(1 + z q''/q')
    q = janowski(A, B)
    ps = ParamSet(alpha=m, mu=m)
    grid = SampleGrid().with_inner_ladder()
    z = grid.points()
    dq = differentiate(q)
    convex = evaluate(1 + Z * differentiate(dq) / dq, z).real
    ours = evaluate(cond23_expr(q, ps), z).real
    assert np.max(np.abs(ours - convex)) <= 1e-9
    assert check_hypotheses(q, ps)[1].min_value == pytest.approx(convex.min(), abs=1e-9)


def test_verify_dominant_identity():
    v = verify_dominant(Q, Q, PS, COARSE)
    assert v.premise.holds and v.conclusion.holds and v.consistent


def test_verify_dominant_schwarz_composition():
    v = verify_dominant(Compose(Q, 0.5 * Z), Q, PS)
    assert v.conclusion.holds and v.consistent and v.hypotheses_pass


def test_verify_dominant_exceeding_image():
    v = verify_dominant(janowski(0.9, -0.9), Q, PS, COARSE)
    assert v.conclusion.fails
    assert v.consistent == (not v.premise.holds)
    assert v.consistent


def test_verify_subordinant_identity():
    v = verify_subordinant(Q, Q, PS, COARSE)
    assert v.consistent and v.conclusion.holds
    assert any("assumed" in a for a in v.assumptions)


def test_verify_subordinant_nonunivalent_p_is_inconclusive():
    p = 1 + Z + 0.9 * Z * Z * Z
    v = verify_subordinant(p, Q, ParamSet(), COARSE)
    assert v.premise.outcome is Outcome.INCONCLUSIVE
    assert "univalence" in v.premise.detail
    assert v.consistent


def test_verify_sandwich_identity():
    v = verify_sandwich(Q, Q, Q, PS, COARSE)
    assert v.premise.holds and v.conclusion.holds and v.consistent


def test_verify_sandwich_nested():
    v = verify_sandwich(janowski(0.5, -0.5), janowski(0.2, -0.2), janowski(0.8, -0.8), PS)
    assert v.conclusion.holds and v.consistent


def test_verify_sandwich_reversed():
    v = verify_sandwich(janowski(0.5, -0.5), janowski(0.8, -0.8), janowski(0.2, -0.2), PS, COARSE)
    assert v.conclusion.fails
    assert v.conclusion.witness_z is not None
    assert v.consistent


def test_verdict_json_shape():
    d = verify_dominant(Q, Q, PS, COARSE).to_dict()
    for key in ("premise", "hypotheses", "conclusion", "consistent", "witnesses", "grid", "params"):
        assert key in d


def test_flat_power_identity_on_branch_safe_points():
    ps = ParamSet(alpha=1.5, mu=0.5, beta=1.0, gamma=0.3, delta=0.2)
    p = janowski(0.6, -0.3)
    rng = np.random.default_rng(8)
    z = 0.95 * np.sqrt(rng.uniform(size=4000)) * np.exp(2j * np.pi * rng.uniform(size=4000))
    pv, bv = evaluate(p, z), evaluate(bracket(p, ps), z)
    keep = (np.abs(ps.ratio * np.angle(pv) + np.angle(bv)) < np.pi)
    flat = evaluate(transform_flat(p, ps), z[keep])
    P = evaluate(transform_P(p, ps), z[keep])
    assert np.max(np.abs(pow_principal(flat, ps.mu) - P)) <= 1e-9
