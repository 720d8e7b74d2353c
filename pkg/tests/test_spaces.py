"""Cone, norms, pairing and element-class predicates in all three models."""

import numpy as np
import pytest

from ouspectra import families as fams
from ouspectra import spaces as sp
from ouspectra.errors import NotAnEffect, ShapeMismatch
from ouspectra.spaces import AElem, VElem


FN3 = sp.fn_space(3)
JB2 = sp.jb_space(2)
L2 = sp.censym_space(fams.lp(2, 2))


def cs(a0, y, space=L2):
    return AElem(space, np.concatenate([[a0], np.asarray(y, float)]))


class TestCone:
    def test_jb_negative_eigenvalue(self):
        assert not sp.in_cone(AElem(JB2, np.diag([1.0, -1.0])))

    def test_censym_ball_formula(self):
        assert sp.in_cone(cs(1.0, (0.5, 0.0)))
        assert not sp.in_cone(cs(0.4, (0.5, 0.0)))

    def test_fn_zero(self):
        assert sp.in_cone(AElem(FN3, np.zeros(3)))

    def test_payload_shape_guard(self):
        with pytest.raises(ShapeMismatch):
            AElem(FN3, np.zeros(4))
        with pytest.raises(ShapeMismatch):
            AElem(JB2, np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestNorms:
    def test_fn_sup_norm(self):
        assert sp.order_unit_norm(AElem(FN3, np.array([2.0, 0.0, -1.0]))) == 2.0

    def test_jb_spectral_radius_vs_oracle(self):
        a = AElem(JB2, np.array([[0.0, 1.0], [1.0, 0.0]]))
        oracle = np.abs(np.linalg.eigvalsh(a.data)).max()
        assert oracle == pytest.approx(1.0)
        assert sp.order_unit_norm(a) == pytest.approx(oracle, abs=1e-12)

    def test_censym_sum_formula(self):
        assert sp.order_unit_norm(cs(0.3, (0.4, 0.0))) == pytest.approx(0.7)

    def test_base_norm(self):
        assert sp.base_norm(VElem(L2, np.array([1.0, 0.2, 0.0]))) == pytest.approx(1.0)
        assert sp.base_norm(VElem(FN3, np.array([0.5, -0.5, 0.0]))) == pytest.approx(1.0)
        assert sp.base_norm(VElem(L2, np.array([0.0, 2.0, 0.0]))) == pytest.approx(2.0)


class TestPairing:
    def test_censym_unit_on_states(self):
        one = sp.unit(L2)
        rng = np.random.default_rng(0)
        for _ in range(20):
            rho = sp.random_state(L2, rng)
            assert sp.pairing(one, rho) == pytest.approx(1.0)

    def test_jb_trace(self):
        assert sp.pairing(sp.unit(JB2), VElem(JB2, np.diag([0.5, 0.5]))) == pytest.approx(1.0)

    def test_fn_dot(self):
        a = AElem(FN3, np.array([1.0, 2.0, 3.0]))
        assert sp.pairing(a, VElem(FN3, np.array([1.0, 0.0, 0.0]))) == pytest.approx(1.0)

    def test_space_mismatch(self):
        with pytest.raises(ShapeMismatch):
            sp.pairing(sp.unit(FN3), VElem(JB2, np.eye(2)))


class TestEffects:
    def test_censym_effect_region(self):
        assert sp.is_effect(cs(0.5, (0.5, 0.0)))
        assert not sp.is_effect(cs(0.3, (0.5, 0.0)))

    def test_jb_above_one(self):
        assert not sp.is_effect(AElem(JB2, np.diag([1.5, 0.0])))

    def test_fn_box(self):
        assert sp.is_effect(AElem(FN3, np.array([0.0, 1.0, 0.5])))


class TestSharp:
    def test_jb_projection(self):
        assert sp.is_sharp(AElem(JB2, np.diag([1.0, 0.0])))

    def test_censym_midpoint_atom(self):
        assert sp.is_sharp(cs(0.5, (0.5, 0.0)))
        assert not sp.is_sharp(cs(0.5, (0.25, 0.0)))

    def test_fn_fractional(self):
        assert not sp.is_sharp(AElem(FN3, np.array([0.5, 1.0, 0.0])))

    def test_requires_effect(self):
        with pytest.raises(NotAnEffect):
            sp.is_sharp(AElem(FN3, np.array([2.0, 0.0, 0.0])))


class TestExtremal:
    def test_stadium_atom_extremal(self):
        space = sp.censym_space(fams.stadium(1.0, 1.0))
        assert sp.is_extremal(cs(0.5, (0.0, 0.5), space))

    def test_stadium_extreme_certificate_matches_midpoint_sampling(self):
        # independent check of strict convexity of the dual ball: midpoints
        # of distinct boundary points stay strictly inside
        fam = fams.stadium(1.0, 1.0)
        rng = np.random.default_rng(1)
        for _ in range(200):
            u = rng.standard_normal(2)
            v = rng.standard_normal(2)
            yu = u / fams.dual_norm(fam, u)
            yv = v / fams.dual_norm(fam, v)
            if np.abs(yu - yv).max() < 1e-8:
                continue
            assert fams.dual_norm(fam, (yu + yv) / 2.0) < 1.0 - 1e-12

    def test_fn_indicator(self):
        assert sp.is_extremal(AElem(FN3, np.array([1.0, 0.0, 0.0])))

    def test_jb_half_unit_is_midpoint(self):
        assert not sp.is_extremal(AElem(JB2, 0.5 * np.eye(2)))

    def test_l1_atom_only_at_corners(self):
        space = sp.censym_space(fams.lp(1, 2))
        assert sp.is_extremal(cs(0.5, (0.5, 0.5), space))
        assert not sp.is_extremal(cs(0.5, (0.5, 0.25), space))


class TestPrincipal:
    def test_jb_projection_principal(self):
        assert sp.is_principal(AElem(JB2, np.diag([1.0, 0.0])))

    def test_fn_small_multiple_not_principal(self):
        e = AElem(FN3, np.array([0.5, 0.0, 0.0]))
        assert not sp.is_principal(e)
        # the documented witness: below 2e and below one, but not below e
        b = AElem(FN3, np.array([0.6, 0.0, 0.0]))
        assert sp.leq(b, 2.0 * e) and sp.leq(b, sp.unit(FN3)) and not sp.leq(b, e)

    def test_censym_atom_principal(self):
        assert sp.is_principal(cs(0.5, (0.5, 0.0)))


class TestInvariants:
    @pytest.mark.parametrize("space", [FN3, JB2, L2], ids=["fn", "jb", "censym"])
    def test_norm_duality_sup(self, space):
        """Sampling the dual ball (mixtures plus extreme points) reaches the
        order-unit norm within five percent and never exceeds it."""
        rng = np.random.default_rng(11)
        for _ in range(20):
            a = sp.random_element(space, rng)
            nrm = sp.order_unit_norm(a)
            if nrm < 1e-12:
                continue
            samples = [sp.random_unit_ball_v(space, rng) for _ in range(500)]
            samples += [sp.random_extreme_dual(space, rng) for _ in range(500)]
            best = max(abs(sp.pairing(a, v)) for v in samples)
            assert best <= nrm * (1 + 1e-9)
            assert best >= 0.95 * nrm

    def test_norm_attained_at_extreme_states_fn(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            a = sp.random_element(FN3, rng)
            i = int(np.argmax(np.abs(a.data)))
            delta = np.zeros(3)
            delta[i] = np.sign(a.data[i]) if a.data[i] else 1.0
            assert abs(sp.pairing(a, VElem(FN3, delta))) == pytest.approx(sp.order_unit_norm(a))

    def test_norm_attained_at_extreme_states_censym(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            a = sp.random_element(L2, rng)
            if fams.dual_norm(L2.family, a.y) < 1e-9:
                continue
            x = fams.dual_face(L2.family, a.y).representative()
            sgn = 1.0 if a.a0 >= 0 else -1.0
            v = VElem(L2, sgn * np.concatenate([[1.0], sgn * x]))
            assert abs(sp.pairing(a, v)) == pytest.approx(sp.order_unit_norm(a), abs=1e-9)

    @pytest.mark.parametrize(
        "space,count", [(FN3, 5000), (JB2, 1500), (L2, 5000)], ids=["fn", "jb", "censym"]
    )
    def test_principal_implies_sharp(self, space, count):
        # combined across models this exceeds 1e4 (effect, candidate) trials
        rng = np.random.default_rng(21)
        inner = 10
        for k in range(count // inner):
            e = sp.random_effect(space, rng)
            if sp.is_principal(e, trials=inner, rng_seed=100 + k):
                assert sp.is_sharp(e), f"principal but not sharp: {e.data}"

    @pytest.mark.parametrize("space", [FN3, JB2, L2], ids=["fn", "jb", "censym"])
    def test_cone_pointed(self, space):
        rng = np.random.default_rng(5)
        for _ in range(200):
            a = sp.random_element(space, rng) * 1e-11
            if sp.in_cone(a) and sp.in_cone(-1.0 * a):
                assert sp.order_unit_norm(a) <= space.tol.eq_tol


def test_effect_generators_stay_in_interval():
    rng = np.random.default_rng(9)
    for space in (FN3, JB2, L2, sp.censym_space(fams.stadium(1.0, 2.0))):
        for _ in range(100):
            assert sp.is_effect(sp.random_effect(space, rng))
            assert sp.pairing(sp.unit(space), sp.random_state(space, rng)) == pytest.approx(1.0)
