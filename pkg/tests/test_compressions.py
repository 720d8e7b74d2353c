"""Axiom checkers, smoothness, compression bases and compatibility."""

import numpy as np
import pytest

from ouspectra import compressions as comp
from ouspectra import families as fams
from ouspectra import spaces as sp
from ouspectra.censym import build_spectral_base, sharp_focus
from ouspectra.errors import UnknownProjection
from ouspectra.fnspace import build_fn
from ouspectra.jb import build_jb, U_p_map, random_projection
from ouspectra.spaces import AElem

FN = build_fn(3)
JB = build_jb(2)
JB3 = build_jb(3)
L2 = build_spectral_base(fams.lp(2, 2))
L3 = build_spectral_base(fams.lp(3, 2))
STAD = build_spectral_base(fams.stadium(1.0, 1.0))


def cs_elem(base, a0, y):
    return AElem(base.space, np.concatenate([[a0], np.asarray(y, float)]))


class TestAxioms:
    def test_jb_squeeze_is_full_compression(self):
        J = U_p_map(AElem(JB.space, np.diag([1.0, 0.0])))
        verdict = comp.check_F_axioms(J, trials=60, seed=3)
        assert verdict.retraction and verdict.f_compression

    def test_l1_focus_fails_kernel_axiom(self):
        space = sp.censym_space(fams.lp(1, 2))
        focus = cs_elem_space(space, 0.5, (0.5, 0.25))
        J = comp.cs_rank_one_map(space, focus, np.array([1.0, 0.0]))
        verdict = comp.check_F_axioms(J, trials=200, seed=3)
        assert verdict.retraction
        assert not verdict.f_compression
        w = [w for w in verdict.witnesses if w["axiom"] == "F3"][0]
        e = AElem(space, np.asarray(w["element"]))
        assert sp.is_effect(e)
        assert sp.order_unit_norm(J.apply(e)) < 1e-6
        assert not sp.leq(e, sp.unit(space) - focus)

    def test_fn_mask_compression(self):
        J = comp.fn_mask_map(FN.space, np.array([1.0, 1.0, 0.0]))
        verdict = comp.check_F_axioms(J, trials=40, seed=1)
        assert verdict.retraction and verdict.f_compression


def cs_elem_space(space, a0, y):
    return AElem(space, np.concatenate([[a0], np.asarray(y, float)]))


class TestComplementary:
    def test_jb_squeeze_pair(self):
        p = AElem(JB.space, np.diag([1.0, 0.0]))
        assert comp.are_complementary(U_p_map(p), U_p_map(sp.unit(JB.space) - p))

    def test_fn_mask_pair(self):
        J1 = comp.fn_mask_map(FN.space, np.array([1.0, 0.0, 1.0]))
        J2 = comp.fn_mask_map(FN.space, np.array([0.0, 1.0, 0.0]))
        assert comp.are_complementary(J1, J2)

    def test_censym_same_map_twice(self):
        J = L2.map_for(sharp_focus(L2.space, np.array([1.0, 0.0])))
        assert not comp.are_complementary(J, J)


class TestSmooth:
    def test_jb_squeeze_neutral(self):
        assert comp.is_smooth(U_p_map(AElem(JB.space, np.diag([1.0, 0.0]))))

    def test_l3_focus_smooth(self):
        focus = sharp_focus(L3.space, np.array([0.3, 0.4]))
        assert comp.is_smooth(L3.map_for(focus))

    def test_stadium_flat_focus_not_smooth(self):
        space = STAD.space
        focus = sharp_focus(space, np.array([0.0, 1.0]))
        J = comp.cs_rank_one_map(space, focus, np.array([0.5, 1.0]))
        assert not comp.is_smooth(J)

    def test_compression_verdicts(self):
        assert comp.is_compression(U_p_map(AElem(JB.space, np.diag([1.0, 0.0]))))
        assert comp.is_compression(L2.map_for(sharp_focus(L2.space, np.array([2.0, 1.0]))))
        flat = STAD.map_for(sharp_focus(STAD.space, np.array([0.0, 1.0])))
        assert not comp.is_compression(flat)


class TestValidateBase:
    def test_fn_exhaustive(self):
        rep = comp.validate_base(FN.base, trials=500, seed=1)
        assert rep.ok
        counts = {c.check: c.trials for c in rep.cases}
        assert counts["composition_law"] >= 27

    def test_jb_eigenbasis(self):
        rep = comp.validate_base(build_jb(4).base, trials=400, seed=1)
        assert rep.ok

    def test_censym_atoms(self):
        rep = comp.validate_base(L2, trials=200, seed=1)
        assert rep.ok


class TestCompatibility:
    def test_jb_commuting(self):
        a = AElem(JB.space, np.diag([3.0, -2.0]))
        p = AElem(JB.space, np.diag([1.0, 0.0]))
        assert comp.in_C(a, p, JB.base)

    def test_jb_noncommuting(self):
        a = AElem(JB.space, np.array([[0.0, 1.0], [1.0, 0.0]]))
        p = AElem(JB.space, np.diag([1.0, 0.0]))
        assert not comp.in_C(a, p, JB.base)

    def test_fn_always(self):
        rng = np.random.default_rng(0)
        for _ in range(30):
            a = sp.random_element(FN.space, rng)
            mask = AElem(FN.space, (rng.uniform(size=3) < 0.5).astype(float))
            assert comp.in_C(a, mask, FN.base)

    def test_unknown_projection(self):
        with pytest.raises(UnknownProjection):
            comp.in_C(sp.unit(FN.space), AElem(FN.space, np.array([0.5, 0.0, 0.0])), FN.base)

    def test_projection_pairs(self):
        space = JB3.space
        p = AElem(space, np.diag([1.0, 0.0, 0.0]))
        q = AElem(space, np.diag([1.0, 1.0, 0.0]))
        ok, meet = comp.projections_compatible(p, q, JB3.base)
        assert ok and np.allclose(meet.data, np.diag([1.0, 0.0, 0.0]))

        r = AElem(JB.space, 0.5 * np.ones((2, 2)))
        ok, _ = comp.projections_compatible(AElem(JB.space, np.diag([1.0, 0.0])), r, JB.base)
        assert not ok
        # direct matrix-product oracle for the non-commuting verdict
        up = U_p_map(AElem(JB.space, np.diag([1.0, 0.0]))).matrix
        ur = U_p_map(r).matrix
        assert np.abs(up @ ur - ur @ up).max() > 0.1

    def test_fn_masks_meet(self):
        s = AElem(FN.space, np.array([1.0, 1.0, 0.0]))
        t = AElem(FN.space, np.array([0.0, 1.0, 1.0]))
        ok, meet = comp.projections_compatible(s, t, FN.base)
        assert ok and np.array_equal(meet.data, [0.0, 1.0, 0.0])


class TestProjectionFamilies:
    def test_fn_pc_all_masks(self):
        a = AElem(FN.space, np.array([2.0, 0.0, -1.0]))
        assert len(comp.pc_set(a, FN.base)) == 8
        assert len(comp.p_of(a, FN.base)) == 8

    def test_jb_nondegenerate_diagonal(self):
        a = AElem(JB.space, np.diag([1.0, 2.0]))
        members = comp.p_of(a, JB.base)
        assert len(members) == 4
        datas = sorted(m.data.tolist() for m in members)
        assert np.allclose(datas[0], np.zeros((2, 2)))

    def test_jb_degenerate_has_two_element_core(self):
        space = JB3.space
        a = AElem(space, np.diag([1.0, 1.0, 2.0]))
        members = comp.p_of(a, JB3.base)
        assert len(members) == 4
        scalar = AElem(space, 1.5 * np.eye(3))
        assert len(comp.p_of(scalar, JB3.base)) == 2

    def test_jb_splits_are_compatible_witnesses(self):
        space = JB3.space
        a = AElem(space, np.diag([1.0, 1.0, 2.0]))
        witnesses = comp.pc_set(a, JB3.base)
        assert len(witnesses) > 4  # eigenspace splits join the spectral sums
        for p in witnesses:
            assert comp.in_C(a, p, JB3.base)

    def test_censym_atom_family(self):
        a = cs_elem(L2, 0.0, (1.0, 0.0))
        members = comp.pc_set(a, L2)
        assert len(members) == 4
        atom = cs_elem(L2, 0.5, (0.5, 0.0))
        assert any(np.allclose(m.data, atom.data) for m in members)
        assert len(comp.p_of(a, L2)) == 4


class TestMapInvariants:
    @pytest.mark.parametrize("which", ["fn", "jb", "censym"])
    def test_norm_contraction(self, which):
        rng = np.random.default_rng(17)
        base = {"fn": FN.base, "jb": JB.base, "censym": L2}[which]
        space = base.space
        if which == "fn":
            focus = AElem(space, np.array([1.0, 0.0, 1.0]))
        elif which == "jb":
            focus = AElem(space, np.diag([1.0, 0.0]))
        else:
            focus = sharp_focus(space, np.array([1.0, 2.0]))
        J = base.map_for(focus)
        for _ in range(300):
            a = sp.random_element(space, rng)
            assert sp.order_unit_norm(J.apply(a)) <= sp.order_unit_norm(a) * (1 + 1e-9) + 1e-12

    def test_compression_passes_axioms(self):
        rng = np.random.default_rng(23)
        for _ in range(10):
            p = random_projection(JB3.space, rng)
            J = U_p_map(p)
            if comp.is_compression(J):
                verdict = comp.check_F_axioms(J, trials=30, seed=5)
                assert verdict.retraction and verdict.f_compression

    def test_smooth_focus_determines_map(self):
        # same focus, two construction routes, equal matrices
        focus = sharp_focus(L2.space, np.array([0.6, -0.8]))
        J1 = L2.map_for(focus)
        J2 = comp.cs_rank_one_map(L2.space, focus, fams.dual_face(L2.space.family, focus.y).representative())
        assert J1.distance(J2) <= 1e-9

    def test_squeeze_additivity_fn(self):
        rng = np.random.default_rng(29)
        space = FN.space
        for _ in range(50):
            a = sp.random_element(space, rng)
            labels = rng.integers(0, 3, size=3)
            parts = [AElem(space, (labels == k).astype(float)) for k in range(3)]
            total = parts[0] + parts[1] + parts[2]
            lhs = FN.base.map_for(total).apply(a)
            rhs = sum((FN.base.map_for(p).apply(a) for p in parts), sp.zero(space))
            assert sp.order_unit_norm(lhs - rhs) <= 1e-9

    def test_squeeze_additivity_jb_spectral(self):
        rng = np.random.default_rng(31)
        space = JB3.space
        for _ in range(30):
            a = sp.random_element(space, rng)
            members = comp.p_of(a, JB3.base)
            atoms = [m for m in members if 0.5 < np.trace(m.data) < space.n - 0.5]
            if len(atoms) < 2:
                continue
            p, q = atoms[0], atoms[1]
            if not sp.in_cone(sp.unit(space) - (p + q)) and not np.allclose((p + q).data, np.eye(3)):
                continue
            lhs = JB3.base.map_for(p + q).apply(a)
            rhs = JB3.base.map_for(p).apply(a) + JB3.base.map_for(q).apply(a)
            assert sp.order_unit_norm(lhs - rhs) <= 1e-9 * (1 + sp.order_unit_norm(a))

    def test_meets_and_joins_stay_compatible(self):
        rng = np.random.default_rng(37)
        space = JB3.space
        for _ in range(20):
            a = sp.random_element(space, rng)
            members = comp.p_of(a, JB3.base)
            for p in members[:4]:
                for q in members[:4]:
                    ok, meet = comp.projections_compatible(p, q, JB3.base)
                    assert ok
                    if meet is not None:
                        assert comp.in_C(a, meet, JB3.base)
