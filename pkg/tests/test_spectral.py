"""Sign decompositions, covers, annihilators, resolutions, reconstruction."""

import numpy as np
import pytest

from ouspectra import compressions as comp
from ouspectra import families as fams
from ouspectra import spaces as sp
from ouspectra import spectral as spec
from ouspectra.censym import build_spectral_base
from ouspectra.errors import ComparabilityUnavailable, NotAnEffect
from ouspectra.fnspace import build_fn
from ouspectra.jb import build_jb
from ouspectra.spaces import AElem

FN = build_fn(3)
JB = build_jb(2)
JB3 = build_jb(3)
L2 = build_spectral_base(fams.lp(2, 2))


def fn_elem(*coords):
    return AElem(FN.space, np.array(coords, float))


def cs_elem(a0, y, base=L2):
    return AElem(base.space, np.concatenate([[a0], np.asarray(y, float)]))


class TestSignSupport:
    def test_jb_diagonal(self):
        p = spec.p_pm(AElem(JB.space, np.diag([1.0, -1.0])), JB.base)
        assert np.allclose(p.data, np.diag([1.0, 0.0]))

    def test_fn_zero_goes_negative_side(self):
        p = spec.p_pm(fn_elem(2.0, 0.0, -1.0), FN.base)
        assert np.array_equal(p.data, [1.0, 0.0, 0.0])

    def test_censym_atom_formula(self):
        p = spec.p_pm(cs_elem(0.0, (1.0, 0.0)), L2)
        assert np.allclose(p.data, [0.5, 0.5, 0.0])

    def test_censym_strictly_positive_gives_unit(self):
        p = spec.p_pm(cs_elem(2.0, (0.5, 0.0)), L2)
        assert np.allclose(p.data, sp.unit(L2.space).data)

    def test_censym_atom_multiple_gives_atom(self):
        # boundary of the cone: leastness forces the atom, not the unit
        p = spec.p_pm(cs_elem(0.5, (0.5, 0.0)), L2)
        assert np.allclose(p.data, [0.5, 0.5, 0.0])

    def test_unavailable_family(self):
        bad = __import__("ouspectra.censym", fromlist=["build_censym"]).build_censym(fams.lp(1, 2))
        with pytest.raises(ComparabilityUnavailable):
            spec.p_pm(cs_elem(0.0, (1.0, 0.0), bad.base), bad.base)


class TestDecomposition:
    def test_jb_offdiagonal_matches_eigen_oracle(self):
        a = AElem(JB.space, np.array([[0.0, 1.0], [1.0, 0.0]]))
        pos, neg, mag = spec.orthogonal_decomposition(a, JB.base)
        w, v = np.linalg.eigh(a.data)
        oracle_pos = sum(max(l, 0.0) * np.outer(v[:, i], v[:, i]) for i, l in enumerate(w))
        oracle_neg = sum(max(-l, 0.0) * np.outer(v[:, i], v[:, i]) for i, l in enumerate(w))
        assert np.allclose(pos.data, oracle_pos) and np.allclose(oracle_pos, 0.5 * np.ones((2, 2)))
        assert np.allclose(neg.data, oracle_neg)
        assert np.allclose(mag.data, oracle_pos + oracle_neg)

    def test_fn_coordinates(self):
        pos, neg, _ = spec.orthogonal_decomposition(fn_elem(2.0, 0.0, -1.0), FN.base)
        assert np.array_equal(pos.data, [2.0, 0.0, 0.0])
        assert np.array_equal(neg.data, [0.0, 0.0, 1.0])

    def test_censym_two_sided(self):
        a = cs_elem(0.0, (1.0, 0.0))
        pos, neg, _ = spec.orthogonal_decomposition(a, L2)
        p = spec.p_pm(a, L2)
        assert np.allclose(pos.data, p.data * 1.0 * 2.0 * 0.5)  # 1 * p
        assert np.allclose((pos - neg).data, a.data)


class TestCover:
    def test_fn_support_mask(self):
        cover = spec.projection_cover(fn_elem(0.5, 0.0, 0.1), FN.base)
        assert np.array_equal(cover.data, [1.0, 0.0, 1.0])

    def test_jb_support_projection(self):
        cover = spec.projection_cover(AElem(JB.space, np.diag([0.5, 0.0])), JB.base)
        assert np.allclose(cover.data, np.diag([1.0, 0.0]))

    def test_censym_atom_multiple(self):
        cover = spec.projection_cover(cs_elem(0.25, (0.25, 0.0)), L2)
        assert np.allclose(cover.data, [0.5, 0.5, 0.0])

    def test_cover_requires_effect(self):
        with pytest.raises(NotAnEffect):
            spec.projection_cover(fn_elem(2.0, 0.0, 0.0), FN.base)

    def test_cover_minimality_fn(self):
        rng = np.random.default_rng(2)
        for _ in range(40):
            e = sp.random_effect(FN.space, rng)
            cover = spec.projection_cover(e, FN.base)
            for p in FN.base.projections:
                if sp.leq(e, p):
                    assert sp.leq(cover, p)


class TestAnnihilator:
    def test_fn_zero_mask(self):
        assert np.array_equal(spec.rickart_map(fn_elem(2.0, 0.0, -1.0), FN.base).data, [0.0, 1.0, 0.0])

    def test_jb_kernel_projection(self):
        a = AElem(JB3.space, np.diag([1.0, 0.0, -2.0]))
        assert np.allclose(spec.rickart_map(a, JB3.base).data, np.diag([0.0, 1.0, 0.0]))

    def test_zero_convention(self):
        assert np.array_equal(spec.rickart_map(sp.zero(FN.space), FN.base).data, np.ones(3))

    def test_defining_equivalence_on_masks(self):
        a = fn_elem(2.0, 0.0, -1.0)
        ann = spec.rickart_map(a, FN.base)
        for p in FN.base.projections:
            below = sp.leq(p, ann)
            kills = comp.in_C(a, p, FN.base) and sp.order_unit_norm(FN.base.map_for(p).apply(a)) <= 1e-12
            assert below == kills

    def test_antitone_and_cover_relation(self):
        rng = np.random.default_rng(8)
        for base in (FN.base, JB.base, L2):
            for _ in range(40):
                e = sp.random_effect(base.space, rng)
                ann = spec.rickart_map(e, base)
                cover = spec.projection_cover(e, base)
                assert sp.order_unit_norm((sp.unit(base.space) - ann) - cover) <= 1e-9
                b = e + sp.random_effect(base.space, rng)
                assert sp.leq(spec.rickart_map(b, base), ann)


class TestResolution:
    def test_fn_grid_point(self):
        sd = spec.spectral_resolution(fn_elem(2.0, 0.0, -1.0), FN.base, [-0.5])
        assert np.array_equal(sd.resolution[0][1].data, [0.0, 0.0, 1.0])

    def test_jb_midpoint(self):
        sd = spec.spectral_resolution(AElem(JB.space, np.diag([1.0, -1.0])), JB.base, [0.0])
        assert np.allclose(sd.resolution[0][1].data, np.diag([0.0, 1.0]))

    def test_saturates_at_upper_bound(self):
        for base, a in ((FN.base, fn_elem(2.0, 0.0, -1.0)), (L2, cs_elem(0.3, (0.5, 0.2)))):
            _, hi = spec.spectral_bounds(a, base)
            sd = spec.spectral_resolution(a, base, [hi + 1e-6])
            assert sp.order_unit_norm(sd.resolution[0][1] - sp.unit(base.space)) <= 1e-9

    def test_monotone_in_lambda(self):
        rng = np.random.default_rng(12)
        for base in (FN.base, JB3.base, L2):
            for _ in range(25):
                a = sp.random_element(base.space, rng)
                lo, hi = spec.spectral_bounds(a, base)
                sd = spec.spectral_resolution(a, base, list(np.linspace(lo - 0.2, hi + 0.2, 8)))
                for (_, p1), (_, p2) in zip(sd.resolution, sd.resolution[1:]):
                    assert sp.cone_deficit(p2 - p1) <= 1e-9

    def test_steps_compatible_with_projections(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            a = sp.random_element(FN.space, rng)
            lo, hi = spec.spectral_bounds(a, FN.base)
            sd = spec.spectral_resolution(a, FN.base, list(np.linspace(lo, hi, 5)))
            for p in FN.base.projections:  # exhaustive over the masks
                lhs = comp.in_C(a, p, FN.base)
                rhs = all(comp.in_C(step, p, FN.base) for _, step in sd.resolution)
                assert lhs == rhs

    def test_grid_must_ascend(self):
        with pytest.raises(ValueError):
            spec.spectral_resolution(fn_elem(1.0, 0.0, 0.0), FN.base, [1.0, 0.0])


class TestReconstruction:
    def test_jb_small_mesh_bound(self):
        a = AElem(JB.space, np.diag([0.7, -0.3]))
        _, err = spec.riemann_reconstruct(a, JB.base, 0.1)
        assert err <= 0.1

    def test_fn_fine_mesh(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            a = sp.random_element(FN.space, rng)
            _, err = spec.riemann_reconstruct(a, FN.base, 1e-3)
            assert err <= 1e-3

    def test_scalar_element(self):
        a = 0.37 * sp.unit(JB.space)
        approx, err = spec.riemann_reconstruct(a, JB.base, 0.05)
        assert err <= 0.05
        assert sp.order_unit_norm(approx - a) <= 0.05

    def test_simple_approximation_dyadic_errors(self):
        space = sp.fn_space(2)
        base = build_fn(2).base
        a = AElem(space, np.array([1.0, 0.0]))
        steps = spec.simple_approximation(a, base, 3)
        errs = [sp.order_unit_norm(a - ak) for ak in steps]
        assert errs == pytest.approx([1.0, 0.5, 0.25])
        prev = None
        for k, ak in enumerate(steps, start=1):
            assert sp.leq(ak, a)
            assert sp.order_unit_norm(a - ak) <= 2.0 * 2.0 ** (-k) + 1e-12
            if prev is not None:
                assert sp.leq(prev, ak)
            prev = ak

    def test_simple_approximation_projection_exact(self):
        p = AElem(JB.space, np.diag([1.0, 0.0]))
        steps = spec.simple_approximation(p, JB.base, 4)
        # once the dyadic step drops below one, left endpoints hit 0 and 1-eps
        assert sp.order_unit_norm(p - steps[-1]) <= 0.25

    def test_simple_approximation_zero(self):
        for ak in spec.simple_approximation(sp.zero(FN.space), FN.base, 3):
            assert sp.order_unit_norm(ak) <= 1e-12


class TestLattice:
    def test_jb_join_spans_ranges(self):
        p = AElem(JB.space, np.diag([1.0, 0.0]))
        q = AElem(JB.space, 0.5 * np.ones((2, 2)))
        join = spec.oml_join(p, q, JB.base)
        assert np.linalg.matrix_rank(p.data + q.data) == 2  # oracle: full span
        assert np.allclose(join.data, np.eye(2))

    def test_fn_union(self):
        s = AElem(FN.space, np.array([1.0, 0.0, 0.0]))
        t = AElem(FN.space, np.array([0.0, 1.0, 0.0]))
        assert np.array_equal(spec.oml_join(s, t, FN.base).data, [1.0, 1.0, 0.0])

    def test_idempotent(self):
        p = AElem(FN.space, np.array([1.0, 0.0, 1.0]))
        assert np.array_equal(spec.oml_join(p, p, FN.base).data, p.data)


class TestBlocks:
    def test_jb_diagonal_block(self):
        block = spec.c_block(AElem(JB.space, np.diag([1.0, 2.0])), JB.base)
        assert len(block.block) == 4
        assert len(block.span_basis) == 2
        for b in block.span_basis:
            assert abs(b.data[0, 1]) < 1e-9

    def test_fn_whole_space(self):
        block = spec.c_block(fn_elem(0.3, -0.2, 5.0), FN.base)
        assert len(block.block) == 8

    def test_censym_two_dimensional(self):
        block = spec.c_block(cs_elem(0.0, (1.0, 0.0)), L2)
        assert len(block.block) == 4
        assert len(block.span_basis) == 2


class TestGlobalInvariants:
    @pytest.mark.parametrize("which", ["fn", "jb", "censym"])
    def test_uniqueness_and_leastness(self, which):
        base = {"fn": FN.base, "jb": JB3.base, "censym": L2}[which]
        space = base.space
        rng = np.random.default_rng(41)
        for _ in range(60):
            a = sp.random_element(space, rng)
            if which == "fn":
                data = np.array(a.data)
                data[rng.integers(0, space.n)] = 0.0
                a = AElem(space, data)
            elif which == "jb":
                w, v = np.linalg.eigh(a.data)
                w[rng.integers(0, space.n)] = 0.0
                a = AElem(space, v @ np.diag(w) @ v.T)
            p = spec.p_pm(a, base)
            pos, _, _ = spec.orthogonal_decomposition(a, base)
            for q in _alternatives(a, base, p):
                jq = base.map_for(q)
                assert sp.order_unit_norm(jq.apply(a) - pos) <= 1e-9 * (1 + sp.order_unit_norm(a))
                assert sp.cone_deficit(q - p) <= 1e-7

    def test_gencomp_direction(self):
        rng = np.random.default_rng(43)
        for base in (JB.base, L2, build_spectral_base(fams.lp(1.5, 2))):
            for _ in range(60):
                a = sp.random_element(base.space, rng)
                jr = base.map_for(spec.p_pm(a, base))
                image = jr.apply(a)
                tol = 1e-9 * (1 + sp.order_unit_norm(a))
                assert sp.cone_deficit(image) <= tol
                assert sp.cone_deficit(image - a) <= tol

    def test_jb_resolution_matches_cumulative_eigenprojections(self):
        rng = np.random.default_rng(47)
        base = build_jb(4).base
        for _ in range(60):
            a = sp.random_element(base.space, rng)
            vals, vecs = np.linalg.eigh(a.data)
            grid = [vals[0] - 0.3] + [(vals[i] + vals[i + 1]) / 2 for i in range(3)] + [vals[-1] + 0.3]
            sd = spec.spectral_resolution(a, base, grid)
            for t, p in sd.resolution:
                cols = vecs[:, vals <= t]
                assert np.abs(p.data - cols @ cols.T).max() <= 1e-8


def _alternatives(a, base, p):
    space = base.space
    out = [p]
    if space.kind == sp.KIND_FN:
        zero_mask = (np.abs(a.data) <= 1e-9).astype(float)
        out.append(AElem(space, np.minimum(p.data + zero_mask, 1.0)))
    elif space.kind == sp.KIND_JB:
        w, v = np.linalg.eigh(a.data)
        cols = v[:, np.abs(w) <= 1e-9]
        if cols.shape[1]:
            out.append(AElem(space, p.data + np.outer(cols[:, 0], cols[:, 0])))
    else:
        if sp.in_cone(a):
            out.append(sp.unit(space))
    return out
