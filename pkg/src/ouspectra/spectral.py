"""Generic spectral machinery over a compression base.

Everything here is expressed through the base hooks (sign supports on a
shift grid, projection covers, bounds), so the same code drives all three
models.  The key objects:

* sign support p of a:      J_{1-p}(a) <= 0 <= J_p(a), least such projection;
* orthogonal decomposition: a = J_p(a) - (-J_{1-p}(a));
* projection cover e0:      least projection dominating an effect;
* annihilator a*:           1 - (|a| / ||a||)0, the largest projection whose
                            squeeze kills a;
* resolution p_{a,t}:       ((a - t)+)* for grid shifts t, ascending in t;
* step reconstruction:      midpoint-weighted sums of resolution increments,
                            with error at most the grid mesh.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import spaces as sp
from .compressions import CompressionBase
from .errors import ComparabilityUnavailable, NotAnEffect, ToolkitError
from .spaces import AElem


@dataclass(frozen=True)
class SpectralData:
    """Bundle of everything the spectral pipeline derives from one element."""

    a: AElem
    p_plus: AElem
    pos: AElem
    neg: AElem
    abs_part: AElem
    cover: AElem
    annihilator: AElem
    resolution: tuple[tuple[float, AElem], ...]
    bounds: tuple[float, float]


def _require_comparability(B: CompressionBase) -> None:
    if not B.comparability:
        raise ComparabilityUnavailable(
            f"base {B.label or B.space.label!r} does not support sign decompositions"
        )


def p_pm(a: AElem, B: CompressionBase) -> AElem:
    """The canonical sign support: least projection p with
    J_{1-p}(a) <= 0 <= J_p(a).  Zero spectrum is assigned to the negative
    side, so this is the support of the positive part."""
    _require_comparability(B)
    return B.support_one(a)


def orthogonal_decomposition(a: AElem, B: CompressionBase) -> tuple[AElem, AElem, AElem]:
    """a = pos - neg with pos, neg positive and separated by the sign support;
    returns (pos, neg, |a|)."""
    p = p_pm(a, B)
    jp = B.map_for(p)
    jq = B.map_for(sp.unit(B.space) - p)
    pos = jp.apply(a)
    neg = -1.0 * jq.apply(a)
    return pos, neg, pos + neg


def projection_cover(e: AElem, B: CompressionBase) -> AElem:
    """Least projection of the base dominating the effect e."""
    if not sp.is_effect(e):
        raise NotAnEffect("projection covers are defined for effects")
    return B.cover_fn(e)


def rickart_map(a: AElem, B: CompressionBase) -> AElem:
    """The largest projection p with a compatible with p and J_p(a) = 0,
    computed as 1 - cover(|a| / ||a||).  By convention the annihilator of 0
    is 1."""
    _require_comparability(B)
    norm = sp.order_unit_norm(a)
    if norm <= B.space.tol.eq_tol:
        return sp.unit(B.space)
    _, _, magnitude = orthogonal_decomposition(a, B)
    return sp.unit(B.space) - B.cover_fn((1.0 / norm) * magnitude)


def spectral_bounds(a: AElem, B: CompressionBase) -> tuple[float, float]:
    """(L, U) with L = sup{t : t <= a} and U = inf{t : a <= t}."""
    return B.bounds_fn(a)


def spectral_resolution(a: AElem, B: CompressionBase, grid: list[float]) -> SpectralData:
    """Resolution p_{a,t} = ((a - t)+)* over an ascending finite grid,
    bundled with the decomposition, cover and annihilator of a."""
    _require_comparability(B)
    grid_arr = np.asarray(list(grid), float)
    if grid_arr.ndim != 1 or len(grid_arr) == 0:
        raise ValueError("grid must be a nonempty ascending sequence")
    if np.any(np.diff(grid_arr) < 0):
        raise ValueError("grid must be ascending")

    one = sp.unit(B.space)
    supports = B.support_family(a, grid_arr)
    resolution = tuple(
        (float(t), one - q) for t, q in zip(grid_arr, supports)
    )
    pos, neg, magnitude = orthogonal_decomposition(a, B)
    norm = sp.order_unit_norm(a)
    if norm <= B.space.tol.eq_tol:
        cover = sp.zero(B.space)
    else:
        cover = B.cover_fn((1.0 / norm) * magnitude)
    return SpectralData(
        a=a,
        p_plus=B.support_one(a),
        pos=pos,
        neg=neg,
        abs_part=magnitude,
        cover=cover,
        annihilator=one - cover,
        resolution=resolution,
        bounds=B.bounds_fn(a),
    )


def riemann_reconstruct(a: AElem, B: CompressionBase, mesh: float) -> tuple[AElem, float]:
    """Step-function reconstruction of a from its sign supports on a grid of
    the given mesh over [-||a||, ||a||], midpoint weights.  The returned
    error ||a - approx|| is at most the mesh."""
    if mesh <= 0:
        raise ValueError("mesh must be positive")
    _require_comparability(B)
    norm = sp.order_unit_norm(a)
    if norm <= B.space.tol.eq_tol:
        return sp.zero(B.space), norm
    steps = max(1, math.ceil(2.0 * norm / mesh))
    lambdas = np.linspace(-norm, norm, steps + 1)
    q_stack = _support_stack(a, B, lambdas)
    weights = 0.5 * (lambdas[:-1] + lambdas[1:])
    increments = q_stack[:-1] - q_stack[1:]
    approx_payload = np.tensordot(weights, increments, axes=(0, 0))
    approx = AElem(B.space, approx_payload)
    return approx, sp.order_unit_norm(a - approx)


def simple_approximation(a: AElem, B: CompressionBase, levels: int) -> list[AElem]:
    """Ascending step approximations from nested dyadic grids with left
    endpoint weights: a_1 <= a_2 <= ... <= a and
    ||a - a_k|| <= 2 ||a|| 2^{-k}."""
    if levels < 1:
        raise ValueError("levels must be >= 1")
    _require_comparability(B)
    norm = sp.order_unit_norm(a)
    if norm <= B.space.tol.eq_tol:
        return [sp.zero(B.space) for _ in range(levels)]
    out = []
    for k in range(1, levels + 1):
        m = 2**k
        lambdas = np.linspace(-norm, norm, m + 1)
        q_stack = _support_stack(a, B, lambdas)
        weights = lambdas[:-1]
        increments = q_stack[:-1] - q_stack[1:]
        out.append(AElem(B.space, np.tensordot(weights, increments, axes=(0, 0))))
    return out


def _support_stack(a: AElem, B: CompressionBase, lambdas: np.ndarray) -> np.ndarray:
    """Stacked descending supports with the endpoints pinned to 1 and 0.

    The bottom grid point sits at -||a||, where the full unit is a valid
    member of the sign-support family even when the canonical support is
    smaller; pinning it makes the increments telescope to the unit."""
    interior = B.support_grid(a, lambdas[1:-1]) if len(lambdas) > 2 else np.empty((0,) + sp.unit(B.space).data.shape)
    one = sp.unit(B.space).data
    zero_payload = sp.zero(B.space).data
    return np.concatenate([one[None, ...], interior, zero_payload[None, ...]], axis=0)


def oml_join(p: AElem, q: AElem, B: CompressionBase) -> AElem:
    """Join of two projections as the cover of their average; the result is
    checked to be independent of the mixing weight and to dominate both.

    Domination is tested with an absolute slack: two independently computed
    projections onto the same subspace agree only to roughly 100x the
    eigensolver target, and a genuine join failure is macroscopic."""
    tol = B.space.tol.eq_tol
    r = B.cover_fn(0.5 * (p + q))
    for lam in (0.25, 0.75):
        r_lam = B.cover_fn(lam * p + (1.0 - lam) * q)
        if sp.order_unit_norm(r - r_lam) > tol:
            raise ToolkitError("join is not independent of the mixing weight")
    slack = 1e-7
    if sp.cone_deficit(r - p) > slack or sp.cone_deficit(r - q) > slack:
        raise ToolkitError("join does not dominate its arguments")
    return r


def oml_meet(p: AElem, q: AElem, B: CompressionBase) -> AElem:
    one = sp.unit(B.space)
    return one - oml_join(one - p, one - q, B)


@dataclass(frozen=True)
class CBlock:
    """A maximal commutative piece of the model containing a given element:
    a finite Boolean block of projections and a basis of its closed span."""

    block: tuple[AElem, ...]
    span_basis: tuple[AElem, ...]
    note: str


def c_block(a: AElem, B: CompressionBase) -> CBlock:
    """The commutative block generated by a, by model: the whole space for
    functions, the diagonal algebra of an eigenbasis for matrices, and
    span{1, p} for the censym model."""
    _require_comparability(B)
    space = B.space
    if space.kind == sp.KIND_FN:
        from .compressions import _boolean_algebra  # local: avoids a public re-export

        singletons = [np.eye(space.n)[i] for i in range(space.n)]
        block = [AElem(space, m) for m in _boolean_algebra(singletons, space.n)]
        basis = [sp.elem_from_vec(space, np.eye(space.n)[:, j]) for j in range(space.n)]
        return CBlock(tuple(block), tuple(basis), "whole space: every mask is compatible")
    if space.kind == sp.KIND_JB:
        from .compressions import _boolean_matrix_algebra
        from .symeig import jacobi_eigh

        _, V = jacobi_eigh(a.data, max_sweeps=space.tol.max_sweeps)
        atoms = [np.outer(V[:, i], V[:, i]) for i in range(space.n)]
        block = [AElem(space, m) for m in _boolean_matrix_algebra(atoms, space.n)]
        basis = [AElem(space, m) for m in atoms]
        return CBlock(tuple(block), tuple(basis), "diagonal algebra of an eigenbasis of a")
    one = sp.unit(space)
    p = B.support_one(a)
    if sp.order_unit_norm(p) <= space.tol.eq_tol or sp.order_unit_norm(one - p) <= space.tol.eq_tol:
        return CBlock((sp.zero(space), one), (one,), "scalar element: central block")
    return CBlock(
        (sp.zero(space), p, one - p, one),
        (one, p),
        "two-dimensional block spanned by the unit and the sign support",
    )
