"""Real symmetric matrices as a Jordan algebra: products, squeezes, Peirce
splitting, carriers, orthogonality, and the annihilator consistency check.

The eigensolver is the cyclic-rotation kernel from ``symeig``; eigenvalue
clusters are decided by the relative gap ``eig_cut`` so supports and carriers
are reproducible under noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import compressions as comp
from . import spaces as sp
from .errors import NotAProjection, NotPositive, SizeLimit, ToolkitError
from .report import CaseResult, Report, make_report
from .spaces import AElem, ModelSpace
from .symeig import jacobi_eigh
from .tolerances import DEFAULT_TOL, Tol

MAX_SIZE = 12


@dataclass(frozen=True)
class JBModel:
    space: ModelSpace
    base: comp.CompressionBase


def build_jb(n: int, tol: Tol = DEFAULT_TOL, seed: int = 1) -> JBModel:
    if not (1 <= n <= MAX_SIZE):
        raise SizeLimit(f"jb model supports 1 <= n <= {MAX_SIZE}, got {n}")
    space = sp.jb_space(n, tol)
    witnesses = _diagonal_projections(space, budget=64, seed=seed)
    base = comp.CompressionBase(
        space=space,
        projections=witnesses,
        exhaustive=False,
        comparability=True,
        make_map=lambda p: U_p_map(p),
        support_one=lambda a: _support(a, 0.0),
        support_grid=_support_grid,
        cover_fn=carrier,
        bounds_fn=lambda a: _bounds(a),
        contains_fn=lambda p: _is_projection(p),
        label=f"jb-squeezes n={n}",
    )
    return JBModel(space, base)


def _diagonal_projections(space: ModelSpace, budget: int, seed: int) -> list[AElem]:
    n = space.n
    if 2**n <= budget:
        patterns = range(2**n)
    else:
        rng = np.random.default_rng(seed)
        chosen = {0, 2**n - 1}
        while len(chosen) < budget:
            chosen.add(int(rng.integers(0, 2**n)))
        patterns = sorted(chosen)
    out = []
    for bits in patterns:
        d = np.array([(bits >> i) & 1 for i in range(n)], float)
        out.append(AElem(space, np.diag(d)))
    return out


# ---------------------------------------------------------------------------
# algebra operations


def jordan_product(a: AElem, b: AElem) -> AElem:
    ab = a.data @ b.data
    return AElem(a.space, 0.5 * (ab + ab.T))


def triple_product(a: AElem, b: AElem, c: AElem) -> AElem:
    """{abc} = (a.b).c + (c.b).a - (a.c).b."""
    return (
        jordan_product(jordan_product(a, b), c)
        + jordan_product(jordan_product(c, b), a)
        - jordan_product(jordan_product(a, c), b)
    )


def _is_projection(p: AElem) -> bool:
    # Frobenius dominates the spectral radius, so this is a (conservative)
    # idempotence test without an eigendecomposition
    resid = p.data @ p.data - p.data
    return float(np.sqrt(np.sum(resid * resid))) <= p.space.tol.eq_tol


def U_p_map(p: AElem) -> comp.CompMap:
    """The squeeze a -> {pap} for a projection p (equals p a p here)."""
    if not _is_projection(p):
        raise NotAProjection("U_p requires an idempotent focus")
    return comp.jb_squeeze_map(p.space, p)


def operator_commute(a: AElem, p: AElem) -> bool:
    """Compatibility test (U_p + U_{1-p})(a) = a, cross-checked against the
    multiplication form T_p a = U_p a (their residuals agree up to a factor
    of two identically)."""
    if not _is_projection(p):
        raise NotAProjection("operator_commute requires a projection")
    space = a.space
    tol = space.tol.eq_tol
    one = sp.unit(space)
    up = U_p_map(p)
    uq = U_p_map(one - p)
    resid_iii = a - up.apply(a) - uq.apply(a)
    resid_ii = jordan_product(p, a) - up.apply(a)
    if sp.order_unit_norm(resid_iii - 2.0 * resid_ii) > 1e-6 * (1.0 + sp.order_unit_norm(a)):
        raise ToolkitError("squeeze and multiplication residuals disagree")
    return sp.order_unit_norm(resid_iii) <= tol * (1.0 + sp.order_unit_norm(a))


def peirce_decompose(a: AElem, p: AElem) -> tuple[AElem, AElem, AElem]:
    """Split a into the 1, 1/2 and 0 eigenspaces of multiplication by p."""
    if not _is_projection(p):
        raise NotAProjection("Peirce decomposition requires a projection")
    space = a.space
    one = sp.unit(space)
    a1 = U_p_map(p).apply(a)
    a3 = U_p_map(one - p).apply(a)
    a2 = a - a1 - a3
    tol = space.tol.eq_tol * (1.0 + sp.order_unit_norm(a))
    checks = (
        sp.order_unit_norm(jordan_product(p, a1) - a1),
        sp.order_unit_norm(jordan_product(p, a2) - 0.5 * a2),
        sp.order_unit_norm(jordan_product(p, a3)),
    )
    if max(checks) > 10.0 * tol:
        raise ToolkitError("Peirce relations violated beyond tolerance")
    return a1, a2, a3


def carrier(a: AElem) -> AElem:
    """Support projection: smallest projection p with p o a = a.  Eigenvalues
    within eig_cut * ||a|| of zero do not count as support; carrier(0) = 0."""
    space = a.space
    w, V = jacobi_eigh(a.data, max_sweeps=space.tol.max_sweeps)
    scale = float(np.abs(w).max(initial=0.0))
    keep = np.abs(w) > space.tol.eig_cut * scale if scale > 0 else np.zeros_like(w, bool)
    cols = V[:, keep]
    return AElem(space, cols @ cols.T)


def _support(a: AElem, shift: float) -> AElem:
    """Support of the positive part of a - shift."""
    space = a.space
    w, V = jacobi_eigh(a.data, max_sweeps=space.tol.max_sweeps)
    shifted = w - shift
    scale = float(np.abs(shifted).max(initial=0.0))
    keep = shifted > space.tol.eig_cut * scale
    cols = V[:, keep]
    return AElem(space, cols @ cols.T)


def _support_grid(a: AElem, shifts: np.ndarray) -> np.ndarray:
    """Stacked supports of (a - shift)+ over the grid, from one decomposition."""
    space = a.space
    if len(shifts) == 0:
        return np.empty((0, space.n, space.n))
    w, V = jacobi_eigh(a.data, max_sweeps=space.tol.max_sweeps)
    shifted = w[None, :] - shifts[:, None]                       # (k, n)
    scale = np.abs(shifted).max(axis=1, keepdims=True)
    keep = (shifted > space.tol.eig_cut * scale).astype(float)
    return np.einsum("ai,ki,bi->kab", V, keep, V)


def _bounds(a: AElem) -> tuple[float, float]:
    w = jacobi_eigh(a.data, max_sweeps=a.space.tol.max_sweeps)[0]
    return float(w[0]), float(w[-1])


def jb_orthogonal(a: AElem, b: AElem) -> bool:
    """Orthogonality {aba} = {bab} = 0 of two positive elements,
    cross-checked against the carrier form {s(a) b s(a)} = 0."""
    if not (sp.in_cone(a) and sp.in_cone(b)):
        raise NotPositive("orthogonality is defined for positive elements")
    space = a.space
    scale = (1.0 + sp.order_unit_norm(a)) ** 2 * (1.0 + sp.order_unit_norm(b))
    tol = space.tol.eq_tol * scale
    direct = (
        sp.order_unit_norm(triple_product(a, b, a)) <= tol
        and sp.order_unit_norm(triple_product(b, a, b)) <= tol
    )
    s = carrier(a)
    via_carrier = sp.order_unit_norm(triple_product(s, b, s)) <= 100.0 * space.tol.eq_tol * (
        1.0 + sp.order_unit_norm(b)
    )
    if direct != via_carrier:
        raise ToolkitError("triple-product and carrier orthogonality tests disagree")
    return direct


def eig(a: AElem) -> tuple[np.ndarray, np.ndarray]:
    """Rotation eigensolver bound to the model tolerances: ascending
    eigenvalues and orthonormal eigenvector columns."""
    return jacobi_eigh(a.data, max_sweeps=a.space.tol.max_sweeps)


def random_projection(space: ModelSpace, rng: np.random.Generator, rank: int | None = None) -> AElem:
    n = space.n
    if rank is None:
        rank = int(rng.integers(0, n + 1))
    g = rng.standard_normal((n, n))
    q, _ = np.linalg.qr(g)
    cols = q[:, :rank]
    return AElem(space, cols @ cols.T)


def rickart_A1_check(x: AElem, trials: int = 200, seed: int = 1) -> Report:
    """Annihilator consistency for a positive x: with p = 1 - carrier(x),
    the squeeze-kill condition U_a(x) = 0 must coincide with membership of a
    in the range of U_p (fixed-point test).  Kernel-directed samples drive
    the forward direction; random elements the converse."""
    if not sp.in_cone(x):
        raise NotPositive("the annihilator check needs a positive element")
    space = x.space
    rng = np.random.default_rng(seed)
    tol = space.tol.eq_tol
    one = sp.unit(space)
    p = one - carrier(x)
    up = U_p_map(p)
    cases = []

    # forward: elements of the range of U_p kill x
    witness = None
    for _ in range(trials):
        a = up.apply(sp.random_element(space, rng))
        uax = triple_product(a, x, a)
        if sp.order_unit_norm(uax) > tol * (1.0 + sp.order_unit_norm(a)) ** 2 * (
            1.0 + sp.order_unit_norm(x)
        ):
            witness = {"a": a.data.tolist(), "residual": sp.order_unit_norm(uax)}
            break
    cases.append(CaseResult("range_kills_x", witness is None, witness, trials, seed))

    # converse: samples with U_a(x) = 0 are fixed by U_p
    witness = None
    for _ in range(trials):
        a = sp.random_element(space, rng)
        uax = triple_product(a, x, a)
        killed = sp.order_unit_norm(uax) <= tol * (1.0 + sp.order_unit_norm(a)) ** 2 * (
            1.0 + sp.order_unit_norm(x)
        )
        fixed = sp.order_unit_norm(up.apply(a) - a) <= math.sqrt(tol) * (1.0 + sp.order_unit_norm(a))
        if killed and not fixed:
            witness = {"a": a.data.tolist()}
            break
        if fixed and not killed:
            witness = {"a": a.data.tolist(), "direction": "fixed_but_not_killed"}
            break
    cases.append(CaseResult("kill_means_range", witness is None, witness, trials, seed))

    env = {"model": space.label, "x": x.data.tolist(), "tolerances": space.tol.as_dict()}
    return make_report("rickart_A1", cases, env)
