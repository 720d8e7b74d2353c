"""Order unit spaces in separating duality with base norm spaces.

Three concrete models share one element interface:

* ``fn``      functions on n points; cone = nonnegative coordinates.
* ``jb``      real symmetric n x n matrices; cone = positive semidefinite.
* ``censym``  pairs (a0, y) in R x X* over a norm family on X;
              cone = { ||y||* <= a0 }, dual to states (1, x) with x in the
              unit ball of X.

Elements of the primal space are ``AElem``; dual-side vectors (states and
their linear combinations) are ``VElem``.  The pairing is the coordinate dot
product in all three models (trace pairing for matrices).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import families as fams
from .errors import NotAnEffect, ShapeMismatch
from .symeig import jacobi_eigh
from .tolerances import DEFAULT_TOL, Tol

KIND_FN = "fn"
KIND_JB = "jb"
KIND_CENSYM = "censym"


@dataclass(frozen=True)
class ModelSpace:
    """A concrete finite-dimensional model, with its tolerances."""

    kind: str
    n: int
    dim: int
    tol: Tol
    family: Optional[fams.NormFamily] = None

    @property
    def label(self) -> str:
        if self.kind == KIND_CENSYM:
            return f"censym[{self.family.label}] n={self.n}"
        return f"{self.kind} n={self.n}"


def fn_space(n: int, tol: Tol = DEFAULT_TOL) -> ModelSpace:
    if n < 1:
        raise ValueError("fn model needs n >= 1")
    return ModelSpace(KIND_FN, n, n, tol)


def jb_space(n: int, tol: Tol = DEFAULT_TOL) -> ModelSpace:
    if n < 1:
        raise ValueError("jb model needs n >= 1")
    return ModelSpace(KIND_JB, n, n * (n + 1) // 2, tol)


def censym_space(family: fams.NormFamily, tol: Tol = DEFAULT_TOL) -> ModelSpace:
    return ModelSpace(KIND_CENSYM, family.n, family.n + 1, tol, family)


@dataclass(frozen=True, eq=False)
class AElem:
    """An element of the order unit space, tagged by its model.

    Payloads: shape (n,) for ``fn``; symmetric (n, n) for ``jb``; shape
    (n+1,) laid out as [a0, y...] for ``censym``.
    """

    space: ModelSpace
    data: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.data, dtype=float)
        kind, n, tol = self.space.kind, self.space.n, self.space.tol
        if kind == KIND_FN:
            if arr.shape != (n,):
                raise ShapeMismatch(f"fn payload must have shape ({n},), got {arr.shape}")
        elif kind == KIND_JB:
            if arr.shape != (n, n):
                raise ShapeMismatch(f"jb payload must have shape ({n},{n}), got {arr.shape}")
            skew = float(np.abs(arr - arr.T).max()) if n > 0 else 0.0
            if skew > tol.eq_tol * (1.0 + float(np.abs(arr).max(initial=0.0))):
                raise ShapeMismatch("jb payload is not symmetric")
            arr = 0.5 * (arr + arr.T)
        elif kind == KIND_CENSYM:
            if arr.shape != (n + 1,):
                raise ShapeMismatch(f"censym payload must have shape ({n + 1},), got {arr.shape}")
        else:
            raise ShapeMismatch(f"unknown model kind {kind!r}")
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    # censym accessors
    @property
    def a0(self) -> float:
        return float(self.data[0])

    @property
    def y(self) -> np.ndarray:
        return self.data[1:]

    def __add__(self, other):
        other = _coerce(self.space, other)
        return AElem(self.space, self.data + other.data)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(self.space, other)
        return AElem(self.space, self.data - other.data)

    def __rsub__(self, other):
        other = _coerce(self.space, other)
        return AElem(self.space, other.data - self.data)

    def __neg__(self):
        return AElem(self.space, -self.data)

    def __mul__(self, c: float):
        return AElem(self.space, float(c) * self.data)

    __rmul__ = __mul__


def _coerce(space: ModelSpace, value) -> AElem:
    if isinstance(value, AElem):
        if value.space is not space and value.space != space:
            raise ShapeMismatch("elements belong to different spaces")
        return value
    if np.isscalar(value):
        return float(value) * unit(space)
    raise ShapeMismatch(f"cannot combine AElem with {type(value).__name__}")


@dataclass(frozen=True, eq=False)
class VElem:
    """A dual-side vector (a state, or a linear combination of states)."""

    space: ModelSpace
    data: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.data, dtype=float)
        kind, n = self.space.kind, self.space.n
        expected = {KIND_FN: (n,), KIND_JB: (n, n), KIND_CENSYM: (n + 1,)}[kind]
        if arr.shape != expected:
            raise ShapeMismatch(f"dual payload must have shape {expected}, got {arr.shape}")
        if kind == KIND_JB:
            arr = 0.5 * (arr + arr.T)
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def alpha(self) -> float:
        return float(self.data[0])

    @property
    def x(self) -> np.ndarray:
        return self.data[1:]


def unit(space: ModelSpace) -> AElem:
    if space.kind == KIND_FN:
        return AElem(space, np.ones(space.n))
    if space.kind == KIND_JB:
        return AElem(space, np.eye(space.n))
    data = np.zeros(space.n + 1)
    data[0] = 1.0
    return AElem(space, data)


def zero(space: ModelSpace) -> AElem:
    if space.kind == KIND_JB:
        return AElem(space, np.zeros((space.n, space.n)))
    return AElem(space, np.zeros(space.dim))


# ---------------------------------------------------------------------------
# coordinates (used for the dense matrix representation of linear maps)


_TRIU_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}
_SYM_BASIS_CACHE: dict[int, np.ndarray] = {}


def _triu(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _TRIU_CACHE:
        _TRIU_CACHE[n] = np.triu_indices(n, 1)
    return _TRIU_CACHE[n]


def sym_to_vec(m: np.ndarray) -> np.ndarray:
    """Orthonormal coordinates of a symmetric matrix under the trace pairing."""
    n = m.shape[0]
    iu = _triu(n)
    return np.concatenate([np.diag(m), math.sqrt(2.0) * m[iu]])


def vec_to_sym(v: np.ndarray, n: int) -> np.ndarray:
    m = np.zeros((n, n))
    m[np.diag_indices(n)] = v[:n]
    iu = _triu(n)
    vals = v[n:] / math.sqrt(2.0)
    m[iu] = vals
    m[iu[1], iu[0]] = vals
    return m


def sym_basis(n: int) -> np.ndarray:
    """Stacked (dim, n, n) orthonormal basis of symmetric matrices."""
    if n not in _SYM_BASIS_CACHE:
        dim = n * (n + 1) // 2
        eye = np.eye(dim)
        _SYM_BASIS_CACHE[n] = np.stack([vec_to_sym(eye[:, j], n) for j in range(dim)])
    return _SYM_BASIS_CACHE[n]


def sym_to_vec_batch(ms: np.ndarray) -> np.ndarray:
    """Batched sym_to_vec for an (k, n, n) stack, returning (k, dim)."""
    n = ms.shape[-1]
    iu = _triu(n)
    diag = ms[:, np.arange(n), np.arange(n)]
    off = math.sqrt(2.0) * ms[:, iu[0], iu[1]]
    return np.concatenate([diag, off], axis=1)


def vec(a: AElem) -> np.ndarray:
    if a.space.kind == KIND_JB:
        return sym_to_vec(a.data)
    return np.array(a.data)


def elem_from_vec(space: ModelSpace, v: np.ndarray) -> AElem:
    if space.kind == KIND_JB:
        return AElem(space, vec_to_sym(np.asarray(v, float), space.n))
    return AElem(space, np.asarray(v, float))


def vec_v(v: VElem) -> np.ndarray:
    if v.space.kind == KIND_JB:
        return sym_to_vec(v.data)
    return np.array(v.data)


def velem_from_vec(space: ModelSpace, w: np.ndarray) -> VElem:
    if space.kind == KIND_JB:
        return VElem(space, vec_to_sym(np.asarray(w, float), space.n))
    return VElem(space, np.asarray(w, float))


# ---------------------------------------------------------------------------
# cone, norms, pairing


def _jb_eigvals(a: AElem) -> np.ndarray:
    return jacobi_eigh(a.data, max_sweeps=a.space.tol.max_sweeps)[0]


def in_cone(a: AElem) -> bool:
    """Membership of a in the positive cone, up to psd_tol slack."""
    tol = a.space.tol
    if a.space.kind == KIND_FN:
        return bool(a.data.min(initial=0.0) >= -tol.psd_tol) if a.space.n else True
    if a.space.kind == KIND_JB:
        w = _jb_eigvals(a)
        scale = float(np.abs(w).max(initial=0.0))
        return bool(w.min() >= -tol.psd_tol * (1.0 + scale))
    return fams.dual_norm(a.space.family, a.y) <= a.a0 + tol.psd_tol


def in_cone_v(v: VElem) -> bool:
    tol = v.space.tol
    if v.space.kind == KIND_FN:
        return bool(v.data.min(initial=0.0) >= -tol.psd_tol)
    if v.space.kind == KIND_JB:
        w = jacobi_eigh(v.data, max_sweeps=tol.max_sweeps)[0]
        scale = float(np.abs(w).max(initial=0.0))
        return bool(w.min() >= -tol.psd_tol * (1.0 + scale))
    return fams.primal_norm(v.space.family, v.x) <= v.alpha + tol.psd_tol


def order_unit_norm(a: AElem) -> float:
    """sup-norm / spectral radius / ||y||* + |a0|, by model."""
    if a.space.kind == KIND_FN:
        return float(np.abs(a.data).max(initial=0.0))
    if a.space.kind == KIND_JB:
        return float(np.abs(_jb_eigvals(a)).max(initial=0.0))
    return fams.dual_norm(a.space.family, a.y) + abs(a.a0)


def base_norm(v: VElem) -> float:
    """Dual norm on V: l1 / trace norm / max{|alpha|, ||x||}."""
    if v.space.kind == KIND_FN:
        return float(np.abs(v.data).sum())
    if v.space.kind == KIND_JB:
        return float(np.abs(jacobi_eigh(v.data, max_sweeps=v.space.tol.max_sweeps)[0]).sum())
    return max(abs(v.alpha), fams.primal_norm(v.space.family, v.x))


def pairing(a: AElem, v: VElem) -> float:
    if a.space != v.space:
        raise ShapeMismatch("pairing requires elements of the same space")
    return float(np.sum(a.data * v.data))


def leq(a: AElem, b: AElem) -> bool:
    """Order comparison a <= b via cone membership of b - a."""
    return in_cone(b - a)


def cone_deficit(a: AElem) -> float:
    """How far a sits outside the cone (0.0 for members): the most negative
    coordinate / eigenvalue, or the dual-norm excess over a0."""
    if a.space.kind == KIND_FN:
        return max(0.0, -float(a.data.min(initial=0.0)))
    if a.space.kind == KIND_JB:
        return max(0.0, -float(_jb_eigvals(a).min(initial=0.0)))
    return max(0.0, fams.dual_norm(a.space.family, a.y) - a.a0)


def close(a: AElem, b: AElem, tol: float | None = None) -> bool:
    if tol is None:
        tol = a.space.tol.eq_tol
    return order_unit_norm(a - b) <= tol * (1.0 + order_unit_norm(a))


# ---------------------------------------------------------------------------
# element classes


def is_effect(a: AElem) -> bool:
    return in_cone(a) and in_cone(unit(a.space) - a)


def _require_effect(e: AElem) -> None:
    if not is_effect(e):
        raise NotAnEffect("operation requires an element of [0, 1]")


def is_sharp(e: AElem) -> bool:
    """Exact per-model sharpness test (the 0/1-valued elements, projections,
    or the a0 = ||y||* = 1/2 points of the censym interval)."""
    _require_effect(e)
    tol = e.space.tol.eq_tol
    if e.space.kind == KIND_FN:
        return bool(np.all(np.minimum(np.abs(e.data), np.abs(e.data - 1.0)) <= tol))
    if e.space.kind == KIND_JB:
        w = _jb_eigvals(e)
        return bool(np.abs(w * w - w).max(initial=0.0) <= tol)
    if order_unit_norm(e) <= tol or order_unit_norm(unit(e.space) - e) <= tol:
        return True
    return (
        abs(e.a0 - 0.5) <= tol
        and abs(fams.dual_norm(e.space.family, e.y) - 0.5) <= tol
    )


def is_extremal(e: AElem, trials: int = 200, rng_seed: int = 1) -> bool:
    """Is e an extreme point of the effect interval?

    For fn/jb this coincides with sharpness (the interval is a box / the
    matrix effects); a randomized +/- perturbation search double-checks
    positives.  For censym the answer is exact via the family's extreme-point
    certificate for the dual ball.
    """
    _require_effect(e)
    space = e.space
    tol = space.tol.eq_tol
    if space.kind == KIND_CENSYM:
        if order_unit_norm(e) <= tol or order_unit_norm(unit(space) - e) <= tol:
            return True
        if abs(e.a0 - 0.5) > tol:
            return False
        if abs(fams.dual_norm(space.family, e.y) - 0.5) > tol:
            return False
        return fams.extreme_in_dual_ball(space.family, e.y, tol)

    if not is_sharp(e):
        return False
    rng = np.random.default_rng(rng_seed)
    for _ in range(trials):
        d = random_element(space, rng) * 1e-3
        if is_effect(e + d) and is_effect(e - d) and order_unit_norm(d) > tol:
            return False
    return True


def is_principal(e: AElem, trials: int = 200, rng_seed: int = 1) -> bool:
    """Facial-property falsifier: search for b in A+ with b <= lam*e (lam <= 10),
    b <= 1, but b not below e.  "True" means no counterexample was found.

    Sharp elements of fn/jb are principal exactly (shortcut); censym atoms are
    decided by the one-dimensionality certificate.
    """
    _require_effect(e)
    space = e.space
    tol = space.tol.eq_tol
    if order_unit_norm(e) <= tol:
        return True
    if space.kind in (KIND_FN, KIND_JB) and is_sharp(e):
        return True
    if space.kind == KIND_CENSYM:
        if order_unit_norm(unit(space) - e) <= tol:
            return True
        if is_sharp(e):
            return is_extremal(e)

    rng = np.random.default_rng(rng_seed)
    one = unit(space)
    for b in _principal_candidates(e, trials, rng):
        if in_cone(b) and leq(b, one) and _below_scaled(b, e, 10.0) and not leq(b, e):
            return False
    return True


def _below_scaled(b: AElem, e: AElem, lam_max: float) -> bool:
    for lam in (1.5, 2.0, 5.0, lam_max):
        if leq(b, lam * e):
            return True
    return False


def _principal_candidates(e: AElem, trials: int, rng: np.random.Generator):
    """Directed and random candidates b in [0, min(lam*e, 1)]."""
    space = e.space
    one = unit(space)
    if space.kind == KIND_FN:
        yield AElem(space, np.minimum(1.5 * e.data, 1.0))
        cap = np.minimum(2.0 * e.data, 1.0)
        for _ in range(trials):
            yield AElem(space, cap * rng.uniform(size=space.n))
    elif space.kind == KIND_JB:
        w, V = jacobi_eigh(e.data, max_sweeps=space.tol.max_sweeps)
        yield AElem(space, V @ np.diag(np.minimum(1.5 * w, 1.0)) @ V.T)
        root = V @ np.diag(np.sqrt(np.clip(np.minimum(2.0 * w, 1.0), 0.0, None))) @ V.T
        for _ in range(trials):
            g = random_effect(space, rng)
            yield AElem(space, root @ g.data @ root)
    else:
        nrm = order_unit_norm(e)
        if nrm < 1.0:
            yield min(0.999 / nrm, 2.0) * e
        for t in (0.05, 0.01):
            yield e + t * (one - e)
        for _ in range(trials):
            b = float(rng.uniform(0.0, 1.2)) * e + float(rng.uniform(0.0, 0.3)) * (one - e)
            yield b


# ---------------------------------------------------------------------------
# random generation (seeded by the caller)


def random_element(space: ModelSpace, rng: np.random.Generator) -> AElem:
    if space.kind == KIND_FN:
        return AElem(space, rng.standard_normal(space.n))
    if space.kind == KIND_JB:
        g = rng.standard_normal((space.n, space.n))
        return AElem(space, (g + g.T) / 2.0)
    return AElem(space, rng.standard_normal(space.n + 1))


def random_effect(space: ModelSpace, rng: np.random.Generator) -> AElem:
    if space.kind == KIND_FN:
        return AElem(space, rng.uniform(0.0, 1.0, space.n))
    if space.kind == KIND_JB:
        g = rng.standard_normal((space.n, space.n))
        w, V = jacobi_eigh((g + g.T) / 2.0, max_sweeps=space.tol.max_sweeps)
        return AElem(space, V @ np.diag(np.clip(w, 0.0, 1.0)) @ V.T)
    a0 = float(rng.uniform(0.0, 1.0))
    g = rng.standard_normal(space.n)
    gnorm = fams.dual_norm(space.family, g)
    radius = float(rng.uniform(0.0, 1.0)) * min(a0, 1.0 - a0)
    y = (radius / gnorm) * g if gnorm > 0 else np.zeros(space.n)
    return AElem(space, np.concatenate([[a0], y]))


def random_positive(space: ModelSpace, rng: np.random.Generator) -> AElem:
    if space.kind == KIND_FN:
        return AElem(space, rng.uniform(0.0, 1.0, space.n) * 2.0)
    if space.kind == KIND_JB:
        g = rng.standard_normal((space.n, space.n))
        return AElem(space, g @ g.T / space.n)
    a0 = float(rng.uniform(0.0, 2.0))
    g = rng.standard_normal(space.n)
    gnorm = fams.dual_norm(space.family, g)
    y = (float(rng.uniform(0.0, 1.0)) * a0 / gnorm) * g if gnorm > 0 else np.zeros(space.n)
    return AElem(space, np.concatenate([[a0], y]))


def random_state(space: ModelSpace, rng: np.random.Generator) -> VElem:
    if space.kind == KIND_FN:
        g = rng.exponential(size=space.n)
        return VElem(space, g / g.sum())
    if space.kind == KIND_JB:
        g = rng.standard_normal((space.n, space.n))
        s = g @ g.T
        return VElem(space, s / np.trace(s))
    g = rng.standard_normal(space.n)
    gnorm = fams.primal_norm(space.family, g)
    radius = float(rng.uniform(0.0, 1.0)) ** (1.0 / space.n)
    x = (radius / gnorm) * g if gnorm > 0 else np.zeros(space.n)
    return VElem(space, np.concatenate([[1.0], x]))


def random_unit_ball_v(space: ModelSpace, rng: np.random.Generator) -> VElem:
    """A dual vector of base norm <= 1 (mix of a state and a negated state)."""
    t = float(rng.uniform(0.0, 1.0))
    r1 = random_state(space, rng)
    r2 = random_state(space, rng)
    return VElem(space, t * r1.data - (1.0 - t) * r2.data)


def random_extreme_dual(space: ModelSpace, rng: np.random.Generator) -> VElem:
    """A random extreme point of the dual unit ball: a signed point mass,
    a signed rank-one state, or a signed boundary state."""
    sign = -1.0 if rng.uniform() < 0.5 else 1.0
    if space.kind == KIND_FN:
        e = np.zeros(space.n)
        e[int(rng.integers(0, space.n))] = sign
        return VElem(space, e)
    if space.kind == KIND_JB:
        v = rng.standard_normal(space.n)
        v /= np.linalg.norm(v)
        return VElem(space, sign * np.outer(v, v))
    g = rng.standard_normal(space.n)
    x = g / fams.primal_norm(space.family, g)
    return VElem(space, sign * np.concatenate([[1.0], x]))
