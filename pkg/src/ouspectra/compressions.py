"""Positive idempotent maps with a focus, their axioms, and compression bases.

A ``CompMap`` couples a closed-form action (coordinate mask, two-sided
projection squeeze, or rank-one state evaluation) with a dense matrix
representation on the coordinates of A, so idempotence, composition laws and
kernel computations are plain linear algebra regardless of the model.

Axiom checks are falsifiers: a ``True`` verdict means no counterexample was
found within the sampled budget, and failures always carry a witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from . import families as fams
from . import spaces as sp
from .errors import (
    NoComplementAvailable,
    NotEnumerable,
    NotFCompression,
    ShapeMismatch,
    UnknownProjection,
)
from .report import CaseResult, Report, make_report
from .spaces import AElem, ModelSpace, VElem
from .symeig import jacobi_eigh

ACTION_FN_MULT = "fn_mult"
ACTION_JB_UP = "jb_up"
ACTION_CS_RANK1 = "cs_rank1"
ACTION_CS_IDENTITY = "cs_identity"


@dataclass(eq=False)
class CompMap:
    """A positive linear map J on A with focus J(1), closed-form action and a
    dense matrix on the coordinates of A."""

    space: ModelSpace
    focus: AElem
    action: tuple
    matrix: np.ndarray

    def __post_init__(self) -> None:
        tol = self.space.tol.eq_tol
        m = self.matrix
        if m.shape != (self.space.dim, self.space.dim):
            raise ShapeMismatch("map matrix has wrong dimensions")
        if float(np.linalg.norm(m @ m - m)) > tol * (1.0 + float(np.linalg.norm(m))):
            raise NotFCompression("map matrix is not idempotent")
        if sp.order_unit_norm(self.apply(sp.unit(self.space)) - self.focus) > tol:
            raise NotFCompression("J(1) does not match the declared focus")

    def apply(self, a: AElem) -> AElem:
        kind = self.action[0]
        if kind == ACTION_FN_MULT:
            return AElem(self.space, a.data * self.action[1])
        if kind == ACTION_JB_UP:
            p = self.action[1]
            out = p @ a.data @ p
            return AElem(self.space, 0.5 * (out + out.T))
        if kind == ACTION_CS_IDENTITY:
            return a
        p_data, x = self.action[1]
        coef = a.a0 + float(np.dot(x, a.y))
        return AElem(self.space, coef * p_data)

    def apply_dual(self, v: VElem) -> VElem:
        return sp.velem_from_vec(self.space, self.matrix.T @ sp.vec_v(v))

    def distance(self, other: "CompMap") -> float:
        return float(np.linalg.norm(self.matrix - other.matrix))


def _matrix_of(space: ModelSpace, apply_fn: Callable[[AElem], AElem]) -> np.ndarray:
    basis = np.eye(space.dim)
    cols = [sp.vec(apply_fn(sp.elem_from_vec(space, basis[:, j]))) for j in range(space.dim)]
    return np.column_stack(cols)


def fn_mask_map(space: ModelSpace, mask: np.ndarray) -> CompMap:
    mask = np.asarray(mask, float)
    focus = AElem(space, mask)
    return CompMap(space, focus, (ACTION_FN_MULT, mask), np.diag(mask))


def jb_squeeze_map(space: ModelSpace, p: AElem) -> CompMap:
    pm = p.data
    basis = sp.sym_basis(space.n)
    squeezed = np.einsum("ij,kjl,lm->kim", pm, basis, pm)
    matrix = sp.sym_to_vec_batch(squeezed).T
    return CompMap(space, p, (ACTION_JB_UP, pm), matrix)


def cs_rank_one_map(space: ModelSpace, p: AElem, x: np.ndarray) -> CompMap:
    x = np.asarray(x, float)
    # J(a) = (a0 + <x, w>) p  has matrix  p_vec (1, x)^T
    m = np.outer(p.data, np.concatenate([[1.0], x]))
    return CompMap(space, p, (ACTION_CS_RANK1, (np.array(p.data), x)), m)


def cs_identity_map(space: ModelSpace) -> CompMap:
    return CompMap(space, sp.unit(space), (ACTION_CS_IDENTITY,), np.eye(space.dim))


def cs_zero_map(space: ModelSpace) -> CompMap:
    zero = sp.zero(space)
    return cs_rank_one_map(space, zero, np.zeros(space.n))


def complement_map(J: CompMap) -> CompMap:
    """The complementary map with focus 1 - p, built per model."""
    space = J.space
    kind = J.action[0]
    if kind == ACTION_FN_MULT:
        return fn_mask_map(space, 1.0 - J.action[1])
    if kind == ACTION_JB_UP:
        q = AElem(space, np.eye(space.n) - J.action[1])
        return jb_squeeze_map(space, q)
    if kind == ACTION_CS_IDENTITY:
        return cs_zero_map(space)
    if kind == ACTION_CS_RANK1:
        tol = space.tol.eq_tol
        if sp.order_unit_norm(J.focus) <= tol:
            return cs_identity_map(space)
        if sp.order_unit_norm(sp.unit(space) - J.focus) <= tol:
            return cs_zero_map(space)
        p_data, x = J.action[1]
        comp = sp.unit(space) - AElem(space, p_data)
        return cs_rank_one_map(space, comp, -x)
    raise NoComplementAvailable(f"no complement construction for action {kind!r}")


# ---------------------------------------------------------------------------
# axiom checks


@dataclass(frozen=True)
class AxiomVerdict:
    retraction: bool
    f_compression: bool
    witnesses: tuple = ()


def _sub_focus_effect(J: CompMap, e: AElem, rng: np.random.Generator) -> AElem:
    """An element of [0, p] derived from the sample e, by model."""
    space = J.space
    if space.kind == sp.KIND_FN:
        return AElem(space, np.minimum(e.data, J.focus.data))
    if space.kind == sp.KIND_JB:
        p = J.focus.data
        out = p @ e.data @ p
        return AElem(space, 0.5 * (out + out.T))
    return float(rng.uniform(0.0, 1.0)) * J.focus


def _effect_ray_sup(elem: AElem) -> float:
    """sup{ t >= 0 : t * elem is an effect }, closed-form per model.

    Zero when the ray leaves the cone immediately (mixed-sign payload)."""
    space = elem.space
    tol = space.tol.eq_tol
    if space.kind == sp.KIND_FN:
        v = elem.data
        if float(v.min(initial=0.0)) < -tol:
            return 0.0
        top = float(v.max(initial=0.0))
        return 1.0 / top if top > tol else 0.0
    if space.kind == sp.KIND_JB:
        w = jacobi_eigh(elem.data, max_sweeps=space.tol.max_sweeps)[0]
        if float(w[0]) < -tol:
            return 0.0
        return 1.0 / float(w[-1]) if float(w[-1]) > tol else 0.0
    wnorm = fams.dual_norm(space.family, elem.y)
    if elem.a0 <= tol or wnorm > elem.a0 + tol:
        return 0.0
    return 1.0 / (elem.a0 + wnorm)


def kernel_effects(J: CompMap, trials: int, rng: np.random.Generator) -> list[AElem]:
    """Effects in the kernel of J, found by scaling kernel-space samples into
    the unit interval (the kernel is a linear subspace containing 0)."""
    space = J.space
    tol = space.tol.eq_tol
    _, svals, vt = np.linalg.svd(J.matrix)
    basis = vt[svals <= tol * max(1.0, float(svals[0] if len(svals) else 0.0))]
    if basis.size == 0:
        return []
    out: list[AElem] = []
    candidates: list[np.ndarray] = [row for row in basis] + [-row for row in basis]
    for _ in range(min(trials, 40)):
        candidates.append(basis.T @ rng.standard_normal(len(basis)))
    for z in candidates:
        zn = float(np.linalg.norm(z))
        if zn <= tol:
            continue
        elem = sp.elem_from_vec(space, z / zn)
        t_sup = _effect_ray_sup(elem)
        if t_sup <= 1e-7:
            continue
        out.append(t_sup * elem)
        out.append((0.5 * t_sup) * elem)
    return out


def check_F_axioms(J: CompMap, trials: int = 200, seed: int = 1) -> AxiomVerdict:
    """Validate the retraction axioms and the kernel axiom on J.

    Retraction: the focus is an effect and J fixes sampled elements of
    [0, p].  The kernel axiom additionally demands that every effect killed
    by J sits below 1 - p; candidates come from an explicit null-space basis
    of the matrix, scaled into the effect interval.
    """
    space = J.space
    rng = np.random.default_rng(seed)
    tol = space.tol.eq_tol
    witnesses = []

    retraction = sp.is_effect(J.focus)
    if not retraction:
        witnesses.append({"axiom": "F1", "focus_norm": sp.order_unit_norm(J.focus)})
    else:
        for _ in range(trials):
            e = sp.random_effect(space, rng)
            sub = _sub_focus_effect(J, e, rng)
            if sp.order_unit_norm(J.apply(sub) - sub) > tol * (1.0 + sp.order_unit_norm(sub)):
                retraction = False
                witnesses.append({"axiom": "F2", "element": sub.data.tolist()})
                break

    # a kernel effect must sit below 1 - p; deficits at rounding scale are
    # not violations, real ones in these models are macroscopic
    f_compression = retraction
    if retraction:
        comp_focus = sp.unit(space) - J.focus
        for e in kernel_effects(J, trials, rng):
            if sp.order_unit_norm(J.apply(e)) > math.sqrt(tol):
                continue  # numerically drifted out of the kernel
            deficit = sp.cone_deficit(comp_focus - e)
            if deficit > 1e-6:
                f_compression = False
                witnesses.append(
                    {"axiom": "F3", "element": e.data.tolist(), "deficit": deficit}
                )
                break
    return AxiomVerdict(retraction, f_compression, tuple(witnesses))


def _quick_guard(J: CompMap) -> None:
    if not sp.is_effect(J.focus):
        raise NotFCompression("focus is not an effect")


def are_complementary(J: CompMap, J2: CompMap, trials: int = 50, seed: int = 1) -> bool:
    """Foci must sum to the unit; kernel/image faces are cross-checked on
    sampled cone elements."""
    if J.space != J2.space:
        raise ShapeMismatch("maps act on different spaces")
    _quick_guard(J)
    _quick_guard(J2)
    space = J.space
    tol = space.tol.eq_tol
    if sp.order_unit_norm(J.focus + J2.focus - sp.unit(space)) > tol:
        return False
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        a = sp.random_positive(space, rng)
        im = J.apply(a)
        if sp.order_unit_norm(J2.apply(im)) > tol * (1.0 + sp.order_unit_norm(im)):
            return False
        im2 = J2.apply(a)
        if sp.order_unit_norm(J.apply(im2)) > tol * (1.0 + sp.order_unit_norm(im2)):
            return False
    return True


def _face_states(J: CompMap, trials: int, rng: np.random.Generator) -> list[VElem]:
    """Generators of the face of states assigning probability one to the focus."""
    space = J.space
    if space.kind == sp.KIND_FN:
        out = []
        for i in np.flatnonzero(J.focus.data > 0.5):
            e = np.zeros(space.n)
            e[i] = 1.0
            out.append(VElem(space, e))
        return out
    if space.kind == sp.KIND_JB:
        w, V = jacobi_eigh(J.focus.data, max_sweeps=space.tol.max_sweeps)
        cols = V[:, w > 0.5]
        out = [VElem(space, np.outer(c, c)) for c in cols.T]
        for _ in range(min(trials, 25)):
            if cols.shape[1] == 0:
                break
            v = cols @ rng.standard_normal(cols.shape[1])
            nrm = float(np.linalg.norm(v))
            if nrm > 0:
                v = v / nrm
                out.append(VElem(space, np.outer(v, v)))
        return out
    tol = space.tol.eq_tol
    if sp.order_unit_norm(J.focus) <= tol:
        return []  # no state assigns probability one to the zero focus
    if sp.order_unit_norm(sp.unit(space) - J.focus) <= tol:
        return [sp.random_state(space, rng) for _ in range(min(trials, 10))]
    face = fams.dual_face(space.family, J.focus.y, tol)
    return [VElem(space, np.concatenate([[1.0], x])) for x in face.members()]


def is_smooth(J: CompMap, trials: int = 50, seed: int = 1) -> bool:
    """Neutrality of the dual map: every state concentrated on the focus is
    fixed by J*.  In the censym model this reduces to the exact criterion
    that the focus direction attains its norm at a single ball point."""
    _quick_guard(J)
    space = J.space
    tol = space.tol.eq_tol
    if space.kind == sp.KIND_CENSYM and fams.dual_norm(space.family, J.focus.y) > tol:
        face = fams.dual_face(space.family, J.focus.y, tol)
        if not face.is_singleton:
            return False
    rng = np.random.default_rng(seed)
    for rho in _face_states(J, trials, rng):
        image = J.apply_dual(rho)
        if sp.base_norm(VElem(space, image.data - rho.data)) > tol * (1.0 + sp.base_norm(rho)):
            return False
    return True


def is_compression(J: CompMap) -> bool:
    """True iff J and its constructed complement are both smooth."""
    comp = complement_map(J)
    return is_smooth(J) and is_smooth(comp)


# ---------------------------------------------------------------------------
# compression bases


@dataclass(eq=False)
class CompressionBase:
    """A family of maps indexed by their own foci, with the model hooks used
    by the spectral machinery.

    ``projections`` holds finite witnesses (exhaustive for the fn model at
    small n; generated samples otherwise).  ``support_family`` returns, for a
    grid of shifts, the canonical sign-supports of a - lambda; these are
    descending in lambda by construction.
    """

    space: ModelSpace
    projections: list[AElem]
    exhaustive: bool
    comparability: bool
    make_map: Callable[[AElem], CompMap]
    support_one: Callable[[AElem], AElem]
    support_grid: Callable[[AElem, np.ndarray], np.ndarray]  # stacked payloads
    cover_fn: Callable[[AElem], AElem]
    bounds_fn: Callable[[AElem], tuple[float, float]]
    contains_fn: Callable[[AElem], bool]
    label: str = ""

    def __post_init__(self) -> None:
        self._map_cache: dict[bytes, CompMap] = {}

    def map_for(self, p: AElem) -> CompMap:
        key = p.data.tobytes()
        found = self._map_cache.get(key)
        if found is None:
            found = self.make_map(p)
            if len(self._map_cache) > 512:
                self._map_cache.clear()
            self._map_cache[key] = found
        return found

    def contains(self, p: AElem) -> bool:
        return self.contains_fn(p)

    def support_family(self, a: AElem, lambdas: Iterable[float]) -> list[AElem]:
        stacked = self.support_grid(a, np.asarray(list(lambdas), float))
        return [AElem(self.space, payload) for payload in stacked]


def in_C(a: AElem, p: AElem, B: CompressionBase) -> bool:
    """Compatibility of a with the projection p: the two complementary
    squeezes recover a."""
    if not B.contains(p):
        raise UnknownProjection("p is not a projection of this base")
    jp = B.map_for(p)
    jq = B.map_for(sp.unit(B.space) - p)
    resid = a - jp.apply(a) - jq.apply(a)
    return sp.order_unit_norm(resid) <= B.space.tol.eq_tol * (1.0 + sp.order_unit_norm(a))


def projections_compatible(p: AElem, q: AElem, B: CompressionBase) -> tuple[bool, Optional[AElem]]:
    """Commutation of the two maps; on success the common product is itself a
    member map whose focus is the meet."""
    if not B.contains(p) or not B.contains(q):
        raise UnknownProjection("both arguments must be projections of the base")
    tol = B.space.tol.eq_tol
    mp = B.map_for(p).matrix
    mq = B.map_for(q).matrix
    if float(np.linalg.norm(mp @ mq - mq @ mp)) > tol * (1.0 + float(np.linalg.norm(mp @ mq))):
        return False, None
    meet = sp.elem_from_vec(B.space, mp @ mq @ sp.vec(sp.unit(B.space)))
    if not B.contains(meet):
        return False, None
    return True, meet


def pc_set(a: AElem, B: CompressionBase) -> list[AElem]:
    """Projections of the base compatible with a (witness collection)."""
    space = B.space
    if space.kind == sp.KIND_FN:
        return list(B.projections)
    if space.kind == sp.KIND_JB:
        witnesses = _jb_commutant_witnesses(a, space)
        return [p for p in witnesses if in_C(a, p, B)]
    candidates = [sp.zero(space), sp.unit(space)]
    wnorm = fams.dual_norm(space.family, a.y)
    if wnorm > space.tol.eq_tol:
        atom = AElem(space, np.concatenate([[0.5], a.y / (2.0 * wnorm)]))
        candidates += [atom, sp.unit(space) - atom]
    else:
        candidates += [p for p in B.projections]
    seen = [p for p in candidates if in_C(a, p, B)]
    return _dedupe(seen, space.tol.eq_tol)


def p_of(a: AElem, B: CompressionBase) -> list[AElem]:
    """The mutually compatible core of pc_set(a): the Boolean algebra spanned
    by the sign/level structure of a."""
    space = B.space
    if space.kind == sp.KIND_FN:
        masks = _level_masks(a.data, space.tol.eq_tol)
        return [AElem(space, m) for m in _boolean_algebra(masks, space.n)]
    if space.kind == sp.KIND_JB:
        projs = _jb_spectral_projections(a, space)
        return [AElem(space, m) for m in _boolean_matrix_algebra(projs, space.n)]
    members = pc_set(a, B)
    out = []
    for p in members:
        if all(_mutually_compatible(p, q, B) for q in members):
            out.append(p)
    return _dedupe(out, space.tol.eq_tol)


def _mutually_compatible(p: AElem, q: AElem, B: CompressionBase) -> bool:
    ok, _ = projections_compatible(p, q, B)
    return ok


def _dedupe(elems: list[AElem], tol: float) -> list[AElem]:
    out: list[AElem] = []
    for e in elems:
        if not any(sp.order_unit_norm(e - f) <= 10 * tol for f in out):
            out.append(e)
    return out


def _level_masks(values: np.ndarray, tol: float) -> list[np.ndarray]:
    order = np.argsort(values, kind="stable")
    masks = []
    current = [order[0]] if len(order) else []
    for prev, nxt in zip(order[:-1], order[1:]):
        if values[nxt] - values[prev] > tol:
            m = np.zeros(len(values))
            m[current] = 1.0
            masks.append(m)
            current = []
        current.append(nxt)
    if current:
        m = np.zeros(len(values))
        m[current] = 1.0
        masks.append(m)
    return masks


def _boolean_algebra(atoms: list[np.ndarray], n: int) -> list[np.ndarray]:
    if len(atoms) > 16:
        raise NotEnumerable("too many atoms to enumerate the Boolean algebra")
    out = []
    for bits in range(2 ** len(atoms)):
        m = np.zeros(n)
        for k, atom in enumerate(atoms):
            if (bits >> k) & 1:
                m = m + atom
        out.append(np.minimum(m, 1.0))
    return out


def _boolean_matrix_algebra(atoms: list[np.ndarray], n: int) -> list[np.ndarray]:
    if len(atoms) > 12:
        raise NotEnumerable("too many spectral atoms to enumerate")
    out = []
    for bits in range(2 ** len(atoms)):
        m = np.zeros((n, n))
        for k, atom in enumerate(atoms):
            if (bits >> k) & 1:
                m = m + atom
        out.append(m)
    return out


def _jb_eig_clusters(a: AElem, space: ModelSpace) -> list[np.ndarray]:
    """Indices of eigenvalues clustered by the relative gap eig_cut."""
    w, _ = jacobi_eigh(a.data, max_sweeps=space.tol.max_sweeps)
    scale = float(np.abs(w).max(initial=0.0))
    gap = space.tol.eig_cut * (1.0 + scale)
    clusters: list[list[int]] = [[0]]
    for i in range(1, len(w)):
        if w[i] - w[clusters[-1][-1]] > gap:
            clusters.append([])
        clusters[-1].append(i)
    return [np.array(c) for c in clusters]


def _jb_spectral_projections(a: AElem, space: ModelSpace) -> list[np.ndarray]:
    w, V = jacobi_eigh(a.data, max_sweeps=space.tol.max_sweeps)
    out = []
    for idx in _jb_eig_clusters(a, space):
        cols = V[:, idx]
        out.append(cols @ cols.T)
    return out


def _jb_commutant_witnesses(a: AElem, space: ModelSpace) -> list[AElem]:
    """Sums of spectral projections, plus sample splits inside degenerate
    eigenspaces (the latter commute with a but not with each other)."""
    spectral = _jb_spectral_projections(a, space)
    witnesses = [AElem(space, m) for m in _boolean_matrix_algebra(spectral, space.n)]
    w, V = jacobi_eigh(a.data, max_sweeps=space.tol.max_sweeps)
    for idx in _jb_eig_clusters(a, space):
        if len(idx) >= 2:
            cols = V[:, idx]
            split = np.outer(cols[:, 0], cols[:, 0])
            witnesses.append(AElem(space, split))
            mix = (cols[:, 0] + cols[:, 1]) / math.sqrt(2.0)
            witnesses.append(AElem(space, np.outer(mix, mix)))
    return witnesses


# ---------------------------------------------------------------------------
# base validation


def _join_via_cover(B: CompressionBase, p: AElem, q: AElem) -> AElem:
    return B.cover_fn(0.5 * (p + q))


def _meet_via_cover(B: CompressionBase, p: AElem, q: AElem) -> AElem:
    one = sp.unit(B.space)
    return one - _join_via_cover(B, one - p, one - q)


def validate_base(B: CompressionBase, trials: int = 200, seed: int = 1) -> Report:
    """Composition law on summable triples and normality of the projection
    family.  Failures are recorded as report cases with witnesses; nothing
    raises."""
    rng = np.random.default_rng(seed)
    tol = B.space.tol.eq_tol
    cases = []

    # composition law J_{p+r} J_{q+r} = J_r on triples with p + q + r <= 1
    triples = _summable_triples(B, trials, rng)
    comp_witness = None
    checked = 0
    for p, q, r in triples:
        mpr = B.map_for(p + r).matrix
        mqr = B.map_for(q + r).matrix
        mr = B.map_for(r).matrix
        resid = float(np.linalg.norm(mpr @ mqr - mr))
        checked += 1
        if resid > tol * (1.0 + float(np.linalg.norm(mr))):
            comp_witness = {
                "p": p.data.tolist(),
                "q": q.data.tolist(),
                "r": r.data.tolist(),
                "residual": resid,
            }
            break
    cases.append(CaseResult("composition_law", comp_witness is None, comp_witness, checked, seed))

    # normality: valid effect triples with d+e, d+f in P force d into P
    norm_witness = None
    instances = 0
    one = sp.unit(B.space)
    pool = list(B.projections)
    for i, p in enumerate(pool):
        for q in pool[i:]:
            try:
                d = _meet_via_cover(B, p, q)
            except Exception:
                continue
            e = p - d
            f = q - d
            if not (sp.is_effect(e) and sp.is_effect(f)):
                continue
            if not sp.in_cone(one - (d + e + f)):
                continue
            instances += 1
            if not B.contains(d):
                norm_witness = {"p": p.data.tolist(), "q": q.data.tolist(), "d": d.data.tolist()}
                break
        if norm_witness is not None:
            break
    cases.append(CaseResult("normality", norm_witness is None, norm_witness, instances, seed))

    env = {"model": B.space.label, "base": B.label, "tolerances": B.space.tol.as_dict()}
    return make_report("validate_base", cases, env)


def _summable_triples(B: CompressionBase, budget: int, rng: np.random.Generator):
    """Ordered triples (p, q, r) of base projections with p + q + r <= 1.
    Exhaustive bases enumerate everything; otherwise collection stops at a
    deterministic multiple of the budget and is then subsampled."""
    one = sp.unit(B.space)
    pool = list(B.projections)
    cap = None if B.exhaustive else 4 * budget
    out = []
    for p in pool:
        for q in pool:
            if not sp.in_cone(one - (p + q)):
                continue
            for r in pool:
                if sp.in_cone(one - (p + q + r)):
                    out.append((p, q, r))
                    if cap is not None and len(out) >= cap:
                        break
            if cap is not None and len(out) >= cap:
                break
        if cap is not None and len(out) >= cap:
            break
    if len(out) > budget and not B.exhaustive:
        idx = rng.choice(len(out), size=budget, replace=False)
        out = [out[i] for i in sorted(idx)]
    return out
