"""Centrally symmetric model: rank-one retractions, their classification, and
the smoothness dichotomy for the spectral machinery.

Foci are the sharp midpoints (1/2, y) with ||y||* = 1/2.  A retraction with
such a focus evaluates a state (1, x) with x a maximizer of y on the ball:
J(a) = (a0 + <x, w>) p.  Whether that map satisfies the kernel axiom, and
whether it is smooth on the state side, is decided entirely by the two
duality faces of the norm family.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import compressions as comp
from . import families as fams
from . import spaces as sp
from .errors import NotNormAttaining, NotSharpFocus
from .spaces import AElem, ModelSpace
from .tolerances import DEFAULT_TOL, Tol


@dataclass(frozen=True)
class CenSymModel:
    space: ModelSpace
    base: comp.CompressionBase


@dataclass(frozen=True)
class SpectralBaseUnavailable:
    """Negative answer from the base builder, with a concrete certificate:
    a sharp focus whose canonical retraction fails the kernel axiom."""

    family: fams.NormFamily
    focus: AElem
    witness: dict


@dataclass(frozen=True)
class FocusClassification:
    kind: str  # "retraction_only" | "f_compression" | "compression"
    dual_face: fams.DualityFace        # maximizers of the focus direction
    primal_faces: tuple[fams.DualityFace, ...]  # norming faces of those maximizers


def sharp_focus(space: ModelSpace, direction: np.ndarray) -> AElem:
    """The sharp element (1/2, y) with y along the given direction."""
    d = np.asarray(direction, float)
    nrm = fams.dual_norm(space.family, d)
    if nrm <= space.tol.eq_tol:
        raise NotSharpFocus("focus direction must be nonzero")
    return AElem(space, np.concatenate([[0.5], d / (2.0 * nrm)]))


def random_sharp_focus(space: ModelSpace, rng: np.random.Generator) -> AElem:
    return sharp_focus(space, rng.standard_normal(space.n))


def build_retraction(space: ModelSpace, p: AElem, x: np.ndarray) -> comp.CompMap:
    """Rank-one map J(a) = (a0 + <x, w>) p for a sharp extremal focus p and a
    ball point x where the focus direction attains its norm."""
    tol = space.tol.eq_tol
    if not sp.is_sharp(p) or not sp.is_extremal(p):
        raise NotSharpFocus("focus must be sharp and extremal")
    x = np.asarray(x, float)
    fam = space.family
    if fams.primal_norm(fam, x) > 1.0 + 1e-7:
        raise NotNormAttaining("x must lie in the unit ball")
    if abs(float(np.dot(p.y, x)) - fams.dual_norm(fam, p.y)) > 1e-7:
        raise NotNormAttaining("x must maximize the focus direction on the ball")
    return comp.cs_rank_one_map(space, p, x)


def canonical_x(space: ModelSpace, p: AElem) -> np.ndarray:
    """Deterministic maximizer for a focus: the face point, or the segment
    midpoint / vertex centroid when the face is flat."""
    face = fams.dual_face(space.family, p.y, space.tol.eq_tol)
    return face.representative()


def classify_focus(space: ModelSpace, p: AElem) -> FocusClassification:
    """Compression iff both duality faces are single points; the kernel axiom
    alone needs only the norming face of the chosen maximizer to be the
    doubled focus direction."""
    if not sp.is_sharp(p):
        raise NotSharpFocus("classification requires a sharp focus")
    tol = space.tol.eq_tol
    fam = space.family
    dface = fams.dual_face(fam, p.y, tol)
    pfaces = tuple(fams.primal_face(fam, x, tol) for x in dface.members())
    all_singleton = all(f.is_singleton for f in pfaces)
    if dface.is_singleton and all_singleton:
        kind = "compression"
    elif any(f.is_singleton for f in pfaces):
        kind = "f_compression"
    else:
        kind = "retraction_only"
    return FocusClassification(kind, dface, pfaces)


# ---------------------------------------------------------------------------
# base construction


def _support_one(space: ModelSpace, a: AElem) -> AElem:
    return AElem(space, _support_payload(space, a, 0.0))


def _support_payload(space: ModelSpace, a: AElem, shift: float) -> np.ndarray:
    """Sign support of a - shift: the unit below the lower bound, zero above
    the upper bound, and the focus atom of the dual direction in between."""
    tol = space.tol.eq_tol
    wnorm = fams.dual_norm(space.family, a.y)
    c = a.a0 - shift
    one = np.concatenate([[1.0], np.zeros(space.n)])
    zero = np.zeros(space.n + 1)
    if wnorm <= tol:
        return one if c > tol else zero
    if shift < a.a0 - wnorm:
        return one
    if shift >= a.a0 + wnorm:
        return zero
    return np.concatenate([[0.5], a.y / (2.0 * wnorm)])


def _support_grid(space: ModelSpace, a: AElem, shifts: np.ndarray) -> np.ndarray:
    return np.stack([_support_payload(space, a, float(t)) for t in shifts]) if len(shifts) else np.empty((0, space.n + 1))


def _cover(space: ModelSpace, e: AElem) -> AElem:
    """0 for the zero effect, the atom for multiples of an atom, 1 otherwise."""
    tol = space.tol.eq_tol
    nrm = sp.order_unit_norm(e)
    if nrm <= tol:
        return sp.zero(space)
    wnorm = fams.dual_norm(space.family, e.y)
    if abs(e.a0 - wnorm) <= tol * (1.0 + nrm) and wnorm > tol:
        return AElem(space, np.concatenate([[0.5], e.y / (2.0 * wnorm)]))
    return sp.unit(space)


def _contains(space: ModelSpace, p: AElem) -> bool:
    tol = space.tol.eq_tol
    if sp.order_unit_norm(p) <= tol or sp.order_unit_norm(sp.unit(space) - p) <= tol:
        return True
    try:
        return sp.is_sharp(p)
    except Exception:
        return False


def _seed_atoms(space: ModelSpace, count: int, seed: int) -> list[AElem]:
    rng = np.random.default_rng(seed)
    atoms = []
    for _ in range(count):
        p = random_sharp_focus(space, rng)
        atoms += [p, sp.unit(space) - p]
    return atoms


def build_spectral_base(
    fam: fams.NormFamily, tol: Tol = DEFAULT_TOL, seed: int = 1
) -> Union[comp.CompressionBase, SpectralBaseUnavailable]:
    """The full compression base when the family is smooth; otherwise a
    certificate focus whose canonical retraction violates the kernel axiom,
    found by the kernel-directed search."""
    space = sp.censym_space(fam, tol)
    if not fam.smooth:
        focus = _nonsmooth_certificate_focus(space)
        J = comp.cs_rank_one_map(space, focus, canonical_x(space, focus))
        verdict = comp.check_F_axioms(J, trials=400, seed=seed)
        witness = {
            "focus": focus.data.tolist(),
            "axioms": {"retraction": verdict.retraction, "f_compression": verdict.f_compression},
            "witnesses": list(verdict.witnesses),
        }
        return SpectralBaseUnavailable(fam, focus, witness)

    projections = [sp.zero(space), sp.unit(space)] + _seed_atoms(space, 4, seed)
    return comp.CompressionBase(
        space=space,
        projections=projections,
        exhaustive=False,
        comparability=True,
        make_map=lambda p: _lookup_map(space, p),
        support_one=lambda a: _support_one(space, a),
        support_grid=lambda a, ls: _support_grid(space, a, ls),
        cover_fn=lambda e: _cover(space, e),
        bounds_fn=lambda a: (
            a.a0 - fams.dual_norm(space.family, a.y),
            a.a0 + fams.dual_norm(space.family, a.y),
        ),
        contains_fn=lambda p: _contains(space, p),
        label=f"censym[{fam.label}]",
    )


def _lookup_map(space: ModelSpace, p: AElem) -> comp.CompMap:
    tol = space.tol.eq_tol
    if sp.order_unit_norm(p) <= tol:
        return comp.cs_zero_map(space)
    if sp.order_unit_norm(sp.unit(space) - p) <= tol:
        return comp.cs_identity_map(space)
    return comp.cs_rank_one_map(space, p, canonical_x(space, p))


def _nonsmooth_certificate_focus(space: ModelSpace) -> AElem:
    """A sharp focus that cannot carry the kernel axiom: the norming face of
    its canonical maximizer is flat.  For the l1 ball take a functional in
    the interior of a facet of the dual box; for the max-norm ball take the
    uniform functional whose maximizer is a corner."""
    fam = space.family
    n = space.n
    if fam.kind == "lp" and fam.p == 1.0:
        y = np.zeros(n)
        y[0] = 0.5
        y[1] = 0.25
        return AElem(space, np.concatenate([[0.5], y]))
    if fam.kind == "lp" and fam.p == np.inf:
        y = np.full(n, 1.0 / (2.0 * n))
        return AElem(space, np.concatenate([[0.5], y]))
    raise NotSharpFocus(f"family {fam.label} is smooth; no certificate exists")


@dataclass(frozen=True)
class DualityDecision:
    """Outcome of the two-property test: spectral duality needs smoothness
    and strict convexity; a smooth but non-strictly-convex family is
    witnessed by one focus carrying two distinct axiom-passing maps."""

    spectral_duality: bool
    witness_focus: Optional[AElem] = None
    witness_maps: tuple = ()


def decide_spectral_duality(fam: fams.NormFamily, tol: Tol = DEFAULT_TOL) -> DualityDecision:
    verdict = fam.smooth and fam.strictly_convex
    if verdict or not fam.smooth:
        return DualityDecision(verdict)
    space = sp.censym_space(fam, tol)
    # flat spot of the stadium ball: the focus direction normal to the top edge
    focus = sharp_focus(space, np.array([0.0, 1.0]))
    face = fams.dual_face(fam, focus.y, tol.eq_tol)
    x1 = face.representative()
    x2 = 0.5 * (x1 + face.points[1])
    maps = (
        build_retraction(space, focus, x1),
        build_retraction(space, focus, x2),
    )
    return DualityDecision(False, focus, maps)


def build_censym(fam: fams.NormFamily, tol: Tol = DEFAULT_TOL, seed: int = 1) -> CenSymModel:
    base = build_spectral_base(fam, tol, seed)
    if isinstance(base, SpectralBaseUnavailable):
        space = sp.censym_space(fam, tol)
        stub = comp.CompressionBase(
            space=space,
            projections=[sp.zero(space), sp.unit(space)],
            exhaustive=False,
            comparability=False,
            make_map=lambda p: _lookup_map(space, p),
            support_one=lambda a: _support_one(space, a),
            support_grid=lambda a, ls: _support_grid(space, a, ls),
            cover_fn=lambda e: _cover(space, e),
            bounds_fn=lambda a: (
                a.a0 - fams.dual_norm(space.family, a.y),
                a.a0 + fams.dual_norm(space.family, a.y),
            ),
            contains_fn=lambda p: _contains(space, p),
            label=f"censym[{fam.label}] (no spectral base)",
        )
        return CenSymModel(space, stub)
    return CenSymModel(base.space, base)
