"""Built-in norm families with exact duality maps.

Two families ship: the l_p norms (any dimension, p in [1, inf]) and a
stadium gauge in the plane, the Minkowski sum of a horizontal segment of
half-length ``s`` with a disk of radius ``r``.  The stadium ball is smooth
but not strictly convex, which is exactly the regime separating the two
notions of compression this package checks; its dual norm is the support
function  s*|y_1| + r*||y||_2.

All face computations are closed-form.  Discretized maximization appears
only in the test suite as an independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ZeroFunctional, ZeroVector

_GAUGE_TOL = 1e-12


@dataclass(frozen=True)
class NormFamily:
    """Descriptor of a norm on R^n with smoothness/strict-convexity certificates."""

    kind: str                 # "lp" | "stadium"
    n: int
    p: float = math.nan       # lp exponent (math.inf allowed)
    s: float = math.nan       # stadium segment half-length
    r: float = math.nan       # stadium disk radius
    smooth: bool = field(init=False)
    strictly_convex: bool = field(init=False)

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("norm families require dimension n >= 2")
        if self.kind == "lp":
            if not (self.p >= 1.0):
                raise ValueError("lp exponent must satisfy p >= 1")
            flag = 1.0 < self.p < math.inf
            object.__setattr__(self, "smooth", flag)
            object.__setattr__(self, "strictly_convex", flag)
        elif self.kind == "stadium":
            if self.n != 2:
                raise ValueError("the stadium family is planar")
            if not (self.s > 0.0 and self.r > 0.0):
                raise ValueError("stadium parameters must be positive")
            object.__setattr__(self, "smooth", True)
            object.__setattr__(self, "strictly_convex", False)
        else:
            raise ValueError(f"unknown family kind {self.kind!r}")

    @property
    def q(self) -> float:
        """Dual lp exponent."""
        if self.kind != "lp":
            raise ValueError("dual exponent is only defined for lp families")
        if self.p == 1.0:
            return math.inf
        if self.p == math.inf:
            return 1.0
        return self.p / (self.p - 1.0)

    @property
    def label(self) -> str:
        if self.kind == "lp":
            return f"lp:{self.p:g}"
        return f"stadium:{self.s:g},{self.r:g}"


def lp(p: float, n: int) -> NormFamily:
    return NormFamily(kind="lp", n=n, p=float(p))


def stadium(s: float, r: float) -> NormFamily:
    return NormFamily(kind="stadium", n=2, s=float(s), r=float(r))


def parse_family(text: str, n: int) -> NormFamily:
    """Parse CLI descriptors like ``lp:1.5`` or ``stadium:1,1``."""
    kind, _, args = text.partition(":")
    if kind == "lp":
        return lp(math.inf if args in ("inf", "oo") else float(args), n)
    if kind == "stadium":
        s, r = (float(v) for v in args.split(","))
        return stadium(s, r)
    raise ValueError(f"unknown family descriptor {text!r}")


@dataclass(frozen=True)
class DualityFace:
    """A face of a unit ball: a singleton, a segment, or a sampled set.

    ``points`` holds one point for a singleton, the two endpoints of a
    segment, and a finite vertex/sample set otherwise.
    """

    kind: str                 # "singleton" | "segment" | "approximate"
    points: np.ndarray        # (k, n)
    diameter: float

    @property
    def is_singleton(self) -> bool:
        return self.kind == "singleton"

    def representative(self) -> np.ndarray:
        """Deterministic member: the point, the midpoint, or the centroid."""
        return self.points.mean(axis=0)

    def members(self) -> np.ndarray:
        """Representative sample including the deterministic member."""
        if self.is_singleton:
            return self.points
        return np.vstack([self.points, self.representative()])


def _singleton(x: np.ndarray) -> DualityFace:
    return DualityFace("singleton", np.asarray(x, float)[None, :], 0.0)


def _vertex_face(vertices: np.ndarray) -> DualityFace:
    vertices = np.asarray(vertices, float)
    if len(vertices) == 1:
        return _singleton(vertices[0])
    diffs = vertices[:, None, :] - vertices[None, :, :]
    diam = float(np.sqrt((diffs * diffs).sum(axis=2)).max())
    kind = "segment" if len(vertices) == 2 else "approximate"
    return DualityFace(kind, vertices, diam)


# ---------------------------------------------------------------------------
# norms


def primal_norm(fam: NormFamily, x: np.ndarray) -> float:
    """The family norm of x (Minkowski gauge of the unit ball)."""
    x = np.asarray(x, float)
    if fam.kind == "lp":
        return _lp_norm(x, fam.p)
    return _stadium_gauge(fam, x)


def dual_norm(fam: NormFamily, y: np.ndarray) -> float:
    """Support function of the unit ball, i.e. the dual norm of y."""
    y = np.asarray(y, float)
    if fam.kind == "lp":
        return _lp_norm(y, fam.q)
    return fam.s * abs(float(y[0])) + fam.r * float(np.linalg.norm(y))


def _lp_norm(x: np.ndarray, p: float) -> float:
    ax = np.abs(x)
    if p == math.inf:
        return float(ax.max()) if ax.size else 0.0
    if p == 1.0:
        return float(ax.sum())
    if p == 2.0:
        return float(np.linalg.norm(x))
    return float((ax**p).sum() ** (1.0 / p))


def _stadium_gauge(fam: NormFamily, x: np.ndarray) -> float:
    """Gauge of the segment+disk sum, by bisection on the scale factor.

    Feasibility of scale t:  sqrt(max(|x_1| - t*s, 0)^2 + x_2^2) <= t*r.
    """
    x1, x2 = abs(float(x[0])), float(x[1])

    def feasible(t: float) -> bool:
        return math.hypot(max(x1 - t * fam.s, 0.0), x2) <= t * fam.r

    if x1 == 0.0 and x2 == 0.0:
        return 0.0
    lo, hi = 0.0, x1 / fam.s + math.hypot(x1, x2) / fam.r
    while hi - lo > _GAUGE_TOL * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi


def stadium_gauge_batch(fam: NormFamily, xs: np.ndarray) -> np.ndarray:
    """Vectorized stadium gauge for an (m, 2) array of points."""
    x1 = np.abs(xs[:, 0])
    x2 = xs[:, 1]
    lo = np.zeros(len(xs))
    hi = x1 / fam.s + np.hypot(x1, x2) / fam.r
    hi = np.maximum(hi, _GAUGE_TOL)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        ok = np.hypot(np.maximum(x1 - mid * fam.s, 0.0), x2) <= mid * fam.r
        hi = np.where(ok, mid, hi)
        lo = np.where(ok, lo, mid)
    out = hi
    out[(x1 == 0.0) & (x2 == 0.0)] = 0.0
    return out


# ---------------------------------------------------------------------------
# duality maps


def dual_face(fam: NormFamily, y: np.ndarray, tol: float = 1e-9) -> DualityFace:
    """Maximizers of <y, .> over the primal unit ball."""
    y = np.asarray(y, float)
    ynorm = dual_norm(fam, y)
    if ynorm <= tol:
        raise ZeroFunctional("dual face of the zero functional is the whole ball")

    if fam.kind == "stadium":
        y1, y2 = float(y[0]), float(y[1])
        disk_part = fam.r * y / float(np.linalg.norm(y))
        if abs(y1) > tol:
            return _singleton(np.array([math.copysign(fam.s, y1), 0.0]) + disk_part)
        sgn = math.copysign(1.0, y2)
        return _vertex_face(
            np.array([[-fam.s, sgn * fam.r], [fam.s, sgn * fam.r]]) )

    p, q = fam.p, fam.q
    if 1.0 < p < math.inf:
        x = np.sign(y) * np.abs(y) ** (q - 1.0)
        return _singleton(x / _lp_norm(y, q) ** (q - 1.0))
    if p == 1.0:
        # face of the cross-polytope: vertices at the max-magnitude coordinates
        top = np.abs(y).max()
        idx = np.flatnonzero(np.abs(y) >= top - tol)
        verts = np.zeros((len(idx), fam.n))
        for k, i in enumerate(idx):
            verts[k, i] = math.copysign(1.0, y[i])
        return _vertex_face(verts)
    # p == inf: box face, free coordinates where y vanishes
    base = np.sign(y)
    free = np.flatnonzero(np.abs(y) <= tol)
    return _box_face(base, free)


def primal_face(fam: NormFamily, x: np.ndarray, tol: float = 1e-9) -> DualityFace:
    """Norming functionals of x inside the dual unit ball."""
    x = np.asarray(x, float)
    xnorm = primal_norm(fam, x)
    if xnorm <= tol:
        raise ZeroVector("primal face of the zero vector is the whole dual ball")

    if fam.kind == "stadium":
        xb = x / xnorm
        if abs(xb[0]) <= fam.s + tol:
            return _singleton(np.array([0.0, math.copysign(1.0, xb[1]) / fam.r]))
        u = (xb - np.array([math.copysign(fam.s, xb[0]), 0.0])) / fam.r
        u = u / float(np.linalg.norm(u))
        return _singleton(u / (fam.s * abs(u[0]) + fam.r))

    p = fam.p
    if 1.0 < p < math.inf:
        y = np.sign(x) * np.abs(x) ** (p - 1.0)
        return _singleton(y / xnorm ** (p - 1.0))
    if p == 1.0:
        # dual ball is the box; functionals match signs on the support
        base = np.sign(x)
        free = np.flatnonzero(np.abs(x) <= tol)
        return _box_face(base, free)
    # p == inf: dual ball is the cross-polytope
    top = np.abs(x).max()
    idx = np.flatnonzero(np.abs(x) >= top - tol)
    verts = np.zeros((len(idx), fam.n))
    for k, i in enumerate(idx):
        verts[k, i] = math.copysign(1.0, x[i])
    return _vertex_face(verts)


def _box_face(base: np.ndarray, free: np.ndarray) -> DualityFace:
    if len(free) == 0:
        return _singleton(base)
    if len(free) == 1:
        lo = base.copy()
        hi = base.copy()
        lo[free[0]] = -1.0
        hi[free[0]] = 1.0
        return _vertex_face(np.vstack([lo, hi]))
    # enumerate corners, capped to keep the description finite
    corners = []
    m = min(len(free), 4)
    for bits in range(2 ** m):
        v = base.copy()
        for k in range(m):
            v[free[k]] = 1.0 if (bits >> k) & 1 else -1.0
        corners.append(v)
    return _vertex_face(np.array(corners))


def extreme_in_dual_ball(fam: NormFamily, y: np.ndarray, tol: float = 1e-9) -> bool:
    """Is y / ||y||* an extreme point of the dual unit ball?

    Decided from the family certificates: strictly convex dual balls (lp with
    1 < p < inf, stadium) have only extreme boundary points; the box and
    cross-polytope cases are combinatorial.
    """
    y = np.asarray(y, float)
    c = dual_norm(fam, y)
    if c <= tol:
        return False
    if fam.kind == "stadium":
        return True
    if 1.0 < fam.p < math.inf:
        return True
    if fam.p == 1.0:
        # dual ball is the box: extreme iff every coordinate is at the rim
        scaled = np.abs(y) * (1.0 / c)
        return bool(np.all(scaled >= 1.0 - tol))
    # dual ball is the cross-polytope: extreme iff a single coordinate carries it
    return int(np.sum(np.abs(y) > tol * max(1.0, c))) == 1


def family_to_obj(fam: NormFamily) -> dict:
    if fam.kind == "lp":
        return {"family": "lp", "p": "inf" if fam.p == math.inf else fam.p}
    return {"family": "stadium", "s": fam.s, "r": fam.r}


def family_from_obj(obj: dict, n: int) -> NormFamily:
    if obj["family"] == "lp":
        p = obj["p"]
        return lp(math.inf if p == "inf" else float(p), n)
    if obj["family"] == "stadium":
        return stadium(obj["s"], obj["r"])
    raise ValueError(f"unknown family object {obj!r}")
