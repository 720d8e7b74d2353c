"""Finite function-space model: masks as projections, coordinate squeezes.

This model doubles as the exact oracle for the generic spectral machinery:
every spectral quantity has a one-line coordinate formula, computed here
without touching the compression pipeline.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import compressions as comp
from . import spaces as sp
from .errors import SizeLimit
from .spaces import AElem, ModelSpace
from .spectral import SpectralData
from .tolerances import DEFAULT_TOL, Tol

MAX_POINTS = 24
EXHAUSTIVE_POINTS = 12
SAMPLED_MASKS = 256


@dataclass(frozen=True)
class FnModel:
    space: ModelSpace
    base: comp.CompressionBase
    exhaustive: bool


def build_fn(n: int, tol: Tol = DEFAULT_TOL, seed: int = 1) -> FnModel:
    """Model on n points; all 2^n masks for n <= 12, a seeded sample above."""
    if not (1 <= n <= MAX_POINTS):
        raise SizeLimit(f"fn model supports 1 <= n <= {MAX_POINTS}, got {n}")
    space = sp.fn_space(n, tol)
    exhaustive = n <= EXHAUSTIVE_POINTS
    if exhaustive:
        masks = [np.array(bits, float) for bits in itertools.product((0.0, 1.0), repeat=n)]
    else:
        rng = np.random.default_rng(seed)
        masks = [np.zeros(n), np.ones(n)]
        seen = {masks[0].tobytes(), masks[1].tobytes()}
        while len(masks) < SAMPLED_MASKS:
            m = (rng.uniform(size=n) < 0.5).astype(float)
            if m.tobytes() not in seen:
                seen.add(m.tobytes())
                masks.append(m)
    base = comp.CompressionBase(
        space=space,
        projections=[AElem(space, m) for m in masks],
        exhaustive=exhaustive,
        comparability=True,
        make_map=lambda p: comp.fn_mask_map(space, np.round(p.data)),
        support_one=lambda a: AElem(space, _support_mask(a.data, 0.0, tol.eq_tol)),
        support_grid=lambda a, ls: _support_stack(a.data, ls, tol.eq_tol),
        cover_fn=lambda e: AElem(space, _support_mask(e.data, 0.0, tol.eq_tol)),
        bounds_fn=lambda a: (float(a.data.min()), float(a.data.max())),
        contains_fn=lambda p: _is_mask(p.data, tol.eq_tol),
        label=f"fn-masks n={n}" + ("" if exhaustive else " (nonexhaustive)"),
    )
    return FnModel(space, base, exhaustive)


def _is_mask(data: np.ndarray, tol: float) -> bool:
    return bool(np.all(np.minimum(np.abs(data), np.abs(data - 1.0)) <= tol))


def _support_mask(values: np.ndarray, shift: float, tol: float) -> np.ndarray:
    return (values - shift > tol).astype(float)


def _support_stack(values: np.ndarray, shifts: np.ndarray, tol: float) -> np.ndarray:
    return (values[None, :] - shifts[:, None] > tol).astype(float)


def oracle_spectral(f: np.ndarray, tol: Tol = DEFAULT_TOL, grid: list[float] | None = None) -> SpectralData:
    """Coordinate-formula spectral data, bypassing the compression machinery.

    Support conventions match the pipeline: strictly positive coordinates
    (beyond eq_tol) count as support, zeros fall to the negative side.
    """
    f = np.asarray(f, float)
    space = sp.fn_space(len(f), tol)
    pos = np.where(f > tol.eq_tol, f, 0.0)
    neg = pos - f
    supp = _support_mask(np.abs(f), 0.0, tol.eq_tol)
    if grid is None:
        grid = sorted(set(float(v) for v in f))
    resolution = tuple(
        (float(t), AElem(space, 1.0 - _support_mask(f, float(t), tol.eq_tol)))
        for t in grid
    )
    return SpectralData(
        a=AElem(space, f),
        p_plus=AElem(space, _support_mask(f, 0.0, tol.eq_tol)),
        pos=AElem(space, pos),
        neg=AElem(space, neg),
        abs_part=AElem(space, pos + neg),
        cover=AElem(space, supp),
        annihilator=AElem(space, 1.0 - supp),
        resolution=resolution,
        bounds=(float(f.min()), float(f.max())),
    )


def mackey_witness(e: AElem, g: AElem) -> tuple[AElem, AElem, AElem]:
    """Every pair of fn effects is jointly decomposable: with
    c = max(e + g - 1, 0) the pieces (c, e - c, g - c) are effects summing
    within the unit."""
    space = e.space
    c = np.maximum(e.data + g.data - 1.0, 0.0)
    return AElem(space, c), AElem(space, e.data - c), AElem(space, g.data - c)
