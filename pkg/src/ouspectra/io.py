"""Element and spectral-data JSON, shared by the CLI and the reports.

Element objects look like ``{"model": "fn"|"jb"|"censym", "n": int,
"data": [...]}``; matrices are stored as full row-major arrays, censym
payloads as ``[a0, y...]`` with a sibling ``family`` descriptor.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import families as fams
from . import spaces as sp
from .report import canonical_json
from .spaces import AElem, ModelSpace
from .spectral import SpectralData
from .tolerances import DEFAULT_TOL, Tol


def elem_to_obj(a: AElem) -> dict:
    obj = {"model": a.space.kind, "n": a.space.n, "data": np.asarray(a.data).ravel().tolist()}
    if a.space.kind == sp.KIND_CENSYM:
        obj["family"] = fams.family_to_obj(a.space.family)
    return obj


def space_from_obj(obj: dict, tol: Tol = DEFAULT_TOL) -> ModelSpace:
    kind = obj["model"]
    n = int(obj["n"])
    if kind == sp.KIND_FN:
        return sp.fn_space(n, tol)
    if kind == sp.KIND_JB:
        return sp.jb_space(n, tol)
    if kind == sp.KIND_CENSYM:
        return sp.censym_space(fams.family_from_obj(obj["family"], n), tol)
    raise ValueError(f"unknown model {kind!r}")


def elem_from_obj(obj: dict, tol: Tol = DEFAULT_TOL, space: ModelSpace | None = None) -> AElem:
    if space is None:
        space = space_from_obj(obj, tol)
    data = np.asarray(obj["data"], float)
    if space.kind == sp.KIND_JB:
        data = data.reshape(space.n, space.n)
    return AElem(space, data)


def load_element(path: str | Path, tol: Tol = DEFAULT_TOL, space: ModelSpace | None = None) -> AElem:
    with open(path, "r", encoding="utf-8") as fh:
        return elem_from_obj(json.load(fh), tol, space)


def spectral_to_obj(sd: SpectralData) -> dict:
    return {
        "p_plus": elem_to_obj(sd.p_plus),
        "pos": elem_to_obj(sd.pos),
        "neg": elem_to_obj(sd.neg),
        "cover": elem_to_obj(sd.cover),
        "rickart": elem_to_obj(sd.annihilator),
        "resolution": [[t, elem_to_obj(p)] for t, p in sd.resolution],
        "bounds": [sd.bounds[0], sd.bounds[1]],
    }


def write_json(obj, path: str | Path) -> None:
    Path(path).write_text(canonical_json(obj) + "\n", encoding="utf-8")
