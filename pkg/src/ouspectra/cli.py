"""Command-line front end: run check suites, compute spectral data for an
element, classify censym foci, and emit canonical JSON reports.

Exit codes: 0 success / all checks pass, 1 a check or precondition failed,
2 usage error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import censym as csmod
from . import families as fams
from . import harness
from . import io as eio
from . import spaces as sp
from . import spectral as spec
from .errors import ComparabilityUnavailable, ToolkitError
from .report import canonical_json
from .tolerances import Tol


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ouspectra",
        description="Spectral-structure checks for three order-unit-space models",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_model: bool = True) -> None:
        if with_model:
            p.add_argument("--model", choices=["fn", "jb", "censym"], required=True)
            p.add_argument("--dim", type=int, default=None, help="point count / matrix size / ball dimension")
            p.add_argument("--family", default=None, help="censym norm family, e.g. lp:1.5 or stadium:1,1")
        p.add_argument("--trials", type=int, default=1000)
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--report", default=None, help="write the JSON report to this path")

    p_check = sub.add_parser("check", help="run all registered suites for a model")
    add_common(p_check)

    p_spec = sub.add_parser("spectral", help="spectral data for an element read from --input")
    add_common(p_spec)
    p_spec.add_argument("--input", required=True)
    p_spec.add_argument("--mesh", type=float, default=1e-2)

    p_cls = sub.add_parser("classify", help="classify a censym focus from --input")
    add_common(p_cls)
    p_cls.add_argument("--input", required=True)

    p_dec = sub.add_parser("decompose", help="orthogonal decomposition of an element from --input")
    add_common(p_dec)
    p_dec.add_argument("--input", required=True)
    return parser


def _space_from_args(args) -> sp.ModelSpace:
    tol = Tol(eq_tol=args.tol)
    if args.model == "fn":
        if args.dim is None or args.dim < 1:
            raise ValueError("--dim must be a positive integer for the fn model")
        return sp.fn_space(args.dim, tol)
    if args.model == "jb":
        if args.dim is None or args.dim < 1:
            raise ValueError("--dim must be a positive integer for the jb model")
        return sp.jb_space(args.dim, tol)
    if args.family is None:
        raise ValueError("--family is required for the censym model")
    n = args.dim if args.dim is not None else 2
    return sp.censym_space(fams.parse_family(args.family, n), tol)


def _emit(obj, path: str | None) -> None:
    text = canonical_json(obj)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)


def cmd_check(args) -> int:
    space = _space_from_args(args)
    report = harness.run_model(space, trials=args.trials, seed=args.seed)
    _emit(report.to_obj(), args.report)
    return 0 if report.ok else 1


def cmd_spectral(args) -> int:
    space = _space_from_args(args)
    a = eio.load_element(args.input, space.tol, space)
    base = harness._base_for(space, args.seed)
    try:
        lo, hi = spec.spectral_bounds(a, base)
        grid = sorted({lo, hi, *np.linspace(lo, hi, 9).tolist()})
        sd = spec.spectral_resolution(a, base, grid)
        approx, err = spec.riemann_reconstruct(a, base, args.mesh)
    except ComparabilityUnavailable as ex:
        fam_note = space.family.label if space.family else space.label
        print(f"comparability unavailable for {fam_note}: {ex}", file=sys.stderr)
        return 1
    obj = eio.spectral_to_obj(sd)
    obj["riemann"] = {"mesh": args.mesh, "error": err, "approx": eio.elem_to_obj(approx)}
    _emit(obj, args.report)
    return 0


def cmd_classify(args) -> int:
    space = _space_from_args(args)
    if space.kind != sp.KIND_CENSYM:
        raise ValueError("classify requires --model censym")
    obj = eio.load_element(args.input, space.tol, space)
    cls = csmod.classify_focus(space, obj)
    out = {
        "focus": eio.elem_to_obj(obj),
        "kind": cls.kind,
        "ball_face": {
            "kind": cls.dual_face.kind,
            "points": cls.dual_face.points.tolist(),
        },
        "norming_faces": [
            {"kind": f.kind, "points": f.points.tolist()} for f in cls.primal_faces
        ],
    }
    _emit(out, args.report)
    return 0


def cmd_decompose(args) -> int:
    space = _space_from_args(args)
    a = eio.load_element(args.input, space.tol, space)
    base = harness._base_for(space, args.seed)
    pos, neg, mag = spec.orthogonal_decomposition(a, base)
    out = {
        "p_plus": eio.elem_to_obj(spec.p_pm(a, base)),
        "pos": eio.elem_to_obj(pos),
        "neg": eio.elem_to_obj(neg),
        "abs": eio.elem_to_obj(mag),
    }
    _emit(out, args.report)
    return 0


_COMMANDS = {
    "check": cmd_check,
    "spectral": cmd_spectral,
    "classify": cmd_classify,
    "decompose": cmd_decompose,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return 2 if ex.code not in (0, None) else 0
    try:
        return _COMMANDS[args.command](args)
    except (ToolkitError, ValueError, OSError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2 if isinstance(ex, ValueError) else 1


if __name__ == "__main__":
    sys.exit(main())
