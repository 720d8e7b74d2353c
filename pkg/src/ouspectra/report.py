"""Machine-readable check reports with byte-reproducible serialization."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import VersionMismatch

TOOLKIT_VERSION = "0.1.0"


@dataclass(frozen=True)
class CaseResult:
    """Outcome of one named check: witness is present iff the check failed."""

    check: str
    passed: bool
    witness: object = None
    trials: int = 0
    seed: int = 0

    def to_obj(self) -> dict:
        return {
            "check": self.check,
            "pass": self.passed,
            "witness": self.witness,
            "trials": self.trials,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class Report:
    suite: str
    cases: tuple[CaseResult, ...]
    environment: dict = field(default_factory=dict)

    @property
    def summary(self) -> dict:
        passed = sum(1 for c in self.cases if c.passed)
        return {"passed": passed, "failed": len(self.cases) - passed, "skipped": 0}

    @property
    def ok(self) -> bool:
        return self.summary["failed"] == 0

    def to_obj(self) -> dict:
        env = dict(self.environment)
        env.setdefault("version", TOOLKIT_VERSION)
        return {
            "suite": self.suite,
            "cases": [c.to_obj() for c in self.cases],
            "summary": self.summary,
            "environment": env,
        }


def make_report(suite: str, cases: list[CaseResult], environment: dict | None = None) -> Report:
    return Report(suite=suite, cases=tuple(cases), environment=dict(environment or {}))


def merge_reports(reports: list[Report]) -> Report:
    """Concatenate case lists in deterministic (suite, check) order.

    All inputs must carry the same toolkit version.  Merging the empty list
    yields an empty report.
    """
    versions = {r.environment.get("version", TOOLKIT_VERSION) for r in reports}
    if len(versions) > 1:
        raise VersionMismatch(f"cannot merge reports from versions {sorted(versions)}")
    tagged = []
    env: dict = {}
    for r in reports:
        env.update(r.environment)
        tagged.extend((r.suite, c) for c in r.cases)
    tagged.sort(key=lambda t: (t[0], t[1].check))
    suites = sorted({r.suite for r in reports})
    return Report(suite="+".join(suites) if suites else "empty",
                  cases=tuple(c for _, c in tagged),
                  environment=env)


# ---------------------------------------------------------------------------
# canonical JSON: sorted keys, floats at 17 significant digits


def canonical_json(obj, indent: int = 0) -> str:
    """Serialize to JSON with a fixed float format so identical runs produce
    identical bytes."""
    return _dump(obj)


def _dump(obj) -> str:
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _float_repr(obj)
    if isinstance(obj, str):
        return _escape(obj)
    if isinstance(obj, dict):
        items = sorted(obj.items(), key=lambda kv: kv[0])
        return "{" + ",".join(f"{_escape(str(k))}:{_dump(v)}" for k, v in items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_dump(v) for v in obj) + "]"
    # numpy scalars / arrays
    try:
        import numpy as np

        if isinstance(obj, np.ndarray):
            return _dump(obj.tolist())
        if isinstance(obj, (np.floating,)):
            return _float_repr(float(obj))
        if isinstance(obj, (np.integer,)):
            return str(int(obj))
        if isinstance(obj, (np.bool_,)):
            return "true" if bool(obj) else "false"
    except ImportError:  # pragma: no cover
        pass
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _float_repr(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError("non-finite float in report")
    if x == int(x) and abs(x) < 1e15:
        return f"{x:.1f}"
    return f"{x:.17g}"


def _escape(s: str) -> str:
    out = ['"']
    for ch in s:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)
