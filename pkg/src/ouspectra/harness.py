"""Seeded property-check driver shared by all models.

Every suite is a list of named cases.  A case gets its own counter-based
random stream derived from (seed, case index), so results do not depend on
execution order and identical configurations produce byte-identical reports.
Cases never abort the run: a failure is recorded with a witness and the
suite continues.

Expected-negative structure: for centrally symmetric families without a
smooth norm, the compression/spectral suites assert that the documented
failure occurs (certificate focus violating the kernel axiom, comparability
unavailable), so the suite passes exactly when the negative result
reproduces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import compressions as comp
from . import families as fams
from . import fnspace
from . import jb as jbmod
from . import censym as csmod
from . import spaces as sp
from . import spectral as spec
from .errors import ComparabilityUnavailable, UnknownSuite
from .report import CaseResult, Report, TOOLKIT_VERSION, make_report, merge_reports
from .spaces import AElem, ModelSpace

SUITE_NAMES = ("core", "compressions", "spectral", "fn-oracle", "jb", "censym")


@dataclass
class Ctx:
    space: ModelSpace
    base: comp.CompressionBase
    trials: int
    seed: int
    rng: np.random.Generator

    def cap(self, n: int) -> int:
        return max(1, min(self.trials, n))


def _base_for(space: ModelSpace, seed: int) -> comp.CompressionBase:
    if space.kind == sp.KIND_FN:
        return fnspace.build_fn(space.n, space.tol, seed).base
    if space.kind == sp.KIND_JB:
        return jbmod.build_jb(space.n, space.tol, seed).base
    return csmod.build_censym(space.family, space.tol, seed).base


def suites_for(space: ModelSpace) -> list[str]:
    model_suite = {sp.KIND_FN: "fn-oracle", sp.KIND_JB: "jb", sp.KIND_CENSYM: "censym"}
    return ["core", "compressions", "spectral", model_suite[space.kind]]


def run_suite(name: str, space: ModelSpace, trials: int = 1000, seed: int = 1) -> Report:
    """Run one registered suite; deterministic given (name, space, trials, seed)."""
    if name not in SUITE_NAMES:
        raise UnknownSuite(f"unknown suite {name!r}; registered: {SUITE_NAMES}")
    if name == "fn-oracle" and space.kind != sp.KIND_FN:
        raise UnknownSuite("suite 'fn-oracle' runs on the fn model only")
    if name == "jb" and space.kind != sp.KIND_JB:
        raise UnknownSuite("suite 'jb' runs on the jb model only")
    if name == "censym" and space.kind != sp.KIND_CENSYM:
        raise UnknownSuite("suite 'censym' runs on the censym model only")
    if trials < 1:
        raise ValueError("trials must be positive")

    cases = _CASES[name](space)
    base = _base_for(space, seed)
    results = []
    for idx, (check, fn) in enumerate(cases):
        # counter-based stream per (seed, case index): order-independent
        ctx = Ctx(space, base, trials, seed, np.random.default_rng([seed, idx]))
        try:
            result = fn(ctx)
        except Exception as ex:  # never abort: failures are report entries
            result = CaseResult(check, False, {"error": f"{type(ex).__name__}: {ex}"}, 0, seed)
        results.append(result)
    env = {
        "version": TOOLKIT_VERSION,
        "model": space.label,
        "tolerances": space.tol.as_dict(),
        "trials": trials,
        "seed": seed,
    }
    return make_report(name, results, env)


def run_model(space: ModelSpace, trials: int = 1000, seed: int = 1) -> Report:
    return merge_reports([run_suite(s, space, trials, seed) for s in suites_for(space)])


def _ok(check: str, trials: int, seed: int) -> CaseResult:
    return CaseResult(check, True, None, trials, seed)


def _fail(check: str, witness, trials: int, seed: int) -> CaseResult:
    return CaseResult(check, False, witness, trials, seed)


# ---------------------------------------------------------------------------
# core suite


def _case_unit(ctx: Ctx) -> CaseResult:
    one = sp.unit(ctx.space)
    ok = sp.in_cone(one) and abs(sp.order_unit_norm(one) - 1.0) <= ctx.space.tol.eq_tol
    return CaseResult("unit_element", ok, None if ok else {"norm": sp.order_unit_norm(one)}, 1, ctx.seed)


def _case_duality_sup(ctx: Ctx) -> CaseResult:
    """The order-unit norm is the sup of |<a, v>| over the dual unit ball."""
    space = ctx.space
    n_elems = ctx.cap(40)
    for _ in range(n_elems):
        a = sp.random_element(space, ctx.rng)
        nrm = sp.order_unit_norm(a)
        if nrm <= space.tol.eq_tol:
            continue
        best = 0.0
        for _ in range(200):
            v = sp.random_unit_ball_v(space, ctx.rng)
            best = max(best, abs(sp.pairing(a, v)))
        for v in _norm_attaining_duals(a):
            best = max(best, abs(sp.pairing(a, v)))
        if best > nrm * (1.0 + 1e-7) or best < 0.95 * nrm:
            return _fail(
                "duality_norm_sup",
                {"element": a.data.tolist(), "norm": nrm, "sup": best},
                n_elems,
                ctx.seed,
            )
    return _ok("duality_norm_sup", n_elems, ctx.seed)


def _norm_attaining_duals(a: AElem) -> list[sp.VElem]:
    """Dual unit vectors where the order-unit norm is attained."""
    space = a.space
    if space.kind == sp.KIND_FN:
        i = int(np.argmax(np.abs(a.data)))
        e = np.zeros(space.n)
        e[i] = np.sign(a.data[i]) if a.data[i] != 0 else 1.0
        return [sp.VElem(space, e)]
    if space.kind == sp.KIND_JB:
        w, V = jbmod.jacobi_eigh(a.data, max_sweeps=space.tol.max_sweeps)
        i = int(np.argmax(np.abs(w)))
        v = V[:, i]
        sgn = np.sign(w[i]) if w[i] != 0 else 1.0
        return [sp.VElem(space, sgn * np.outer(v, v))]
    try:
        face = fams.dual_face(space.family, a.y, space.tol.eq_tol)
        x = face.representative()
    except Exception:
        x = np.zeros(space.n)
    sgn = 1.0 if a.a0 >= 0 else -1.0
    return [sp.VElem(space, sgn * np.concatenate([[1.0], x * (1.0 if a.a0 >= 0 else -1.0)]))]


def _case_principal_sharp(ctx: Ctx) -> CaseResult:
    """No sampled effect may be found principal yet non-sharp."""
    n = ctx.cap(250)
    inner = 12
    for k in range(n):
        e = sp.random_effect(ctx.space, ctx.rng)
        if sp.is_principal(e, trials=inner, rng_seed=ctx.seed + k) and not sp.is_sharp(e):
            return _fail("principal_implies_sharp", {"effect": e.data.tolist()}, n * inner, ctx.seed)
    return _ok("principal_implies_sharp", n * inner, ctx.seed)


def _case_states(ctx: Ctx) -> CaseResult:
    one = sp.unit(ctx.space)
    n = ctx.cap(300)
    for _ in range(n):
        rho = sp.random_state(ctx.space, ctx.rng)
        if abs(sp.pairing(one, rho) - 1.0) > ctx.space.tol.eq_tol:
            return _fail("states_normalized", {"state": rho.data.tolist()}, n, ctx.seed)
    return _ok("states_normalized", n, ctx.seed)


def _case_pointed(ctx: Ctx) -> CaseResult:
    """Elements in the cone and its negative must vanish."""
    n = ctx.cap(300)
    for _ in range(n):
        a = sp.random_element(ctx.space, ctx.rng) * float(ctx.rng.uniform(0.0, 1e-9))
        if sp.in_cone(a) and sp.in_cone(-1.0 * a):
            if sp.order_unit_norm(a) > ctx.space.tol.eq_tol:
                return _fail("cone_pointed", {"element": a.data.tolist()}, n, ctx.seed)
    return _ok("cone_pointed", n, ctx.seed)


# ---------------------------------------------------------------------------
# compressions suite


def _sample_foci(ctx: Ctx, count: int) -> list[AElem]:
    space = ctx.space
    out = []
    for _ in range(count):
        if space.kind == sp.KIND_FN:
            out.append(AElem(space, (ctx.rng.uniform(size=space.n) < 0.5).astype(float)))
        elif space.kind == sp.KIND_JB:
            out.append(jbmod.random_projection(space, ctx.rng))
        else:
            out.append(csmod.random_sharp_focus(space, ctx.rng))
    return out


def _smooth_censym(space: ModelSpace) -> bool:
    return space.kind != sp.KIND_CENSYM or space.family.smooth


def _case_member_axioms(ctx: Ctx) -> CaseResult:
    """Canonical maps of the base satisfy the retraction axioms; for smooth
    models they satisfy the kernel axiom too.  Nonsmooth families are the
    expected-negative side: at least the certificate focus must fail."""
    space = ctx.space
    if not _smooth_censym(space):
        unavailable = csmod.build_spectral_base(space.family, space.tol, ctx.seed)
        ok = (
            isinstance(unavailable, csmod.SpectralBaseUnavailable)
            and unavailable.witness["axioms"]["retraction"]
            and not unavailable.witness["axioms"]["f_compression"]
        )
        return CaseResult(
            "kernel_axiom_failure_expected", ok,
            None if ok else {"witness": getattr(unavailable, "witness", None)}, 1, ctx.seed,
        )
    n = ctx.cap(20)
    for focus in _sample_foci(ctx, n):
        J = ctx.base.map_for(focus)
        verdict = comp.check_F_axioms(J, trials=40, seed=ctx.seed)
        if not (verdict.retraction and verdict.f_compression):
            return _fail("member_axioms", {"focus": focus.data.tolist(), "witnesses": list(verdict.witnesses)}, n, ctx.seed)
    return _ok("member_axioms", n, ctx.seed)


def _case_contraction(ctx: Ctx) -> CaseResult:
    if not _smooth_censym(ctx.space):
        return _ok("norm_contraction_skipped_nonsmooth", 0, ctx.seed)
    n = ctx.cap(20)
    for focus in _sample_foci(ctx, n):
        J = ctx.base.map_for(focus)
        for _ in range(25):
            a = sp.random_element(ctx.space, ctx.rng)
            nrm = sp.order_unit_norm(a)
            if nrm <= ctx.space.tol.eq_tol:
                continue
            if sp.order_unit_norm(J.apply(a)) > nrm * (1.0 + 1e-7):
                return _fail("norm_contraction", {"focus": focus.data.tolist(), "a": a.data.tolist()}, n, ctx.seed)
    return _ok("norm_contraction", n * 25, ctx.seed)


def _case_complements(ctx: Ctx) -> CaseResult:
    if not _smooth_censym(ctx.space):
        return _ok("complements_skipped_nonsmooth", 0, ctx.seed)
    n = ctx.cap(15)
    one = sp.unit(ctx.space)
    for focus in _sample_foci(ctx, n):
        J = ctx.base.map_for(focus)
        J2 = ctx.base.map_for(one - focus)
        if not comp.are_complementary(J, J2, trials=20, seed=ctx.seed):
            return _fail("complementary_pair", {"focus": focus.data.tolist()}, n, ctx.seed)
        if comp.is_compression(J):
            verdict = comp.check_F_axioms(J, trials=30, seed=ctx.seed)
            if not verdict.f_compression:
                return _fail("compression_implies_axioms", {"focus": focus.data.tolist()}, n, ctx.seed)
    return _ok("complementary_pair", n, ctx.seed)


def _case_additivity(ctx: Ctx) -> CaseResult:
    """Squeezes of summable compatible projections add on compatible elements."""
    space = ctx.space
    if not _smooth_censym(space):
        return _ok("additivity_skipped_nonsmooth", 0, ctx.seed)
    n = ctx.cap(30)
    checked = 0
    for _ in range(n):
        a = sp.random_element(space, ctx.rng)
        if space.kind == sp.KIND_FN:
            parts = _disjoint_masks(space, ctx.rng)
        elif space.kind == sp.KIND_JB:
            parts = _disjoint_spectral(a, space)
        else:
            p = spec.p_pm(a, ctx.base)
            if sp.order_unit_norm(p) <= space.tol.eq_tol or sp.order_unit_norm(sp.unit(space) - p) <= space.tol.eq_tol:
                continue
            parts = [p, sp.unit(space) - p]
        if len(parts) < 2:
            continue
        total = parts[0]
        for piece in parts[1:]:
            total = total + piece
        lhs = ctx.base.map_for(total).apply(a)
        rhs = sp.zero(space)
        for piece in parts:
            rhs = rhs + ctx.base.map_for(piece).apply(a)
        checked += 1
        if sp.order_unit_norm(lhs - rhs) > space.tol.eq_tol * (1.0 + sp.order_unit_norm(a)):
            return _fail("squeeze_additivity", {"a": a.data.tolist()}, checked, ctx.seed)
    return _ok("squeeze_additivity", checked, ctx.seed)


def _disjoint_masks(space: ModelSpace, rng: np.random.Generator) -> list[AElem]:
    labels = rng.integers(0, 3, size=space.n)
    return [AElem(space, (labels == k).astype(float)) for k in range(2)]


def _disjoint_spectral(a: AElem, space: ModelSpace) -> list[AElem]:
    projs = comp._jb_spectral_projections(a, space)
    if len(projs) < 2:
        return []
    half = max(1, len(projs) // 2)
    first = sum(projs[:half], np.zeros((space.n, space.n)))
    second = sum(projs[half:], np.zeros((space.n, space.n)))
    return [AElem(space, first), AElem(space, second)]


def _case_bicommutant(ctx: Ctx) -> CaseResult:
    """Members of the compatible-projection family close under meet/join."""
    space = ctx.space
    if space.kind == sp.KIND_CENSYM:
        return _ok("pc_lattice_skipped", 0, ctx.seed)
    n = ctx.cap(15)
    for _ in range(n):
        a = sp.random_element(space, ctx.rng)
        members = comp.p_of(a, ctx.base)
        for p in members[: min(len(members), 6)]:
            for q in members[: min(len(members), 6)]:
                okc, meet = comp.projections_compatible(p, q, ctx.base)
                if not okc:
                    return _fail("pc_lattice", {"a": a.data.tolist()}, n, ctx.seed)
                if meet is not None and not comp.in_C(a, meet, ctx.base):
                    return _fail("pc_lattice", {"a": a.data.tolist(), "meet": meet.data.tolist()}, n, ctx.seed)
    return _ok("pc_lattice", n, ctx.seed)


def _case_base_axioms(ctx: Ctx) -> CaseResult:
    if not _smooth_censym(ctx.space):
        return _ok("base_axioms_skipped_nonsmooth", 0, ctx.seed)
    rep = comp.validate_base(ctx.base, trials=ctx.cap(300), seed=ctx.seed)
    bad = [c.to_obj() for c in rep.cases if not c.passed]
    return CaseResult("base_axioms", rep.ok, bad or None, sum(c.trials for c in rep.cases), ctx.seed)


# ---------------------------------------------------------------------------
# spectral suite


def _case_unavailable(ctx: Ctx) -> CaseResult:
    """Expected negative: no comparability without a smooth family."""
    try:
        spec.p_pm(sp.random_element(ctx.space, ctx.rng), ctx.base)
    except ComparabilityUnavailable:
        unavailable = csmod.build_spectral_base(ctx.space.family, ctx.space.tol, ctx.seed)
        ok = isinstance(unavailable, csmod.SpectralBaseUnavailable)
        if ok:
            witnesses = unavailable.witness["witnesses"]
            ok = any(w.get("axiom") == "F3" and w.get("deficit", 0.0) > 1e-6 for w in witnesses)
        return CaseResult("comparability_unavailable_expected", ok, None, 1, ctx.seed)
    return _fail("comparability_unavailable_expected", {"note": "sign support unexpectedly available"}, 1, ctx.seed)


def _case_decomposition(ctx: Ctx) -> CaseResult:
    space = ctx.space
    n = ctx.cap(80)
    for _ in range(n):
        a = sp.random_element(space, ctx.rng)
        p = spec.p_pm(a, ctx.base)
        pos, neg, mag = spec.orthogonal_decomposition(a, ctx.base)
        jp = ctx.base.map_for(p)
        tol = space.tol.eq_tol * (1.0 + sp.order_unit_norm(a))
        checks = (
            sp.order_unit_norm(a - (pos - neg)) <= tol,
            sp.in_cone(pos),
            sp.in_cone(neg),
            sp.order_unit_norm(jp.apply(pos) - pos) <= tol,
            sp.order_unit_norm(jp.apply(neg)) <= tol,
            sp.order_unit_norm(mag - pos - neg) <= tol,
        )
        if not all(checks):
            return _fail("sign_decomposition", {"a": a.data.tolist(), "checks": list(checks)}, n, ctx.seed)
    return _ok("sign_decomposition", n, ctx.seed)


def _alternative_sign_supports(a: AElem, ctx: Ctx) -> list[AElem]:
    """Other members of the sign-support family, by adjoining kernel pieces."""
    space = ctx.space
    base = ctx.base
    p = spec.p_pm(a, base)
    out = [p]
    one = sp.unit(space)
    if space.kind == sp.KIND_FN:
        zero_mask = (np.abs(a.data) <= space.tol.eq_tol).astype(float)
        if zero_mask.sum() > 0:
            out.append(AElem(space, np.minimum(p.data + zero_mask, 1.0)))
    elif space.kind == sp.KIND_JB:
        w, V = jbmod.jacobi_eigh(a.data, max_sweeps=space.tol.max_sweeps)
        scale = float(np.abs(w).max(initial=0.0))
        kernel_cols = V[:, np.abs(w) <= space.tol.eig_cut * (1.0 + scale)]
        if kernel_cols.shape[1] > 0:
            out.append(AElem(space, p.data + np.outer(kernel_cols[:, 0], kernel_cols[:, 0])))
    else:
        if sp.in_cone(a):
            out.append(one)
    return out


def _case_uniqueness(ctx: Ctx) -> CaseResult:
    """Every sign support produces the same decomposition and dominates the
    canonical least one."""
    space = ctx.space
    n = ctx.cap(60)
    for k in range(n):
        a = _element_with_kernel(space, ctx.rng)
        p = spec.p_pm(a, ctx.base)
        pos, _, _ = spec.orthogonal_decomposition(a, ctx.base)
        for q in _alternative_sign_supports(a, ctx):
            jq = ctx.base.map_for(q)
            jqc = ctx.base.map_for(sp.unit(space) - q)
            tol = 1e-9 * (1.0 + sp.order_unit_norm(a))
            if sp.cone_deficit(jq.apply(a)) > tol or sp.cone_deficit(-1.0 * jqc.apply(a)) > tol:
                return _fail("sign_support_invalid", {"a": a.data.tolist(), "q": q.data.tolist()}, n, ctx.seed)
            if sp.order_unit_norm(jq.apply(a) - pos) > tol:
                return _fail("decomposition_unique", {"a": a.data.tolist(), "q": q.data.tolist()}, n, ctx.seed)
            if not sp.leq(p, q):
                return _fail("support_least", {"a": a.data.tolist(), "q": q.data.tolist()}, n, ctx.seed)
    return _ok("decomposition_unique_and_least", n, ctx.seed)


def _element_with_kernel(space: ModelSpace, rng: np.random.Generator) -> AElem:
    a = sp.random_element(space, rng)
    if space.kind == sp.KIND_FN and space.n >= 2:
        data = np.array(a.data)
        data[rng.integers(0, space.n)] = 0.0
        return AElem(space, data)
    if space.kind == sp.KIND_JB and space.n >= 2:
        w, V = jbmod.jacobi_eigh(a.data, max_sweeps=space.tol.max_sweeps)
        w[rng.integers(0, space.n)] = 0.0
        return AElem(space, V @ np.diag(w) @ V.T)
    return a


def _case_annihilator(ctx: Ctx) -> CaseResult:
    """Monotonicity of the annihilator and its cover relation on effects."""
    space = ctx.space
    n = ctx.cap(60)
    one = sp.unit(space)
    for _ in range(n):
        e = sp.random_effect(space, ctx.rng)
        cover = spec.projection_cover(e, ctx.base)
        ann = spec.rickart_map(e, ctx.base)
        if sp.order_unit_norm((one - ann) - cover) > space.tol.eq_tol:
            return _fail("annihilator_vs_cover", {"e": e.data.tolist()}, n, ctx.seed)
        b = e + sp.random_effect(space, ctx.rng)
        if not sp.leq(spec.rickart_map(b, ctx.base), spec.rickart_map(e, ctx.base)):
            return _fail("annihilator_antitone", {"e": e.data.tolist(), "b": b.data.tolist()}, n, ctx.seed)
        if not comp.in_C(e, ann, ctx.base):
            return _fail("annihilator_compatible", {"e": e.data.tolist()}, n, ctx.seed)
    return _ok("annihilator_laws", n, ctx.seed)


def _case_resolution(ctx: Ctx) -> CaseResult:
    """Monotone resolutions that reconstruct within the mesh."""
    space = ctx.space
    n = ctx.cap(40)
    for _ in range(n):
        a = sp.random_element(space, ctx.rng)
        lo, hi = spec.spectral_bounds(a, ctx.base)
        grid = list(np.linspace(lo - 0.1, hi + 0.1, 7))
        sd = spec.spectral_resolution(a, ctx.base, grid)
        for (t1, p1), (t2, p2) in zip(sd.resolution, sd.resolution[1:]):
            if not sp.leq(p1, p2):
                return _fail("resolution_monotone", {"a": a.data.tolist(), "t": [t1, t2]}, n, ctx.seed)
        if sp.order_unit_norm(sd.resolution[0][1]) > space.tol.eq_tol:
            return _fail("resolution_zero_below", {"a": a.data.tolist()}, n, ctx.seed)
        if sp.order_unit_norm(sd.resolution[-1][1] - sp.unit(space)) > space.tol.eq_tol:
            return _fail("resolution_one_above", {"a": a.data.tolist()}, n, ctx.seed)
        approx, err = spec.riemann_reconstruct(a, ctx.base, 0.05)
        if err > 0.05:
            return _fail("riemann_bound", {"a": a.data.tolist(), "err": err}, n, ctx.seed)
        steps = spec.simple_approximation(a, ctx.base, 4)
        prev = None
        bound = 2.0 * sp.order_unit_norm(a)
        for k, ak in enumerate(steps, start=1):
            if prev is not None and not sp.leq(prev, ak):
                return _fail("simple_ascending", {"a": a.data.tolist(), "k": k}, n, ctx.seed)
            if not sp.leq(ak, a) or sp.order_unit_norm(a - ak) > bound * 2.0 ** (-k) + space.tol.eq_tol:
                return _fail("simple_bound", {"a": a.data.tolist(), "k": k}, n, ctx.seed)
            prev = ak
    return _ok("resolution_and_reconstruction", n, ctx.seed)


def _case_gencomp(ctx: Ctx) -> CaseResult:
    """The squeeze at the sign support dominates the element and zero."""
    space = ctx.space
    n = ctx.cap(60)
    for _ in range(n):
        a = sp.random_element(space, ctx.rng)
        r = spec.p_pm(a, ctx.base)
        jr = ctx.base.map_for(r)
        image = jr.apply(a)
        tol = 1e-9 * (1.0 + sp.order_unit_norm(a))
        if sp.cone_deficit(image) > tol or sp.cone_deficit(image - a) > tol:
            return _fail("least_compression_dominates", {"a": a.data.tolist()}, n, ctx.seed)
    return _ok("least_compression_dominates", n, ctx.seed)


def _case_oml(ctx: Ctx) -> CaseResult:
    """Weight-independent joins and the orthomodular law on sampled pairs."""
    space = ctx.space
    n = ctx.cap(40)
    one = sp.unit(space)
    for _ in range(n):
        if space.kind == sp.KIND_FN:
            p = AElem(space, (ctx.rng.uniform(size=space.n) < 0.5).astype(float))
            q_mask = np.maximum(p.data, (ctx.rng.uniform(size=space.n) < 0.5).astype(float))
            p_small, q_big = p, AElem(space, q_mask)
        elif space.kind == sp.KIND_JB:
            q_big = jbmod.random_projection(space, ctx.rng)
            g = sp.random_element(space, ctx.rng)
            inner = ctx.base.map_for(q_big).apply(g)
            p_small = jbmod.carrier(ctx.base.map_for(q_big).apply(
                AElem(space, inner.data @ inner.data)))
        else:
            p_small = csmod.random_sharp_focus(space, ctx.rng)
            q_big = one
        join = spec.oml_join(p_small, q_big, ctx.base)  # raises if weight-dependent
        meet = spec.oml_meet(q_big, one - p_small, ctx.base)
        recomposed = spec.oml_join(p_small, meet, ctx.base)
        if sp.order_unit_norm(recomposed - q_big) > 1e-9:
            return _fail(
                "orthomodular_law",
                {"p": p_small.data.tolist(), "q": q_big.data.tolist()},
                n,
                ctx.seed,
            )
        if sp.order_unit_norm(join - q_big) > 1e-9:
            return _fail("join_of_below", {"p": p_small.data.tolist()}, n, ctx.seed)
    return _ok("oml_structure", n, ctx.seed)


def _case_resolution_compat(ctx: Ctx) -> CaseResult:
    """Compatibility with a fixed projection passes to every resolution step."""
    space = ctx.space
    if space.kind == sp.KIND_CENSYM:
        return _ok("resolution_compat_skipped", 0, ctx.seed)
    n = ctx.cap(25)
    for _ in range(n):
        a = sp.random_element(space, ctx.rng)
        lo, hi = spec.spectral_bounds(a, ctx.base)
        grid = list(np.linspace(lo, hi + 1e-6, 5))
        sd = spec.spectral_resolution(a, ctx.base, grid)
        probes = comp.p_of(a, ctx.base)[:4]
        if space.kind == sp.KIND_JB:
            probes = probes + [jbmod.random_projection(space, ctx.rng)]
        for p in probes:
            lhs = comp.in_C(a, p, ctx.base)
            rhs = all(comp.in_C(step, p, ctx.base) for _, step in sd.resolution)
            if lhs != rhs:
                return _fail("resolution_compatibility", {"a": a.data.tolist(), "p": p.data.tolist()}, n, ctx.seed)
    return _ok("resolution_compatibility", n, ctx.seed)


# ---------------------------------------------------------------------------
# fn-oracle suite


def _case_oracle(ctx: Ctx) -> CaseResult:
    space = ctx.space
    n = ctx.cap(400)
    for _ in range(n):
        f = ctx.rng.standard_normal(space.n) * 2.0
        a = AElem(space, f)
        sd = spec.spectral_resolution(a, ctx.base, sorted(set(f.tolist())))
        oracle = fnspace.oracle_spectral(f, space.tol)
        pairs = [
            (sd.p_plus, oracle.p_plus),
            (sd.pos, oracle.pos),
            (sd.neg, oracle.neg),
            (sd.cover, oracle.cover),
            (sd.annihilator, oracle.annihilator),
        ] + [(p, q) for (_, p), (_, q) in zip(sd.resolution, oracle.resolution)]
        for got, want in pairs:
            if float(np.abs(got.data - want.data).max(initial=0.0)) > 1e-12:
                return _fail("oracle_equivalence", {"f": f.tolist()}, n, ctx.seed)
        if max(abs(sd.bounds[0] - oracle.bounds[0]), abs(sd.bounds[1] - oracle.bounds[1])) > 1e-12:
            return _fail("oracle_equivalence", {"f": f.tolist(), "part": "bounds"}, n, ctx.seed)
    return _ok("oracle_equivalence", n, ctx.seed)


def _case_mackey(ctx: Ctx) -> CaseResult:
    space = ctx.space
    n = ctx.cap(300)
    one = sp.unit(space)
    for _ in range(n):
        e = sp.random_effect(space, ctx.rng)
        g = sp.random_effect(space, ctx.rng)
        c, a1, b1 = fnspace.mackey_witness(e, g)
        tol = space.tol.eq_tol
        ok = (
            sp.is_effect(c)
            and sp.is_effect(a1)
            and sp.is_effect(b1)
            and sp.in_cone(one - (c + a1 + b1))
            and sp.order_unit_norm(e - (c + a1)) <= tol
            and sp.order_unit_norm(g - (c + b1)) <= tol
        )
        if not ok:
            return _fail("mackey_universal", {"e": e.data.tolist(), "g": g.data.tolist()}, n, ctx.seed)
    return _ok("mackey_universal", n, ctx.seed)


def _case_single_block(ctx: Ctx) -> CaseResult:
    space = ctx.space
    a = sp.random_element(space, ctx.rng)
    block = spec.c_block(a, ctx.base)
    ok = len(block.span_basis) == space.n
    if space.n <= 10:
        ok = ok and len(block.block) == 2**space.n
    return CaseResult("single_c_block", ok, None if ok else {"sizes": [len(block.block), len(block.span_basis)]}, 1, ctx.seed)


# ---------------------------------------------------------------------------
# jb suite


def _case_jordan(ctx: Ctx) -> CaseResult:
    space = ctx.space
    n = ctx.cap(400)
    for _ in range(n):
        a = sp.random_element(space, ctx.rng)
        b = sp.random_element(space, ctx.rng)
        sq = jbmod.jordan_product(a, a)
        lhs = jbmod.jordan_product(jbmod.jordan_product(sq, b), a)
        rhs = jbmod.jordan_product(sq, jbmod.jordan_product(b, a))
        scale = (1.0 + sp.order_unit_norm(a)) ** 3 * (1.0 + sp.order_unit_norm(b))
        if sp.order_unit_norm(lhs - rhs) > 1e-10 * scale:
            return _fail("jordan_identity", {"a": a.data.tolist(), "b": b.data.tolist()}, n, ctx.seed)
    return _ok("jordan_identity", n, ctx.seed)


def _case_peirce(ctx: Ctx) -> CaseResult:
    space = ctx.space
    n = ctx.cap(200)
    for _ in range(n):
        a = sp.random_element(space, ctx.rng)
        p = jbmod.random_projection(space, ctx.rng)
        a1, a2, a3 = jbmod.peirce_decompose(a, p)
        scale = 1.0 + sp.order_unit_norm(a)
        checks = (
            sp.order_unit_norm(a - a1 - a2 - a3) <= 1e-9 * scale,
            sp.order_unit_norm(jbmod.jordan_product(p, a2) - 0.5 * a2) <= 1e-9 * scale,
        )
        if not all(checks):
            return _fail("peirce_relations", {"a": a.data.tolist(), "p": p.data.tolist()}, n, ctx.seed)
    return _ok("peirce_relations", n, ctx.seed)


def _case_orthogonal_parts(ctx: Ctx) -> CaseResult:
    space = ctx.space
    n = ctx.cap(200)
    for _ in range(n):
        a = sp.random_element(space, ctx.rng)
        pos, neg, _ = spec.orthogonal_decomposition(a, ctx.base)
        if not jbmod.jb_orthogonal(pos, neg):
            return _fail("positive_parts_orthogonal", {"a": a.data.tolist()}, n, ctx.seed)
    return _ok("positive_parts_orthogonal", n, ctx.seed)


def _case_ordering_chain(ctx: Ctx) -> CaseResult:
    """Four equivalent forms of e <= p agree on in-face and random samples."""
    space = ctx.space
    n = ctx.cap(120)
    one = sp.unit(space)
    for _ in range(n):
        p = jbmod.random_projection(space, ctx.rng)
        up = jbmod.U_p_map(p)
        uq = jbmod.U_p_map(one - p)
        for e in (up.apply(sp.random_effect(space, ctx.rng)), sp.random_effect(space, ctx.rng)):
            tol = space.tol.eq_tol * 100.0
            below = sp.cone_deficit(p - e) <= tol
            fixed = sp.order_unit_norm(up.apply(e) - e) <= tol
            mult = sp.order_unit_norm(jbmod.jordan_product(p, e) - e) <= tol
            killed = sp.order_unit_norm(uq.apply(e)) <= tol
            if not (below == fixed == mult == killed):
                return _fail(
                    "ordering_equivalences",
                    {"p": p.data.tolist(), "e": e.data.tolist(),
                     "flags": [below, fixed, mult, killed]},
                    n, ctx.seed,
                )
    return _ok("ordering_equivalences", n, ctx.seed)


def _case_squeeze_forms(ctx: Ctx) -> CaseResult:
    """The Jordan form 2p.(p.a) - p.a equals the two-sided squeeze pap, and
    rebuilding the map yields the same matrix."""
    space = ctx.space
    n = ctx.cap(100)
    for _ in range(n):
        p = jbmod.random_projection(space, ctx.rng)
        J = jbmod.U_p_map(p)
        a = sp.random_element(space, ctx.rng)
        jordan_form = 2.0 * jbmod.jordan_product(p, jbmod.jordan_product(p, a)) - jbmod.jordan_product(p, a)
        if sp.order_unit_norm(jordan_form - J.apply(a)) > 1e-9 * (1.0 + sp.order_unit_norm(a)):
            return _fail("squeeze_forms_agree", {"p": p.data.tolist(), "a": a.data.tolist()}, n, ctx.seed)
        if J.distance(jbmod.U_p_map(p)) > space.tol.eq_tol:
            return _fail("squeeze_unique", {"p": p.data.tolist()}, n, ctx.seed)
    return _ok("squeeze_forms_agree", n, ctx.seed)


def _case_annihilator_consistency(ctx: Ctx) -> CaseResult:
    space = ctx.space
    n = ctx.cap(12)
    for _ in range(n):
        x = sp.random_positive(space, ctx.rng)
        rep = jbmod.rickart_A1_check(x, trials=ctx.cap(60), seed=ctx.seed)
        if not rep.ok:
            return _fail("annihilator_consistency", {"x": x.data.tolist()}, n, ctx.seed)
    return _ok("annihilator_consistency", n, ctx.seed)


def _case_eig_quality(ctx: Ctx) -> CaseResult:
    space = ctx.space
    n = ctx.cap(150)
    for _ in range(n):
        a = sp.random_element(space, ctx.rng)
        w, V = jbmod.eig(a)
        scale = max(1.0, float(np.abs(w).max(initial=0.0)))
        recon = float(np.abs(V @ np.diag(w) @ V.T - a.data).max())
        ortho = float(np.abs(V.T @ V - np.eye(space.n)).max())
        if recon > 1e-10 * scale or ortho > 1e-10:
            return _fail("eig_reconstruction", {"a": a.data.tolist(), "recon": recon, "ortho": ortho}, n, ctx.seed)
    return _ok("eig_reconstruction", n, ctx.seed)


def _case_eigen_cross(ctx: Ctx) -> CaseResult:
    """Resolution steps match cumulative eigenprojections from the
    independent LAPACK-backed oracle."""
    space = ctx.space
    n = ctx.cap(120)
    for _ in range(n):
        a = sp.random_element(space, ctx.rng)
        w_np = np.linalg.eigvalsh(a.data)
        vals, vecs = np.linalg.eigh(a.data)
        mids = [(vals[i] + vals[i + 1]) / 2.0 for i in range(len(vals) - 1)]
        grid = [vals[0] - 0.5] + mids + [vals[-1] + 0.5]
        sd = spec.spectral_resolution(a, ctx.base, grid)
        for t, p in sd.resolution:
            cols = vecs[:, w_np <= t]
            target = cols @ cols.T
            if float(np.abs(p.data - target).max(initial=0.0)) > 1e-8:
                return _fail("eigen_cross_check", {"a": a.data.tolist(), "t": t}, n, ctx.seed)
    return _ok("eigen_cross_check", n, ctx.seed)


# ---------------------------------------------------------------------------
# censym suite


def _case_cs_sharp(ctx: Ctx) -> CaseResult:
    """Three equivalent forms of sharpness on sampled effects."""
    space = ctx.space
    one = sp.unit(space)
    n = ctx.cap(3000)
    tol = space.tol.eq_tol
    for _ in range(n):
        e = sp.random_effect(space, ctx.rng)
        sharp = sp.is_sharp(e)
        nrm_form = (
            sp.order_unit_norm(e) <= tol
            or sp.order_unit_norm(one - e) <= tol
            or (abs(sp.order_unit_norm(e) - 1.0) <= tol and abs(sp.order_unit_norm(one - e) - 1.0) <= tol)
        )
        coord_form = (
            sp.order_unit_norm(e) <= tol
            or sp.order_unit_norm(one - e) <= tol
            or (abs(e.a0 - 0.5) <= tol and abs(fams.dual_norm(space.family, e.y) - 0.5) <= tol)
        )
        if not (sharp == nrm_form == coord_form):
            return _fail("sharp_characterization", {"e": e.data.tolist()}, n, ctx.seed)
    return _ok("sharp_characterization", n, ctx.seed)


def _case_cs_onedim(ctx: Ctx) -> CaseResult:
    """Extremal atoms have one-dimensional lower intervals."""
    space = ctx.space
    n = ctx.cap(150)
    tol = space.tol.eq_tol
    for _ in range(n):
        p = csmod.random_sharp_focus(space, ctx.rng)
        if not sp.is_extremal(p):
            continue
        t = float(ctx.rng.uniform(0.0, 1.0))
        b = t * p
        if not (sp.in_cone(b) and sp.leq(b, p)):
            return _fail("atom_multiples_below", {"p": p.data.tolist(), "t": t}, n, ctx.seed)
        if abs(2.0 * b.a0 - t) > tol:
            return _fail("atom_scalar_recovery", {"p": p.data.tolist(), "t": t}, n, ctx.seed)
        d = ctx.rng.standard_normal(space.n)
        d = d - (float(np.dot(d, p.y)) / float(np.dot(p.y, p.y))) * p.y
        nd = fams.dual_norm(space.family, d)
        if nd > tol:
            b_bad = AElem(space, b.data + np.concatenate([[0.0], (0.05 / nd) * d]))
            if sp.in_cone(b_bad) and sp.leq(b_bad, p):
                return _fail("atom_interval_fat", {"p": p.data.tolist()}, n, ctx.seed)
    return _ok("one_dimensional_atoms", n, ctx.seed)


def _case_cs_classify(ctx: Ctx) -> CaseResult:
    """Built maps obey their classification."""
    space = ctx.space
    n = ctx.cap(60)
    for _ in range(n):
        p = csmod.random_sharp_focus(space, ctx.rng)
        if not sp.is_extremal(p):
            cls = csmod.classify_focus(space, p)
            if cls.kind != "retraction_only":
                return _fail("classify_nonextremal", {"p": p.data.tolist(), "kind": cls.kind}, n, ctx.seed)
            continue
        cls = csmod.classify_focus(space, p)
        J = csmod.build_retraction(space, p, cls.dual_face.representative())
        verdict = comp.check_F_axioms(J, trials=30, seed=ctx.seed)
        if not verdict.retraction:
            return _fail("retraction_axioms", {"p": p.data.tolist()}, n, ctx.seed)
        if cls.kind == "compression" and not (verdict.f_compression and comp.is_compression(J)):
            return _fail("classified_compression", {"p": p.data.tolist()}, n, ctx.seed)
        if cls.kind == "f_compression" and not verdict.f_compression:
            return _fail("classified_kernel_axiom", {"p": p.data.tolist()}, n, ctx.seed)
    return _ok("classification_consistency", n, ctx.seed)


def _case_cs_dichotomy(ctx: Ctx) -> CaseResult:
    space = ctx.space
    fam = space.family
    built = csmod.build_spectral_base(fam, space.tol, ctx.seed)
    if not fam.smooth:
        ok = isinstance(built, csmod.SpectralBaseUnavailable)
        return CaseResult("dichotomy_nonsmooth", ok, None if ok else {"family": fam.label}, 1, ctx.seed)
    if isinstance(built, csmod.SpectralBaseUnavailable):
        return _fail("dichotomy_smooth", {"family": fam.label}, 1, ctx.seed)
    n = ctx.cap(200)
    for _ in range(n):
        a = sp.random_element(space, ctx.rng)
        _, err = spec.riemann_reconstruct(a, built, 0.05)
        if err > 0.05:
            return _fail("dichotomy_pipeline", {"a": a.data.tolist(), "err": err}, n, ctx.seed)
    decision = csmod.decide_spectral_duality(fam, space.tol)
    if fam.strictly_convex:
        ok = decision.spectral_duality
        return CaseResult("dichotomy_smooth_strict", ok, None, n, ctx.seed)
    ok = not decision.spectral_duality and len(decision.witness_maps) == 2
    if ok:
        J1, J2 = decision.witness_maps
        ok = (
            J1.distance(J2) >= 0.1
            and comp.check_F_axioms(J1, 40, ctx.seed).f_compression
            and comp.check_F_axioms(J2, 40, ctx.seed).f_compression
            and not comp.is_compression(J1)
            and not comp.is_compression(J2)
        )
    return CaseResult("dichotomy_smooth_nonstrict", ok, None, n, ctx.seed)


def _case_cs_faces(ctx: Ctx) -> CaseResult:
    """Closed-form faces attain their defining equalities."""
    space = ctx.space
    fam = space.family
    n = ctx.cap(300)
    for _ in range(n):
        y = ctx.rng.standard_normal(space.n)
        if fams.dual_norm(fam, y) <= 1e-9:
            continue
        face = fams.dual_face(fam, y, space.tol.eq_tol)
        for x in face.members():
            if fams.primal_norm(fam, x) > 1.0 + 1e-7:
                return _fail("dual_face_in_ball", {"y": y.tolist(), "x": x.tolist()}, n, ctx.seed)
            if abs(float(np.dot(y, x)) - fams.dual_norm(fam, y)) > 1e-7:
                return _fail("dual_face_attains", {"y": y.tolist(), "x": x.tolist()}, n, ctx.seed)
        x0 = ctx.rng.standard_normal(space.n)
        if fams.primal_norm(fam, x0) <= 1e-9:
            continue
        pface = fams.primal_face(fam, x0, space.tol.eq_tol)
        for yy in pface.members():
            if fams.dual_norm(fam, yy) > 1.0 + 1e-7:
                return _fail("primal_face_in_ball", {"x": x0.tolist(), "y": yy.tolist()}, n, ctx.seed)
            if abs(float(np.dot(yy, x0)) - fams.primal_norm(fam, x0)) > 1e-6 * (1.0 + float(np.abs(x0).max())):
                return _fail("primal_face_attains", {"x": x0.tolist(), "y": yy.tolist()}, n, ctx.seed)
    return _ok("face_duality", n, ctx.seed)


_CASES: dict[str, Callable[[ModelSpace], list[tuple[str, Callable[[Ctx], CaseResult]]]]] = {}


def _register() -> None:
    _CASES["core"] = lambda space: [
        ("unit_element", _case_unit),
        ("duality_norm_sup", _case_duality_sup),
        ("principal_implies_sharp", _case_principal_sharp),
        ("states_normalized", _case_states),
        ("cone_pointed", _case_pointed),
    ]
    _CASES["compressions"] = lambda space: [
        ("member_axioms", _case_member_axioms),
        ("norm_contraction", _case_contraction),
        ("complementary_pair", _case_complements),
        ("squeeze_additivity", _case_additivity),
        ("pc_lattice", _case_bicommutant),
        ("base_axioms", _case_base_axioms),
    ]

    def spectral_cases(space: ModelSpace):
        if space.kind == sp.KIND_CENSYM and not space.family.smooth:
            return [("comparability_unavailable_expected", _case_unavailable)]
        return [
            ("sign_decomposition", _case_decomposition),
            ("decomposition_unique_and_least", _case_uniqueness),
            ("annihilator_laws", _case_annihilator),
            ("resolution_and_reconstruction", _case_resolution),
            ("least_compression_dominates", _case_gencomp),
            ("oml_structure", _case_oml),
            ("resolution_compatibility", _case_resolution_compat),
        ]

    _CASES["spectral"] = spectral_cases
    _CASES["fn-oracle"] = lambda space: [
        ("oracle_equivalence", _case_oracle),
        ("mackey_universal", _case_mackey),
        ("single_c_block", _case_single_block),
    ]
    _CASES["jb"] = lambda space: [
        ("jordan_identity", _case_jordan),
        ("peirce_relations", _case_peirce),
        ("positive_parts_orthogonal", _case_orthogonal_parts),
        ("ordering_equivalences", _case_ordering_chain),
        ("squeeze_forms_agree", _case_squeeze_forms),
        ("annihilator_consistency", _case_annihilator_consistency),
        ("eig_reconstruction", _case_eig_quality),
        ("eigen_cross_check", _case_eigen_cross),
    ]
    _CASES["censym"] = lambda space: [
        ("sharp_characterization", _case_cs_sharp),
        ("one_dimensional_atoms", _case_cs_onedim),
        ("classification_consistency", _case_cs_classify),
        ("spectral_dichotomy", _case_cs_dichotomy),
        ("face_duality", _case_cs_faces),
    ]


_register()
