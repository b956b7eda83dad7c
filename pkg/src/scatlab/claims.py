"""Registry of reproducible claims and the harness that runs them.

Each claim is a named, exact check returning (passed, certificate). The
harness filters by suite and q, runs claims (optionally in a thread pool) and
assembles a schema-versioned report.
"""

from __future__ import annotations

import math
import platform
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import geometry as geo
from . import rmcode as rm
from .equiv import Witness, build_system, gl_equivalent, pgl_linear_set_equivalent, verify_witness
from .field import FieldCtx, field_for_q
from .linpoly import LinPoly
from .linset import (LinearSetSpec, catalog_family, golden_deltas, is_scattered, lp_poly,
                     new_scattered_poly)

SCHEMA = "scatlab.report/1"
SUITES = ("scattered", "equivalence", "geometry", "mrd")
DEFAULT_QMAX = 13
DEFAULT_BUDGET = 2**30


@dataclass
class RunConfig:
    budget: int = DEFAULT_BUDGET
    threads: int = 1
    force: bool = False
    seed: int = 0
    samples: int = 8

    def rng(self, salt: int = 0):
        return np.random.default_rng([self.seed, salt])


@dataclass
class Claim:
    id: str
    suite: str
    statement: str
    run: Callable[[RunConfig], tuple[bool, dict]]
    q: int | None = None
    extended: bool = False
    estimate_s: float | None = None  # rough single-core runtime, shown before extended runs


@dataclass
class ClaimResult:
    id: str
    suite: str
    statement: str
    verdict: str  # pass | fail | error
    runtime_s: float
    certificate: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"id": self.id, "suite": self.suite, "statement": self.statement,
                "verdict": self.verdict, "runtime_s": round(self.runtime_s, 3),
                "certificate": self.certificate}


# -- individual checks (also used directly by the acceptance tests) -------------------------


def check_new_family_scattered(q: int, cfg: RunConfig | None = None) -> tuple[bool, dict]:
    cfg = cfg or RunConfig()
    ctx = field_for_q(q, 6)
    f = new_scattered_poly(ctx)
    v = is_scattered(LinearSetSpec.of(f), budget=cfg.budget, force=cfg.force, threads=cfg.threads)
    return v.scattered, {"field": ctx.descriptor(), "poly": f.to_json(), **v.to_json()}


def check_lp_dichotomy(q: int = 3, n: int = 5) -> tuple[bool, dict]:
    """is_scattered(delta x^{q^s} + x^{q^{n-s}}) iff N(delta) != 1, for all delta != 0."""
    ctx = field_for_q(q, n)
    mismatches = []
    counts = {}
    for s in range(1, n):
        if math.gcd(s, n) != 1:
            continue
        yes = 0
        for delta in range(1, ctx.order):
            scat = is_scattered(LinearSetSpec.of(lp_poly(ctx, s, delta))).scattered
            yes += scat
            if scat != (ctx.norm(delta) != 1):
                mismatches.append({"s": s, "delta": delta})
        counts[s] = {"deltas": ctx.order - 1, "scattered": yes}
    return not mismatches, {"field": ctx.descriptor(), "per_s": counts, "mismatches": mismatches[:10]}


def check_new_vertex(q: int) -> tuple[bool, dict]:
    ctx = field_for_q(q, 6)
    G, axis = geo.new_family_vertex(ctx)
    cert: dict = {"field": ctx.descriptor(), "vertex": G.to_json()}
    cert["meets_subgeometry"] = geo.meets_subgeometry(G)
    cert["chain_dims_s1"] = geo.chain_dims(G, 1, 2)
    cert["intn"] = {s: geo.intersection_number(G, s) for s in (1, 5)}
    proj = geo.project(G, axis, force=True)
    f = new_scattered_poly(ctx)
    target = geo.linset_points(f)
    cert["projection_poly"] = proj.as_linpoly().to_json() if proj.as_linpoly() else None
    cert["projection_points"] = len(proj.points)
    cert["projection_equals_linear_set"] = proj.points == target
    ok = (cert["meets_subgeometry"] is None and cert["chain_dims_s1"][1] == 1
          and cert["chain_dims_s1"][2] == -1 and cert["intn"] == {1: 3, 5: 3}
          and cert["projection_equals_linear_set"])
    return ok, cert


def check_witness_q5() -> tuple[bool, dict]:
    ctx = field_for_q(5, 6)
    f = new_scattered_poly(ctx)
    h = catalog_family(ctx, "U4").polynomial(ctx, 2)
    sysm = build_system(f, h, 0)
    a, b, c, d = ctx.neg(1), 1, 3, 3
    res = sysm.residual({"a": a, "b": b, "c": c, "d": d})
    det = ctx.sub(ctx.mul(a, d), ctx.mul(b, c))
    w_ok = verify_witness(f, h, Witness(0, a, b, c, d))
    v = pgl_linear_set_equivalent(f, h)
    ok = all(r == 0 for r in res) and det != 0 and w_ok and v.equivalent
    return ok, {"system": sysm.render(), "residual": res, "det": det, "map_verified": w_ok,
                "pgl": v.to_json()}


def check_trinomial_systems(q: int, cfg: RunConfig | None = None) -> tuple[bool, dict]:
    """The systems against U^4_delta are empty over all automorphisms, both golden deltas."""
    cfg = cfg or RunConfig()
    ctx = field_for_q(q, 6)
    f = new_scattered_poly(ctx)
    fam = catalog_family(ctx, "U4")
    out = {}
    ok = True
    for delta in golden_deltas(ctx):
        h = fam.polynomial(ctx, delta)
        for name, g in (("f", f), ("adjoint", f.adjoint())):
            v = gl_equivalent(g, h, budget=cfg.budget)
            out[f"{delta}/{name}"] = {"status": v.status, "log": v.search_log}
            ok &= v.status == "inequivalent_exhausted"
    return ok, {"field": ctx.descriptor(), "delta_condition": fam.condition,
                "deltas": golden_deltas(ctx), "systems": out}


def check_binomial_system_all(q: int = 5) -> tuple[bool, dict]:
    """The system against U^3_delta is empty for every admissible delta."""
    ctx = field_for_q(q, 6)
    f = new_scattered_poly(ctx)
    fam = catalog_family(ctx, "U3")
    bad = []
    n = 0
    for delta in fam.valid_deltas(ctx):
        n += 1
        h = fam.polynomial(ctx, delta)
        v = gl_equivalent(f, h, automorphisms=[0])
        if v.status != "inequivalent_exhausted":
            bad.append({"delta": delta, "status": v.status})
    # f has F_p-coefficients, so every automorphism yields the same system
    h0 = fam.polynomial(ctx, next(fam.valid_deltas(ctx)))
    key0 = build_system(f, h0, 0).key()
    same = all(build_system(f, h0, j).key() == key0 for j in range(ctx.degree))
    return not bad and same, {"field": ctx.descriptor(), "delta_condition": fam.condition,
                              "deltas_checked": n,
                              "automorphism_invariant": same, "failures": bad[:10]}


def check_catalog_inequivalence(q: int, cfg: RunConfig | None = None) -> tuple[bool, dict]:
    cfg = cfg or RunConfig()
    ctx = field_for_q(q, 6)
    f = new_scattered_poly(ctx)
    rng = cfg.rng(q)
    out = {}
    conditions = {}
    ok = True
    for fam in (catalog_family(ctx, n) for n in ("U1", "U2", "U3", "U4")):
        if not fam.needs_delta:
            deltas = [None]
        elif fam.name == "U4":
            deltas = golden_deltas(ctx)
        else:
            deltas = _sample_deltas(ctx, fam, cfg.samples, rng)
        rows = []
        for delta in deltas:
            v = pgl_linear_set_equivalent(f, fam.polynomial(ctx, delta), budget=cfg.budget)
            rows.append({"delta": delta, "status": v.status})
            ok &= v.status == "inequivalent_exhausted"
        out[fam.name] = rows
        conditions[fam.name] = fam.condition
    return ok, {"field": ctx.descriptor(), "families": out, "delta_conditions": conditions}


def _sample_deltas(ctx: FieldCtx, fam, k: int, rng) -> list[int]:
    out: list[int] = []
    while len(out) < k:
        d = int(rng.integers(1, ctx.order))
        if fam.is_valid(ctx, d) and d not in out:
            out.append(d)
    return out


def check_code_L() -> tuple[bool, dict]:
    ctx = field_for_q(5, 6)
    C = rm.code_from_subspace(new_scattered_poly(ctx))
    d = rm.min_distance(C)
    mrd = rm.is_mrd(C)
    L = rm.left_idealiser(C)
    ok = d == 5 and mrd and L.is_field and L.field_degree == 6
    return ok, {"code": C.to_json(), "min_distance": d, "mrd": mrd, "left_idealiser": L.to_json()}


def check_mrd_bridge(q: int = 3, n: int = 4) -> tuple[bool, dict]:
    """is_mrd(C_f) iff is_scattered(f) for all f = x^{q^a} + lam x^{q^b}, a != b."""
    ctx = field_for_q(q, n)
    rows = 0
    mism = []
    agree = {"both": 0, "neither": 0}
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            for lam in range(1, ctx.order):
                f = LinPoly.from_terms(ctx, {a: 1, b: lam})
                m = rm.is_mrd(rm.code_from_subspace(f))
                s = is_scattered(LinearSetSpec.of(f)).scattered
                rows += 1
                agree["both" if m else "neither"] += m == s
                if m != s:
                    mism.append({"a": a, "b": b, "lam": lam, "mrd": m, "scattered": s})
    return not mism, {"field": ctx.descriptor(), "binomials": rows, "agree": agree,
                      "mismatches": mism[:10]}


def check_recognition(cfg: RunConfig | None = None) -> tuple[bool, dict]:
    cfg = cfg or RunConfig()
    rng = cfg.rng(7)
    cert: dict = {"gabidulin": [], "twisted_rejected": [], "twisted_accepted": [], "idealisers": []}
    ok = True
    for n in (4, 5, 6):
        ctx = field_for_q(3, n)
        for k in range(1, n):
            for s in range(1, n):
                if math.gcd(s, n) != 1:
                    continue
                found = rm.gabidulin_recognize(rm.gabidulin(ctx, k, s))
                cert["gabidulin"].append({"n": n, "k": k, "s": s, "found": found})
                ok &= s in found
                if 2 <= k <= n - 2:
                    eta = _random_eta(ctx, k, rng)
                    found = rm.gabidulin_recognize(rm.twisted_gabidulin(ctx, k, s, eta))
                    cert["twisted_rejected"].append({"n": n, "k": k, "s": s, "eta": eta, "found": found})
                    ok &= not found
    ctx = field_for_q(3, 6)
    for _ in range(3):
        eta = _random_eta(ctx, 3, rng)
        rep = rm.twisted_recognize(rm.twisted_gabidulin(ctx, 3, 1, eta))
        cert["twisted_accepted"].append({"eta": eta, **rep.to_json()})
        ok &= rep.recognized
    k, s = 3, 1
    eta = _random_eta(ctx, k, rng)
    for h in range(4):
        C = rm.twisted_gabidulin(ctx, k, s, eta, h)
        L, R = rm.left_idealiser(C), rm.right_idealiser(C)
        want_l, want_r = math.gcd(ctx.n, h), math.gcd(ctx.n, s * k - h)
        good = L.field_degree == want_l and R.field_degree == want_r
        cert["idealisers"].append({"h": h, "left": L.to_json(), "right": R.to_json(),
                                   "expected": [want_l, want_r], "match": good})
        ok &= good
    return ok, cert


def _random_eta(ctx: FieldCtx, k: int, rng) -> int:
    while True:
        eta = int(rng.integers(1, ctx.order))
        if rm.eta_is_valid(ctx, k, eta):
            return eta


def check_duality(cfg: RunConfig | None = None, n_random: int = 200) -> tuple[bool, dict]:
    cfg = cfg or RunConfig()
    rng = cfg.rng(11)
    ctx = field_for_q(3, 4)
    N = ctx.n * ctx.n
    bad_dim = bad_double = 0
    for _ in range(n_random):
        C = rm.random_code(ctx, int(rng.integers(0, N + 1)), rng)
        D = rm.delsarte_dual(C)
        bad_dim += C.dim_fq + D.dim_fq != N
        bad_double += rm.delsarte_dual(D) != C
    b3 = ctx.random_element(rng, nonzero=True)
    f = LinPoly.from_terms(ctx, {1: 1, 3: b3})
    C = rm.RMCode.fqn_span(ctx, [LinPoly.identity(ctx), f])
    hspan = rm.RMCode.fqn_span(ctx, rm.h_polynomials(f, 1))
    h_ok = rm.delsarte_dual(C) == hspan
    gab = []
    for n in (4, 5, 6):
        c2 = field_for_q(3, n)
        for k in range(1, n):
            for s in range(1, n):
                if math.gcd(s, n) == 1:
                    found = rm.gabidulin_recognize(rm.delsarte_dual(rm.gabidulin(c2, k, s)))
                    dual_k = rm.delsarte_dual(rm.gabidulin(c2, k, s)).dim_fqn
                    gab.append({"n": n, "k": k, "s": s, "dual_dim": dual_k, "found": found,
                                "ok": dual_k == n - k and s in found})
    ok = not bad_dim and not bad_double and h_ok and all(g["ok"] for g in gab)
    return ok, {"random_codes": n_random, "dim_failures": bad_dim, "double_dual_failures": bad_double,
                "b3": b3, "h_polynomial_dual": h_ok, "gabidulin_duals": gab}


def check_lp_roundtrip(q: int, n_deltas: int = 50, cfg: RunConfig | None = None) -> tuple[bool, dict]:
    cfg = cfg or RunConfig()
    rng = cfg.rng(100 + q)
    ctx = field_for_q(q, 6)
    fam = catalog_family(ctx, "U2")
    rows = []
    ok = True
    for delta in _sample_deltas(ctx, fam, n_deltas, rng):
        G, axis = geo.lp_vertex(ctx, 1, delta)
        v = geo.lp_criterion(G, 1)
        got = v.details.get("delta")
        proj = geo.project(G, axis, budget=0).as_linpoly()
        good = v.verdict is True and got == delta and proj == lp_poly(ctx, 1, delta)
        rows.append({"delta": delta, "recovered": got, "projection_matches": proj == lp_poly(ctx, 1, delta)})
        ok &= good
    return ok, {"field": ctx.descriptor(), "rows": rows}


def check_pseudoregulus_criterion(q: int = 3) -> tuple[bool, dict]:
    ctx = field_for_q(q, 6)
    G, _ = geo.pseudoregulus_vertex(ctx)
    acc = geo.pseudoregulus_criterion(G)
    Glp, _ = geo.lp_vertex(ctx, 1, _first_valid(ctx, "U2"))
    rej_lp = geo.pseudoregulus_criterion(Glp)
    cert = {"pseudoregulus": acc.to_json(), "lp": rej_lp.to_json()}
    ok = acc.verdict is True and rej_lp.verdict is False
    c5 = field_for_q(5, 6)
    with _quiet():
        Gn, _ = geo.new_family_vertex(c5)
    rej_new = geo.pseudoregulus_criterion(Gn)
    cert["new_vertex_q5"] = rej_new.to_json()
    ok &= rej_new.verdict is False
    return ok, cert


def _first_valid(ctx: FieldCtx, name: str) -> int:
    return next(catalog_family(ctx, name).valid_deltas(ctx))


def check_charact2(q: int = 3, n: int = 5) -> tuple[bool, dict]:
    """Verdict equals N(delta) != 1 on LP vertices, for all delta with the criterion applicable."""
    ctx = field_for_q(q, n)
    rows = mism = 0
    skipped = 0
    bad = []
    for delta in range(1, ctx.order):
        G, _ = geo.lp_vertex(ctx, 1, delta)
        try:
            v = geo.charact2_criterion(G, 1)
        except geo.HypothesisViolated:
            skipped += 1
            continue
        rows += 1
        expect = ctx.norm(delta) != 1
        if v.verdict != expect:
            mism += 1
            bad.append(delta)
    return mism == 0 and rows > 0, {"field": ctx.descriptor(), "checked": rows,
                                    "not_applicable": skipped, "mismatches": bad[:10]}


class _quiet:
    def __enter__(self):
        import warnings

        self._cm = warnings.catch_warnings()
        self._cm.__enter__()
        warnings.simplefilter("ignore")

    def __exit__(self, *exc):
        return self._cm.__exit__(*exc)


# -- registry ------------------------------------------------------------------------------


# seconds per q^6 field elements, fitted on single-core runs at q = 13 and q = 17
_SWEEP_RATE = {"scattered": 6.1e-6, "trinomial": 5.3e-6, "catalog": 2.9e-5}


def _estimate(kind: str, q: int) -> float:
    return round(_SWEEP_RATE[kind] * q**6, 0)


def registry(extended: bool = False) -> list[Claim]:
    claims: list[Claim] = []
    for q in (5, 9, 13, 17, 25, 29):
        claims.append(Claim(f"scattered.new_family.q{q}", "scattered",
                            f"x^q - x^q^2 + x^q^4 + x^q^5 is scattered over F_{q}^6",
                            lambda cfg, q=q: check_new_family_scattered(q, cfg), q, q > 13,
                            _estimate("scattered", q)))
    claims.append(Claim("scattered.lp_dichotomy.n5q3", "scattered",
                        "LP binomials over F_3^5 are scattered exactly when N(delta) != 1",
                        lambda cfg: check_lp_dichotomy(), 3))
    for q in (5, 9):
        claims.append(Claim(f"geometry.new_vertex.q{q}", "geometry",
                            "the vertex misses Sigma, has intersection number 3 and projects onto the new linear set",
                            lambda cfg, q=q: check_new_vertex(q), q))
    for q in (3, 5):
        claims.append(Claim(f"geometry.lp_roundtrip.q{q}", "geometry",
                            "the LP criterion recovers delta from the LP vertex",
                            lambda cfg, q=q: check_lp_roundtrip(q, cfg=cfg), q))
    claims.append(Claim("geometry.pseudoregulus_criterion", "geometry",
                        "the pseudoregulus criterion accepts <e_2..e_5> and rejects other vertices",
                        lambda cfg: check_pseudoregulus_criterion(), 5))
    claims.append(Claim("geometry.odd_n_criterion.n5q3", "geometry",
                        "the odd-n harmonic criterion agrees with N(delta) != 1",
                        lambda cfg: check_charact2(), 3))
    claims.append(Claim("equivalence.witness.q5", "equivalence",
                        "at q = 5 the new linear set is equivalent to L^4_2 via (a,b,c,d) = (-1,1,3,3)",
                        lambda cfg: check_witness_q5(), 5))
    claims.append(Claim("equivalence.binomial_system.q5", "equivalence",
                        "no semilinear map takes the new subspace to U^3_delta, any admissible delta",
                        lambda cfg: check_binomial_system_all(5), 5))
    for q in (9, 13, 17):
        claims.append(Claim(f"equivalence.trinomial_systems.q{q}", "equivalence",
                            "no semilinear map takes the new subspace or its adjoint to U^4_delta",
                            lambda cfg, q=q: check_trinomial_systems(q, cfg), q, q > 13,
                            _estimate("trinomial", q)))
        claims.append(Claim(f"equivalence.catalog.q{q}", "equivalence",
                            "the new linear set is inequivalent to every catalog family",
                            lambda cfg, q=q: check_catalog_inequivalence(q, cfg), q, q > 13,
                            _estimate("catalog", q)))
    claims.append(Claim("mrd.new_code.q5", "mrd",
                        "<x, f>_{F_q^6} is MRD with d = 5 and left idealiser F_q^6",
                        lambda cfg: check_code_L(), 5))
    claims.append(Claim("mrd.bridge.n4q3", "mrd",
                        "C_f is MRD exactly when f is scattered, all binomials over F_3^4",
                        lambda cfg: check_mrd_bridge(), 3))
    claims.append(Claim("mrd.recognition", "mrd",
                        "Gabidulin and twisted Gabidulin recognizers and idealiser types",
                        lambda cfg: check_recognition(cfg), 3))
    claims.append(Claim("mrd.duality", "mrd",
                        "Delsarte duality dimensions, involution and closure of Gabidulin codes",
                        lambda cfg: check_duality(cfg), 3))
    return [c for c in claims if extended or not c.extended]


def select(suite: str, qmax: int = DEFAULT_QMAX, extended: bool = False) -> list[Claim]:
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    out = []
    for c in registry(extended):
        if suite != "all" and c.suite != suite:
            continue
        if c.q is not None and c.q > qmax and not (extended and c.extended):
            continue
        out.append(c)
    return out


def run_claim(c: Claim, cfg: RunConfig) -> ClaimResult:
    t0 = time.perf_counter()
    try:
        ok, cert = c.run(cfg)
        verdict = "pass" if ok else "fail"
    except Exception as exc:  # a crashing claim is reported, not fatal to the run
        cert = {"error": f"{type(exc).__name__}: {exc}"}
        verdict = "error"
    return ClaimResult(c.id, c.suite, c.statement, verdict, time.perf_counter() - t0, cert)


def run_reproduction(suite: str = "all", *, qmax: int = DEFAULT_QMAX, extended: bool = False,
                     cfg: RunConfig | None = None, workers: int = 1,
                     progress: Callable[[ClaimResult], None] | None = None) -> dict:
    cfg = cfg or RunConfig()
    claims = select(suite, qmax, extended)
    t0 = time.perf_counter()
    results: list[ClaimResult] = []
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for r in pool.map(lambda c: run_claim(c, cfg), claims):
                results.append(r)
                if progress:
                    progress(r)
    else:
        for c in claims:
            r = run_claim(c, cfg)
            results.append(r)
            if progress:
                progress(r)
    return {
        "schema": SCHEMA,
        "suite": suite,
        "qmax": qmax,
        "extended": extended,
        "config": {"budget": cfg.budget, "threads": cfg.threads, "seed": cfg.seed,
                   "samples": cfg.samples, "force": cfg.force},
        "environment": {"python": platform.python_version(), "numpy": np.__version__},
        "claims": [r.to_json() for r in results],
        "passed": all(r.verdict == "pass" for r in results),
        "runtime_s": round(time.perf_counter() - t0, 3),
    }
