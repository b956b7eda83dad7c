"""GammaL(2, q^n)-equivalence of graph subspaces U_f = {(x, f(x))}.

U_f maps to U_h under (x, y) -> (a x^sig + b y^sig, c x^sig + d y^sig) iff,
with g = f^sig (coefficients moved by sig) and y = x^sig,

    c y + d g(y) = h(a y + b g(y))   for all y.

Comparing coefficients of y^{q^i} gives n equations that are F_q-linear in
the unknowns (a, b, c, d); each unknown enters through a q-polynomial.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .field import FieldCtx
from .linpoly import LinPoly

UNKNOWNS = ("a", "b", "c", "d")
DEFAULT_BUDGET = 2**26
EXHAUSTIVE_VERIFY = 2**20
VERIFY_SAMPLES = 10_000


@dataclass(frozen=True)
class Equation:
    """sum_u terms[u](u) = 0."""

    terms: tuple[tuple[str, LinPoly], ...]

    def get(self, u: str) -> LinPoly | None:
        for name, poly in self.terms:
            if name == u:
                return poly
        return None

    @property
    def unknowns(self) -> list[str]:
        return [u for u, _ in self.terms]

    def is_trivial(self) -> bool:
        return not self.terms

    def render(self) -> str:
        parts = []
        for u, poly in self.terms:
            for e, c in enumerate(poly.coeffs):
                if c:
                    mono = u if e == 0 else (f"{u}^q" if e == 1 else f"{u}^q^{e}")
                    parts.append(mono if c == 1 else f"[{c}]{mono}")
        return (" + ".join(parts) or "0") + " = 0"


def _equation(ctx: FieldCtx, parts: dict[str, LinPoly]) -> Equation:
    return Equation(tuple((u, parts[u]) for u in UNKNOWNS if u in parts and not parts[u].is_zero()))


@dataclass
class SemilinearSystem:
    ctx: FieldCtx
    sigma_exponent: int  # the automorphism x -> x^{p^j}
    equations: list[Equation]
    f: LinPoly
    h: LinPoly

    def render(self) -> list[str]:
        return [e.render() for e in self.equations]

    def residual(self, values: dict[str, int]) -> list[int]:
        ctx = self.ctx
        return [ctx.sum(poly(values[u]) for u, poly in eq.terms) for eq in self.equations]

    def key(self) -> tuple:
        return tuple(tuple((u, p.coeffs) for u, p in eq.terms) for eq in self.equations)


def build_system(f: LinPoly, h: LinPoly, j: int = 0) -> SemilinearSystem:
    """Coefficient of y^{q^i} in c y + d g(y) - h(a y + b g(y)), i = 0..n-1, g = f^sig."""
    ctx = f.ctx
    n = ctx.n
    g = f.sigma(j)
    eqs = []
    for i in range(n):
        a_terms: dict[int, int] = {}
        b_terms: dict[int, int] = {}
        # h_e (a y)^{q^e} contributes -h_e a^{q^e} at i = e
        if h.coeffs[i]:
            a_terms[i] = ctx.neg(h.coeffs[i])
        # h_e (b g_m y^{q^m})^{q^e} contributes -h_e g_m^{q^e} b^{q^e} at i = m + e
        for e in range(n):
            he = h.coeffs[e]
            gm = g.coeffs[(i - e) % n]
            if he and gm:
                b_terms[e] = ctx.sub(b_terms.get(e, 0), ctx.mul(he, ctx.frobenius(gm, e)))
        parts = {
            "a": LinPoly.from_terms(ctx, a_terms),
            "b": LinPoly.from_terms(ctx, b_terms),
            "c": LinPoly.monomial(ctx, 0, 1 if i == 0 else 0),
            "d": LinPoly.monomial(ctx, 0, g.coeffs[i]),
        }
        eqs.append(_equation(ctx, parts))
    return SemilinearSystem(ctx, j, eqs, f, h)


# -- elimination ------------------------------------------------------------------------


@dataclass
class Elimination:
    order: tuple[str, ...]  # priority order used
    steps: list[tuple[str, int, dict[str, LinPoly]]]  # (u, equation index, u = sum M_v(v))
    remaining: list[Equation]
    free: list[str]


def _monomial_exponent(poly: LinPoly) -> tuple[int, int] | None:
    nz = [(e, c) for e, c in enumerate(poly.coeffs) if c]
    return nz[0] if len(nz) == 1 else None


def _substitute(ctx: FieldCtx, eq: Equation, u: str, expr: dict[str, LinPoly]) -> Equation:
    parts: dict[str, LinPoly] = {}
    for v, poly in eq.terms:
        if v == u:
            continue
        parts[v] = poly
    lu = eq.get(u)
    if lu is not None:
        for v, m in expr.items():
            comp = lu.compose(m)
            parts[v] = parts[v] + comp if v in parts else comp
    return _equation(ctx, parts)


def eliminate(sys: SemilinearSystem, order: Sequence[str] = UNKNOWNS) -> Elimination:
    """Greedy elimination of unknowns through monomial occurrences u^{q^e} = E(others).

    The unique q^e-th root gives u = E^{q^{n-e}}. Unknowns are tried in
    ``order``; each pass picks the first eliminable one.
    """
    ctx = sys.ctx
    n = ctx.n
    eqs = [e for e in sys.equations if not e.is_trivial()]
    steps: list[tuple[str, int, dict[str, LinPoly]]] = []
    done: set[str] = set()
    progress = True
    while progress:
        progress = False
        for u in order:
            if u in done:
                continue
            hit = None
            for k, eq in enumerate(eqs):
                lu = eq.get(u)
                if lu is not None and _monomial_exponent(lu) is not None:
                    hit = k
                    break
            if hit is None:
                continue
            eq = eqs.pop(hit)
            e, c = _monomial_exponent(eq.get(u))
            scale = ctx.neg(ctx.inv(c))
            expr = {v: poly.scale(scale).twist(n - e) for v, poly in eq.terms if v != u}
            steps.append((u, hit, expr))
            done.add(u)
            eqs = [_substitute(ctx, other, u, expr) for other in eqs]
            eqs = [x for x in eqs if not x.is_trivial()]
            progress = True
            break
    free = [u for u in UNKNOWNS if u not in done]
    return Elimination(tuple(order), steps, eqs, free)


def best_elimination(sys: SemilinearSystem) -> Elimination:
    """Fewest free unknowns over all priority orders; ties go to the earliest order."""
    best = None
    for order in itertools.permutations(UNKNOWNS):
        el = eliminate(sys, order)
        if best is None or len(el.free) < len(best.free):
            best = el
    return best


# -- solving -----------------------------------------------------------------------------


@dataclass
class Witness:
    sigma_exponent: int
    a: int
    b: int
    c: int
    d: int

    def to_json(self) -> dict:
        return {"sigma": self.sigma_exponent, "a": self.a, "b": self.b, "c": self.c, "d": self.d}


@dataclass
class EquivVerdict:
    status: str  # equivalent | inequivalent_exhausted | inconclusive_budget
    witnesses: list[Witness] = field(default_factory=list)
    search_log: list[dict] = field(default_factory=list)
    caveat: str | None = None

    @property
    def equivalent(self) -> bool:
        return self.status == "equivalent"

    def to_json(self) -> dict:
        out = {"status": self.status, "witnesses": [w.to_json() for w in self.witnesses],
               "search_log": self.search_log}
        if self.caveat:
            out["caveat"] = self.caveat
        return out


def _eval_expr(ctx: FieldCtx, expr: dict[str, LinPoly], values: dict[str, np.ndarray],
               size: int) -> np.ndarray:
    acc = np.zeros(size, dtype=np.int64)
    for v, poly in expr.items():
        acc = ctx.add_array(acc, poly.eval_array(values[v]))
    return acc


def solve_system(sys: SemilinearSystem, *, budget: int = DEFAULT_BUDGET,
                 max_witnesses: int = 4, chunk: int = 2**18) -> EquivVerdict:
    """Eliminate, then sweep every assignment of the free unknowns.

    Every solution with ad - bc != 0 is a witness. The verdict is
    ``inequivalent_exhausted`` only after the sweep covered all assignments.
    """
    ctx = sys.ctx
    el = best_elimination(sys)
    nfree = len(el.free)
    total = ctx.order**nfree
    log = {"sigma": sys.sigma_exponent, "eliminated": [s[0] for s in el.steps],
           "free": el.free, "remaining_equations": len(el.remaining)}
    if nfree == 0:
        log.update({"swept": 1, "solutions": 1, "invertible": 0})
        return EquivVerdict("inequivalent_exhausted", [], [log])
    if total > budget:
        log.update({"swept": 0, "reason": f"{total} assignments exceed budget {budget}"})
        return EquivVerdict("inconclusive_budget", [], [log])
    witnesses: list[Witness] = []
    n_sol = n_inv = 0
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        values: dict[str, np.ndarray] = {}
        rem = idx.copy()
        for u in reversed(el.free):
            values[u] = rem % ctx.order
            rem //= ctx.order
        ok = np.ones(idx.size, dtype=bool)
        for eq in el.remaining:
            ok &= _eval_expr(ctx, dict(eq.terms), values, idx.size) == 0
        if not ok.any():
            continue
        values = {u: v[ok] for u, v in values.items()}
        m = int(ok.sum())
        for u, _, expr in reversed(el.steps):
            values[u] = _eval_expr(ctx, expr, values, m)
        a, b, c, d = (values[u] for u in UNKNOWNS)
        det = ctx.add_array(ctx.mul_array(a, d), ctx.neg_array(ctx.mul_array(b, c)))
        good = np.nonzero(det != 0)[0]
        n_sol += m
        n_inv += good.size
        for i in good[: max_witnesses - len(witnesses)]:
            witnesses.append(Witness(sys.sigma_exponent, int(a[i]), int(b[i]), int(c[i]), int(d[i])))
    log.update({"swept": total, "solutions": n_sol, "invertible": n_inv})
    status = "equivalent" if witnesses else "inequivalent_exhausted"
    return EquivVerdict(status, witnesses, [log])


def verify_witness(f: LinPoly, h: LinPoly, w: Witness, *, rng=None) -> bool:
    """Check (a x^sig + b f(x)^sig, c x^sig + d f(x)^sig) in U_h on all or sampled x."""
    ctx = f.ctx
    if ctx.sub(ctx.mul(w.a, w.d), ctx.mul(w.b, w.c)) == 0:
        return False
    if ctx.order <= EXHAUSTIVE_VERIFY:
        xs = np.arange(ctx.order, dtype=np.int64)
    else:
        rng = rng or np.random.default_rng(0)
        xs = rng.integers(0, ctx.order, size=VERIFY_SAMPLES, dtype=np.int64)
    sig = np.asarray(ctx.pfrob_matrix(w.sigma_exponent))
    xsig = ctx.apply_fp(sig, xs)
    fsig = ctx.apply_fp(sig, f.eval_array(xs))
    z = ctx.add_array(ctx.mul_array(np.full_like(xs, w.a), xsig), ctx.mul_array(np.full_like(xs, w.b), fsig))
    rhs = ctx.add_array(ctx.mul_array(np.full_like(xs, w.c), xsig), ctx.mul_array(np.full_like(xs, w.d), fsig))
    return bool(np.all(h.eval_array(z) == rhs))


def gl_equivalent(f: LinPoly, h: LinPoly, *, budget: int = DEFAULT_BUDGET,
                  automorphisms: Sequence[int] | None = None) -> EquivVerdict:
    """Search all automorphisms x -> x^{p^j} (j < hn) for a GammaL map U_f -> U_h."""
    ctx = f.ctx
    js = list(range(ctx.degree)) if automorphisms is None else list(automorphisms)
    seen: dict[tuple, int] = {}
    results: dict[int, EquivVerdict] = {}
    witnesses: list[Witness] = []
    log: list[dict] = []
    inconclusive = False
    for j in js:
        sys = build_system(f, h, j)
        key = sys.key()
        if key in seen:
            prev = results[seen[key]]
            log.append({"sigma": j, "same_system_as": seen[key]})
            # the system does not depend on sig here; witnesses carry over with sig = j
            witnesses.extend(Witness(j, w.a, w.b, w.c, w.d) for w in prev.witnesses[:1])
            continue
        seen[key] = j
        v = solve_system(sys, budget=budget)
        results[j] = v
        log.extend(v.search_log)
        inconclusive |= v.status == "inconclusive_budget"
        witnesses.extend(v.witnesses)
    witnesses = [w for w in witnesses if verify_witness(f, h, w)]
    if witnesses:
        return EquivVerdict("equivalent", witnesses, log)
    return EquivVerdict("inconclusive_budget" if inconclusive else "inequivalent_exhausted", [], log)


COMPLETE_N = {2, 3, 4, 5, 6, 8}


def pgl_linear_set_equivalent(f: LinPoly, h: LinPoly, *, budget: int = DEFAULT_BUDGET) -> EquivVerdict:
    """L_f vs L_h through the two representatives U_f and U_{adjoint f}."""
    ctx = f.ctx
    first = gl_equivalent(f, h, budget=budget)
    for entry in first.search_log:
        entry["representative"] = "f"
    if first.equivalent:
        return first
    second = gl_equivalent(f.adjoint(), h, budget=budget)
    for entry in second.search_log:
        entry["representative"] = "adjoint"
    log = first.search_log + second.search_log
    if second.equivalent:
        return EquivVerdict("equivalent", second.witnesses, log)
    status = ("inconclusive_budget" if "inconclusive_budget" in (first.status, second.status)
              else "inequivalent_exhausted")
    caveat = None
    if ctx.n not in COMPLETE_N:
        caveat = f"two-representative test is not known to be complete for n={ctx.n}"
    return EquivVerdict(status, [], log, caveat)


# -- exact solution space (independent route) ------------------------------------------------


def solution_space_dim(sys: SemilinearSystem) -> int:
    """dim_{F_q} of the solution set in (a, b, c, d), from one F_p-kernel."""
    from . import fplinalg

    ctx = sys.ctx
    d = ctx.degree
    rows = []
    for eq in sys.equations:
        block = np.zeros((d, 4 * d), dtype=np.int64)
        for u, poly in eq.terms:
            i = UNKNOWNS.index(u)
            block[:, i * d:(i + 1) * d] = poly.fp_matrix
        rows.append(block)
    if not rows:
        return 4 * ctx.n
    mat = np.concatenate(rows, axis=0)
    return fplinalg.nullspace(mat, ctx.p, ncols=4 * d).shape[0] // ctx.h
