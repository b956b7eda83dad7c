"""F_q-linear sets L_f = {<(x, f(x))>} of rank n on PG(1, q^n).

The weight of <(1, m)> is dim ker(f - m x); it is computed for every m by a
batched rank computation over F_p (ranks over F_p are h times ranks over F_q).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from . import fplinalg
from .field import FieldCtx
from .linpoly import LinPoly

DEFAULT_SWEEP_BUDGET = 2**30
DEFAULT_CHUNK = 2**15

INFINITY = None  # the point <(0, 1)>


class BudgetExceeded(RuntimeError):
    pass


class InvalidParameter(ValueError):
    pass


@dataclass(frozen=True)
class LinearSetSpec:
    ctx: FieldCtx
    f: LinPoly

    @classmethod
    def of(cls, f: LinPoly) -> "LinearSetSpec":
        return cls(f.ctx, f)


@dataclass
class WeightSpectrum:
    """Number of points of L_f per weight w >= 1."""

    counts: dict[int, int]
    q: int
    n: int

    @property
    def size(self) -> int:
        return sum(self.counts.values())

    @property
    def max_weight(self) -> int:
        return max(self.counts) if self.counts else 0

    def mass(self) -> int:
        return sum(c * (self.q**w - 1) for w, c in self.counts.items())

    def mass_ok(self) -> bool:
        return self.mass() == self.q**self.n - 1

    def to_json(self) -> dict:
        return {str(w): c for w, c in sorted(self.counts.items())}


@dataclass
class ScatteredVerdict:
    scattered: bool
    witness: int | None = None
    witness_weight: int | None = None
    spectrum: WeightSpectrum | None = None
    checked: int = 0
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"verdict": "scattered" if self.scattered else "not_scattered",
               "checked": self.checked}
        if self.witness is not None:
            out["witness"] = {"m": self.witness, "weight": self.witness_weight}
        if self.spectrum is not None:
            out["spectrum"] = self.spectrum.to_json()
        return out


def _check_budget(ctx: FieldCtx, budget: int, force: bool) -> None:
    if ctx.order > budget and not force:
        raise BudgetExceeded(
            f"q^n = {ctx.order} exceeds the sweep budget {budget}; pass force=True")


class _WeightSweeper:
    """Batched evaluation of m -> dim ker(f - m x)."""

    def __init__(self, f: LinPoly):
        ctx = f.ctx
        self.ctx = ctx
        d = ctx.degree
        self.fmat = np.asarray(f.fp_matrix, dtype=np.int64)
        mt = np.stack([np.asarray(ctx.mul_matrix(ctx.p**j), dtype=np.int64) for j in range(d)])
        self.mt = mt.reshape(d, d * d)
        self.inv = fplinalg.inverse_table(ctx.p)

    def weights(self, ms: np.ndarray) -> np.ndarray:
        ctx = self.ctx
        d = ctx.degree
        dig = ctx.to_digits(ms)
        mats = (self.fmat.reshape(1, d * d) - dig @ self.mt) % ctx.p
        rk = fplinalg.batched_rank(mats.reshape(-1, d, d), ctx.p, self.inv)
        return (d - rk) // ctx.h


def _chunks(order: int, chunk: int) -> Iterator[np.ndarray]:
    for start in range(0, order, chunk):
        yield np.arange(start, min(order, start + chunk), dtype=np.int64)


def _sweep(f: LinPoly, chunk: int, threads: int, stop: Callable[[np.ndarray, np.ndarray], bool]):
    sweeper = _WeightSweeper(f)
    order = f.ctx.order
    if threads <= 1:
        for ms in _chunks(order, chunk):
            if stop(ms, sweeper.weights(ms)):
                return
        return
    # chunks are submitted in canonical order and consumed in that order
    with ThreadPoolExecutor(max_workers=threads) as pool:
        it = _chunks(order, chunk)
        pending = []
        for ms in it:
            pending.append((ms, pool.submit(sweeper.weights, ms)))
            if len(pending) >= 2 * threads:
                ms0, fut = pending.pop(0)
                if stop(ms0, fut.result()):
                    return
        for ms0, fut in pending:
            if stop(ms0, fut.result()):
                return


def point_weight(spec: LinearSetSpec, m: int | None) -> int:
    """Weight of <(1, m)>; ``m=None`` stands for <(0, 1)>."""
    if m is INFINITY:
        return 0
    ctx = spec.ctx
    return (spec.f - LinPoly.monomial(ctx, 0, m)).kernel_dim()


def weight_spectrum(spec: LinearSetSpec, *, budget: int = DEFAULT_SWEEP_BUDGET,
                    force: bool = False, chunk: int = DEFAULT_CHUNK,
                    threads: int = 1) -> WeightSpectrum:
    ctx = spec.ctx
    _check_budget(ctx, budget, force)
    total = np.zeros(ctx.n + 1, dtype=np.int64)

    def acc(ms, w):
        total[:] += np.bincount(w, minlength=ctx.n + 1)
        return False

    _sweep(spec.f, chunk, threads, acc)
    counts = {w: int(total[w]) for w in range(1, ctx.n + 1) if total[w]}
    return WeightSpectrum(counts, ctx.q, ctx.n)


def is_scattered(spec: LinearSetSpec, *, spectrum: bool = False,
                 budget: int = DEFAULT_SWEEP_BUDGET, force: bool = False,
                 chunk: int = DEFAULT_CHUNK, threads: int = 1) -> ScatteredVerdict:
    """Decide scatteredness by sweeping all m.

    Without ``spectrum`` the sweep stops at the first chunk holding a point
    of weight >= 2 and reports the least such m (canonical element order).
    """
    ctx = spec.ctx
    _check_budget(ctx, budget, force)
    if spectrum:
        spec_w = weight_spectrum(spec, budget=budget, force=force, chunk=chunk, threads=threads)
        witness = weight = None
        if spec_w.max_weight > 1:
            witness, weight = _first_heavy(spec, chunk)
        return ScatteredVerdict(spec_w.max_weight <= 1, witness, weight, spec_w, ctx.order)
    state = {"witness": None, "weight": None, "checked": 0}

    def stop(ms, w):
        state["checked"] += len(ms)
        heavy = np.nonzero(w >= 2)[0]
        if heavy.size:
            state["witness"] = int(ms[heavy[0]])
            state["weight"] = int(w[heavy[0]])
            return True
        return False

    _sweep(spec.f, chunk, threads, stop)
    return ScatteredVerdict(state["witness"] is None, state["witness"], state["weight"],
                            None, state["checked"])


def _first_heavy(spec: LinearSetSpec, chunk: int) -> tuple[int, int]:
    found: list[tuple[int, int]] = []

    def stop(ms, w):
        heavy = np.nonzero(w >= 2)[0]
        if heavy.size:
            found.append((int(ms[heavy[0]]), int(w[heavy[0]])))
            return True
        return False

    _sweep(spec.f, chunk, 1, stop)
    return found[0]


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def is_subfield_linear(f: LinPoly, ell: int) -> bool:
    """True iff f(lam x) = lam f(x) for every lam in F_{q^ell}."""
    ctx = f.ctx
    for lam in ctx.subfield_fp_basis(ell):
        tau = LinPoly.monomial(ctx, 0, lam)
        if f.compose(tau) != tau.compose(f):
            return False
    return True


def max_field_of_linearity(spec: LinearSetSpec, *, budget: int = DEFAULT_SWEEP_BUDGET,
                           force: bool = False) -> int:
    """Largest ell | n with U_f closed under F_{q^ell} and all weights divisible by ell."""
    ctx = spec.ctx
    _check_budget(ctx, budget, force)
    spectrum = None
    for ell in sorted(divisors(ctx.n), reverse=True):
        if not is_subfield_linear(spec.f, ell):
            continue
        if ell == 1:
            return 1
        if spectrum is None:
            spectrum = weight_spectrum(spec, budget=budget, force=force)
        if all(w % ell == 0 for w in spectrum.counts):
            return ell
    return 1


# -- catalogue of maximum scattered families in PG(1, q^6) -----------------------


def new_scattered_poly(ctx: FieldCtx) -> LinPoly:
    """x^q - x^{q^2} + x^{q^4} + x^{q^5} (n = 6)."""
    if ctx.n != 6:
        raise InvalidParameter("this polynomial is defined for n = 6")
    m1 = ctx.neg(1)
    return LinPoly.from_terms(ctx, {1: 1, 2: m1, 4: 1, 5: 1})


def lp_poly(ctx: FieldCtx, s: int, delta: int) -> LinPoly:
    """delta x^{q^s} + x^{q^{n-s}}."""
    return LinPoly.from_terms(ctx, {s % ctx.n: delta, (ctx.n - s) % ctx.n: 1})


@dataclass(frozen=True)
class CatalogFamily:
    """One family of known maximum scattered subspaces of F_{q^6}^2."""

    name: str
    formula: str
    condition: str
    needs_delta: bool
    _build: Callable[[FieldCtx, int | None], LinPoly]
    _valid: Callable[[FieldCtx, int | None], bool]

    def is_valid(self, ctx: FieldCtx, delta: int | None = None) -> bool:
        return self._valid(ctx, delta)

    def polynomial(self, ctx: FieldCtx, delta: int | None = None) -> LinPoly:
        if not self.is_valid(ctx, delta):
            raise InvalidParameter(f"{self.name}: delta={delta} violates {self.condition}")
        return self._build(ctx, delta)

    def instance(self, ctx: FieldCtx, delta: int | None = None) -> LinearSetSpec:
        return LinearSetSpec.of(self.polynomial(ctx, delta))

    def valid_deltas(self, ctx: FieldCtx) -> Iterator[int]:
        if not self.needs_delta:
            return iter(())
        return (d for d in range(1, ctx.order) if self.is_valid(ctx, d))


def _u2_valid(ctx, delta):
    return delta is not None and ctx.norm(delta) not in (0, 1)


def _u3_valid(ctx, delta):
    return delta is not None and ctx.norm(delta, sub=3) not in (0, 1)


def _u4_valid(ctx, delta):
    if delta is None or ctx.p == 2:
        return False
    return ctx.add(ctx.mul(delta, delta), delta) == 1


def known_catalog(ctx: FieldCtx) -> list[CatalogFamily]:
    """The four families U^1..U^4 of maximum scattered subspaces for n = 6.

    U^3 is only checked against its norm condition; the further
    restrictions on (delta, q) that make it scattered are not encoded.
    """
    if ctx.n != 6:
        raise InvalidParameter("the catalogue is defined for n = 6")
    return [
        CatalogFamily("U1", "x^q", "none", False,
                      lambda c, d: LinPoly.monomial(c, 1), lambda c, d: True),
        CatalogFamily("U2", "delta x^q + x^q^5", "N_{q^6/q}(delta) not in {0,1}", True,
                      lambda c, d: lp_poly(c, 1, d), _u2_valid),
        CatalogFamily("U3", "delta x^q + x^q^4", "N_{q^6/q^3}(delta) not in {0,1}", True,
                      lambda c, d: LinPoly.from_terms(c, {1: d, 4: 1}), _u3_valid),
        CatalogFamily("U4", "x^q + x^q^3 + delta x^q^5", "q odd and delta^2 + delta = 1", True,
                      lambda c, d: LinPoly.from_terms(c, {1: 1, 3: 1, 5: d}), _u4_valid),
    ]


def catalog_family(ctx: FieldCtx, name: str) -> CatalogFamily:
    for fam in known_catalog(ctx):
        if fam.name == name:
            return fam
    raise KeyError(name)


def golden_deltas(ctx: FieldCtx) -> list[int]:
    """Roots of delta^2 + delta = 1 in F_{q^n} (q odd), sorted."""
    if ctx.p == 2:
        return []
    # roots lie in F_{q^2}, so a scan of that subfield suffices
    roots = []
    cands = ctx.subfield_elements(2) if ctx.n % 2 == 0 else ctx.fq_elements
    for d in cands:
        if ctx.add(ctx.mul(d, d), d) == 1:
            roots.append(d)
    return sorted(roots)


def scattered_size(q: int, n: int) -> int:
    return (q**n - 1) // (q - 1)


def log_q(q: int, v: int) -> int:
    w = round(math.log(v, q))
    if q**w != v:
        raise ValueError(f"{v} is not a power of {q}")
    return w
