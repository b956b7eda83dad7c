"""F_q-linear rank-metric codes as subspaces of L_{n,q}.

A code is stored as the F_p-row space (reduced echelon form) of the
coefficient digit vectors of its elements: a q-polynomial sum f_i x^{q^i}
becomes the concatenation of the power-basis digits of f_0, ..., f_{n-1}.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import fplinalg, fqnlinalg
from .field import FieldCtx
from .linpoly import LinPoly

DEFAULT_RANK_BUDGET = 2**26


class BudgetExceeded(RuntimeError):
    pass


class InvalidEta(ValueError):
    pass


class NotLeftLinear(ValueError):
    pass


def _block_diag(blocks: Sequence[np.ndarray]) -> np.ndarray:
    d = blocks[0].shape[0]
    out = np.zeros((d * len(blocks), d * len(blocks)), dtype=np.int64)
    for i, b in enumerate(blocks):
        out[i * d:(i + 1) * d, i * d:(i + 1) * d] = b
    return out


class RMCode:
    """An F_q-subspace of L_{n,q}."""

    def __init__(self, ctx: FieldCtx, fp_basis):
        self.ctx = ctx
        d = ctx.degree
        arr = np.asarray(fp_basis, dtype=np.int64).reshape(-1, ctx.n * d)
        self.fp_basis = fplinalg.row_space(arr, ctx.p) if arr.shape[0] else arr
        if self.fp_basis.shape[0] % ctx.h:
            raise ValueError("not an F_q-subspace")

    # -- constructors ------------------------------------------------------------

    @classmethod
    def fq_span(cls, ctx: FieldCtx, gens: Sequence[LinPoly]) -> "RMCode":
        lam = ctx.subfield_fp_basis(1)
        rows = [g.scale(l).fp_vector() for g in gens for l in lam]
        return cls(ctx, np.array(rows).reshape(len(rows), ctx.n * ctx.degree))

    @classmethod
    def fqn_span(cls, ctx: FieldCtx, gens: Sequence[LinPoly]) -> "RMCode":
        lam = ctx.subfield_fp_basis(ctx.n)
        rows = [g.scale(l).fp_vector() for g in gens for l in lam]
        return cls(ctx, np.array(rows).reshape(len(rows), ctx.n * ctx.degree))

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "RMCode":
        return cls(ctx, np.zeros((0, ctx.n * ctx.degree), dtype=np.int64))

    @classmethod
    def full(cls, ctx: FieldCtx) -> "RMCode":
        return cls(ctx, np.eye(ctx.n * ctx.degree, dtype=np.int64))

    # -- basic data -----------------------------------------------------------------

    @property
    def dim_fq(self) -> int:
        return self.fp_basis.shape[0] // self.ctx.h

    @property
    def size_log_q(self) -> int:
        return self.dim_fq

    def __eq__(self, other) -> bool:
        return (isinstance(other, RMCode) and self.ctx == other.ctx
                and self.fp_basis.shape == other.fp_basis.shape
                and bool(np.all(self.fp_basis == other.fp_basis)))

    def __hash__(self):
        return hash((self.ctx, self.fp_basis.tobytes()))

    def __repr__(self) -> str:
        extra = f", dim_fqn={self.dim_fqn}" if self.is_fqn_left_linear else ""
        return f"RMCode(n={self.ctx.n}, q={self.ctx.q}, dim_fq={self.dim_fq}{extra})"

    def contains(self, f: LinPoly) -> bool:
        if self.fp_basis.shape[0] == 0:
            return f.is_zero()
        return fplinalg.in_row_space(f.fp_vector(), self.fp_basis, self.ctx.p)

    def contains_code(self, other: "RMCode") -> bool:
        stacked = np.concatenate([self.fp_basis, other.fp_basis], axis=0)
        return fplinalg.rank(stacked, self.ctx.p) == self.fp_basis.shape[0]

    def elements_fp(self) -> list[LinPoly]:
        return [LinPoly.from_fp_vector(self.ctx, row) for row in self.fp_basis]

    @functools.cached_property
    def fq_basis(self) -> list[LinPoly]:
        """An F_q-basis of the code."""
        ctx = self.ctx
        lam = ctx.subfield_fp_basis(1)
        chosen: list[LinPoly] = []
        rows = np.zeros((0, ctx.n * ctx.degree), dtype=np.int64)
        for g in self.elements_fp():
            cand = np.concatenate([rows, np.array([g.scale(l).fp_vector() for l in lam])])
            if fplinalg.rank(cand, ctx.p) > rows.shape[0]:
                chosen.append(g)
                rows = fplinalg.row_space(cand, ctx.p)
        return chosen

    # -- left linearity -------------------------------------------------------------

    def _left_scalar_map(self, alpha: int) -> np.ndarray:
        ctx = self.ctx
        return _block_diag([np.asarray(ctx.mul_matrix(alpha), dtype=np.int64)] * ctx.n)

    @functools.cached_property
    def is_fqn_left_linear(self) -> bool:
        """Closed under f -> alpha f for a generator alpha of F_{q^n} over F_p."""
        ctx = self.ctx
        if self.fp_basis.shape[0] == 0:
            return True
        gen = ctx.p if ctx.degree > 1 else 1
        img = (self.fp_basis @ self._left_scalar_map(gen).T) % ctx.p
        return self.contains_code(RMCode(ctx, img))

    @functools.cached_property
    def fqn_basis(self) -> list[LinPoly]:
        if not self.is_fqn_left_linear:
            raise NotLeftLinear("code is not F_{q^n}-linear on the left")
        ctx = self.ctx
        chosen: list[LinPoly] = []
        for g in self.elements_fp():
            if fqnlinalg.rank(ctx, [list(c.coeffs) for c in chosen + [g]]) > len(chosen):
                chosen.append(g)
        return chosen

    @property
    def dim_fqn(self) -> int | None:
        return len(self.fqn_basis) if self.is_fqn_left_linear else None

    @property
    def generators(self) -> list[LinPoly]:
        return self.fqn_basis if self.is_fqn_left_linear else self.fq_basis

    def to_json(self) -> dict:
        out = {"n": self.ctx.n, "q": self.ctx.q, "dim_fq": self.dim_fq,
               "left_linear": self.is_fqn_left_linear,
               "generators": [g.to_json() for g in self.generators]}
        if self.is_fqn_left_linear:
            out["dim_fqn"] = self.dim_fqn
        return out


# -- constructors ----------------------------------------------------------------------


def code_from_subspace(f: LinPoly) -> RMCode:
    """C_f = <x, f(x)>_{F_{q^n}}."""
    return RMCode.fqn_span(f.ctx, [LinPoly.identity(f.ctx), f])


def gabidulin(ctx: FieldCtx, k: int, s: int) -> RMCode:
    _check_family(ctx, k, s)
    return RMCode.fqn_span(ctx, [LinPoly.monomial(ctx, s * i) for i in range(k)])


def eta_is_valid(ctx: FieldCtx, k: int, eta: int) -> bool:
    sign = 1 if (ctx.n * k) % 2 == 0 else ctx.neg(1)
    return ctx.norm(eta) != sign


def twisted_gabidulin(ctx: FieldCtx, k: int, s: int, eta: int, h: int = 0) -> RMCode:
    """{a_0 x + a_1 x^{q^s} + ... + a_{k-1} x^{q^{s(k-1)}} + a_0^{q^h} eta x^{q^{sk}}}."""
    _check_family(ctx, k, s)
    if eta and not eta_is_valid(ctx, k, eta):
        raise InvalidEta(f"N(eta) = (-1)^(nk) for eta={eta}")
    gens = []
    for lam in ctx.subfield_fp_basis(ctx.n):
        gens.append(LinPoly.from_terms(ctx, {0: lam, s * k: ctx.mul(ctx.frobenius(lam, h), eta)}))
        for i in range(1, k):
            gens.append(LinPoly.monomial(ctx, s * i, lam))
    return RMCode(ctx, np.array([g.fp_vector() for g in gens]))


def _check_family(ctx: FieldCtx, k: int, s: int) -> None:
    if math.gcd(s, ctx.n) != 1:
        raise ValueError(f"gcd(s, n) must be 1 (s={s}, n={ctx.n})")
    if not 1 <= k <= ctx.n - 1:
        raise ValueError(f"need 1 <= k <= n-1 (k={k})")


def random_code(ctx: FieldCtx, dim_fq: int, rng) -> RMCode:
    gens = [LinPoly(ctx, tuple(ctx.random_element(rng) for _ in range(ctx.n)))
            for _ in range(dim_fq)]
    return RMCode.fq_span(ctx, gens)


# -- rank distribution --------------------------------------------------------------------


@dataclass
class RankDistribution:
    counts: dict[int, int]  # rank -> number of nonzero codewords
    min_distance: int
    representatives: int

    def to_json(self) -> dict:
        return {"min_distance": self.min_distance,
                "distribution": {str(r): c for r, c in sorted(self.counts.items())}}


def _projective_blocks(m: int, base: int, chunk: int) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (lead, free) where free holds index vectors for the positions after lead."""
    for lead in range(m):
        free = m - lead - 1
        total = base**free
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            cols = np.zeros((idx.size, free), dtype=np.int64)
            rem = idx.copy()
            for j in range(free - 1, -1, -1):
                cols[:, j] = rem % base
                rem //= base
            yield lead, cols


def rank_distribution(C: RMCode, *, budget: int = DEFAULT_RANK_BUDGET, chunk: int = 2**14) -> RankDistribution:
    """Ranks of all nonzero codewords via projective representatives.

    Left-linear codes use one representative per F_{q^n}-multiple class,
    other codes one per F_q-multiple class.
    """
    ctx = C.ctx
    d = ctx.degree
    p = ctx.p
    inv = fplinalg.inverse_table(p)
    if C.dim_fq == 0:
        return RankDistribution({}, 0, 0)
    if C.is_fqn_left_linear:
        gens = C.fqn_basis
        base = ctx.order
        scale = ctx.order - 1
        gm = [np.asarray(g.fp_matrix, dtype=np.int64) for g in gens]
        mt = [np.asarray(ctx.mul_matrix(p**j), dtype=np.int64) for j in range(d)]
        # K[i] has shape (d, d*d): digit j of the coefficient times M(t^j) G_i
        K = [np.stack([(m @ g) % p for m in mt]).reshape(d, d * d) for g in gm]

        def combine(i, idx):
            return ctx.to_digits(idx) @ K[i]
    else:
        gens = C.fq_basis
        elems = np.array(ctx.fq_elements, dtype=np.int64)
        base = ctx.q
        scale = ctx.q - 1
        gm = [np.asarray(g.fp_matrix, dtype=np.int64) for g in gens]
        tables = [np.stack([(np.asarray(ctx.mul_matrix(int(a)), dtype=np.int64) @ g) % p
                            for a in elems]).reshape(len(elems), d * d) for g in gm]

        def combine(i, idx):
            return tables[i][idx]
    m = len(gens)
    reps = (base**m - 1) // (base - 1)
    if reps > budget:
        raise BudgetExceeded(f"{reps} projective codewords exceed the budget {budget}")
    totals = np.zeros(d + 1, dtype=np.int64)
    for lead, cols in _projective_blocks(m, base, chunk):
        acc = np.broadcast_to(gm[lead].reshape(1, d * d), (max(cols.shape[0], 1), d * d)).copy()
        for j in range(cols.shape[1]):
            acc += combine(lead + 1 + j, cols[:, j])
        rk = fplinalg.batched_rank((acc % p).reshape(-1, d, d), p, inv)
        totals += np.bincount(rk, minlength=d + 1)
    counts = {r // ctx.h: int(c) * scale for r, c in enumerate(totals) if c}
    return RankDistribution(counts, min(counts), reps)


def min_distance(C: RMCode, **kw) -> int:
    return rank_distribution(C, **kw).min_distance


def singleton_dim(n: int, d: int) -> int:
    """log_q of the Singleton-like bound for square n x n codes."""
    return n * (n - d + 1)


def is_mrd(C: RMCode, **kw) -> bool:
    if C.dim_fq == 0:
        return False
    return C.dim_fq == singleton_dim(C.ctx.n, min_distance(C, **kw))


# -- duality ------------------------------------------------------------------------------


def _trace_gram(ctx: FieldCtx) -> np.ndarray:
    return _block_diag([np.asarray(ctx.trace_form, dtype=np.int64)] * ctx.n)


def bilinear(f: LinPoly, g: LinPoly) -> int:
    """b(f, g) = Tr_{q^n/q}(sum f_i g_i)."""
    ctx = f.ctx
    return ctx.trace(ctx.sum(ctx.mul(a, b) for a, b in zip(f.coeffs, g.coeffs)))


def delsarte_dual(C: RMCode) -> RMCode:
    """Orthogonal complement under b.

    Computed over F_p with Tr_{q^n/p}; for F_q-subspaces the two complements agree.
    """
    ctx = C.ctx
    N = ctx.n * ctx.degree
    if C.fp_basis.shape[0] == 0:
        return RMCode.full(ctx)
    form = (C.fp_basis @ _trace_gram(ctx)) % ctx.p
    return RMCode(ctx, fplinalg.nullspace(form, ctx.p, ncols=N))


# -- idealisers ------------------------------------------------------------------------------


def _left_comp_matrix(f: LinPoly) -> np.ndarray:
    """F_p-matrix of phi -> phi o f on coefficient digit vectors."""
    ctx = f.ctx
    n, d = ctx.n, ctx.degree
    out = np.zeros((n * d, n * d), dtype=np.int64)
    for k in range(n):
        for i in range(n):
            c = ctx.frobenius(f.coeffs[(k - i) % n], i)
            if c:
                out[k * d:(k + 1) * d, i * d:(i + 1) * d] = ctx.mul_matrix(c)
    return out


def _right_comp_matrix(f: LinPoly) -> np.ndarray:
    """F_p-matrix of phi -> f o phi on coefficient digit vectors."""
    ctx = f.ctx
    n, d = ctx.n, ctx.degree
    out = np.zeros((n * d, n * d), dtype=np.int64)
    for k in range(n):
        for i in range(n):
            a = f.coeffs[i]
            if a:
                j = (k - i) % n
                blk = (np.asarray(ctx.mul_matrix(a), dtype=np.int64)
                       @ np.asarray(ctx.frob_matrix(i), dtype=np.int64)) % ctx.p
                out[k * d:(k + 1) * d, j * d:(j + 1) * d] += blk
    return out % ctx.p


@dataclass
class Idealiser:
    ctx: FieldCtx
    basis: list[LinPoly]
    is_field: bool
    field_degree: int | None  # d with idealiser = F_{q^d}

    @property
    def dim_fq(self) -> int:
        return len(self.basis) and (len(self.basis) // self.ctx.h)

    def to_json(self) -> dict:
        return {"dim_fq": self.dim_fq, "is_field": self.is_field,
                "type": f"F_q^{self.field_degree}" if self.is_field else None}


def _idealiser(C: RMCode, comp, budget: int) -> Idealiser:
    ctx = C.ctx
    N = ctx.n * ctx.degree
    check = delsarte_dual(C).fp_basis @ _trace_gram(ctx) % ctx.p  # rows vanish exactly on C
    if C.fp_basis.shape[0] == 0 or check.shape[0] == 0:
        sol = np.eye(N, dtype=np.int64)
    else:
        blocks = [(check @ comp(g)) % ctx.p for g in C.fq_basis]
        sol = fplinalg.nullspace(np.concatenate(blocks, axis=0), ctx.p, ncols=N)
    basis = [LinPoly.from_fp_vector(ctx, row) for row in sol]
    e = len(basis) // ctx.h
    is_field = _is_field(ctx, sol, e, budget)
    return Idealiser(ctx, basis, is_field, e if is_field else None)


def _is_field(ctx: FieldCtx, sol: np.ndarray, e: int, budget: int) -> bool:
    """A finite algebra of maps is a field iff every nonzero element is invertible."""
    if e == 0 or ctx.n % e:
        return False
    code = RMCode(ctx, sol)
    try:
        dist = rank_distribution(code, budget=budget)
    except BudgetExceeded:
        raise
    return set(dist.counts) == {ctx.n}


def left_idealiser(C: RMCode, *, budget: int = DEFAULT_RANK_BUDGET) -> Idealiser:
    return _idealiser(C, _left_comp_matrix, budget)


def right_idealiser(C: RMCode, *, budget: int = DEFAULT_RANK_BUDGET) -> Idealiser:
    return _idealiser(C, _right_comp_matrix, budget)


# -- code twists and recognizers ------------------------------------------------------------


def code_twist(C: RMCode, s: int) -> list[LinPoly]:
    """Generators of C^{[s]} = {f(x)^{q^s}} (F_{q^n}-basis of a left-linear C)."""
    return [g.twist(s) for g in C.fqn_basis]


def _fqn_rank(ctx: FieldCtx, polys: Sequence[LinPoly]) -> int:
    if not polys:
        return 0
    return fqnlinalg.rank(ctx, [list(p.coeffs) for p in polys])


def _fqn_intersection(ctx: FieldCtx, spaces: Sequence[Sequence[LinPoly]]) -> list[LinPoly]:
    """F_{q^n}-basis of the intersection of F_{q^n}-spans of coefficient vectors."""
    n = ctx.n
    eqs: list[list[int]] = []
    for sp in spaces:
        rows = [list(p.coeffs) for p in sp]
        if not rows:
            return []
        eqs.extend(fqnlinalg.nullspace(ctx, rows, n))
    if not eqs:
        return [LinPoly.monomial(ctx, i) for i in range(n)]
    return [LinPoly(ctx, tuple(v)) for v in fqnlinalg.nullspace(ctx, eqs, n)]


def twist_intersection_dims(C: RMCode, s: int, depth: int) -> list[int]:
    """dim_{F_q^n}(C cap C^{[s]} cap ... cap C^{[js]}) for j = 0..depth."""
    ctx = C.ctx
    spaces = [C.fqn_basis]
    out = [len(C.fqn_basis)]
    for j in range(1, depth + 1):
        spaces.append(code_twist(C, s * j))
        out.append(len(_fqn_intersection(ctx, spaces)))
    return out


def gabidulin_recognize(C: RMCode) -> list[int]:
    """All s coprime to n with dim(C cap C^{[s]}) = k - 1 (empty: not Gabidulin)."""
    ctx = C.ctx
    k = C.dim_fqn
    if k is None:
        raise NotLeftLinear("recognition needs an F_{q^n}-left-linear code")
    return [s for s in range(1, ctx.n) if math.gcd(s, ctx.n) == 1
            and twist_intersection_dims(C, s, 1)[1] == k - 1]


@dataclass
class TwistedRecognition:
    s: int
    eta: int
    p: LinPoly
    q_gen: LinPoly

    def to_json(self) -> dict:
        return {"s": self.s, "eta": self.eta, "p": self.p.to_json(), "q": self.q_gen.to_json()}


@dataclass
class TwistedReport:
    accepted: list[TwistedRecognition] = field(default_factory=list)
    dims: dict = field(default_factory=dict)

    @property
    def recognized(self) -> bool:
        return bool(self.accepted)

    def to_json(self) -> dict:
        return {"recognized": self.recognized, "dims": {str(s): d for s, d in self.dims.items()},
                "witnesses": [a.to_json() for a in self.accepted]}


def _eta_solutions(C: RMCode, p: LinPoly, tail: LinPoly) -> np.ndarray | None:
    """Digit vectors of eta with p + eta * tail in C (affine F_p system), or None."""
    ctx = C.ctx
    d = ctx.degree
    check = (delsarte_dual(C).fp_basis @ _trace_gram(ctx)) % ctx.p
    if check.shape[0] == 0:
        return np.eye(d, dtype=np.int64)
    # eta * tail has digit vector sum_j eta_j * (t^j tail)
    cols = np.array([tail.scale(ctx.p**j).fp_vector() for j in range(d)]).T
    A = (check @ cols) % ctx.p
    b = (-(check @ p.fp_vector())) % ctx.p
    part = fplinalg.solve(A, b, ctx.p)
    if part is None:
        return None
    ker = fplinalg.nullspace(A, ctx.p, ncols=d)
    return np.concatenate([part.reshape(1, -1), ker], axis=0)


def twisted_recognize(C: RMCode) -> TwistedReport:
    """Test the generalized twisted Gabidulin characterization for k > 2.

    For each s with the k-2 / k-3 intersection pattern, p is recovered from
    the one-dimensional iterated intersection C cap ... cap C^{[(k-2)s]}
    (which is spanned by p^{q^{s(k-1)}}), then eta != 0 is solved for.
    """
    ctx = C.ctx
    n = ctx.n
    k = C.dim_fqn
    if k is None:
        raise NotLeftLinear("recognition needs an F_{q^n}-left-linear code")
    if k <= 2:
        raise ValueError("twisted recognition needs dimension k > 2")
    report = TwistedReport()
    for s in range(1, n):
        if math.gcd(s, n) != 1:
            continue
        dims = twist_intersection_dims(C, s, max(2, k - 2))
        report.dims[s] = dims[:3]
        if dims[1] != k - 2 or dims[2] != k - 3:
            continue
        spaces = [C.fqn_basis] + [code_twist(C, s * j) for j in range(1, k - 1)]
        a = _fqn_intersection(ctx, spaces)
        if len(a) != 1:
            continue
        p = a[0].twist(-s * (k - 1))
        if not p.is_invertible():
            continue
        if not all(C.contains(p.twist(s * j)) for j in range(1, k)):
            continue
        sols = _eta_solutions(C, p, p.twist(s * k))
        if sols is None:
            continue
        eta = _nonzero_in_affine(ctx, sols)
        if eta is None:
            continue
        qg = p + p.twist(s * k).scale(eta)
        report.accepted.append(TwistedRecognition(s, eta, p, qg))
    return report


def _nonzero_in_affine(ctx: FieldCtx, sols: np.ndarray) -> int | None:
    part, ker = sols[0], sols[1:]
    if np.any(part % ctx.p):
        return ctx.element(int(c) for c in part % ctx.p)
    if ker.shape[0]:
        return ctx.element(int(c) for c in ker[0])
    return None


def coefficient_map(C: RMCode) -> list[tuple[int, ...]]:
    """c_N of a generator basis (F_{q^n}-basis when left-linear)."""
    return [tuple(g.coeffs) for g in C.generators]


def h_polynomials(f: LinPoly, k: int) -> list[LinPoly]:
    """x^{q^i} - b_i x^{q^k} (i not in {0, k}) for f = x^{q^k} + sum_{j != k} b_j x^{q^j}, b_0 = 0."""
    ctx = f.ctx
    if f.coeffs[0] != 0 or f.coeffs[k] != 1:
        raise ValueError("need f with zero x-coefficient and monic x^{q^k} term")
    out = []
    for i in range(1, ctx.n):
        if i == k:
            continue
        out.append(LinPoly.from_terms(ctx, {i: 1, k: ctx.neg(f.coeffs[i])}))
    return out
