"""Linearized polynomials L_{n,q}: sum_i a_i x^{q^i} reduced mod x^{q^n} - x."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import fplinalg, fqnlinalg
from .field import FieldCtx


@dataclass(frozen=True, eq=True)
class LinPoly:
    """q-polynomial with coefficient vector (a_0, ..., a_{n-1})."""

    ctx: FieldCtx
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.ctx.n:
            raise ValueError(f"expected {self.ctx.n} coefficients, got {len(self.coeffs)}")
        order = self.ctx.order
        if any(not 0 <= c < order for c in self.coeffs):
            raise ValueError(f"coefficient outside [0, {order})")

    # -- constructors ----------------------------------------------------------

    @classmethod
    def of(cls, ctx: FieldCtx, coeffs: Iterable[int]) -> "LinPoly":
        return cls(ctx, tuple(ctx.check(int(c)) for c in coeffs))

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "LinPoly":
        return cls(ctx, (0,) * ctx.n)

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "LinPoly":
        return cls.monomial(ctx, 0)

    @classmethod
    def monomial(cls, ctx: FieldCtx, i: int, coef: int = 1) -> "LinPoly":
        c = [0] * ctx.n
        c[i % ctx.n] = coef
        return cls(ctx, tuple(c))

    @classmethod
    def from_terms(cls, ctx: FieldCtx, terms: Mapping[int, int]) -> "LinPoly":
        """Build from {q-exponent index: coefficient}; repeated indices add up."""
        c = [0] * ctx.n
        for i, a in terms.items():
            c[i % ctx.n] = ctx.add(c[i % ctx.n], a)
        return cls(ctx, tuple(c))

    @classmethod
    def interpolate(cls, ctx: FieldCtx, points: Sequence[int], values: Sequence[int]) -> "LinPoly":
        """The unique q-polynomial taking ``values`` on an F_q-basis ``points``."""
        moore = [[ctx.frobenius(x, i) for i in range(ctx.n)] for x in points]
        sol = fqnlinalg.solve(ctx, moore, list(values))
        if sol is None or fqnlinalg.rank(ctx, moore) < ctx.n:
            raise ValueError("interpolation points are not an F_q-basis")
        return cls(ctx, tuple(sol))

    @classmethod
    def from_fp_vector(cls, ctx: FieldCtx, vec) -> "LinPoly":
        d = ctx.degree
        vec = [int(v) for v in vec]
        return cls(ctx, tuple(ctx.element(vec[i * d:(i + 1) * d]) for i in range(ctx.n)))

    # -- evaluation ------------------------------------------------------------

    def __call__(self, x: int) -> int:
        return self.eval(x)

    def eval(self, x: int) -> int:
        ctx = self.ctx
        acc = 0
        for i, a in enumerate(self.coeffs):
            if a:
                acc = ctx.add(acc, ctx.mul(a, ctx.frobenius(x, i)))
        return acc

    def eval_array(self, xs) -> np.ndarray:
        return self.ctx.apply_fp(self.fp_matrix, xs)

    # -- algebra -----------------------------------------------------------------

    def __add__(self, other: "LinPoly") -> "LinPoly":
        ctx = self.ctx
        return LinPoly(ctx, tuple(ctx.add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "LinPoly") -> "LinPoly":
        ctx = self.ctx
        return LinPoly(ctx, tuple(ctx.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "LinPoly":
        return LinPoly(self.ctx, tuple(self.ctx.neg(a) for a in self.coeffs))

    def scale(self, alpha: int) -> "LinPoly":
        """Left multiplication tau_alpha o f."""
        ctx = self.ctx
        return LinPoly(ctx, tuple(ctx.mul(alpha, a) for a in self.coeffs))

    def compose(self, g: "LinPoly") -> "LinPoly":
        """self o g."""
        ctx = self.ctx
        n = ctx.n
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(g.coeffs):
                if b:
                    k = (i + j) % n
                    out[k] = ctx.add(out[k], ctx.mul(a, ctx.frobenius(b, i)))
        return LinPoly(ctx, tuple(out))

    def adjoint(self) -> "LinPoly":
        """Adjoint w.r.t. (x, y) -> Tr(xy): coefficient a_i^{q^{n-i}} at index n-i."""
        ctx = self.ctx
        n = ctx.n
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            out[(n - i) % n] = ctx.frobenius(a, n - i)
        return LinPoly(ctx, tuple(out))

    def twist(self, s: int) -> "LinPoly":
        """f(x)^{q^s} reduced: coefficient a_i^{q^s} moves to index i+s."""
        ctx = self.ctx
        n = ctx.n
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            out[(i + s) % n] = ctx.frobenius(a, s)
        return LinPoly(ctx, tuple(out))

    def sigma(self, j: int) -> "LinPoly":
        """Apply the automorphism x -> x^{p^j} to every coefficient."""
        return LinPoly(self.ctx, tuple(self.ctx.pfrobenius(a, j) for a in self.coeffs))

    # -- linear algebra views -------------------------------------------------------

    @functools.cached_property
    def fp_matrix(self) -> np.ndarray:
        """Matrix of x -> f(x) over F_p on power-basis digit vectors."""
        ctx = self.ctx
        d = ctx.degree
        acc = np.zeros((d, d), dtype=fplinalg.work_dtype(ctx.p))
        for i, a in enumerate(self.coeffs):
            if a:
                acc = acc + ctx.mul_matrix(a) @ ctx.frob_matrix(i)
        return acc % ctx.p

    def matrix_over_fq(self) -> list[list[int]]:
        """n x n matrix over F_q of x -> f(x) in the context's F_q-basis.

        Column l holds the coordinates of f(b_l).
        """
        ctx = self.ctx
        cols = [ctx.fq_coordinates(self.eval(b)) for b in ctx.fq_basis]
        return [[cols[c][r] for c in range(ctx.n)] for r in range(ctx.n)]

    def rank(self) -> int:
        return self.ctx.n - self.kernel_dim()

    def kernel_dim(self) -> int:
        ctx = self.ctx
        return (ctx.degree - fplinalg.rank(self.fp_matrix, ctx.p)) // ctx.h

    def kernel_basis(self) -> list[int]:
        """An F_q-basis of the kernel of x -> f(x)."""
        ctx = self.ctx
        ker = fplinalg.nullspace(self.fp_matrix, ctx.p)
        return fq_basis_from_fp(ctx, [ctx.element(int(c) for c in row) for row in ker])

    def is_invertible(self) -> bool:
        return self.kernel_dim() == 0

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def fp_vector(self) -> np.ndarray:
        """Concatenated digit vectors of the coefficients (length n*h*n)."""
        ctx = self.ctx
        out = []
        for a in self.coeffs:
            out.extend(ctx.digits(a))
        return np.array(out, dtype=fplinalg.work_dtype(ctx.p))

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def __repr__(self) -> str:
        terms = []
        for i, a in enumerate(self.coeffs):
            if a:
                mono = "x" if i == 0 else ("x^q" if i == 1 else f"x^q^{i}")
                terms.append(mono if a == 1 else f"[{a}]{mono}")
        return "LinPoly(" + (" + ".join(terms) or "0") + ")"


def fq_basis_from_fp(ctx: FieldCtx, elems: Sequence[int]) -> list[int]:
    """Extract an F_q-basis from elements spanning an F_q-subspace over F_p."""
    lam = ctx.subfield_fp_basis(1)
    chosen: list[int] = []
    span_rows: list[list[int]] = []
    cur_rank = 0
    for x in elems:
        rows = span_rows + [ctx.digits(ctx.mul(l, x)) for l in lam]
        r = fplinalg.rank(np.array(rows), ctx.p)
        if r > cur_rank:
            chosen.append(x)
            span_rows = rows
            cur_rank = r
    return chosen


def eval(f: LinPoly, x: int) -> int:
    return f.eval(x)


def compose(f: LinPoly, g: LinPoly) -> LinPoly:
    return f.compose(g)


def adjoint(f: LinPoly) -> LinPoly:
    return f.adjoint()


def twist(f: LinPoly, s: int) -> LinPoly:
    return f.twist(s)


def matrix_over_fq(f: LinPoly) -> list[list[int]]:
    return f.matrix_over_fq()


def kernel_dim(f: LinPoly) -> int:
    return f.kernel_dim()
