"""Gaussian elimination over F_{q^n} with scalar field operations.

Matrices here are small (n x n with n <= 8), so plain lists of element
encodings are used.
"""

from __future__ import annotations

from typing import Sequence

from .field import FieldCtx

Row = tuple[int, ...]


def rref(ctx: FieldCtx, rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    piv: list[int] = []
    r = 0
    for c in range(ncols):
        k = next((i for i in range(r, len(m)) if m[i][c]), None)
        if k is None:
            continue
        m[r], m[k] = m[k], m[r]
        inv = ctx.inv(m[r][c])
        m[r] = [ctx.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(m[i], m[r])]
        piv.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], piv


def rank(ctx: FieldCtx, rows) -> int:
    return len(rref(ctx, rows)[1])


def nullspace(ctx: FieldCtx, rows, ncols: int) -> list[list[int]]:
    """Basis of {x : sum_j rows[i][j] x_j = 0 for all i}."""
    if not rows:
        return [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    r, piv = rref(ctx, rows)
    pset = set(piv)
    free = [c for c in range(ncols) if c not in pset]
    out = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in enumerate(piv):
            v[pc] = ctx.neg(r[row][fc])
        out.append(v)
    return out


def solve(ctx: FieldCtx, rows, rhs) -> list[int] | None:
    """One solution of A x = b, or None."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    r, piv = rref(ctx, aug)
    if ncols in piv:
        return None
    x = [0] * ncols
    for row, pc in enumerate(piv):
        x[pc] = r[row][ncols]
    return x


def matmul(ctx: FieldCtx, a, b):
    return [[ctx.sum(ctx.mul(a[i][k], b[k][j]) for k in range(len(b)))
             for j in range(len(b[0]))] for i in range(len(a))]


def inverse(ctx: FieldCtx, a):
    n = len(a)
    aug = [list(a[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    r, piv = rref(ctx, aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix over F_{q^n}")
    return [row[n:] for row in r]
