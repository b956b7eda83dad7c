"""Dense linear algebra over a prime field F_p on numpy integer arrays.

Every routine reduces mod ``p`` eagerly.  Matrices use ``int64`` when
``p < 2**31`` (products stay below 2**62) and Python-object arrays otherwise.
The batched rank routine is the inner loop of every field sweep.
"""

from __future__ import annotations

import numpy as np


def work_dtype(p: int):
    return np.int64 if p < 2**31 else object


def as_fp(a, p: int) -> np.ndarray:
    arr = np.array(a, dtype=work_dtype(p))
    return arr % p


def inverse_table(p: int) -> np.ndarray:
    """Inverses of 0..p-1 mod p (index 0 maps to 0)."""
    tab = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        tab[x] = pow(x, p - 2, p)
    return tab


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = as_fp(a, p)
    if m.ndim != 2:
        raise ValueError("rref expects a 2-D matrix")
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a, p: int, ncols: int | None = None) -> np.ndarray:
    """Basis (as rows) of the right kernel ``{x : a @ x = 0}``."""
    a = np.asarray(a)
    if a.size == 0:
        if ncols is None:
            ncols = a.shape[-1] if a.ndim == 2 else 0
        return np.eye(ncols, dtype=work_dtype(p))
    r, piv = rref(a, p)
    cols = r.shape[1]
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=work_dtype(p))
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for row, pc in enumerate(piv):
            basis[i, pc] = (-r[row, fc]) % p
    return basis


def row_space(a, p: int) -> np.ndarray:
    a = np.asarray(a)
    if a.size == 0:
        return a.reshape(0, a.shape[-1] if a.ndim == 2 else 0)
    return rref(a, p)[0]


def solve(a, b, p: int):
    """One solution of ``a @ x = b`` or ``None`` when inconsistent."""
    a = as_fp(a, p)
    b = as_fp(b, p).reshape(-1, 1)
    aug = np.concatenate([a, b], axis=1)
    r, piv = rref(aug, p)
    cols = a.shape[1]
    if cols in piv:
        return None
    x = np.zeros(cols, dtype=work_dtype(p))
    for row, pc in enumerate(piv):
        x[pc] = r[row, cols]
    return x


def in_row_space(vec, basis_rref, p: int) -> bool:
    """Membership test against a basis already in reduced echelon form."""
    v = as_fp(vec, p).copy()
    basis_rref = np.asarray(basis_rref)
    for row in basis_rref:
        nz = np.nonzero(row)[0]
        c = int(nz[0])
        if v[c]:
            v = (v - v[c] * row) % p
    return not np.any(v)


def intersect_row_spaces(a, b, p: int) -> np.ndarray:
    """Row-space intersection of two matrices with the same column count."""
    a = row_space(a, p)
    b = row_space(b, p)
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros((0, max(a.shape[1], b.shape[1])), dtype=work_dtype(p))
    # x a = y b  <=>  [a; -b]^T [x; y] = 0
    stacked = np.concatenate([a, (-b) % p], axis=0).T
    ker = nullspace(stacked, p)
    vecs = (ker[:, : a.shape[0]] @ a) % p if ker.shape[0] else ker[:, :0]
    return row_space(vecs, p) if ker.shape[0] else np.zeros((0, a.shape[1]), dtype=work_dtype(p))


def batched_rank(mats: np.ndarray, p: int, inv: np.ndarray | None = None) -> np.ndarray:
    """Ranks of a stack of matrices ``(B, r, c)`` over F_p.

    Gaussian elimination runs on all matrices at once; each matrix keeps
    its own pivot row counter.
    """
    a = np.array(mats, dtype=np.int64 if p < 2**31 else object) % p
    if p * p < 2**15 and a.dtype == np.int64:
        a = a.astype(np.int16)
    elif p * p < 2**31 and a.dtype == np.int64:
        a = a.astype(np.int32)
    nb, nr, nc = a.shape
    if inv is None:
        inv = inverse_table(p)
    inv = inv.astype(a.dtype) if a.dtype != object else inv
    rk = np.zeros(nb, dtype=np.int64)
    rows = np.arange(nr)
    bidx = np.arange(nb)
    for c in range(nc):
        cand = (a[:, :, c] != 0) & (rows[None, :] >= rk[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        sel = bidx[has]
        piv = cand[sel].argmax(axis=1)
        tgt = rk[sel]
        # move pivot row to position rk
        prow = a[sel, piv].copy()
        a[sel, piv] = a[sel, tgt]
        a[sel, tgt] = prow
        scale = inv[prow[:, c].astype(np.int64)]
        prow = (prow * scale[:, None]) % p
        a[sel, tgt] = prow
        # eliminate column c in every other row of the selected matrices
        factors = a[sel, :, c].copy()
        factors[np.arange(sel.size), tgt] = 0
        sub = a[sel] - factors[:, :, None] * prow[:, None, :]
        a[sel] = sub % p
        rk[sel] += 1
    return rk
