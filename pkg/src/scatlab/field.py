"""Arithmetic in F_q and F_{q^n}, q = p^h, realised as one extension F_p[t]/(m(t)).

Elements are plain Python ints: the base-p digits of an element are its
coordinates in the power basis 1, t, ..., t^{hn-1}.  This integer is also the
wire encoding used in JSON reports.  F_q is the fixed field of x -> x^q.

Arrays of elements (numpy int64) are handled through F_p-matrices: Frobenius
powers and multiplication by a constant are F_p-linear, which is what makes
the exhaustive sweeps vectorisable.
"""

from __future__ import annotations

import functools
import math
from typing import Iterable, Sequence

import numpy as np

from . import fplinalg

DEFAULT_TABLE_THRESHOLD = 2**24


class FieldError(ValueError):
    pass


class CompositeP(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class DegreeMismatch(FieldError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    r = math.isqrt(p)
    f = 3
    while f <= r:
        if p % f == 0:
            return False
        f += 2
    return True


def prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out.append(m)
    return out


# --- polynomials over F_p, coefficient lists low -> high -------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = (a[-1] * inv) % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [c % p for c in out]


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppow_x(e: int, m: list[int], p: int) -> list[int]:
    """x^e mod m."""
    result = [1]
    base = [0, 1]
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(m: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for a polynomial over F_p."""
    m = _trim([c % p for c in m])
    d = len(m) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    xp = _ppow_x(p**d, m, p)
    if _psub(xp, x, p):
        return False
    for r in prime_factors(d):
        xr = _ppow_x(p ** (d // r), m, p)
        g = _pgcd(m, _psub(xr, x, p), p)
        if len(g) > 1:
            return False
    return True


def least_irreducible(p: int, d: int) -> tuple[int, ...]:
    """Least monic irreducible of degree d, tails ordered as base-p integers.

    The tail (c_0, ..., c_{d-1}) is enumerated as the integer sum c_i p^i,
    starting from 0.
    """
    for code in range(p**d):
        tail = []
        c = code
        for _ in range(d):
            c, r = divmod(c, p)
            tail.append(r)
        if tail[0] == 0:
            continue
        poly = tail + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise FieldError(f"no irreducible polynomial of degree {d} over F_{p}")


class FieldCtx:
    """The pair (F_q, F_{q^n}) with a fixed modulus, F_q-basis and Frobenius maps.

    Immutable after construction; every method is pure.
    """

    def __init__(self, p: int, h: int, n: int, modulus: Sequence[int],
                 table_threshold: int = DEFAULT_TABLE_THRESHOLD):
        self.p = p
        self.h = h
        self.n = n
        self.q = p**h
        self.degree = h * n
        self.order = p**self.degree
        self.modulus = tuple(int(c) % p for c in modulus)
        self._mod_list = list(self.modulus)
        self._pw = [p**i for i in range(self.degree)]
        self._pw_arr = np.array(self._pw, dtype=np.int64) if self.order < 2**63 else None
        self._inv_p = fplinalg.inverse_table(p) if p < 2**16 else None
        self._exp = None
        self._log = None
        if self.order <= table_threshold:
            self._build_tables()
        self._pfrob = self._build_pfrob()
        self._fq_basis_fp = self._fixed_basis(1)
        self.fq_basis = tuple(p**j for j in range(n))
        self._coord_inv = self._build_coord_inverse()

    # -- descriptors ---------------------------------------------------------

    def descriptor(self) -> dict:
        return {"p": self.p, "h": self.h, "n": self.n, "modulus": list(self.modulus)}

    def __repr__(self) -> str:
        return f"FieldCtx(q={self.q}, n={self.n}, modulus={list(self.modulus)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and self.descriptor() == other.descriptor()

    def __hash__(self) -> int:
        return hash((self.p, self.h, self.n, self.modulus))

    @property
    def has_tables(self) -> bool:
        return self._exp is not None

    # -- encoding --------------------------------------------------------------

    def digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.degree):
            x, r = divmod(x, self.p)
            out.append(r)
        return out

    def element(self, digits: Iterable[int]) -> int:
        v = 0
        for i, d in enumerate(digits):
            v += (int(d) % self.p) * self._pw[i]
        return v

    def check(self, x: int) -> int:
        if not isinstance(x, (int, np.integer)) or x < 0 or x >= self.order:
            raise FieldError(f"element encoding {x!r} outside [0, {self.order})")
        return int(x)

    def to_digits(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        return (xs[..., None] // self._pw_arr) % self.p

    def from_digits(self, ds) -> np.ndarray:
        ds = np.asarray(ds, dtype=np.int64)
        return ds @ self._pw_arr

    # -- scalar arithmetic -----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        res, pw = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            res += ((da + db) % p) * pw
            pw *= p
        return res

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        res, pw = 0, 1
        while a:
            a, da = divmod(a, p)
            res += ((-da) % p) * pw
            pw *= p
        return res

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def smul(self, c: int, a: int) -> int:
        """Multiply by the prime-field integer c."""
        c %= self.p
        if c == 0:
            return 0
        if c == 1:
            return a
        p = self.p
        res, pw = 0, 1
        while a:
            a, da = divmod(a, p)
            res += ((c * da) % p) * pw
            pw *= p
        return res

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return int(self._exp[(int(self._log[a]) + int(self._log[b])) % (self.order - 1)])
        prod = _pmul(self.digits(a), self.digits(b), self.p)
        return self.element(_pmod(prod, self._mod_list, self.p))

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        if e < 0:
            a, e = self.inv(a), -e
        if self._exp is not None:
            return int(self._exp[(int(self._log[a]) * e) % (self.order - 1)])
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_{q^n}")
        if self._exp is not None:
            return int(self._exp[(-int(self._log[a])) % (self.order - 1)])
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def sum(self, items: Iterable[int]) -> int:
        acc = 0
        for x in items:
            acc = self.add(acc, x)
        return acc

    def frobenius(self, x: int, s: int) -> int:
        """x^{q^s}, s taken mod n."""
        s %= self.n
        if s == 0 or x == 0:
            return x
        if self._exp is not None:
            e = pow(self.q, s, self.order - 1)
            return int(self._exp[(int(self._log[x]) * e) % (self.order - 1)])
        return self.pfrobenius(x, self.h * s)

    def pfrobenius(self, x: int, j: int) -> int:
        """x^{p^j}, j taken mod hn."""
        j %= self.degree
        if j == 0 or x == 0:
            return x
        v = (self._pfrob[j] @ np.array(self.digits(x), dtype=object)) % self.p
        return self.element(int(c) for c in v)

    def norm(self, x: int, sub: int = 1) -> int:
        """Relative norm F_{q^n} -> F_{q^sub} (sub divides n)."""
        if self.n % sub:
            raise ValueError("sub must divide n")
        e = (self.order - 1) // (self.q**sub - 1)
        return self.pow(x, e)

    def trace(self, x: int, sub: int = 1) -> int:
        """Relative trace F_{q^n} -> F_{q^sub}."""
        if self.n % sub:
            raise ValueError("sub must divide n")
        return self.sum(self.frobenius(x, sub * i) for i in range(self.n // sub))

    def in_subfield(self, x: int, d: int) -> bool:
        return self.frobenius(x, d) == x

    # -- structure -------------------------------------------------------------

    def elements(self) -> range:
        return range(self.order)

    @functools.cached_property
    def fq_elements(self) -> tuple[int, ...]:
        """The q elements of F_q inside F_{q^n}, sorted by encoding."""
        return tuple(sorted(self.subfield_elements(1)))

    def subfield_elements(self, d: int) -> list[int]:
        basis = self._fixed_basis(d)
        vals = [0]
        for row in basis:
            b = self.element(int(c) for c in row)
            vals = [self.add(v, self.smul(c, b)) for v in vals for c in range(self.p)]
        return vals

    def subfield_fp_basis(self, d: int) -> list[int]:
        """F_p-basis of F_{q^d} as elements."""
        return [self.element(int(c) for c in row) for row in self._fixed_basis(d)]

    @functools.cached_property
    def primitive_element(self) -> int:
        m = self.order - 1
        facs = prime_factors(m)
        for g in range(2, self.order):
            if all(self.pow(g, m // r) != 1 for r in facs):
                return g
        return 1  # order 2

    def fq_coordinates(self, x: int) -> list[int]:
        """Coordinates of x in the F_q-basis ``fq_basis`` (entries in F_q)."""
        v = (self._coord_inv @ np.array(self.digits(x), dtype=object)) % self.p
        out = []
        h = self.h
        lam = [self.element(int(c) for c in row) for row in self._fq_basis_fp]
        for j in range(self.n):
            acc = 0
            for l in range(h):
                acc = self.add(acc, self.smul(int(v[j * h + l]), lam[l]))
            out.append(acc)
        return out

    def random_element(self, rng, nonzero: bool = False) -> int:
        lo = 1 if nonzero else 0
        if self.order < 2**63:
            return int(rng.integers(lo, self.order))
        return int(rng.integers(lo, self.order, dtype=np.uint64))

    # -- F_p-linear maps ---------------------------------------------------------

    def mul_matrix(self, c: int) -> np.ndarray:
        """F_p-matrix of x -> c*x acting on digit column vectors."""
        d = self.degree
        cols = [self.digits(self.mul(c, self._pw[j])) for j in range(d)]
        return np.array(cols, dtype=fplinalg.work_dtype(self.p)).T.copy()

    def pfrob_matrix(self, j: int) -> np.ndarray:
        return self._pfrob[j % self.degree]

    def frob_matrix(self, s: int) -> np.ndarray:
        return self._pfrob[(self.h * s) % self.degree]

    @functools.cached_property
    def trace_form(self) -> np.ndarray:
        """Gram matrix T[a,b] = Tr_{q^n/p}(t^a t^b) over F_p."""
        d = self.degree
        out = np.zeros((d, d), dtype=fplinalg.work_dtype(self.p))
        for a in range(d):
            for b in range(a, d):
                v = self._abs_trace(self.mul(self._pw[a], self._pw[b]))
                out[a, b] = out[b, a] = v
        return out

    def _abs_trace(self, x: int) -> int:
        acc = 0
        for j in range(self.degree):
            acc = self.add(acc, self.pfrobenius(x, j))
        return acc  # lies in F_p, so the encoding is the residue itself

    # -- vectorised arithmetic ----------------------------------------------------

    def apply_fp(self, mat: np.ndarray, xs) -> np.ndarray:
        """Apply an F_p-linear map (matrix on digit columns) to an element array."""
        dig = self.to_digits(xs)
        out = (dig @ np.asarray(mat, dtype=np.int64).T) % self.p
        return self.from_digits(out)

    def add_array(self, a, b) -> np.ndarray:
        return self.from_digits((self.to_digits(a) + self.to_digits(b)) % self.p)

    def neg_array(self, a) -> np.ndarray:
        return self.from_digits((-self.to_digits(a)) % self.p)

    def mul_array(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        if self._exp is not None:
            la = self._log[a].astype(np.int64)
            lb = self._log[b].astype(np.int64)
            out = self._exp[(la + lb) % (self.order - 1)].astype(np.int64)
            return np.where((a == 0) | (b == 0), 0, out)
        return self._mul_digits_array(a, b)

    def inv_array(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in F_{q^n}")
        if self._exp is not None:
            return self._exp[(-self._log[a].astype(np.int64)) % (self.order - 1)].astype(np.int64)
        return np.vectorize(self.inv, otypes=[np.int64])(a)

    def _mul_digits_array(self, a, b) -> np.ndarray:
        p, d = self.p, self.degree
        da = self.to_digits(a)
        db = self.to_digits(b)
        prod = np.zeros(a.shape + (2 * d - 1,), dtype=np.int64)
        for i in range(d):
            prod[..., i:i + d] = (prod[..., i:i + d] + da[..., i:i + 1] * db) % p
        m = self.modulus
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[..., k].copy()
            for i in range(d):
                if m[i]:
                    prod[..., k - d + i] = (prod[..., k - d + i] - c * m[i]) % p
        return self.from_digits(prod[..., :d])

    # -- construction helpers -------------------------------------------------------

    def _build_tables(self) -> None:
        n1 = self.order - 1
        g = self.primitive_element
        block = max(1, math.isqrt(n1))
        head = np.empty(block, dtype=np.int64)
        x = 1
        for i in range(block):
            head[i] = x
            x = self.mul(g, x)
        step = x  # g^block
        dtype = np.int32 if self.order < 2**31 else np.int64
        exp = np.empty(n1, dtype=dtype)
        cur, pos = 1, 0
        while pos < n1:
            take = min(block, n1 - pos)
            exp[pos:pos + take] = self.apply_fp(self.mul_matrix(cur), head[:take])
            cur = self.mul(cur, step)
            pos += take
        log = np.zeros(self.order, dtype=dtype)
        log[exp.astype(np.int64)] = np.arange(n1, dtype=dtype)
        self._exp = exp
        self._log = log

    def _build_pfrob(self) -> list[np.ndarray]:
        d = self.degree
        one = np.zeros((d, d), dtype=fplinalg.work_dtype(self.p))
        cols = []
        for j in range(d):
            cols.append(self.digits(self._pow_nocache(self._pw[j], self.p)))
        f1 = np.array(cols, dtype=fplinalg.work_dtype(self.p)).T.copy()
        mats = [np.eye(d, dtype=fplinalg.work_dtype(self.p))]
        for _ in range(1, d):
            mats.append((f1 @ mats[-1]) % self.p)
        del one
        return mats

    def _pow_nocache(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def _fixed_basis(self, d: int) -> np.ndarray:
        """F_p-basis (rows of digits) of the fixed field of x -> x^{q^d}."""
        fr = self._pfrob[(self.h * d) % self.degree]
        eye = np.eye(self.degree, dtype=fr.dtype)
        ker = fplinalg.nullspace((fr - eye) % self.p, self.p)
        return fplinalg.row_space(ker, self.p) if ker.shape[0] else ker

    def _build_coord_inverse(self) -> np.ndarray:
        lam = [self.element(int(c) for c in row) for row in self._fq_basis_fp]
        cols = []
        for b in self.fq_basis:
            for l in lam:
                cols.append(self.digits(self.mul(l, b)))
        m = np.array(cols, dtype=object).T
        d = self.degree
        aug = np.concatenate([m, np.eye(d, dtype=object)], axis=1)
        r, piv = fplinalg.rref(aug.astype(fplinalg.work_dtype(self.p)), self.p)
        if piv[:d] != list(range(d)):
            raise FieldError("F_q-basis of F_{q^n} is degenerate")
        return np.array(r[:, d:], dtype=object)


def make_field(p: int, h: int, n: int, modulus: Sequence[int] | None = None,
               table_threshold: int = DEFAULT_TABLE_THRESHOLD) -> FieldCtx:
    """Build the field context for (F_q, F_{q^n}), q = p^h.

    ``modulus`` is a coefficient list (low degree first) of a polynomial of
    degree h*n over F_p; it is made monic and must be irreducible.  When
    omitted, the least irreducible monic polynomial is chosen (see
    ``least_irreducible``).
    """
    if not is_prime(p):
        raise CompositeP(f"p={p} is not prime")
    if h < 1 or n < 2:
        raise FieldError("need h >= 1 and n >= 2")
    d = h * n
    if p**d > 2**64:
        raise FieldError("p^(hn) exceeds the 2^64 element encoding")
    if modulus is None:
        mod = least_irreducible(p, d)
    else:
        mod = [int(c) % p for c in modulus]
        _trim(mod)
        if len(mod) - 1 != d:
            raise DegreeMismatch(f"modulus has degree {len(mod) - 1}, expected {d}")
        lead_inv = pow(mod[-1], p - 2, p)
        mod = [(c * lead_inv) % p for c in mod]
        if not is_irreducible(mod, p):
            raise ReducibleModulus(f"modulus {mod} is reducible over F_{p}")
    return FieldCtx(p, h, n, mod, table_threshold=table_threshold)


@functools.lru_cache(maxsize=32)
def cached_field(p: int, h: int, n: int) -> FieldCtx:
    """Default-modulus field, shared across callers."""
    return make_field(p, h, n)


def field_for_q(q: int, n: int) -> FieldCtx:
    for p in range(2, q + 1):
        if q % p == 0:
            h = round(math.log(q, p))
            if p**h != q:
                raise CompositeP(f"q={q} is not a prime power")
            return cached_field(p, h, n)
    raise CompositeP(f"q={q} is not a prime power")
