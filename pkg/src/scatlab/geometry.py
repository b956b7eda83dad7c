"""Projective geometry in PG(n-1, q^n) around the canonical subgeometry.

Sigma = {<(x, x^q, ..., x^{q^{n-1}})>} and the collineation sigma_hat acts on
vectors by (x_0, ..., x_{n-1}) -> (x_{n-1}^q, x_0^q, ..., x_{n-2}^q), so
sigma_hat^s sends coordinate i to position i+s with a q^s-power.
Subspaces are F_{q^n}-row spaces kept in reduced echelon form.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import fplinalg, fqnlinalg
from .field import FieldCtx
from .linpoly import LinPoly

Vec = tuple[int, ...]


class GeometryError(ValueError):
    pass


class HypothesisViolated(GeometryError):
    pass


class VertexMeetsSubgeometry(GeometryError):
    pass


class VertexMeetsAxis(GeometryError):
    pass


class DegenerateConfiguration(GeometryError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ProjSubspace:
    ctx: FieldCtx
    basis: tuple[Vec, ...]

    @classmethod
    def span(cls, ctx: FieldCtx, rows: Iterable[Sequence[int]]) -> "ProjSubspace":
        rows = [list(r) for r in rows]
        if any(len(r) != ctx.n for r in rows):
            raise GeometryError(f"vectors must have length {ctx.n}")
        ech, _ = fqnlinalg.rref(ctx, rows) if rows else ([], [])
        return cls(ctx, tuple(tuple(r) for r in ech))

    @classmethod
    def from_equations(cls, ctx: FieldCtx, eqs: Iterable[Sequence[int]]) -> "ProjSubspace":
        """Subspace {x : sum_j a_j x_j = 0 for every equation a}."""
        eqs = [list(e) for e in eqs]
        return cls.span(ctx, fqnlinalg.nullspace(ctx, eqs, ctx.n))

    @classmethod
    def empty(cls, ctx: FieldCtx) -> "ProjSubspace":
        return cls(ctx, ())

    @classmethod
    def whole(cls, ctx: FieldCtx) -> "ProjSubspace":
        return cls.span(ctx, unit_vectors(ctx.n))

    @property
    def vdim(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        """Projective dimension (-1 for the empty subspace)."""
        return len(self.basis) - 1

    def is_empty(self) -> bool:
        return not self.basis

    def equations(self) -> list[list[int]]:
        if not self.basis:
            return [list(e) for e in unit_vectors(self.ctx.n)]
        return fqnlinalg.nullspace(self.ctx, [list(b) for b in self.basis], self.ctx.n)

    def contains(self, v: Sequence[int]) -> bool:
        if not any(v):
            return True
        rows = [list(b) for b in self.basis] + [list(v)]
        return fqnlinalg.rank(self.ctx, rows) == self.vdim

    def contains_subspace(self, other: "ProjSubspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def join(self, *others: "ProjSubspace | Sequence[int]") -> "ProjSubspace":
        rows = [list(b) for b in self.basis]
        for o in others:
            if isinstance(o, ProjSubspace):
                rows.extend(list(b) for b in o.basis)
            else:
                rows.append(list(o))
        return ProjSubspace.span(self.ctx, rows)

    def to_json(self) -> dict:
        return {"basis": [list(b) for b in self.basis], "equations": self.equations(),
                "dim": self.dim}

    def __repr__(self) -> str:
        return f"ProjSubspace(dim={self.dim}, basis={[list(b) for b in self.basis]})"


def unit_vectors(n: int) -> list[Vec]:
    return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]


def unit(n: int, i: int) -> Vec:
    return tuple(1 if j == i % n else 0 for j in range(n))


def subgeometry_vector(ctx: FieldCtx, x: int) -> Vec:
    return tuple(ctx.frobenius(x, i) for i in range(ctx.n))


def sigma_vec(ctx: FieldCtx, v: Sequence[int], s: int) -> Vec:
    """sigma_hat^s on a vector: position i receives v_{i-s}^{q^s}."""
    n = ctx.n
    s %= n
    return tuple(ctx.frobenius(v[(i - s) % n], s) for i in range(n))


def sigma_equation(ctx: FieldCtx, a: Sequence[int], s: int) -> Vec:
    """Image of the hyperplane sum a_j x_j = 0 under sigma_hat^s."""
    return sigma_vec(ctx, a, s)


def sigma_conjugate(S: ProjSubspace, s: int) -> ProjSubspace:
    return ProjSubspace.span(S.ctx, [sigma_vec(S.ctx, b, s) for b in S.basis])


def intersect(spaces: Sequence[ProjSubspace]) -> ProjSubspace:
    if not spaces:
        raise GeometryError("intersect needs at least one subspace")
    ctx = spaces[0].ctx
    eqs: list[list[int]] = []
    for S in spaces:
        if S.is_empty():
            return ProjSubspace.empty(ctx)
        eqs.extend(S.equations())
    if not eqs:
        return spaces[0]
    return ProjSubspace.from_equations(ctx, eqs)


def conjugate_chain(G: ProjSubspace, s: int, t: int) -> ProjSubspace:
    """G cap G^sigma cap ... cap G^{sigma^t} with sigma = sigma_hat^s."""
    return intersect([sigma_conjugate(G, s * i) for i in range(t + 1)])


def _common_kernel(ctx: FieldCtx, polys: Sequence[LinPoly]) -> np.ndarray:
    d = ctx.degree
    if not polys:
        return np.eye(d, dtype=np.int64)
    stacked = np.concatenate([np.asarray(f.fp_matrix) for f in polys], axis=0)
    return fplinalg.nullspace(stacked, ctx.p, ncols=d)


def meets_subgeometry(S: ProjSubspace) -> int | None:
    """Some x != 0 with (x, x^q, ...) in S, or None when S misses Sigma.

    Every equation sum a_j x_j = 0 of S becomes the q-polynomial
    sum a_j x^{q^j}; S meets Sigma iff these have a common nonzero root.
    """
    ctx = S.ctx
    if S.is_empty():
        return None
    polys = [LinPoly(ctx, tuple(e)) for e in S.equations()]
    ker = _common_kernel(ctx, polys)
    if ker.shape[0] == 0:
        return None
    return ctx.element(int(c) for c in ker[0])


def subgeometry_meet_dim(S: ProjSubspace) -> int:
    """dim_{F_q} of the subspace of F_{q^n} whose Sigma-points lie in S."""
    ctx = S.ctx
    if S.is_empty():
        return 0
    polys = [LinPoly(ctx, tuple(e)) for e in S.equations()]
    return _common_kernel(ctx, polys).shape[0] // ctx.h


def in_subgeometry_hyperplane(G: ProjSubspace) -> int | None:
    """Return a != 0 when G lies in the hyperplane sum a^{q^j} x_j = 0.

    Those hyperplanes are exactly the spans of hyperplanes of Sigma.
    """
    ctx = G.ctx
    polys = [LinPoly(ctx, tuple(b)) for b in G.basis]
    ker = _common_kernel(ctx, polys)
    if ker.shape[0] == 0:
        return None
    return ctx.element(int(c) for c in ker[0])


def generators(n: int) -> list[int]:
    return [s for s in range(1, n) if math.gcd(s, n) == 1]


def intersection_number(G: ProjSubspace, s: int) -> int:
    """Least r >= 1 with dim(G cap G^sigma cap ... cap G^{sigma^r}) > k - 2r."""
    ctx = G.ctx
    if math.gcd(s, ctx.n) != 1:
        raise HypothesisViolated(f"s={s} is not coprime with n={ctx.n}")
    if meets_subgeometry(G) is not None:
        raise HypothesisViolated("the subspace meets the subgeometry")
    k = G.dim
    if conjugate_chain(G, s, 1).dim < k - 2:
        raise HypothesisViolated("dim(G cap G^sigma) < dim G - 2")
    r = 1
    while True:
        if conjugate_chain(G, s, r).dim > k - 2 * r:
            return r
        r += 1
        if 2 * r > k + 3:
            raise HypothesisViolated("intersection number exceeds (k+3)/2")


def chain_dims(G: ProjSubspace, s: int, tmax: int) -> list[int]:
    return [conjugate_chain(G, s, t).dim for t in range(tmax + 1)]


@dataclass
class GeneratingPoint:
    point: Vec
    r: int
    count: int  # number of consecutive conjugates P, ..., P^{sigma^{count-1}} in G
    unique: bool


def _normalize(ctx: FieldCtx, v: Sequence[int]) -> Vec:
    lead = next(c for c in v if c)
    inv = ctx.inv(lead)
    return tuple(ctx.mul(inv, c) for c in v)


def _generating_point_rec(G: ProjSubspace, s: int) -> Vec:
    ctx = G.ctx
    omega = intersect([G, sigma_conjugate(G, s)])
    if omega.is_empty():
        # G cap G^sigma empty: any point of G has its sigma^{-1}-image outside G
        return G.basis[0]
    prime = _generating_point_rec(omega, s)
    return sigma_vec(ctx, prime, -s)


def generating_point(G: ProjSubspace, s: int) -> GeneratingPoint:
    """The point P with P, ..., P^{sigma^{k-r+1}} independent in G and P^{sigma^{-1}} not in G."""
    ctx = G.ctx
    r = intersection_number(G, s)
    k = G.dim
    P = _normalize(ctx, _generating_point_rec(G, s))
    count = k - r + 2
    conj = [sigma_vec(ctx, P, s * i) for i in range(count)]
    if not all(G.contains(c) for c in conj):
        raise HypothesisViolated("recovered point conjugates leave the subspace")
    if fqnlinalg.rank(ctx, [list(c) for c in conj]) != count:
        raise HypothesisViolated("recovered point conjugates are dependent")
    if G.contains(sigma_vec(ctx, P, -s)):
        raise HypothesisViolated("P^{sigma^{n-1}} lies in the subspace")
    return GeneratingPoint(P, r, count, 2 * r < k + 2)


def orbit_span(ctx: FieldCtx, v: Sequence[int], s: int) -> ProjSubspace:
    """L(P) = <P, P^sigma, ..., P^{sigma^{n-1}}>."""
    return ProjSubspace.span(ctx, [sigma_vec(ctx, v, s * i) for i in range(ctx.n)])


# -- projections ---------------------------------------------------------------


@dataclass
class Projection:
    """p_{G,Lambda}(Sigma) in coordinates of the axis basis (l0, l1).

    The Sigma-point of x maps to <g0(x) l0 + g1(x) l1>; points are keyed by
    m = g1/g0 (None for g0 = 0) with their weights.
    """

    g0: LinPoly
    g1: LinPoly
    axis: ProjSubspace
    points: dict | None = None

    def as_linpoly(self) -> LinPoly | None:
        """f with {(g0(x), g1(x))} = {(y, f(y))}, when g0 is invertible."""
        if not self.g0.is_invertible():
            return None
        ctx = self.g0.ctx
        basis = ctx.fq_basis
        return LinPoly.interpolate(ctx, [self.g0(b) for b in basis], [self.g1(b) for b in basis])

    def spectrum(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for w in (self.points or {}).values():
            out[w] = out.get(w, 0) + 1
        return out


def project(G: ProjSubspace, axis: ProjSubspace, *, budget: int = 2**26,
            force: bool = False) -> Projection:
    ctx = G.ctx
    n = ctx.n
    if G.vdim != n - 2 or axis.vdim != 2:
        raise GeometryError("project needs an (n-3)-dimensional vertex and a line")
    if meets_subgeometry(G) is not None:
        raise VertexMeetsSubgeometry("the vertex meets the subgeometry")
    rows = [list(b) for b in G.basis] + [list(b) for b in axis.basis]
    if fqnlinalg.rank(ctx, rows) != n:
        raise VertexMeetsAxis("the vertex meets the axis")
    # v = gamma + l0 g0 + l1 g1  <=>  coords = v B^{-1}; the last two give (g0, g1)
    binv = fqnlinalg.inverse(ctx, rows)
    g0 = LinPoly(ctx, tuple(binv[j][n - 2] for j in range(n)))
    g1 = LinPoly(ctx, tuple(binv[j][n - 1] for j in range(n)))
    proj = Projection(g0, g1, axis)
    if ctx.order > budget and not force:
        return proj
    proj.points = _enumerate_points(g0, g1)
    return proj


def _enumerate_points(g0: LinPoly, g1: LinPoly) -> dict:
    ctx = g0.ctx
    xs = np.arange(1, ctx.order, dtype=np.int64)
    a = g0.eval_array(xs)
    b = g1.eval_array(xs)
    if np.any((a == 0) & (b == 0)):
        raise VertexMeetsSubgeometry("a subgeometry point lies in the vertex")
    inf = a == 0
    m = np.full(xs.shape, -1, dtype=np.int64)
    nz = ~inf
    m[nz] = ctx.mul_array(b[nz], ctx.inv_array(a[nz]))
    keys, counts = np.unique(m, return_counts=True)
    out = {}
    for key, c in zip(keys.tolist(), counts.tolist()):
        w = round(math.log(c + 1, ctx.q))
        out[None if key == -1 else key] = w
    return out


def linset_points(f: LinPoly) -> dict:
    """Points <(1, m)> of L_f with weights, enumerated from f(x)/x."""
    return _enumerate_points(LinPoly.identity(f.ctx), f)


# -- standard vertices -----------------------------------------------------------


def pseudoregulus_vertex(ctx: FieldCtx) -> tuple[ProjSubspace, ProjSubspace]:
    n = ctx.n
    G = ProjSubspace.span(ctx, [unit(n, i) for i in range(2, n)])
    axis = ProjSubspace.span(ctx, [unit(n, 0), unit(n, 1)])
    return G, axis


def lp_vertex(ctx: FieldCtx, s: int, delta: int) -> tuple[ProjSubspace, ProjSubspace]:
    """Vertex x_0 = 0, x_{s(n-1)} = -delta x_s and axis <e_0, e_{s(n-1)}>."""
    n = ctx.n
    a, b = s % n, (s * (n - 1)) % n
    eq0 = [0] * n
    eq0[0] = 1
    eq1 = [0] * n
    eq1[b] = 1
    eq1[a] = delta
    G = ProjSubspace.from_equations(ctx, [eq0, eq1])
    axis = ProjSubspace.span(ctx, [unit(n, 0), unit(n, b)])
    return G, axis


def new_family_vertex(ctx: FieldCtx) -> tuple[ProjSubspace, ProjSubspace]:
    """Vertex x_0 = 0, x_5 = -x_4 - x_1 + x_2 and axis x_1 = x_2 = x_3 = x_4 = 0."""
    if ctx.n != 6:
        raise GeometryError("this vertex lives in PG(5, q^6)")
    if ctx.q % 4 != 1:
        warnings.warn("the construction is intended for q = 1 mod 4", stacklevel=2)
    one, m1 = 1, ctx.neg(1)
    eq0 = [1, 0, 0, 0, 0, 0]
    eq1 = [0, one, m1, 0, one, one]  # x_5 + x_4 + x_1 - x_2 = 0
    G = ProjSubspace.from_equations(ctx, [eq0, eq1])
    axis = ProjSubspace.span(ctx, [unit(6, 0), unit(6, 5)])
    return G, axis


# -- criteria ---------------------------------------------------------------------


def _check_vertex(G: ProjSubspace) -> None:
    ctx = G.ctx
    if G.dim != ctx.n - 3:
        raise HypothesisViolated(f"vertex must have dimension n-3 = {ctx.n - 3}")
    if meets_subgeometry(G) is not None:
        raise HypothesisViolated("the vertex meets the subgeometry")


@dataclass
class CriterionVerdict:
    verdict: bool | None  # None: hypotheses of the criterion not met
    s: int | None = None
    details: dict = field(default_factory=dict)

    @property
    def applicable(self) -> bool:
        return self.verdict is not None

    def to_json(self) -> dict:
        v = {True: "true", False: "false", None: "not_applicable"}[self.verdict]
        return {"verdict": v, "s": self.s, **self.details}


def pseudoregulus_criterion(G: ProjSubspace) -> CriterionVerdict:
    """Some generator gives dim(G cap G^sigma) = n-4 and G is in no Sigma-hyperplane span."""
    ctx = G.ctx
    if ctx.q <= 2 or ctx.n < 3:
        raise HypothesisViolated("needs q > 2 and n >= 3")
    _check_vertex(G)
    hyper = in_subgeometry_hyperplane(G)
    dims = {s: conjugate_chain(G, s, 1).dim for s in generators(ctx.n)}
    good = [s for s, d in dims.items() if d == ctx.n - 4]
    details = {"intersection_dims": dims, "hyperplane": hyper}
    if hyper is not None or not good:
        return CriterionVerdict(False, good[0] if good else None, details)
    return CriterionVerdict(True, good[0], details)


def _lp_frame(G: ProjSubspace, s: int):
    """R, its conjugate basis r_i = sigma^i(r) and Q = <R^sigma, R^{sigma^{n-1}}> cap G."""
    ctx = G.ctx
    n = ctx.n
    gp = generating_point(G, s)
    R = _normalize(ctx, sigma_vec(ctx, gp.point, s * (n - 2)))
    frame = [sigma_vec(ctx, R, s * i) for i in range(n)]
    line = ProjSubspace.span(ctx, [frame[1], frame[n - 1]])
    meet = intersect([line, G])
    return gp, R, frame, line, meet


def lp_criterion(G: ProjSubspace, s: int | None = None) -> CriterionVerdict:
    """Does <P^{sigma^{n-1}}, P^{sigma^{n-3}}> meet G (intersection number 2)?

    On success ``details['delta']`` is the LP parameter read off in the frame
    r_i = sigma^i(r), with r the representative of R = P^{sigma^{n-2}} whose
    leading coordinate is 1. Other representatives of R change delta to
    delta * lam^{q^s - q^{-s}}.
    """
    ctx = G.ctx
    n = ctx.n
    if n < 4:
        raise HypothesisViolated("needs n >= 4")
    _check_vertex(G)
    cands = [s] if s is not None else generators(n)
    tried = {}
    for t in cands:
        try:
            r = intersection_number(G, t)
        except HypothesisViolated as exc:
            tried[t] = str(exc)
            continue
        tried[t] = r
        if r != 2:
            continue
        gp, R, frame, line, meet = _lp_frame(G, t)
        details = {"P": list(gp.point), "R": list(R), "intn": tried}
        if meet.is_empty():
            return CriterionVerdict(False, t, details)
        if fqnlinalg.rank(ctx, [list(v) for v in frame]) != n:
            raise HypothesisViolated("R and its conjugates do not span the space")
        Q = meet.basis[0]
        coords = fqnlinalg.solve(ctx, [[frame[i][j] for i in range(n)] for j in range(n)], list(Q))
        alpha, beta = coords[1], coords[n - 1]
        if any(coords[i] for i in range(n) if i not in (1, n - 1)) or alpha == 0:
            raise HypothesisViolated("Q is not on the expected line")
        delta = ctx.neg(ctx.div(beta, alpha))
        details.update({"Q": list(Q), "delta": delta})
        return CriterionVerdict(True, t, details)
    return CriterionVerdict(None, None, {"intn": tried})


def charact2_criterion(G: ProjSubspace, s: int) -> CriterionVerdict:
    """Odd-n test: Sigma misses <R, R^{sigma^2}, ..., R^{sigma^{n-2}}, Q'>.

    Q' is the harmonic conjugate of Q with respect to R^sigma and
    R^{sigma^{n-1}}. A nonempty meet carries the witness u.
    """
    ctx = G.ctx
    n = ctx.n
    if n % 2 == 0:
        raise HypothesisViolated("stated for odd n")
    if ctx.p == 2:
        raise HypothesisViolated("harmonic conjugates need odd q")
    if n - 3 < 2:
        raise HypothesisViolated("needs dim G = n-3 >= 2")
    _check_vertex(G)
    if intersection_number(G, s) != 2:
        raise HypothesisViolated("intersection number is not 2")
    gp, R, frame, line, meet = _lp_frame(G, s)
    if meet.vdim != 1:
        raise HypothesisViolated("the line <R^sigma, R^{sigma^{n-1}}> does not meet G in a point")
    Q = meet.basis[0]
    v0, v1 = frame[1], frame[n - 1]
    coords = fqnlinalg.solve(ctx, [[v0[j], v1[j]] for j in range(n)], list(Q))
    a, b = coords
    if a == 0 or b == 0:
        raise HypothesisViolated("Q coincides with R^sigma or R^{sigma^{n-1}}")
    w0 = [ctx.mul(a, c) for c in v0]
    w1 = [ctx.mul(b, c) for c in v1]
    Qp = tuple(ctx.sub(x, y) for x, y in zip(w0, w1))
    W = ProjSubspace.span(ctx, [frame[0]] + [frame[i] for i in range(2, n - 1)] + [list(Qp)])
    if W.vdim != n - 1:
        raise HypothesisViolated("W is not a hyperplane")
    u = meets_subgeometry(W)
    delta = ctx.neg(ctx.div(b, a))
    details = {"Q": list(Q), "Q_prime": list(Qp), "W": W.to_json(), "delta": delta,
               "witness_u": u}
    return CriterionVerdict(u is None, s, details)


# -- vertex from a code ----------------------------------------------------------------


def c_n(f: LinPoly) -> Vec:
    """Coefficient vector of a q-polynomial."""
    return tuple(f.coeffs)


def _fp_vectors(ctx: FieldCtx, vecs: Sequence[Sequence[int]]) -> np.ndarray:
    return np.array([[d for c in v for d in ctx.digits(c)] for v in vecs], dtype=np.int64)


@dataclass
class VertexSubspace:
    f1: LinPoly
    f2: LinPoly
    fp_basis: np.ndarray  # F_p-basis of (V + S) cap W restricted to coordinates (j, k)


def vertex_from_code(V_gens: Sequence[LinPoly], j: int, k: int) -> VertexSubspace:
    """U = <V, S>_{F_q} cap W as {(f1(x), f2(x))}, V = F_{q^n}-span of c_N(V_gens)."""
    if not V_gens:
        raise DegenerateConfiguration("empty generator list")
    ctx = V_gens[0].ctx
    n = ctx.n
    V = ProjSubspace.span(ctx, [c_n(g) for g in V_gens])
    if V.vdim != n - 2:
        raise DegenerateConfiguration(f"V has F_q^n-dimension {V.vdim}, expected {n - 2}")
    lam = ctx.subfield_fp_basis(n)  # F_p-basis of F_{q^n}
    vrows = [[ctx.mul(l, c) for c in b] for b in V.basis for l in lam]
    srows = [subgeometry_vector(ctx, ctx.mul(l, b)) for b in ctx.fq_basis
             for l in ctx.subfield_fp_basis(1)]
    Vfp = _fp_vectors(ctx, vrows)
    Sfp = _fp_vectors(ctx, srows)
    rv, rs = fplinalg.rank(Vfp, ctx.p), fplinalg.rank(Sfp, ctx.p)
    VS = np.concatenate([Vfp, Sfp], axis=0)
    if fplinalg.rank(VS, ctx.p) != rv + rs:
        raise DegenerateConfiguration("V meets S")
    d = ctx.degree
    keep = [i for i in range(n) if i not in (j, k)]
    Wfp = np.zeros((2 * d, n * d), dtype=np.int64)
    for t in range(d):
        Wfp[t, j * d + t] = 1
        Wfp[d + t, k * d + t] = 1
    meet = fplinalg.intersect_row_spaces(VS, Wfp, ctx.p)
    if meet.shape[0] != d:
        raise DegenerateConfiguration(f"(V+S) cap W has F_q-rank {meet.shape[0] // ctx.h}, expected {n}")
    # f1, f2: for x solve sum_t c_t g_t[i] = -x^{q^i} on the coordinates outside {j, k}
    Gm = [[V.basis[t][i] for t in range(n - 2)] for i in keep]
    if fqnlinalg.rank(ctx, Gm) != n - 2:
        raise DegenerateConfiguration("V does not project onto the complement of W")
    vals1, vals2 = [], []
    for b in ctx.fq_basis:
        sv = subgeometry_vector(ctx, b)
        c = fqnlinalg.solve(ctx, Gm, [ctx.neg(sv[i]) for i in keep])
        u = [ctx.add(sv[i], ctx.sum(ctx.mul(c[t], V.basis[t][i]) for t in range(n - 2)))
             for i in range(n)]
        vals1.append(u[j])
        vals2.append(u[k])
    basis = ctx.fq_basis
    f1 = LinPoly.interpolate(ctx, basis, vals1)
    f2 = LinPoly.interpolate(ctx, basis, vals2)
    # the two routes must describe the same F_p-space
    pairs = []
    for b in basis:
        for l in ctx.subfield_fp_basis(1):
            x = ctx.mul(l, b)
            row = [0] * n
            row[j], row[k] = f1(x), f2(x)
            pairs.append(row)
    Pfp = _fp_vectors(ctx, pairs)
    if fplinalg.rank(np.concatenate([Pfp, meet], axis=0), ctx.p) != d:
        raise DegenerateConfiguration("interpolated subspace disagrees with the F_q-span intersection")
    cols = [j * d + t for t in range(d)] + [k * d + t for t in range(d)]
    return VertexSubspace(f1, f2, meet[:, cols])
