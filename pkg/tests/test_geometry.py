from __future__ import annotations

import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from scatlab import geometry as geo
from scatlab import rmcode as rm
from scatlab.field import cached_field
from scatlab.linpoly import LinPoly
from scatlab.linset import lp_poly, new_scattered_poly

C34 = cached_field(3, 1, 4)
C35 = cached_field(3, 1, 5)
C56 = cached_field(5, 1, 6)


def brute_meets_sigma(S):
    ctx = S.ctx
    return any(S.contains(geo.subgeometry_vector(ctx, x)) for x in range(1, ctx.order))


@st.composite
def subspaces(draw, ctx=C34, max_rows=3):
    k = draw(st.integers(1, max_rows))
    rows = [[draw(st.integers(0, ctx.order - 1)) for _ in range(ctx.n)] for _ in range(k)]
    return geo.ProjSubspace.span(ctx, rows)


@given(subspaces())
def test_meets_subgeometry_matches_enumeration(S):
    x = geo.meets_subgeometry(S)
    assert (x is not None) == brute_meets_sigma(S)
    if x is not None:
        assert S.contains(geo.subgeometry_vector(S.ctx, x))


@given(subspaces())
def test_subgeometry_meet_dim_counts_points(S):
    ctx = S.ctx
    hits = sum(S.contains(geo.subgeometry_vector(ctx, x)) for x in range(1, ctx.order))
    assert hits == ctx.q ** geo.subgeometry_meet_dim(S) - 1


@given(subspaces(), subspaces())
def test_intersection_dimension_formula(A, B):
    ctx = A.ctx
    meet = geo.intersect([A, B])
    join = A.join(B)
    assert meet.vdim + join.vdim == A.vdim + B.vdim
    assert A.contains_subspace(meet) and B.contains_subspace(meet)


@given(subspaces(), st.integers(0, 7))
def test_sigma_fixes_subgeometry_and_preserves_dim(S, s):
    ctx = S.ctx
    for x in (1, 5, 17):
        v = geo.subgeometry_vector(ctx, x)
        assert geo.ProjSubspace.span(ctx, [geo.sigma_vec(ctx, v, s)]) == geo.ProjSubspace.span(ctx, [v])
    T = geo.sigma_conjugate(S, s)
    assert T.vdim == S.vdim
    assert geo.sigma_conjugate(T, ctx.n - s % ctx.n) == S


@given(subspaces())
def test_equations_describe_subspace(S):
    T = geo.ProjSubspace.from_equations(S.ctx, S.equations())
    assert T == S


def test_sigma_equation_maps_hyperplanes():
    ctx = C34
    rng = np.random.default_rng(3)
    a = [ctx.random_element(rng) for _ in range(ctx.n)]
    H = geo.ProjSubspace.from_equations(ctx, [a])
    image = geo.sigma_conjugate(H, 1)
    assert image == geo.ProjSubspace.from_equations(ctx, [geo.sigma_equation(ctx, a, 1)])


def test_subgeometry_hyperplane_test():
    ctx = C34
    a = 7
    eq = [ctx.frobenius(a, j) for j in range(ctx.n)]
    H = geo.ProjSubspace.from_equations(ctx, [eq])
    # a line inside that hyperplane
    G = geo.ProjSubspace.span(ctx, H.basis[:2])
    assert geo.in_subgeometry_hyperplane(G) is not None
    assert geo.in_subgeometry_hyperplane(geo.ProjSubspace.whole(ctx)) is None


def test_new_vertex_structure():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        G, axis = geo.new_family_vertex(C56)
    assert geo.meets_subgeometry(G) is None
    assert geo.chain_dims(G, 1, 2) == [3, 1, -1]
    assert geo.intersection_number(G, 1) == 3
    assert geo.intersection_number(G, 5) == 3
    gp = geo.generating_point(G, 1)
    # P, P^sigma lie in G (k - r + 2 = 2 conjugates) and P^{sigma^-1} does not
    assert gp.r == 3 and gp.count == 2
    assert all(G.contains(geo.sigma_vec(C56, gp.point, i)) for i in range(2))
    assert not G.contains(geo.sigma_vec(C56, gp.point, -1))


def test_warns_outside_intended_q():
    with pytest.warns(UserWarning):
        geo.new_family_vertex(cached_field(3, 1, 6))


def test_projection_of_new_vertex_is_new_set():
    G, axis = geo.new_family_vertex(C56)
    pr = geo.project(G, axis)
    assert pr.as_linpoly() == new_scattered_poly(C56)
    assert pr.points == geo.linset_points(new_scattered_poly(C56))
    assert pr.spectrum() == {1: 3906}


def test_pseudoregulus_vertex():
    ctx = C34
    G, axis = geo.pseudoregulus_vertex(ctx)
    assert geo.intersection_number(G, 1) == 1
    gp = geo.generating_point(G, 1)
    assert geo.ProjSubspace.span(ctx, [gp.point]) == geo.ProjSubspace.span(ctx, [geo.unit(4, 2)])
    pr = geo.project(G, axis)
    assert pr.as_linpoly() == LinPoly.monomial(ctx, 1)


@given(st.integers(1, C35.order - 1))
def test_lp_vertex_projects_to_lp(delta):
    ctx = C35
    for s in (1, 2):
        G, axis = geo.lp_vertex(ctx, s, delta)
        assert geo.project(G, axis).as_linpoly() == lp_poly(ctx, s, delta)


def test_generating_point_properties():
    ctx = C35
    G, _ = geo.lp_vertex(ctx, 1, 7)
    gp = geo.generating_point(G, 1)
    assert gp.r == 2
    for i in range(gp.count):
        assert G.contains(geo.sigma_vec(ctx, gp.point, i))
    assert not G.contains(geo.sigma_vec(ctx, gp.point, -1))
    L = geo.orbit_span(ctx, gp.point, 1)
    assert L.vdim == ctx.n


def test_hypothesis_violations():
    ctx = C34
    S = geo.ProjSubspace.span(ctx, [geo.subgeometry_vector(ctx, 1)])
    with pytest.raises(geo.HypothesisViolated):
        geo.intersection_number(S, 1)
    G, _ = geo.pseudoregulus_vertex(ctx)
    with pytest.raises(geo.HypothesisViolated):
        geo.intersection_number(G, 2)
    with pytest.raises(geo.VertexMeetsAxis):
        geo.project(G, geo.ProjSubspace.span(ctx, [geo.unit(4, 0), geo.unit(4, 2)]))
    with pytest.raises(geo.GeometryError):
        geo.project(S, S)
    with pytest.raises(geo.HypothesisViolated):
        geo.charact2_criterion(G, 1)  # n even


def test_criteria_on_standard_vertices():
    G, _ = geo.pseudoregulus_vertex(C56)
    assert geo.pseudoregulus_criterion(G).verdict is True
    assert geo.lp_criterion(G).verdict is None
    Glp, _ = geo.lp_vertex(C56, 1, 2)
    lp = geo.lp_criterion(Glp, 1)
    assert lp.verdict is True and lp.details["delta"] == 2
    Gn, _ = geo.new_family_vertex(C56)
    assert geo.pseudoregulus_criterion(Gn).verdict is False
    assert geo.lp_criterion(Gn).verdict is None  # intersection number 3


def test_charact2_witness_gives_norm_relation():
    ctx = C35
    for delta in range(1, ctx.order, 11):
        G, _ = geo.lp_vertex(ctx, 1, delta)
        v = geo.charact2_criterion(G, 1)
        assert v.verdict == (ctx.norm(delta) != 1)
        assert v.details["delta"] == delta
        u = v.details["witness_u"]
        if u is not None:
            e = ctx.q * (ctx.q ** (ctx.n - 2) - 1)
            assert ctx.pow(u, e) == delta


@pytest.mark.parametrize("ctx,f", [(C34, LinPoly.monomial(C34, 1)), (C56, new_scattered_poly(C56))])
def test_vertex_from_code_matches_projection(ctx, f):
    n = ctx.n
    gens = rm.delsarte_dual(rm.code_from_subspace(f)).fqn_basis
    V = geo.ProjSubspace.span(ctx, [geo.c_n(g) for g in gens])
    vs = geo.vertex_from_code(gens, 0, 1)
    pr = geo.project(V, geo.ProjSubspace.span(ctx, [geo.unit(n, 0), geo.unit(n, 1)]))
    assert geo._enumerate_points(vs.f1, vs.f2) == pr.points


def test_vertex_from_code_rejects_bad_input():
    ctx = C34
    with pytest.raises(geo.DegenerateConfiguration):
        geo.vertex_from_code([], 0, 1)
    with pytest.raises(geo.DegenerateConfiguration):
        geo.vertex_from_code([LinPoly.identity(ctx)], 0, 1)
