from __future__ import annotations

import itertools
import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, strategies as st

from scatlab import fplinalg
from scatlab import rmcode as rm
from scatlab.field import cached_field
from scatlab.linpoly import LinPoly

C33 = cached_field(3, 1, 3)
C34 = cached_field(3, 1, 4)
C23 = cached_field(2, 1, 3)
C223 = cached_field(2, 2, 3)


def valid_eta(ctx, k, start=2):
    return next(e for e in range(start, ctx.order) if rm.eta_is_valid(ctx, k, e))


def brute_distribution(C):
    """Enumerate every codeword from the F_p-basis and take F_p-ranks."""
    ctx = C.ctx
    out = Counter()
    B = C.fp_basis
    for coef in itertools.product(range(ctx.p), repeat=B.shape[0]):
        if not any(coef):
            continue
        f = LinPoly.from_fp_vector(ctx, np.array(coef) @ B % ctx.p)
        r = fplinalg.rank(f.fp_matrix, ctx.p) // ctx.h
        out[r] += 1
    return dict(out)


@st.composite
def small_codes(draw, ctx=C23, max_dim=4):
    rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    return rm.random_code(ctx, draw(st.integers(1, max_dim)), rng)


@given(small_codes())
def test_rank_distribution_matches_enumeration(C):
    assert rm.rank_distribution(C).counts == brute_distribution(C)


@given(st.integers(0, 2**32 - 1))
def test_left_linear_distribution_matches_enumeration(seed):
    rng = np.random.default_rng(seed)
    ctx = C23
    g = LinPoly(ctx, tuple(ctx.random_element(rng) for _ in range(ctx.n)))
    C = rm.RMCode.fqn_span(ctx, [g])
    assert C.is_fqn_left_linear
    assert rm.rank_distribution(C).counts == brute_distribution(C)


def test_distribution_over_nonprime_q():
    C = rm.gabidulin(C223, 1, 1)
    assert rm.rank_distribution(C).counts == brute_distribution(C)
    assert rm.rank_distribution(C).counts == {3: C223.order - 1}


@given(small_codes(ctx=C34, max_dim=10))
def test_dual_dimension_and_involution(C):
    ctx = C.ctx
    D = rm.delsarte_dual(C)
    assert C.dim_fq + D.dim_fq == ctx.n * ctx.n
    assert rm.delsarte_dual(D) == C
    for f in C.fq_basis:
        for g in D.fq_basis:
            assert rm.bilinear(f, g) == 0


@given(small_codes(ctx=C33, max_dim=6))
def test_singleton_bound(C):
    d = rm.min_distance(C)
    assert C.dim_fq <= rm.singleton_dim(C.ctx.n, d)


def test_dual_of_mrd_is_mrd():
    for k in (1, 2, 3):
        C = rm.gabidulin(C34, k, 1)
        assert rm.is_mrd(C)
        assert rm.min_distance(C) == 4 - k + 1
        assert rm.is_mrd(rm.delsarte_dual(C))


def test_gabidulin_idealisers():
    C = rm.gabidulin(C34, 2, 1)
    for ideal in (rm.left_idealiser(C), rm.right_idealiser(C)):
        assert ideal.is_field and ideal.field_degree == 4


def test_idealiser_elements_stabilise_code():
    ctx = C34
    C = rm.twisted_gabidulin(ctx, 2, 1, valid_eta(ctx, 2))
    L = rm.left_idealiser(C)
    R = rm.right_idealiser(C)
    for phi in L.basis[:3]:
        assert all(C.contains(phi.compose(g)) for g in C.fq_basis)
    for phi in R.basis[:3]:
        assert all(C.contains(g.compose(phi)) for g in C.fq_basis)


def test_twisted_idealiser_types_small():
    ctx = C34
    k, s = 2, 1
    eta = valid_eta(ctx, k)
    for h in range(4):
        C = rm.twisted_gabidulin(ctx, k, s, eta, h)
        assert rm.is_mrd(C)
        assert rm.left_idealiser(C).field_degree == math.gcd(4, h)
        assert rm.right_idealiser(C).field_degree == math.gcd(4, s * k - h)


def test_invalid_eta_rejected():
    ctx = C34
    bad = next(e for e in range(1, ctx.order) if not rm.eta_is_valid(ctx, 2, e))
    with pytest.raises(rm.InvalidEta):
        rm.twisted_gabidulin(ctx, 2, 1, bad)
    with pytest.raises(ValueError):
        rm.gabidulin(ctx, 2, 2)


def test_left_linearity_and_bases():
    ctx = C34
    C = rm.gabidulin(ctx, 2, 1)
    assert C.is_fqn_left_linear and C.dim_fqn == 2 and C.dim_fq == 8
    F = rm.RMCode.fq_span(ctx, [LinPoly.identity(ctx)])
    assert not F.is_fqn_left_linear and F.dim_fqn is None
    with pytest.raises(rm.NotLeftLinear):
        rm.gabidulin_recognize(F)


def test_recognizers():
    ctx = cached_field(3, 1, 6)
    assert rm.gabidulin_recognize(rm.gabidulin(ctx, 3, 1)) == [1, 5]
    H = rm.twisted_gabidulin(ctx, 3, 1, valid_eta(ctx, 3))
    assert rm.gabidulin_recognize(H) == []
    rep = rm.twisted_recognize(H)
    assert rep.recognized
    w = rep.accepted[0]
    # the recovered data rebuild the code
    rebuilt = rm.RMCode.fqn_span(ctx, [w.p.twist(w.s * j) for j in range(1, 3)] + [w.q_gen])
    assert rebuilt == H
    assert not rm.twisted_recognize(rm.gabidulin(ctx, 3, 1)).recognized


def test_h_polynomial_dual():
    ctx = C34
    f = LinPoly.from_terms(ctx, {1: 1, 3: 5})
    C = rm.RMCode.fqn_span(ctx, [LinPoly.identity(ctx), f])
    assert rm.delsarte_dual(C) == rm.RMCode.fqn_span(ctx, rm.h_polynomials(f, 1))


def test_budget_guard():
    C = rm.RMCode.full(C34)
    with pytest.raises(rm.BudgetExceeded):
        rm.rank_distribution(C, budget=100)


def test_code_from_scattered_subspace_is_mrd():
    ctx = C34
    f = LinPoly.monomial(ctx, 1)
    C = rm.code_from_subspace(f)
    assert rm.is_mrd(C) and rm.min_distance(C) == 3
