from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from scatlab.field import (CompositeP, DegreeMismatch, ReducibleModulus, cached_field, field_for_q,
                           is_irreducible, least_irreducible, make_field)


# -- naive oracle: polynomials over F_p as digit lists -----------------------------------


def naive_mul(ctx, a, b):
    p, m, d = ctx.p, list(ctx.modulus), ctx.degree
    da, db = ctx.digits(a), ctx.digits(b)
    prod = [0] * (2 * d - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            for i in range(d + 1):
                prod[k - d + i] = (prod[k - d + i] - c * m[i]) % p
    return ctx.element(prod[:d])


def naive_has_root_factor(poly, p):
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    for k in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=k):
            div = list(tail) + [1]
            rem = list(poly)
            for i in range(len(rem) - 1, k - 1, -1):
                c = rem[i]
                if c:
                    for j in range(k + 1):
                        rem[i - k + j] = (rem[i - k + j] - c * div[j]) % p
            if not any(rem[:k]):
                return True
    return False


def test_mul_matches_schoolbook(small_ctx, rng):
    ctx = small_ctx
    for _ in range(200):
        a, b = ctx.random_element(rng), ctx.random_element(rng)
        assert ctx.mul(a, b) == naive_mul(ctx, a, b)


def test_mul_without_tables_matches_tables(rng):
    with_t = make_field(3, 1, 4)
    without = make_field(3, 1, 4, table_threshold=0)
    assert not without.has_tables
    for _ in range(200):
        a, b = with_t.random_element(rng), with_t.random_element(rng)
        assert with_t.mul(a, b) == without.mul(a, b)
        if a:
            assert with_t.inv(a) == without.inv(a)


def test_field_axioms_exhaustive():
    ctx = cached_field(2, 1, 4)
    for a in ctx.elements():
        assert ctx.add(a, ctx.neg(a)) == 0
        if a:
            assert ctx.mul(a, ctx.inv(a)) == 1
        for b in ctx.elements():
            assert ctx.mul(a, b) == ctx.mul(b, a)


def test_frobenius_is_power(small_ctx, rng):
    ctx = small_ctx
    for _ in range(50):
        x = ctx.random_element(rng)
        for s in range(ctx.n + 1):
            assert ctx.frobenius(x, s) == ctx.pow(x, ctx.q**s)


def test_fq_is_fixed_field(small_ctx):
    ctx = small_ctx
    fixed = [x for x in ctx.elements() if ctx.pow(x, ctx.q) == x]
    assert sorted(fixed) == list(ctx.fq_elements)
    assert len(fixed) == ctx.q


def test_norm_and_trace_land_in_fq(small_ctx, rng):
    ctx = small_ctx
    fq = set(ctx.fq_elements)
    for _ in range(50):
        x = ctx.random_element(rng)
        assert ctx.norm(x) in fq
        assert ctx.trace(x) in fq
        prod = 1
        for i in range(ctx.n):
            prod = ctx.mul(prod, ctx.frobenius(x, i))
        assert ctx.norm(x) == prod


def test_norm_is_onto_fq_star():
    ctx = cached_field(3, 1, 4)
    counts = {}
    for x in range(1, ctx.order):
        counts[ctx.norm(x)] = counts.get(ctx.norm(x), 0) + 1
    assert set(counts.values()) == {(ctx.order - 1) // (ctx.q - 1)}


def test_fq_coordinates_roundtrip(small_ctx, rng):
    ctx = small_ctx
    fq = set(ctx.fq_elements)
    for _ in range(50):
        x = ctx.random_element(rng)
        coords = ctx.fq_coordinates(x)
        assert all(c in fq for c in coords)
        assert ctx.sum(ctx.mul(c, b) for c, b in zip(coords, ctx.fq_basis)) == x


def test_array_ops_match_scalar(small_ctx, rng):
    ctx = small_ctx
    a = rng.integers(0, ctx.order, 300)
    b = rng.integers(0, ctx.order, 300)
    assert list(ctx.mul_array(a, b)) == [ctx.mul(int(x), int(y)) for x, y in zip(a, b)]
    assert list(ctx.add_array(a, b)) == [ctx.add(int(x), int(y)) for x, y in zip(a, b)]
    nz = a[a != 0]
    assert list(ctx.inv_array(nz)) == [ctx.inv(int(x)) for x in nz]


def test_mul_matrix_and_frob_matrix(small_ctx, rng):
    ctx = small_ctx
    c = ctx.random_element(rng)
    xs = np.arange(ctx.order)
    assert list(ctx.apply_fp(ctx.mul_matrix(c), xs)) == [ctx.mul(c, int(x)) for x in xs]
    assert list(ctx.apply_fp(ctx.frob_matrix(1), xs)) == [ctx.frobenius(int(x), 1) for x in xs]


def test_primitive_element_generates():
    ctx = cached_field(5, 1, 3)
    g = ctx.primitive_element
    seen = {ctx.pow(g, e) for e in range(ctx.order - 1)}
    assert len(seen) == ctx.order - 1


def test_default_modulus_is_least_irreducible():
    mod = least_irreducible(3, 4)
    assert is_irreducible(mod, 3)
    # every monic polynomial below it in integer order is reducible
    d = 4
    val = sum(c * 3**i for i, c in enumerate(mod[:d]))
    for v in range(val):
        cand = [(v // 3**i) % 3 for i in range(d)] + [1]
        assert not is_irreducible(cand, 3)


@given(st.sampled_from([2, 3, 5]), st.integers(2, 5), st.data())
def test_irreducibility_matches_trial_division(p, d, data):
    tail = data.draw(st.lists(st.integers(0, p - 1), min_size=d, max_size=d))
    poly = tail + [1]
    assert is_irreducible(poly, p) == (not naive_has_root_factor(poly, p))


def test_reducible_modulus_rejected():
    # x^6 + x + 1 over F_5 has a factor found by trial division
    poly = [1, 1, 0, 0, 0, 0, 1]
    assert naive_has_root_factor(poly, 5)
    with pytest.raises(ReducibleModulus):
        make_field(5, 1, 6, poly)


def test_bad_parameters():
    with pytest.raises(CompositeP):
        make_field(6, 1, 2)
    with pytest.raises(DegreeMismatch):
        make_field(3, 1, 4, [1, 0, 1])
    with pytest.raises(CompositeP):
        field_for_q(12, 2)


def test_explicit_modulus_is_used():
    ctx = make_field(2, 1, 4, [1, 0, 0, 1, 1])
    assert ctx.modulus == (1, 0, 0, 1, 1)
    assert ctx != make_field(2, 1, 4)


def test_field_for_q_prime_power():
    ctx = field_for_q(9, 3)
    assert (ctx.p, ctx.h, ctx.n, ctx.q, ctx.order) == (3, 2, 3, 9, 729)
