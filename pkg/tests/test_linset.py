from __future__ import annotations

from collections import Counter

import numpy as np
import pytest
from hypothesis import given, strategies as st

from scatlab.field import cached_field
from scatlab.linpoly import LinPoly
from scatlab.linset import (BudgetExceeded, InvalidParameter, LinearSetSpec, catalog_family,
                            golden_deltas, is_scattered, is_subfield_linear, known_catalog, lp_poly,
                            max_field_of_linearity, new_scattered_poly, point_weight, scattered_size,
                            weight_spectrum)

FIELDS = [cached_field(3, 1, 4), cached_field(2, 1, 5), cached_field(5, 1, 3), cached_field(2, 2, 3)]


def histogram_spectrum(f):
    """Independent route: every x != 0 lands on the point m = f(x)/x; a point of
    weight w is hit q^w - 1 times."""
    ctx = f.ctx
    xs = np.arange(1, ctx.order)
    ms = ctx.mul_array(f.eval_array(xs), ctx.inv_array(xs))
    hits = Counter(ms.tolist())
    out = Counter()
    for m, c in hits.items():
        w = round(np.log(c + 1) / np.log(ctx.q))
        assert ctx.q**w - 1 == c
        out[w] += 1
    return dict(out)


@st.composite
def polys(draw):
    ctx = draw(st.sampled_from(FIELDS))
    return LinPoly(ctx, tuple(draw(st.integers(0, ctx.order - 1)) for _ in range(ctx.n)))


@given(polys())
def test_spectrum_matches_histogram(f):
    sp = weight_spectrum(LinearSetSpec.of(f))
    assert sp.counts == histogram_spectrum(f)
    assert sp.mass_ok()


@given(polys())
def test_scattered_iff_all_weights_one(f):
    spec = LinearSetSpec.of(f)
    v = is_scattered(spec)
    spectrum = histogram_spectrum(f)
    assert v.scattered == (set(spectrum) == {1})
    if not v.scattered:
        assert v.witness_weight >= 2
        assert point_weight(spec, v.witness) == v.witness_weight


@given(polys())
def test_adjoint_defines_same_linear_set(f):
    ctx = f.ctx
    xs = np.arange(1, ctx.order)
    pts = lambda g: set(ctx.mul_array(g.eval_array(xs), ctx.inv_array(xs)).tolist())
    assert pts(f) == pts(f.adjoint())


@given(polys(), st.data())
def test_scatteredness_invariant_under_gl_action(f, data):
    # (x, f(x)) -> (x, f(x) + c x) and -> (x, a f(x)) preserve the weights
    ctx = f.ctx
    c = data.draw(st.integers(0, ctx.order - 1))
    a = data.draw(st.integers(1, ctx.order - 1))
    g = f + LinPoly.monomial(ctx, 0, c)
    base = weight_spectrum(LinearSetSpec.of(f)).counts
    assert weight_spectrum(LinearSetSpec.of(g)).counts == base
    assert weight_spectrum(LinearSetSpec.of(f.scale(a))).counts == base


def test_frozen_spectra():
    # values frozen from the histogram oracle
    ctx = cached_field(3, 1, 4)
    f = LinPoly.from_terms(ctx, {1: 1, 2: 1})
    assert weight_spectrum(LinearSetSpec.of(f)).counts == {1: 32, 2: 2}
    assert histogram_spectrum(f) == {1: 32, 2: 2}
    g = LinPoly.monomial(ctx, 1)
    assert weight_spectrum(LinearSetSpec.of(g)).counts == {1: 40}
    assert weight_spectrum(LinearSetSpec.of(LinPoly.zero(ctx))).counts == {4: 1}


def test_point_weight_infinity_and_zero():
    ctx = cached_field(3, 1, 4)
    f = LinPoly.monomial(ctx, 1)
    spec = LinearSetSpec.of(f)
    assert point_weight(spec, None) == 0
    assert point_weight(spec, 0) == 0
    assert point_weight(LinearSetSpec.of(LinPoly.zero(ctx)), 0) == 4


def test_pseudoregulus_and_lp_scattered():
    ctx = cached_field(3, 1, 4)
    assert is_scattered(LinearSetSpec.of(LinPoly.monomial(ctx, 1))).scattered
    # gcd(2, 4) != 1: x^{q^2} defines F_{q^2}-linear, non-scattered set
    assert not is_scattered(LinearSetSpec.of(LinPoly.monomial(ctx, 2))).scattered


def test_lp_norm_dichotomy_small():
    ctx = cached_field(2, 1, 5)
    for delta in range(1, ctx.order):
        v = is_scattered(LinearSetSpec.of(lp_poly(ctx, 1, delta))).scattered
        assert v == (ctx.norm(delta) != 1)


def test_spectrum_reports_size():
    ctx = cached_field(3, 1, 4)
    sp = weight_spectrum(LinearSetSpec.of(LinPoly.monomial(ctx, 1)))
    assert sp.size == scattered_size(3, 4)
    assert sp.to_json() == {"1": 40}


def test_budget_guard():
    ctx = cached_field(3, 1, 4)
    spec = LinearSetSpec.of(LinPoly.monomial(ctx, 1))
    with pytest.raises(BudgetExceeded):
        weight_spectrum(spec, budget=10)
    assert weight_spectrum(spec, budget=10, force=True).size == 40


def test_threaded_sweep_agrees():
    ctx = cached_field(3, 1, 4)
    f = LinPoly.from_terms(ctx, {1: 1, 2: 1})
    a = weight_spectrum(LinearSetSpec.of(f), chunk=7, threads=3).counts
    assert a == weight_spectrum(LinearSetSpec.of(f)).counts


def test_field_of_linearity():
    ctx = cached_field(2, 1, 6)
    f = LinPoly.monomial(ctx, 2)  # x^{q^2} is F_{q^2}-linear
    assert is_subfield_linear(f, 2)
    assert not is_subfield_linear(f, 3)
    assert max_field_of_linearity(LinearSetSpec.of(f)) == 2
    assert max_field_of_linearity(LinearSetSpec.of(LinPoly.monomial(ctx, 1))) == 1


def test_new_polynomial_shape():
    ctx = cached_field(5, 1, 6)
    f = new_scattered_poly(ctx)
    m1 = ctx.neg(1)
    assert f.coeffs == (0, 1, m1, 0, 1, 1)


def test_catalog_conditions():
    ctx = cached_field(5, 1, 6)
    fams = {f.name: f for f in known_catalog(ctx)}
    assert set(fams) == {"U1", "U2", "U3", "U4"}
    assert golden_deltas(ctx) == [2]
    assert fams["U4"].is_valid(ctx, 2)
    assert not fams["U4"].is_valid(ctx, 3)
    with pytest.raises(InvalidParameter):
        fams["U4"].polynomial(ctx, 3)
    d = next(fams["U2"].valid_deltas(ctx))
    assert ctx.norm(d) not in (0, 1)
    assert fams["U2"].polynomial(ctx, d) == lp_poly(ctx, 1, d)
    with pytest.raises(InvalidParameter):
        known_catalog(cached_field(3, 1, 4))
    with pytest.raises(KeyError):
        catalog_family(ctx, "U9")


def test_golden_deltas_are_roots():
    for q in (9, 13):
        from scatlab.field import field_for_q

        ctx = field_for_q(q, 6)
        ds = golden_deltas(ctx)
        assert len(ds) == 2
        for d in ds:
            assert ctx.add(ctx.mul(d, d), d) == 1
