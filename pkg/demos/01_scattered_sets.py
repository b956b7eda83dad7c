"""
A new maximum scattered linear set in PG(1, q^6)
================================================

Build F_{q^6}, evaluate the weight spectrum of L_f for
f = x^q - x^q^2 + x^q^4 + x^q^5 and compare with the known families.
"""

import time

from scatlab import LinearSetSpec, field_for_q, is_scattered, known_catalog, new_scattered_poly, weight_spectrum
from scatlab.linpoly import LinPoly

# %% the field F_{5^6}; elements are integers, digits in base 5 are coordinates
ctx = field_for_q(5, 6)
print(ctx)

# %% the polynomial and its weight spectrum
f = new_scattered_poly(ctx)
print(f)
sp = weight_spectrum(LinearSetSpec.of(f))
print("spectrum", sp.counts, "size", sp.size, "mass ok", sp.mass_ok())

# %% a non-scattered example: x^q + x^q^2 has two points of weight 2 over F_3^4
small = field_for_q(3, 4)
g = LinPoly.from_terms(small, {1: 1, 2: 1})
print(g, weight_spectrum(LinearSetSpec.of(g)).counts)

# %% the catalog at q = 5
for fam in known_catalog(ctx):
    print(fam.name, fam.formula, "|", fam.condition)

# %% scatteredness for larger q (seconds each)
for q in (9, 13):
    t0 = time.perf_counter()
    v = is_scattered(LinearSetSpec.of(new_scattered_poly(field_for_q(q, 6))))
    print(f"q={q}: scattered={v.scattered} checked={v.checked} in {time.perf_counter() - t0:.1f}s")
