"""
Is the new set equivalent to a known one?
=========================================

GammaL-equivalence of U_f and U_h becomes a system in (a, b, c, d) whose
unknowns enter through q-polynomials. Elimination leaves one free unknown,
which is swept exhaustively.
"""

import time

from scatlab import field_for_q, new_scattered_poly
from scatlab.equiv import best_elimination, build_system, gl_equivalent, pgl_linear_set_equivalent
from scatlab.linset import catalog_family, golden_deltas

# %% q = 5: the system against L^4_2 and its solutions
ctx = field_for_q(5, 6)
f = new_scattered_poly(ctx)
h = catalog_family(ctx, "U4").polynomial(ctx, 2)
system = build_system(f, h)
print("\n".join(system.render()))
el = best_elimination(system)
print("eliminated", [s[0] for s in el.steps], "free", el.free)
v = gl_equivalent(f, h, automorphisms=[0])
print(v.status, [w.to_json() for w in v.witnesses[:2]])

# %% q = 9: no solutions for either delta with delta^2 + delta = 1
ctx = field_for_q(9, 6)
f = new_scattered_poly(ctx)
for delta in golden_deltas(ctx):
    t0 = time.perf_counter()
    v = pgl_linear_set_equivalent(f, catalog_family(ctx, "U4").polynomial(ctx, delta))
    print(f"delta={delta}: {v.status} ({time.perf_counter() - t0:.1f}s)")
