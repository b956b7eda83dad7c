"""
From scattered subspaces to MRD codes
=====================================

C_f = <x, f(x)>_{F_q^n} is MRD exactly when U_f is scattered. The demo audits
the code of the new polynomial and exercises the (twisted) Gabidulin tools.
"""

from scatlab import field_for_q, new_scattered_poly
from scatlab import rmcode as rm

# %% the code of the new polynomial at q = 5
ctx = field_for_q(5, 6)
C = rm.code_from_subspace(new_scattered_poly(ctx))
print(C, "d =", rm.min_distance(C), "MRD:", rm.is_mrd(C))
print("left idealiser:", rm.left_idealiser(C).to_json())
print("Gabidulin for s in", rm.gabidulin_recognize(C))

# %% Gabidulin and twisted Gabidulin codes over F_3^6
small = field_for_q(3, 6)
G = rm.gabidulin(small, 3, 1)
eta = next(e for e in range(2, small.order) if rm.eta_is_valid(small, 3, e))
H = rm.twisted_gabidulin(small, 3, 1, eta)
print("G_{3,1}:", rm.gabidulin_recognize(G), "H_{3,1}:", rm.gabidulin_recognize(H))
rep = rm.twisted_recognize(H)
print("twisted recognition:", rep.recognized, "eta found:", rep.accepted[0].eta, "dims:", rep.dims)

# %% idealisers of H_{3,1}(eta, h)
for h in range(4):
    Ch = rm.twisted_gabidulin(small, 3, 1, eta, h)
    print(f"h={h}: left {rm.left_idealiser(Ch).to_json()['type']}, right {rm.right_idealiser(Ch).to_json()['type']}")

# %% Delsarte duality
D = rm.delsarte_dual(G)
print("dual dims:", G.dim_fq, "+", D.dim_fq, "; dual is Gabidulin for s in", rm.gabidulin_recognize(D))
