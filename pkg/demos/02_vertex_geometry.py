"""
Linear sets as projections of the subgeometry
=============================================

The vertex G of PG(5, q^6) given by x_0 = 0 and x_5 + x_4 + x_1 - x_2 = 0
misses Sigma; projecting Sigma from G onto the line x_1 = ... = x_4 = 0
gives the new linear set. The intersection number separates it from the
pseudoregulus (1) and LP (2) types.
"""

from scatlab import field_for_q, new_scattered_poly
from scatlab import geometry as geo

ctx = field_for_q(5, 6)
G, axis = geo.new_family_vertex(ctx)
print(G)

# %% G misses Sigma; its conjugate chain shrinks 3 -> 1 -> empty
print("meets Sigma:", geo.meets_subgeometry(G))
print("chain dims, s=1:", geo.chain_dims(G, 1, 2))
print("intersection numbers:", {s: geo.intersection_number(G, s) for s in geo.generators(6)})

# %% the projection, as a q-polynomial and as a point set
pr = geo.project(G, axis)
print("projected polynomial:", pr.as_linpoly())
print("equals L_f:", pr.points == geo.linset_points(new_scattered_poly(ctx)))

# %% the standard vertices for comparison
for name, (V, _) in {"pseudoregulus": geo.pseudoregulus_vertex(ctx),
                     "LP delta=2": geo.lp_vertex(ctx, 1, 2)}.items():
    print(name, "intn:", geo.intersection_number(V, 1),
          "pseudoregulus criterion:", geo.pseudoregulus_criterion(V).verdict,
          "LP criterion:", geo.lp_criterion(V).to_json().get("delta"))
