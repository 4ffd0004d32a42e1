"""
Equations, automorphisms and Jacobians
======================================

For g prime to 3 the curve y^3 = x^g (x^g - 1) has genus g and carries
Z3 x D_g. We check the maps against the equation, close them into the full
group, and split the Jacobian along Galois orbits of irreducible
representations.
"""

from rsaut.catalog import named
from rsaut.curves import c24_maps, closure, is_automorphism, named_curve, superelliptic_genus
from rsaut.groups import are_isomorphic
from rsaut.jacobian import decomposition

g = 7
curve = named_curve("C24", g=g)
print(curve, " genus", superelliptic_genus(curve))

maps = c24_maps(g)
for name, m in maps.items():
    print(name, is_automorphism(curve, m))

elements, G = closure(curve, list(maps.values()))
print("closure order", len(elements), "is Z3 x D7:", are_isomorphic(G, named("z3_x_dihedral", g)))

table = decomposition(g)
for row in table.rows:
    print(f"{row.name:6s} dim {row.factor_dim}  multiplicity {row.multiplicity}")
print("total", table.total)
