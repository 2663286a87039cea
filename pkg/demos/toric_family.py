"""The general-position toric family: closed form against brute force,
generic against special fibers, and the bifurcation set."""

from arrkit.exact import toric_poincare
from arrkit.graphs import complete_graph
from arrkit.hyper import char_poly
from arrkit.toric import (
    ROOTS,
    ParamToricFamily,
    bifurcation_set,
    brute_force_family_poset,
    family_betti,
    family_charpoly,
    hyperplane_toric_compare,
)

for weights in [(1, 1, 1), (1, 2, 3)]:
    gen = ParamToricFamily((2, 2, 2), weights)
    sp = ParamToricFamily((2, 2, 2), weights, special=(1, 1, 1))
    for label, f in [("generic", gen), ("special", sp)]:
        closed = family_charpoly(f)
        brute = char_poly(brute_force_family_poset(f))
        print(f"d={weights} {label:8s} chi={closed}  brute={brute}  betti={family_betti(f).betti}")

# All n_i = 2, all d_i = 1: generic minus special is exactly t^r.
for r in range(2, 6):
    g = ParamToricFamily((2,) * (r + 1), (1,) * (r + 1))
    s = ParamToricFamily((2,) * (r + 1), (1,) * (r + 1), special=(1,) * (r + 1))
    diff = toric_poincare(family_charpoly(g), r) - toric_poincare(family_charpoly(s), r)
    print(f"r={r}: generic - special = {diff}")

# Roots of unity collapse the bifurcation set.
rep = bifurcation_set(ParamToricFamily((3, 3, 3, 3), (1, 1, 1, 1), alpha_relations=ROOTS))
print("roots of unity:", rep.to_json())

cmp = hyperplane_toric_compare(complete_graph(3))
print("triangle: chi_A =", cmp.chi_hyperplane, " chi_T =", cmp.chi_toric, " eps =", cmp.epsilon)
