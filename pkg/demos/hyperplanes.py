"""The fiber arrangement of the Bestvina-Brady map, its intersection poset,
and generic plane sections."""

from arrkit.graphs import complete_graph
from arrkit.hyper import (
    bb_arrangement,
    characteristic_polynomial,
    chromatic_poly,
    finite_field_point_count,
    generic_section_combinatorics,
    graphic_arrangement,
    intersection_poset,
    poincare,
)

# Braid arrangement of K_3: chi equals the chromatic polynomial.
braid = graphic_arrangement(complete_graph(3))
print("braid chi      ", characteristic_polynomial(braid))
print("chromatic      ", chromatic_poly(complete_graph(3)))
print("braid Poincare ", poincare(braid))

# Six lines in P^2 for shape (2,2,2).
generic = bb_arrangement((2, 2, 2))
special = bb_arrangement((2, 2, 2), special=(1, 1, 1))
p = intersection_poset(generic)
print("cone poset sizes by codim", p.sizes_by_codim())
print("generic        ", poincare(generic))
print("special        ", poincare(special))

# Cutting with a generic plane keeps the codimension-two data.
for parts in [(2, 2, 2), (3, 2, 2), (3, 3, 2)]:
    s = generic_section_combinatorics(bb_arrangement(parts))
    print(parts, s.to_json())

# Counting points over a finite field with small parameters.
small = bb_arrangement((2, 2, 2), alpha={(0, 1): 2, (1, 1): 3, (2, 1): 5}, a=7)
chi = characteristic_polynomial(small)
print("F_11 points", finite_field_point_count(small, 11), "chi(11) =", chi(11))
