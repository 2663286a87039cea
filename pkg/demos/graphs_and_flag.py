"""Which graphs give quasi-projective Bestvina-Brady groups, and what their
flag complexes look like."""

from arrkit.flag import finiteness_report, flag_complex, simplicial_betti
from arrkit.graphs import (
    classify_bb_quasiprojective,
    clique_counts,
    cycle_graph,
    is_chordal,
    multipartite_graph,
    nonhypersolvable_flag,
    path_graph,
    wheel_graph,
)

# A tree, an octahedron, a square and a pentagon.
for label, g in [
    ("path P4", path_graph(4)),
    ("K(2,2,2)", multipartite_graph((2, 2, 2))),
    ("K(1,1,2,3)", multipartite_graph((1, 1, 2, 3))),
    ("square", cycle_graph(4)),
    ("pentagon", cycle_graph(5)),
]:
    c = classify_bb_quasiprojective(g)
    print(f"{label:12s} {c.kind:20s} {c.structure() or ''}")

# The octahedron's flag complex is a 2-sphere; K(2,3) gives two circles.
for parts in [(2, 2, 2), (2, 3), (3, 3, 3)]:
    c = flag_complex(multipartite_graph(parts))
    print(parts, "f-vector", c.f_vector(), "betti", simplicial_betti(c).betti)

# Finiteness: the Bestvina-Brady group of K(2,2,2) is F_2 but not FP_3.
rep = finiteness_report(multipartite_graph((2, 2, 2)), 3, primes=(2, 3))
for e in rep.entries:
    print(f"k={e.k}: FP {e.fp:15s} F {e.f:15s} {e.f_reason}")

# Wheels with at least four spokes are never chordal and their graphic
# arrangements are not hypersolvable.
for r in range(4, 9):
    w = wheel_graph(r)
    print(f"wheel {r}: cliques {clique_counts(w, 3)} chordal={is_chordal(w)} "
          f"nonhypersolvable={nonhypersolvable_flag(w)}")
