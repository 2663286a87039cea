"""Finite presentations of Bestvina-Brady groups and Artin kernels, checked
for soundness inside the right-angled Artin group."""

from arrkit.graphs import MultipartiteShape, complete_graph, multipartite_graph
from arrkit.groups import (
    CharacterData,
    abelianization,
    artin_kernel_presentation,
    bb_presentation,
    betti_bb,
    rs_window_presentation,
    tietze_simplify,
    truncated_poincare,
)

kp = bb_presentation((2, 2, 2))
p = kp.presentation
print(f"N for K(2,2,2): {p.rank} generators, {len(p.relators)} relators")
for r in p.relators:
    print("   ", p.word_str(r))
print("unsound relators:", kp.unsound_relators())
print("abelianization:", abelianization(p).to_json())

for d in [(1, 1, 1), (2, 2, 1), (1, 2, 3)]:
    c = CharacterData(MultipartiteShape((2, 2, 2)), d)
    ak = artin_kernel_presentation(c)
    print(f"kernel of d={d}: e={c.e}, {ak.presentation.rank} generators, "
          f"H_1 rank {abelianization(ak.presentation).rank}, sound={not ak.unsound_relators()}")

# Windowed Reidemeister-Schreier, then Tietze moves.
for g, w in [(complete_graph(2), 2), (multipartite_graph((2, 2)), 1), (multipartite_graph((2, 2, 2)), 2)]:
    raw = rs_window_presentation(g, window=w).presentation
    s = tietze_simplify(raw)
    print(f"window {w}: {raw.rank} -> {s.rank} generators, H_1 {abelianization(s).to_json()}")

for parts in [(2, 2, 2), (2, 3, 4), (2, 2, 2, 2)]:
    _, pn = truncated_poincare(parts)
    print(parts, "betti", [betti_bb(parts, k) for k in range(len(parts))], "P_N mod t^(r+1):", pn)
