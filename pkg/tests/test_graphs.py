import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrkit.graphs import (
    Graph,
    MultipartiteShape,
    classify_bb_quasiprojective,
    clique_counts,
    complete_graph,
    cycle_graph,
    edgeless_graph,
    is_chordal,
    iter_cliques,
    multipartite_graph,
    nonhypersolvable_flag,
    path_graph,
    recognize_multipartite,
    wheel_graph,
)


def has_chordless_cycle(g: Graph) -> bool:
    """Oracle: some vertex subset of size >= 4 induces a cycle."""
    for k in range(4, g.vertex_count + 1):
        for vs in combinations(range(g.vertex_count), k):
            h = g.induced(vs)
            if h.is_connected() and all(len(h.neighbors(v)) == 2 for v in range(k)):
                return True
    return False


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, tuple(e for e in combinations(range(n), 2) if rng.random() < p))


shapes = st.lists(st.integers(1, 4), min_size=1, max_size=4).filter(lambda xs: sum(xs) <= 12)


def test_multipartite_examples():
    g = multipartite_graph((2, 2, 2))
    assert (g.vertex_count, g.edge_count) == (6, 12)
    assert multipartite_graph((1, 1)).edges == ((0, 1),)
    g = multipartite_graph((2, 3))
    assert (g.vertex_count, g.edge_count) == (5, 6)


def test_wheel_examples():
    assert (wheel_graph(4).vertex_count, wheel_graph(4).edge_count) == (5, 8)
    assert wheel_graph(3).edges == complete_graph(4).edges
    assert (wheel_graph(5).vertex_count, wheel_graph(5).edge_count) == (6, 10)
    with pytest.raises(ValueError):
        wheel_graph(2)


def test_clique_counts_examples():
    assert clique_counts(wheel_graph(4), 3) == [8, 4, 0]
    assert clique_counts(complete_graph(4), 3) == [6, 4, 1]
    assert clique_counts(edgeless_graph(3), 2) == [0, 0]
    with pytest.raises(ValueError):
        clique_counts(edgeless_graph(3), 0)


def test_chordal_examples():
    k4_minus = Graph(4, tuple(e for e in combinations(range(4), 2) if e != (2, 3)))
    assert is_chordal(k4_minus)
    assert not is_chordal(cycle_graph(4))
    assert not is_chordal(wheel_graph(5))
    assert has_chordless_cycle(wheel_graph(5))


def test_chordal_against_induced_cycle_search():
    rng = random.Random(20261014)
    for _ in range(600):
        n = rng.randint(1, 7)
        g = random_graph(rng, n, rng.choice([0.3, 0.5, 0.7]))
        assert is_chordal(g) == (not has_chordless_cycle(g)), g.edges


def test_nonhypersolvable_examples():
    assert nonhypersolvable_flag(wheel_graph(4))
    assert not nonhypersolvable_flag(complete_graph(4))
    assert not nonhypersolvable_flag(path_graph(2))


def test_classify_examples():
    c = classify_bb_quasiprojective(path_graph(4))
    assert c.kind == "Tree" and c.free_rank == 3 and c.quasi_projective
    c = classify_bb_quasiprojective(multipartite_graph((2, 2, 2)))
    assert c.kind == "MultipartiteQP" and c.shape.parts == (2, 2, 2)
    c = classify_bb_quasiprojective(multipartite_graph((2, 2)))
    assert c.kind == "MultipartiteNotQP" and not c.quasi_projective
    assert classify_bb_quasiprojective(cycle_graph(5)).kind == "NotCovered"
    c = classify_bb_quasiprojective(multipartite_graph((1, 1, 2, 3)))
    assert c.kind == "MultipartiteSomeOne" and c.structure() == "Z^1 x F_2 x F_3"


def test_classify_tree_kind_is_acyclic_connected():
    rng = random.Random(7)
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 6), 0.4)
        c = classify_bb_quasiprojective(g)
        if c.kind == "Tree":
            assert g.is_connected() and g.edge_count == g.vertex_count - 1


@settings(max_examples=80, deadline=None)
@given(shapes)
def test_recognize_rebuild_identity(parts):
    shape = MultipartiteShape(tuple(parts))
    g = multipartite_graph(shape)
    assert g.edge_count == sum(a * b for a, b in combinations(parts, 2))
    found = recognize_multipartite(g)
    assert found == shape.sorted()
    assert multipartite_graph(found).edge_count == g.edge_count


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7), st.integers(0, 2**21 - 1))
def test_cliques_listed_once(n, mask):
    pairs = list(combinations(range(n), 2))
    g = Graph(n, tuple(p for b, p in enumerate(pairs) if mask >> b & 1))
    cliques = list(iter_cliques(g))
    assert len(cliques) == len(set(cliques))
    expected = [
        vs for k in range(1, n + 1) for vs in combinations(range(n), k)
        if all(g.has_edge(u, v) for u, v in combinations(vs, 2))
    ]
    assert sorted(cliques) == sorted(expected)


def test_graph_validation_and_serialization():
    with pytest.raises(ValueError):
        Graph(2, ((0, 0),))
    with pytest.raises(ValueError):
        Graph(2, ((0, 2),))
    with pytest.raises(ValueError):
        MultipartiteShape((2, 0))
    g = Graph(3, ((2, 0), (0, 2), (1, 2)))
    assert g.edges == ((0, 2), (1, 2))
    assert Graph.from_json(g.to_json()) == g
    assert g.to_dot().splitlines()[-2] == "  1 -- 2;"
    s = MultipartiteShape.parse("3,1,2")
    assert MultipartiteShape.from_json(s.to_json()) == s and s.sorted().parts == (1, 2, 3)
