"""Finite simple graphs, multipartite constructors, cliques, chordality, and
the quasi-projectivity classification of Bestvina-Brady groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices ``0..vertex_count-1`` with canonical edge list."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        canon = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge {e} out of range")
            canon.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(canon)))
        adj = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", tuple(frozenset(s) for s in adj))

    @property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return self._adj

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def complement(self) -> "Graph":
        n = self.vertex_count
        return Graph(n, tuple(e for e in combinations(range(n), 2) if not self.has_edge(*e)))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabelled to ``0..len(vertices)-1`` in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        return Graph(
            len(vertices),
            tuple((index[u], index[v]) for u, v in self.edges if u in index and v in index),
        )

    def components(self) -> list[list[int]]:
        seen, comps = set(), []
        for s in range(self.vertex_count):
            if s in seen:
                continue
            stack, comp = [s], []
            seen.add(s)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.vertex_count > 0 and len(self.components()) == 1

    def is_tree(self) -> bool:
        return self.is_connected() and self.edge_count == self.vertex_count - 1

    def to_json(self) -> dict:
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        return cls(int(data["vertices"]), tuple(tuple(e) for e in data["edges"]))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        lines += [f"  {v};" for v in range(self.vertex_count)]
        lines += [f"  {u} -- {v};" for u, v in self.edges]
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class MultipartiteShape:
    """Block sizes ``(n_0, ..., n_r)`` of a complete multipartite graph."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if not parts:
            raise ValueError("shape must have at least one part")
        if any(x < 1 for x in parts):
            raise ValueError(f"shape parts must be >= 1, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def r(self) -> int:
        return len(self.parts) - 1

    @property
    def m(self) -> tuple[int, ...]:
        return tuple(x - 1 for x in self.parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def offsets(self) -> list[int]:
        out, acc = [], 0
        for x in self.parts:
            out.append(acc)
            acc += x
        return out

    def vertex(self, k: int, i: int) -> int:
        """Dense label of vertex ``(k, i)``, ``1 <= i <= n_k``."""
        if not 1 <= i <= self.parts[k]:
            raise ValueError(f"vertex index {i} out of range for block {k}")
        return self.offsets()[k] + i - 1

    def sorted(self) -> "MultipartiteShape":
        return MultipartiteShape(tuple(sorted(self.parts)))

    def to_json(self) -> dict:
        return {"n": list(self.parts)}

    @classmethod
    def from_json(cls, data: dict) -> "MultipartiteShape":
        return cls(tuple(data["n"]))

    @classmethod
    def parse(cls, text: str) -> "MultipartiteShape":
        return cls(tuple(int(x) for x in text.split(",") if x.strip()))


def as_shape(shape) -> MultipartiteShape:
    return shape if isinstance(shape, MultipartiteShape) else MultipartiteShape(tuple(shape))


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def multipartite_graph(shape) -> Graph:
    """Join of edgeless graphs; block ``k`` occupies a contiguous label range."""
    shape = as_shape(shape)
    block = []
    for k, n in enumerate(shape.parts):
        block += [k] * n
    v = len(block)
    return Graph(v, tuple((u, w) for u, w in combinations(range(v), 2) if block[u] != block[w]))


def wheel_graph(r: int) -> Graph:
    """Hub 0 coned over the cycle ``1..r``."""
    if r < 3:
        raise ValueError("wheel needs r >= 3")
    spokes = [(0, i) for i in range(1, r + 1)]
    rim = [(i, i % r + 1) for i in range(1, r + 1)]
    return Graph(r + 1, tuple(spokes + rim))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(combinations(range(n), 2)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def edgeless_graph(n: int) -> Graph:
    return Graph(n, ())


# ---------------------------------------------------------------------------
# Cliques and chordality
# ---------------------------------------------------------------------------


def iter_cliques(g: Graph, max_size: int | None = None) -> Iterator[tuple[int, ...]]:
    """Every non-empty clique exactly once, as an increasing vertex tuple.

    Each clique is grown only by vertices larger than its last vertex, so the
    candidate set shrinks to the common forward neighbourhood.
    """
    fwd = [frozenset(w for w in g.neighbors(v) if w > v) for v in range(g.vertex_count)]

    def grow(clique, cand):
        yield clique
        if max_size is not None and len(clique) >= max_size:
            return
        for w in sorted(cand):
            yield from grow(clique + (w,), cand & fwd[w])

    for v in range(g.vertex_count):
        yield from grow((v,), fwd[v])


def clique_counts(g: Graph, p_max: int) -> list[int]:
    """``[c_1, ..., c_{p_max}]`` where ``c_p`` counts complete subgraphs on p+1 vertices."""
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    counts = [0] * (p_max + 2)
    for c in iter_cliques(g, max_size=p_max + 1):
        counts[len(c)] += 1
    return counts[2 : p_max + 2]


def max_cardinality_search(g: Graph) -> list[int]:
    """Vertex order produced by maximum cardinality search (visit order)."""
    n = g.vertex_count
    weight = [0] * n
    done = [False] * n
    order = []
    for _ in range(n):
        v = max((u for u in range(n) if not done[u]), key=lambda u: (weight[u], -u))
        done[v] = True
        order.append(v)
        for w in g.neighbors(v):
            if not done[w]:
                weight[w] += 1
    return order


def is_perfect_elimination_order(g: Graph, order: Sequence[int]) -> bool:
    """``order`` lists vertices in elimination order (first eliminated first)."""
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in g.neighbors(v) if pos[w] > pos[v]]
        if not later:
            continue
        parent = min(later, key=pos.__getitem__)
        rest = set(later) - {parent}
        if not rest <= g.neighbors(parent):
            return False
    return True


def is_chordal(g: Graph) -> bool:
    """Chordality via maximum cardinality search; reversed MCS order is a
    perfect elimination ordering exactly when the graph is chordal."""
    order = max_cardinality_search(g)
    return is_perfect_elimination_order(g, order[::-1])


def nonhypersolvable_flag(g: Graph) -> bool:
    """Sufficient test for the graphic arrangement to be non-hypersolvable:
    no K_4 and ``0 < c_1 <= 2 c_2``. False means inconclusive."""
    c1, c2, c3 = clique_counts(g, 3)
    return c3 == 0 and 0 < c1 <= 2 * c2


# ---------------------------------------------------------------------------
# Multipartite recognition and classification
# ---------------------------------------------------------------------------


def recognize_multipartite(g: Graph) -> MultipartiteShape | None:
    """Sorted shape if ``g`` is complete multipartite, else None.

    A graph is complete multipartite iff its complement is a disjoint union
    of cliques; the cliques are the blocks.
    """
    if g.vertex_count == 0:
        return None
    comp = g.complement()
    blocks = comp.components()
    for b in blocks:
        k = len(b)
        if sum(1 for u, v in comp.edges if u in b) != k * (k - 1) // 2:
            return None
    return MultipartiteShape(tuple(sorted(len(b) for b in blocks)))


@dataclass(frozen=True)
class QPClassification:
    """Outcome of the quasi-projectivity test for the Bestvina-Brady group ``N_Gamma``.

    ``kind`` is one of ``Tree``, ``MultipartiteQP``, ``MultipartiteSomeOne``,
    ``MultipartiteNotQP``, ``NotCovered``.
    """

    kind: str
    shape: MultipartiteShape | None = None
    free_rank: int | None = None
    z_rank: int | None = None
    free_factors: tuple[int, ...] = field(default=())

    @property
    def quasi_projective(self) -> bool:
        return self.kind in ("Tree", "MultipartiteQP", "MultipartiteSomeOne")

    def structure(self) -> str | None:
        if self.kind == "Tree":
            return f"F_{self.free_rank}"
        if self.kind == "MultipartiteSomeOne":
            parts = ([f"Z^{self.z_rank}"] if self.z_rank else []) + [
                f"F_{n}" for n in self.free_factors
            ]
            return " x ".join(parts) if parts else "1"
        return None

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.shape is not None:
            out["shape"] = list(self.shape.parts)
        if self.free_rank is not None:
            out["free_rank"] = self.free_rank
        s = self.structure()
        if s is not None:
            out["structure"] = s
        out["quasi_projective"] = self.quasi_projective
        return out


def classify_bb_quasiprojective(g: Graph) -> QPClassification:
    if g.is_tree():
        return QPClassification("Tree", free_rank=g.vertex_count - 1)
    shape = recognize_multipartite(g)
    if shape is None:
        return QPClassification("NotCovered")
    parts = shape.parts
    ones = sum(1 for n in parts if n == 1)
    if ones:
        big = tuple(n for n in parts if n > 1)
        return QPClassification(
            "MultipartiteSomeOne", shape=shape, z_rank=ones - 1, free_factors=big
        )
    if shape.r >= 2:
        return QPClassification("MultipartiteQP", shape=shape)
    return QPClassification("MultipartiteNotQP", shape=shape)


def all_graphs(n: int) -> Iterable[Graph]:
    """Every labelled graph on ``n`` vertices (2^(n choose 2) of them)."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, tuple(p for b, p in enumerate(pairs) if mask >> b & 1))
