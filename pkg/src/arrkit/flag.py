"""Flag complexes, exact simplicial Betti numbers, and homological finiteness
reports for Artin kernels (all character values assumed non-zero)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .exact import InvariantError, is_prime, rank_mod_p, rational_rank
from .graphs import Graph, MultipartiteShape, iter_cliques, multipartite_graph


@dataclass(frozen=True)
class FlagComplex:
    """``simplices_by_dim[k]`` is the sorted list of k-simplices (vertex tuples)."""

    simplices_by_dim: tuple[tuple[tuple[int, ...], ...], ...]
    vertex_count: int = 0

    @property
    def dimension(self) -> int:
        return len(self.simplices_by_dim) - 1

    def f_vector(self) -> list[int]:
        return [len(s) for s in self.simplices_by_dim]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def is_cone(self) -> bool:
        """True when some vertex lies in every maximal simplex (i.e. is adjacent to all)."""
        if not self.simplices_by_dim:
            return False
        n = self.vertex_count
        adj = {v: set() for v in range(n)}
        for u, v in (self.simplices_by_dim[1] if self.dimension >= 1 else ()):
            adj[u].add(v)
            adj[v].add(u)
        return any(len(adj[v]) == n - 1 for v in range(n))


def flag_complex(g: Graph) -> FlagComplex:
    by_dim: dict[int, list] = {}
    for c in iter_cliques(g):
        by_dim.setdefault(len(c) - 1, []).append(c)
    top = max(by_dim, default=-1)
    return FlagComplex(
        tuple(tuple(sorted(by_dim.get(k, []))) for k in range(top + 1)), g.vertex_count
    )


def boundary_matrix(c: FlagComplex, k: int) -> list[list[int]]:
    """Matrix of the boundary map C_k -> C_{k-1}; rows index (k-1)-faces."""
    if k <= 0 or k > c.dimension:
        return []
    faces = {s: i for i, s in enumerate(c.simplices_by_dim[k - 1])}
    simplices = c.simplices_by_dim[k]
    mat = [[0] * len(simplices) for _ in faces]
    for j, s in enumerate(simplices):
        for pos in range(len(s)):
            mat[faces[s[:pos] + s[pos + 1 :]]][j] = -1 if pos % 2 else 1
    return mat


@dataclass(frozen=True)
class BettiVector:
    betti: tuple[int, ...]
    field: int = 0  # 0 for Q, else the prime p

    @property
    def field_tag(self) -> str:
        return "Q" if self.field == 0 else f"Fp:{self.field}"

    def reduced(self) -> tuple[int, ...]:
        if not self.betti:
            return ()
        return (self.betti[0] - 1,) + self.betti[1:]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    def to_json(self) -> dict:
        return {"field": self.field_tag, "betti": list(self.betti)}

    @classmethod
    def from_json(cls, data: dict) -> "BettiVector":
        tag = data["field"]
        return cls(tuple(data["betti"]), 0 if tag == "Q" else int(tag.split(":")[1]))


def _rank(m, field: int) -> int:
    if not m:
        return 0
    return rational_rank(m) if field == 0 else rank_mod_p(m, field)


def simplicial_betti(c: FlagComplex, field: int = 0) -> BettiVector:
    """Unreduced Betti numbers over Q (``field=0``) or F_p."""
    if field != 0 and not is_prime(field):
        raise ValueError(f"field characteristic must be 0 or prime, got {field}")
    f = c.f_vector()
    ranks = [0] + [_rank(boundary_matrix(c, k), field) for k in range(1, len(f))] + [0]
    betti = tuple(f[k] - ranks[k] - ranks[k + 1] for k in range(len(f)))
    bv = BettiVector(betti, field)
    if bv.euler_characteristic() != c.euler_characteristic():
        raise InvariantError("Euler characteristic mismatch")
    return bv


def wedge_betti(shape) -> tuple[int, ...]:
    """Expected Betti vector ``(1, 0, ..., 0, prod(n_i - 1))`` for a
    multipartite flag complex with all blocks of size >= 2."""
    shape = shape if isinstance(shape, MultipartiteShape) else MultipartiteShape(tuple(shape))
    m = 1
    for x in shape.m:
        m *= x
    r = shape.r
    if r == 0:
        return (shape.parts[0],)
    return (1,) + (0,) * (r - 1) + (m,)


# ---------------------------------------------------------------------------
# Finiteness report
# ---------------------------------------------------------------------------

HOLDS, FAILS, UNKNOWN = "holds", "fails", "not-determined"


@dataclass(frozen=True)
class FinitenessEntry:
    k: int
    fp: str
    f: str
    fp_reason: str
    f_reason: str


@dataclass(frozen=True)
class FinitenessReport:
    entries: tuple[FinitenessEntry, ...]
    fields_checked: tuple[str, ...]
    reduced_betti: dict = field(default_factory=dict)

    def fp(self, k: int) -> str:
        return self.entries[k - 1].fp

    def f(self, k: int) -> str:
        return self.entries[k - 1].f

    def to_json(self) -> dict:
        return {
            "fields_checked": list(self.fields_checked),
            "reduced_betti": {k: list(v) for k, v in self.reduced_betti.items()},
            "degrees": [
                {"k": e.k, "FP": e.fp, "F": e.f, "FP_reason": e.fp_reason, "F_reason": e.f_reason}
                for e in self.entries
            ],
        }


def simple_connectivity_certificate(g: Graph, c: FlagComplex) -> str | None:
    """A reason string when the flag complex is provably simply connected."""
    if g.vertex_count == 0:
        return None
    if c.is_cone():
        return "flag complex is a cone"
    blocks = g.complement().components()
    if len(blocks) >= 3:
        return "flag complex is a join of >= 3 non-empty factors"
    if len(blocks) == 2:
        for b in blocks:
            if g.induced(b).is_connected():
                return "flag complex is a join of a connected complex with a non-empty one"
    if c.dimension <= 1 and g.is_tree():
        return "flag complex is a tree"
    return None


def finiteness_report(
    g: Graph,
    r_max: int,
    shape_hint: MultipartiteShape | None = None,
    primes: Sequence[int] = (),
) -> FinitenessReport:
    """FP_k / F_k status of the Artin kernel for k = 1..r_max.

    FP_k is decided by (k-1)-acyclicity of the flag complex over Q and the
    requested prime fields; F_k is granted only with a simple-connectivity
    certificate, refused whenever FP_k fails, and otherwise left undetermined.
    """
    if r_max < 1:
        raise ValueError("r_max must be >= 1")
    if g.vertex_count == 0:
        raise ValueError("graph must have at least one vertex")
    if shape_hint is not None:
        g_hint = multipartite_graph(shape_hint)
        if g_hint.vertex_count != g.vertex_count or g_hint.edges != g.edges:
            raise ValueError("shape_hint does not describe the graph")
    c = flag_complex(g)
    fields = [0] + [int(p) for p in primes]
    reduced = {}
    for p in fields:
        reduced[BettiVector((), p).field_tag] = simplicial_betti(c, p).reduced()
    cert = simple_connectivity_certificate(g, c)

    entries = []
    for k in range(1, r_max + 1):
        bad = [
            (tag, j)
            for tag, rb in reduced.items()
            for j in range(k)
            if j < len(rb) and rb[j] != 0
        ]
        if bad:
            tag, j = bad[0]
            fp, fp_reason = FAILS, f"reduced H_{j}(L; {tag}) != 0"
        else:
            fp = HOLDS
            fp_reason = f"L is {k - 1}-acyclic over " + ", ".join(reduced)
        if fp == FAILS:
            f, f_reason = FAILS, "F_k implies FP_k"
        elif k == 1:
            f, f_reason = HOLDS, "F_1 is equivalent to FP_1"
        elif cert:
            f, f_reason = HOLDS, f"FP_{k} plus simple connectivity: {cert}"
        else:
            f, f_reason = UNKNOWN, "no simple-connectivity certificate"
        entries.append(FinitenessEntry(k, fp, f, fp_reason, f_reason))
    return FinitenessReport(tuple(entries), tuple(reduced), reduced)
