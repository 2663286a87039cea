"""Hyperplane arrangements over Q: intersection posets, Moebius values,
characteristic and Poincare polynomials, graphic arrangements, the
Bestvina-Brady fiber arrangement, and generic plane sections."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb, gcd, lcm
from typing import Mapping, Sequence

import numpy as np

from .exact import (
    IntPolynomial,
    InvariantError,
    format_fraction,
    hyperplane_poincare,
    is_prime,
    parse_fraction,
    rank_mod_p,
    rational_rank,
)
from .graphs import Graph, as_shape

# ---------------------------------------------------------------------------
# Arrangements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearForm:
    """The affine function ``sum(coeffs[i] * z_i) + constant``."""

    coeffs: tuple[Fraction, ...]
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(parse_fraction(c) for c in self.coeffs))
        object.__setattr__(self, "constant", parse_fraction(self.constant))
        if not any(self.coeffs):
            raise ValueError("linear form has no non-constant part")

    def integer_row(self) -> tuple[int, ...]:
        """Primitive integer vector ``(c_0, ..., c_n, b)`` of the equation ``c.z = b``."""
        vals = list(self.coeffs) + [-self.constant]
        den = lcm(*(v.denominator for v in vals))
        return _primitive([int(v * den) for v in vals])

    def to_json(self) -> dict:
        return {
            "coeffs": [format_fraction(c) for c in self.coeffs],
            "constant": format_fraction(self.constant),
        }

    @classmethod
    def from_json(cls, data: dict) -> "LinearForm":
        return cls(tuple(data["coeffs"]), data.get("constant", "0"))


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    lead = next(x for x in v if x)
    if lead < 0:
        g = -g
    return tuple(x // g for x in v)


@dataclass(frozen=True)
class HyperplaneArrangement:
    """Arrangement in C^d (``projective=False``) or P^d (``projective=True``).

    Projective arrangements carry their central cone: ``d + 1`` coefficients
    per form and zero constants.
    """

    ambient_dim: int
    forms: tuple[LinearForm, ...]
    projective: bool = False

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise ValueError("ambient_dim must be >= 1")
        width = self.cone_dim
        seen = {}
        for idx, f in enumerate(self.forms):
            if len(f.coeffs) != width:
                raise ValueError(f"form {idx} has {len(f.coeffs)} coefficients, expected {width}")
            if self.projective and f.constant != 0:
                raise ValueError("projective arrangements need homogeneous forms")
            key = f.integer_row()
            if key in seen:
                raise ValueError(f"forms {seen[key]} and {idx} define the same hyperplane")
            seen[key] = idx

    @property
    def cone_dim(self) -> int:
        """Dimension of the space the poset lives in."""
        return self.ambient_dim + 1 if self.projective else self.ambient_dim

    @property
    def size(self) -> int:
        return len(self.forms)

    def integer_rows(self) -> list[tuple[int, ...]]:
        return [f.integer_row() for f in self.forms]

    def is_central(self) -> bool:
        return all(f.constant == 0 for f in self.forms)

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "projective": self.projective,
            "forms": [f.to_json() for f in self.forms],
        }

    @classmethod
    def from_json(cls, data: dict) -> "HyperplaneArrangement":
        return cls(
            int(data["ambient_dim"]),
            tuple(LinearForm.from_json(f) for f in data["forms"]),
            bool(data.get("projective", False)),
        )


# ---------------------------------------------------------------------------
# Canonical affine subspaces
# ---------------------------------------------------------------------------
#
# A subspace is stored as its reduced row-echelon system, each row scaled to a
# primitive integer vector with positive pivot. That form is unique, so the
# tuple of rows is a hashable identity for the subspace.


def _reduce(vec: Sequence[int], rows: Sequence[tuple[int, ...]], pivots: Sequence[int]):
    v = list(vec)
    for row, p in zip(rows, pivots):
        if v[p]:
            a, b = row[p], v[p]
            v = [a * x - b * y for x, y in zip(v, row)]
    return _primitive(v)


def _pivot(v: Sequence[int]) -> int | None:
    """First non-zero coefficient position, ignoring the right-hand side."""
    for i in range(len(v) - 1):
        if v[i]:
            return i
    return None


def _insert(rows, pivots, new, p):
    out = []
    for row in rows:
        if row[p]:
            a, b = new[p], row[p]
            row = _primitive([a * x - b * y for x, y in zip(row, new)])
        out.append(row)
    out.append(new)
    order = sorted(range(len(out)), key=lambda i: (list(pivots) + [p])[i])
    return tuple(out[i] for i in order), tuple(sorted(list(pivots) + [p]))


class _Subspace:
    __slots__ = ("rows", "pivots")

    def __init__(self, rows=(), pivots=()):
        self.rows = rows
        self.pivots = pivots

    @property
    def codim(self) -> int:
        return len(self.rows)

    def meet(self, vec):
        """Intersection with hyperplane ``vec``: ``self`` (contained), None (empty) or new."""
        red = _reduce(vec, self.rows, self.pivots)
        p = _pivot(red)
        if p is None:
            return self if red[-1] == 0 else None
        rows, pivots = _insert(self.rows, self.pivots, red, p)
        return _Subspace(rows, pivots)

    def contained_in(self, vec) -> bool:
        return not any(_reduce(vec, self.rows, self.pivots))

    @property
    def key(self):
        return self.rows


# ---------------------------------------------------------------------------
# Ranked posets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PosetNode:
    id: int
    dim: int
    mobius: int
    hyperplanes: frozenset[int]
    witness: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class RankedPoset:
    """Intersection poset ordered by reverse inclusion; node 0 is the ambient space."""

    nodes: tuple[PosetNode, ...]
    covers: tuple[tuple[int, int], ...]
    ambient_dim: int
    bottom: int = 0

    def sizes_by_codim(self) -> list[int]:
        out = [0] * (self.ambient_dim + 1)
        for n in self.nodes:
            out[self.ambient_dim - n.dim] += 1
        while out and out[-1] == 0:
            out.pop()
        return out

    def leq(self, x: int, y: int) -> bool:
        return self.nodes[x].hyperplanes <= self.nodes[y].hyperplanes

    def check_mobius(self) -> None:
        for x in self.nodes:
            s = sum(y.mobius for y in self.nodes if y.hyperplanes <= x.hyperplanes)
            expected = 1 if x.id == self.bottom else 0
            if s != expected:
                raise InvariantError(f"Moebius recursion fails at node {x.id}")

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "nodes": [{"id": n.id, "dim": n.dim, "mobius": n.mobius} for n in self.nodes],
            "covers": [list(c) for c in self.covers],
        }

    def to_dot(self, name: str = "L") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for n in self.nodes:
            lines.append(f'  n{n.id} [label="{n.id}: dim {n.dim}, mu {n.mobius}"];')
        for a, b in self.covers:
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _mobius_by_recursion(masks: Sequence[int], order: Sequence[int]) -> dict[int, int]:
    """Moebius values from ``mu(bottom)=1``, ``sum_{y<=x} mu(y) = 0``.

    ``masks`` are hyperplane bitmasks (bottom = 0); ``order`` is any linear
    extension of the poset.
    """
    mu: dict[int, int] = {}
    done = []
    for i in order:
        mi = masks[i]
        if mi == 0:
            mu[i] = 1
        else:
            mu[i] = -sum(mu[j] for j in done if masks[j] & ~mi == 0)
        done.append(i)
    return mu


def _assemble(ambient, subspaces, masks, mobius) -> RankedPoset:
    order = sorted(range(len(subspaces)), key=lambda i: (subspaces[i].codim, subspaces[i].key))
    remap = {old: new for new, old in enumerate(order)}
    nodes = tuple(
        PosetNode(
            remap[i],
            ambient - subspaces[i].codim,
            mobius[i],
            frozenset(b for b in range(masks[i].bit_length()) if masks[i] >> b & 1),
            subspaces[i].key,
        )
        for i in order
    )
    covers = []
    by_codim: dict[int, list[PosetNode]] = {}
    for n in nodes:
        by_codim.setdefault(ambient - n.dim, []).append(n)
    for c, lower in by_codim.items():
        for y in by_codim.get(c + 1, []):
            for x in lower:
                if x.hyperplanes <= y.hyperplanes:
                    covers.append((x.id, y.id))
    return RankedPoset(nodes, tuple(sorted(covers)), ambient)


def intersection_poset(a: HyperplaneArrangement, max_codim: int | None = None) -> RankedPoset:
    """Level-by-level construction: each flat of codim k is met with every
    hyperplane not containing it; new flats are deduplicated by their
    canonical echelon system. Projective arrangements use their cone."""
    vecs = a.integer_rows()
    ambient = a.cone_dim
    top = ambient if max_codim is None else min(max_codim, ambient)

    subspaces = [_Subspace()]
    masks = [0]
    index = {(): 0}
    level = [0]
    for _ in range(top):
        nxt = []
        for x in level:
            sx, mx = subspaces[x], masks[x]
            covered = mx
            for h, vec in enumerate(vecs):
                if covered >> h & 1:
                    continue
                y_space = sx.meet(vec)
                if y_space is None:
                    continue
                key = y_space.key
                y = index.get(key)
                if y is None:
                    my = 0
                    for h2, v2 in enumerate(vecs):
                        if y_space.contained_in(v2):
                            my |= 1 << h2
                    y = len(subspaces)
                    index[key] = y
                    subspaces.append(y_space)
                    masks.append(my)
                    nxt.append(y)
                covered |= masks[y]
        if not nxt:
            break
        level = nxt

    order = sorted(range(len(subspaces)), key=lambda i: subspaces[i].codim)
    mobius = _mobius_by_recursion(masks, order)
    return _assemble(ambient, subspaces, masks, mobius)


def subset_enumeration_poset(a: HyperplaneArrangement, limit: int = 12) -> RankedPoset:
    """Oracle: intersect every subset of hyperplanes (2^n of them).

    Moebius values come from the cross-cut sum
    ``mu(X) = sum over subsets S with intersection X of (-1)^|S|``,
    not from the recursion used by :func:`intersection_poset`.
    """
    n = a.size
    if n > limit:
        raise ValueError(f"subset oracle limited to {limit} hyperplanes, got {n}")
    vecs = a.integer_rows()
    ambient = a.cone_dim
    inter: list[_Subspace | None] = [None] * (1 << n)
    inter[0] = _Subspace()
    whitney: dict = {}
    spaces: dict = {}
    for s in range(1 << n):
        if s:
            low = (s & -s).bit_length() - 1
            prev = inter[s & (s - 1)]
            inter[s] = None if prev is None else prev.meet(vecs[low])
        sp = inter[s]
        if sp is None:
            continue
        whitney[sp.key] = whitney.get(sp.key, 0) + (-1) ** bin(s).count("1")
        spaces.setdefault(sp.key, sp)
    keys = list(spaces)
    subspaces = [spaces[k] for k in keys]
    masks = []
    for sp in subspaces:
        m = 0
        for h, v in enumerate(vecs):
            if sp.contained_in(v):
                m |= 1 << h
        masks.append(m)
    mobius = {i: whitney[k] for i, k in enumerate(keys)}
    return _assemble(ambient, subspaces, masks, mobius)


def char_poly(p: RankedPoset) -> IntPolynomial:
    """Moebius-weighted sum of ``q**dim`` over the poset."""
    coeffs = [0] * (p.ambient_dim + 1)
    for n in p.nodes:
        coeffs[n.dim] += n.mobius
    return IntPolynomial(coeffs, "q")


def characteristic_polynomial(a: HyperplaneArrangement) -> IntPolynomial:
    return char_poly(intersection_poset(a))


def poincare(a: HyperplaneArrangement) -> IntPolynomial:
    """Poincare polynomial of the complement.

    Projective arrangements: the cone complement is ``M x C^*``, so the cone
    polynomial is divided exactly by ``1 + t``.
    """
    if a.projective and a.size == 0:
        raise ValueError("empty projective arrangement is not supported")
    cone = hyperplane_poincare(characteristic_polynomial(a), a.cone_dim)
    if a.projective:
        return cone.exact_div(IntPolynomial((1, 1), "t"))
    return cone


# ---------------------------------------------------------------------------
# Graphic arrangements and the chromatic oracle
# ---------------------------------------------------------------------------


def graphic_arrangement(g: Graph) -> HyperplaneArrangement:
    """Central arrangement in C^|V| with one hyperplane ``w_i = w_j`` per edge."""
    if g.vertex_count < 1:
        raise ValueError("graph needs at least one vertex")
    n = g.vertex_count
    forms = []
    for i, j in g.edges:
        c = [0] * n
        c[i], c[j] = 1, -1
        forms.append(LinearForm(tuple(c)))
    return HyperplaneArrangement(n, tuple(forms))


def chromatic_poly(g: Graph) -> IntPolynomial:
    """Chromatic polynomial by deletion-contraction (addition-contraction on
    dense graphs), collapsing parallel edges, memoised on the edge set."""
    return IntPolynomial(_chromatic(g.vertex_count, frozenset(g.edges)), "q")


def _falling(n: int) -> tuple[int, ...]:
    p = IntPolynomial((1,))
    for k in range(n):
        p = p * IntPolynomial((-k, 1))
    return p.coeffs


def _contract(n: int, edges: frozenset, u: int, v: int) -> frozenset:
    """Identify v with u (u < v) and relabel vertices above v down by one."""

    def lab(x):
        x = u if x == v else x
        return x - 1 if x > v else x

    out = set()
    for a, b in edges:
        a, b = lab(a), lab(b)
        if a != b:
            out.add((min(a, b), max(a, b)))
    return frozenset(out)


@lru_cache(maxsize=None)
def _chromatic(n: int, edges: frozenset) -> tuple[int, ...]:
    if not edges:
        return (0,) * n + (1,)
    full = n * (n - 1) // 2
    if len(edges) == full:
        return _falling(n)
    deg = [0] * n
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    if 2 * len(edges) <= full:
        e = max(edges, key=lambda e: (deg[e[0]] + deg[e[1]], e))
        minus = IntPolynomial(_chromatic(n, edges - {e}))
        con = IntPolynomial(_chromatic(n - 1, _contract(n, edges, *e)))
        return (minus - con).coeffs
    non = [(a, b) for a, b in combinations(range(n), 2) if (a, b) not in edges]
    e = max(non, key=lambda e: (deg[e[0]] + deg[e[1]], e))
    plus = IntPolynomial(_chromatic(n, edges | {e}))
    con = IntPolynomial(_chromatic(n - 1, _contract(n, edges, *e)))
    return (plus + con).coeffs


# ---------------------------------------------------------------------------
# The Bestvina-Brady fiber arrangement
# ---------------------------------------------------------------------------


def primes(count: int) -> list[int]:
    out, k = [], 2
    while len(out) < count:
        if is_prime(k):
            out.append(k)
        k += 1
    return out


def prime_parameters(shape) -> tuple[dict[tuple[int, int], int], int]:
    """Prime genericity scheme: ``alpha[(i, j)]`` is the next unused prime in
    (i, j) order, and ``a`` is one further prime."""
    shape = as_shape(shape)
    keys = [(i, j) for i, n in enumerate(shape.parts) for j in range(1, n)]
    ps = primes(len(keys) + 1)
    return dict(zip(keys, ps)), ps[-1]


def bb_arrangement(
    shape,
    special: Sequence[int] | None = None,
    alpha: Mapping[tuple[int, int], Fraction] | None = None,
    a=None,
) -> HyperplaneArrangement:
    """Projective arrangement in P^r whose complement is the fiber over ``a``
    of the product map on the punctured torus.

    Hyperplanes: ``z_0..z_r``; ``a z_0 - alpha_{0,j} z_1``;
    ``z_i - alpha_{i,j} z_{i+1}`` for ``1 <= i <= r-1``; ``z_r - alpha_{r,j} z_0``.
    With ``special = (j_0, ..., j_r)`` the value ``a`` is set to
    ``prod alpha_{i, j_i}``.
    """
    shape = as_shape(shape)
    r = shape.r
    if r < 1:
        raise ValueError("bb_arrangement needs r >= 1")
    default_alpha, default_a = prime_parameters(shape)
    alpha = {k: parse_fraction(v) for k, v in (alpha or default_alpha).items()}
    a = default_a if a is None else a
    a = parse_fraction(a)
    if special is not None:
        special = tuple(special)
        if len(special) != r + 1 or any(
            not 1 <= j <= m for j, m in zip(special, shape.m)
        ):
            raise ValueError(f"special index tuple {special} out of range for shape {shape.parts}")
        a = Fraction(1)
        for i, j in enumerate(special):
            a *= alpha[(i, j)]
    if a == 0 or any(v == 0 for v in alpha.values()):
        raise ValueError("parameters must be non-zero")

    width = r + 1

    def form(pairs):
        c = [Fraction(0)] * width
        for idx, val in pairs:
            c[idx] += val
        return LinearForm(tuple(c))

    forms = [form([(i, 1)]) for i in range(width)]
    for j in range(1, shape.parts[0]):
        forms.append(form([(0, a), (1, -alpha[(0, j)])]))
    for i in range(1, r):
        for j in range(1, shape.parts[i]):
            forms.append(form([(i, 1), (i + 1, -alpha[(i, j)])]))
    for j in range(1, shape.parts[r]):
        forms.append(form([(r, 1), (0, -alpha[(r, j)])]))
    return HyperplaneArrangement(r, tuple(forms), projective=True)


# ---------------------------------------------------------------------------
# Generic plane sections
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SectionCombinatorics:
    line_count: int
    multiple_points: tuple[int, ...]
    double_point_count: int

    def to_json(self) -> dict:
        return {
            "lines": self.line_count,
            "multiple_points": list(self.multiple_points),
            "double_points": self.double_point_count,
        }


def generic_section_combinatorics(a: HyperplaneArrangement) -> SectionCombinatorics:
    """Line arrangement cut out by a generic plane: its points are the
    codimension-2 flats of the cone, with multiplicity = hyperplanes through it."""
    if not a.projective:
        raise ValueError("generic plane sections need a projective arrangement")
    if a.ambient_dim < 2:
        raise ValueError("generic plane sections need r >= 2")
    p = intersection_poset(a, max_codim=2)
    mults = sorted(
        (len(n.hyperplanes) for n in p.nodes if p.ambient_dim - n.dim == 2), reverse=True
    )
    multiple = tuple(m for m in mults if m >= 3)
    doubles = sum(1 for m in mults if m == 2)
    n = a.size
    if sum(comb(m, 2) for m in multiple) + doubles != comb(n, 2):
        raise InvariantError("pair count of the section does not add up")
    return SectionCombinatorics(n, multiple, doubles)


# ---------------------------------------------------------------------------
# Finite-field point counts
# ---------------------------------------------------------------------------


def _rows_mod_p(a: HyperplaneArrangement, p: int) -> list[list[int]]:
    out = []
    for f in a.forms:
        vals = list(f.coeffs) + [f.constant]
        row = []
        for v in vals:
            if v.denominator % p == 0:
                raise ValueError(f"coefficient {v} is not defined mod {p}")
            row.append(v.numerator * pow(v.denominator, -1, p) % p)
        out.append(row)
    return out


def finite_field_point_count(a: HyperplaneArrangement, p: int, chunk_dims: int = 4) -> int:
    """Number of points of F_p^D (D = cone dimension) off every hyperplane."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    dim = a.cone_dim
    rows = np.array(_rows_mod_p(a, p), dtype=np.int64).reshape(len(a.forms), dim + 1)
    inner = min(chunk_dims, dim)
    outer = dim - inner
    grid = np.array(list(product(range(p), repeat=inner)), dtype=np.int64).reshape(-1, inner)
    coeff_in = rows[:, outer:dim]
    base = grid @ coeff_in.T  # (points, forms)
    total = 0
    for head in product(range(p), repeat=outer):
        shift = rows[:, dim].copy()
        if outer:
            shift += rows[:, :outer] @ np.array(head, dtype=np.int64)
        vals = (base + shift) % p
        total += int(np.count_nonzero(np.all(vals != 0, axis=1)))
    return total


def reduces_well_mod_p(a: HyperplaneArrangement, p: int) -> bool:
    """True when the matroid of the (homogenised) forms is unchanged mod p,
    which makes the point count mod p equal chi(p)."""
    vecs = [list(f.integer_row()) for f in a.forms]
    if any(all(x % p == 0 for x in v) for v in vecs):
        return False
    for k in range(2, len(vecs) + 1):
        for sub in combinations(vecs, k):
            if rational_rank(list(sub)) != rank_mod_p(list(sub), p):
                return False
    return True
