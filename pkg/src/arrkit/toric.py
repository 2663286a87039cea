"""Toric arrangements: the general-position hypertorus families in a
translated subtorus, their bifurcation sets, closed-form and brute-force
characteristic polynomials, and the comparison between the arrangement
{z_i = 0, z_i = z_j} and the subtori {x_i = x_j}."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb, gcd
from typing import Iterable, Sequence

from .exact import (
    IntPolynomial,
    InvariantError,
    smith_normal_form,
    toric_poincare,
)
from .flag import BettiVector
from .graphs import Graph, MultipartiteShape, as_shape
from .hyper import (
    HyperplaneArrangement,
    LinearForm,
    PosetNode,
    RankedPoset,
    characteristic_polynomial,
)

__all__ = [
    "SymbolicValue",
    "ToricCharacter",
    "component_count",
    "toric_poincare",
    "ParamToricFamily",
    "BifurcationReport",
    "bifurcation_set",
    "family_charpoly",
    "family_betti",
    "brute_force_family_poset",
    "subtorus_poset",
    "hyperplane_toric_compare",
    "ToricComparison",
]


# ---------------------------------------------------------------------------
# Symbolic values
# ---------------------------------------------------------------------------


def _frac_mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class SymbolicValue:
    """Element of the group Q^(symbols) x Q/Z, written multiplicatively.

    Free symbols stand for multiplicatively independent non-zero numbers;
    the phase component records a root of unity ``exp(2 pi i phase)``.
    Rational exponents of free symbols make root extraction exact.
    """

    exponents: tuple[tuple[str, Fraction], ...] = ()
    phase: Fraction = Fraction(0)

    def __post_init__(self):
        acc: dict[str, Fraction] = {}
        for s, e in self.exponents:
            acc[s] = acc.get(s, Fraction(0)) + Fraction(e)
        object.__setattr__(
            self, "exponents", tuple(sorted((s, e) for s, e in acc.items() if e != 0))
        )
        object.__setattr__(self, "phase", _frac_mod1(Fraction(self.phase)))

    @classmethod
    def one(cls) -> "SymbolicValue":
        return cls()

    @classmethod
    def symbol(cls, name: str) -> "SymbolicValue":
        return cls(((name, Fraction(1)),))

    @classmethod
    def root_of_unity(cls, k: int, n: int) -> "SymbolicValue":
        if n < 1:
            raise ValueError("order must be positive")
        return cls((), Fraction(k, n))

    def __mul__(self, other: "SymbolicValue") -> "SymbolicValue":
        return SymbolicValue(self.exponents + other.exponents, self.phase + other.phase)

    def inverse(self) -> "SymbolicValue":
        return SymbolicValue(tuple((s, -e) for s, e in self.exponents), -self.phase)

    def __truediv__(self, other: "SymbolicValue") -> "SymbolicValue":
        return self * other.inverse()

    def __pow__(self, k: int) -> "SymbolicValue":
        if not isinstance(k, int):
            raise TypeError("integer powers only; use roots() for fractional ones")
        return SymbolicValue(tuple((s, e * k) for s, e in self.exponents), self.phase * k)

    def roots(self, g: int) -> list["SymbolicValue"]:
        """All ``g`` solutions of ``x**g == self``."""
        if g < 1:
            raise ValueError("root order must be positive")
        base = tuple((s, e / g) for s, e in self.exponents)
        return [SymbolicValue(base, (self.phase + k) / g) for k in range(g)]

    @property
    def order(self) -> int | None:
        """Multiplicative order, or None for values of infinite order."""
        if self.exponents:
            return None
        return self.phase.denominator

    def __str__(self) -> str:
        parts = []
        for s, e in self.exponents:
            parts.append(s if e == 1 else f"{s}^({e})")
        if self.phase:
            parts.append(f"e({self.phase})")
        return "*".join(parts) if parts else "1"

    def to_json(self) -> dict:
        return {
            "exponents": {s: str(e) for s, e in self.exponents},
            "phase": str(self.phase),
        }


# ---------------------------------------------------------------------------
# Characters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ToricCharacter:
    """The translated subtorus ``{x : prod x_i^{d_i} = value}``."""

    exponents: tuple[int, ...]
    value: SymbolicValue = field(default_factory=SymbolicValue)

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(d) for d in self.exponents))
        if not any(self.exponents):
            raise ValueError("character exponents must not all vanish")


def component_count(c: ToricCharacter) -> int:
    g = 0
    for d in c.exponents:
        g = gcd(g, abs(d))
    return g


# ---------------------------------------------------------------------------
# General-position families
# ---------------------------------------------------------------------------

GENERIC, ROOTS = "generic", "roots_of_unity"


@dataclass(frozen=True)
class ParamToricFamily:
    """Hypertori ``x_i = alpha_{i,j}`` (``1 <= j <= n_i - 1``) inside
    ``T = {prod x_i^{d_i} = a}`` in (C^*)^{r+1}.

    ``alpha_relations='generic'`` makes every alpha a free symbol;
    ``'roots_of_unity'`` sets ``alpha_{i,j} = exp(2 pi i (j-1)/m_i)``.
    ``special`` = (j_0, ..., j_r) puts ``a`` at ``prod alpha_{i,j_i}^{d_i}``;
    otherwise ``a`` is a free symbol.
    """

    shape: MultipartiteShape
    weights: tuple[int, ...]
    special: tuple[int, ...] | None = None
    alpha_relations: str = GENERIC

    def __post_init__(self):
        object.__setattr__(self, "shape", as_shape(self.shape))
        w = tuple(int(d) for d in self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) != len(self.shape.parts):
            raise ValueError("weights and shape have different lengths")
        if any(d < 1 for d in w):
            raise ValueError("weights must be positive")
        g = 0
        for d in w:
            g = gcd(g, d)
        if g != 1:
            raise ValueError(f"weights must have gcd 1, got gcd {g}")
        if self.alpha_relations not in (GENERIC, ROOTS):
            raise ValueError(f"unknown alpha_relations {self.alpha_relations!r}")
        if self.special is not None:
            sp = tuple(int(j) for j in self.special)
            object.__setattr__(self, "special", sp)
            if len(sp) != len(w) or any(not 1 <= j <= m for j, m in zip(sp, self.shape.m)):
                raise ValueError(f"special tuple {sp} does not index a value of the bifurcation set")

    @property
    def r(self) -> int:
        return self.shape.r

    @property
    def m(self) -> tuple[int, ...]:
        return self.shape.m

    def alpha(self, i: int, j: int) -> SymbolicValue:
        if not 1 <= j <= self.m[i]:
            raise ValueError(f"alpha index ({i},{j}) out of range")
        if self.alpha_relations == ROOTS:
            return SymbolicValue.root_of_unity(j - 1, self.m[i])
        return SymbolicValue.symbol(f"alpha_{i}_{j}")

    def nu(self, js: Sequence[int]) -> SymbolicValue:
        """``prod alpha_{i, j_i}^{d_i}``."""
        out = SymbolicValue.one()
        for i, j in enumerate(js):
            out = out * self.alpha(i, j) ** self.weights[i]
        return out

    def a(self) -> SymbolicValue:
        if self.special is not None:
            return self.nu(self.special)
        return SymbolicValue.symbol("a")

    def gcd_outside(self, subset: Iterable[int]) -> int:
        """``d_Ibar``: gcd of the weights whose index is not in the subset."""
        s = set(subset)
        g = 0
        for i, d in enumerate(self.weights):
            if i not in s:
                g = gcd(g, d)
        return g

    def m_of(self, subset: Iterable[int]) -> int:
        out = 1
        for i in subset:
            out *= self.m[i]
        return out

    def to_json(self) -> dict:
        return {
            "n": list(self.shape.parts),
            "d": list(self.weights),
            "mode": "generic" if self.special is None else {"special": list(self.special)},
            "alpha_relations": self.alpha_relations,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ParamToricFamily":
        mode = data.get("mode", "generic")
        special = None if mode == "generic" else tuple(mode["special"])
        return cls(
            MultipartiteShape(tuple(data["n"])),
            tuple(data["d"]),
            special,
            data.get("alpha_relations", GENERIC),
        )


@dataclass(frozen=True)
class BifurcationReport:
    lambda_values: tuple[SymbolicValue, ...]
    m: int
    m_prime: int

    def to_json(self) -> dict:
        return {
            "lambda": [str(v) for v in self.lambda_values],
            "m": self.m,
            "m_prime": self.m_prime,
        }


def bifurcation_set(f: ParamToricFamily) -> BifurcationReport:
    seen: dict[SymbolicValue, None] = {}
    for js in product(*(range(1, m + 1) for m in f.m)):
        seen.setdefault(f.nu(js), None)
    m = f.m_of(range(f.r + 1))
    values = tuple(sorted(seen, key=str))
    if len(values) > m:
        raise InvariantError("more bifurcation values than index tuples")
    return BifurcationReport(values, m, len(values))


def _coincidences(f: ParamToricFamily) -> int:
    """Number of index tuples whose full intersection point lies on T."""
    if f.special is None and f.alpha_relations == GENERIC:
        return 0
    a = f.a()
    return sum(1 for js in product(*(range(1, m + 1) for m in f.m)) if f.nu(js) == a)


def _c_coefficients(f: ParamToricFamily) -> list[int]:
    """``c_l = sum over |I| = r - l of d_Ibar * m_I`` for l = 0..r, with the
    free term corrected by the number of full-point coincidences."""
    r = f.r
    c = [0] * (r + 1)
    for k in range(r + 1):
        c[r - k] = sum(
            f.gcd_outside(I) * f.m_of(I) for I in combinations(range(r + 1), k)
        )
    c[0] -= _coincidences(f)
    return c


def family_charpoly(f: ParamToricFamily) -> IntPolynomial:
    """``sum_k (-1)^k q^{r-k} sum_{|I|=k} d_Ibar m_I``; at a bifurcation value
    the free term loses one unit (in absolute value) per coincidence, since
    r+1 isolated points of Moebius value (-1)^r merge into one point of
    Moebius value (-1)^r r."""
    r = f.r
    c = _c_coefficients(f)
    coeffs = [0] * (r + 1)
    for k in range(r + 1):
        coeffs[r - k] = (-1) ** k * c[r - k]
    return IntPolynomial(coeffs, "q")


def family_betti(f: ParamToricFamily) -> BettiVector:
    """``b_i = sum_{l=r-i}^{r} C(l, r-i) c_l``, checked against the
    Poincare substitution of :func:`family_charpoly`."""
    r = f.r
    c = _c_coefficients(f)
    betti = tuple(sum(comb(l, r - i) * c[l] for l in range(r - i, r + 1)) for i in range(r + 1))
    via_chi = toric_poincare(family_charpoly(f), r)
    if tuple(via_chi[i] for i in range(r + 1)) != betti:
        raise InvariantError("Betti closed form disagrees with the Poincare substitution")
    return BettiVector(betti)


# ---------------------------------------------------------------------------
# Brute-force layer poset of a family
# ---------------------------------------------------------------------------


def brute_force_family_poset(f: ParamToricFamily, size_limit: int = 10) -> RankedPoset:
    """Enumerate every connected component of every intersection and order
    them by containment; Moebius values by recursion.

    Positive-dimensional layers: fixing ``x_i = alpha_{i,j_i}`` on I leaves
    ``prod_{i not in I} x_i^{d_i} = c``, whose components are indexed by the
    g-th roots rho of c (g = d_Ibar). Points are listed with coordinates and
    deduplicated, so coinciding points from different I are merged.
    """
    if f.shape.total > size_limit:
        raise ValueError(f"brute force limited to sum(n_i) <= {size_limit}")
    r = f.r
    d = f.weights
    a = f.a()
    full = range(r + 1)

    layers = [("top",)]
    dims = [r]
    for k in range(1, r):
        for I in combinations(full, k):
            g = f.gcd_outside(I)
            for js in product(*(range(1, f.m[i] + 1) for i in I)):
                c = a
                for i, j in zip(I, js):
                    c = c / f.alpha(i, j) ** d[i]
                for rho in c.roots(g):
                    layers.append(("layer", I, js, g, rho))
                    dims.append(r - k)

    points: dict[tuple, None] = {}
    for p in full:
        I = tuple(i for i in full if i != p)
        for js in product(*(range(1, f.m[i] + 1) for i in I)):
            c = a
            for i, j in zip(I, js):
                c = c / f.alpha(i, j) ** d[i]
            for xp in c.roots(d[p]):
                coords = []
                it = iter(js)
                for i in full:
                    coords.append(xp if i == p else f.alpha(i, next(it)))
                points.setdefault(tuple(coords), None)
    for js in product(*(range(1, m + 1) for m in f.m)):
        if f.nu(js) == a:
            points.setdefault(tuple(f.alpha(i, j) for i, j in enumerate(js)), None)
    for pt in points:
        layers.append(("point", pt))
        dims.append(0)

    def layer_leq(x, y) -> bool:
        """x contains y (x lower in the poset)."""
        if x[0] == "top":
            return True
        if y[0] == "top":
            return False
        if y[0] == "point":
            pt = y[1]
            if x[0] == "point":
                return x[1] == pt
            _, I, js, g, rho = x
            if any(pt[i] != f.alpha(i, j) for i, j in zip(I, js)):
                return False
            val = SymbolicValue.one()
            for i in full:
                if i not in I:
                    val = val * pt[i] ** (d[i] // g)
            return val == rho
        if x[0] == "point":
            return False
        _, I, js, g, rho = x
        _, I2, js2, g2, rho2 = y
        if not set(I) <= set(I2):
            return False
        j_of = dict(zip(I2, js2))
        if any(j_of[i] != j for i, j in zip(I, js)):
            return False
        val = SymbolicValue.one()
        for i in I2:
            if i not in I:
                val = val * f.alpha(i, j_of[i]) ** (d[i] // g)
        val = val * rho2 ** (g2 // g)
        return val == rho

    n = len(layers)
    below = [[x for x in range(n) if x != y and dims[x] > dims[y] and layer_leq(layers[x], layers[y])]
             for y in range(n)]
    order = sorted(range(n), key=lambda i: -dims[i])
    mu: dict[int, int] = {}
    for y in order:
        mu[y] = 1 if y == 0 else -sum(mu[x] for x in below[y])

    nodes = tuple(
        PosetNode(i, dims[i], mu[i], frozenset(below[i]) | {i}, ())
        for i in range(n)
    )
    covers = []
    for y in range(n):
        for x in below[y]:
            if dims[x] == dims[y] + 1:
                covers.append((x, y))
    return RankedPoset(nodes, tuple(sorted(covers)), r)


def _chi_from_nodes(p: RankedPoset) -> IntPolynomial:
    coeffs = [0] * (p.ambient_dim + 1)
    for nd in p.nodes:
        coeffs[nd.dim] += nd.mobius
    return IntPolynomial(coeffs, "q")


# ---------------------------------------------------------------------------
# Central subtorus arrangements
# ---------------------------------------------------------------------------


def hermite_rows(rows: Sequence[Sequence[int]], ncols: int) -> tuple[tuple[int, ...], ...]:
    """Row-style Hermite normal form basis of the lattice spanned by ``rows``:
    positive pivots, entries above each pivot reduced into [0, pivot)."""
    mat = [list(r) for r in rows if any(r)]
    out: list[list[int]] = []
    col = 0
    while mat and col < ncols:
        nz = [r for r in mat if r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            rest = []
            for r in nz[1:]:
                q = r[col] // piv[col]
                r2 = [x - q * y for x, y in zip(r, piv)]
                if r2[col]:
                    rest.append(r2)
                elif any(r2):
                    mat.append(r2)
            nz = [piv] + rest
            mat = [r for r in mat if r[col] == 0 and any(r)]
        piv = nz[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        mat = [r for r in mat if r[col] == 0 and any(r)]
        out.append(piv)
        col += 1
    # reduce entries above pivots
    for i, row in enumerate(out):
        p = next(c for c, x in enumerate(row) if x)
        for k in range(i):
            q = out[k][p] // row[p]
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], row)]
    return tuple(tuple(r) for r in out)


def _coords_in(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[int] | None:
    """Integer coordinates of v in an HNF basis, or None if v is not in the lattice."""
    v = list(v)
    coords = []
    for row in basis:
        p = next(c for c, x in enumerate(row) if x)
        if v[p] % row[p]:
            return None
        q = v[p] // row[p]
        coords.append(q)
        v = [x - q * y for x, y in zip(v, row)]
    return coords if not any(v) else None


def saturation(rows: Sequence[Sequence[int]], ncols: int) -> tuple[tuple[int, ...], ...]:
    """HNF basis of ``Q-span(rows) n Z^ncols``, via two integer kernels."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return ()
    snf = smith_normal_form(rows, ncols)
    rk = snf.rank
    if rk == ncols:
        return hermite_rows([[int(i == j) for j in range(ncols)] for i in range(ncols)], ncols)
    R = snf.right
    kernel = [[R[i][c] for i in range(ncols)] for c in range(rk, ncols)]
    snf2 = smith_normal_form(kernel, ncols)
    R2 = snf2.right
    sat = [[R2[i][c] for i in range(ncols)] for c in range(snf2.rank, ncols)]
    return hermite_rows(sat, ncols)


def _components(chars: Sequence[Sequence[int]], ncols: int):
    """Components of ``{x : x^chi = 1 for chi in chars}`` as
    (saturated lattice HNF, phases of the basis characters)."""
    L = saturation(chars, ncols)
    if not L:
        return [((), ())]
    A = [_coords_in(L, c) for c in chars if any(c)]
    if any(row is None for row in A):
        raise InvariantError("character not in its own saturation")
    snf = smith_normal_form(A, len(L))
    V = snf.right
    diag = list(snf.diagonal) + [0] * (len(L) - len(snf.diagonal))
    if any(x == 0 for x in diag[: len(L)]):
        raise InvariantError("saturation has larger rank than the character lattice")
    out = []
    for ks in product(*(range(dd) for dd in diag[: len(L)])):
        g = [Fraction(k, dd) for k, dd in zip(ks, diag)]
        phases = tuple(_frac_mod1(sum(V[i][j] * g[j] for j in range(len(L)))) for i in range(len(L)))
        out.append((L, phases))
    return out


def subtorus_poset(chars: Sequence[Sequence[int]], ncols: int) -> RankedPoset:
    """Layer poset of the central toric arrangement ``{x^chi = 1}`` in (C^*)^ncols,
    by subset enumeration; component counts from Smith normal forms."""
    chars = [tuple(c) for c in chars]
    if len(chars) > 12:
        raise ValueError("subtorus poset limited to 12 characters")
    layers: dict = {}
    for mask in range(1 << len(chars)):
        sub = [chars[i] for i in range(len(chars)) if mask >> i & 1]
        for comp in _components(sub, ncols):
            layers.setdefault(comp, None)
    keys = sorted(layers, key=lambda k: (len(k[0]), k))

    def leq(x, y) -> bool:
        Lx, px = x
        Ly, py = y
        if len(Lx) > len(Ly):
            return False
        for b, phase in zip(Lx, px):
            c = _coords_in(Ly, b)
            if c is None:
                return False
            if _frac_mod1(sum(ci * pi for ci, pi in zip(c, py))) != phase:
                return False
        return True

    n = len(keys)
    below = [[x for x in range(n) if x != y and leq(keys[x], keys[y])] for y in range(n)]
    mu: dict[int, int] = {}
    for y in range(n):
        mu[y] = 1 if y == 0 else -sum(mu[x] for x in below[y])
    nodes = tuple(
        PosetNode(i, ncols - len(keys[i][0]), mu[i], frozenset(below[i]) | {i}, keys[i][0])
        for i in range(n)
    )
    covers = sorted(
        (x, y) for y in range(n) for x in below[y] if nodes[x].dim == nodes[y].dim + 1
    )
    return RankedPoset(nodes, tuple(covers), ncols)


@dataclass(frozen=True)
class ToricComparison:
    chi_hyperplane: IntPolynomial
    chi_toric: IntPolynomial
    epsilon: int

    def to_json(self) -> dict:
        return {
            "chi_A": self.chi_hyperplane.to_json(),
            "chi_T": self.chi_toric.to_json(),
            "epsilon": self.epsilon,
        }


def hyperplane_toric_compare(g: Graph) -> ToricComparison:
    """Compare ``A = {z_i = 0} u {z_i = z_j : ij edge}`` in C^V with the
    subtori ``{x_i = x_j}`` in (C^*)^V: ``chi_A(q) = eps * chi_T(q - 1)``."""
    n = g.vertex_count
    if n < 1:
        raise ValueError("graph must have at least one vertex")
    forms = []
    for i in range(n):
        forms.append(LinearForm(tuple(int(k == i) for k in range(n))))
    chars = []
    for i, j in g.edges:
        c = [0] * n
        c[i], c[j] = 1, -1
        forms.append(LinearForm(tuple(c)))
        chars.append(tuple(c))
    chi_a = characteristic_polynomial(HyperplaneArrangement(n, tuple(forms)))
    chi_t = _chi_from_nodes(subtorus_poset(chars, n))
    shifted = IntPolynomial(chi_t(IntPolynomial((-1, 1), "q")).coeffs, "q")
    if chi_a == shifted:
        eps = 1
    elif chi_a == -shifted:
        eps = -1
    else:
        raise InvariantError("chi_A(q) is not +-chi_T(q-1)")
    return ToricComparison(chi_a, chi_t, eps)
