"""Finitely presented groups: right-angled Artin groups, finite presentations
of Bestvina-Brady groups and Artin kernels of complete multipartite graphs,
windowed Reidemeister-Schreier truncations, Tietze simplification and
abelianization."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .exact import IntPolynomial, InvariantError, bezout, series_divide, smith_normal_form
from .graphs import Graph, MultipartiteShape, as_shape, iter_cliques, multipartite_graph

# A word is a tuple of non-zero ints: +k is generator k (1-based), -k its inverse.
Word = tuple


def reduce_word(w: Iterable[int]) -> Word:
    out: list[int] = []
    for x in w:
        if x == 0:
            raise ValueError("0 is not a generator index")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(int(x))
    return tuple(out)


def inverse(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def power(w: Sequence[int], k: int) -> Word:
    base = tuple(w) if k >= 0 else inverse(w)
    return reduce_word(base * abs(k))


def commutator(x: Sequence[int], y: Sequence[int]) -> Word:
    """``x y x^-1 y^-1``."""
    return reduce_word(tuple(x) + tuple(y) + inverse(x) + inverse(y))


def cyclic_reduce(w: Sequence[int]) -> Word:
    w = list(reduce_word(w))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def _cyclic_key(w: Word) -> Word:
    """Canonical representative of w up to rotation and inversion."""
    if not w:
        return w
    cands = []
    for v in (w, inverse(w)):
        for i in range(len(v)):
            cands.append(v[i:] + v[:i])
    return min(cands, key=lambda c: (len(c), c))


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError("generator names must be unique")
        rels = tuple(reduce_word(r) for r in self.relators)
        for r in rels:
            if any(abs(x) > len(gens) for x in r):
                raise ValueError(f"relator {r} uses an undefined generator")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", rels)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        return self.generators.index(name) + 1

    def word_str(self, w: Word) -> str:
        if not w:
            return "1"
        return " ".join(self.generators[abs(x) - 1] + ("^-1" if x < 0 else "") for x in w)

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "relators": [list(r) for r in self.relators]}

    @classmethod
    def from_json(cls, data: dict) -> "GroupPresentation":
        return cls(tuple(data["generators"]), tuple(tuple(r) for r in data["relators"]))

    def to_gap(self, name: str = "G") -> str:
        """Plain FpGroup syntax."""
        gens = ", ".join(f'"{g}"' for g in self.generators)
        rels = []
        for r in self.relators:
            if not r:
                continue
            rels.append("*".join(f"F.{abs(x)}" + ("^-1" if x < 0 else "") for x in r))
        return f"F := FreeGroup({gens});;\n{name} := F / [ {', '.join(rels)} ];;\n"


# ---------------------------------------------------------------------------
# Right-angled Artin groups and their word problem
# ---------------------------------------------------------------------------


def raag_presentation(g: Graph) -> GroupPresentation:
    gens = tuple(f"s{v}" for v in range(g.vertex_count))
    rels = tuple(commutator((u + 1,), (v + 1,)) for u, v in g.edges)
    return GroupPresentation(gens, rels)


def raag_is_identity(g: Graph, w: Sequence[int]) -> bool:
    """Word problem in A_g by piling: letter x goes on pile x and leaves a
    marker on the pile of every generator not commuting with x; x cancels
    against the top of pile x when that top is x^-1."""
    n = g.vertex_count
    noncomm = [
        [u for u in range(n) if u != v and not g.has_edge(u, v)] for v in range(n)
    ]
    piles: list[list[int]] = [[] for _ in range(n)]
    for x in w:
        v = abs(x) - 1
        pile = piles[v]
        if pile and pile[-1] == -x:
            pile.pop()
            for u in noncomm[v]:
                if not piles[u] or piles[u][-1] != 0:
                    raise InvariantError("pile marker missing")
                piles[u].pop()
        else:
            pile.append(x)
            for u in noncomm[v]:
                piles[u].append(0)
    return all(not p for p in piles)


def multipartite_is_identity(shape, w: Sequence[int]) -> bool:
    """Independent check in the product of free groups: project to every block."""
    shape = as_shape(shape)
    offs = shape.offsets() + [shape.total]
    for k in range(len(shape.parts)):
        lo, hi = offs[k], offs[k + 1]
        if reduce_word(x for x in w if lo < abs(x) <= hi):
            return False
    return True


def substitute(w: Sequence[int], images: Sequence[Word]) -> Word:
    """Image of w under generator k -> images[k-1]."""
    out: list[int] = []
    for x in w:
        img = images[abs(x) - 1]
        out.extend(img if x > 0 else inverse(img))
    return reduce_word(out)


@dataclass(frozen=True)
class KernelPresentation:
    """A presentation together with the RAAG words of its generators."""

    presentation: GroupPresentation
    graph: Graph
    defining_words: tuple[Word, ...]

    def unsound_relators(self) -> list[int]:
        """Indices of relators whose image is not trivial in the RAAG."""
        bad = []
        for i, r in enumerate(self.presentation.relators):
            if not raag_is_identity(self.graph, substitute(r, self.defining_words)):
                bad.append(i)
        return bad


def _sigma(shape: MultipartiteShape, k: int, i: int) -> int:
    return shape.vertex(k, i) + 1


def bb_presentation(shape) -> KernelPresentation:
    """Finite presentation of the Bestvina-Brady group of K_shape (r >= 2,
    all n_i >= 2). Generators alpha_{0,i} (i >= 2) and alpha_{k,j} (k >= 1),
    alpha_{k,i} = sigma_{k,i} sigma_{0,1}^-1. Relators: [alpha_{k,i}, alpha_{l,j}]
    for 1 <= k < l, and [alpha_{0,i}, alpha_{k,j} alpha_{1,1}^-1] over
    (k = 1, j >= 2) and (k >= 2, all j)."""
    shape = as_shape(shape)
    r = shape.r
    if r < 2 or min(shape.parts) < 2:
        raise ValueError(
            "bb_presentation needs r >= 2 and all n_i >= 2; for r = 1 the kernel is "
            "finitely generated but its commutator relators form an infinite family"
        )
    names, words, idx = [], [], {}
    s01 = _sigma(shape, 0, 1)
    for k, n in enumerate(shape.parts):
        for i in range(2 if k == 0 else 1, n + 1):
            idx[(k, i)] = len(names) + 1
            names.append(f"a{k}_{i}")
            words.append((_sigma(shape, k, i), -s01))
    rels = []
    for k in range(1, r + 1):
        for l in range(k + 1, r + 1):
            for i in range(1, shape.parts[k] + 1):
                for j in range(1, shape.parts[l] + 1):
                    rels.append(commutator((idx[(k, i)],), (idx[(l, j)],)))
    a11 = idx[(1, 1)]
    for i in range(2, shape.parts[0] + 1):
        for k in range(1, r + 1):
            for j in range(2 if k == 1 else 1, shape.parts[k] + 1):
                rels.append(commutator((idx[(0, i)],), (idx[(k, j)], -a11)))
    return KernelPresentation(
        GroupPresentation(tuple(names), tuple(rels)),
        multipartite_graph(shape),
        tuple(words),
    )


# ---------------------------------------------------------------------------
# Artin kernels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CharacterData:
    """Character sigma_{k,i} -> d_k on the RAAG of K_shape, with its Bezout data."""

    shape: MultipartiteShape
    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "shape", as_shape(self.shape))
        object.__setattr__(self, "weights", tuple(int(d) for d in self.weights))
        if len(self.weights) != len(self.shape.parts):
            raise ValueError("weights and shape have different lengths")
        if any(d == 0 for d in self.weights):
            raise ValueError("weights must be non-zero")

    @property
    def d(self) -> tuple[int, ...]:
        return self.weights

    @property
    def r(self) -> int:
        return self.shape.r

    @property
    def e(self) -> tuple[int, ...]:
        """``e_l = gcd{d_k : k != l}``."""
        out = []
        for l in range(len(self.d)):
            g = 0
            for k, dk in enumerate(self.d):
                if k != l:
                    g = gcd(g, dk)
            out.append(g)
        return tuple(out)

    @property
    def a(self) -> tuple[int, ...]:
        """Bezout coefficients with ``sum a_k d_k = 1``."""
        g, coeffs = bezout(list(self.d))
        if g != 1:
            raise ValueError(f"weights must have gcd 1, got {g}")
        return tuple(coeffs)

    def a_kl(self, l: int) -> tuple[int, ...]:
        """``a_{k,l}`` with ``a_{l,l} = 0`` and ``sum_k a_{k,l} d_k = e_l``."""
        others = [k for k in range(len(self.d)) if k != l]
        g, coeffs = bezout([self.d[k] for k in others])
        if g != self.e[l]:
            raise InvariantError("Bezout gcd mismatch")
        out = [0] * len(self.d)
        for k, c in zip(others, coeffs):
            out[k] = c
        return tuple(out)

    def f_kl(self, k: int, l: int) -> int:
        return self.d[k] // self.e[l]

    def check(self) -> None:
        if sum(x * y for x, y in zip(self.a, self.d)) != 1:
            raise InvariantError("a_k do not satisfy sum a_k d_k = 1")
        for l in range(len(self.d)):
            a = self.a_kl(l)
            if a[l] != 0 or sum(x * y for x, y in zip(a, self.d)) != self.e[l]:
                raise InvariantError("a_{k,l} Bezout relation fails")
            if any(self.d[k] % self.e[l] for k in range(len(self.d)) if k != l):
                raise InvariantError("e_l does not divide the other weights")


def artin_kernel_presentation(c: CharacterData, trimmed: bool = False) -> KernelPresentation:
    """Finite presentation of the kernel of sigma_{k,i} -> d_k (r >= 2, all
    n_i >= 2, gcd 1), generated by beta_0..beta_r and alpha_{k,j;p}
    (j >= 2, 0 <= p < e_k); alpha_{k,j;m} = tau^m sigma_{k,j} tau^{-m-d_k},
    tau = prod sigma_{k,1}^{a_k}, beta_k = sigma_{k,1} tau^{-d_k}.

    ``trimmed=True`` (requires d_0 = 1) takes tau = sigma_{0,1}, which kills
    beta_0 and all shifts of blocks k >= 1.
    """
    shape = c.shape
    r = shape.r
    if r < 2 or min(shape.parts) < 2:
        raise ValueError("artin_kernel_presentation needs r >= 2 and all n_i >= 2")
    if any(d < 1 for d in c.d):
        raise ValueError("weights must be positive")
    c.check()
    if trimmed:
        return _artin_kernel_trimmed(c)
    d, e, a = c.d, c.e, c.a
    nb = r + 1

    tau = reduce_word(
        x for k in range(nb) for x in power((_sigma(shape, k, 1),), a[k])
    )

    names, words = [], []
    beta = {}
    for k in range(nb):
        beta[k] = len(names) + 1
        names.append(f"b{k}")
        words.append(reduce_word((_sigma(shape, k, 1),) + power(tau, -d[k])))
    alpha = {}
    for k in range(nb):
        for j in range(2, shape.parts[k] + 1):
            for p in range(e[k]):
                alpha[(k, j, p)] = len(names) + 1
                names.append(f"a{k}_{j};{p}")
                words.append(
                    reduce_word(power(tau, p) + (_sigma(shape, k, j),) + power(tau, -p - d[k]))
                )

    gamma = {l: reduce_word(x for k in range(nb) for x in power((beta[k],), c.a_kl(l)[k]))
             for l in range(nb)}

    def alpha_word(k: int, j: int, m: int) -> Word:
        q, p = divmod(m, e[k])
        g = power(gamma[k], q)
        return reduce_word(inverse(g) + (alpha[(k, j, p)],) + g)

    rels: list[Word] = []
    rels.append(reduce_word(x for k in range(nb) for x in power((beta[k],), a[k])))
    for k in range(nb):
        for l in range(k + 1, nb):
            rels.append(commutator((beta[k],), (beta[l],)))
    for l in range(nb):
        for k in range(nb):
            if k == l:
                continue
            conj = reduce_word(power(gamma[l], c.f_kl(k, l)) + (-beta[k],))
            for j in range(2, shape.parts[l] + 1):
                for m in range(max(e[k], e[l])):
                    rels.append(commutator(alpha_word(l, j, m), conj))
    for k in range(nb):
        for l in range(k + 1, nb):
            p = min((x for x in range(nb) if x not in (k, l)), key=lambda x: (d[x], x))
            for i in range(2, shape.parts[k] + 1):
                for j in range(2, shape.parts[l] + 1):
                    for m in range(d[p]):
                        x, y = alpha_word(k, i, m), alpha_word(l, j, m)
                        bk, bl = (beta[k],), (beta[l],)
                        lhs = x + inverse(bk) + y + bk
                        rhs = y + inverse(bl) + x + bl
                        rels.append(reduce_word(lhs + inverse(rhs)))
    return KernelPresentation(
        GroupPresentation(tuple(names), tuple(rels)), multipartite_graph(shape), tuple(words)
    )


def _artin_kernel_trimmed(c: CharacterData) -> KernelPresentation:
    shape, d = c.shape, c.d
    if d[0] != 1:
        raise ValueError("the trimmed presentation needs d_0 = 1")
    r = shape.r
    e0 = c.e[0]
    s01 = _sigma(shape, 0, 1)
    names, words = [], []
    mu, nu = {}, {}
    for i in range(2, shape.parts[0] + 1):
        for m in range(e0):
            mu[(i, m)] = len(names) + 1
            names.append(f"mu{i};{m}")
            words.append(reduce_word(power((s01,), m) + (_sigma(shape, 0, i),) + power((s01,), -m - 1)))
    for k in range(1, r + 1):
        for i in range(1, shape.parts[k] + 1):
            nu[(k, i)] = len(names) + 1
            names.append(f"nu{k}_{i}")
            words.append(reduce_word((_sigma(shape, k, i),) + power((s01,), -d[k])))
    a0 = c.a_kl(0)
    gamma0 = reduce_word(x for k in range(1, r + 1) for x in power((nu[(k, 1)],), a0[k]))

    rels: list[Word] = []
    for k in range(1, r + 1):
        for l in range(k + 1, r + 1):
            rels.append(commutator((nu[(k, 1)],), (nu[(l, 1)],)))
    for i in range(2, shape.parts[0] + 1):
        for m in range(e0):
            for k in range(1, r + 1):
                w = reduce_word(power(gamma0, d[k] // e0) + (-nu[(k, 1)],))
                rels.append(commutator((mu[(i, m)],), w))
    for k in range(1, r + 1):
        for l in range(k + 1, r + 1):
            for i in range(1, shape.parts[k] + 1):
                for j in range(1, shape.parts[l] + 1):
                    rels.append(commutator((nu[(k, i)],), (nu[(l, j)],)))
    for k in range(1, r + 1):
        for i in range(2, shape.parts[k] + 1):
            for j in range(2, shape.parts[0] + 1):
                for m in range(e0):
                    rels.append(commutator((mu[(j, m)],), (nu[(k, i)], -nu[(k, 1)])))
    return KernelPresentation(
        GroupPresentation(tuple(names), tuple(rels)), multipartite_graph(shape), tuple(words)
    )


# ---------------------------------------------------------------------------
# Windowed Reidemeister-Schreier
# ---------------------------------------------------------------------------


def coprime_clique(g: Graph, weights: Sequence[int]) -> tuple[int, ...]:
    """Smallest clique (then lexicographically first) whose weights have gcd 1."""
    best = None
    for cl in iter_cliques(g):
        h = 0
        for v in cl:
            h = gcd(h, weights[v])
        if h == 1 and (best is None or (len(cl), cl) < (len(best), best)):
            best = cl
    if best is None:
        raise ValueError("no clique has coprime weights, so tau cannot be formed")
    return best


def rs_window_presentation(
    g: Graph, weights: Sequence[int] | None = None, window: int = 2
) -> KernelPresentation:
    """Truncation to shifts |m| <= window of the Reidemeister-Schreier
    presentation of the kernel of sigma_v -> weights[v] (a truncation, not a
    presentation of the kernel).

    Diagonal case (weights all 1 or None): transversal sigma_0^m, so the
    alpha_{0;m} are trivial and omitted. Otherwise tau = prod sigma_c^{a_c}
    over a clique c with coprime weights is adjoined, with relators
    ``tau^-1 prod sigma_c^{a_c}`` and ``[tau, sigma_c]``.
    """
    n = g.vertex_count
    if n < 1:
        raise ValueError("graph must have at least one vertex")
    if window < 0:
        raise ValueError("window must be >= 0")
    w = [1] * n if weights is None else [int(x) for x in weights]
    if len(w) != n:
        raise ValueError("one weight per vertex required")
    if any(x == 0 for x in w):
        raise ValueError("weights must be non-zero")
    diagonal = all(x == 1 for x in w)

    # A-words over generators 1..n (sigma_v = v+1) and, if needed, tau = n+1.
    tau_gen = n + 1
    base_rels = [commutator((u + 1,), (v + 1,)) for u, v in g.edges]
    if diagonal:
        tau_word: Word = (1,)
        skip = {1}
    else:
        clique = coprime_clique(g, w)
        _, coeffs = bezout([w[v] for v in clique])
        tau_word = reduce_word(x for v, a in zip(clique, coeffs) for x in power((v + 1,), a))
        base_rels.append(reduce_word((-tau_gen,) + tau_word))
        base_rels += [commutator((tau_gen,), (v + 1,)) for v in clique]
        skip = {tau_gen}
    weight_of = {v + 1: w[v] for v in range(n)}
    weight_of[tau_gen] = 1

    names, words, idx = [], [], {}
    for v in range(n):
        if v + 1 in skip:
            continue
        for m in range(-window, window + 1):
            idx[(v + 1, m)] = len(names) + 1
            names.append(f"a{v};{m}")
            words.append(
                reduce_word(power(tau_word, m) + (v + 1,) + power(tau_word, -m - w[v]))
            )

    def rewrite(r: Word, start: int) -> Word | None:
        out, coset = [], start
        for x in r:
            gen = abs(x)
            if x < 0:
                coset -= weight_of[gen]
            if gen not in skip:
                key = (gen, coset)
                if key not in idx:
                    return None
                out.append(idx[key] if x > 0 else -idx[key])
            if x > 0:
                coset += weight_of[gen]
        if coset != start:
            raise InvariantError("relator does not lie in the kernel")
        return reduce_word(out)

    rels, seen = [], set()
    for r in base_rels:
        for m in range(-window, window + 1):
            rw = rewrite(r, m)
            if rw and rw not in seen:
                seen.add(rw)
                rels.append(rw)
    return KernelPresentation(GroupPresentation(tuple(names), tuple(rels)), g, tuple(words))


# ---------------------------------------------------------------------------
# Abelianization and Tietze moves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AbelianizationReport:
    rank: int
    torsion: tuple[int, ...]

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


def exponent_matrix(p: GroupPresentation) -> list[list[int]]:
    rows = []
    for r in p.relators:
        row = [0] * p.rank
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        if any(row):
            rows.append(row)
    return rows


def abelianization(p: GroupPresentation) -> AbelianizationReport:
    rows = exponent_matrix(p)
    if not rows or p.rank == 0:
        return AbelianizationReport(p.rank, ())
    snf = smith_normal_form(rows, p.rank)
    if p.rank - snf.rank != p.rank - sum(1 for x in snf.diagonal if x):
        raise InvariantError("SNF rank bookkeeping")
    return AbelianizationReport(p.rank - snf.rank, tuple(x for x in snf.diagonal if x > 1))


def _clean(rels: Iterable[Word]) -> list[Word]:
    out, seen = [], set()
    for r in rels:
        r = cyclic_reduce(r)
        if not r:
            continue
        key = _cyclic_key(r)
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out


def tietze_simplify(p: GroupPresentation, effort: int = 10_000) -> GroupPresentation:
    """Reduce relators, drop duplicates (up to rotation and inversion), and
    eliminate generators that occur exactly once in some relator, preferring
    short relators and high generator indices. ``effort`` bounds the number
    of eliminations and the relator length created by substitution."""
    before = abelianization(p)
    gens = list(p.generators)
    rels = _clean(p.relators)
    for _ in range(effort):
        choice = None
        for r in sorted(rels, key=len):
            counts: dict[int, int] = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            once = [gv for gv, c in counts.items() if c == 1]
            if once:
                choice = (r, max(once))
                break
        if choice is None:
            break
        r, gen = choice
        pos = next(i for i, x in enumerate(r) if abs(x) == gen)
        rot = r[pos:] + r[:pos]
        rest = rot[1:]
        image = inverse(rest) if rot[0] > 0 else rest
        new_rels = []
        for s in rels:
            if s is r:
                continue
            out = []
            for x in s:
                if abs(x) == gen:
                    out.extend(image if x > 0 else inverse(image))
                else:
                    out.append(x)
            new_rels.append(out)
        if sum(len(s) for s in new_rels) > effort * 10:
            break
        # renumber generators above gen
        renum = []
        for s in new_rels:
            renum.append(tuple(x - 1 if x > gen else (x + 1 if x < -gen else x) for x in s))
        del gens[gen - 1]
        rels = _clean(renum)
    out = GroupPresentation(tuple(gens), tuple(sorted(rels, key=lambda w: (len(w), w))))
    after = abelianization(out)
    if after != before:
        raise InvariantError("Tietze moves changed the abelianization")
    return out


# ---------------------------------------------------------------------------
# Betti numbers of Bestvina-Brady groups of K_shape
# ---------------------------------------------------------------------------


def _elementary(xs: Sequence[int], p: int) -> int:
    total = 0
    for sub in combinations(xs, p):
        prod = 1
        for x in sub:
            prod *= x
        total += prod
    return total


def betti_bb(shape, k: int) -> int:
    """``b_k(N) = sum_{p<=k} (-1)^{k-p} e_p(n_0, ..., n_r)`` for 0 <= k <= r."""
    shape = as_shape(shape)
    if not 0 <= k <= shape.r:
        raise ValueError(f"k must lie in [0, r] = [0, {shape.r}]")
    return sum((-1) ** (k - p) * _elementary(shape.parts, p) for p in range(k + 1))


def truncated_poincare(shape) -> tuple[IntPolynomial, IntPolynomial]:
    """``(P_A, P_N)`` modulo t^{r+1}, with P_A = prod (1 + n_i t) and
    P_N = P_A / (1 + t) as a power series."""
    shape = as_shape(shape)
    pa = IntPolynomial((1,), "t")
    for n in shape.parts:
        pa = pa * IntPolynomial((1, n), "t")
    pa = pa.truncate(shape.r + 1)
    pn = series_divide(pa, IntPolynomial((1, 1), "t"), shape.r + 1)
    return pa, pn


def b1_closed(shape) -> int:
    return sum(as_shape(shape).parts) - 1


def b2_closed(shape) -> int:
    ns = as_shape(shape).parts
    return _elementary(ns, 2) - sum(ns) + 1
