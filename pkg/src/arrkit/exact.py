"""Exact arithmetic kernel: integer polynomials, integer matrices, ranks, SNF.

Everything here works with Python integers and ``fractions.Fraction``; no
floating point is used anywhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, isqrt
from typing import Iterable, Sequence


class InvariantError(AssertionError):
    """An internal invariant was violated (a bug, not bad input)."""


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = [int(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class IntPolynomial:
    """Dense univariate polynomial with integer coefficients.

    ``coeffs[k]`` is the coefficient of ``var**k``; trailing zeros are
    trimmed so the zero polynomial has ``coeffs == ()``.
    """

    coeffs: tuple[int, ...] = ()
    var: str = "q"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1, var: str = "q") -> "IntPolynomial":
        return cls((0,) * degree + (coeff,), var)

    @classmethod
    def constant(cls, c: int, var: str = "q") -> "IntPolynomial":
        return cls((c,), var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def with_var(self, var: str) -> "IntPolynomial":
        return IntPolynomial(self.coeffs, var)

    def _coerce(self, other) -> "IntPolynomial":
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int):
            return IntPolynomial((other,), self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial([self[k] + other[k] for k in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return IntPolynomial((), self.var)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = IntPolynomial((1,), self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, divisor: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Division by a monic (or unit-leading) divisor, exact over Z."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead = divisor.coeffs[-1]
        if lead not in (1, -1):
            raise ValueError("divisor must have leading coefficient +-1")
        rem = list(self.coeffs)
        dd = divisor.degree
        quot = [0] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k] * lead
            if c:
                quot[k - dd] = c
                for i, b in enumerate(divisor.coeffs):
                    rem[k - dd + i] -= c * b
        return IntPolynomial(quot, self.var), IntPolynomial(rem, self.var)

    def exact_div(self, divisor: "IntPolynomial") -> "IntPolynomial":
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise InvariantError(f"{self} is not divisible by {divisor}")
        return q

    def truncate(self, n: int) -> "IntPolynomial":
        """Reduce modulo ``var**n``."""
        return IntPolynomial(self.coeffs[:n], self.var)

    def to_json(self) -> dict:
        return {"var": self.var, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "IntPolynomial":
        return cls(tuple(int(c) for c in data["coeffs"]), data.get("var", "q"))

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = self.var if k == 1 else f"{self.var}^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


def series_divide(num: IntPolynomial, den: IntPolynomial, precision: int) -> IntPolynomial:
    """Power series quotient ``num/den mod var**precision``; ``den(0)`` must be +-1."""
    d0 = den[0]
    if d0 not in (1, -1):
        raise ValueError("series division needs a unit constant term")
    out = []
    for k in range(precision):
        acc = num[k] - sum(out[i] * den[k - i] for i in range(max(0, k - den.degree), k))
        out.append(acc * d0)
    return IntPolynomial(out, num.var)


def hyperplane_poincare(chi: IntPolynomial, dim: int) -> IntPolynomial:
    """``(-t)**dim * chi(-1/t)`` for a central or affine hyperplane arrangement in C^dim."""
    if chi.degree > dim:
        raise ValueError("characteristic polynomial degree exceeds ambient dimension")
    out = [0] * (dim + 1)
    for k, c in enumerate(chi.coeffs):
        out[dim - k] += c * (-1) ** (dim - k)
    p = IntPolynomial(out, "t")
    _check_nonnegative(p, "hyperplane")
    return p


def toric_poincare(chi: IntPolynomial, dim: int) -> IntPolynomial:
    """``(-t)**dim * chi(-1/t - 1)`` for a toric arrangement in a dim-torus."""
    if chi.degree > dim:
        raise ValueError("characteristic polynomial degree exceeds ambient dimension")
    out = [0] * (dim + 1)
    for k, c in enumerate(chi.coeffs):
        if not c:
            continue
        # c * (-1)^(dim+k) * t^(dim-k) * (1+t)^k
        s = c * (-1) ** (dim + k)
        for i in range(k + 1):
            out[dim - k + i] += s * comb(k, i)
    p = IntPolynomial(out, "t")
    _check_nonnegative(p, "toric")
    return p


def _check_nonnegative(p: IntPolynomial, kind: str):
    if any(c < 0 for c in p.coeffs):
        raise InvariantError(
            f"{kind} Poincare substitution produced a negative coefficient: {p}"
        )


def poly_eval_substitute(p: IntPolynomial, kind: str, dim: int) -> IntPolynomial:
    """Dispatch on ``kind`` in {"hyperplane", "toric"}."""
    if kind == "hyperplane":
        return hyperplane_poincare(p, dim)
    if kind == "toric":
        return toric_poincare(p, dim)
    raise ValueError(f"unknown substitution kind {kind!r}")


def parse_fraction(s) -> Fraction:
    return s if isinstance(s, Fraction) else Fraction(str(s))


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

IntMatrix = list  # list of rows of Python ints


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Bareiss determinant of a square integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rational_rank(m: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    a = [list(map(int, r)) for r in m]
    if not a or not a[0]:
        return 0
    rows, cols = len(a), len(a[0])
    rank, prev = 0, 1
    for c in range(cols):
        piv = next((i for i in range(rank, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][c]
        for i in range(rank + 1, rows):
            f = a[i][c]
            row_i, row_r = a[i], a[rank]
            for j in range(c, cols):
                row_i[j] = (row_i[j] * p - f * row_r[j]) // prev
        prev = p
        rank += 1
        if rank == rows:
            break
    return rank


def rank_mod_p(m: Sequence[Sequence[int]], p: int) -> int:
    """Rank over the prime field F_p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    a = [[x % p for x in r] for r in m]
    if not a or not a[0]:
        return 0
    rows, cols = len(a), len(a[0])
    rank = 0
    for c in range(cols):
        piv = next((i for i in range(rank, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], -1, p)
        row_r = [(x * inv) % p for x in a[rank]]
        a[rank] = row_r
        for i in range(rows):
            if i != rank and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], row_r)]
        rank += 1
        if rank == rows:
            break
    return rank


@dataclass(frozen=True)
class SNFResult:
    """``left @ m @ right == diagonal-matrix`` with unimodular ``left``, ``right``."""

    diagonal: tuple[int, ...]
    rank: int
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]
    shape: tuple[int, int]

    def matrix(self) -> list[list[int]]:
        rows, cols = self.shape
        d = [[0] * cols for _ in range(rows)]
        for i, x in enumerate(self.diagonal):
            d[i][i] = x
        return d

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.diagonal if d > 1]


def smith_normal_form(m: Sequence[Sequence[int]], ncols: int | None = None) -> SNFResult:
    """Smith normal form with transform witnesses.

    Pivots on the entry of least absolute value and reduces by Euclidean
    steps, which keeps intermediate entries small. The witnesses are
    re-multiplied and checked before returning.
    """
    a = [list(map(int, r)) for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else (ncols or 0)
    L = identity(rows)
    R = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in R:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row dst += f * row src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        L[dst] = [x + f * y for x, y in zip(L[dst], L[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] += f * row[src]
        for row in R:
            row[dst] += f * row[src]

    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility of the remaining block by the pivot
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            L[t] = [-x for x in L[t]]
        t += 1

    diag = tuple(a[i][i] for i in range(min(rows, cols)))
    rank = sum(1 for d in diag if d)
    res = SNFResult(diag, rank, tuple(map(tuple, L)), tuple(map(tuple, R)), (rows, cols))
    _verify_snf(m, res)
    return res


_DET_CHECK_LIMIT = 60


def _verify_snf(m, res: SNFResult):
    rows, cols = res.shape
    if rows and cols:
        prod = matmul(matmul(res.left, m), res.right)
        if prod != res.matrix():
            raise InvariantError("SNF witnesses do not reproduce the diagonal")
    d = [x for x in res.diagonal if x]
    if any(x < 0 for x in res.diagonal):
        raise InvariantError("negative SNF diagonal entry")
    if any(d[i + 1] % d[i] for i in range(len(d) - 1)):
        raise InvariantError("SNF divisibility chain broken")
    if res.diagonal[res.rank:] and any(res.diagonal[res.rank:]):
        raise InvariantError("zero diagonal entries must trail")
    # transforms are products of elementary moves; the determinant is
    # re-checked only where it is cheap
    for t in (res.left, res.right):
        if len(t) <= _DET_CHECK_LIMIT and abs(determinant(t)) != 1:
            raise InvariantError("SNF transform is not unimodular")


# ---------------------------------------------------------------------------
# Integer helpers
# ---------------------------------------------------------------------------


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, isqrt(p) + 1))


def gcd_list(xs: Iterable[int]) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g


def bezout(xs: Sequence[int]) -> tuple[int, list[int]]:
    """Return ``(g, coeffs)`` with ``sum(c*x) == g == gcd(xs) >= 0``."""
    g, coeffs = 0, [0] * len(xs)
    for idx, x in enumerate(xs):
        # extended gcd of (g, x)
        old_r, r = g, x
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        if old_r < 0:
            old_r, old_s, old_t = -old_r, -old_s, -old_t
        coeffs = [c * old_s for c in coeffs]
        coeffs[idx] = old_t
        g = old_r
    if sum(c * x for c, x in zip(coeffs, xs)) != g:
        raise InvariantError("Bezout coefficients are wrong")
    return g, coeffs
