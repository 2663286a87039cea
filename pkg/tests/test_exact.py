from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrkit.exact import (
    IntPolynomial,
    InvariantError,
    bezout,
    determinant,
    format_fraction,
    hyperplane_poincare,
    matmul,
    parse_fraction,
    poly_eval_substitute,
    rank_mod_p,
    rational_rank,
    series_divide,
    smith_normal_form,
    toric_poincare,
)

small_int = st.integers(-20, 20)
matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(small_int, min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def test_snf_examples():
    assert smith_normal_form([[2, 4], [6, 8]]).diagonal == (2, 4)
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).diagonal == (1, 1, 1)
    res = smith_normal_form([[1, 0], [0, 0]])
    assert res.diagonal[:1] == (1,) and res.rank == 1


def test_rank_examples():
    assert rational_rank([[0, 0], [0, 0]]) == 0
    assert rational_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rational_rank([[1, 2], [2, 4]]) == 1
    assert rank_mod_p([[1, 1], [1, -1]], 2) == 1
    assert rank_mod_p([[1, 1], [1, -1]], 3) == 2


def _minors_gcd(m, k):
    from itertools import combinations
    from math import gcd

    g = 0
    rows, cols = len(m), len(m[0])
    for rs in combinations(range(rows), k):
        for cs in combinations(range(cols), k):
            g = gcd(g, determinant([[m[i][j] for j in cs] for i in rs]))
    return g


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_witnesses_and_minors(m):
    res = smith_normal_form(m)
    assert matmul(matmul(res.left, m), res.right) == res.matrix()
    assert abs(determinant(res.left)) == 1 and abs(determinant(res.right)) == 1
    diag = [d for d in res.diagonal if d]
    for a, b in zip(diag, diag[1:]):
        assert b % a == 0
    assert res.rank == rational_rank(m)
    prod = 1
    for k in range(1, min(2, len(diag)) + 1):
        prod *= diag[k - 1]
        assert prod == _minors_gcd(m, k)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=1, max_size=5))
def test_bezout(xs):
    g, cs = bezout(xs)
    assert g >= 0 and sum(a * b for a, b in zip(cs, xs)) == g
    assert all(x % g == 0 for x in xs) if g else all(x == 0 for x in xs)


def test_poincare_substitutions():
    braid = IntPolynomial((0, 2, -3, 1))
    assert poly_eval_substitute(braid, "hyperplane", 3).coeffs == (1, 3, 2)
    assert hyperplane_poincare(IntPolynomial.monomial(4), 4).coeffs == (1,)
    assert toric_poincare(IntPolynomial((3, -3, 1)), 2).coeffs == (1, 5, 7)
    assert toric_poincare(IntPolynomial((2, -3, 1)), 2).coeffs == (1, 5, 6)
    # the empty toric arrangement leaves the whole torus, whose Poincare polynomial is (1+t)^d
    assert poly_eval_substitute(IntPolynomial.monomial(3), "toric", 3).coeffs == (1, 3, 3, 1)


def test_sign_convention_violation_raises():
    # q^2 + 3q + 3 has the wrong alternation; both substitutions must refuse it
    with pytest.raises(InvariantError):
        hyperplane_poincare(IntPolynomial((3, 3, 1)), 2)
    with pytest.raises(InvariantError):
        toric_poincare(IntPolynomial((3, 3, 1)), 2)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=1, max_size=5))
def test_hyperplane_poincare_constant_term(ns):
    # chi of a product of generic pencils: prod (q - n_i) has normal sign pattern
    chi = IntPolynomial((1,))
    for n in ns:
        chi = chi * IntPolynomial((-n, 1))
    p = hyperplane_poincare(chi, len(ns))
    assert p[0] == 1 and p.degree <= len(ns)


def test_polynomial_arithmetic_and_json():
    p = IntPolynomial((1, 2, 1), "t")
    q, r = p.divmod(IntPolynomial((1, 1), "t"))
    assert q.coeffs == (1, 1) and r.is_zero()
    with pytest.raises(InvariantError):
        IntPolynomial((1, 0, 1)).exact_div(IntPolynomial((1, 1)))
    assert IntPolynomial.from_json(p.to_json()) == p
    assert p.to_json() == {"var": "t", "coeffs": ["1", "2", "1"]}
    assert series_divide(IntPolynomial((1, 8, 24, 32, 16), "t"), IntPolynomial((1, 1), "t"), 4).coeffs == (
        1, 7, 17, 15)
    big = IntPolynomial((10**40, -1))
    assert IntPolynomial.from_json(big.to_json()) == big


def test_fractions_round_trip():
    for s in ["3/4", "-2", "0", "-14/7"]:
        x = parse_fraction(s)
        assert parse_fraction(format_fraction(x)) == x
    assert format_fraction(Fraction(-1, 2)) == "-1/2"
