from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from gtring.polynomials import MPoly, Poly1, SymPolyM, complete_homogeneous, vandermonde_poly
from gtring.signatures import DomainError

F = Fraction
coeff = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
poly1 = st.lists(coeff, max_size=5).map(Poly1)
mpoly2 = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), coeff, max_size=5).map(lambda d: MPoly(2, d))


def to_sympy(p: Poly1, x):
    return sum(sp.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(p.coeffs))


def test_trailing_zeros_trimmed():
    assert Poly1([1, 2, 0, 0]).coeffs == (1, 2)
    assert Poly1([0]).degree == -1


@pytest.mark.parametrize(
    "coeffs, var, text",
    [([1, -2], "t", "1 - 2t"), ([1, -6, 6], "t", "1 - 6t + 6t^2"), ([1, F(-2, 3)], "y", "1 - (2/3)y"), ([], "t", "0")],
)
def test_format(coeffs, var, text):
    assert Poly1(coeffs).format(var) == text


def test_divide_difference_rejects_remainder():
    x, y = MPoly.var(2, 0), MPoly.var(2, 1)
    assert (x * x - y * y).divide_difference(0, 1) == x + y
    with pytest.raises(DomainError):
        (x * x + y).divide_difference(0, 1)


def test_symmetric_conversion():
    x, y = MPoly.var(2, 0), MPoly.var(2, 1)
    assert SymPolyM.from_mpoly(x * y + x + y) == SymPolyM(2, {(1, 1): 1, (1, 0): 1})
    with pytest.raises(DomainError):
        SymPolyM.from_mpoly(x)
    with pytest.raises(DomainError):
        SymPolyM(2, {(0, 1): 1})


def test_elementary_and_evaluation():
    e1, e2 = SymPolyM.elementary(3, 1), SymPolyM.elementary(3, 2)
    assert e1([1, 2, 3]) == 6 and e2([1, 2, 3]) == 11
    assert SymPolyM.elementary(2, 3) == SymPolyM(2)


@pytest.mark.parametrize("degree, xs, value", [(2, [1, 2], 7), (0, [], 1), (3, [], 0), (-1, [5], 0), (3, [2], 8)])
def test_complete_homogeneous(degree, xs, value):
    assert complete_homogeneous(degree, xs) == value


@given(poly1, poly1)
def test_poly1_matches_sympy(p, q):
    x = sp.Symbol("x")
    assert sp.expand(to_sympy(p * q, x) - to_sympy(p, x) * to_sympy(q, x)) == 0
    assert sp.expand(to_sympy(p - q, x) - to_sympy(p, x) + to_sympy(q, x)) == 0
    assert sp.expand(to_sympy(p.derivative(), x) - sp.diff(to_sympy(p, x), x)) == 0


@given(poly1, coeff, coeff)
def test_shift(p, c, x):
    assert p.shift(c)(x) == p(x + c)


@given(mpoly2, mpoly2)
def test_division_inverts_multiplication(p, q):
    x, y = MPoly.var(2, 0), MPoly.var(2, 1)
    assert (p * (x - y)).divide_difference(0, 1) == p
    assert (p * vandermonde_poly(2)).divide_vandermonde() == p
    assert (p + q)([F(1, 3), 2]) == p([F(1, 3), 2]) + q([F(1, 3), 2])


@given(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), coeff, max_size=4))
def test_symmetrisation_round_trip(d):
    sym = SymPolyM(3, {tuple(sorted(k, reverse=True)): v for k, v in d.items()})
    assert sym.to_mpoly().is_symmetric()
    assert SymPolyM.from_mpoly(sym.to_mpoly()) == sym
    prod = sym * SymPolyM.elementary(3, 1)
    assert prod([1, 2, 5]) == sym([1, 2, 5]) * 8
