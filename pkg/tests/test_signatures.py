from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gtring.signatures import (
    DomainError,
    UsageError,
    complement_in_rectangle,
    dimension_formula,
    dominance_leq,
    interlaces,
    interlacing_above,
    interlacing_below,
    maya,
    reflect,
    signature,
    signatures_in_window,
    vandermonde,
    weyl_dimension,
)

signatures_st = st.lists(st.integers(-4, 4), min_size=0, max_size=4).map(lambda xs: tuple(sorted(xs, reverse=True)))


@pytest.mark.parametrize(
    "mu, lam, expected",
    [((1, 0), (2, 1, 0), True), ((3,), (2, 1), False), ((), (-5,), True)],
)
def test_interlaces_examples(mu, lam, expected):
    assert interlaces(mu, lam) is expected


def test_interlaces_length_mismatch():
    with pytest.raises(UsageError):
        interlaces((1,), (1,))


@pytest.mark.parametrize(
    "mu, lam, expected",
    [((1, 1), (2, 0), True), ((1, 0), (2, 0), False), ((3, -1, -2), (3, -1, -2), True)],
)
def test_dominance_examples(mu, lam, expected):
    assert dominance_leq(mu, lam) is expected


def test_dominance_length_mismatch():
    with pytest.raises(UsageError):
        dominance_leq((1,), (1, 0))


@pytest.mark.parametrize("lam, dim", [((0, 0, 0), 1), ((1, 0), 2), ((2, 1, 0), 8), ((), 1), ((7,), 1)])
def test_weyl_dimension_examples(lam, dim):
    assert weyl_dimension(lam) == dim


def test_dimension_formula_vanishes_on_adjacent_invalid_vectors():
    assert dimension_formula((1, 2)) == 0
    assert dimension_formula((0, 1, 0)) == 0


def test_complement_examples():
    kappa, L, K = complement_in_rectangle((2, 0), 2, 2)
    assert kappa == (1, 1)
    assert set(L) == {3, 0} and set(K) == {2, 1}
    assert complement_in_rectangle((0, 0, 0), 2, 3)[0] == (3, 3)
    assert complement_in_rectangle((2, 2, 2), 2, 3)[0] == (0, 0)


def test_complement_outside_rectangle():
    with pytest.raises(DomainError):
        complement_in_rectangle((3, 0), 2, 2)


@pytest.mark.parametrize("xs, value", [((3, 0), 3), ((2, 1, 0), 2), ((5,), 1), ((1, 1), 0)])
def test_vandermonde_examples(xs, value):
    assert vandermonde(xs) == value


def test_signature_validation():
    assert signature([2, 2, -1]) == (2, 2, -1)
    with pytest.raises(DomainError):
        signature([0, 1])


@pytest.mark.parametrize("m", range(1, 5))
@pytest.mark.parametrize("N", range(1, 5))
def test_maya_sets_partition_the_interval(m, N):
    for lam in signatures_in_window(N, 0, m):
        _, L, K = complement_in_rectangle(lam, m, N)
        assert sorted(L + K) == list(range(N + m))
        assert L == maya(lam)


@pytest.mark.parametrize("m", range(1, 5))
@pytest.mark.parametrize("N", range(1, 5))
def test_vandermonde_factorial_identity(m, N):
    M = N + m - 1
    staircase = 1
    for k in range(M + 1):
        staircase *= factorial(k)
    for lam in signatures_in_window(N, 0, m):
        _, L, K = complement_in_rectangle(lam, m, N)
        lhs = vandermonde(L)
        for k in K:
            lhs *= factorial(k) * factorial(M - k)
        assert lhs == staircase * vandermonde(K)


def test_interlacing_enumerations_agree():
    for lam in signatures_in_window(3, -2, 2):
        below = list(interlacing_below(lam))
        assert all(interlaces(mu, lam) for mu in below)
        for mu in below:
            assert lam in list(interlacing_above(mu, -2, 2))


def test_windows_enumerate_lexicographically():
    sigs = signatures_in_window(2, -1, 1)
    assert sigs == sorted(sigs)
    assert len(sigs) == 6
    assert signatures_in_window(0, 0, 3) == [()]


@given(signatures_st)
def test_dimension_reflection_symmetry(lam):
    assert weyl_dimension(lam) == weyl_dimension(reflect(lam))


@given(signatures_st, st.integers(-5, 5))
def test_dimension_shift_invariance(lam, c):
    assert weyl_dimension(lam) == weyl_dimension(tuple(x + c for x in lam))


@given(signatures_st)
def test_dimension_is_positive_integer(lam):
    d = weyl_dimension(lam)
    assert isinstance(d, int) and d >= 1
    assert dimension_formula(lam) == Fraction(d)


@given(signatures_st.filter(lambda s: len(s) >= 1))
def test_branching_counts_dimensions(lam):
    assert sum(weyl_dimension(mu) for mu in interlacing_below(lam)) == weyl_dimension(lam)
