from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gtring.ring import (
    SIGMA,
    RingElement,
    Window,
    kostka,
    lr_coefficient,
    mirror,
    multiply,
    norm,
    phi_monomial,
    phi_times_sigma,
    phi_to_sigma_window,
    sigma_element,
    sigma_element_to_phi,
    sigma_to_phi,
    shift,
    truncate,
)
from gtring.signatures import DomainError, UsageError, signatures_in_window, weyl_dimension

import oracles


def sigma_sum(*sigs):
    return RingElement(SIGMA, {s: Fraction(1) for s in sigs})


# frozen values, derived with the sympy oracles in tests/oracles.py


def test_sigma_to_phi_three_by_three():
    expected = {
        (1, 0, -1): 1,
        (2, -1, -1): -1,
        (1, 1, -2): -1,
        (2, 1, -3): 1,
        (3, -1, -2): 1,
        (3, 0, -3): -1,
    }
    assert sigma_to_phi((1, 0, -1)).terms == {k: Fraction(v) for k, v in expected.items()}


def test_sigma_of_empty_signature_is_one():
    assert sigma_to_phi(()).terms == {(): Fraction(1)}


def test_phi_square_in_window_zero_two():
    assert phi_to_sigma_window(phi_monomial(1, 1), Window(0, 2)) == sigma_sum((1, 1), (2, 0))


def test_phi_opposite_pair_in_window():
    assert phi_to_sigma_window(phi_monomial(1, -1), Window(-2, 2)) == sigma_sum((1, -1), (2, -2))


@pytest.mark.parametrize(
    "lam, mu, nu, c",
    [((1, 1), (1,), (1,), 1), ((2, 0), (1,), (1,), 1), ((3, 2, 1, 0), (2, 1), (2, 1), 2), ((2, 0), (1,), (0,), 0)],
)
def test_lr_split_examples(lam, mu, nu, c):
    assert lr_coefficient(lam, mu, nu) == c


@pytest.mark.parametrize(
    "lam, mu, nu, c",
    [((1, 1), (1,), (1,), 1), ((2, 0), (1,), (1,), 1), ((3, 2, 1), (2, 1), (2, 1), 2), ((4, 2), (2, 1), (2, 1), 1)],
)
def test_product_coefficients_match_frozen(lam, mu, nu, c):
    w = Window(0, 4)
    product = multiply(sigma_element(mu), sigma_element(nu), w)
    padded = tuple(lam) + (0,) * (len(mu) + len(nu) - len(lam))
    assert product.coefficient(padded) == c


@pytest.mark.parametrize("shape, weight, count", [((2, 1, 0), (1, 1, 1), 2), ((3, 1, 0), (2, 1, 1), 2), ((2, 2), (2, 2), 1)])
def test_kostka_frozen(shape, weight, count):
    assert kostka(shape, weight) == count


# cross-checks against the oracles on small ranges


@pytest.mark.parametrize("lam", [(2, 0), (1, -1), (2, 1, 0), (0, 0, -2), (1, 1, -1)])
def test_sigma_expansion_matches_symbolic_determinant(lam):
    assert sigma_to_phi(lam).terms == oracles.poly_to_monomials(oracles.sigma_determinant(lam))


@pytest.mark.parametrize("mu, lo, hi", [((1, 0), -1, 2), ((1, -1), -2, 2), ((0, 0, 0), -1, 1), ((2, 0, -1), -1, 2)])
def test_phi_to_sigma_matches_linear_solve(mu, lo, hi):
    expected = oracles.phi_to_sigma_by_solve(mu, lo, hi)
    assert phi_to_sigma_window(phi_monomial(*mu), Window(lo, hi)).terms == expected


@pytest.mark.parametrize("shape", [(2, 1, 0), (3, 1, 0), (2, 2, 0), (3, 0, 0)])
def test_kostka_matches_tableau_count(shape):
    for weight in signatures_in_window(3, 0, 3):
        for perm in {weight, weight[::-1]}:
            if sum(perm) == sum(shape):
                assert kostka(shape, perm) == oracles.ssyt_count(shape, perm)


@pytest.mark.parametrize("lam", [(2, 1, 0), (2, 2, 0), (3, 1, 0), (2, 1, 1)])
def test_lr_matches_schur_expansion(lam):
    for mu in signatures_in_window(1, 0, 3):
        for nu in signatures_in_window(2, 0, 3):
            if sum(mu) + sum(nu) == sum(lam):
                expected = oracles.lr_by_expansion(lam, mu, tuple(x for x in nu if x))
                assert lr_coefficient(lam, mu, nu) == expected


# structural checks


def test_window_parsing_and_errors():
    assert Window.parse("-5:5") == Window(-5, 5)
    with pytest.raises(UsageError):
        Window.parse("5")
    with pytest.raises(UsageError):
        Window(2, 1)


def test_mixed_basis_addition_is_rejected():
    with pytest.raises(UsageError):
        phi_monomial(1) + sigma_element((1,))


def test_sigma_product_requires_window():
    with pytest.raises(UsageError):
        multiply(sigma_element((1,)), sigma_element((0,)))


def test_phi_to_sigma_rejects_monomials_outside_window():
    with pytest.raises(DomainError):
        phi_to_sigma_window(phi_monomial(3), Window(0, 2))


def test_norm_requires_real_coefficients():
    from gtring.scalars import GaussianRational

    with pytest.raises(DomainError):
        norm(sigma_element((0,), coefficient=GaussianRational(0, 1)))


def test_norm_takes_max_per_degree():
    e = RingElement(SIGMA, {(1, 0): Fraction(4), (0, 0): Fraction(-3), (2,): Fraction(1, 2)})
    assert norm(e) == Fraction(3) + Fraction(1, 2)


def test_phi_times_sigma_is_branching():
    assert phi_times_sigma((1,), Window(0, 2)) == sigma_sum((1, 0), (1, 1), (2, 0), (2, 1))


@pytest.mark.parametrize("w", [Window(-2, 2), Window(-1, 3)])
def test_round_trips_on_window(w):
    for N in range(3):
        for lam in signatures_in_window(N, w.lo, w.hi):
            back = phi_to_sigma_window(truncate(sigma_to_phi(lam), w), w)
            assert back == sigma_element(lam)


@pytest.mark.parametrize("M, N", [(1, 1), (1, 2), (2, 2), (1, 3)])
def test_dimension_counting(M, N):
    for lam in signatures_in_window(M + N, -2, 2):
        total = sum(
            lr_coefficient(lam, mu, nu) * weyl_dimension(mu) * weyl_dimension(nu)
            for mu in signatures_in_window(M, -2, 2)
            for nu in signatures_in_window(N, -2, 2)
        )
        assert total == weyl_dimension(lam)


# properties

small_sigs = st.integers(0, 3).flatmap(
    lambda n: st.lists(st.integers(-2, 2), min_size=n, max_size=n).map(lambda xs: tuple(sorted(xs, reverse=True)))
)
coeffs = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))
sigma_elements = st.dictionaries(small_sigs, coeffs, max_size=4).map(lambda d: RingElement(SIGMA, d))
W = Window(-2, 2)


@given(sigma_elements)
def test_round_trip_property(e):
    assert phi_to_sigma_window(truncate(sigma_element_to_phi(e), W), W) == e


@given(sigma_elements, sigma_elements)
def test_truncation_is_a_homomorphism(a, b):
    lhs = truncate(multiply(sigma_element_to_phi(a), sigma_element_to_phi(b)), W)
    rhs = truncate(sigma_element_to_phi(multiply(a, b, W)), W)
    assert lhs == rhs


@given(sigma_elements, sigma_elements)
def test_norm_submultiplicative(a, b):
    assert norm(multiply(a, b, W)) <= norm(a) * norm(b)


@given(sigma_elements)
def test_mirror_and_shift(e):
    assert mirror(mirror(e)) == e
    assert shift(shift(e, 2), -2) == e
    assert sigma_element_to_phi(mirror(e)) == mirror(sigma_element_to_phi(e))
    assert sigma_element_to_phi(shift(e, 1)) == shift(sigma_element_to_phi(e), 1)


def test_sigma_square_in_window():
    assert multiply(sigma_element((1,)), sigma_element((1,)), Window(0, 2)) == sigma_sum((1, 1), (2, 0))
