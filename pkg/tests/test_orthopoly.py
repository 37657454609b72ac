from fractions import Fraction
from math import comb

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from gtring.boundary import link_infinity, point_from_t
from gtring.orthopoly import (
    HahnJacobiParams,
    apply_hahn_link,
    apply_multivariate_operator,
    apply_one_var_operator,
    hahn_link_polynomial,
    hahn_link_row,
    hahn_poly,
    hahn_to_jacobi_constant,
    jacobi_operator_explicit,
    jacobi_poly,
    lift_to_phi,
    multivariate_eigenvalue,
    multivariate_poly,
    phi_element_to_t,
    phi_t_change_of_variables,
    quotient_operator_A,
    triple_commutator,
    verify_jacobi_quotient_A,
    verify_jacobi_quotient_D,
    verify_link_intertwining,
)
from gtring.polynomials import Poly1, SymPolyM
from gtring.signatures import DomainError, UsageError, complement_in_rectangle, signatures_in_window

F = Fraction
PAIRS = [(F(0), F(0)), (F(1, 2), F(1, 3)), (F(-1, 2), F(2)), (F(3, 4), F(-2, 3)), (F(5), F(1, 7))]


def rat(x):
    return sp.Rational(x.numerator, x.denominator)


def sympy_jacobi(n, a, b, t):
    # classical P_n^{(b, a)}(1 - 2t), rescaled to equal 1 at t = 0
    return sp.expand(sp.jacobi(n, rat(b), rat(a), 1 - 2 * t) / sp.jacobi(n, rat(b), rat(a), 1))


def sympy_hahn_value(n, a, b, M, y):
    a, b = rat(a), rat(b)
    return sum(
        sp.rf(-n, p) * sp.rf(n + a + b + 1, p) * sp.rf(-y, p) / (sp.rf(b + 1, p) * sp.rf(-M, p) * sp.factorial(p))
        for p in range(n + 1)
    )


def as_sympy(p: Poly1, t):
    return sum(rat(F(c)) * t**k for k, c in enumerate(p.coeffs))


# one variable


def test_first_polynomials():
    a, b, M = F(1, 2), F(1, 3), 5
    params = HahnJacobiParams(a, b, M)
    assert hahn_poly(0, params) == Poly1([1])
    assert hahn_poly(1, params) == Poly1([1, -(a + b + 2) / ((b + 1) * M)])
    assert jacobi_poly(0, a, b) == Poly1([1])
    assert jacobi_poly(1, a, b) == Poly1([1, -(a + b + 2) / (b + 1)])
    assert jacobi_poly(2, 0, 0).format() == "1 - 6t + 6t^2"


def test_hahn_degree_bound():
    with pytest.raises(DomainError):
        hahn_poly(4, HahnJacobiParams(0, 0, 3))
    with pytest.raises(UsageError):
        hahn_poly(1, HahnJacobiParams(0, 0))
    with pytest.raises(DomainError):
        HahnJacobiParams(-1, 0)


@pytest.mark.parametrize("a, b", PAIRS)
def test_jacobi_matches_classical(a, b):
    t = sp.Symbol("t")
    for n in range(6):
        assert sp.expand(as_sympy(jacobi_poly(n, a, b), t) - sympy_jacobi(n, a, b, t)) == 0


@pytest.mark.parametrize("a, b", PAIRS[:3])
def test_hahn_matches_series(a, b):
    M = 5
    params = HahnJacobiParams(a, b, M)
    for n in range(M + 1):
        for y in range(M + 1):
            assert rat(hahn_poly(n, params)(y)) == sympy_hahn_value(n, a, b, M, y)


@pytest.mark.parametrize("a, b", PAIRS)
def test_binomial_transform(a, b):
    for M in range(1, 7):
        params = HahnJacobiParams(a, b, M)
        for n in range(M + 1):
            h = hahn_poly(n, params)
            transform = sum((Poly1([0, 1]) ** k * Poly1([1, -1]) ** (M - k) * (comb(M, k) * h(k)) for k in range(M + 1)), Poly1())
            assert transform == jacobi_poly(n, a, b)


@pytest.mark.parametrize("a, b", PAIRS)
def test_eigenrelations(a, b):
    params = HahnJacobiParams(a, b, 8)
    for n in range(9):
        c = -n * (n + a + b + 1)
        assert apply_one_var_operator("jacobi", params, jacobi_poly(n, a, b)) == jacobi_poly(n, a, b) * c
        assert apply_one_var_operator("hahn", params, hahn_poly(n, params)) == hahn_poly(n, params) * c


def test_operators_on_monomials():
    a, b = F(1, 2), F(2, 3)
    params = HahnJacobiParams(a, b, 7)
    for n in range(5):
        mono = Poly1([0] * n + [1])
        for which in ("jacobi", "hahn"):
            image = apply_one_var_operator(which, params, mono)
            assert image.degree <= n and image.coeffs[n:] == ((-n * (n + a + b + 1),) if n else ())
    with pytest.raises(UsageError):
        apply_one_var_operator("laguerre", params, mono)


# m variables


def test_empty_label_is_leading_coefficient_product():
    a, b = F(1, 2), F(1, 3)
    for m in (2, 3):
        expected = F(1)
        for n in range(m):
            expected *= jacobi_poly(n, a, b).leading()
        assert multivariate_poly("jacobi", HahnJacobiParams(a, b), (), m) == SymPolyM.const(m, expected)


def test_single_variable_reduces():
    params = HahnJacobiParams(F(1, 2), F(1, 3), 6)
    for n in range(4):
        assert multivariate_poly("hahn", params, (n,), 1) == SymPolyM(1, {(k,): c for k, c in enumerate(hahn_poly(n, params).coeffs)})


def test_multivariate_label_checks():
    params = HahnJacobiParams(0, 0, 3)
    with pytest.raises(DomainError):
        multivariate_poly("hahn", params, (3, 0), 2)
    with pytest.raises(DomainError):
        multivariate_poly("jacobi", params, (0, 1), 2)


@pytest.mark.parametrize("a, b", PAIRS[:3])
@pytest.mark.parametrize("m", [2, 3])
def test_multivariate_eigenrelations(a, b, m):
    params = HahnJacobiParams(a, b, m + 2)
    for nu in signatures_in_window(m, 0, 3):
        lam = multivariate_eigenvalue(params, nu, m)
        for which in ("jacobi", "hahn"):
            if which == "hahn" and nu[0] + m - 1 > params.M:
                continue
            p = multivariate_poly(which, params, nu, m)
            assert apply_multivariate_operator(which, params, m, p) == p * lam


def test_operator_kills_constants():
    params = HahnJacobiParams(F(1, 2), F(1, 3), 4)
    for m in (1, 2, 3):
        for which in ("jacobi", "hahn"):
            assert not apply_multivariate_operator(which, params, m, SymPolyM.const(m, 5))


def test_explicit_form_matches_symbolic():
    a, b = F(1, 2), F(-1, 3)
    t1, t2 = sp.symbols("t1 t2")
    f_sym = t1**2 * t2 + t1 * t2**2 + 3 * t1 * t2 - t1 - t2
    f = SymPolyM(2, {(2, 1): 1, (1, 1): 3, (1, 0): -1})
    A, B = rat(a), rat(b)
    ts = (t1, t2)
    expr = 0
    for i, ti in enumerate(ts):
        expr += ti * (1 - ti) * sp.diff(f_sym, ti, 2) + (B + 1 - (A + B + 2) * ti) * sp.diff(f_sym, ti)
        for j, tj in enumerate(ts):
            if i != j:
                expr += 2 * ti * (1 - ti) / (ti - tj) * sp.diff(f_sym, ti)
    expr = sp.expand(sp.cancel(expr))
    ours = apply_multivariate_operator("jacobi", HahnJacobiParams(a, b), 2, f)
    diff = sp.expand(sum(rat(F(c)) * t1 ** k[0] * t2 ** k[1] for k, c in ours.to_mpoly().terms.items()) - expr)
    assert diff == 0


sym3 = st.dictionaries(
    st.lists(st.integers(0, 2), min_size=3, max_size=3).map(lambda xs: tuple(sorted(xs, reverse=True))),
    st.builds(Fraction, st.integers(-5, 5), st.integers(1, 3)),
    max_size=4,
).map(lambda d: SymPolyM(3, d))


@settings(max_examples=25)
@given(sym3)
def test_explicit_form_property(f):
    params = HahnJacobiParams(F(1, 2), F(2, 5))
    assert jacobi_operator_explicit(params, f) == apply_multivariate_operator("jacobi", params, 3, f)


# phi <-> t


def test_phi_of_t_small_cases():
    images = phi_t_change_of_variables("phi_of_t", 1, 1, 0)
    assert images[0] == SymPolyM(1, {(1,): 1}) and images[1] == SymPolyM(1, {(0,): 1, (1,): -1})
    images = phi_t_change_of_variables("phi_of_t", 2, 2, 0)
    assert images[0] == SymPolyM(2, {(1, 1): 1})
    assert images[1] == SymPolyM(2, {(1, 0): 1, (1, 1): -2})
    assert images[2] == SymPolyM(2, {(0, 0): 1, (1, 0): -1, (1, 1): 1})


@pytest.mark.parametrize("m, k, l", [(1, 1, 0), (2, 2, 0), (2, 1, 1), (3, 1, 2), (3, 3, 0)])
def test_phi_of_t_compare(m, k, l):
    assert phi_t_change_of_variables("compare", m, k, l) is True
    with pytest.raises(UsageError):
        phi_t_change_of_variables("t_of_phi", m, k, l)
    with pytest.raises(DomainError):
        phi_t_change_of_variables("compare", m + 1, k, l)


@pytest.mark.parametrize("k, l", [(2, 0), (1, 1), (0, 2)])
def test_lift_is_a_section(k, l):
    for f in (SymPolyM(2, {(1, 0): 1}), SymPolyM(2, {(2, 1): F(1, 2), (0, 0): 3})):
        assert phi_element_to_t(lift_to_phi(f, k, l), k, l) == f


def test_quotient_A_examples():
    assert not quotient_operator_A(2, F(1, 2), F(1, 3), SymPolyM.const(2, 1))
    for n in range(5):
        assert verify_jacobi_quotient_A(1, F(1, 2), F(1, 3), SymPolyM(1, {(n,): 1})).ok
    assert verify_jacobi_quotient_A(2, F(3, 4), F(-2, 3), SymPolyM.elementary(2, 1)).ok


@pytest.mark.parametrize("k, l", [(1, 0), (0, 1), (1, 1), (2, 0), (0, 2)])
def test_quotient_D(k, l):
    for f in (SymPolyM.elementary(k + l, 1), SymPolyM(k + l, {(2,) + (0,) * (k + l - 1): 1})):
        assert verify_jacobi_quotient_D(k, l, k + F(1, 2), l + F(1, 3), f).ok


def test_operator_has_order_two():
    m, a, b = 2, F(1, 2), F(1, 3)
    xs = [SymPolyM.elementary(2, 1), SymPolyM.elementary(2, 2), SymPolyM(2, {(1, 0): 2, (0, 0): 1})]
    f = SymPolyM(2, {(1, 1): 1, (0, 0): 1})
    op = lambda g: quotient_operator_A(m, a, b, g)
    assert not triple_commutator(op, *xs, f)
    first_order = lambda g: g * SymPolyM.elementary(2, 1)
    assert not triple_commutator(first_order, *xs, f)


# link to the simplex


def test_binomial_row():
    t = F(2, 7)
    for N in range(1, 5):
        for k in range(N + 1):
            lam = (1,) * k + (0,) * (N - k)
            K = complement_in_rectangle(lam, 1, N)[2]
            assert hahn_link_row([t], N, lam) == comb(N, K[0]) * t ** K[0] * (1 - t) ** (N - K[0])


@pytest.mark.parametrize("t", [[F(2, 3), F(1, 5)], [F(1, 2), F(1, 2)], [F(1), F(0)], [F(3, 4), F(2, 3), F(1, 9)]])
def test_rows_are_stochastic(t):
    m = len(t)
    for N in range(1, 4):
        assert sum(hahn_link_row(t, N, lam) for lam in signatures_in_window(N, 0, m)) == 1


def test_row_validation():
    with pytest.raises(DomainError):
        hahn_link_row([F(1, 3), F(1, 2)], 2, (1, 0))


@pytest.mark.parametrize("t", [[F(2, 3)], [F(2, 3), F(1, 5)], [F(5, 6), F(5, 6)]])
def test_two_routes_agree(t):
    omega = point_from_t(t)
    for N in range(1, 5):
        for lam in signatures_in_window(N, 0, len(t)):
            assert hahn_link_row(t, N, lam) == link_infinity(omega, N, lam)
            assert hahn_link_polynomial(len(t), N, lam)(t) == hahn_link_row(t, N, lam)


@pytest.mark.parametrize(
    "m, M, constant", [(1, 3, F(1)), (1, 6, F(1)), (2, 2, F(1, 2)), (2, 4, F(1, 4)), (3, 3, F(1, 18)), (3, 4, F(1, 48))]
)
def test_hahn_to_jacobi_constant_frozen(m, M, constant):
    params = HahnJacobiParams(F(1, 2), F(1, 3), M)
    points = [[F(i + 1, 2 * m + 3 + s) * (m - i) for i in range(m)] for s in range(4)]
    for nu in signatures_in_window(m, 0, M - m + 1):
        assert hahn_to_jacobi_constant(params, nu, m, points) == {constant}


@pytest.mark.parametrize("m, N", [(1, 3), (2, 2), (2, 3)])
def test_link_intertwining(m, N):
    params = HahnJacobiParams(F(3, 4), F(-2, 3), N + m - 1)
    for nu in signatures_in_window(m, 0, N):
        h = multivariate_poly("hahn", params, nu, m)
        assert verify_link_intertwining(params, m, h).ok
    assert apply_hahn_link(m, N, lambda K: 1) == SymPolyM.const(m, 1)
