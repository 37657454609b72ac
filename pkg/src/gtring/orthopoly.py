"""Hahn and Jacobi polynomials and their link to the window quotients.

Conventions: both families are normalised by their value 1 at the origin.
The m-variate polynomial with label nu is det[P_{nu_j + m - j}(x_i)] divided by
the Vandermonde prod_{i<j}(x_i - x_j), and the m-variate operator is the
Vandermonde conjugate of the sum of one-variable operators, shifted by the
constant that makes it kill constants.

Quotient coordinates: in the quotient of the window [-l, k] by the relation
sum phi_n = 1, the generators become symmetric polynomials in t_1..t_{k+l}
through

    sum_n phi_n u^n = prod_{i<=k} (t_i + (1 - t_i) u) * prod_{i>k} (1 - t_i + t_i / u).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, factorial
from typing import Sequence

from .linalg import det, solve_consistent
from .operators import ParameterQuadruple, apply_A, apply_D_unchecked
from .polynomials import MPoly, Poly1, SymPolyM, complete_homogeneous, vandermonde_poly
from .report import Check
from .ring import PHI, RingElement, Window, phi_to_sigma_window, sigma_element_to_phi
from .signatures import (
    DomainError,
    Signature,
    UsageError,
    complement_in_rectangle,
    signatures_in_window,
    vandermonde,
)

__all__ = [
    "Poly1",
    "SymPolyM",
    "HahnJacobiParams",
    "hahn_poly",
    "jacobi_poly",
    "apply_one_var_operator",
    "multivariate_poly",
    "multivariate_eigenvalue",
    "apply_multivariate_operator",
    "jacobi_operator_explicit",
    "phi_t_change_of_variables",
    "phi_element_to_t",
    "lift_to_phi",
    "hahn_link_row",
    "hahn_link_polynomial",
    "hahn_rates",
    "quotient_operator_A",
    "quotient_operator_D",
    "verify_jacobi_quotient_A",
    "verify_jacobi_quotient_D",
    "triple_commutator",
    "configuration_operator",
    "apply_hahn_link",
    "hahn_to_jacobi_constant",
    "verify_link_intertwining",
]


@dataclass(frozen=True)
class HahnJacobiParams:
    a: Fraction
    b: Fraction
    M: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.a <= -1 or self.b <= -1:
            raise DomainError("need a > -1 and b > -1")
        if self.M is not None and self.M < 1:
            raise DomainError("M must be a positive integer")

    def require_M(self) -> int:
        if self.M is None:
            raise UsageError("the Hahn family needs M")
        return self.M


def _kind(which: str) -> str:
    if which not in ("hahn", "jacobi"):
        raise UsageError(f"unknown family {which!r}")
    return which


def _eigen(n: int, params: HahnJacobiParams) -> Fraction:
    return -n * (n + params.a + params.b + 1)


# one variable -------------------------------------------------------------------


@lru_cache(maxsize=None)
def hahn_poly(n: int, params: HahnJacobiParams) -> Poly1:
    """Terminating 3F2 series in y, normalised by H_n(0) = 1."""
    M = params.require_M()
    if not 0 <= n <= M:
        raise DomainError(f"Hahn degree {n} outside 0..{M}")
    a, b = params.a, params.b
    y = Poly1.x()
    out = Poly1([1])
    coeff = Fraction(1)
    falling = Poly1([1])  # (-y)_p
    for p in range(1, n + 1):
        coeff = coeff * (-n + p - 1) * (n + a + b + p) / ((b + p) * (-M + p - 1) * p)
        falling = falling * (-y + (p - 1))
        out = out + falling * coeff
    return out


@lru_cache(maxsize=None)
def jacobi_poly(n: int, a, b) -> Poly1:
    """Gauss 2F1 series in t, normalised by J_n(0) = 1."""
    if n < 0:
        raise DomainError("degree must be nonnegative")
    a, b = Fraction(a), Fraction(b)
    coeffs = [Fraction(1)]
    c = Fraction(1)
    for p in range(1, n + 1):
        c = c * (-n + p - 1) * (n + a + b + p) / ((b + p) * p)
        coeffs.append(c)
    return Poly1(coeffs)


def apply_one_var_operator(which: str, params: HahnJacobiParams, p: Poly1) -> Poly1:
    a, b = params.a, params.b
    x = Poly1.x()
    if _kind(which) == "jacobi":
        return x * (1 - x) * p.derivative().derivative() + (b + 1 - (a + b + 2) * x) * p.derivative()
    M = params.require_M()
    return (x + b + 1) * (M - x) * (p.shift(1) - p) + x * (M + a + 1 - x) * (p.shift(-1) - p)


# m variables --------------------------------------------------------------------


def _family(which: str, params: HahnJacobiParams, n: int) -> Poly1:
    return hahn_poly(n, params) if which == "hahn" else jacobi_poly(n, params.a, params.b)


def multivariate_poly(which: str, params: HahnJacobiParams, nu: Sequence[int], m: int) -> SymPolyM:
    _kind(which)
    nu = tuple(nu) + (0,) * (m - len(nu))
    if len(nu) != m or any(x < 0 for x in nu) or any(nu[i] < nu[i + 1] for i in range(m - 1)):
        raise DomainError(f"{nu} is not a partition with at most {m} parts")
    degrees = [nu[j] + m - 1 - j for j in range(m)]
    if which == "hahn" and degrees and degrees[0] > params.require_M():
        raise DomainError(f"label {nu} needs degree {degrees[0]} > M = {params.M}")
    entries = [[MPoly.from_poly1(m, i, _family(which, params, d)) for d in degrees] for i in range(m)]
    return SymPolyM.from_mpoly(_mpoly_det(entries).divide_vandermonde())


def _mpoly_det(matrix: list[list[MPoly]]) -> MPoly:
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    out = MPoly(matrix[0][0].n)
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        term = matrix[0][j] * _mpoly_det(minor)
        out = out + term if j % 2 == 0 else out - term
    return out


def multivariate_eigenvalue(params: HahnJacobiParams, nu: Sequence[int], m: int) -> Fraction:
    nu = tuple(nu) + (0,) * (m - len(nu))
    return sum((_eigen(nu[i] + m - 1 - i, params) - _eigen(m - 1 - i, params) for i in range(m)), Fraction(0))


def _diagonal_sum(which: str, params: HahnJacobiParams, f: MPoly) -> MPoly:
    a, b = params.a, params.b
    out = MPoly(f.n)
    for i in range(f.n):
        x = MPoly.var(f.n, i)
        if which == "jacobi":
            d1 = f.diff(i)
            out = out + x * (1 - x) * d1.diff(i) + (b + 1 - (a + b + 2) * x) * d1
        else:
            M = params.require_M()
            out = out + (x + b + 1) * (M - x) * (f.shift(i, 1) - f) + x * (M + a + 1 - x) * (f.shift(i, -1) - f)
    return out


def apply_multivariate_operator(which: str, params: HahnJacobiParams, m: int, f: SymPolyM) -> SymPolyM:
    _kind(which)
    if f.m != m:
        raise UsageError("polynomial has the wrong number of variables")
    v = vandermonde_poly(m)
    image = _diagonal_sum(which, params, v * f.to_mpoly())
    try:
        quotient = image.divide_vandermonde()
    except DomainError as exc:  # antisymmetry makes the division exact
        raise AssertionError("Vandermonde division left a remainder") from exc
    constant = -sum((_eigen(n, params) for n in range(m)), Fraction(0))
    return SymPolyM.from_mpoly(quotient) + f * constant


def jacobi_operator_explicit(params: HahnJacobiParams, f: SymPolyM) -> SymPolyM:
    """Sum of one-variable Jacobi operators plus the cross terms 2 t_i(1-t_i)/(t_i - t_j) d_i."""
    m = f.m
    g = f.to_mpoly()
    out = _diagonal_sum("jacobi", params, g)
    for i in range(m):
        xi = MPoly.var(m, i)
        for j in range(i + 1, m):
            xj = MPoly.var(m, j)
            # the pair (i, j) and (j, i) share a denominator that divides exactly
            numer = xi * (1 - xi) * g.diff(i) - xj * (1 - xj) * g.diff(j)
            out = out + 2 * numer.divide_difference(i, j)
    return SymPolyM.from_mpoly(out)


# phi <-> t coordinates -------------------------------------------------------------


@lru_cache(maxsize=None)
def _phi_images(m: int, k: int, l: int) -> tuple[tuple[int, MPoly], ...]:
    if k < 0 or l < 0 or k + l != m:
        raise DomainError("need k, l >= 0 with k + l = m")
    # Laurent polynomial in u with MPoly coefficients
    series: dict[int, MPoly] = {0: MPoly.const(m, 1)}
    for i in range(m):
        t = MPoly.var(m, i)
        factor = {0: t, 1: 1 - t} if i < k else {0: 1 - t, -1: t}
        nxt: dict[int, MPoly] = {}
        for e1, c1 in series.items():
            for e2, c2 in factor.items():
                nxt[e1 + e2] = nxt.get(e1 + e2, MPoly(m)) + c1 * c2
        series = nxt
    return tuple(sorted((n, series.get(n, MPoly(m))) for n in range(-l, k + 1)))


def phi_t_change_of_variables(direction: str, m: int, k: int, l: int):
    """``phi_of_t``: {n: phi_n as a symmetric polynomial in t} for n in [-l, k].

    ``compare``: True when those polynomials agree with the boundary
    coefficients at the matching simplex points (l = 0 only) and sum to one.
    """
    images = {n: SymPolyM.from_mpoly(p) for n, p in _phi_images(m, k, l)}
    if direction == "phi_of_t":
        return images
    if direction != "compare":
        raise UsageError(f"unknown direction {direction!r}")
    from .boundary import phi_hat, point_from_t

    total = sum(images.values(), SymPolyM(m))
    if total != SymPolyM.const(m, 1):
        return False
    if l:
        return True
    samples = [[Fraction(i + 1, m + 2 + s) for i in range(m)] for s in range(3)]
    return all(images[n](t) == phi_hat(point_from_t(t), n) for t in samples for n in images)


def phi_element_to_t(e: RingElement, k: int, l: int) -> SymPolyM:
    """Image of a phi-basis element in the quotient coordinates; monomials outside [-l, k] vanish."""
    if e.basis != PHI:
        raise UsageError("expected a phi-basis element")
    m = k + l
    images = dict(_phi_images(m, k, l))
    out = MPoly(m)
    cache: dict[Signature, MPoly] = {(): MPoly.const(m, 1)}
    for mono, c in e.terms.items():
        if not all(-l <= n <= k for n in mono):
            continue
        if mono not in cache:
            acc = MPoly.const(m, 1)
            for n in mono:
                acc = acc * images[n]
            cache[mono] = acc
        out = out + cache[mono] * c
    return SymPolyM.from_mpoly(out)


def lift_to_phi(f: SymPolyM, k: int, l: int) -> RingElement:
    """Some phi-polynomial of degree <= deg f whose quotient image is f.

    Monomials use the generators phi_{-l+1}, ..., phi_k, which are algebraically
    independent in the quotient.
    """
    m = k + l
    if f.m != m:
        raise UsageError("polynomial has the wrong number of variables")
    degree = max(f.degree, 0)
    generators = list(range(-l + 1, k + 1))
    candidates = [
        tuple(sorted(combo, reverse=True))
        for d in range(degree + 1)
        for combo in combinations_with_replacement(generators, d)
    ]
    images = [phi_element_to_t(RingElement(PHI, {c: 1}), k, l) for c in candidates]
    keys = sorted(set().union(f.terms, *(img.terms for img in images)))
    rows = [[img.terms.get(key, 0) for img in images] for key in keys]
    rhs = [f.terms.get(key, 0) for key in keys]
    solution = solve_consistent(rows, rhs)
    return RingElement.collect(PHI, ((c, x) for c, x in zip(candidates, solution) if x))


def quotient_operator_A(m: int, a, b, f: SymPolyM) -> SymPolyM:
    """The jump-rate operator with z=m, z'=m+a, w=0, w'=b on the quotient of [0, m]."""
    p = ParameterQuadruple.of(m, m + Fraction(a), 0, b)
    w = Window(0, m)
    psi = lift_to_phi(f, m, 0)
    image = apply_A(p, phi_to_sigma_window(psi, w)).filter(w.holds)
    return phi_element_to_t(sigma_element_to_phi(image), m, 0)


def quotient_operator_D(k: int, l: int, zp, wp, f: SymPolyM) -> SymPolyM:
    """The second-order operator with z=k, w=l on the quotient of [-l, k]."""
    p = ParameterQuadruple.of(k, zp, l, wp)
    psi = lift_to_phi(f, k, l)
    return phi_element_to_t(apply_D_unchecked(p, psi, Window(-l, k)), k, l)


def verify_jacobi_quotient_A(m: int, a, b, f: SymPolyM) -> Check:
    """Quotient of the jump-rate operator equals the m-variate Jacobi operator on f."""
    params = HahnJacobiParams(a, b)
    lhs = quotient_operator_A(m, a, b, f)
    rhs = apply_multivariate_operator("jacobi", params, m, f)
    ok = lhs == rhs
    return Check(
        identity="A on the quotient = m-variate Jacobi operator",
        instance={"m": m, "a": str(params.a), "b": str(params.b), "f": f.to_json()},
        ok=ok,
        first_discrepancy=None if ok else {"lhs": (lhs - rhs).to_json()},
    )


def verify_jacobi_quotient_D(k: int, l: int, zp, wp, f: SymPolyM) -> Check:
    """Quotient of the second-order operator equals the (k+l)-variate Jacobi operator."""
    params = HahnJacobiParams(Fraction(zp) - k, Fraction(wp) - l)
    lhs = quotient_operator_D(k, l, zp, wp, f)
    rhs = apply_multivariate_operator("jacobi", params, k + l, f)
    ok = lhs == rhs
    return Check(
        identity="D on the quotient = Jacobi operator",
        instance={"k": k, "l": l, "a": str(params.a), "b": str(params.b), "f": f.to_json()},
        ok=ok,
        first_discrepancy=None if ok else {"difference": (lhs - rhs).to_json()},
    )


def triple_commutator(operator, x1: SymPolyM, x2: SymPolyM, x3: SymPolyM, f: SymPolyM) -> SymPolyM:
    """[M_x1, [M_x2, [M_x3, T]]] f for a linear map T on symmetric polynomials."""

    def bracket(x, op):
        return lambda g: x * op(g) - op(x * g)

    return bracket(x1, bracket(x2, bracket(x3, operator)))(f)


# links to the simplex ---------------------------------------------------------------


def _hahn_link_constant(m: int, M: int) -> Fraction:
    out = Fraction(1)
    for i in range(1, m + 1):
        out *= Fraction(factorial(M - i + 1), factorial(M))
    return out


def _bernstein(M: int, k: int) -> Poly1:
    x = Poly1.x()
    return comb(M, k) * x**k * (1 - x) ** (M - k)


def _divided_difference(p: Poly1, nodes: Sequence[Fraction]) -> Fraction:
    # p[x_1..x_r] = sum_n c_n h_{n-r+1}(x_1..x_r); valid for repeated nodes too
    r = len(nodes)
    return sum((c * complete_homogeneous(n - r + 1, nodes) for n, c in enumerate(p.coeffs)), Fraction(0))


def hahn_link_row(t: Sequence, N: int, lam: Signature) -> Fraction:
    """Weight of lam under the link from the simplex point with coordinates t."""
    t = [Fraction(x) for x in t]
    m = len(t)
    if any(not 0 <= x <= 1 for x in t) or any(t[i] < t[i + 1] for i in range(m - 1)):
        raise DomainError("t must be weakly decreasing in [0, 1]")
    M = N + m - 1
    _, _, K = complement_in_rectangle(tuple(lam), m, N)
    polys = [_bernstein(M, k) for k in K]
    # det[f_j(t_i)] / prod_{i<j}(t_i - t_j) = (-1)^{m(m-1)/2} det[f_j[t_1..t_i]]
    ratio = det([[_divided_difference(f, t[: i + 1]) for f in polys] for i in range(m)])
    if (m * (m - 1) // 2) % 2:
        ratio = -ratio
    return _hahn_link_constant(m, M) * vandermonde(K) * ratio


def hahn_link_polynomial(m: int, N: int, lam: Signature) -> SymPolyM:
    """The same weight as an exact symmetric polynomial in t."""
    M = N + m - 1
    _, _, K = complement_in_rectangle(tuple(lam), m, N)
    entries = [[MPoly.from_poly1(m, i, _bernstein(M, k)) for k in K] for i in range(m)]
    ratio = _mpoly_det(entries).divide_vandermonde()
    return SymPolyM.from_mpoly(ratio * (_hahn_link_constant(m, M) * vandermonde(K)))


def hahn_rates(K: Sequence[int], M: int, a, b) -> dict[tuple[int, ...], Fraction]:
    """Off-diagonal rates of the particle configuration K on {0..M}, one particle moving by one."""
    K = tuple(K)
    occupied = set(K)
    base = vandermonde(K)
    a, b = Fraction(a), Fraction(b)
    out = {}
    for idx, y in enumerate(K):
        for target, factor in ((y - 1, y * (M + 1 + a - y)), (y + 1, (M - y) * (b + y + 1))):
            if target in occupied or not 0 <= target <= M:
                continue
            moved = K[:idx] + (target,) + K[idx + 1 :]
            rate = vandermonde(moved) / base * factor
            if rate:
                out[moved] = rate
    return out


def configuration_operator(K: Sequence[int], M: int, a, b, F) -> Fraction:
    """(Delta F)(K) = sum over moves of rate * (F(K') - F(K))."""
    base = F(tuple(K))
    return sum((r * (F(k2) - base) for k2, r in hahn_rates(K, M, a, b).items()), Fraction(0))


def apply_hahn_link(m: int, N: int, F) -> SymPolyM:
    """t -> sum over lam in the m x N box of link(t, lam) F(K(lam)), as a polynomial."""
    out = SymPolyM(m)
    for lam in signatures_in_window(N, 0, m):
        K = complement_in_rectangle(lam, m, N)[2]
        value = F(K)
        if value:
            out = out + hahn_link_polynomial(m, N, lam) * value
    return out


def hahn_to_jacobi_constant(params: HahnJacobiParams, nu: Sequence[int], m: int, points: Sequence[Sequence]) -> set:
    """Ratios (link applied to the Hahn polynomial) / (Jacobi polynomial) at the given t-points.

    Points where the Jacobi polynomial vanishes carry no information and are skipped.
    """
    M = params.require_M()
    N = M - m + 1
    hahn = multivariate_poly("hahn", params, nu, m)
    jacobi = multivariate_poly("jacobi", params, nu, m)
    image = apply_hahn_link(m, N, hahn)
    return {image(t) / jacobi(t) for t in points if jacobi(t)}


def verify_link_intertwining(params: HahnJacobiParams, m: int, F) -> Check:
    """Jacobi operator after the link equals the link after the configuration operator."""
    M = params.require_M()
    N = M - m + 1
    lhs = apply_multivariate_operator("jacobi", params, m, apply_hahn_link(m, N, F))
    rhs = apply_hahn_link(m, N, lambda K: configuration_operator(K, M, params.a, params.b, F))
    ok = lhs == rhs
    return Check(
        identity="Jacobi operator o link = link o Hahn operator",
        instance={"m": m, "N": N, "a": str(params.a), "b": str(params.b)},
        ok=ok,
        first_discrepancy=None if ok else {"difference": (lhs - rhs).to_json()},
    )
