"""Boundary points and the functions they define on signatures.

Every factor of the generating function Phi(u; omega) is itself the
generating function of a probability distribution on the integers
(Bernoulli steps for the beta parameters, geometric ones for alpha, Poisson
for gamma).  Its Laurent coefficients phi_hat_n are therefore the law of a
sum of independent integer variables, which gives both a simple expansion
and an honest error bound when infinite factors are truncated: the
coefficients move by at most the total dropped tail mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .linalg import det
from .ring import Window
from .signatures import DomainError, Signature, UsageError, weyl_dimension

__all__ = [
    "BoundaryPoint",
    "Approx",
    "make_simplex_point",
    "point_from_t",
    "phi_hat",
    "phi_hat_table",
    "sigma_hat",
    "link_infinity",
    "symmetry",
    "vertex_point",
]


def _frac_tuple(xs) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in xs)


@dataclass(frozen=True)
class BoundaryPoint:
    alpha_plus: tuple = ()
    beta_plus: tuple = ()
    alpha_minus: tuple = ()
    beta_minus: tuple = ()
    delta_plus: Fraction = Fraction(0)
    delta_minus: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("alpha_plus", "beta_plus", "alpha_minus", "beta_minus"):
            xs = _frac_tuple(getattr(self, name))
            while xs and xs[-1] == 0:
                xs = xs[:-1]
            if any(x < 0 for x in xs) or any(xs[i] < xs[i + 1] for i in range(len(xs) - 1)):
                raise DomainError(f"{name} must be weakly decreasing and nonnegative")
            object.__setattr__(self, name, xs)
        for name in ("delta_plus", "delta_minus"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if any(b > 1 for b in self.beta_plus + self.beta_minus):
            raise DomainError("beta parameters must not exceed 1")
        b1 = (self.beta_plus[0] if self.beta_plus else 0) + (self.beta_minus[0] if self.beta_minus else 0)
        if b1 > 1:
            raise DomainError("beta_1^+ + beta_1^- must not exceed 1")
        if self.gamma_plus < 0 or self.gamma_minus < 0:
            raise DomainError("delta must dominate the sum of alpha and beta")

    @property
    def gamma_plus(self) -> Fraction:
        return self.delta_plus - sum(self.alpha_plus) - sum(self.beta_plus)

    @property
    def gamma_minus(self) -> Fraction:
        return self.delta_minus - sum(self.alpha_minus) - sum(self.beta_minus)

    @property
    def is_simplex_point(self) -> bool:
        return not (self.alpha_plus or self.alpha_minus or self.gamma_plus or self.gamma_minus)

    def to_json(self) -> dict:
        enc = lambda xs: [str(x) for x in xs]
        return {
            "alpha_plus": enc(self.alpha_plus),
            "beta_plus": enc(self.beta_plus),
            "alpha_minus": enc(self.alpha_minus),
            "beta_minus": enc(self.beta_minus),
            "delta_plus": str(self.delta_plus),
            "delta_minus": str(self.delta_minus),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BoundaryPoint":
        dec = lambda xs: tuple(Fraction(x) for x in xs)
        return cls(
            dec(obj.get("alpha_plus", [])),
            dec(obj.get("beta_plus", [])),
            dec(obj.get("alpha_minus", [])),
            dec(obj.get("beta_minus", [])),
            Fraction(obj.get("delta_plus", 0)),
            Fraction(obj.get("delta_minus", 0)),
        )


@dataclass(frozen=True)
class Approx:
    """A value known up to ``bound`` in absolute error."""

    value: float | Fraction
    bound: float | Fraction

    def __float__(self):
        return float(self.value)


def make_simplex_point(beta_plus: Sequence, beta_minus: Sequence) -> BoundaryPoint:
    bp, bm = _frac_tuple(beta_plus), _frac_tuple(beta_minus)
    for xs in (bp, bm):
        if any(x < 0 or x > 1 for x in xs) or any(xs[i] < xs[i + 1] for i in range(len(xs) - 1)):
            raise DomainError("beta lists must be weakly decreasing in [0, 1]")
    return BoundaryPoint((), bp, (), bm, sum(bp, Fraction(0)), sum(bm, Fraction(0)))


def point_from_t(t: Sequence) -> BoundaryPoint:
    """The point of the simplex with Phi(u) = prod_i (t_i + (1 - t_i) u)."""
    return make_simplex_point(sorted((1 - Fraction(x) for x in t), reverse=True), [])


def vertex_point(m: int, k: int) -> BoundaryPoint:
    """Vertex with k coordinates t_i = 0 and m - k equal to 1; phi_hat is the delta at k."""
    return point_from_t([1] * (m - k) + [0] * k)


# Laurent coefficients ---------------------------------------------------------


def _convolve(a: dict, b: dict) -> dict:
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return out


def _geometric(alpha, depth: int, sign: int, one) -> dict:
    rho = alpha / (one + alpha)
    first = one / (one + alpha)
    return {sign * k: first * rho**k for k in range(depth + 1)}


def _geometric_depth(alpha: float, budget: float) -> int:
    # smallest K with rho^(K+1) <= budget
    rho = alpha / (1.0 + alpha)
    return max(0, math.ceil(math.log(budget) / math.log(rho)) - 1)


def _poisson(gamma: float, budget: float, sign: int) -> tuple[dict, float]:
    out, k, term, mass = {}, 0, math.exp(-gamma), 0.0
    while True:
        out[sign * k] = term
        mass += term
        if 1.0 - mass <= budget or term == 0.0 and k > gamma:
            return out, max(0.0, 1.0 - mass)
        k += 1
        term = term * gamma / k


@dataclass(frozen=True)
class PhiHatTable:
    values: dict
    bound: float | Fraction
    exact: bool

    def get(self, n: int):
        return self.values.get(n, 0)


def phi_hat_table(omega: BoundaryPoint, mode: str = "exact", tol: float = 1e-12) -> PhiHatTable:
    """All nonzero (or retained) Laurent coefficients of Phi(u; omega)."""
    if mode not in ("exact", "float"):
        raise UsageError(f"unknown mode {mode!r}")
    exact_mode = mode == "exact"
    if exact_mode and (omega.gamma_plus or omega.gamma_minus):
        raise DomainError("exact mode does not support the exponential factor (gamma > 0)")
    one = Fraction(1) if exact_mode else 1.0
    conv = (lambda x: x) if exact_mode else float
    dist: dict = {0: one}
    for b in omega.beta_plus:
        dist = _convolve(dist, {0: one - conv(b), 1: conv(b)})
    for b in omega.beta_minus:
        dist = _convolve(dist, {0: one - conv(b), -1: conv(b)})
    infinite = len(omega.alpha_plus) + len(omega.alpha_minus)
    if not exact_mode:
        infinite += bool(omega.gamma_plus) + bool(omega.gamma_minus)
    if infinite == 0:
        return PhiHatTable({k: v for k, v in dist.items() if v}, one * 0, exact_mode)
    budget = tol / infinite
    bound = one * 0
    for sign, alphas in ((1, omega.alpha_plus), (-1, omega.alpha_minus)):
        for a in alphas:
            depth = _geometric_depth(float(a), budget)
            dist = _convolve(dist, _geometric(conv(a), depth, sign, one))
            rho = conv(a) / (one + conv(a))
            bound = bound + rho ** (depth + 1)
    if not exact_mode:
        for sign, g in ((1, omega.gamma_plus), (-1, omega.gamma_minus)):
            if g:
                factor, tail = _poisson(float(g), budget, sign)
                dist = _convolve(dist, factor)
                bound = bound + tail
    return PhiHatTable({k: v for k, v in dist.items() if v}, bound, False)


def phi_hat(omega: BoundaryPoint, n: int, w: Window | None = None, mode: str = "exact", tol: float = 1e-12):
    """Coefficient of u^n in Phi(u; omega).

    Exact rational when the expansion is finite; otherwise an :class:`Approx`
    carrying a certified error bound.
    """
    table = phi_hat_table(omega, mode, tol)
    value = table.get(n)
    if w is not None and not w.contains(n):
        raise UsageError(f"index {n} outside window {w}")
    if table.exact:
        return Fraction(value)
    return Approx(value, table.bound)


def sigma_hat(omega: BoundaryPoint, lam: Signature, w: Window | None = None, mode: str = "exact", tol: float = 1e-12):
    """det[phi_hat_{lam_i - i + j}(omega)]."""
    lam = tuple(lam)
    n = len(lam)
    if w is not None and n and not (w.lo <= lam[-1] - n + 1 and lam[0] + n - 1 <= w.hi):
        raise UsageError(f"window {w} does not cover the determinant entries of {lam}")
    table = phi_hat_table(omega, mode, tol)
    matrix = [[table.get(lam[i] - i + j) for j in range(n)] for i in range(n)]
    value = det(matrix) if table.exact else _float_det(matrix)
    if table.exact:
        return value
    eps = table.bound
    # entries lie in [0, 1]; each of the n! products moves by at most n * eps * (1 + eps)^(n-1)
    bound = math.factorial(n) * n * eps * (1 + eps) ** max(n - 1, 0)
    return Approx(value, bound)


def _float_det(matrix) -> float:
    if not matrix:
        return 1.0
    import numpy as np

    return float(np.linalg.det(np.array(matrix, dtype=float)))


def link_infinity(omega: BoundaryPoint, N: int, lam: Signature, w: Window | None = None, mode: str = "exact", tol: float = 1e-12):
    """Dim(lam) * sigma_hat_lam(omega): the link from the boundary to level N."""
    lam = tuple(lam)
    if len(lam) != N:
        raise UsageError("signature length must equal N")
    s = sigma_hat(omega, lam, w, mode, tol)
    d = weyl_dimension(lam)
    if isinstance(s, Approx):
        return Approx(d * s.value, d * s.bound)
    return d * s


def symmetry(omega: BoundaryPoint, which: str) -> BoundaryPoint:
    """The conjugation (swap of the two sides) or the twist (multiplies Phi by u)."""
    if which == "conjugate":
        return BoundaryPoint(
            omega.alpha_minus, omega.beta_minus, omega.alpha_plus, omega.beta_plus, omega.delta_minus, omega.delta_plus
        )
    if which == "twist":
        b1 = omega.beta_minus[0] if omega.beta_minus else Fraction(0)
        return replace(
            omega,
            beta_plus=(1 - b1,) + omega.beta_plus,
            beta_minus=omega.beta_minus[1:],
            delta_plus=omega.delta_plus + 1 - b1,
            delta_minus=omega.delta_minus - b1,
        )
    raise UsageError(f"unknown symmetry {which!r}")
