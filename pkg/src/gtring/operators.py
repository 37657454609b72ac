"""The second-order operator on the ring and the jump-rate operator.

``apply_D`` acts on phi-basis elements as a formal differential operator in
the generators phi_n, ``apply_A`` acts on sigma-basis elements through the
jump rates of the birth-death dynamics on signatures.  The two agree on the
whole ring; :func:`verify_main_identity` checks this one sigma element at a
time after passing to a window quotient.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .report import Check
from .ring import (
    PHI,
    SIGMA,
    RingElement,
    Window,
    mirror,
    phi_sum,
    phi_times_sigma,
    phi_to_sigma_window,
    sigma_element_to_phi,
    sigma_to_phi,
    truncate,
)
from .scalars import Scalar, exact, real_part
from .signatures import DomainError, Signature, UsageError, is_signature

__all__ = [
    "ParameterQuadruple",
    "coefficient_A",
    "coefficient_B",
    "apply_D",
    "apply_D_unchecked",
    "jump_rate",
    "rate_up",
    "rate_down",
    "diagonal_rate",
    "apply_A",
    "apply_A_windowed",
    "degree2_closed_form",
    "verify_main_identity",
    "verify_phi_commutation",
    "quadratic_cancellation",
    "linear_cancellation",
]


@dataclass(frozen=True)
class ParameterQuadruple:
    z: Scalar
    zp: Scalar
    w: Scalar
    wp: Scalar

    def __post_init__(self):
        for name in ("z", "zp", "w", "wp"):
            object.__setattr__(self, name, exact(getattr(self, name)))

    @classmethod
    def of(cls, z, zp, w, wp) -> "ParameterQuadruple":
        return cls(exact(z), exact(zp), exact(w), exact(wp))

    def mirrored(self) -> "ParameterQuadruple":
        """Swap the roles of (z, z') and (w, w')."""
        return ParameterQuadruple(self.w, self.wp, self.z, self.zp)

    def shifted(self, m: int) -> "ParameterQuadruple":
        return ParameterQuadruple(self.z + m, self.zp + m, self.w - m, self.wp - m)

    def total(self) -> Scalar:
        return self.z + self.zp + self.w + self.wp

    def as_tuple(self) -> tuple:
        return (self.z, self.zp, self.w, self.wp)

    def floats(self) -> tuple[float, float, float, float]:
        return tuple(float(real_part(x)) for x in self.as_tuple())

    def to_json(self) -> dict:
        from .io import scalar_to_json

        return {
            "z": scalar_to_json(self.z),
            "z_prime": scalar_to_json(self.zp),
            "w": scalar_to_json(self.w),
            "w_prime": scalar_to_json(self.wp),
        }

    def __str__(self):
        return f"(z={self.z}, z'={self.zp}, w={self.w}, w'={self.wp})"


# coefficients of the differential operator -------------------------------------


@lru_cache(maxsize=None)
def _coefficient_A_terms(n1: int, n2: int, lo: int, hi: int) -> tuple[tuple[Signature, int], ...]:
    acc: Counter = Counter()
    gap = n1 - n2

    def emit(i: int, j: int, c: int):
        if lo <= i <= hi and lo <= j <= hi:
            acc[(i, j) if i >= j else (j, i)] += c

    p = 0
    while n1 + p <= hi and n2 - p >= lo:
        c = gap + 2 * p + 1
        emit(n1 + p + 1, n2 - p, c)
        emit(n1 + p, n2 - p - 1, c)
        if p >= 1:
            emit(n1 + p, n2 - p, -2 * (gap + 2 * p))
        p += 1
    emit(n1, n2, -gap)
    return tuple((k, v) for k, v in sorted(acc.items()) if v)


def coefficient_A(n1: int, n2: int, w: Window) -> RingElement:
    """Quadratic coefficient A_{n1 n2} (n1 >= n2), truncated to the window."""
    if n1 < n2:
        raise UsageError("coefficient_A needs n1 >= n2")
    return RingElement._raw(PHI, {k: Fraction(v) for k, v in _coefficient_A_terms(n1, n2, w.lo, w.hi)})


def coefficient_B(n: int, p: ParameterQuadruple) -> RingElement:
    """Linear coefficient B_n; the only part depending on the parameters."""
    z, zp, w, wp = p.as_tuple()
    return RingElement.collect(
        PHI,
        [
            ((n + 1,), (n + w + 1) * (n + wp + 1)),
            ((n - 1,), (n - z - 1) * (n - zp - 1)),
            ((n,), -((n - z) * (n - zp) + (n + w) * (n + wp))),
        ],
    )


def _multiply_into(acc: dict, coeff_terms, rest: Signature, factor: Scalar, w: Window):
    # acc += factor * coeff * phi_rest, dropping monomials outside the window
    if not w.holds(rest):
        return
    for key, c in coeff_terms:
        mono = tuple(sorted(key + rest, reverse=True))
        acc[mono] = acc.get(mono, 0) + factor * c


def _remove(mono: Signature, *indices: int) -> Signature:
    rest = list(mono)
    for i in indices:
        rest.remove(i)
    return tuple(rest)


def apply_D_unchecked(p: ParameterQuadruple, e: RingElement, w: Window) -> RingElement:
    """Image of D(e) in the window quotient, for any finite phi-basis e.

    Exact without margin conditions: the quotient map is a ring homomorphism
    and every coefficient of D contributes finitely many monomials to it.
    """
    if e.basis != PHI:
        raise UsageError("apply_D acts on phi-basis elements")
    acc: dict = {}
    b_cache: dict[int, tuple] = {}
    for mono, c in e.terms.items():
        mult = Counter(mono)
        idx = sorted(mult, reverse=True)
        for a, n1 in enumerate(idx):
            m1 = mult[n1]
            if m1 >= 2:
                terms = _coefficient_A_terms(n1, n1, w.lo, w.hi)
                _multiply_into(acc, terms, _remove(mono, n1, n1), c * m1 * (m1 - 1), w)
            for n2 in idx[a + 1 :]:
                terms = _coefficient_A_terms(n1, n2, w.lo, w.hi)
                _multiply_into(acc, terms, _remove(mono, n1, n2), 2 * c * m1 * mult[n2], w)
            if n1 not in b_cache:
                b_cache[n1] = tuple(coefficient_B(n1, p).terms.items())
            _multiply_into(acc, b_cache[n1], _remove(mono, n1), c * m1, w)
    return RingElement._raw(PHI, {k: v for k, v in acc.items() if v})


def apply_D(p: ParameterQuadruple, e: RingElement, w: Window) -> RingElement:
    """D(e) truncated to the window; e must keep distance one from the edges."""
    inner = w.shrink(1) if w.hi - w.lo >= 2 else None
    for mono in e.terms:
        if mono and (inner is None or not inner.holds(mono)):
            raise DomainError(f"monomial {mono} touches the edge of {w}")
    return apply_D_unchecked(p, e, w)


# jump rates --------------------------------------------------------------------


def rate_up(p: ParameterQuadruple, nu: Signature, i: int) -> Scalar:
    """Formal rate r(nu, nu + e_i), i counted from 1."""
    x = nu[i - 1] - i + 1
    return (p.z - x) * (p.zp - x)


def rate_down(p: ParameterQuadruple, nu: Signature, i: int) -> Scalar:
    """Formal rate r(nu, nu - e_i), i counted from 1."""
    x = nu[i - 1] - i + len(nu)
    return (p.w + x) * (p.wp + x)


def diagonal_rate(p: ParameterQuadruple, nu: Signature) -> Scalar:
    """q(nu, nu), built from all 2N formal neighbour rates."""
    n = len(nu)
    base = p.total() * Fraction(n * (n - 1), 2) + Fraction((2 * n - 1) * n * (n - 1), 3)
    for i in range(1, n + 1):
        base = base - rate_up(p, nu, i) - rate_down(p, nu, i)
    return base


def _step(nu: Signature, i: int, s: int) -> Signature:
    out = list(nu)
    out[i - 1] += s
    return tuple(out)


def jump_rate(p: ParameterQuadruple, N: int, nu: Signature, mu: Signature) -> Scalar:
    """r(nu, mu) for mu = nu +- e_i, or q(nu, nu) when mu == nu.

    Forbidden transitions (mu not a signature) have rate zero.
    """
    nu, mu = tuple(nu), tuple(mu)
    if len(nu) != N or len(mu) != N:
        raise UsageError("signatures must have length N")
    if mu == nu:
        return diagonal_rate(p, nu)
    diff = [b - a for a, b in zip(nu, mu)]
    moved = [i for i, d in enumerate(diff, start=1) if d]
    if len(moved) != 1 or abs(diff[moved[0] - 1]) != 1:
        raise UsageError(f"{mu} is not a neighbour of {nu}")
    if not is_signature(mu):
        return Fraction(0)
    i = moved[0]
    return rate_up(p, nu, i) if diff[i - 1] > 0 else rate_down(p, nu, i)


RateFn = Callable[[ParameterQuadruple, int, Signature, Signature], Scalar]


def apply_A(p: ParameterQuadruple, e: RingElement, *, rate: RateFn = jump_rate) -> RingElement:
    """A(sigma_mu) = q(mu,mu) sigma_mu + sum over neighbours nu of r(nu, mu) sigma_nu."""
    if e.basis != SIGMA:
        raise UsageError("apply_A acts on sigma-basis elements")
    acc: dict = {}
    for mu, c in e.terms.items():
        n = len(mu)
        if n == 0:
            continue
        acc[mu] = acc.get(mu, 0) + c * rate(p, n, mu, mu)
        for i in range(1, n + 1):
            for s in (1, -1):
                nu = _step(mu, i, s)
                if is_signature(nu):
                    acc[nu] = acc.get(nu, 0) + c * rate(p, n, nu, mu)
    return RingElement._raw(SIGMA, {k: v for k, v in acc.items() if v})


def apply_A_windowed(p: ParameterQuadruple, e: RingElement, w: Window, *, rate: RateFn = jump_rate) -> RingElement:
    """Image of A(e) in the window quotient, phi basis in and out.

    The sigma expansion is taken in the window widened by one, which is
    enough because A moves a signature by at most one step.
    """
    if e.basis == SIGMA:
        e_sigma = e
    else:
        e_sigma = phi_to_sigma_window(truncate(e, w.expand(1)), w.expand(1))
    image = apply_A(p, e_sigma, rate=rate).filter(w.holds)
    return truncate(sigma_element_to_phi(image), w)


# closed form in degree two -----------------------------------------------------


def _plus_component(p: ParameterQuadruple, k1: int, k2: int, w: Window) -> RingElement:
    # terms raising the index sum by one
    z, zp, ww, wp = p.as_tuple()
    pairs = [
        ((k1 + 1, k2), (ww + k1 + 1) * (wp + k1 + 1)),
        ((k1, k2 + 1), (ww + k2 + 1) * (wp + k2 + 1)),
    ]
    j = 0
    while k1 + j + 1 <= w.hi and k2 - j >= w.lo:
        pairs.append(((k1 + j + 1, k2 - j), Fraction(2 * (2 * j + 1 + k1 - k2))))
        j += 1
    return truncate(RingElement.collect(PHI, ((tuple(sorted(k, reverse=True)), c) for k, c in pairs)), w)


def _zero_component(p: ParameterQuadruple, k1: int, k2: int, w: Window) -> RingElement:
    z, zp, ww, wp = p.as_tuple()
    l1, l2 = k1, k2
    diag = (
        -(z - l1) * (zp - l1)
        - (ww + l1 + 1) * (wp + l1 + 1)
        - (z - l2 + 1) * (zp - l2 + 1)
        - (ww + l2) * (wp + l2)
        + p.total()
        + 2
    )
    pairs = [((k1, k2), diag)]
    j = 1
    while k1 + j <= w.hi and k2 - j >= w.lo:
        pairs.append(((k1 + j, k2 - j), Fraction(-4 * (k1 - k2 + 2 * j))))
        j += 1
    return truncate(RingElement.collect(PHI, pairs), w)


def degree2_closed_form(p: ParameterQuadruple, kappa: tuple[int, int], w: Window) -> RingElement:
    """Closed form of A(phi_k1 phi_k2) in the window quotient, assembled by index shift.

    The component lowering the index sum is generated from the raising one
    through the mirror involution rather than written out separately.
    """
    k1, k2 = kappa
    if k1 < k2:
        raise UsageError("need k1 >= k2")
    plus = _plus_component(p, k1, k2, w)
    zero = _zero_component(p, k1, k2, w)
    minus = mirror(_plus_component(p.mirrored(), -k2, -k1, w.mirrored()))
    return plus + zero + minus


def shift_components(e: RingElement, base: int) -> dict[int, RingElement]:
    """Split a phi-basis element by (index sum - base)."""
    out: dict[int, dict] = {}
    for k, v in e.terms.items():
        out.setdefault(sum(k) - base, {})[k] = v
    return {s: RingElement._raw(PHI, t) for s, t in out.items()}


# verification ------------------------------------------------------------------


def _first_difference(lhs: RingElement, rhs: RingElement):
    for key in sorted(set(lhs.terms) | set(rhs.terms)):
        a, b = lhs.coefficient(key), rhs.coefficient(key)
        if a != b:
            return {"monomial": list(key), "lhs": str(a), "rhs": str(b)}
    return None


def verify_main_identity(
    p: ParameterQuadruple, mu: Signature, w: Window, *, rate: RateFn = jump_rate
) -> Check:
    """Compare D(sigma_mu) and A(sigma_mu) in the window quotient."""
    mu = tuple(mu)
    expansion = sigma_to_phi(mu)
    inner = w.shrink(1) if w.hi - w.lo >= 2 else None
    rng = expansion.support_range()
    if mu and (inner is None or not (inner.lo <= rng[0] and rng[1] <= inner.hi)):
        raise DomainError(f"expansion of sigma_{mu} needs margin one inside {w}")
    lhs = apply_D_unchecked(p, expansion, w)
    rhs = truncate(sigma_element_to_phi(apply_A(p, RingElement._raw(SIGMA, {mu: Fraction(1)}), rate=rate)), w)
    diff = _first_difference(lhs, rhs)
    return Check(
        identity="D = A on sigma",
        instance={"mu": list(mu), "window": [w.lo, w.hi], "params": p.to_json()},
        ok=diff is None,
        first_discrepancy=diff,
    )


def quadratic_cancellation(n: int, w: Window) -> RingElement:
    """A_nn + sum_{n1>n} A_{n1 n} + sum_{n2<n} A_{n n2}, in the window quotient."""
    acc = coefficient_A(n, n, w)
    for n1 in range(n + 1, w.hi + 1):
        acc = acc + coefficient_A(n1, n, w)
    for n2 in range(w.lo, n):
        acc = acc + coefficient_A(n, n2, w)
    return acc


def linear_cancellation(p: ParameterQuadruple, w: Window) -> RingElement:
    """sum_n B_n in the window quotient (only n within one of the window matter)."""
    acc = RingElement(PHI, {})
    for n in range(w.lo - 1, w.hi + 2):
        acc = acc + coefficient_B(n, p)
    return truncate(acc, w)


def verify_phi_commutation(p: ParameterQuadruple, e: RingElement, w: Window) -> Check:
    """D and A commute with multiplication by phi = sum_n phi_n.

    Checked on the window shrunk by one, where truncating phi to the window
    loses nothing.
    """
    if w.hi - w.lo < 4:
        raise DomainError("window too narrow for a margin of two")
    margin = w.shrink(2)
    e_phi = sigma_element_to_phi(e) if e.basis == SIGMA else e
    for mono in e_phi.terms:
        if mono and not margin.holds(mono):
            raise DomainError(f"monomial {mono} needs margin two inside {w}")
    inner = w.shrink(1)
    phi = phi_sum(w)
    lhs = truncate(apply_D_unchecked(p, phi * e_phi, w), inner)
    rhs = truncate(phi_sum(inner) * truncate(apply_D_unchecked(p, e_phi, w), inner), inner)
    diff = _first_difference(lhs, rhs)

    e_sigma = e if e.basis == SIGMA else phi_to_sigma_window(e, w)
    times_phi = RingElement(SIGMA, {})
    for mu, c in e_sigma.terms.items():
        times_phi = times_phi + phi_times_sigma(mu, w).scale(c)
    lhs_a = apply_A(p, times_phi).filter(inner.holds)
    rhs_a = RingElement(SIGMA, {})
    for nu, c in apply_A(p, e_sigma).terms.items():
        rhs_a = rhs_a + phi_times_sigma(nu, inner).scale(c)
    diff_a = _first_difference(lhs_a, rhs_a)
    return Check(
        identity="[D, phi] = 0 and [A, phi] = 0",
        instance={"element": str(e), "window": [w.lo, w.hi], "params": p.to_json()},
        ok=diff is None and diff_a is None,
        first_discrepancy=diff or diff_a,
    )
