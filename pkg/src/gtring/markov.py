"""Birth-death dynamics on signatures, their links, and seeded simulation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .operators import ParameterQuadruple, diagonal_rate, rate_down, rate_up
from .report import Check
from .scalars import Scalar, imag_part, is_real, real_part
from .signatures import (
    DomainError,
    Signature,
    UsageError,
    dimension_formula,
    interlacing_below,
    is_signature,
    weyl_dimension,
)
from .simcore import kernel

__all__ = [
    "Admissibility",
    "classify_admissible",
    "classify_degenerate",
    "GeneratorRow",
    "LinkRow",
    "generator_row",
    "link_row",
    "check_intertwining",
    "intertwining_rows",
    "empirical_generator",
    "Trajectory",
    "simulate",
    "simulate_final_states",
    "MAX_JUMPS",
]

MAX_JUMPS = 10**7


@dataclass(frozen=True)
class Admissibility:
    admissible: bool
    reason: str | None = None

    def __bool__(self):
        return self.admissible


def _is_integer(x: Scalar) -> bool:
    return is_real(x) and Fraction(x).denominator == 1


def _pair_problem(a: Scalar, b: Scalar, names: str) -> str | None:
    for x, name in ((a, names[0]), (b, names[1])):
        if _is_integer(x):
            return f"{name}={x} is an integer; integers are excluded"
    if is_real(a) and is_real(b):
        if math.floor(Fraction(a)) != math.floor(Fraction(b)):
            return f"{names[0]}={a} and {names[1]}={b} do not lie in a common interval (m, m+1)"
        return None
    if real_part(a) == real_part(b) and imag_part(a) == -imag_part(b):
        return None
    return f"{names[0]}={a} and {names[1]}={b} are neither complex conjugate nor real"


def classify_admissible(p: ParameterQuadruple) -> Admissibility:
    """Positivity and non-explosion conditions for the jump rates."""
    for pair, names in (((p.z, p.zp), ("z", "z'")), ((p.w, p.wp), ("w", "w'"))):
        problem = _pair_problem(*pair, names)
        if problem:
            return Admissibility(False, problem)
    total = p.total()
    if not is_real(total) or total <= -1:
        return Admissibility(False, f"z+z'+w+w'={total} must exceed -1")
    return Admissibility(True)


def classify_degenerate(p: ParameterQuadruple, nu0: Signature) -> Admissibility:
    """Integer z = k, w = l with z'-k, w'-l > -1 and a start inside the box [-l, k]."""
    if not all(is_real(x) for x in p.as_tuple()):
        return Admissibility(False, "degenerate parameters must be real")
    if not (_is_integer(p.z) and _is_integer(p.w)):
        return Admissibility(False, "degenerate parameters need integer z and w")
    k, l = int(p.z), int(p.w)
    if k + l < 0:
        return Admissibility(False, "degenerate parameters need z + w >= 0")
    if not (p.zp - p.z > -1 and p.wp - p.w > -1):
        return Admissibility(False, "degenerate parameters need z'-z > -1 and w'-w > -1")
    if nu0 and (nu0[0] > k or nu0[-1] < -l):
        return Admissibility(False, f"start {nu0} lies outside the box [{-l}, {k}]")
    return Admissibility(True)


@dataclass(frozen=True)
class GeneratorRow:
    state: Signature
    entries: dict

    def total(self) -> Scalar:
        return sum(self.entries.values(), Fraction(0))


@dataclass(frozen=True)
class LinkRow:
    state: Signature
    entries: dict

    def total(self) -> Scalar:
        return sum(self.entries.values(), Fraction(0))


def _neighbours(nu: Signature):
    for i in range(1, len(nu) + 1):
        for s in (1, -1):
            mu = list(nu)
            mu[i - 1] += s
            yield i, s, tuple(mu)


def generator_row(p: ParameterQuadruple, N: int, nu: Signature) -> GeneratorRow:
    """Row q(nu, .) of the generator on signatures of length N."""
    return GeneratorRow(tuple(nu), dict(_generator_entries(p, N, tuple(nu))))


@lru_cache(maxsize=200_000)
def _generator_entries(p: ParameterQuadruple, N: int, nu: Signature) -> tuple:
    if len(nu) != N:
        raise UsageError("state must have length N")
    dim = dimension_formula(nu)
    out = {nu: diagonal_rate(p, nu)}
    for i, s, mu in _neighbours(nu):
        if not is_signature(mu):
            continue
        r = rate_up(p, nu, i) if s > 0 else rate_down(p, nu, i)
        q = dimension_formula(mu) / dim * r
        if q:
            out[mu] = q
    return tuple(sorted(out.items()))


def link_row(N: int, lam: Signature) -> LinkRow:
    """Row of the canonical link from length N+1 to length N."""
    return LinkRow(tuple(lam), dict(_link_entries(N, tuple(lam))))


@lru_cache(maxsize=200_000)
def _link_entries(N: int, lam: Signature) -> tuple:
    if len(lam) != N + 1:
        raise UsageError("link rows need len(lam) == N + 1")
    d = weyl_dimension(lam)
    return tuple((mu, Fraction(weyl_dimension(mu), d)) for mu in interlacing_below(lam))


def check_intertwining(p: ParameterQuadruple, N: int, lam: Signature, mu: Signature) -> Check:
    """(Q_{N+1} Link)(lam, mu) == (Link Q_N)(lam, mu)."""
    lam, mu = tuple(lam), tuple(mu)
    if len(lam) != N + 1 or len(mu) != N:
        raise UsageError("need len(lam) == N + 1 and len(mu) == N")
    lhs = Fraction(0)
    for lam2, q in _generator_entries(p, N + 1, lam):
        if all(lam2[i] >= mu[i] >= lam2[i + 1] for i in range(N)):
            lhs = lhs + q * Fraction(weyl_dimension(mu), weyl_dimension(lam2))
    rhs = Fraction(0)
    for mu2, link in _link_entries(N, lam):
        for target, q in _generator_entries(p, N, mu2):
            if target == mu:
                rhs = rhs + link * q
    ok = lhs == rhs
    return Check(
        identity="Q_{N+1} Link = Link Q_N",
        instance={"N": N, "lambda": list(lam), "mu": list(mu), "params": p.to_json()},
        ok=ok,
        first_discrepancy=None if ok else {"lhs": str(lhs), "rhs": str(rhs)},
    )


def intertwining_rows(p: ParameterQuadruple, N: int, lam: Signature) -> tuple[dict, dict]:
    """Whole rows of both sides of the intertwining relation at ``lam``."""
    lhs: dict = {}
    for lam2, q in _generator_entries(p, N + 1, tuple(lam)):
        for mu, link in _link_entries(N, lam2):
            lhs[mu] = lhs.get(mu, 0) + q * link
    rhs: dict = {}
    for mu2, link in _link_entries(N, tuple(lam)):
        for mu, q in _generator_entries(p, N, mu2):
            rhs[mu] = rhs.get(mu, 0) + link * q
    strip = lambda d: {k: v for k, v in d.items() if v}
    return strip(lhs), strip(rhs)


# simulation ---------------------------------------------------------------------


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    truncated: bool
    seed: int
    index: int

    def __len__(self):
        return len(self.times)

    def pairs(self) -> list[tuple[float, Signature]]:
        return [(float(t), tuple(int(x) for x in s)) for t, s in zip(self.times, self.states)]


def _simulation_gate(p: ParameterQuadruple, N: int, nu0: Signature) -> None:
    if len(nu0) != N or not is_signature(nu0):
        raise UsageError(f"start {nu0} is not a signature of length {N}")
    if not all(is_real(x) for x in p.as_tuple()):
        raise DomainError("simulation needs real parameters")
    verdict = classify_admissible(p)
    if verdict:
        return
    degenerate = classify_degenerate(p, nu0)
    if degenerate:
        return
    raise DomainError(f"parameters not admissible: {verdict.reason}")


def simulate(
    p: ParameterQuadruple,
    N: int,
    nu0: Signature,
    horizon: float,
    seed: int,
    *,
    index: int = 0,
    max_jumps: int = MAX_JUMPS,
) -> Trajectory:
    """Exact jump-chain trajectory up to ``horizon``; stream ``index`` of ``seed``.

    Besides admissible parameters, the degenerate integer case started inside
    its box is accepted: the rates then vanish on the box boundary and the
    chain stays confined.
    """
    nu0 = tuple(int(x) for x in nu0)
    _simulation_gate(p, N, nu0)
    if horizon < 0:
        raise UsageError("horizon must be nonnegative")
    times, states, truncated = kernel.run_trajectory(p.floats(), nu0, float(horizon), seed, index, max_jumps)
    return Trajectory(times, states, bool(truncated), seed, index)


def simulate_final_states(
    p: ParameterQuadruple,
    N: int,
    nu0: Signature,
    horizon: float,
    seed: int,
    count: int,
    *,
    first_index: int = 0,
    max_jumps: int = MAX_JUMPS,
):
    """Final states of ``count`` independent trajectories (streams first_index, ...)."""
    nu0 = tuple(int(x) for x in nu0)
    _simulation_gate(p, N, nu0)
    return kernel.run_final(p.floats(), nu0, float(horizon), seed, first_index, count, max_jumps)


def empirical_generator(
    p: ParameterQuadruple, nu0: Signature, horizon: float, seed: int, count: int, f
) -> tuple[float, float, float]:
    """(estimate of (E f(X_t) - f(nu0))/t, its standard error, exact (Qf)(nu0))."""
    finals, _, _ = simulate_final_states(p, len(nu0), nu0, horizon, seed, count)
    values = np.array([f(tuple(int(x) for x in row)) for row in finals], dtype=float)
    est = (values.mean() - f(tuple(nu0))) / horizon
    se = values.std(ddof=1) / np.sqrt(count) / horizon
    exact = sum(q * f(mu) for mu, q in _generator_entries(p, len(nu0), tuple(nu0)))
    return float(est), float(se), exact

