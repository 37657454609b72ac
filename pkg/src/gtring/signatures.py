"""Signatures of unitary groups and the combinatorics around them.

A signature is a weakly decreasing tuple of integers; the empty tuple is the
unique signature of length zero.  Plain tuples are used everywhere so that
signatures can serve directly as dictionary keys with a deterministic
(lexicographic) order.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import prod
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Signature",
    "UsageError",
    "DomainError",
    "signature",
    "is_signature",
    "interlaces",
    "interlacing_below",
    "interlacing_above",
    "dominance_leq",
    "weyl_dimension",
    "dimension_formula",
    "maya",
    "conjugate_partition",
    "complement_in_rectangle",
    "vandermonde",
    "signatures_in_window",
    "reflect",
]

Signature = tuple[int, ...]


class UsageError(ValueError):
    """Arguments that do not fit an operation's calling contract."""


class DomainError(ValueError):
    """Well-formed arguments outside the mathematical domain of an operation."""


def is_signature(parts: Sequence[int]) -> bool:
    return all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1))


def signature(parts: Iterable[int]) -> Signature:
    """Validate and freeze a signature."""
    sig = tuple(int(x) for x in parts)
    if not is_signature(sig):
        raise DomainError(f"{sig} is not weakly decreasing")
    return sig


def interlaces(mu: Signature, lam: Signature) -> bool:
    """True iff ``mu`` interlaces ``lam``, i.e. lam_i >= mu_i >= lam_{i+1}."""
    if len(lam) != len(mu) + 1:
        raise UsageError("interlacing needs len(lam) == len(mu) + 1")
    return all(lam[i] >= mu[i] >= lam[i + 1] for i in range(len(mu)))


def interlacing_below(lam: Signature) -> Iterator[Signature]:
    """All mu of length len(lam)-1 with mu interlacing lam, in lexicographic order."""
    if not lam:
        return
    ranges = [range(lam[i + 1], lam[i] + 1) for i in range(len(lam) - 1)]
    yield from _product_desc(ranges)


def interlacing_above(mu: Signature, lo: int, hi: int) -> Iterator[Signature]:
    """All lam of length len(mu)+1 with parts in [lo, hi] that mu interlaces."""
    n = len(mu)
    if n and (mu[0] > hi or mu[-1] < lo):
        return
    bounds = [(mu[0] if n else lo, hi)]
    bounds += [(mu[i], mu[i - 1]) for i in range(1, n)]
    bounds.append((lo, mu[-1] if n else hi))
    if n == 0:
        bounds = [(lo, hi)]
    ranges = [range(a, b + 1) for a, b in bounds]
    yield from _product_desc(ranges)


def _product_desc(ranges: list[range]) -> Iterator[tuple[int, ...]]:
    if not ranges:
        yield ()
        return
    head, rest = ranges[0], ranges[1:]
    for x in head:
        for tail in _product_desc(rest):
            yield (x,) + tail


def dominance_leq(mu: Signature, lam: Signature) -> bool:
    """Dominance order: lam - mu is a nonnegative combination of e_i - e_{i+1}."""
    if len(mu) != len(lam):
        raise UsageError("dominance compares signatures of equal length")
    if sum(mu) != sum(lam):
        return False
    s_mu = s_lam = 0
    for a, b in zip(mu, lam):
        s_mu += a
        s_lam += b
        if s_mu > s_lam:
            return False
    return True


def dimension_formula(parts: Sequence[int]) -> Fraction:
    """The Weyl product evaluated on an arbitrary integer vector.

    On vectors one step away from a signature that are not themselves
    signatures the product vanishes, which is what makes forbidden
    transitions drop out of rate formulas automatically.
    """
    n = len(parts)
    num = 1
    den = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= parts[i] - parts[j] - i + j
            den *= j - i
    return Fraction(num, den)


@lru_cache(maxsize=None)
def weyl_dimension(lam: Signature) -> int:
    """Dimension of the irreducible U(N) module with highest weight ``lam``."""
    if not is_signature(lam):
        raise DomainError(f"{lam} is not a signature")
    d = dimension_formula(lam)
    assert d.denominator == 1
    return int(d)


def maya(lam: Signature) -> tuple[int, ...]:
    """Strictly decreasing coordinates l_i = lam_i + N - i."""
    n = len(lam)
    return tuple(x + n - i for i, x in enumerate(lam, start=1))


def conjugate_partition(lam: Signature, width: int | None = None) -> tuple[int, ...]:
    """Column lengths of a Young diagram, padded with zeros to ``width``."""
    if lam and lam[-1] < 0:
        raise DomainError("conjugation needs a partition")
    width = (lam[0] if lam else 0) if width is None else width
    return tuple(sum(1 for x in lam if x >= c) for c in range(1, width + 1))


def complement_in_rectangle(lam: Signature, m: int, N: int):
    """Complement of a diagram inside the m x N box.

    Returns ``(kappa, L, K)`` where ``kappa`` is the rotated complement (a
    signature of length ``m``), ``L`` the Maya coordinates of ``lam`` and
    ``K`` those of ``kappa``.  ``L`` and ``K`` partition ``{0, ..., N+m-1}``.
    """
    if len(lam) != N or (N and (lam[0] > m or lam[-1] < 0)) or not is_signature(lam):
        raise DomainError(f"{lam} is not a diagram inside ({m}^{N})")
    conj = conjugate_partition(lam, m)
    kappa = tuple(N - conj[m - j] for j in range(1, m + 1))
    return kappa, maya(lam), maya(kappa)


def vandermonde(xs: Sequence) -> Fraction:
    """prod_{i<j} (x_i - x_j); zero when two entries coincide."""
    return Fraction(prod((xs[i] - xs[j] for i in range(len(xs)) for j in range(i + 1, len(xs))), start=1))


def signatures_in_window(N: int, lo: int, hi: int) -> list[Signature]:
    """All signatures of length N with parts in [lo, hi], lexicographically."""
    if hi < lo:
        return [] if N else [()]
    out = [tuple(sorted(c, reverse=True)) for c in combinations_with_replacement(range(lo, hi + 1), N)]
    out.sort()
    return out


def reflect(lam: Signature) -> Signature:
    """lam* = (-lam_N, ..., -lam_1)."""
    return tuple(-x for x in reversed(lam))
