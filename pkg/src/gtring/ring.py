"""Sparse elements of the representation ring and their window quotients.

Elements live in one of two bases, indexed by signatures of any length:

* ``phi``: monomials in the degree-one generators, a monomial being stored as
  the weakly decreasing tuple of its indices;
* ``sigma``: the Schur-type basis given by ``det[phi_{lam_i - i + j}]``.

A :class:`Window` ``[lo, hi]`` names the quotient that kills every monomial
with an index outside the window.  In that quotient the sigma elements with
a part outside the window vanish and the rest form a basis, so every
computation below is finite and exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Mapping

from .scalars import Scalar, exact, is_real
from .signatures import (
    DomainError,
    Signature,
    UsageError,
    dominance_leq,
    interlacing_above,
    interlacing_below,
    is_signature,
    signatures_in_window,
    weyl_dimension,
)

__all__ = [
    "Window",
    "RingElement",
    "PHI",
    "SIGMA",
    "phi_monomial",
    "sigma_element",
    "one",
    "sigma_to_phi",
    "sigma_element_to_phi",
    "phi_to_sigma_window",
    "kostka",
    "lr_coefficient",
    "multiply",
    "phi_times_sigma",
    "phi_sum",
    "truncate",
    "norm",
    "mirror",
    "shift",
]

PHI = "phi"
SIGMA = "sigma"


@dataclass(frozen=True, order=True)
class Window:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise UsageError(f"empty window [{self.lo}, {self.hi}]")

    def contains(self, index: int) -> bool:
        return self.lo <= index <= self.hi

    def holds(self, sig: Signature) -> bool:
        return not sig or (self.lo <= sig[-1] and sig[0] <= self.hi)

    def shrink(self, k: int = 1) -> "Window":
        return Window(self.lo + k, self.hi - k)

    def expand(self, k: int = 1) -> "Window":
        return Window(self.lo - k, self.hi + k)

    def mirrored(self) -> "Window":
        return Window(-self.hi, -self.lo)

    @classmethod
    def parse(cls, text: str) -> "Window":
        lo, _, hi = text.partition(":")
        if not _:
            raise UsageError(f"window must look like lo:hi, got {text!r}")
        return cls(int(lo), int(hi))

    def __str__(self):
        return f"[{self.lo},{self.hi}]"


@dataclass(frozen=True)
class RingElement:
    """Finite linear combination of basis elements indexed by signatures."""

    basis: str
    terms: Mapping[Signature, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        if self.basis not in (PHI, SIGMA):
            raise UsageError(f"unknown basis {self.basis!r}")
        clean = {}
        for sig, c in self.terms.items():
            if not is_signature(sig):
                raise DomainError(f"{sig} is not weakly decreasing")
            if c:
                clean[tuple(sig)] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def _raw(cls, basis: str, terms: dict) -> "RingElement":
        # trusted constructor: keys are valid and coefficients nonzero
        obj = object.__new__(cls)
        object.__setattr__(obj, "basis", basis)
        object.__setattr__(obj, "terms", dict(sorted(terms.items())))
        return obj

    @classmethod
    def collect(cls, basis: str, pairs: Iterable[tuple[Signature, Scalar]]) -> "RingElement":
        acc: dict = {}
        for sig, c in pairs:
            acc[sig] = acc.get(sig, 0) + c
        return cls._raw(basis, {k: v for k, v in acc.items() if v})

    def __add__(self, other: "RingElement") -> "RingElement":
        self._same_basis(other)
        acc = dict(self.terms)
        for sig, c in other.terms.items():
            v = acc.get(sig, 0) + c
            if v:
                acc[sig] = v
            else:
                acc.pop(sig, None)
        return RingElement._raw(self.basis, acc)

    def __neg__(self) -> "RingElement":
        return RingElement._raw(self.basis, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def scale(self, c) -> "RingElement":
        c = exact(c)
        if not c:
            return RingElement._raw(self.basis, {})
        return RingElement._raw(self.basis, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, RingElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def _same_basis(self, other: "RingElement"):
        if not isinstance(other, RingElement) or other.basis != self.basis:
            raise UsageError("mixed bases; convert first")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, RingElement) and self.basis == other.basis and self.terms == other.terms

    def __hash__(self):
        return hash((self.basis, tuple(self.terms.items())))

    def coefficient(self, sig: Signature) -> Scalar:
        return self.terms.get(tuple(sig), Fraction(0))

    def degrees(self) -> set[int]:
        return {len(k) for k in self.terms}

    def component(self, degree: int) -> "RingElement":
        return RingElement._raw(self.basis, {k: v for k, v in self.terms.items() if len(k) == degree})

    def filter(self, predicate) -> "RingElement":
        return RingElement._raw(self.basis, {k: v for k, v in self.terms.items() if predicate(k)})

    def support_range(self) -> tuple[int, int] | None:
        idx = [i for k in self.terms for i in k]
        return (min(idx), max(idx)) if idx else None

    def __repr__(self):
        if not self.terms:
            return f"RingElement({self.basis}, 0)"
        body = " + ".join(f"{c}*{self.basis}{list(k)}" for k, c in self.terms.items())
        return f"RingElement({body})"


def phi_monomial(*indices: int, coefficient=1) -> RingElement:
    key = tuple(sorted(indices, reverse=True))
    return RingElement._raw(PHI, {key: exact(coefficient)} if coefficient else {})


def sigma_element(lam: Iterable[int], coefficient=1) -> RingElement:
    return RingElement(SIGMA, {tuple(lam): exact(coefficient)})


def one(basis: str = PHI) -> RingElement:
    return RingElement._raw(basis, {(): Fraction(1)})


def _perm_sign(perm: tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def _signed_permutations(n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    return tuple((p, _perm_sign(p)) for p in permutations(range(n)))


@lru_cache(maxsize=None)
def _sigma_to_phi_terms(lam: Signature) -> tuple[tuple[Signature, int], ...]:
    n = len(lam)
    acc: dict[Signature, int] = {}
    for perm, sgn in _signed_permutations(n):
        key = tuple(sorted((lam[i] - i + perm[i] for i in range(n)), reverse=True))
        acc[key] = acc.get(key, 0) + sgn
    return tuple((k, v) for k, v in sorted(acc.items()) if v)


def sigma_to_phi(lam: Signature) -> RingElement:
    """Expand sigma_lam as the determinant det[phi_{lam_i - i + j}]."""
    lam = tuple(lam)
    if not is_signature(lam):
        raise DomainError(f"{lam} is not a signature")
    return RingElement._raw(PHI, {k: Fraction(v) for k, v in _sigma_to_phi_terms(lam)})


def sigma_element_to_phi(e: RingElement) -> RingElement:
    """Convert a finite sigma-basis element to the phi basis (finite, exact)."""
    if e.basis != SIGMA:
        raise UsageError("expected a sigma-basis element")
    return RingElement.collect(
        PHI, ((k, c * v) for lam, c in e.terms.items() for k, v in _sigma_to_phi_terms(lam))
    )


@lru_cache(maxsize=None)
def kostka(lam: Signature, weight: tuple[int, ...]) -> int:
    """Number of Gelfand-Tsetlin patterns with top row ``lam`` and given weight.

    Equivalently the number of semistandard tableaux of shape ``lam`` and
    content ``weight`` (after any uniform shift making ``lam`` a partition),
    i.e. the coefficient of u^weight in the rational Schur function s_lam.
    """
    if len(lam) != len(weight):
        raise UsageError("shape and weight must have equal length")
    if not lam:
        return 1
    if sum(lam) != sum(weight):
        return 0
    last = weight[-1]
    total = sum(lam) - last
    return sum(kostka(mu, weight[:-1]) for mu in interlacing_below(lam) if sum(mu) == total)


def phi_to_sigma_window(e: RingElement, w: Window) -> RingElement:
    """Image of a phi-basis element in the window quotient, in the sigma basis.

    Uses phi_mu = sum_{lam >= mu} K(lam, mu) sigma_lam with Kostka numbers K;
    the truncation keeps the signatures lying inside the window.
    """
    if e.basis != PHI:
        raise UsageError("expected a phi-basis element")
    out: dict[Signature, Scalar] = {}
    for mu, c in e.terms.items():
        if not w.holds(mu):
            raise DomainError(f"monomial {mu} leaves the window {w}")
        for lam in _dominating_in_window(mu, w.lo, w.hi):
            k = kostka(lam, mu)
            if k:
                out[lam] = out.get(lam, 0) + c * k
    return RingElement._raw(SIGMA, {k: v for k, v in out.items() if v})


@lru_cache(maxsize=None)
def _dominating_in_window(mu: Signature, lo: int, hi: int) -> tuple[Signature, ...]:
    n, total = len(mu), sum(mu)
    return tuple(
        lam for lam in signatures_in_window(n, lo, hi) if sum(lam) == total and dominance_leq(mu, lam)
    )


# Littlewood-Richardson coefficients -------------------------------------------


def lr_coefficient(lam: Signature, mu: Signature, nu: Signature) -> int:
    """Coefficient of s_mu(u) s_nu(v) in s_lam(u, v) for split variable sets."""
    lam, mu, nu = tuple(lam), tuple(mu), tuple(nu)
    if len(lam) != len(mu) + len(nu):
        raise UsageError("need len(lam) == len(mu) + len(nu)")
    for s in (lam, mu, nu):
        if not is_signature(s):
            raise DomainError(f"{s} is not a signature")
    if sum(lam) != sum(mu) + sum(nu):
        return 0
    if not mu or not nu:
        return int(lam == (mu or nu))
    d = max(0, -min(lam[-1], mu[-1], nu[-1]))
    return _lr_partitions(
        tuple(x + d for x in lam), tuple(x + d for x in mu), tuple(x + d for x in nu)
    )


@lru_cache(maxsize=None)
def _lr_partitions(lam: tuple[int, ...], mu: tuple[int, ...], nu: tuple[int, ...]) -> int:
    """Count LR tableaux of skew shape lam/mu with content nu."""
    lam = tuple(x for x in lam if x)
    mu = tuple(x for x in mu if x)
    nu = tuple(x for x in nu if x)
    if len(mu) > len(lam) or any(m > l for m, l in zip(mu, lam)):
        return 0
    if sum(lam) != sum(mu) + sum(nu):
        return 0
    if not nu:
        return 1
    mu_pad = mu + (0,) * (len(lam) - len(mu))
    # cells in reading order: rows top to bottom, each row right to left
    cells = [(r, c) for r in range(len(lam)) for c in range(lam[r] - 1, mu_pad[r] - 1, -1)]
    in_shape = set(cells)
    k = len(nu)
    counts = [0] * (k + 1)
    filling: dict[tuple[int, int], int] = {}

    def place(pos: int) -> int:
        if pos == len(cells):
            return 1
        r, c = cells[pos]
        upper = k
        if (r, c + 1) in in_shape:
            upper = min(upper, filling[(r, c + 1)])  # rows weakly increase left to right
        lower = 1
        if (r - 1, c) in in_shape:
            lower = filling[(r - 1, c)] + 1  # columns strictly increase downward
        total = 0
        for v in range(lower, upper + 1):
            if counts[v] >= nu[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue  # lattice word condition
            counts[v] += 1
            filling[(r, c)] = v
            total += place(pos + 1)
            counts[v] -= 1
        filling.pop((r, c), None)
        return total

    return place(0)


# multiplication and truncation --------------------------------------------------


def multiply(a: RingElement, b: RingElement, window: Window | None = None) -> RingElement:
    """Product of two finite elements.

    In the phi basis monomials concatenate.  In the sigma basis the product
    of two finite elements is an infinite series, so a ``window`` is required
    and the result is its image in that quotient.
    """
    a._same_basis(b)
    if a.basis == PHI:
        out: dict = {}
        for k1, c1 in a.terms.items():
            for k2, c2 in b.terms.items():
                key = tuple(sorted(k1 + k2, reverse=True))
                if window is not None and not window.holds(key):
                    continue
                out[key] = out.get(key, 0) + c1 * c2
        return RingElement._raw(PHI, {k: v for k, v in out.items() if v})
    if window is None:
        raise UsageError("sigma-basis products are infinite series; pass a window")
    out = {}
    for mu, c1 in a.terms.items():
        for nu, c2 in b.terms.items():
            for lam, c in _lr_products(mu, nu, window.lo, window.hi):
                out[lam] = out.get(lam, 0) + c * c1 * c2
    return RingElement._raw(SIGMA, {k: v for k, v in out.items() if v})


@lru_cache(maxsize=None)
def _lr_products(mu: Signature, nu: Signature, lo: int, hi: int) -> tuple[tuple[Signature, int], ...]:
    if not mu or not nu:
        lam = mu or nu
        return ((lam, 1),) if Window(lo, hi).holds(lam) else ()
    total = sum(mu) + sum(nu)
    out = []
    for lam in signatures_in_window(len(mu) + len(nu), lo, hi):
        if sum(lam) == total:
            c = lr_coefficient(lam, mu, nu)
            if c:
                out.append((lam, c))
    return tuple(out)


def phi_times_sigma(mu: Signature, w: Window) -> RingElement:
    """phi * sigma_mu = sum over lam above mu in the branching graph, within w."""
    return RingElement._raw(SIGMA, {lam: Fraction(1) for lam in interlacing_above(tuple(mu), w.lo, w.hi)})


def phi_sum(w: Window) -> RingElement:
    """phi = sum_n phi_n, truncated to the window."""
    return RingElement._raw(PHI, {(n,): Fraction(1) for n in range(w.lo, w.hi + 1)})


def truncate(e: RingElement, w: Window) -> RingElement:
    """Image in the window quotient (drops everything with an index outside)."""
    return e.filter(w.holds)


def norm(e: RingElement) -> Fraction:
    """Sum over degrees of max |a_lam| / Dim(lam); needs real coefficients."""
    if e.basis != SIGMA:
        raise UsageError("the norm is defined on sigma-basis coordinates")
    best: dict[int, Fraction] = {}
    for lam, c in e.terms.items():
        if not is_real(c):
            raise DomainError("exact norm needs real coefficients")
        v = abs(c) / weyl_dimension(lam)
        if v > best.get(len(lam), -1):
            best[len(lam)] = v
    return sum(best.values(), Fraction(0))


def mirror(e: RingElement) -> RingElement:
    """The involution phi_n -> phi_{-n} (sigma_lam -> sigma_{lam*} likewise)."""
    return RingElement._raw(e.basis, {tuple(-x for x in reversed(k)): v for k, v in e.terms.items()})


def shift(e: RingElement, m: int) -> RingElement:
    """The automorphism phi_n -> phi_{n+m}."""
    return RingElement._raw(e.basis, {tuple(x + m for x in k): v for k, v in e.terms.items()})
