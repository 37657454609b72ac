"""Exact univariate, multivariate and symmetric polynomials over fractions."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import comb
from typing import Iterable, Mapping, Sequence

from .scalars import Scalar, exact
from .signatures import DomainError

__all__ = ["Poly1", "MPoly", "SymPolyM", "vandermonde_poly", "complete_homogeneous"]


class Poly1:
    """Univariate polynomial; ``coeffs[k]`` multiplies x^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [exact(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> "Poly1":
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> "Poly1":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _as_poly1(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly1(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly1(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly1(other))

    def __rsub__(self, other):
        return _as_poly1(other) - self

    def __mul__(self, other):
        other = _as_poly1(other)
        if not self.coeffs or not other.coeffs:
            return Poly1()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly1(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly1([1])
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            return self.coeffs == _as_poly1(other).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def derivative(self) -> "Poly1":
        return Poly1(k * c for k, c in enumerate(self.coeffs) if k)

    def shift(self, c) -> "Poly1":
        """The polynomial x -> p(x + c)."""
        c = exact(c)
        out = [Fraction(0)] * len(self.coeffs)
        for k, a in enumerate(self.coeffs):
            for j in range(k + 1):
                out[j] = out[j] + a * comb(k, j) * c ** (k - j)
        return Poly1(out)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def format(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            neg = c < 0
            mag = -c if neg else c
            if k == 0:
                body = str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                if mag == 1:
                    body = mono
                elif Fraction(mag).denominator == 1:
                    body = f"{mag}{mono}"
                else:
                    body = f"({mag}){mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"Poly1({self.format('x')})"


def _as_poly1(x) -> Poly1:
    if isinstance(x, Poly1):
        return x
    if isinstance(x, (int, Fraction)) or hasattr(x, "im"):
        return Poly1([x])
    raise TypeError(f"cannot combine Poly1 with {type(x).__name__}")


class MPoly:
    """Sparse polynomial in ``n`` variables: exponent tuple -> coefficient."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple, Scalar] | None = None):
        self.n = n
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, n: int, c) -> "MPoly":
        return cls(n, {(0,) * n: exact(c)})

    @classmethod
    def var(cls, n: int, i: int) -> "MPoly":
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): Fraction(1)})

    @classmethod
    def from_poly1(cls, n: int, i: int, p: Poly1) -> "MPoly":
        out = {}
        for k, c in enumerate(p.coeffs):
            e = [0] * n
            e[i] = k
            out[tuple(e)] = c
        return cls(n, out)

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.n != self.n:
                raise ValueError("variable counts differ")
            return other
        return MPoly.const(self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return MPoly(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = exact(other)
            return MPoly(self.n, {k: v * c for k, v in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + v1 * v2
        return MPoly(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = MPoly.const(self.n, 1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.n == other.n and self.terms == other.terms
        return self == MPoly.const(self.n, other)

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=-1)

    def diff(self, i: int) -> "MPoly":
        out = {}
        for k, v in self.terms.items():
            if k[i]:
                e = list(k)
                e[i] -= 1
                out[tuple(e)] = v * k[i]
        return MPoly(self.n, out)

    def shift(self, i: int, c) -> "MPoly":
        """Substitute x_i -> x_i + c."""
        c = exact(c)
        out: dict = {}
        for k, v in self.terms.items():
            d = k[i]
            for j in range(d + 1):
                e = list(k)
                e[i] = j
                e = tuple(e)
                out[e] = out.get(e, 0) + v * comb(d, j) * c ** (d - j)
        return MPoly(self.n, out)

    def __call__(self, point: Sequence):
        acc = Fraction(0)
        for k, v in self.terms.items():
            term = v
            for x, e in zip(point, k):
                if e:
                    term = term * x**e
            acc = acc + term
        return acc

    def divide_difference(self, i: int, j: int) -> "MPoly":
        """Exact quotient by (x_i - x_j); raises if there is a remainder."""
        # write p = sum_d c_d x_i^d (c_d free of x_i); synthetic division gives
        # q_{d-1} = c_d + x_j q_d from the top degree down
        by_degree: dict[int, dict] = {}
        for k, v in self.terms.items():
            by_degree.setdefault(k[i], {})[k[:i] + (0,) + k[i + 1 :]] = v
        if not by_degree:
            return MPoly(self.n)
        xj = MPoly.var(self.n, j)
        carry = MPoly(self.n)
        quotient: dict = {}
        for d in range(max(by_degree), 0, -1):
            carry = MPoly(self.n, by_degree.get(d, {})) + xj * carry
            for k, v in carry.terms.items():
                e = k[:i] + (k[i] + d - 1,) + k[i + 1 :]
                quotient[e] = quotient.get(e, 0) + v
        if MPoly(self.n, by_degree.get(0, {})) + xj * carry:
            raise DomainError("polynomial is not divisible by the variable difference")
        return MPoly(self.n, quotient)

    def divide_vandermonde(self) -> "MPoly":
        out = self
        for a in range(self.n):
            for b in range(a + 1, self.n):
                out = out.divide_difference(a, b)
        return out

    def substitute(self, images: Sequence["MPoly"]) -> "MPoly":
        """Compose with polynomials for each variable (all in a common ring)."""
        target_n = images[0].n
        out = MPoly(target_n)
        powers: dict[tuple[int, int], MPoly] = {}
        for k, v in self.terms.items():
            term = MPoly.const(target_n, v)
            for i, e in enumerate(k):
                if e:
                    if (i, e) not in powers:
                        powers[(i, e)] = images[i] ** e
                    term = term * powers[(i, e)]
            out = out + term
        return out

    def is_symmetric(self) -> bool:
        return all(self.terms.get(pk, 0) == v for k, v in self.terms.items() for pk in set(permutations(k)))

    def __repr__(self):
        return f"MPoly({self.n}, {self.terms})"


def vandermonde_poly(n: int) -> MPoly:
    out = MPoly.const(n, 1)
    for i in range(n):
        for j in range(i + 1, n):
            out = out * (MPoly.var(n, i) - MPoly.var(n, j))
    return out


def complete_homogeneous(degree: int, xs: Sequence) -> Scalar:
    """h_degree(x_1, ..., x_r); zero for negative degree."""
    if degree < 0:
        return Fraction(0)
    # h_d over the first r variables, accumulated one variable at a time
    row = [Fraction(1)] + [Fraction(0)] * degree
    for x in xs:
        for d in range(1, degree + 1):
            row[d] = row[d] + x * row[d - 1]
    return row[degree] if xs else Fraction(int(degree == 0))


class SymPolyM:
    """Symmetric polynomial in ``m`` variables, in the monomial symmetric basis."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Mapping[tuple, Scalar] | None = None):
        self.m = m
        clean = {}
        for k, v in (terms or {}).items():
            k = tuple(k) + (0,) * (m - len(k))
            if len(k) != m or any(k[i] < k[i + 1] for i in range(m - 1)) or (k and k[-1] < 0):
                raise DomainError(f"{k} is not a partition with {m} parts")
            if v:
                clean[k] = clean.get(k, 0) + exact(v)
        self.terms = {k: v for k, v in sorted(clean.items()) if v}

    @classmethod
    def const(cls, m: int, c) -> "SymPolyM":
        return cls(m, {(0,) * m: c})

    @classmethod
    def elementary(cls, m: int, k: int) -> "SymPolyM":
        return cls(m, {(1,) * k + (0,) * (m - k): 1}) if k <= m else cls(m)

    def to_mpoly(self) -> MPoly:
        out = {}
        for k, v in self.terms.items():
            for perm in set(permutations(k)):
                out[perm] = v
        return MPoly(self.m, out)

    @classmethod
    def from_mpoly(cls, p: MPoly, check: bool = True) -> "SymPolyM":
        out = {k: v for k, v in p.terms.items() if all(k[i] >= k[i + 1] for i in range(p.n - 1))}
        sym = cls(p.n, out)
        if check and sym.to_mpoly() != p:
            raise DomainError("polynomial is not symmetric")
        return sym

    @property
    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=-1)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return SymPolyM(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return SymPolyM(self.m, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, SymPolyM):
            return SymPolyM.from_mpoly(self.to_mpoly() * other.to_mpoly(), check=False)
        c = exact(other)
        return SymPolyM(self.m, {k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def _coerce(self, other) -> "SymPolyM":
        if isinstance(other, SymPolyM):
            if other.m != self.m:
                raise ValueError("variable counts differ")
            return other
        return SymPolyM.const(self.m, other)

    def __eq__(self, other):
        if isinstance(other, SymPolyM):
            return self.m == other.m and self.terms == other.terms
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __call__(self, point: Sequence):
        return self.to_mpoly()(point)

    def to_json(self) -> list:
        return [{"exponents": list(k), "coeff": str(v)} for k, v in self.terms.items()]

    def __repr__(self):
        return f"SymPolyM({self.m}, {self.terms})"
