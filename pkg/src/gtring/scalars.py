"""Exact scalars: rationals, extended to Gaussian rationals when needed.

Real values are always kept as :class:`fractions.Fraction`; a
:class:`GaussianRational` only appears when the imaginary part is nonzero,
and every operation collapses back to a ``Fraction`` as soon as it can.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = ["GaussianRational", "Scalar", "exact", "parse_scalar", "is_real", "real_part", "imag_part"]


class GaussianRational:
    """A complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __new__(cls, re: Rational | int, im: Rational | int = 0):
        re, im = Fraction(re), Fraction(im)
        if im == 0:
            return re
        obj = super().__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @staticmethod
    def _split(x):
        if isinstance(x, GaussianRational):
            return x.re, x.im
        if isinstance(x, (int, Fraction)):
            return Fraction(x), Fraction(0)
        return None

    def __add__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o[0], self.im + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o[0], self.im - o[1])

    def __rsub__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o[0] - self.re, o[1] - self.im)

    def __mul__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = o
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        c, d = o
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("division by zero")
        a, b = self.re, self.im
        return GaussianRational((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        return GaussianRational(*o) * self.conjugate() / self.abs_squared()

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1 / (self ** -n)
        out: Scalar = Fraction(1)
        base: Scalar = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def abs_squared(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __eq__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        return self.re == o[0] and self.im == o[1]

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return True  # zero imaginary parts never survive construction

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        sign = "+" if self.im > 0 else "-"
        im = abs(self.im)
        im_s = "" if im == 1 else f"{im}"
        if self.re == 0:
            return f"{'-' if sign == '-' else ''}{im_s}i"
        return f"{self.re}{sign}{im_s}i"


Scalar = Union[Fraction, GaussianRational]


def exact(x) -> Scalar:
    """Coerce ints, Fractions, Gaussian rationals and strings to an exact scalar."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, complex):
        return GaussianRational(Fraction(x.real), Fraction(x.imag))
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p/q"``, ``"0.5"``, ``"p/q+r/s i"`` or ``"-i"`` into an exact scalar."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    if not s.endswith(("i", "j")):
        return Fraction(s)
    body = s[:-1]
    # split at the last sign that is not the leading one
    cut = max(body.rfind("+", 1), body.rfind("-", 1))
    if cut <= 0:
        re_part, im_part = "0", body
    else:
        re_part, im_part = body[:cut], body[cut:]
    im_part = im_part.rstrip("*")
    if im_part in ("", "+"):
        im_part = "1"
    elif im_part == "-":
        im_part = "-1"
    try:
        return GaussianRational(Fraction(re_part), Fraction(im_part))
    except ValueError as exc:
        raise ValueError(f"cannot parse scalar {text!r}") from exc


def is_real(x: Scalar) -> bool:
    return not isinstance(x, GaussianRational)


def real_part(x: Scalar) -> Fraction:
    return x.re if isinstance(x, GaussianRational) else Fraction(x)


def imag_part(x: Scalar) -> Fraction:
    return x.im if isinstance(x, GaussianRational) else Fraction(0)
