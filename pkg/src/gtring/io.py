"""JSON and CSV encodings of the library's value types."""

from __future__ import annotations

import csv
from fractions import Fraction
from typing import IO, Iterable, Sequence

from .ring import RingElement
from .scalars import GaussianRational, Scalar, imag_part, real_part
from .signatures import DomainError

__all__ = [
    "scalar_to_json",
    "scalar_from_json",
    "element_to_json",
    "element_from_json",
    "fraction_str",
    "write_trajectories_csv",
    "write_link_csv",
]


def fraction_str(x) -> str:
    if isinstance(x, GaussianRational):
        return str(x)
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def scalar_to_json(x: Scalar) -> dict:
    re, im = real_part(x), imag_part(x)
    return {"num": str(re.numerator), "den": str(re.denominator), "inum": str(im.numerator), "iden": str(im.denominator)}


def scalar_from_json(obj) -> Scalar:
    if isinstance(obj, (int, str)):
        return Fraction(obj)
    re = Fraction(int(obj["num"]), int(obj.get("den", 1)))
    im = Fraction(int(obj.get("inum", 0)), int(obj.get("iden", 1)))
    return GaussianRational(re, im)


def element_to_json(e: RingElement) -> dict:
    terms = []
    for sig, c in e.terms.items():
        if isinstance(c, GaussianRational):
            raise DomainError("the element schema carries rational coefficients only")
        c = Fraction(c)
        terms.append({"sig": list(sig), "num": str(c.numerator), "den": str(c.denominator)})
    return {"basis": e.basis, "terms": terms}


def element_from_json(obj: dict) -> RingElement:
    return RingElement(
        obj["basis"], {tuple(t["sig"]): Fraction(int(t["num"]), int(t["den"])) for t in obj["terms"]}
    )


def write_trajectories_csv(
    stream: IO[str],
    header: dict,
    N: int,
    trajectories: Iterable[tuple[int, Sequence[float], Sequence[Sequence[int]]]],
) -> None:
    """One row per visited state: trajectory index, jump time, then nu_1..nu_N."""
    stream.write("# " + " ".join(f"{k}={v}" for k, v in header.items()) + "\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["trajectory", "time"] + [f"nu_{i}" for i in range(1, N + 1)])
    for index, times, states in trajectories:
        for t, state in zip(times, states):
            writer.writerow([index, repr(float(t))] + [int(x) for x in state])


def write_link_csv(stream: IO[str], row: dict) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["lambda", "value"])
    for sig, value in row.items():
        writer.writerow([" ".join(str(x) for x in sig), fraction_str(value) if not isinstance(value, float) else repr(value)])
