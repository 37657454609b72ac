import pickle
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gtring.scalars import GaussianRational, exact, imag_part, is_real, parse_scalar, real_part

rationals = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 20))
gaussians = st.builds(GaussianRational, rationals, rationals)


def test_zero_imaginary_part_collapses_to_fraction():
    assert GaussianRational(Fraction(1, 2), 0) == Fraction(1, 2)
    assert type(GaussianRational(3, 0)) is Fraction


def test_conjugate_product_is_real():
    z = GaussianRational(Fraction(1, 2), 1)
    assert z * z.conjugate() == Fraction(5, 4)
    assert is_real(z * z.conjugate())


def test_division_by_gaussian():
    z = GaussianRational(1, 1)
    assert 2 / z == GaussianRational(1, -1)
    assert z / z == 1


@pytest.mark.parametrize(
    "text, expected",
    [
        ("3/4", Fraction(3, 4)),
        ("0.5", Fraction(1, 2)),
        ("-2", Fraction(-2)),
        ("1/2+3/4i", GaussianRational(Fraction(1, 2), Fraction(3, 4))),
        ("1/2 - i", GaussianRational(Fraction(1, 2), -1)),
        ("-i", GaussianRational(0, -1)),
        ("2/3i", GaussianRational(0, Fraction(2, 3))),
    ],
)
def test_parse_scalar(text, expected):
    assert parse_scalar(text) == expected


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_scalar("abc")


def test_exact_coercions():
    assert exact("1/3") == Fraction(1, 3)
    assert exact(2) == Fraction(2)
    assert exact(complex(1, 2)) == GaussianRational(1, 2)
    with pytest.raises(TypeError):
        exact(object())


def test_pickle_round_trip():
    z = GaussianRational(Fraction(1, 3), Fraction(-2, 5))
    assert pickle.loads(pickle.dumps(z)) == z


def test_str_round_trips_through_parser():
    for z in (GaussianRational(Fraction(1, 2), 1), GaussianRational(0, Fraction(-2, 3)), GaussianRational(-1, 5)):
        assert parse_scalar(str(z)) == z


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if b != 0:
        assert (a / b) * b == a


@given(gaussians)
def test_parts(a):
    assert GaussianRational(real_part(a), imag_part(a)) == a
    assert real_part(a.conjugate() if not is_real(a) else a) == real_part(a)
