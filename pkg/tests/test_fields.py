"""Exact scalar towers: field axioms, conjugation, square roots, and the
string round-trip that every JSON report relies on."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncequiv import FieldMismatchError, parse_field, parse_scalar

from conftest import random_scalar, rng_for

fractions = st.fractions(
    min_value=-20, max_value=20, max_denominator=12)


@pytest.fixture(scope="module")
def fields():
    return [
        parse_field("Q"),
        parse_field("Q(i)"),
        parse_field("Q(sqrt5)"),
        parse_field("Q(sqrt5)(xi: xi^2=29+13*sqrt5)"),
    ]


@given(a=fractions, b=fractions)
def test_rational_arithmetic_matches_fraction(a, b):
    F = parse_field("Q")
    sa, sb = F.scalar(a), F.scalar(b)
    assert (sa + sb).as_fraction() == a + b
    assert (sa * sb).as_fraction() == a * b
    assert (sa - sb).as_fraction() == a - b
    if b != 0:
        assert (sa / sb).as_fraction() == Fraction(a, 1) / b


@given(a=fractions, b=fractions, c=fractions, d=fractions)
def test_gaussian_arithmetic_matches_complex_fractions(a, b, c, d):
    F = parse_field("Q(i)")
    i = F.generator("i")
    z = F.scalar(a) + F.scalar(b) * i
    w = F.scalar(c) + F.scalar(d) * i
    prod = z * w
    assert prod == F.scalar(a * c - b * d) + F.scalar(a * d + b * c) * i
    assert z.conjugate() == F.scalar(a) - F.scalar(b) * i
    norm = z * z.conjugate()
    assert norm.as_fraction() == a * a + b * b


def test_field_axioms_on_random_tower_elements(fields):
    for F in fields:
        rng = rng_for("field-axioms:" + F.spec)
        for case in range(40):
            a = random_scalar(F, rng)
            b = random_scalar(F, rng)
            c = random_scalar(F, rng)
            assert a + b == b + a
            assert (a + b) + c == a + (b + c)
            assert a * (b + c) == a * b + a * c
            assert (a * b) * c == a * (b * c)
            if not a.is_zero():
                inv = a.inverse()
                assert a * inv == F.one()
            assert (a * b).conjugate() == a.conjugate() * b.conjugate()


def test_generator_squares():
    F5 = parse_field("Q(sqrt5)")
    r5 = F5.generator("sqrt5")
    assert r5 * r5 == F5.scalar(5)

    FT = parse_field("Q(sqrt5)(xi: xi^2=29+13*sqrt5)")
    xi = FT.generator("xi")
    r5 = FT.generator("sqrt5")
    assert xi * xi == FT.scalar(29) + FT.scalar(13) * r5

    FI = parse_field("Q(i)")
    i = FI.generator("i")
    assert i * i == FI.scalar(-1)


def test_conjugation_fixes_real_generators_and_flips_i():
    FI = parse_field("Q(i)")
    i = FI.generator("i")
    assert i.conjugate() == -i
    F5 = parse_field("Q(sqrt5)")
    r5 = F5.generator("sqrt5")
    assert r5.conjugate() == r5


def test_scalar_string_round_trip(fields):
    for F in fields:
        rng = rng_for("round-trip:" + F.spec)
        for case in range(60):
            a = random_scalar(F, rng)
            assert parse_scalar(str(a), F) == a


def test_square_roots_in_tower():
    F = parse_field("Q(sqrt5)")
    s = F.sqrt(F.scalar(Fraction(9, 4)))
    assert s is not None and s * s == F.scalar(Fraction(9, 4))
    s = F.sqrt(F.scalar(5))
    assert s is not None and s * s == F.scalar(5)
    assert F.sqrt(F.scalar(2)) is None


def test_mixed_field_operations_rejected():
    FQ = parse_field("Q")
    FI = parse_field("Q(i)")
    with pytest.raises(FieldMismatchError):
        FQ.one() + FI.one()


def test_field_spec_round_trip(fields):
    for F in fields:
        assert parse_field(F.spec) == F
