"""Free *-algebra arithmetic checked against a brute-force term-map oracle,
plus ring axioms as properties and the univariate helper polynomial."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncequiv import NcPoly, UniPoly, parse_field

from conftest import XY, random_poly, rng_for


def brute_multiply(f, g):
    """Oracle: multiply term maps directly by word concatenation."""
    field = f.field
    out = {}
    for w1, c1 in f.terms.items():
        for w2, c2 in g.terms.items():
            w = w1 + w2
            out[w] = out.get(w, field.zero()) + c1 * c2
    out = {w: c for w, c in out.items() if not c.is_zero()}
    return NcPoly(field, f.vars, out)


def brute_star(f):
    """Oracle: reverse each word, negate letters, conjugate coefficients."""
    field = f.field
    out = {}
    for w, c in f.terms.items():
        rev = tuple(-letter for letter in reversed(w))
        out[rev] = c.conjugate()
    return NcPoly(field, f.vars, out)


@pytest.fixture(scope="module")
def QQ():
    return parse_field("Q")


@pytest.fixture(scope="module")
def QI():
    return parse_field("Q(i)")


def test_multiplication_matches_brute_force(QQ):
    rng = rng_for("ncpoly-mul")
    for case in range(60):
        f = random_poly(QQ, XY, rng, max_deg=3, nterms=4)
        g = random_poly(QQ, XY, rng, max_deg=3, nterms=4)
        assert f * g == brute_multiply(f, g)


def test_star_matches_brute_force_and_is_an_involution(QI):
    rng = rng_for("ncpoly-star")
    for case in range(60):
        f = random_poly(QI, XY, rng, max_deg=3, nterms=4, starred=True)
        g = random_poly(QI, XY, rng, max_deg=2, nterms=3, starred=True)
        assert f.star() == brute_star(f)
        assert f.star().star() == f
        assert (f * g).star() == g.star() * f.star()
        assert (f + g).star() == f.star() + g.star()


def small_polys(field_spec="Q"):
    field = parse_field(field_spec)

    def build(seed):
        return random_poly(field, XY, rng_for("hyp-poly", seed),
                           max_deg=3, nterms=4)

    return st.integers(min_value=0, max_value=10_000).map(build)


@given(f=small_polys(), g=small_polys(), h=small_polys())
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert (f + g) + h == f + (g + h)
    assert f * (g + h) == f * g + f * h
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)
    one = NcPoly.one(f.field, f.vars)
    assert f * one == f and one * f == f
    assert f - f == NcPoly.zero(f.field, f.vars)


@given(f=small_polys(), g=small_polys())
def test_degree_of_product_adds(f, g):
    assert not f.is_zero() and not g.is_zero()
    assert (f * g).degree() == f.degree() + g.degree()


def test_degree_and_leading_data(QQ):
    f = NcPoly.variable(QQ, XY, 1) * NcPoly.variable(QQ, XY, 2) \
        + NcPoly.one(QQ, XY)
    assert f.degree() == 2
    assert f.leading_word() == (1, 2)
    assert f.leading_coeff() == QQ.one()
    assert NcPoly.zero(QQ, XY).degree() is None
    assert NcPoly.constant(QQ, XY, QQ.scalar(7)).degree() == 0


def test_graded_lex_leading_word(QQ):
    x = NcPoly.variable(QQ, XY, 1)
    y = NcPoly.variable(QQ, XY, 2)
    f = x * y + y * x
    assert f.leading_word() == (2, 1)
    g = x * x * x + y * y
    assert g.leading_word() == (1, 1, 1)


def test_homogeneous_parts_recombine(QQ):
    rng = rng_for("homog-parts")
    for case in range(30):
        f = random_poly(QQ, XY, rng, max_deg=4, nterms=6)
        total = NcPoly.zero(QQ, XY)
        for d in range((f.degree() or 0) + 1):
            part = f.homogeneous_part(d)
            assert part.is_zero() or part.is_homogeneous()
            total = total + part
        assert total == f


def test_scalar_coercion_in_products(QQ):
    x = NcPoly.variable(QQ, XY, 1)
    assert 2 * x == x + x
    assert x * Fraction(1, 2) + x * Fraction(1, 2) == x
    assert (x * 0).is_zero()


def test_unipoly_divmod_reconstructs(QQ):
    rng = rng_for("unipoly-divmod")
    for case in range(40):
        a = UniPoly(QQ, [QQ.scalar(rng.randint(-4, 4))
                         for _ in range(rng.randint(1, 6))])
        b = UniPoly(QQ, [QQ.scalar(rng.randint(-4, 4))
                         for _ in range(rng.randint(1, 4))])
        if b.is_zero():
            continue
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.is_zero() or r.degree() < b.degree()


def test_unipoly_horner_composition(QQ):
    t2 = UniPoly(QQ, [QQ.scalar(1), QQ.scalar(3), QQ.scalar(1)])
    x = NcPoly.variable(QQ, XY, 1)
    y = NcPoly.variable(QQ, XY, 2)
    core = x * y + y
    assert t2.eval_poly(core) == core * core + core * 3 + 1

    value = t2.eval_scalar(QQ.scalar(Fraction(1, 2)))
    assert value == QQ.scalar(Fraction(1, 4) + Fraction(3, 2) + 1)
