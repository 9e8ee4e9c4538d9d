"""Shared fixtures and deterministic random generators for the test suite."""

import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from ncequiv import NcPoly, parse_field

settings.register_profile(
    "suite",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

XY = ("x", "y")


@pytest.fixture(scope="session")
def QQ():
    return parse_field("Q")


@pytest.fixture(scope="session")
def QI():
    return parse_field("Q(i)")


@pytest.fixture(scope="session")
def ROOT5():
    return parse_field("Q(sqrt5)")


@pytest.fixture(scope="session")
def TOWER():
    return parse_field("Q(sqrt5)(xi: xi^2=29+13*sqrt5)")


def random_scalar(field, rng, bound=4, denominators=(1, 1, 1, 2, 3)):
    """A random element with small numerators over every basis generator."""
    out = field.zero()
    names = [None] + list(field.generator_names)
    for name in names:
        num = rng.randint(-bound, bound)
        if num == 0:
            continue
        part = field.scalar(Fraction(num, rng.choice(denominators)))
        if name is not None:
            part = part * field.generator(name)
        out = out + part
    return out


def random_word(rng, nvars, max_len, starred=False):
    length = rng.randint(0, max_len)
    letters = []
    for _ in range(length):
        j = rng.randint(1, nvars)
        if starred and rng.random() < 0.3:
            j = -j
        letters.append(j)
    return tuple(letters)


def random_poly(field, vars, rng, max_deg=3, nterms=4, bound=3,
                starred=False):
    """A random polynomial with a few small-coefficient terms."""
    terms = {}
    for _ in range(rng.randint(1, nterms)):
        w = random_word(rng, len(vars), max_deg, starred=starred)
        c = field.scalar(rng.randint(-bound, bound))
        if not c.is_zero():
            terms[w] = terms.get(w, field.zero()) + c
    terms = {w: c for w, c in terms.items() if not c.is_zero()}
    if not terms:
        terms = {(): field.one()}
    return NcPoly(field, vars, terms)


def rng_for(name, case=0):
    """A deterministic generator namespaced by test name and case index."""
    return random.Random("tests:%s:%d" % (name, case))
