"""Equivalence deciders: intertwiner spaces, isospectrality, chains of
elementary steps, stable association, pointwise similarity, and norm
equivalence."""

import pytest

from ncequiv import (
    NcPoly,
    decompose,
    elementary_intertwined,
    intertwiner_space,
    intertwining_chain,
    is_isospectral,
    minimal_intertwiner,
    noncommutativity_witness,
    norm_equivalent,
    parse,
    parse_field,
    pointwise_similar,
    stable_association,
    verify_witness,
)

from conftest import XY, random_poly, rng_for


@pytest.fixture(scope="module")
def QQ():
    return parse_field("Q")


@pytest.fixture(scope="module")
def QI():
    return parse_field("Q(i)")


def P(text, field=None):
    if field is None:
        field = parse_field("Q")
    return parse(text, field=field, vars=XY)


# ---------------------------------------------------------------- intertwiners


def test_intertwiner_space_golden(QQ):
    # f*a = a*g with f = x*y+1, g = y*x+1 is solved by a = x
    space = intertwiner_space(P("x*y+1"), P("y*x+1"), 1)
    assert len(space) == 1
    a = list(space)[0]
    assert P("x*y+1") * a == a * P("y*x+1")
    assert a.scale_to_monic() == P("x")


def test_intertwiner_space_empty_for_unrelated(QQ):
    space = intertwiner_space(P("x"), P("y"), 2)
    assert len(space) == 0


def test_intertwiner_space_of_equal_contains_one(QQ):
    f = P("x*y*x+x+1")
    space = intertwiner_space(f, f, 0)
    assert len(space) == 1
    assert list(space)[0].scale_to_monic() == NcPoly.one(QQ, XY)


def test_intertwiner_elements_all_intertwine(QQ):
    rng = rng_for("intertwine-membership")
    for case in range(10):
        a = random_poly(QQ, XY, rng, max_deg=2, nterms=3)
        b = random_poly(QQ, XY, rng, max_deg=2, nterms=3)
        lam = QQ.scalar(rng.randint(1, 4))
        f = NcPoly.constant(QQ, XY, lam) + a * b
        g = NcPoly.constant(QQ, XY, lam) + b * a
        space = intertwiner_space(f, g, max(a.degree() or 0, 1))
        # a itself solves f*a = a*g, so the space is nonzero whenever a is
        if not a.is_zero():
            assert len(space) >= 1
        for c in space:
            assert f * c == c * g


def test_minimal_intertwiner_degree(QQ):
    a = minimal_intertwiner(P("x*y+1"), P("y*x+1"), 3)
    assert a is not None
    assert a.degree() == 1
    assert a == P("x")
    assert minimal_intertwiner(P("x"), P("y"), 3) is None


# ---------------------------------------------------------------- decompose


def test_decompose_recovers_composition(QQ):
    rng = rng_for("decompose")
    for case in range(10):
        core = random_poly(QQ, XY, rng, max_deg=2, nterms=3)
        core = core - NcPoly.constant(QQ, XY, core.constant_term())
        if core.degree() in (None, 0):
            continue
        core = core.scale_to_monic()
        # outer polynomial t^2 + c1 t + c0 composed with the core
        c0 = QQ.scalar(rng.randint(-3, 3))
        c1 = QQ.scalar(rng.randint(-3, 3))
        f = core * core + core * c1 + NcPoly.constant(QQ, XY, c0)
        d = decompose(f)
        rebuilt = d.outer.eval_poly(d.core)
        assert rebuilt == f
        # the core must not itself decompose further through a smaller
        # pattern: its degree divides the degree of f
        assert f.degree() % d.core.degree() == 0


def test_decompose_of_primitive_is_identity(QQ):
    f = P("x*y+x")
    d = decompose(f)
    assert d.core == f.scale_to_monic() - NcPoly.constant(
        QQ, XY, f.scale_to_monic().constant_term())
    assert d.outer.eval_poly(d.core) == f


# ---------------------------------------------------------------- isospectral


def test_isospectral_golden_positive(QQ):
    out = is_isospectral(P("x*y+1"), P("y*x+1"))
    assert out["isospectral"] is True
    a = out["intertwiner"]
    assert a is not None
    assert P("x*y+1") * a == a * P("y*x+1")


def test_isospectral_golden_negative(QQ):
    f = P("x*y*x*y+x*y+x")
    g = P("x*y^2*x+x*y+x")
    out = is_isospectral(f, g, seed=0, max_size=3, samples=50)
    assert out["isospectral"] is False
    w = out["witness"]
    assert w is not None
    assert verify_witness(f, g, w)


def test_isospectral_random_products(QQ):
    rng = rng_for("isospectral-products")
    for case in range(8):
        a = random_poly(QQ, XY, rng, max_deg=2, nterms=2)
        b = random_poly(QQ, XY, rng, max_deg=2, nterms=2)
        if (a * b).is_constant():
            continue
        lam = QQ.scalar(rng.randint(1, 3))
        f = NcPoly.constant(QQ, XY, lam) + a * b
        g = NcPoly.constant(QQ, XY, lam) + b * a
        out = is_isospectral(f, g)
        assert out["isospectral"] is True


def test_isospectral_reflexive(QQ):
    f = P("x*y*x+x+2")
    out = is_isospectral(f, f)
    assert out["isospectral"] is True


def test_isospectral_respects_outer_composition(QQ):
    # t^2+1 composed with intertwined cores stays isospectral
    f = P("x*y") * P("x*y") + NcPoly.one(QQ, XY)
    g = P("y*x") * P("y*x") + NcPoly.one(QQ, XY)
    out = is_isospectral(f, g)
    assert out["isospectral"] is True


# ---------------------------------------------------------------- chains


def test_elementary_intertwined_direct_pair(QQ):
    step = elementary_intertwined(P("x*y+1"), P("y*x+1"))
    assert step is not None
    assert step.source == P("x*y+1")
    assert step.target == P("y*x+1")
    assert step.shift + step.left * step.right == step.source
    assert step.shift + step.right * step.left == step.target


def test_elementary_intertwined_none_for_distinct_spectra(QQ):
    assert elementary_intertwined(P("x"), P("x+1")) is None


def test_chain_trivial_for_equal(QQ):
    f = P("x*y*x+1")
    out = intertwining_chain(f, f)
    assert out["found"] is True
    assert out["steps"] == []


def test_chain_single_step(QQ):
    out = intertwining_chain(P("x*y+1"), P("y*x+1"))
    assert out["found"] is True
    assert len(out["steps"]) == 1
    st = out["steps"][0]
    assert st.source == P("x*y+1")
    assert st.target == P("y*x+1")


def test_chain_two_steps_product_of_linear(QQ):
    # p(x) = (x-1)(x-2); p*y+x needs two swaps to become y*p+x
    p = (P("x") - NcPoly.one(QQ, XY)) * (P("x") - P("2"))
    f = p * P("y") + P("x")
    g = P("y") * p + P("x")
    out = intertwining_chain(f, g)
    assert out["found"] is True
    assert len(out["steps"]) == 2
    # adjacency: each step's target is the next step's source
    assert out["steps"][0].source == f
    assert out["steps"][0].target == out["steps"][1].source
    assert out["steps"][1].target == g


def test_chain_refuted_on_spectral_mismatch(QQ):
    f = P("x*y*x*y+x*y+x")
    g = P("x*y^2*x+x*y+x")
    out = intertwining_chain(f, g)
    assert out["found"] is False
    assert out["reason"].startswith("no intertwiner exists:")


# ---------------------------------------------------------------- association


def test_stable_association_golden(QQ):
    f = P("x*y*x*y+x*y+x")
    g = P("x*y^2*x+x*y+x")
    out = stable_association(f, g)
    assert out["verdict"] == "associated"
    cert = out["certificate"]
    a = cert["right_multiplier"]
    b = cert["left_multiplier"]
    assert f * a == b * g
    u, v = cert["comax_right"]
    assert f * u + b * v == NcPoly.one(QQ, XY)
    u, v = cert["comax_left"]
    assert u * a + v * g == NcPoly.one(QQ, XY)


def test_stable_association_random_family(QQ):
    rng = rng_for("assoc-family")
    confirmed = tried = 0
    while tried < 8:
        a = random_poly(QQ, XY, rng, max_deg=2, nterms=2)
        b = random_poly(QQ, XY, rng, max_deg=2, nterms=2)
        if a.is_constant() or b.is_constant():
            continue
        tried += 1
        lam = QQ.scalar(rng.randint(1, 3))
        f = NcPoly.constant(QQ, XY, lam) + a * b
        g = NcPoly.constant(QQ, XY, lam) + b * a
        out = stable_association(f, g, samples=20, max_size=4)
        assert out["verdict"] != "not_associated"
        if out["verdict"] == "associated":
            confirmed += 1
            cert = out["certificate"]
            assert f * cert["right_multiplier"] == cert["left_multiplier"] * g
    assert confirmed >= 6


def test_stable_association_refuted(QQ):
    out = stable_association(P("x*y"), P("y*x"))
    assert out["verdict"] == "not_associated"
    w = out["witness"]
    assert w is not None
    assert verify_witness(P("x*y"), P("y*x"), w)


def test_stable_association_reflexive(QQ):
    f = P("x*y*x+x")
    out = stable_association(f, f)
    assert out["verdict"] == "associated"


# ---------------------------------------------------------------- similarity


def test_pointwise_similar_iff_equal(QQ):
    f = P("x*y+1")
    assert pointwise_similar(f, f)["similar"] is True
    out = pointwise_similar(P("x*y+1"), P("y*x+1"))
    assert out["similar"] is False
    w = out["witness"]
    if w is not None:
        assert verify_witness(P("x*y+1"), P("y*x+1"), w)


def test_pointwise_similar_random(QQ):
    rng = rng_for("pointwise")
    for case in range(10):
        f = random_poly(QQ, XY, rng, max_deg=2, nterms=3)
        g = random_poly(QQ, XY, rng, max_deg=2, nterms=3)
        out = pointwise_similar(f, g)
        assert out["similar"] is (f == g)


# ---------------------------------------------------------------- norms


def test_norm_equivalent_unimodular_scalings(QI):
    f = parse("x*y+i*x+1", field=QI, vars=XY)
    for zeta_text in ("1", "-1", "i", "-i"):
        zeta = QI.scalar(0) + parse(zeta_text, field=QI, vars=XY)\
            .constant_term()
        out = norm_equivalent(f, f * zeta)
        assert out["equivalent"] is True
        assert out["scalar"] is not None
        assert f * out["scalar"] == f * zeta


def test_norm_equivalent_star_scaling_detected(QQ):
    f = P("x*y+x")
    out = norm_equivalent(f, f - f - f)   # -f
    assert out["equivalent"] is True


def test_norm_not_equivalent(QQ):
    f = P("x*y+x")
    g = P("x*y+x") + P("x*y+x")   # 2f: not unimodular
    out = norm_equivalent(f, g)
    assert out["equivalent"] is False
    w = out["witness"]
    assert w is not None
    assert verify_witness(f, g, w)


def test_norm_not_equivalent_different_shape(QQ):
    out = norm_equivalent(P("x*y"), P("y*x+1"))
    assert out["equivalent"] is False


def test_norm_equivalent_requires_embeddable_field():
    F = parse_field("Q(sqrt5)")
    f = parse("x+sqrt5", field=F, vars=XY)
    with pytest.raises(ValueError):
        norm_equivalent(f, f)


# -------------------------------------------------------- noncommutativity


def test_noncommutativity_witness_for_free_variables(QQ):
    from ncequiv import evaluate
    out = noncommutativity_witness(P("x"), P("y"))
    assert out is not None
    tup, k = out
    AB = evaluate(P("x*y"), tup)
    BA = evaluate(P("y*x"), tup)
    assert (AB ** k).rank() != (BA ** k).rank()


def test_noncommutativity_witness_none_for_commuting(QQ):
    assert noncommutativity_witness(P("x"), P("x^2+1")) is None


def test_noncommutativity_witness_candidates_path(QQ):
    from ncequiv import MatrixTuple
    F = parse_field("Q")
    X = MatrixTuple.from_json({
        "field": "Q", "size": 2,
        "matrices": [[["1", "0"], ["0", "0"]], [["0", "1"], ["-1", "0"]]],
    })
    out = noncommutativity_witness(P("x"), P("y"), candidates=(X,))
    assert out is not None
