"""Evaluation at matrix tuples: oracle comparison, homomorphism axioms,
characteristic polynomials, eigenstructure profiles, deterministic
sampling, and the refutation witnesses."""

from fractions import Fraction

import pytest
import sympy

from ncequiv import (
    Matrix,
    MatrixTuple,
    NcPoly,
    char_poly,
    charpoly_refuter,
    evaluate,
    inner_rank_lower_bound,
    jordan_profile,
    norm_refuter,
    parse,
    parse_field,
    rank_refuter,
    sample_tuple,
    similarity_invariant_refuter,
    verify_witness,
)
from ncequiv.evaluation import degenerate_probes

from conftest import XY, random_poly, rng_for


@pytest.fixture(scope="module")
def QQ():
    return parse_field("Q")


def naive_evaluate(f, tup):
    """Oracle: multiply out every word letter by letter, no caching."""
    n = tup.size
    out = Matrix.zeros(tup.field, n, n)
    for word, c in f.terms.items():
        acc = Matrix.identity(tup.field, n)
        for letter in word:
            mat = tup.mats[abs(letter) - 1]
            if letter < 0:
                mat = mat.conj_transpose()
            acc = acc @ mat
        out = out + acc.scale(c)
    return out


def test_evaluate_matches_naive_oracle(QQ):
    rng = rng_for("eval-oracle")
    for case in range(25):
        f = random_poly(QQ, XY, rng, max_deg=4, nterms=5, starred=True)
        X = sample_tuple(QQ, 2, rng.randint(1, 3), seed=11, index=case)
        assert evaluate(f, X) == naive_evaluate(f, X)


def test_direct_sum_axiom(QQ):
    rng = rng_for("direct-sum")
    for case in range(25):
        f = random_poly(QQ, XY, rng, max_deg=3, nterms=4)
        X = sample_tuple(QQ, 2, 2, seed=5, index=2 * case)
        Y = sample_tuple(QQ, 2, 3, seed=5, index=2 * case + 1)
        Z = MatrixTuple(QQ, [a.direct_sum(b)
                             for a, b in zip(X.mats, Y.mats)])
        assert evaluate(f, Z) == evaluate(f, X).direct_sum(evaluate(f, Y))


def test_conjugation_axiom(QQ):
    rng = rng_for("conjugation")
    for case in range(25):
        f = random_poly(QQ, XY, rng, max_deg=3, nterms=4)
        X = sample_tuple(QQ, 2, 3, seed=7, index=case)
        while True:
            S = Matrix(QQ, [[QQ.scalar(rng.randint(-3, 3))
                             for _ in range(3)] for _ in range(3)])
            if S.is_invertible():
                break
        conj = MatrixTuple(QQ, [S @ m @ S.inverse() for m in X.mats])
        assert evaluate(f, conj) == S @ evaluate(f, X) @ S.inverse()


def test_char_poly_matches_sympy(QQ):
    rng = rng_for("charpoly-oracle")
    t = sympy.symbols("lam")
    for case in range(15):
        n = rng.randint(1, 4)
        M = Matrix(QQ, [[QQ.scalar(rng.randint(-3, 3)) for _ in range(n)]
                        for _ in range(n)])
        ours = char_poly(M)
        sym = sympy.Matrix([[sympy.Rational(e.as_fraction()) for e in row]
                            for row in M.rows]).charpoly(t)
        expected = [Fraction(str(c)) for c in
                    reversed(sym.all_coeffs())]
        got = [c.as_fraction() for c in ours.coeffs]
        assert got == expected


def test_jordan_profile_on_constructed_blocks(QQ):
    # one 2-block and one 1-block at eigenvalue 3, a 1-block at 0
    rows = [
        [3, 1, 0, 0],
        [0, 3, 0, 0],
        [0, 0, 3, 0],
        [0, 0, 0, 0],
    ]
    M = Matrix(QQ, [[QQ.scalar(e) for e in row] for row in rows])
    profile = jordan_profile(M)
    by_value = {ev["value"]: ev for ev in profile["eigenvalues"]}
    assert by_value["3"]["block_sizes"] == [2, 1]
    assert by_value["3"]["algebraic_multiplicity"] == 3
    assert by_value["0"]["block_sizes"] == [1]
    assert profile["residual_factor"] is None


def test_jordan_profile_invariant_under_conjugation(QQ):
    rng = rng_for("jordan-conj")
    for case in range(10):
        M = Matrix(QQ, [[QQ.scalar(rng.randint(-2, 2)) for _ in range(3)]
                        for _ in range(3)])
        while True:
            S = Matrix(QQ, [[QQ.scalar(rng.randint(-3, 3))
                             for _ in range(3)] for _ in range(3)])
            if S.is_invertible():
                break
        assert jordan_profile(M) == jordan_profile(S @ M @ S.inverse())


def test_sampling_is_deterministic(QQ):
    a = sample_tuple(QQ, 2, 3, seed=42, index=7)
    b = sample_tuple(QQ, 2, 3, seed=42, index=7)
    assert a.mats == b.mats
    c = sample_tuple(QQ, 2, 3, seed=42, index=8)
    d = sample_tuple(QQ, 2, 3, seed=43, index=7)
    assert a.mats != c.mats and a.mats != d.mats


def test_degenerate_probes_shapes(QQ):
    probes = list(degenerate_probes(QQ, 2, 3))
    assert probes, "the probe catalog must be nonempty"
    for X in probes:
        assert X.size == 3 and X.nvars == 2
        # the catalog exists to supply non-generic tuples
        assert any(m.rank() < 3 for m in X.mats)


def test_matrix_tuple_json_round_trip():
    FT = parse_field("Q(sqrt5)(xi: xi^2=29+13*sqrt5)")
    rng = rng_for("tuple-json")
    from conftest import random_scalar
    mats = [Matrix(FT, [[random_scalar(FT, rng) for _ in range(2)]
                        for _ in range(2)]) for _ in range(2)]
    tup = MatrixTuple(FT, mats)
    again = MatrixTuple.from_json(tup.to_json())
    assert again.field == FT and again.mats == tup.mats


def test_rank_refuter_separates_products(QQ):
    f = parse("x*y", vars=XY)
    g = parse("y*x", vars=XY)
    w = rank_refuter(f, g, seed=0, max_size=3, samples=20)
    assert w is not None and w.kind == "rank"
    assert verify_witness(f, g, w)
    # and ranks really differ at the tuple
    assert evaluate(f, w.tuple).rank() != evaluate(g, w.tuple).rank()


def test_rank_refuter_none_for_equal_polynomials(QQ):
    f = parse("x*y+1", vars=XY)
    assert rank_refuter(f, f, seed=0, max_size=3, samples=5) is None


def test_charpoly_refuter_on_nonisospectral_pair(QQ):
    f = parse("x*y*x*y+x*y+x", vars=XY)
    g = parse("x*y^2*x+x*y+x", vars=XY)
    w = charpoly_refuter(f, g, seed=0, max_size=3, samples=50)
    assert w is not None and w.kind == "char_poly"
    assert w.tuple.size <= 3
    assert verify_witness(f, g, w)


def test_similarity_refuter_sees_jordan_split(QQ):
    f = parse("x*y+1", vars=XY)
    g = parse("y*x+1", vars=XY)
    w = similarity_invariant_refuter(f, g, seed=0, max_size=3, samples=50)
    assert w is not None and w.kind in ("char_poly", "jordan")
    # x*y+1 and y*x+1 are isospectral, so only the finer invariant splits
    assert w.kind == "jordan"
    assert verify_witness(f, g, w)


def test_witness_tampering_is_detected(QQ):
    f = parse("x*y", vars=XY)
    g = parse("y*x", vars=XY)
    w = rank_refuter(f, g, seed=0, max_size=3, samples=20)
    assert verify_witness(f, g, w)
    assert not verify_witness(f, f, w)


def test_norm_refuter_finds_scale_gap(QQ):
    QI = parse_field("Q(i)")
    f = parse("x*y+1", field=QI, vars=XY)
    g = parse("2*x*y+2", field=QI, vars=XY)
    w = norm_refuter(f, g, seed=0, max_size=2, samples=10, tol=1e-4)
    assert w is not None and w.kind == "norm"
    gap = w.details["operator_norm_gap"]
    scale = w.details["relative_scale_operator"]
    assert gap / scale > 1e-4
    assert verify_witness(f, g, w)


def test_norm_refuter_silent_on_unimodular_scaling():
    QI = parse_field("Q(i)")
    f = parse("x*y+x", field=QI, vars=XY)
    g = parse("i*x*y+i*x", field=QI, vars=XY)
    assert norm_refuter(f, g, seed=0, max_size=2, samples=6) is None


def test_inner_rank_lower_bound_detects_nonzero(QQ):
    # a single polynomial is a 1x1 matrix over the free algebra, so its
    # inner rank is 1 exactly when it is nonzero as a matrix function
    f = parse("x*y-y*x", vars=XY)
    best, best_at = inner_rank_lower_bound(f, seed=0, max_size=3, samples=6)
    assert best == 1 and best_at is not None
    zero = NcPoly.zero(QQ, XY)
    best, best_at = inner_rank_lower_bound(zero, seed=0, max_size=2,
                                           samples=3)
    assert best == 0 and best_at is None
