"""Golden regression corpus.

A fixed set of worked examples with known exact outcomes: paired 2x2
evaluations separating the equivalence notions, displayed intertwining
relations, a rank split between squares, eigenvalue-guided chains with their
minimal intertwiner degrees, a reversed product pair that is stably
associated without being equal, and a projector/shift evaluation pair.

Every item is exact — any mismatch is a hard failure.  Items are independent
and carry derived seeds, so the runner may execute them in parallel without
changing any result.
"""

from __future__ import annotations

import hashlib
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .equiv import intertwiner_space, intertwining_chain, stable_association
from .evaluation import MatrixTuple, evaluate, jordan_profile, sample_tuple
from .fields import Field
from .linalg import Matrix
from .ncpoly import NcPoly
from .parsing import parse, parse_field, parse_scalar, pretty

_XY = ("x", "y")


def _derived_seed(seed, name):
    digest = hashlib.sha256(("corpus:%s:%s" % (seed, name)).encode()).digest()
    return int.from_bytes(digest[:4], "big")


def _q(text):
    return parse(text, Field.rationals(), _XY)


def _mat(field, rows):
    return Matrix(field, [[parse_scalar(str(e), field) for e in row]
                          for row in rows])


def scalar_multiple(p, q):
    """The scalar c with p == q*c, or None when p is not a multiple of q."""
    if q.is_zero():
        return p.field.one() if p.is_zero() else None
    if p.is_zero() or set(p.terms) != set(q.terms):
        return None
    w = p.leading_word()
    c = p.terms[w] * q.terms[w].inverse()
    return c if p == q * c else None


# ---------------------------------------------------------------------------
# the six paired 2x2 evaluations and their intertwining relations


def _pair_data():
    field = Field.rationals()
    x_e11 = _mat(field, [[1, 0], [0, 0]])
    y_e12 = _mat(field, [[0, 1], [0, 0]])
    y_swap = _mat(field, [[0, 1], [1, 0]])
    return field, [
        ("x*y+1", "y*x+1", (x_e11, y_e12),
         [[1, 1], [0, 1]], [[1, 0], [0, 1]]),
        ("x*y", "y*x", (x_e11, y_e12),
         [[0, 1], [0, 0]], [[0, 0], [0, 0]]),
        ("x*y*x*y+x*y+x", "x*y^2*x+x*y+x", (x_e11, y_swap),
         [[1, 1], [0, 0]], [[2, 1], [0, 0]]),
    ]


def check_paired_evaluations():
    field, data = _pair_data()
    checks = []
    for k, (ftext, gtext, (X, Y), fval, gval) in enumerate(data, start=1):
        tup = MatrixTuple(field, (X, Y))
        got_f = evaluate(_q(ftext), tup)
        got_g = evaluate(_q(gtext), tup)
        checks.append(("pair %d first value" % k, got_f == _mat(field, fval)))
        checks.append(("pair %d second value" % k, got_g == _mat(field, gval)))
    return checks


def check_intertwining_relations():
    x = _q("x")
    checks = []
    for k, (ftext, gtext, a) in enumerate(
            [("x*y+1", "y*x+1", x),
             ("x*y", "y*x", x),
             ("x*y*x*y+x*y+x", "x*y^2*x+x*y+x", _q("y*x+1"))], start=1):
        f, g = _q(ftext), _q(gtext)
        if k < 3:
            checks.append(("relation %d: f*a == a*g" % k, f * a == a * g))
        else:
            checks.append(("relation %d: f*(yx+1) == (xy+1)*g" % k,
                           f * a == _q("x*y+1") * g))
    return checks


# ---------------------------------------------------------------------------
# squares with different rank behaviour at one degenerate 2x2 tuple


def check_squared_rank_split():
    field = Field.rationals()
    f = _q("x*y*x*y+x*y+x")
    g = _q("x*y^2*x+x*y+x")
    tup = MatrixTuple(field, (_mat(field, [[1, 0], [0, 0]]),
                              _mat(field, [[0, 1], [-1, 0]])))
    Mf = evaluate(f, tup)
    Mg = evaluate(g, tup)
    return [
        ("f(X,Y)^2 has rank >= 1", (Mf @ Mf).rank() >= 1),
        ("g(X,Y)^2 == 0", (Mg @ Mg).is_zero()),
    ]


# ---------------------------------------------------------------------------
# eigenvalue-guided chains between p_{1..s} y + x and y p_{1..s} + x


def _interval_product(field, lo, hi):
    x = NcPoly.variable(field, _XY, 1)
    acc = NcPoly.one(field, _XY)
    for j in range(lo, hi + 1):
        acc = acc * (x - NcPoly.constant(field, _XY, j))
    return acc


def check_eigenvalue_chain(s):
    field = Field.rationals()
    x = NcPoly.variable(field, _XY, 1)
    y = NcPoly.variable(field, _XY, 2)
    one = NcPoly.one(field, _XY)

    def p(lo, hi):
        return _interval_product(field, lo, hi)

    f = p(1, s) * y + x
    g = y * p(1, s) + x
    expected = [p(j + 1, s) * y * p(1, j) + x for j in range(s + 1)]

    checks = []
    rep = intertwining_chain(f, g)
    checks.append(("chain found", rep["found"]))
    steps = rep["steps"] or []
    checks.append(("chain has exactly %d steps" % s, len(steps) == s))
    if rep["found"] and len(steps) == s:
        waypoints = [steps[0].source] + [st.target for st in steps]
        for j, (got, want) in enumerate(zip(waypoints, expected)):
            checks.append(("waypoint %d matches up to a scalar" % j,
                           scalar_multiple(got, want) is not None))

    a_fwd = p(1, s)
    checks.append(("degree-%d intertwiner verifies" % s,
                   f * a_fwd == a_fwd * g))
    checks.append(("no intertwiner below degree %d" % s,
                   len(intertwiner_space(f, g, s - 1)) == 0))

    a_rev = one
    for k in range(s):
        a_rev = a_rev * (p(s - k + 1, s) * y * p(1, s - 1 - k) + one)
    checks.append(("reverse intertwiner has degree %d" % (s * s),
                   a_rev.degree() == s * s))
    checks.append(("reverse intertwiner verifies", g * a_rev == a_rev * f))
    checks.append(("no reverse intertwiner below degree %d" % (s * s),
                   len(intertwiner_space(g, f, s * s - 1)) == 0))
    return checks


# ---------------------------------------------------------------------------
# the reversed product pair: a*b and b*a stably associated yet distinct


def _reversed_product_polys():
    a = _q("y*x^3*y+x*y+y*x")
    b = _q("x*y*x*y*x+x*y+y*x")
    u = _q("1+x^2*y")
    v = _q("1+x*y*x")
    w = _q("1+y*x^2")
    return a, b, u, v, w


def check_reversed_product_identities():
    a, b, u, v, w = _reversed_product_polys()
    return [
        ("b*u == v*a", b * u == v * a),
        ("a*v == w*b", a * v == w * b),
        ("(a*b)*u == w*(b*a)", (a * b) * u == w * (b * a)),
        ("a*b != b*a", a * b != b * a),
    ]


def check_reversed_product_association():
    a, b, u, v, w = _reversed_product_polys()
    f, g = a * b, b * a
    rep = stable_association(f, g)
    checks = [("verdict is associated", rep["verdict"] == "associated")]
    cert = rep["certificate"]
    if cert is not None:
        ra, lb = cert["right_multiplier"], cert["left_multiplier"]
        checks.append(("relation verifies", f * ra == lb * g))
        checks.append(("relation degree 3", cert["relation_degree"] == 3))
        c = scalar_multiple(ra, u)
        checks.append(("right multiplier is a scalar multiple of 1+x^2*y",
                       c is not None))
        if c is not None:
            checks.append(("left multiplier is the matching multiple of "
                           "1+y*x^2", lb == w * c))
    else:
        checks.append(("certificate present", False))
    return checks


def check_reversed_product_jordan(seed):
    a, b, u, v, w = _reversed_product_polys()
    field = Field.rationals()
    f, g = a * b, b * a
    checks = []
    for index in range(10):
        X = sample_tuple(field, 2, 3, seed, index, bound=2)
        same = jordan_profile(evaluate(f, X)) == jordan_profile(evaluate(g, X))
        checks.append(("profiles agree at sample %d" % index, same))
    return checks


def check_reversed_product_quartic_split():
    field = parse_field("Q(sqrt5)(xi: xi^2=29+13*sqrt5)")
    a, b, u, v, w = _reversed_product_polys()
    f = parse("(y*x^3*y+x*y+y*x)*(x*y*x*y*x+x*y+y*x)", field, _XY)
    g = parse("(x*y*x*y*x+x*y+y*x)*(y*x^3*y+x*y+y*x)", field, _XY)
    X = _mat(field, [
        ["1", "0", "0", "0"],
        ["0", "1/2*sqrt5-1/2", "0", "0"],
        ["0", "0", "-1", "0"],
        ["0", "0", "0", "(11/4-5/4*sqrt5)*xi"],
    ])
    Y = _mat(field, [
        ["0", "-1/2-1/10*sqrt5", "0", "0"],
        ["1", "-1", "2", "0"],
        ["1", "-1/10*sqrt5", "0", "(1/2-3/10*sqrt5)*xi"],
        ["1/4*sqrt5-3/4", "-1/2*sqrt5", "1/2*sqrt5-3/2", "xi-4-2*sqrt5"],
    ])
    tup = MatrixTuple(field, (X, Y))
    Mf = evaluate(f, tup)
    Mg = evaluate(g, tup)
    return [
        ("f(X,Y)^2 == 0", (Mf @ Mf).is_zero()),
        ("g(X,Y)^2 != 0", not (Mg @ Mg).is_zero()),
    ]


# ---------------------------------------------------------------------------
# projector/shift evaluations separating x y^2 x from y x^2 y


def check_projector_shift_evaluations():
    field = Field.rationals()
    f = _q("x*y^2*x")
    g = _q("y*x^2*y")
    X = _mat(field, [[0, 1], [0, 0]])
    Y = _mat(field, [["1/2", "1/2"], ["1/2", "1/2"]])
    tup = MatrixTuple(field, (X, Y))
    Mf = evaluate(f, tup)
    Mg = evaluate(g, tup)
    half_X = X.scale(Fraction(1, 2))
    return [
        ("g(X,Y) == 0", Mg.is_zero()),
        ("f(X,Y) == X/2", Mf == half_X),
        ("f(X,Y) != 0", not Mf.is_zero()),
    ]


# ---------------------------------------------------------------------------
# runner


def corpus_items(seed=0):
    """The named corpus items, each a zero-argument callable returning a
    list of (label, bool) checks."""
    jordan_seed = _derived_seed(seed, "reversed-product-jordan-profiles")
    return [
        ("paired-evaluations", check_paired_evaluations),
        ("intertwining-relations", check_intertwining_relations),
        ("squared-rank-split", check_squared_rank_split),
        ("eigenvalue-chain-2", lambda: check_eigenvalue_chain(2)),
        ("eigenvalue-chain-3", lambda: check_eigenvalue_chain(3)),
        ("reversed-product-identities", check_reversed_product_identities),
        ("reversed-product-association", check_reversed_product_association),
        ("reversed-product-jordan-profiles",
         lambda: check_reversed_product_jordan(jordan_seed)),
        ("reversed-product-quartic-split",
         check_reversed_product_quartic_split),
        ("projector-shift-evaluations", check_projector_shift_evaluations),
    ]


def verify_paper(seed=0, parallel=True):
    """Run the whole corpus; report one entry per item.

    The overall report is {"ok", "items", "failures"}; each item entry is
    {"name", "ok", "detail", "seconds"}.  Items never influence each other,
    so parallel execution is byte-identical to sequential."""
    items = corpus_items(seed)

    def run(item):
        name, fn = item
        t0 = time.perf_counter()
        try:
            checks = fn()
            failed = [label for label, good in checks if not good]
            ok = not failed
            detail = ("all %d checks passed" % len(checks)) if ok \
                else "failed: " + "; ".join(failed)
        except Exception as exc:             # noqa: BLE001 - reported, not hidden
            ok = False
            detail = "error: %s" % exc
        return {"name": name, "ok": ok, "detail": detail,
                "seconds": round(time.perf_counter() - t0, 3)}

    if parallel and len(items) > 1:
        with ThreadPoolExecutor(max_workers=min(8, len(items))) as pool:
            results = list(pool.map(run, items))
    else:
        results = [run(item) for item in items]
    return {
        "ok": all(r["ok"] for r in results),
        "items": results,
        "failures": [r["name"] for r in results if not r["ok"]],
    }
