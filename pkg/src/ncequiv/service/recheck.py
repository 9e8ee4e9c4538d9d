"""Independent re-checking of emitted reports by pure expansion.

``verify_report`` takes a report dictionary produced by any handler and
re-establishes every claim it can from the embedded inputs alone:
certificates are re-verified by exact arithmetic (polynomial expansion,
matrix products, rank computations), and exact refutation witnesses are
recomputed from scratch.  Nothing here trusts intermediate data beyond
the inputs and the certificate being checked.
"""

from __future__ import annotations

from ..corpus import verify_paper
from ..evaluation import (
    MatrixTuple,
    RefutationWitness,
    char_poly,
    evaluate,
    verify_witness,
)
from ..linalg import Matrix
from ..ncpoly import NcPoly, UniPoly
from ..parsing import parse, parse_field, parse_scalar, pretty
from ..pencils import LinearPencil, joint_similarity, pad_pencil


class ReportFormatError(ValueError):
    """The report is missing data the re-check needs."""


def _check(checks, name, ok, detail=""):
    checks.append({"name": name, "ok": bool(ok), "detail": detail})
    return bool(ok)


def _nothing_to_check(report, checks):
    _check(checks, "no-certificate", True,
           "exit code %d report carries no checkable certificate"
           % report["exit_code"])


def _pair_context(report):
    inputs = report["inputs"]
    field = parse_field(inputs["field"])
    vars = tuple(inputs["vars"])
    f = parse(inputs["f"], field=field, vars=vars)
    g = parse(inputs["g"], field=field, vars=vars)
    return field, vars, f, g


def _poly_context(report):
    inputs = report["inputs"]
    field = parse_field(inputs["field"])
    vars = tuple(inputs["vars"])
    f = parse(inputs["f"], field=field, vars=vars)
    return field, vars, f


def _reparse(text, field, vars):
    return parse(text, field=field, vars=vars)


def _witness_object(data):
    return RefutationWitness(data["kind"], data["tuple"], data["details"])


def _recheck_exact_witness(report, checks, f, g):
    data = report.get("witness")
    if not data:
        _check(checks, "witness-present", True,
               "refutation is decided without a stored witness: %s"
               % report.get("reason", ""))
        return
    ok = verify_witness(f, g, _witness_object(data))
    _check(checks, "witness", ok,
           "%s witness recomputed from its tuple" % data["kind"])


def _recheck_eval(report, checks):
    inputs = report["inputs"]
    field = parse_field(inputs["field"])
    vars = tuple(inputs["vars"])
    f = parse(inputs["f"], field=field, vars=vars)
    tup = MatrixTuple.from_json(report["tuple"])
    value = evaluate(f, tup)
    got = [[str(e) for e in row] for row in value.rows]
    _check(checks, "value", got == report["value"],
           "matrix entries recomputed by evaluation")
    _check(checks, "rank", value.rank() == report["rank"],
           "rank recomputed exactly")
    _check(checks, "char-poly", str(char_poly(value)) == report["char_poly"],
           "characteristic polynomial recomputed exactly")


def _recheck_intertwiner(report, checks):
    if report["exit_code"] != 0:
        _nothing_to_check(report, checks)
        return
    field, vars, f, g = _pair_context(report)
    space = report["space"]
    basis = [_reparse(text, field, vars) for text in space["basis"]]
    _check(checks, "dimension",
           len(basis) == space["dimension"] and len(basis) > 0,
           "basis length matches the claimed dimension")
    ok = all(not a.is_zero() and f * a == a * g for a in basis)
    _check(checks, "intertwining", ok,
           "f*a == a*g expanded for every basis element")


def _recheck_isospectral(report, checks):
    field, vars, f, g = _pair_context(report)
    if report["exit_code"] == 0:
        a = _reparse(report["intertwiner"], field, vars)
        _check(checks, "intertwiner-nonzero", not a.is_zero(), "")
        _check(checks, "intertwining", f * a == a * g,
               "f*a == a*g expanded exactly")
    elif report["exit_code"] == 1:
        _recheck_exact_witness(report, checks, f, g)
    else:
        _nothing_to_check(report, checks)


def _recheck_chain(report, checks):
    if report["exit_code"] != 0:
        _nothing_to_check(report, checks)
        return
    field, vars, f, g = _pair_context(report)
    steps = report["steps"]
    if not steps:
        _check(checks, "endpoints", f == g,
               "empty chain is valid only for equal polynomials")
        return
    previous = f
    ok_steps = True
    for step in steps:
        shift = parse_scalar(step["shift"], field)
        left = _reparse(step["left"], field, vars)
        right = _reparse(step["right"], field, vars)
        source = _reparse(step["source"], field, vars)
        target = _reparse(step["target"], field, vars)
        sh = NcPoly.constant(field, vars, shift)
        if source != previous:
            ok_steps = False
        if source != sh + left * right or target != sh + right * left:
            ok_steps = False
        previous = target
    _check(checks, "steps", ok_steps,
           "each step expands as shift + left*right -> shift + right*left")
    _check(checks, "endpoints", previous == g,
           "the chain ends at the second polynomial")


def _recheck_stable_assoc(report, checks):
    field, vars, f, g = _pair_context(report)
    if report["exit_code"] == 0:
        cert = report["certificate"]
        a = _reparse(cert["right_multiplier"], field, vars)
        b = _reparse(cert["left_multiplier"], field, vars)
        _check(checks, "relation", f * a == b * g,
               "f*a == b*g expanded exactly")
        u = _reparse(cert["comax_right"]["u"], field, vars)
        v = _reparse(cert["comax_right"]["v"], field, vars)
        one = NcPoly.one(field, vars)
        _check(checks, "comax-right", f * u + b * v == one,
               "f*u + b*v == 1 expanded exactly")
        u = _reparse(cert["comax_left"]["u"], field, vars)
        v = _reparse(cert["comax_left"]["v"], field, vars)
        _check(checks, "comax-left", u * a + v * g == one,
               "u*a + v*g == 1 expanded exactly")
    elif report["exit_code"] == 1:
        _recheck_exact_witness(report, checks, f, g)
    else:
        _nothing_to_check(report, checks)


def _recheck_similar(report, checks):
    field, vars, f, g = _pair_context(report)
    if report["exit_code"] == 0:
        _check(checks, "equality", f == g,
               "pointwise similarity at every size means equality")
    else:
        _check(checks, "inequality", f != g,
               "the polynomials differ, so some tuple separates them")
        if report.get("witness"):
            _recheck_exact_witness(report, checks, f, g)


def _recheck_norm_equiv(report, checks):
    field, vars, f, g = _pair_context(report)
    if report["exit_code"] == 0:
        zeta = parse_scalar(report["scalar"], field)
        _check(checks, "unimodular", zeta * zeta.conjugate() == field.one(),
               "the scalar has modulus one")
        _check(checks, "scaling", g == f * zeta,
               "g == zeta*f expanded exactly")
    else:
        unimodular_multiple = False
        if f.is_zero() and g.is_zero():
            unimodular_multiple = True
        elif not f.is_zero() and not g.is_zero():
            w = f.leading_word()
            cg = g.coeff(w)
            if not cg.is_zero():
                zeta = cg / f.coeff(w)
                if (g == f * zeta
                        and zeta * zeta.conjugate() == field.one()):
                    unimodular_multiple = True
        _check(checks, "not-unimodular-multiple", not unimodular_multiple,
               "no unimodular scalar maps f to g")
        data = report.get("witness")
        if data:
            ok = verify_witness(f, g, _witness_object(data))
            _check(checks, "witness", ok,
                   "norm gap recomputed at the witness tuple")


def _recheck_decompose(report, checks):
    field, vars, f = _poly_context(report)
    outer = UniPoly(field, [parse_scalar(c, field)
                            for c in report["outer_coeffs"]])
    core = _reparse(report["core"], field, vars)
    _check(checks, "composition", outer.eval_poly(core) == f,
           "outer(core) == f expanded exactly")
    canonical = (core.constant_term().is_zero()
                 and core.leading_coeff() == field.one())
    _check(checks, "core-canonical", canonical,
           "core is monic with zero constant term")


def _recheck_factor_homog(report, checks):
    field, vars, f = _poly_context(report)
    product = NcPoly.constant(field, vars, parse_scalar(report["scalar"],
                                                        field))
    monic = True
    for text in report["atoms"]:
        atom = _reparse(text, field, vars)
        if atom.leading_coeff() != field.one():
            monic = False
        product = product * atom
    _check(checks, "product", product == f,
           "scalar times the atoms expands to f")
    _check(checks, "atoms-monic", monic, "every atom is monic")


def _recheck_gcrd(report, checks):
    field, vars, f, g = _pair_context(report)
    if report["exit_code"] == 0:
        h = _reparse(report["h"], field, vars)
        cof_f = _reparse(report["cofactor_p"], field, vars)
        cof_g = _reparse(report["cofactor_q"], field, vars)
        _check(checks, "divides-first", cof_f * h == f,
               "f == cofactor_p * h expanded exactly")
        _check(checks, "divides-second", cof_g * h == g,
               "g == cofactor_q * h expanded exactly")
        combo = report.get("combination")
        if combo is not None:
            s = _reparse(combo["s"], field, vars)
            t = _reparse(combo["t"], field, vars)
            _check(checks, "combination", s * f + t * g == h,
                   "s*f + t*g == h expanded exactly")
    elif report["exit_code"] == 1:
        cert = report.get("certificate")
        if cert is None:
            _nothing_to_check(report, checks)
        else:
            s = _reparse(cert["s"], field, vars)
            t = _reparse(cert["t"], field, vars)
            one = NcPoly.one(field, vars)
            _check(checks, "comaximal", s * f + t * g == one,
                   "s*f + t*g == 1 expanded exactly")
    else:
        _nothing_to_check(report, checks)


def _recheck_comax(report, checks):
    field, vars, f, g = _pair_context(report)
    if report["exit_code"] != 0:
        _nothing_to_check(report, checks)
        return
    cert = report["certificate"]
    u = _reparse(cert["u"], field, vars)
    v = _reparse(cert["v"], field, vars)
    one = NcPoly.one(field, vars)
    if report["side"] == "right":
        ok = f * u + g * v == one
        detail = "f*u + g*v == 1 expanded exactly"
    else:
        ok = u * f + v * g == one
        detail = "u*f + v*g == 1 expanded exactly"
    _check(checks, "comaximality", ok, detail)


def _recheck_pencil_sim(report, checks):
    inputs = report["inputs"]
    A = MatrixTuple.from_json(inputs["a"])
    B = MatrixTuple.from_json(inputs["b"])
    field = A.field
    if report["exit_code"] == 0:
        cert = report["certificate"]
        P = Matrix(field, [[parse_scalar(e, field) for e in row]
                           for row in cert["matrix"]])
        _check(checks, "invertible", P.is_invertible(),
               "certificate matrix has an exact inverse")
        ok = all(P @ a == b @ P for a, b in zip(A.mats, B.mats))
        _check(checks, "intertwining", ok,
               "P*A_j == B_j*P for every coordinate")
        return
    if report["exit_code"] != 1:
        _nothing_to_check(report, checks)
        return
    data = report["witness"]
    kind = data["kind"]
    if kind == "trace_word":
        prod_a = Matrix.identity(field, A.size)
        prod_b = Matrix.identity(field, B.size)
        for j in data["word"]:
            prod_a = prod_a @ A.mats[j - 1]
            prod_b = prod_b @ B.mats[j - 1]
        tr_a, tr_b = prod_a.trace(), prod_b.trace()
        ok = (tr_a != tr_b
              and str(tr_a) == data["trace_lhs"]
              and str(tr_b) == data["trace_rhs"])
        _check(checks, "trace-word", ok,
               "word traces recomputed from the tuples")
    elif kind == "pencil_rank":
        X = MatrixTuple.from_json(data["tuple"])
        pa = LinearPencil(field, (Matrix.identity(field, A.size),) + A.mats)
        pb = LinearPencil(field, (Matrix.identity(field, B.size),) + B.mats)
        ra = pa.evaluate(X).rank()
        rb = pb.evaluate(X).rank()
        ok = ra != rb and [ra, rb] == list(data["ranks"])
        _check(checks, "pencil-rank", ok,
               "homogenized pencil ranks recomputed at the witness tuple")
    elif kind == "intertwiner_space":
        rerun = joint_similarity(A, B)
        _check(checks, "intertwiner-space", rerun["similar"] is False,
               "re-running the decision confirms the refutation")
    else:
        raise ReportFormatError("unknown pencil witness kind %r" % kind)


def _recheck_pad_pencil(report, checks):
    inputs = report["inputs"]
    pencil = LinearPencil.from_json(inputs["pencil"])
    field = pencil.field
    T = [Matrix(field, [[parse_scalar(e, field) for e in row]
                        for row in mat])
         for mat in inputs["matrices"]]
    config = report["config"]
    result = pad_pencil(pencil, T, seed=config["seed"],
                        samples=config["samples"])
    _check(checks, "claimed-rank",
           result["claimed_rank"] == report["claimed_rank"],
           "kernel computation reproduces the claimed rank")
    _check(checks, "verified",
           result["verified"] == report["verified"]
           and result["verified_rank"] == report["verified_rank"],
           "randomized verification reproduces the recorded bound")
    rows = [[pretty(entry) for entry in row] for row in result["rows"]]
    _check(checks, "rows", rows == report["rows"],
           "the padded symbolic rows match")


def _recheck_nc_witness(report, checks):
    inputs = report["inputs"]
    field = parse_field(inputs["field"])
    vars = tuple(inputs["vars"])
    a = parse(inputs["a"], field=field, vars=vars)
    b = parse(inputs["b"], field=field, vars=vars)
    if report["exit_code"] == 1:
        _check(checks, "products-equal", a * b == b * a,
               "a*b == b*a expanded exactly")
        return
    if report["exit_code"] != 0:
        _nothing_to_check(report, checks)
        return
    data = report["witness"]
    X = MatrixTuple.from_json(data["tuple"])
    k = data["power"]
    lhs = evaluate(a * b, X) ** k
    rhs = evaluate(b * a, X) ** k
    ra, rb = lhs.rank(), rhs.rank()
    ok = (ra != rb and ra == data["rank_ab"] and rb == data["rank_ba"])
    _check(checks, "rank-split", ok,
           "power ranks recomputed at the witness tuple")


def _recheck_verify_paper(report, checks):
    seed = report["inputs"]["seed"]
    result = verify_paper(seed=seed)
    _check(checks, "corpus", result["ok"] == report["ok"],
           "golden corpus re-run reproduces the verdict")
    if report["exit_code"] == 0:
        _check(checks, "all-green", result["ok"],
               "every corpus item passes")


_CHECKERS = {
    "eval": _recheck_eval,
    "intertwiner": _recheck_intertwiner,
    "isospectral": _recheck_isospectral,
    "chain": _recheck_chain,
    "stable-assoc": _recheck_stable_assoc,
    "similar": _recheck_similar,
    "norm-equiv": _recheck_norm_equiv,
    "decompose": _recheck_decompose,
    "factor-homog": _recheck_factor_homog,
    "gcrd": _recheck_gcrd,
    "comax": _recheck_comax,
    "pencil-sim": _recheck_pencil_sim,
    "pad-pencil": _recheck_pad_pencil,
    "nc-witness": _recheck_nc_witness,
    "verify-paper": _recheck_verify_paper,
}


def verify_report(report):
    """Re-check a report produced by any command.

    Returns {"command", "ok", "checks": [{"name", "ok", "detail"}]};
    raises :class:`ReportFormatError` when the report is not one of ours
    or lacks the data the re-check needs.
    """
    if not isinstance(report, dict) or "command" not in report:
        raise ReportFormatError("not a report: missing the command key")
    command = report["command"]
    checker = _CHECKERS.get(command)
    if checker is None:
        raise ReportFormatError("unknown command %r" % command)
    if "exit_code" not in report or "inputs" not in report:
        raise ReportFormatError("report lacks exit_code or inputs")
    checks = []
    try:
        checker(report, checks)
    except (KeyError, IndexError, TypeError) as exc:
        raise ReportFormatError("report is missing required data: %r" % exc)
    return {
        "command": command,
        "ok": all(c["ok"] for c in checks),
        "checks": checks,
    }
