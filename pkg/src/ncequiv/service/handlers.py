"""Command handlers: validated requests in, JSON-ready reports out.

Each handler returns a plain dictionary with a fixed key order:
``command``, ``exit_code``, ``inputs``, ``config``, then the
command-specific payload.  The ``inputs`` block always carries enough
re-parseable text to re-check any embedded certificate by pure
expansion, and ``exit_code`` follows one convention everywhere:

* 0 — equivalence established, with a certificate in the report;
* 1 — refuted, usually with a witness;
* 2 — undecided within the configured budgets;
* 3 — malformed input (raised as an exception, mapped by the caller).

With a fixed seed and config every handler is deterministic, so equal
requests produce byte-identical reports.
"""

from __future__ import annotations

from ..corpus import verify_paper
from ..equiv import (
    decompose,
    intertwiner_space,
    intertwining_chain,
    is_isospectral,
    noncommutativity_witness,
    norm_equivalent,
    pointwise_similar,
    stable_association,
)
from ..evaluation import MatrixTuple, char_poly, evaluate, jordan_profile, sample_tuple
from ..ideals import comaximality_certificate, factor_homogeneous, gcrd
from ..linalg import Matrix
from ..parsing import parse, parse_field, parse_scalar
from ..pencils import LinearPencil, joint_similarity, pad_pencil
from .schemas import (
    ComaxRequest,
    EvalRequest,
    PadPencilRequest,
    PencilSimilarityRequest,
    PolyPairRequest,
    PolyRequest,
    VerifyPaperRequest,
)
from . import serialize

EXIT_CERTIFIED = 0
EXIT_REFUTED = 1
EXIT_UNDECIDED = 2
EXIT_USAGE = 3


def _resolve(config):
    field = parse_field(config.field)
    return field, tuple(config.vars)


def _report(command, exit_code, inputs, config, **payload):
    out = {
        "command": command,
        "exit_code": exit_code,
        "inputs": inputs,
        "config": config.model_dump(),
    }
    out.update(payload)
    return out


def _pair_inputs(field, vars, f, g):
    return {
        "field": field.spec,
        "vars": list(vars),
        "f": serialize.poly(f),
        "g": serialize.poly(g),
    }


def _poly_inputs(field, vars, f):
    return {"field": field.spec, "vars": list(vars), "f": serialize.poly(f)}


def _matrix_from_payload(field, rows):
    return Matrix(field, [[parse_scalar(e, field) for e in row] for row in rows])


def _tuple_from_payload(payload):
    field = parse_field(payload.field)
    mats = [_matrix_from_payload(field, m) for m in payload.matrices]
    return MatrixTuple(field, mats)


def _pencil_from_payload(payload):
    field = parse_field(payload.field)
    coeffs = [_matrix_from_payload(field, m) for m in payload.coefficients]
    constant = None
    if payload.kind == "affine":
        constant = _matrix_from_payload(field, payload.constant)
    return LinearPencil(field, coeffs, constant=constant)


def handle_eval(req: EvalRequest):
    """Evaluate a polynomial at an explicit or sampled tuple and report the
    value together with its exact rank, characteristic polynomial, and
    eigenstructure profile."""
    config = req.config
    if req.tuple is not None:
        tup = _tuple_from_payload(req.tuple)
        field = tup.field
        vars = tuple(config.vars)
        chosen = {"kind": "explicit"}
    else:
        field, vars = _resolve(config)
        size = req.size if req.size is not None else 2
        tup = sample_tuple(field, len(vars), size, config.seed, req.index)
        chosen = {"kind": "sampled", "size": size, "index": req.index,
                  "seed": config.seed}
    f = parse(req.f, field=field, vars=vars)
    value = evaluate(f, tup)
    return _report(
        "eval", EXIT_CERTIFIED, _poly_inputs(field, vars, f), config,
        tuple=tup.to_json(),
        tuple_source=chosen,
        value=serialize.matrix_rows(value),
        rank=value.rank(),
        char_poly=str(char_poly(value)),
        jordan=jordan_profile(value),
    )


def handle_intertwiner(req: PolyPairRequest):
    """Exact basis of the intertwiner space {a : f*a == a*g} up to the
    configured degree bound."""
    config = req.config
    field, vars = _resolve(config)
    f = parse(req.f, field=field, vars=vars)
    g = parse(req.g, field=field, vars=vars)
    bound = config.max_degree
    if bound is None:
        bound = max(f.degree() or 0, g.degree() or 0, 1)
    space = intertwiner_space(f, g, bound)
    exit_code = EXIT_CERTIFIED if len(space) else EXIT_UNDECIDED
    reason = ("every basis element verified by expansion" if len(space)
              else "no intertwiner up to degree %d" % bound)
    return _report(
        "intertwiner", exit_code, _pair_inputs(field, vars, f, g), config,
        space=serialize.intertwiner_space(space),
        reason=reason,
    )


def handle_isospectral(req: PolyPairRequest):
    """Decide isospectrality; positive verdicts carry a polynomial
    intertwiner certificate whenever one exists below the degree cap."""
    config = req.config
    field, vars = _resolve(config)
    f = parse(req.f, field=field, vars=vars)
    g = parse(req.g, field=field, vars=vars)
    rep = is_isospectral(f, g, seed=config.seed, max_size=config.max_size,
                         samples=config.samples)
    if rep["isospectral"] is False:
        exit_code = EXIT_REFUTED
    elif rep["intertwiner"] is not None:
        exit_code = EXIT_CERTIFIED
    else:
        exit_code = EXIT_UNDECIDED
    extras = serialize.isospectral_extras(rep)
    return _report(
        "isospectral", exit_code, _pair_inputs(field, vars, f, g), config,
        isospectral=rep["isospectral"],
        intertwiner=serialize.maybe_poly(rep["intertwiner"]),
        witness=serialize.witness(rep["witness"]),
        reason=rep["reason"],
        outer=extras["outer"],
        cores=extras["cores"],
    )


def handle_chain(req: PolyPairRequest):
    """Produce a chain of expansion-verified elementary steps from f to g."""
    config = req.config
    field, vars = _resolve(config)
    f = parse(req.f, field=field, vars=vars)
    g = parse(req.g, field=field, vars=vars)
    rep = intertwining_chain(f, g)
    if rep["found"]:
        exit_code = EXIT_CERTIFIED
    elif rep["reason"].startswith("no intertwiner exists:"):
        exit_code = EXIT_REFUTED
    else:
        exit_code = EXIT_UNDECIDED
    return _report(
        "chain", exit_code, _pair_inputs(field, vars, f, g), config,
        found=rep["found"],
        steps=None if rep["steps"] is None else serialize.chain_steps(rep["steps"]),
        reason=rep["reason"],
        diagnostics=rep["diagnostics"],
    )


def handle_stable_assoc(req: PolyPairRequest):
    """Decide stable association: coprime-relation certificate, rank
    witness, or undecided."""
    config = req.config
    field, vars = _resolve(config)
    f = parse(req.f, field=field, vars=vars)
    g = parse(req.g, field=field, vars=vars)
    rep = stable_association(f, g, seed=config.seed, samples=config.samples,
                             max_size=config.max_size, combos=config.combos)
    exit_code = {"associated": EXIT_CERTIFIED,
                 "not_associated": EXIT_REFUTED}.get(rep["verdict"],
                                                     EXIT_UNDECIDED)
    return _report(
        "stable-assoc", exit_code, _pair_inputs(field, vars, f, g), config,
        verdict=rep["verdict"],
        certificate=serialize.association_certificate(rep["certificate"]),
        witness=serialize.witness(rep["witness"]),
        reason=rep["reason"],
    )


def handle_similar(req: PolyPairRequest):
    """Decide pointwise similarity at every size (equivalent to equality);
    refutations attach a tuple with differing similarity invariants."""
    config = req.config
    field, vars = _resolve(config)
    f = parse(req.f, field=field, vars=vars)
    g = parse(req.g, field=field, vars=vars)
    rep = pointwise_similar(f, g, seed=config.seed, max_size=config.max_size,
                            samples=config.samples)
    exit_code = EXIT_CERTIFIED if rep["similar"] else EXIT_REFUTED
    return _report(
        "similar", exit_code, _pair_inputs(field, vars, f, g), config,
        similar=rep["similar"],
        witness=serialize.witness(rep["witness"]),
        reason=rep["reason"],
    )


def handle_norm_equiv(req: PolyPairRequest):
    """Decide equality of norms at every contractive tuple (equivalent to a
    unimodular scaling); refutations attach a numeric norm-gap witness."""
    config = req.config
    field, vars = _resolve(config)
    f = parse(req.f, field=field, vars=vars)
    g = parse(req.g, field=field, vars=vars)
    rep = norm_equivalent(f, g, seed=config.seed, max_size=config.max_size,
                          samples=config.samples, tol=config.tolerance,
                          prec=config.precision)
    exit_code = EXIT_CERTIFIED if rep["equivalent"] else EXIT_REFUTED
    return _report(
        "norm-equiv", exit_code, _pair_inputs(field, vars, f, g), config,
        equivalent=rep["equivalent"],
        scalar=serialize.scalar(rep["scalar"]),
        witness=serialize.witness(rep["witness"]),
        reason=rep["reason"],
    )


def handle_decompose(req: PolyRequest):
    """Split f into outer(core) with a canonical core; the identity is
    re-checked by expansion before reporting."""
    config = req.config
    field, vars = _resolve(config)
    f = parse(req.f, field=field, vars=vars)
    dec = decompose(f)
    outer = dec.outer
    return _report(
        "decompose", EXIT_CERTIFIED, _poly_inputs(field, vars, f), config,
        outer=str(outer),
        outer_coeffs=[str(c) for c in outer.coeffs],
        core=serialize.poly(dec.core),
        composite=(outer.degree() or 0) >= 2,
    )


def handle_factor_homog(req: PolyRequest):
    """Factor a homogeneous polynomial into a scalar and monic atoms."""
    config = req.config
    field, vars = _resolve(config)
    f = parse(req.f, field=field, vars=vars)
    c, atoms = factor_homogeneous(f)
    return _report(
        "factor-homog", EXIT_CERTIFIED, _poly_inputs(field, vars, f), config,
        scalar=str(c),
        atoms=[serialize.poly(a) for a in atoms],
    )


def handle_gcrd(req: PolyPairRequest):
    """Greatest common right divisor with cofactors and, when available, a
    Bezout-style combination."""
    config = req.config
    field, vars = _resolve(config)
    f = parse(req.f, field=field, vars=vars)
    g = parse(req.g, field=field, vars=vars)
    result = gcrd(f, g)
    exit_code = {"found": EXIT_CERTIFIED,
                 "none": EXIT_REFUTED}.get(result["status"], EXIT_UNDECIDED)
    return _report(
        "gcrd", exit_code, _pair_inputs(field, vars, f, g), config,
        **serialize.gcrd_report(result),
    )


def handle_comax(req: ComaxRequest):
    """Comaximality certificate u, v with f*u + g*v == 1 (right) or
    u*f + v*g == 1 (left); absence is decided, not merely undecided."""
    config = req.config
    field, vars = _resolve(config)
    f = parse(req.f, field=field, vars=vars)
    g = parse(req.g, field=field, vars=vars)
    pair = comaximality_certificate(f, g, side=req.side)
    exit_code = EXIT_CERTIFIED if pair is not None else EXIT_REFUTED
    reason = ("certificate verified by expansion" if pair is not None
              else "the one-sided ideal generated by f and g is proper")
    return _report(
        "comax", exit_code, _pair_inputs(field, vars, f, g), config,
        side=req.side,
        certificate=serialize.comax_pair(pair),
        reason=reason,
    )


def handle_pencil_sim(req: PencilSimilarityRequest):
    """Joint similarity of two matrix tuples: an invertible intertwining
    certificate, an exact refutation witness, or undecided."""
    config = req.config
    A = _tuple_from_payload(req.a)
    B = _tuple_from_payload(req.b)
    rep = joint_similarity(A, B, seed=config.seed, max_size=config.max_size,
                           samples=config.samples, combos=config.combos)
    if rep["similar"] is True:
        exit_code = EXIT_CERTIFIED
    elif rep["similar"] is False:
        exit_code = EXIT_REFUTED
    else:
        exit_code = EXIT_UNDECIDED
    cert = rep["certificate"]
    inputs = {"field": A.field.spec, "a": A.to_json(), "b": B.to_json()}
    return _report(
        "pencil-sim", exit_code, inputs, config,
        similar=rep["similar"],
        certificate=None if cert is None else cert.to_json(),
        witness=rep["witness"],
        reason=rep["reason"],
    )


def handle_pad_pencil(req: PadPencilRequest):
    """Pad a full homogeneous pencil along a rectangular tuple and verify
    the claimed inner rank of the padded pencil from below."""
    config = req.config
    pencil = _pencil_from_payload(req.pencil)
    field = pencil.field
    T = [_matrix_from_payload(field, m) for m in req.matrices.matrices]
    result = pad_pencil(pencil, T, seed=config.seed, samples=config.samples)
    exit_code = EXIT_CERTIFIED if result["verified"] else EXIT_UNDECIDED
    inputs = {
        "field": field.spec,
        "pencil": pencil.to_json(),
        "matrices": [serialize.matrix_rows(t) for t in T],
    }
    return _report(
        "pad-pencil", exit_code, inputs, config,
        **serialize.pad_report(result),
    )


def handle_nc_witness(req: PolyPairRequest):
    """A matrix tuple and power separating the ranks of (a*b)^k and
    (b*a)^k, certifying that the factors do not commute."""
    config = req.config
    field, vars = _resolve(config)
    a = parse(req.f, field=field, vars=vars)
    b = parse(req.g, field=field, vars=vars)
    inputs = {"field": field.spec, "vars": list(vars),
              "a": serialize.poly(a), "b": serialize.poly(b)}
    if a * b == b * a:
        return _report(
            "nc-witness", EXIT_REFUTED, inputs, config,
            witness=None,
            reason="the products a*b and b*a coincide",
        )
    found = noncommutativity_witness(a, b, seed=config.seed,
                                     max_size=config.max_size,
                                     samples=config.samples)
    if found is None:
        return _report(
            "nc-witness", EXIT_UNDECIDED, inputs, config,
            witness=None,
            reason="no rank separation within the sampling budget",
        )
    X, k = found
    lhs = evaluate(a * b, X)
    rhs = evaluate(b * a, X)
    lhs_k = lhs ** k
    rhs_k = rhs ** k
    return _report(
        "nc-witness", EXIT_CERTIFIED, inputs, config,
        witness={
            "tuple": X.to_json(),
            "power": k,
            "rank_ab": lhs_k.rank(),
            "rank_ba": rhs_k.rank(),
        },
        reason="rank((a*b)(X)^%d) != rank((b*a)(X)^%d) at an exact tuple"
               % (k, k),
    )


def handle_verify_paper(req: VerifyPaperRequest):
    """Run the golden corpus of worked examples; per-item timings are kept
    out of the report so byte-identical output is reproducible."""
    config = req.config
    result = verify_paper(seed=config.seed)
    items = [{"name": it["name"], "ok": it["ok"], "detail": it["detail"]}
             for it in result["items"]]
    exit_code = EXIT_CERTIFIED if result["ok"] else EXIT_REFUTED
    return _report(
        "verify-paper", exit_code, {"seed": config.seed}, config,
        ok=result["ok"],
        items=items,
        failures=result["failures"],
    )


HANDLERS = {
    "eval": (EvalRequest, handle_eval),
    "intertwiner": (PolyPairRequest, handle_intertwiner),
    "isospectral": (PolyPairRequest, handle_isospectral),
    "chain": (PolyPairRequest, handle_chain),
    "stable-assoc": (PolyPairRequest, handle_stable_assoc),
    "similar": (PolyPairRequest, handle_similar),
    "norm-equiv": (PolyPairRequest, handle_norm_equiv),
    "decompose": (PolyRequest, handle_decompose),
    "factor-homog": (PolyRequest, handle_factor_homog),
    "gcrd": (PolyPairRequest, handle_gcrd),
    "comax": (ComaxRequest, handle_comax),
    "pencil-sim": (PencilSimilarityRequest, handle_pencil_sim),
    "pad-pencil": (PadPencilRequest, handle_pad_pencil),
    "nc-witness": (PolyPairRequest, handle_nc_witness),
    "verify-paper": (VerifyPaperRequest, handle_verify_paper),
}


def run(command, request):
    """Dispatch a validated request model to its handler."""
    if command not in HANDLERS:
        raise ValueError("unknown command %r" % command)
    _, handler = HANDLERS[command]
    return handler(request)
