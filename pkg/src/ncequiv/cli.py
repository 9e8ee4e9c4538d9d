"""Command-line interface.

Every command builds a validated request, runs the matching handler (or
POSTs it to a running service when ``--server`` is given), prints a
report, and exits with a uniform convention:

* 0 — equivalence established, certificate embedded in the report;
* 1 — refuted, usually with a witness;
* 2 — undecided within the configured budgets;
* 3 — malformed input or transport failure.

With a fixed seed and configuration the JSON output is byte-identical
across runs.  Reports produced with ``--json`` can be re-checked by the
``verify`` command, which re-establishes every certificate by pure
expansion from the inputs embedded in the report.
"""

from __future__ import annotations

import json
import sys

import click
from pydantic import ValidationError

from .equiv import VerificationError
from .parsing import ParseError
from .service import handlers
from .service.recheck import ReportFormatError, verify_report
from .service.schemas import (
    ComaxRequest,
    EvalRequest,
    MatrixTuplePayload,
    PadPencilRequest,
    PencilPayload,
    PencilSimilarityRequest,
    PolyPairRequest,
    PolyRequest,
    RectangularTuplePayload,
    RunConfig,
    VerifyPaperRequest,
)


def _fail(message, code=3):
    click.echo("error: %s" % message, err=True)
    sys.exit(code)


def _config(params):
    try:
        return RunConfig(
            field=params["field"],
            vars=[v.strip() for v in params["vars_"].split(",") if v.strip()],
            seed=params["seed"],
            max_size=params["max_size"],
            samples=params["samples"],
            max_degree=params["max_deg"],
            combos=params["combos"],
            tolerance=params["tol"],
            precision=params["precision"],
            output="json" if params["as_json"] else "text",
        )
    except ValidationError as exc:
        _fail(str(exc))


def _remote(server, command, request):
    import httpx

    url = server.rstrip("/") + "/" + command
    try:
        resp = httpx.post(url, json=request.model_dump(mode="json"),
                          timeout=600.0)
    except httpx.HTTPError as exc:
        _fail("could not reach %s: %s" % (url, exc))
    if resp.status_code != 200:
        try:
            detail = resp.json()
        except ValueError:
            detail = {"error": resp.text}
        message = detail.get("error", resp.text)
        if "position" in detail and "(at position" not in message:
            message = "%s (position %s)" % (message, detail["position"])
        _fail("server rejected the request: %s" % message)
    return resp.json()


def _emit(report, params, renderer):
    if params["as_json"]:
        click.echo(json.dumps(report, indent=2))
    else:
        click.echo(renderer(report))
    sys.exit(report["exit_code"])


def _execute(command, request, params, renderer):
    try:
        if params["server"]:
            report = _remote(params["server"], command, request)
        else:
            report = handlers.run(command, request)
    except ParseError as exc:
        _fail(str(exc))
    except VerificationError as exc:
        _fail("internal certificate check failed: %s" % exc)
    except ValueError as exc:
        _fail(str(exc))
    _emit(report, params, renderer)


def common_options(fn):
    options = [
        click.option("--field", default="Q", show_default=True,
                     help="Coefficient field, e.g. Q, Q(i), "
                          "Q(sqrt5)(xi: xi^2=29+13*sqrt5)."),
        click.option("--vars", "vars_", default="x,y", show_default=True,
                     help="Comma-separated variable names."),
        click.option("--seed", default=0, show_default=True, type=int,
                     help="Seed for all randomized searches."),
        click.option("--max-size", default=5, show_default=True, type=int,
                     help="Largest matrix size sampled."),
        click.option("--samples", default=50, show_default=True, type=int,
                     help="Sampling budget per matrix size."),
        click.option("--max-deg", default=None, type=int,
                     help="Degree budget where one applies."),
        click.option("--combos", default=32, show_default=True, type=int,
                     help="Random-combination budget in certificate "
                          "searches."),
        click.option("--tol", default=None, type=float,
                     help="Numeric tolerance for norm-gap witnesses."),
        click.option("--precision", default=53, show_default=True, type=int,
                     help="Working precision in bits for numeric norms."),
        click.option("--json", "as_json", is_flag=True,
                     help="Print the full JSON report."),
        click.option("--server", default=None, metavar="URL",
                     help="POST the request to a running service instead "
                          "of computing locally."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _load_json_file(path, description):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        _fail("cannot read %s: %s" % (description, exc))
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        _fail("%s is not valid JSON: %s (at position %d)"
              % (description, exc.msg, exc.pos))


def _payload(model, data, description):
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        _fail("%s does not match the expected schema: %s"
              % (description, exc))


def _fmt_matrix(rows, indent="  "):
    return "\n".join(indent + "[" + ", ".join(row) + "]" for row in rows)


def _fmt_tuple(tup, indent="  "):
    lines = []
    for j, rows in enumerate(tup["matrices"]):
        lines.append("%smatrix %d:" % (indent, j + 1))
        lines.append(_fmt_matrix(rows, indent + "  "))
    return "\n".join(lines)


def _fmt_witness(witness):
    if witness is None:
        return "witness: none recorded"
    lines = ["witness kind: %s" % witness.get("kind", "?")]
    tup = witness.get("tuple")
    if isinstance(tup, dict) and "matrices" in tup:
        lines.append("witness tuple (size %s over %s):"
                     % (tup["size"], tup["field"]))
        lines.append(_fmt_tuple(tup))
    details = witness.get("details")
    if isinstance(details, dict):
        for key, value in details.items():
            if isinstance(value, dict):
                value = json.dumps(value)
            lines.append("  %s: %s" % (key, value))
    for key in ("word", "ranks", "dimension", "basis_rank",
                "trace_lhs", "trace_rhs", "power", "rank_ab", "rank_ba"):
        if key in witness:
            lines.append("  %s: %s" % (key, witness[key]))
    return "\n".join(lines)


@click.group()
@click.version_option(package_name="ncequiv", prog_name="ncequiv")
def main():
    """Exact equivalence checking for noncommutative polynomials.

    Commands either certify an equivalence (exit 0, certificate in the
    report), refute it (exit 1, usually with a witness tuple), or give
    up within the configured budgets (exit 2).  Malformed input exits
    with 3 and a position diagnostic.
    """


@main.command("eval")
@click.argument("f")
@click.option("--at", "at_path", default=None, metavar="FILE",
              help="JSON file with an explicit matrix tuple "
                   '{"field", "size", "matrices"}.')
@click.option("--size", default=None, type=int,
              help="Size of the sampled tuple (default 2).")
@click.option("--index", default=0, show_default=True, type=int,
              help="Index in the deterministic sample stream.")
@common_options
def cmd_eval(f, at_path, size, index, **params):
    """Evaluate F at a matrix tuple and report rank, characteristic
    polynomial, and eigenstructure."""
    config = _config(params)
    tuple_payload = None
    if at_path is not None:
        data = _load_json_file(at_path, "the tuple file")
        tuple_payload = _payload(MatrixTuplePayload, data, "the tuple file")
    try:
        request = EvalRequest(f=f, tuple=tuple_payload, size=size,
                              index=index, config=config)
    except ValidationError as exc:
        _fail(str(exc))
    _execute("eval", request, params, _render_eval)


def _render_eval(report):
    lines = ["evaluated: %s" % report["inputs"]["f"],
             "tuple (size %s over %s):" % (report["tuple"]["size"],
                                           report["tuple"]["field"]),
             _fmt_tuple(report["tuple"]),
             "value:",
             _fmt_matrix(report["value"]),
             "rank: %d" % report["rank"],
             "char poly: %s" % report["char_poly"]]
    blocks = ["%s: %s" % (ev["value"], ev["block_sizes"])
              for ev in report["jordan"]["eigenvalues"]]
    if blocks:
        lines.append("eigenvalue blocks: " + "; ".join(blocks))
    if report["jordan"].get("residual_factor"):
        lines.append("unsplit factor: %s" % report["jordan"]["residual_factor"])
    return "\n".join(lines)


def _pair_command(name, help_text, renderer):
    @main.command(name, help=help_text)
    @click.argument("f")
    @click.argument("g")
    @common_options
    def _cmd(f, g, **params):
        config = _config(params)
        request = PolyPairRequest(f=f, g=g, config=config)
        _execute(name, request, params, renderer)

    _cmd.__name__ = "cmd_" + name.replace("-", "_")
    return _cmd


def _render_intertwiner(report):
    space = report["space"]
    lines = ["degree bound: %d" % space["degree_bound"],
             "dimension: %d" % space["dimension"]]
    for a in space["basis"]:
        lines.append("  a = %s" % a)
    lines.append("reason: %s" % report["reason"])
    return "\n".join(lines)


def _render_isospectral(report):
    lines = ["isospectral: %s" % _verdict_word(report["isospectral"])]
    if report["intertwiner"] is not None:
        lines.append("intertwiner: %s" % report["intertwiner"])
    if report.get("outer") and report["outer"] != "t":
        lines.append("shared outer polynomial: %s" % report["outer"])
    lines.append("reason: %s" % report["reason"])
    if report["witness"] is not None:
        lines.append(_fmt_witness(report["witness"]))
    return "\n".join(lines)


def _render_chain(report):
    if not report["found"]:
        return "chain found: no\nreason: %s" % report["reason"]
    steps = report["steps"]
    lines = ["chain found: yes", "length: %d" % len(steps)]
    for k, step in enumerate(steps):
        lines.append("step %d: %s  ~~>  %s" % (k + 1, step["source"],
                                               step["target"]))
        lines.append("  shift %s, left %s, right %s"
                     % (step["shift"], step["left"], step["right"]))
    return "\n".join(lines)


def _render_stable_assoc(report):
    lines = ["verdict: %s" % report["verdict"],
             "reason: %s" % report["reason"]]
    cert = report["certificate"]
    if cert is not None:
        lines.append("relation: f * (%s) == (%s) * g"
                     % (cert["right_multiplier"], cert["left_multiplier"]))
        lines.append("relation degree: %d" % cert["relation_degree"])
        lines.append("comaximality (f, left): u = %s, v = %s"
                     % (cert["comax_right"]["u"], cert["comax_right"]["v"]))
        lines.append("comaximality (right, g): u = %s, v = %s"
                     % (cert["comax_left"]["u"], cert["comax_left"]["v"]))
    if report["witness"] is not None:
        lines.append(_fmt_witness(report["witness"]))
    return "\n".join(lines)


def _render_similar(report):
    lines = ["similar at every size: %s" % _verdict_word(report["similar"]),
             "reason: %s" % report["reason"]]
    if report["witness"] is not None:
        lines.append(_fmt_witness(report["witness"]))
    return "\n".join(lines)


def _render_norm_equiv(report):
    lines = ["norm equivalent: %s" % _verdict_word(report["equivalent"]),
             "reason: %s" % report["reason"]]
    if report["scalar"] is not None:
        lines.append("unimodular scalar: %s" % report["scalar"])
    if report["witness"] is not None:
        lines.append(_fmt_witness(report["witness"]))
    return "\n".join(lines)


def _render_nc_witness(report):
    if report["witness"] is None:
        return "witness found: no\nreason: %s" % report["reason"]
    witness = report["witness"]
    lines = ["witness found: yes",
             "reason: %s" % report["reason"],
             "power: %d" % witness["power"],
             "rank of (a*b)^k: %d" % witness["rank_ab"],
             "rank of (b*a)^k: %d" % witness["rank_ba"],
             "tuple (size %s over %s):" % (witness["tuple"]["size"],
                                           witness["tuple"]["field"]),
             _fmt_tuple(witness["tuple"])]
    return "\n".join(lines)


def _verdict_word(value):
    if value is True:
        return "yes"
    if value is False:
        return "no"
    return "undecided"


_pair_command(
    "intertwiner",
    "Exact basis of {a : F*a == a*G} up to a degree bound "
    "(--max-deg, default max(deg F, deg G)).",
    _render_intertwiner)
_pair_command(
    "isospectral",
    "Decide whether F and G have identical spectra at every matrix tuple.",
    _render_isospectral)
_pair_command(
    "chain",
    "Connect F to G by expansion-verified elementary intertwining steps.",
    _render_chain)
_pair_command(
    "stable-assoc",
    "Decide stable association of F and G: coprime-relation certificate, "
    "rank witness, or undecided.",
    _render_stable_assoc)
_pair_command(
    "similar",
    "Decide pointwise similarity of F and G at every size.",
    _render_similar)
_pair_command(
    "norm-equiv",
    "Decide equality of norms of F and G at every contractive tuple.",
    _render_norm_equiv)
_pair_command(
    "nc-witness",
    "Find a tuple and power separating the ranks of (F*G)^k and (G*F)^k.",
    _render_nc_witness)


@main.command("decompose")
@click.argument("f")
@common_options
def cmd_decompose(f, **params):
    """Split F into outer(core) with a canonical core."""
    config = _config(params)
    request = PolyRequest(f=f, config=config)
    _execute("decompose", request, params, _render_decompose)


def _render_decompose(report):
    return "\n".join(["outer: %s" % report["outer"],
                      "core: %s" % report["core"],
                      "composite: %s" % ("yes" if report["composite"]
                                         else "no")])


@main.command("factor-homog")
@click.argument("f")
@common_options
def cmd_factor_homog(f, **params):
    """Factor a homogeneous F into a scalar times monic atoms."""
    config = _config(params)
    request = PolyRequest(f=f, config=config)
    _execute("factor-homog", request, params, _render_factor_homog)


def _render_factor_homog(report):
    lines = ["scalar: %s" % report["scalar"]]
    for atom in report["atoms"]:
        lines.append("atom: %s" % atom)
    return "\n".join(lines)


@main.command("gcrd")
@click.argument("f")
@click.argument("g")
@common_options
def cmd_gcrd(f, g, **params):
    """Greatest common right divisor of F and G with cofactors."""
    config = _config(params)
    request = PolyPairRequest(f=f, g=g, config=config)
    _execute("gcrd", request, params, _render_gcrd)


def _render_gcrd(report):
    lines = ["status: %s" % report["status"]]
    if "h" in report:
        lines.append("gcrd: %s" % report["h"])
        lines.append("f = (%s) * gcrd" % report["cofactor_p"])
        lines.append("g = (%s) * gcrd" % report["cofactor_q"])
    combo = report.get("combination")
    if combo:
        lines.append("combination: (%s)*f + (%s)*g == gcrd"
                     % (combo["s"], combo["t"]))
    cert = report.get("certificate")
    if cert:
        lines.append("comaximality: (%s)*f + (%s)*g == 1"
                     % (cert["s"], cert["t"]))
    if report.get("reason"):
        lines.append("reason: %s" % report["reason"])
    if report.get("maximal_certified") is not None:
        lines.append("maximality certified: %s"
                     % ("yes" if report["maximal_certified"] else "no"))
    return "\n".join(lines)


@main.command("comax")
@click.argument("f")
@click.argument("g")
@click.option("--side", type=click.Choice(["left", "right"]),
              default="right", show_default=True,
              help="Which one-sided ideal the certificate lives in.")
@common_options
def cmd_comax(f, g, side, **params):
    """Certificate that F and G generate the unit one-sided ideal."""
    config = _config(params)
    request = ComaxRequest(f=f, g=g, side=side, config=config)
    _execute("comax", request, params, _render_comax)


def _render_comax(report):
    lines = ["side: %s" % report["side"], "reason: %s" % report["reason"]]
    cert = report["certificate"]
    if cert is not None:
        if report["side"] == "right":
            lines.append("f*u + g*v == 1 with u = %s, v = %s"
                         % (cert["u"], cert["v"]))
        else:
            lines.append("u*f + v*g == 1 with u = %s, v = %s"
                         % (cert["u"], cert["v"]))
    return "\n".join(lines)


@main.command("pencil-sim")
@click.argument("a_path", metavar="A_JSON")
@click.argument("b_path", metavar="B_JSON")
@common_options
def cmd_pencil_sim(a_path, b_path, **params):
    """Joint similarity of two matrix tuples given as JSON files
    {"field", "size", "matrices"}."""
    config = _config(params)
    a = _payload(MatrixTuplePayload, _load_json_file(a_path, "A_JSON"),
                 "A_JSON")
    b = _payload(MatrixTuplePayload, _load_json_file(b_path, "B_JSON"),
                 "B_JSON")
    request = PencilSimilarityRequest(a=a, b=b, config=config)
    _execute("pencil-sim", request, params, _render_pencil_sim)


def _render_pencil_sim(report):
    lines = ["jointly similar: %s" % _verdict_word(report["similar"]),
             "reason: %s" % report["reason"]]
    cert = report["certificate"]
    if cert is not None:
        lines.append("similarity matrix:")
        lines.append(_fmt_matrix(cert["matrix"]))
    if report["witness"] is not None:
        lines.append(_fmt_witness(report["witness"]))
    return "\n".join(lines)


@main.command("pad-pencil")
@click.argument("pencil_path", metavar="PENCIL_JSON")
@click.argument("matrices_path", metavar="TUPLE_JSON")
@common_options
def cmd_pad_pencil(pencil_path, matrices_path, **params):
    """Pad a full homogeneous pencil (JSON file) along a rectangular
    matrix tuple (JSON file) and verify the inner rank of the result."""
    config = _config(params)
    pencil = _payload(PencilPayload,
                      _load_json_file(pencil_path, "PENCIL_JSON"),
                      "PENCIL_JSON")
    matrices = _payload(RectangularTuplePayload,
                        _load_json_file(matrices_path, "TUPLE_JSON"),
                        "TUPLE_JSON")
    request = PadPencilRequest(pencil=pencil, matrices=matrices,
                               config=config)
    _execute("pad-pencil", request, params, _render_pad_pencil)


def _render_pad_pencil(report):
    lines = ["padded pencil size: %d x %d" % (report["size"], report["size"]),
             "claimed inner rank: %d" % report["claimed_rank"],
             "verified lower bound: %d" % report["verified_rank"],
             "verified: %s" % ("yes" if report["verified"] else "no"),
             "fresh variables: %d" % len(report["variables"])]
    return "\n".join(lines)


@main.command("verify-paper")
@common_options
def cmd_verify_paper(**params):
    """Re-derive the full corpus of worked examples; fail loudly on any
    mismatch."""
    config = _config(params)
    request = VerifyPaperRequest(config=config)
    _execute("verify-paper", request, params, _render_verify_paper)


def _render_verify_paper(report):
    lines = []
    for item in report["items"]:
        status = "PASS" if item["ok"] else "FAIL"
        lines.append("%s %s — %s" % (status, item["name"], item["detail"]))
    lines.append("overall: %s (%d/%d items)"
                 % ("PASS" if report["ok"] else "FAIL",
                    sum(1 for item in report["items"] if item["ok"]),
                    len(report["items"])))
    return "\n".join(lines)


@main.command("verify")
@click.argument("report_path", metavar="REPORT_JSON")
@click.option("--json", "as_json", is_flag=True,
              help="Print the re-check result as JSON.")
def cmd_verify(report_path, as_json):
    """Independently re-check a JSON report produced with --json.

    Certificates are re-established by pure expansion from the inputs
    embedded in the report; exact witnesses are recomputed from their
    tuples.  REPORT_JSON may be - for stdin."""
    report = _load_json_file(report_path, "REPORT_JSON")
    try:
        result = verify_report(report)
    except ReportFormatError as exc:
        _fail(str(exc))
    except ParseError as exc:
        _fail(str(exc))
    except ValueError as exc:
        _fail(str(exc))
    if as_json:
        click.echo(json.dumps(result, indent=2))
    else:
        lines = []
        for check in result["checks"]:
            status = "PASS" if check["ok"] else "FAIL"
            lines.append("%s %s — %s" % (status, check["name"],
                                         check["detail"]))
        lines.append("overall: %s" % ("PASS" if result["ok"] else "FAIL"))
        click.echo("\n".join(lines))
    sys.exit(0 if result["ok"] else 1)


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def cmd_serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
