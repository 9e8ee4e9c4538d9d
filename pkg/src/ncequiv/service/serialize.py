"""Render exact core objects as JSON-ready values.

Every scalar is rendered as a string in the grammar accepted by the
parser, so a report can be re-parsed and re-checked by pure expansion
without any floating-point step.
"""

from __future__ import annotations

from ..parsing import pretty


def poly(f):
    """A noncommutative polynomial as canonical source text."""
    return pretty(f)


def maybe_poly(f):
    return None if f is None else pretty(f)


def scalar(value):
    return None if value is None else str(value)


def unipoly(p):
    return None if p is None else str(p)


def matrix_rows(mat):
    """A :class:`~ncequiv.linalg.Matrix` as nested lists of entry strings."""
    return [[str(entry) for entry in row] for row in mat.rows]


def witness(w):
    """A refutation witness, or None."""
    return None if w is None else w.to_json()


def comax_pair(pair):
    """A verified comaximality certificate (u, v)."""
    if pair is None:
        return None
    u, v = pair
    return {"u": pretty(u), "v": pretty(v)}


def association_certificate(cert):
    """The certificate attached to a positive stable-association verdict."""
    if cert is None:
        return None
    return {
        "right_multiplier": pretty(cert["right_multiplier"]),
        "left_multiplier": pretty(cert["left_multiplier"]),
        "relation_degree": cert["relation_degree"],
        "comax_right": comax_pair(cert["comax_right"]),
        "comax_left": comax_pair(cert["comax_left"]),
    }


def chain_steps(steps):
    """Chain steps with each waypoint and factor rendered as source text."""
    return [
        {
            "shift": str(step.shift),
            "left": pretty(step.left),
            "right": pretty(step.right),
            "source": pretty(step.source),
            "target": pretty(step.target),
        }
        for step in steps
    ]


def intertwiner_space(space):
    """Dimension and basis of an exact intertwiner space."""
    return {
        "degree_bound": space.degree_bound,
        "dimension": len(space),
        "basis": [pretty(a) for a in space],
    }


def isospectral_extras(report):
    """The shared outer polynomial and the two cores, when composite."""
    outer = report.get("outer")
    cores = report.get("cores")
    return {
        "outer": unipoly(outer),
        "cores": None if cores is None else [pretty(cores[0]), pretty(cores[1])],
    }


def gcrd_report(result):
    """The greatest common right divisor report with all parts as text."""
    out = {"status": result["status"]}
    for key in ("h", "cofactor_p", "cofactor_q"):
        if result.get(key) is not None:
            out[key] = pretty(result[key])
    for key in ("combination", "certificate"):
        pair = result.get(key)
        if pair is not None:
            out[key] = {"s": pretty(pair[0]), "t": pretty(pair[1])}
    if "maximal_certified" in result:
        out["maximal_certified"] = result["maximal_certified"]
    if result.get("reason"):
        out["reason"] = result["reason"]
    return out


def pad_report(result):
    """The padded-pencil report with symbolic rows rendered as text."""
    return {
        "rows": [[pretty(entry) for entry in row] for row in result["rows"]],
        "variables": list(result["variables"]),
        "p_tilde": result["p_tilde"],
        "size": result["size"],
        "kernel_dim": result["kernel_dim"],
        "claimed_rank": result["claimed_rank"],
        "verified_rank": result["verified_rank"],
        "verified": result["verified"],
        "verified_at": (None if result["verified_at"] is None
                        else list(result["verified_at"])),
        "fullness_bound": result["fullness_bound"],
        "fullness_at": (None if result["fullness_at"] is None
                        else list(result["fullness_at"])),
        "samples": result["samples"],
    }
