"""Evaluating polynomials on matrix tuples, spectral data, and sampling-based
refutation witnesses.

A matrix tuple assigns one square matrix per variable; starred letters act as
the conjugate transpose.  All decision data (ranks, characteristic
polynomials, Jordan profiles) is computed exactly over the coefficient field.
Floating-point enters only in norm comparisons, which are done twice — at
machine precision and at 256 bits — and reported with explicit tolerances.
"""

from __future__ import annotations

import hashlib
import random
from fractions import Fraction

import mpmath
import numpy as np

from .fields import FieldError
from .linalg import Matrix, rational_roots
from .ncpoly import UniPoly


class MatrixTuple:
    """A tuple of n x n matrices over a field, one per variable."""

    __slots__ = ("field", "mats", "size")

    def __init__(self, field, mats):
        mats = tuple(mats)
        if not mats:
            raise ValueError("a matrix tuple needs at least one matrix")
        size = mats[0].nrows
        for m in mats:
            if m.field != field:
                raise FieldError("matrix tuple mixes fields")
            if m.nrows != size or m.ncols != size:
                raise ValueError("matrix tuple entries must be square, same size")
        self.field = field
        self.mats = mats
        self.size = size

    @property
    def nvars(self):
        return len(self.mats)

    def to_json(self):
        return {
            "field": self.field.spec,
            "size": self.size,
            "matrices": [[[str(e) for e in row] for row in m.rows]
                         for m in self.mats],
        }

    @classmethod
    def from_json(cls, data):
        from .parsing import parse_field, parse_scalar
        field = parse_field(data["field"])
        size = int(data["size"])
        mats = []
        for rows in data["matrices"]:
            if len(rows) != size or any(len(r) != size for r in rows):
                raise ValueError("matrix rows do not match declared size")
            mats.append(Matrix(field,
                               [[parse_scalar(e, field) for e in row]
                                for row in rows]))
        return cls(field, mats)

    def embed(self, prec=53):
        """Numeric copies of the matrices (numpy complex128, or lists of
        mpmath.mpc beyond 53 bits)."""
        if prec <= 53:
            return [np.array([[complex(e.embed(prec)) for e in row]
                              for row in m.rows]) for m in self.mats]
        out = []
        with mpmath.workprec(prec):
            for m in self.mats:
                out.append(mpmath.matrix(
                    [[e.embed(prec) for e in row] for row in m.rows]))
        return out


def _letter_matrix(tup, letter):
    m = tup.mats[abs(letter) - 1]
    return m.conj_transpose() if letter < 0 else m


def evaluate(f, tup):
    """f(X1, ..., Xn) as an exact Matrix.  Prefix products are cached so
    repeated monomial stems cost one multiplication each."""
    if f.field != tup.field:
        raise FieldError("polynomial and tuple live over different fields")
    if len(f.vars) > tup.nvars:
        raise ValueError("tuple has %d matrices but %d variables are in play"
                         % (tup.nvars, len(f.vars)))
    n = tup.size
    cache = {(): Matrix.identity(tup.field, n)}

    def word_matrix(w):
        got = cache.get(w)
        if got is not None:
            return got
        m = word_matrix(w[:-1]) @ _letter_matrix(tup, w[-1])
        cache[w] = m
        return m

    acc = Matrix.zeros(tup.field, n, n)
    for w in sorted(f.terms, key=len):
        acc = acc + word_matrix(w).scale(f.terms[w])
    return acc


def char_poly(M):
    """Characteristic polynomial det(t*I - M), exactly, by the
    Faddeev-LeVerrier recurrence (valid in characteristic zero)."""
    n = M.nrows
    field = M.field
    coeffs = [field.one()]          # coefficient of t^n
    Mk = Matrix.zeros(field, n, n)
    ck = field.one()
    for k in range(1, n + 1):
        Mk = M @ (Mk + Matrix.identity(field, n).scale(ck))
        ck = -Mk.trace() / k
        coeffs.append(ck)
    return UniPoly(field, list(reversed(coeffs)))


def _rank_sequence(field, B, n):
    """[rank B, rank B^2, ...] until it stabilizes."""
    seq = []
    P = B
    prev = n
    while True:
        r = P.rank()
        seq.append(r)
        if r == prev or r == 0:
            break
        prev = r
        P = P @ B
    return seq


def _block_sizes(n_ambient, seq):
    """Jordan block sizes for one eigenvalue from the rank sequence of
    (M - lam*I)^j: there are r_{j-1} - 2 r_j + r_{j+1} blocks of size
    exactly j (the complement of the generalized eigenspace cancels out)."""
    ranks = [n_ambient] + list(seq)
    ranks.append(ranks[-1])
    blocks = []
    for j in range(1, len(ranks) - 1):
        b = ranks[j - 1] - 2 * ranks[j] + ranks[j + 1]
        blocks.extend([j] * b)
    blocks.sort(reverse=True)
    return blocks


def _deflate(p, lam):
    """p / (t - lam); the division must be exact."""
    return p.exact_div(UniPoly(p.field, (-lam, p.field.one())))


def eval_unipoly_matrix(p, M):
    """Horner evaluation of a UniPoly at a square Matrix."""
    n = M.nrows
    acc = Matrix.zeros(M.field, n, n)
    ident = Matrix.identity(M.field, n)
    for c in reversed(p.coeffs):
        acc = acc @ M + ident.scale(c)
    return acc


def _field_roots(field, p):
    """Roots of the UniPoly p that lie in `field`, with multiplicity:
    returns (list of (Scalar, mult), residual UniPoly).

    Rational roots are found completely; quadratic residuals (and quadratic
    factors over Q of longer residuals) are resolved whenever their
    discriminant has a square root inside the declared tower.  Anything left
    is returned as the residual factor.
    """
    roots = []
    work = p
    for r in rational_roots(work):
        rs = field.scalar(r)
        while (work.degree() or 0) >= 1 and work.eval_scalar(rs).is_zero():
            work = _deflate(work, rs)
            roots.append(rs)
    # quadratic residual: try the quadratic formula inside the tower
    deg = work.degree() or 0
    if deg == 2:
        c0, c1, c2 = (work[0], work[1], work[2])
        disc = c1 * c1 - field.scalar(4) * c2 * c0
        s = field.sqrt(disc)
        if s is not None:
            half = field.scalar(Fraction(1, 2))
            for sign in (1, -1):
                lam = (-c1 + s * field.scalar(sign)) * half / c2
                roots.append(lam)
            work = UniPoly.constant(field, c2)
    elif deg > 2 and all(c.is_rational() for c in work.coeffs):
        # split off irreducible quadratics over Q whose discriminant has a
        # square root in the tower
        import sympy
        t = sympy.symbols("t")
        expr = sum(sympy.Rational(c.as_fraction()) * t ** j
                   for j, c in enumerate(work.coeffs))
        for fac, mult in sympy.factor_list(expr, t)[1]:
            poly = sympy.Poly(fac, t)
            if poly.degree() != 2:
                continue
            cs = [Fraction(str(x)) for x in poly.all_coeffs()]  # [a, b, c]
            a, b, c = (field.scalar(v) for v in cs)
            disc = b * b - field.scalar(4) * a * c
            s = field.sqrt(disc)
            if s is None:
                continue
            half = field.scalar(Fraction(1, 2))
            for sign in (1, -1):
                lam = (-b + s * field.scalar(sign)) * half / a
                for _ in range(mult):
                    if (work.degree() or 0) >= 1 and work.eval_scalar(lam).is_zero():
                        work = _deflate(work, lam)
                        roots.append(lam)
    # aggregate multiplicities
    agg = []
    for lam in roots:
        for item in agg:
            if item[0] == lam:
                item[1] += 1
                break
        else:
            agg.append([lam, 1])
    return [(lam, m) for lam, m in agg], work


def jordan_profile(M):
    """Exact Jordan data of M over its own field.

    Returns a dict with the characteristic polynomial, one entry per
    eigenvalue found in the field (value, algebraic multiplicity, rank
    sequence of powers of M - lam*I, block sizes), and — when the
    characteristic polynomial does not split in the field — the residual
    factor together with the rank sequence of its powers evaluated at M
    (a similarity invariant even though its roots stay symbolic).
    """
    n = M.nrows
    field = M.field
    p = char_poly(M)
    roots, residual = _field_roots(field, p)
    eigen = []
    for lam, mult in sorted(roots, key=lambda rm: str(rm[0])):
        B = M - Matrix.identity(field, n).scale(lam)
        seq = _rank_sequence(field, B, n)
        eigen.append({
            "value": str(lam),
            "algebraic_multiplicity": mult,
            "rank_sequence": seq,
            "block_sizes": _block_sizes(n, seq),
        })
    out = {
        "size": n,
        "char_poly": str(p),
        "eigenvalues": eigen,
        "residual_factor": None,
        "residual_rank_sequence": None,
    }
    if (residual.degree() or 0) >= 1:
        out["residual_factor"] = str(residual)
        out["residual_rank_sequence"] = _rank_sequence(
            field, eval_unipoly_matrix(residual, M), n)
    return out


# -- sampling ----------------------------------------------------------------


def _rng(seed, size, index, kind):
    digest = hashlib.sha256(
        ("%s:%s:%s:%s" % (seed, size, index, kind)).encode()).digest()
    return random.Random(digest)


def sample_tuple(field, nvars, size, seed, index, bound=3):
    """Deterministic integer-entry sample; entry j of sample `index` depends
    only on (seed, size, index)."""
    rng = _rng(seed, size, index, "int")
    mats = []
    for _ in range(nvars):
        rows = [[field.scalar(rng.randint(-bound, bound))
                 for _ in range(size)] for _ in range(size)]
        mats.append(Matrix(field, rows))
    return MatrixTuple(field, mats)


def sample_unit_tuple(nvars, size, seed, index, prec=53):
    """Complex sample with entries drawn from the unit box, at the requested
    binary precision (numpy arrays at <=53 bits, mpmath matrices above)."""
    rng = _rng(seed, size, index, "unit")
    raw = [[[complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
             for _ in range(size)] for _ in range(size)]
           for _ in range(nvars)]
    if prec <= 53:
        return [np.array(m) for m in raw]
    with mpmath.workprec(prec):
        return [mpmath.matrix([[mpmath.mpc(e.real, e.imag) for e in row]
                               for row in m]) for m in raw]


def evaluate_numeric(f, mats, prec=53):
    """Evaluate f at a list of numeric matrices (numpy or mpmath)."""
    if prec <= 53:
        n = mats[0].shape[0]
        ident = np.eye(n, dtype=complex)
        cache = {(): ident}

        def letter(l):
            m = mats[abs(l) - 1]
            return m.conj().T if l < 0 else m

        def wm(w):
            got = cache.get(w)
            if got is None:
                got = cache[w] = wm(w[:-1]) @ letter(w[-1])
            return got

        acc = np.zeros((n, n), dtype=complex)
        for w, c in f.terms.items():
            acc = acc + complex(c.embed(53)) * wm(w)
        return acc
    with mpmath.workprec(prec):
        n = mats[0].rows
        cache = {(): mpmath.eye(n)}

        def letter(l):
            m = mats[abs(l) - 1]
            return m.transpose_conj() if l < 0 else m

        def wm(w):
            got = cache.get(w)
            if got is None:
                got = cache[w] = wm(w[:-1]) * letter(w[-1])
            return got

        acc = mpmath.zeros(n, n)
        for w, c in f.terms.items():
            acc = acc + c.embed(prec) * wm(w)
        return acc


def operator_norm(M, prec=53):
    if prec <= 53:
        return float(np.linalg.svd(M, compute_uv=False)[0]) if M.size else 0.0
    with mpmath.workprec(prec):
        S = mpmath.svd_c(M, compute_uv=False)
        return max((abs(S[j]) for j in range(S.rows)), default=mpmath.mpf(0))


def frobenius_norm(M, prec=53):
    if prec <= 53:
        return float(np.linalg.norm(M))
    with mpmath.workprec(prec):
        acc = mpmath.mpf(0)
        for j in range(M.rows):
            for k in range(M.cols):
                acc += abs(M[j, k]) ** 2
        return mpmath.sqrt(acc)


# -- refutation witnesses -----------------------------------------------------


def degenerate_probes(field, nvars, size):
    """Deterministic catalog of singular / nilpotent tuples, tried before
    random samples.  Rank and Jordan-structure separations between
    inequivalent polynomials occur on non-generic tuples (matrix units,
    shift blocks, signed cycles, projectors), which uniform integer
    sampling produces only rarely."""
    one, zero = field.one(), field.zero()

    def unit(i, j):
        return Matrix(field, [[one if (r, c) == (i, j) else zero
                               for c in range(size)] for r in range(size)])

    def shift():
        return Matrix(field, [[one if c == r + 1 else zero
                               for c in range(size)] for r in range(size)])

    def signed_cycle():
        rows = [[zero for _ in range(size)] for _ in range(size)]
        for r in range(size - 1):
            rows[r][r + 1] = one
        rows[size - 1][0] = one if size == 1 else -one
        return Matrix(field, rows)

    jay = shift()
    cyc = signed_cycle()
    last = size - 1
    catalog = [
        [unit(0, min(j, last)) for j in range(nvars)],
        [unit(0, 0)] + [cyc if j % 2 else cyc.transpose()
                        for j in range(1, nvars)],
        [jay if j % 2 == 0 else jay.transpose() for j in range(nvars)],
        [jay] + [unit(last, last).scale(-one) for _ in range(1, nvars)],
        [unit(min(j, last), 0) for j in range(nvars)],
    ]
    return [MatrixTuple(field, mats) for mats in catalog]


def _search_tuples(field, nvars, size, seed, samples, bound):
    for X in degenerate_probes(field, nvars, size):
        yield X
    for index in range(samples):
        yield sample_tuple(field, nvars, size, seed, index, bound)


class RefutationWitness:
    """A concrete matrix tuple on which two polynomials provably differ,
    with the invariant that separates them."""

    def __init__(self, kind, tup, details):
        self.kind = kind
        self.tuple = tup
        self.details = details

    def to_json(self):
        return {"kind": self.kind,
                "tuple": self.tuple.to_json() if isinstance(self.tuple, MatrixTuple)
                else self.tuple,
                "details": self.details}

    def __repr__(self):
        return "RefutationWitness(kind=%r, size=%s)" % (
            self.kind,
            self.tuple.size if isinstance(self.tuple, MatrixTuple) else "?")


def rank_refuter(f, g, seed=0, max_size=5, samples=50, bound=3):
    """Search for a tuple where rank f(X) != rank g(X); the degenerate
    catalog is tried first at each size, then seeded random tuples."""
    nvars = max(len(f.vars), 1)
    for size in range(1, max_size + 1):
        for X in _search_tuples(f.field, nvars, size, seed, samples, bound):
            rf = evaluate(f, X).rank()
            rg = evaluate(g, X).rank()
            if rf != rg:
                return RefutationWitness(
                    "rank", X,
                    {"size": size, "rank_lhs": rf, "rank_rhs": rg})
    return None


def charpoly_refuter(f, g, seed=0, max_size=5, samples=50, bound=3):
    nvars = max(len(f.vars), 1)
    for size in range(1, max_size + 1):
        for X in _search_tuples(f.field, nvars, size, seed, samples, bound):
            pf = char_poly(evaluate(f, X))
            pg = char_poly(evaluate(g, X))
            if pf != pg:
                return RefutationWitness(
                    "char_poly", X,
                    {"size": size, "char_poly_lhs": str(pf),
                     "char_poly_rhs": str(pg)})
    return None


def similarity_invariant_refuter(f, g, seed=0, max_size=5, samples=50, bound=3):
    """Search for a tuple where f(X) and g(X) are provably not similar:
    different characteristic polynomials or different Jordan profiles."""
    nvars = max(len(f.vars), 1)
    for size in range(1, max_size + 1):
        for X in _search_tuples(f.field, nvars, size, seed, samples, bound):
            Mf = evaluate(f, X)
            Mg = evaluate(g, X)
            pf = char_poly(Mf)
            pg = char_poly(Mg)
            if pf != pg:
                return RefutationWitness(
                    "char_poly", X,
                    {"size": size, "char_poly_lhs": str(pf),
                     "char_poly_rhs": str(pg)})
            prof_f = jordan_profile(Mf)
            prof_g = jordan_profile(Mg)
            if prof_f != prof_g:
                return RefutationWitness(
                    "jordan", X,
                    {"size": size, "profile_lhs": prof_f,
                     "profile_rhs": prof_g})
    return None


def _norm_gaps(f, g, mats, prec):
    """((operator gap, operator scale), (Frobenius gap, Frobenius scale)):
    the scale is the comparison unit max(1, ||f(X)||) of the relative test."""
    Mf = evaluate_numeric(f, mats, prec)
    Mg = evaluate_numeric(g, mats, prec)
    nf_op = operator_norm(Mf, prec)
    nf_fro = frobenius_norm(Mf, prec)
    gap_op = abs(nf_op - operator_norm(Mg, prec))
    gap_fro = abs(nf_fro - frobenius_norm(Mg, prec))
    return (gap_op, max(1.0, float(nf_op))), (gap_fro, max(1.0, float(nf_fro)))


def norm_refuter(f, g, seed=0, max_size=5, samples=50, tol=None, prec=53):
    """Search for a complex unit-box tuple where the operator or Frobenius
    norms of f(X) and g(X) differ relatively: |‖f(X)‖ − ‖g(X)‖| exceeding
    tol * max(1, ‖f(X)‖).  The candidate is re-checked at 256 bits before
    being reported.  Default tolerance: 1e-8 at 53 bits, 1e-40 above."""
    if tol is None:
        tol = 1e-8 if prec <= 53 else 1e-40
    nvars = max(len(f.vars), 1)
    for size in range(1, max_size + 1):
        for index in range(samples):
            mats = sample_unit_tuple(nvars, size, seed, index, prec)
            (gap_op, sc_op), (gap_fro, sc_fro) = _norm_gaps(f, g, mats, prec)
            if float(gap_op) > tol * sc_op or float(gap_fro) > tol * sc_fro:
                hi = max(256, prec)
                mats_hi = sample_unit_tuple(nvars, size, seed, index, hi)
                (gap_op_hi, sc_op_hi), (gap_fro_hi, sc_fro_hi) = \
                    _norm_gaps(f, g, mats_hi, hi)
                if (float(gap_op_hi) <= tol * sc_op_hi
                        and float(gap_fro_hi) <= tol * sc_fro_hi):
                    continue
                entries = [[[repr(complex(e)) for e in row] for row in m]
                           for m in sample_unit_tuple(nvars, size, seed, index, 53)]
                return RefutationWitness(
                    "norm",
                    {"size": size, "entries": entries,
                     "seed": seed, "index": index},
                    {"size": size,
                     "operator_norm_gap": float(gap_op_hi),
                     "frobenius_norm_gap": float(gap_fro_hi),
                     "relative_scale_operator": sc_op_hi,
                     "relative_scale_frobenius": sc_fro_hi,
                     "precision_bits": hi,
                     "tolerance": tol})
    return None


def inner_rank_lower_bound(f, seed=0, max_size=6, samples=6, bound=3):
    """max over samples of ceil(rank f(X) / size): a certified lower bound
    for the inner rank (rank of any factorization f = P Q over the free
    algebra gives rank f(X) <= (inner size) * k)."""
    nvars = max(len(f.vars), 1)
    best = 0
    best_at = None
    for size in range(1, max_size + 1):
        for index in range(samples):
            X = sample_tuple(f.field, nvars, size, seed, index, bound)
            r = evaluate(f, X).rank()
            lb = -(-r // size)
            if lb > best:
                best = lb
                best_at = (size, index)
    return best, best_at


def verify_witness(f, g, witness, tol=None):
    """Recompute the invariant recorded in a witness from scratch; True iff
    it still separates f and g.  For norm witnesses the tolerance defaults
    to the one recorded in the witness."""
    if tol is None:
        tol = witness.details.get("tolerance", 1e-8) \
            if witness.kind == "norm" else 1e-8
    if witness.kind in ("rank", "char_poly", "jordan"):
        X = witness.tuple
        if not isinstance(X, MatrixTuple):
            X = MatrixTuple.from_json(X)
        Mf = evaluate(f, X)
        Mg = evaluate(g, X)
        if witness.kind == "rank":
            return Mf.rank() != Mg.rank()
        if witness.kind == "char_poly":
            return char_poly(Mf) != char_poly(Mg)
        return jordan_profile(Mf) != jordan_profile(Mg)
    if witness.kind == "norm":
        info = witness.tuple
        prec = 256
        mats = sample_unit_tuple(max(len(f.vars), 1), info["size"],
                                 info["seed"], info["index"], prec)
        (gap_op, sc_op), (gap_fro, sc_fro) = _norm_gaps(f, g, mats, prec)
        return float(gap_op) > tol * sc_op or float(gap_fro) > tol * sc_fro
    raise ValueError("unknown witness kind %r" % witness.kind)
