"""Linear and affine matrix pencils over an exact field.

A pencil is a matrix-valued linear expression A0 + A1*x_1 + ... + An*x_n with
square constant coefficients.  This module evaluates pencils on matrix tuples
through Kronecker products, decides joint similarity of two coefficient
tuples (exact certificate, exact refutation, or undecided within budget), and
builds the square padding of a rectangular tuple against a full homogeneous
pencil, whose generic rank is pinned down by the kernel of the pencil at the
tuple.

Everything here is exact; randomness only chooses sample points, and every
certificate is re-verified by expansion before it is returned.
"""

from __future__ import annotations

import hashlib
import random

from .equiv import VerificationError
from .evaluation import degenerate_probes, sample_tuple
from .fields import FieldMismatchError
from .linalg import Matrix, sparse_nullspace
from .ncpoly import NcPoly


def _rng(seed, *tags):
    text = "pencil:%s:%s" % (seed, ":".join(str(t) for t in tags))
    digest = hashlib.sha256(text.encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


class LinearPencil:
    """Coefficient matrices A1..An (square, d x d), with an optional constant
    A0.  A pencil with a constant is affine; without one it is homogeneous."""

    __slots__ = ("field", "coefficients", "constant")

    def __init__(self, field, coefficients, constant=None):
        coefficients = tuple(coefficients)
        if not coefficients and constant is None:
            raise ValueError("a pencil needs at least one matrix")
        mats = coefficients + ((constant,) if constant is not None else ())
        size = mats[0].nrows
        for m in mats:
            if m.field != field:
                raise FieldMismatchError("pencil mixes fields")
            if m.nrows != size or m.ncols != size:
                raise ValueError("pencil coefficients must be square, same size")
        self.field = field
        self.coefficients = coefficients
        self.constant = constant

    @classmethod
    def monic_affine(cls, field, coefficients):
        """Affine pencil with constant the identity: I + sum A_j x_j."""
        coefficients = tuple(coefficients)
        if not coefficients:
            raise ValueError("a pencil needs at least one matrix")
        d = coefficients[0].nrows
        return cls(field, coefficients, Matrix.identity(field, d))

    @property
    def arity(self):
        return len(self.coefficients)

    @property
    def size(self):
        return self.coefficients[0].nrows if self.coefficients \
            else self.constant.nrows

    @property
    def is_affine(self):
        return self.constant is not None

    def homogenize(self):
        """A0 + sum A_j x_j  ->  A0 x_0 + sum A_j x_j (one extra variable)."""
        if self.constant is None:
            raise ValueError("pencil is already homogeneous")
        return LinearPencil(self.field, (self.constant,) + self.coefficients)

    def evaluate(self, tup):
        """Kronecker evaluation at a square matrix tuple: for an affine
        pencil A0 (x) I + sum A_j (x) X_j, for a homogeneous one
        sum A_j (x) X_j.  The tuple arity must equal the pencil arity."""
        if tup.field != self.field:
            raise FieldMismatchError("pencil and tuple live over different fields")
        if tup.nvars != self.arity:
            raise ValueError("pencil arity %d but tuple has %d matrices"
                             % (self.arity, tup.nvars))
        s = tup.size
        acc = None
        if self.constant is not None:
            acc = self.constant.kron(Matrix.identity(self.field, s))
        for coeff, mat in zip(self.coefficients, tup.mats):
            term = coeff.kron(mat)
            acc = term if acc is None else acc + term
        return acc

    def inner_rank_lower_bound(self, seed=0, max_size=4, samples=8, bound=3):
        """max over sampled tuples of ceil(rank(evaluation) / size): a
        certified lower bound for the inner rank over the free algebra
        (any factorization through r columns caps every evaluation rank
        at r * size)."""
        best, best_at = 0, None
        for size in range(1, max_size + 1):
            for index in range(samples):
                X = sample_tuple(self.field, self.arity, size, seed, index,
                                 bound)
                r = self.evaluate(X).rank()
                lb = -(-r // size)
                if lb > best:
                    best, best_at = lb, (size, index)
                    if best == self.size:
                        return best, best_at
        return best, best_at

    def to_json(self):
        data = {
            "field": self.field.spec,
            "size": self.size,
            "kind": "affine" if self.is_affine else "homogeneous",
            "coefficients": [[[str(e) for e in row] for row in m.rows]
                             for m in self.coefficients],
        }
        if self.constant is not None:
            data["constant"] = [[str(e) for e in row]
                                for row in self.constant.rows]
        return data

    @classmethod
    def from_json(cls, data):
        from .parsing import parse_field, parse_scalar
        field = parse_field(data["field"])

        def mat(rows):
            return Matrix(field, [[parse_scalar(e, field) for e in row]
                                  for row in rows])

        coefficients = [mat(rows) for rows in data["coefficients"]]
        constant = None
        if data.get("kind") == "affine":
            constant = mat(data["constant"])
        return cls(field, coefficients, constant)

    def __eq__(self, other):
        if not isinstance(other, LinearPencil):
            return NotImplemented
        return (self.field == other.field
                and self.coefficients == other.coefficients
                and self.constant == other.constant)

    def __repr__(self):
        kind = "affine" if self.is_affine else "homogeneous"
        return "LinearPencil(%s, %d x %d, arity %d)" % (
            kind, self.size, self.size, self.arity)


def pencil_eval(pencil, tup):
    """Evaluate a pencil at a matrix tuple (see LinearPencil.evaluate)."""
    return pencil.evaluate(tup)


class SimilarityCertificate:
    """An invertible P with P * A_j = B_j * P for every coordinate; the
    constructor re-checks every identity and the invertibility exactly."""

    __slots__ = ("matrix", "source", "target")

    def __init__(self, matrix, source, target):
        if source.nvars != target.nvars or source.size != target.size:
            raise ValueError("tuples must share size and arity")
        if not matrix.is_invertible():
            raise VerificationError("similarity matrix is singular")
        for a, b in zip(source.mats, target.mats):
            if matrix @ a != b @ matrix:
                raise VerificationError(
                    "similarity matrix does not intertwine the tuples")
        self.matrix = matrix
        self.source = source
        self.target = target

    def to_json(self):
        return {
            "matrix": [[str(e) for e in row] for row in self.matrix.rows],
            "size": self.source.size,
            "arity": self.source.nvars,
        }

    def __repr__(self):
        return "SimilarityCertificate(%d x %d)" % self.matrix.shape


def _intertwining_matrices(A, B):
    """Basis of {P : P * A_j = B_j * P for all j} as a list of matrices."""
    field = A.field
    c = A.size
    rows = []
    for a, b in zip(A.mats, B.mats):
        for i in range(c):
            for l in range(c):
                row = {}
                for k in range(c):
                    e = a[k, l]
                    if not e.is_zero():
                        col = i * c + k
                        row[col] = row.get(col, field.zero()) + e
                    e = b[i, k]
                    if not e.is_zero():
                        col = k * c + l
                        row[col] = row.get(col, field.zero()) - e
                row = {col: v for col, v in row.items() if not v.is_zero()}
                if row:
                    rows.append(row)
    _, basis = sparse_nullspace(rows, c * c, field)
    zero = field.zero()
    out = []
    for vec in basis:
        out.append(Matrix(field, [[vec.get(i * c + k, zero) for k in range(c)]
                                  for i in range(c)]))
    return out


def _trace_word_separation(A, B):
    """Search for a word w with trace w(A) != trace w(B), exactly.

    Words are evaluated on the direct sums D_j = A_j (+) B_j; the trace
    difference equals trace(w(D) * E) with E = I (+) -I.  The span of all
    word evaluations w(D) is built breadth-first until it stops growing, so
    checking the trace functional on the spanning words covers words of
    every length (in particular all words up to length 2 * size^2, which
    suffice to separate non-conjugate semisimple tuples in characteristic
    zero).  Returns (word, trace at A, trace at B) or None."""
    field = A.field
    c = A.size
    sums = [a.direct_sum(b) for a, b in zip(A.mats, B.mats)]
    dim = 2 * c

    pivots = {}

    def reduce_vec(vec):
        while True:
            hit_col = None
            for col in sorted(vec):
                if not vec[col].is_zero() and col in pivots:
                    hit_col = col
                    break
            if hit_col is None:
                return {col: v for col, v in vec.items() if not v.is_zero()}
            factor = vec[hit_col]
            for c2, v2 in pivots[hit_col].items():
                acc = vec.get(c2, field.zero()) - factor * v2
                if acc.is_zero():
                    vec.pop(c2, None)
                else:
                    vec[c2] = acc

    def insert(mat):
        vec = {}
        for i, row in enumerate(mat.rows):
            for j, e in enumerate(row):
                if not e.is_zero():
                    vec[i * dim + j] = e
        vec = reduce_vec(vec)
        if not vec:
            return False
        lead = min(vec)
        inv = vec[lead].inverse()
        pivots[lead] = {col: v * inv for col, v in vec.items()}
        return True

    frontier = [((), Matrix.identity(field, dim))]
    insert(frontier[0][1])
    basis_words = [frontier[0]]
    while frontier:
        new_frontier = []
        for word, mat in frontier:
            for j, d in enumerate(sums):
                cand = d @ mat
                if insert(cand):
                    item = ((j + 1,) + word, cand)
                    new_frontier.append(item)
                    basis_words.append(item)
        frontier = new_frontier

    for word, mat in basis_words:
        tr_a = sum((mat[i, i] for i in range(c)), field.zero())
        tr_b = sum((mat[c + i, c + i] for i in range(c)), field.zero())
        if tr_a != tr_b:
            return word, tr_a, tr_b
    return None


def joint_similarity(A, B, seed=0, max_size=4, samples=20, combos=64):
    """Decide whether two matrix tuples are simultaneously conjugate.

    Returns a report dict:
      similar      True / False / None (undecided within budget)
      certificate  SimilarityCertificate when similar
      witness      refutation data when not similar
      reason       one-line explanation

    Certificates come from invertible points of the linear space
    {P : P A_j = B_j P}; refutations from a zero or everywhere-singular
    intertwining space, a separating trace word, or a rank gap of the
    homogenized pencils at a sampled tuple."""
    if A.field != B.field:
        raise FieldMismatchError("tuples live over different fields")
    if A.size != B.size or A.nvars != B.nvars:
        raise ValueError("tuples must share size and arity")
    field = A.field
    c = A.size

    def report(similar, certificate=None, witness=None, reason=""):
        return {"similar": similar, "certificate": certificate,
                "witness": witness, "reason": reason}

    if A.mats == B.mats:
        cert = SimilarityCertificate(Matrix.identity(field, c), A, B)
        return report(True, certificate=cert, reason="the tuples are equal")

    space = _intertwining_matrices(A, B)
    if not space:
        return report(
            False,
            witness={"kind": "intertwiner_space", "dimension": 0},
            reason="the only matrix with P*A_j = B_j*P is zero")

    for P in space:
        if P.is_invertible():
            cert = SimilarityCertificate(P, A, B)
            return report(
                True, certificate=cert,
                reason="invertible point of the %d-dimensional intertwining "
                       "space" % len(space))

    if len(space) == 1:
        return report(
            False,
            witness={"kind": "intertwiner_space", "dimension": 1,
                     "basis_rank": space[0].rank()},
            reason="the intertwining space is a line spanned by a singular "
                   "matrix")

    rng = _rng(seed, "combo", c, len(space))
    for trial in range(combos):
        width = 3 + trial // 8
        P = Matrix.zeros(field, c, c)
        for mat in space:
            P = P + mat.scale(field.scalar(rng.randint(-width, width)))
        if P.is_invertible():
            cert = SimilarityCertificate(P, A, B)
            return report(
                True, certificate=cert,
                reason="invertible point of the %d-dimensional intertwining "
                       "space" % len(space))

    refuters = [_refute_by_traces, _refute_by_pencil_ranks]
    if c > 4:
        refuters.reverse()
    for refute in refuters:
        got = refute(A, B, seed, max_size, samples)
        if got is not None:
            witness, reason = got
            return report(False, witness=witness, reason=reason)

    return report(
        None,
        reason="no invertible intertwining matrix within %d random "
               "combinations, and no exact invariant separated the tuples"
               % combos)


def _refute_by_traces(A, B, seed, max_size, samples):
    sep = _trace_word_separation(A, B)
    if sep is None:
        return None
    word, tr_a, tr_b = sep
    text = "*".join("x%d" % j for j in word) or "1"
    witness = {"kind": "trace_word", "word": list(word),
               "trace_lhs": str(tr_a), "trace_rhs": str(tr_b)}
    return witness, "trace of the word %s differs: %s vs %s" % (
        text, tr_a, tr_b)


def _refute_by_pencil_ranks(A, B, seed, max_size, samples):
    field = A.field
    pa = LinearPencil(field, (Matrix.identity(field, A.size),) + A.mats)
    pb = LinearPencil(field, (Matrix.identity(field, B.size),) + B.mats)
    nvars = A.nvars + 1
    for size in range(1, max_size + 1):
        candidates = list(degenerate_probes(field, nvars, size))
        candidates.extend(sample_tuple(field, nvars, size, seed, index)
                          for index in range(samples))
        for X in candidates:
            ra = pa.evaluate(X).rank()
            rb = pb.evaluate(X).rank()
            if ra != rb:
                witness = {"kind": "pencil_rank", "tuple": X.to_json(),
                           "ranks": [ra, rb]}
                return witness, ("homogenized pencils have ranks %d vs %d "
                                 "at a size-%d tuple" % (ra, rb, size))
    return None


class PencilFullnessError(ValueError):
    """The padding construction needs a pencil certified full, and the
    randomized lower bound did not reach the pencil size."""


def _fresh_variable_names(n, p_tilde, width):
    names = []
    for i in range(1, n + 1):
        for r in range(1, p_tilde + 1):
            for c in range(1, width + 1):
                names.append("y%d_%d_%d" % (i, r, c))
    return names


def pad_pencil(pencil, T, seed=0, samples=20, bound=3,
               fullness_max_size=4, fullness_samples=8):
    """Square padding of a rectangular tuple against a full homogeneous
    pencil.

    pencil: homogeneous, d x d coefficients A_1..A_n, certified full by a
    randomized inner-rank lower bound reaching d (PencilFullnessError
    otherwise).  T: one p x q matrix per pencil coordinate, p >= q.

    With pt = p + (p-q)(d-1), the result is the pt*d x pt*d matrix

        sum_i  A_i  (x)  [ T_i over zeros | fresh variables y ]

    whose first q inner columns hold T_i padded by zero rows and whose
    remaining pt-q inner columns hold fresh commuting-for-nothing variables
    y_i_r_c (one alphabet across all blocks).  Its rank over the free
    algebra on y equals pt*d - dim ker(pencil at T); the report verifies
    that value from below by substituting random matrices for the y
    variables (sizes 1 and 2) and computing exact ranks.

    Returns a report dict with the symbolic matrix (`rows`, NcPoly entries),
    `p_tilde`, `size`, `kernel_dim`, `claimed_rank`, `verified_rank`,
    `verified`, and the sampling parameters."""
    if pencil.is_affine:
        raise ValueError("padding expects a homogeneous pencil")
    field = pencil.field
    d = pencil.size
    n = pencil.arity
    T = list(T)
    if len(T) != n:
        raise ValueError("tuple arity %d but pencil arity %d" % (len(T), n))
    p, q = T[0].shape
    for m in T:
        if m.field != field:
            raise FieldMismatchError("pencil and tuple live over different fields")
        if m.shape != (p, q):
            raise ValueError("all tuple entries must share the same shape")
    if p < q:
        raise ValueError("the tuple must have at least as many rows as columns")
    if q == 0:
        raise ValueError("the tuple needs at least one column")

    lb, lb_at = pencil.inner_rank_lower_bound(
        seed, max_size=fullness_max_size, samples=fullness_samples)
    if lb < d:
        raise PencilFullnessError(
            "inner-rank lower bound reached only %d of %d; the pencil was "
            "not certified full" % (lb, d))

    p_tilde = p + (p - q) * (d - 1)
    width = p_tilde - q
    names = _fresh_variable_names(n, p_tilde, width)

    def y_index(i, r, c):
        return (i * p_tilde + r) * width + c + 1

    zero = field.zero()
    dim = p_tilde * d
    rows = [[NcPoly.zero(field, names) for _ in range(dim)]
            for _ in range(dim)]
    for i, (coeff, t) in enumerate(zip(pencil.coefficients, T)):
        for bi in range(d):
            for bj in range(d):
                a = coeff[bi, bj]
                if a.is_zero():
                    continue
                for r in range(p_tilde):
                    row = rows[bi * p_tilde + r]
                    for c in range(q):
                        e = t[r, c] if r < p else zero
                        if not e.is_zero():
                            row[bj * p_tilde + c] = row[bj * p_tilde + c] + \
                                NcPoly.constant(field, names, a * e)
                    for c in range(width):
                        term = NcPoly(field, names,
                                      {(y_index(i, r, c),): a})
                        col = bj * p_tilde + q + c
                        row[col] = row[col] + term

    kernel_mat = None
    for coeff, t in zip(pencil.coefficients, T):
        term = coeff.kron(t)
        kernel_mat = term if kernel_mat is None else kernel_mat + term
    kernel_dim = d * q - kernel_mat.rank()
    claimed = p_tilde * d - kernel_dim

    n_vars = n * p_tilde * width
    verified = 0
    verified_at = None
    for index in range(max(samples, 1)):
        for size in (1, 2):
            rng = _rng(seed, "pad", index, size)
            blocks = [Matrix(field,
                             [[field.scalar(rng.randint(-bound, bound))
                               for _ in range(size)] for _ in range(size)])
                      for _ in range(n_vars)]
            eye = Matrix.identity(field, size)
            total = None
            for i, (coeff, t) in enumerate(zip(pencil.coefficients, T)):
                inner = [[None] * (p_tilde * size)
                         for _ in range(p_tilde * size)]
                for r in range(p_tilde):
                    for c in range(q):
                        e = (t[r, c] if r < p else zero)
                        block = eye.scale(e)
                        for u in range(size):
                            for v in range(size):
                                inner[r * size + u][c * size + v] = block[u, v]
                    for c in range(width):
                        block = blocks[y_index(i, r, c) - 1]
                        for u in range(size):
                            for v in range(size):
                                inner[r * size + u][(q + c) * size + v] = \
                                    block[u, v]
                term = coeff.kron(Matrix(field, inner))
                total = term if total is None else total + term
            r = total.rank()
            lbr = -(-r // size)
            if lbr > verified:
                verified, verified_at = lbr, (size, index)
            if verified >= claimed:
                break
        if verified >= claimed:
            break

    return {
        "rows": rows,
        "variables": names,
        "p_tilde": p_tilde,
        "size": dim,
        "kernel_dim": kernel_dim,
        "claimed_rank": claimed,
        "verified_rank": verified,
        "verified": verified == claimed,
        "verified_at": verified_at,
        "fullness_bound": lb,
        "fullness_at": lb_at,
        "samples": samples,
    }
