"""Exact linear algebra: dense matrices over a scalar field, sparse
fraction-free elimination, and rank over the rational function field k(t).

The sparse eliminator is the workhorse behind every intertwiner/relation
search; rows are dicts {column: Scalar} so the word-indexed systems (which
are extremely sparse) never materialize dense matrices.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import FieldMismatchError, Scalar
from .ncpoly import UniPoly


class Matrix:
    __slots__ = ("field", "rows")

    def __init__(self, field, rows):
        self.field = field
        self.rows = tuple(tuple(field.scalar(e) if not isinstance(e, Scalar) else e
                                for e in row) for row in rows)
        if self.rows:
            w = len(self.rows[0])
            if any(len(r) != w for r in self.rows):
                raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, field, n, m):
        z = field.zero()
        return cls(field, [[z] * m for _ in range(n)])

    @classmethod
    def identity(cls, field, n):
        one, zero = field.one(), field.zero()
        return cls(field, [[one if i == j else zero for j in range(n)]
                           for i in range(n)])

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if other.field != self.field:
            raise FieldMismatchError("matrix fields differ")
        return other

    def __add__(self, other):
        o = self._check(other)
        if o.shape != self.shape:
            raise ValueError("shape mismatch in matrix addition")
        return Matrix(self.field, [[a + b for a, b in zip(r1, r2)]
                                   for r1, r2 in zip(self.rows, o.rows)])

    def __sub__(self, other):
        o = self._check(other)
        if o.shape != self.shape:
            raise ValueError("shape mismatch in matrix subtraction")
        return Matrix(self.field, [[a - b for a, b in zip(r1, r2)]
                                   for r1, r2 in zip(self.rows, o.rows)])

    def __neg__(self):
        return Matrix(self.field, [[-a for a in r] for r in self.rows])

    def scale(self, c):
        c = self.field.scalar(c) if not isinstance(c, Scalar) else c
        return Matrix(self.field, [[a * c for a in r] for r in self.rows])

    def __matmul__(self, other):
        o = self._check(other)
        if self.ncols != o.nrows:
            raise ValueError("shape mismatch in matrix product")
        cols = list(zip(*o.rows)) if o.rows else []
        zero = self.field.zero()
        out = []
        for r in self.rows:
            orow = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if not (a.is_zero() or b.is_zero()):
                        acc = acc + a * b
                orow.append(acc)
            out.append(orow)
        return Matrix(self.field, out)

    def __pow__(self, k):
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        out = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field ==other.field and self.rows == other.rows

    def __ne__(self, other):
        r = self.__eq__(other)
        return NotImplemented if r is NotImplemented else not r

    def __hash__(self):
        return hash((self.field.spec, self.rows))

    def is_zero(self):
        return all(a.is_zero() for r in self.rows for a in r)

    def transpose(self):
        return Matrix(self.field, list(zip(*self.rows)) if self.rows else [])

    def conj_transpose(self):
        return Matrix(self.field,
                      [[a.conjugate() for a in col] for col in zip(*self.rows)]
                      if self.rows else [])

    def trace(self):
        acc = self.field.zero()
        for i in range(min(self.nrows, self.ncols)):
            acc = acc + self.rows[i][i]
        return acc

    def kron(self, other):
        o = self._check(other)
        out = []
        for r1 in self.rows:
            for r2 in o.rows:
                out.append([a * b for a in r1 for b in r2])
        return Matrix(self.field, out)

    def direct_sum(self, other):
        o = self._check(other)
        z = self.field.zero()
        out = []
        for r in self.rows:
            out.append(list(r) + [z] * o.ncols)
        for r in o.rows:
            out.append([z] * self.ncols + list(r))
        return Matrix(self.field, out)

    def rank(self):
        rows = []
        for r in self.rows:
            d = {j: a for j, a in enumerate(r) if not a.is_zero()}
            if d:
                rows.append(d)
        rank, _, _, _ = sparse_eliminate(rows, self.ncols, self.field,
                                         reduce_full=False)
        return rank

    def nullspace(self):
        """Basis of the right kernel, as dense column vectors."""
        rows = []
        for r in self.rows:
            d = {j: a for j, a in enumerate(r) if not a.is_zero()}
            if d:
                rows.append(d)
        _, basis = sparse_nullspace(rows, self.ncols, self.field)
        zero = self.field.zero()
        return [[v.get(j, zero) for j in range(self.ncols)] for v in basis]

    def is_invertible(self):
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self):
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        rows = []
        for i, r in enumerate(self.rows):
            d = {j: a for j, a in enumerate(r) if not a.is_zero()}
            rows.append(d)
        rhs = {i: {i: self.field.one()} for i in range(n)}
        rank, pivots, rhs_out, _ = sparse_eliminate(rows, n, self.field, rhs=rhs,
                                                    reduce_full=True)
        if rank < n:
            raise ValueError("matrix is singular")
        zero = self.field.zero()
        inv_rows = [[zero] * n for _ in range(n)]
        for col, (row, vec) in pivots.items():
            for k in range(n):
                inv_rows[col][k] = rhs_out.get(row, {}).get(k, zero)
        return Matrix(self.field, inv_rows)

    def __repr__(self):
        return "Matrix(%s, %s)" % (self.field.spec,
                                   [[str(a) for a in r] for r in self.rows])


def sparse_eliminate(rows, ncols, field, rhs=None, reduce_full=True):
    """Gauss-Jordan elimination on sparse rows ({col: Scalar} dicts).

    Returns (rank, pivots, rhs_out, work) where pivots maps pivot column ->
    (row_id, row_dict) with the pivot entry scaled to 1 and (when
    reduce_full) every other pivot column eliminated from every row, and
    work maps row_id -> final row dict.  rhs, if given, maps
    row_id -> {k: Scalar} and is transformed alongside.  Pivoting is
    deterministic: sparsest column first, then sparsest row.
    """
    work = {i: dict(r) for i, r in enumerate(rows)}
    rhs_w = {i: dict(v) for i, v in (rhs or {}).items()}
    col_rows = {}
    for i, r in work.items():
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    n_active = {c: len(s) for c, s in col_rows.items()}
    pivots = {}
    active = set(work)

    def entry_added(i, c):
        col_rows.setdefault(c, set()).add(i)
        if i in active:
            n_active[c] = n_active.get(c, 0) + 1

    def entry_removed(i, c):
        col_rows[c].discard(i)
        if i in active:
            n_active[c] -= 1

    while True:
        best = None
        for c, cnt in n_active.items():
            if cnt <= 0 or c in pivots:
                continue
            if best is None or (cnt, c) < best[0]:
                best = ((cnt, c), c)
        if best is None:
            break
        col = best[1]
        usable = [i for i in col_rows[col] if i in active]
        prow = min(usable, key=lambda i: (len(work[i]), i))
        row = work[prow]
        inv = row[col].inverse()
        for c in list(row):
            row[c] = row[c] * inv
        if prow in rhs_w:
            rhs_w[prow] = {k: v * inv for k, v in rhs_w[prow].items()}
        # park the pivot row before reducing so active counts stay right
        active.discard(prow)
        for c in row:
            n_active[c] -= 1
        targets = [i for i in col_rows.get(col, ()) if i != prow]
        if not reduce_full:
            targets = [i for i in targets if i in active]
        for i in targets:
            other = work[i]
            factor = other.pop(col)
            entry_removed(i, col)
            for c, v in row.items():
                if c == col:
                    continue
                nv = other.get(c, None)
                nv = (-factor * v) if nv is None else nv - factor * v
                if nv.is_zero():
                    if c in other:
                        del other[c]
                        entry_removed(i, c)
                else:
                    if c not in other:
                        entry_added(i, c)
                    other[c] = nv
            if prow in rhs_w:
                pv = rhs_w[prow]
                tv = rhs_w.setdefault(i, {})
                for k, v in pv.items():
                    nv = tv.get(k, None)
                    nv = (-factor * v) if nv is None else nv - factor * v
                    if nv.is_zero():
                        tv.pop(k, None)
                    else:
                        tv[k] = nv
        pivots[col] = (prow, row)
    return len(pivots), pivots, rhs_w, work


def _kernel_from_pivots(pivots, ncols, field):
    pivot_cols = set(pivots)
    basis = []
    one = field.one()
    for j in range(ncols):
        if j in pivot_cols:
            continue
        vec = {j: one}
        for c, (_, row) in pivots.items():
            v = row.get(j)
            if v is not None and not v.is_zero():
                vec[c] = -v
        basis.append(vec)
    return basis


def sparse_nullspace(rows, ncols, field):
    """(rank, kernel basis) of a sparse system; basis vectors are sparse dicts
    over range(ncols), ordered by their free column."""
    rank, pivots, _, _ = sparse_eliminate(rows, ncols, field, reduce_full=True)
    return rank, _kernel_from_pivots(pivots, ncols, field)


def sparse_solve_affine(rows, rhs_vec, ncols, field):
    """Solve A x = b for sparse rows; rhs_vec maps row index -> Scalar.

    Returns (particular sparse dict, kernel basis list) or None when
    inconsistent.
    """
    rhs = {}
    for i, v in rhs_vec.items():
        if not v.is_zero():
            rhs[i] = {0: v}
    rank, pivots, rhs_out, work = sparse_eliminate(rows, ncols, field, rhs=rhs,
                                                   reduce_full=True)
    pivot_rows = {row_id for row_id, _ in pivots.values()}
    for i, vec in rhs_out.items():
        if i not in pivot_rows and not work.get(i) and vec.get(0):
            return None
    particular = {}
    for c, (row_id, _) in pivots.items():
        v = rhs_out.get(row_id, {}).get(0)
        if v is not None and not v.is_zero():
            particular[c] = v
    return particular, _kernel_from_pivots(pivots, ncols, field)


def rank_nullspace(M):
    """Exact (rank, right-kernel basis) of a Matrix."""
    return M.rank(), M.nullspace()


def solve_affine(M, b):
    """Solve M x = b exactly; returns (particular, kernel basis) as dense
    vectors, or None when the system is inconsistent."""
    rows = []
    for r in M.rows:
        rows.append({j: a for j, a in enumerate(r) if not a.is_zero()})
    rhs = {i: (v if isinstance(v, Scalar) else M.field.scalar(v))
           for i, v in enumerate(b)}
    got = sparse_solve_affine(rows, rhs, M.ncols, M.field)
    if got is None:
        return None
    part, basis = got
    zero = M.field.zero()
    dense = lambda v: [v.get(j, zero) for j in range(M.ncols)]
    return dense(part), [dense(v) for v in basis]


def rational_roots(p: UniPoly):
    """All rational roots of a nonzero UniPoly (coefficients may live in a
    tower; a rational root must kill every rational-basis component)."""
    if p.is_zero():
        raise ValueError("rational_roots of the zero polynomial")
    dim = p.field.dim
    comp = None
    for m in range(dim):
        cs = [c.coeffs[m] for c in p.coeffs]
        if any(cs):
            comp = cs
            break
    den = 1
    for c in comp:
        den = den * c.denominator // math_gcd(den, c.denominator)
    ints = [int(c * den) for c in comp]
    while ints and ints[-1] == 0:
        ints.pop()
    if len(ints) <= 1:
        return []
    import sympy

    cand = set()
    a0 = ints[0]
    an = ints[-1]
    if a0 == 0:
        cand.add(Fraction(0))
        k = 0
        while ints[k] == 0:
            k += 1
        a0 = ints[k]
    for pnum in sympy.divisors(abs(a0)):
        for pden in sympy.divisors(abs(an)):
            cand.add(Fraction(pnum, pden))
            cand.add(Fraction(-pnum, pden))
    roots = []
    for r in sorted(cand):
        if p.eval_scalar(r).is_zero():
            roots.append(r)
    return roots


def math_gcd(a, b):
    import math

    return math.gcd(a, b)


def rank_over_kt(rows, field):
    """Rank of a matrix with UniPoly entries over k(t), via fraction-free
    Bareiss elimination with full pivoting.

    Returns (rank, drop) where drop = (rational drop points, residual
    polynomials as strings).  Off the drop set, specializing t preserves the
    rank.
    """
    M = [[e if isinstance(e, UniPoly) else UniPoly(field, (e,)) for e in row]
         for row in rows]
    n = len(M)
    m = len(M[0]) if M else 0
    prev = UniPoly(field, (1,))
    pivots = []
    used_rows, used_cols = set(), set()
    rank = 0
    while True:
        best = None
        for i in range(n):
            if i in used_rows:
                continue
            for j in range(m):
                if j in used_cols:
                    continue
                e = M[i][j]
                if e.is_zero():
                    continue
                key = (e.degree(), i, j)
                if best is None or key < best[0]:
                    best = (key, i, j)
        if best is None:
            break
        _, pi, pj = best
        piv = M[pi][pj]
        for i in range(n):
            if i in used_rows or i == pi:
                continue
            for j in range(m):
                if j in used_cols or j == pj:
                    continue
                M[i][j] = (piv * M[i][j] - M[i][pj] * M[pi][j]).exact_div(prev)
            M[i][pj] = UniPoly.zero(field)
        used_rows.add(pi)
        used_cols.add(pj)
        pivots.append(piv)
        prev = piv
        rank += 1
    drops = set()
    residual = []
    for piv in pivots:
        if piv.degree() == 0:
            continue
        rest = piv
        for r in rational_roots(piv):
            lin = UniPoly(field, (-r, 1))
            while True:
                q, rem = rest.divmod(lin)
                if rem.is_zero() and not q.is_zero():
                    rest = q
                    drops.add(r)
                else:
                    break
        if rest.degree() is not None and rest.degree() >= 1:
            s = str(rest)
            if s not in residual:
                residual.append(s)
    return rank, (sorted(drops), residual)
