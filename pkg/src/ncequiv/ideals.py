"""One-sided ideal arithmetic in the free algebra.

Everything here is exact and certificate-producing:

* one-sided division (`divide_right_by`, `divide_left_by`) — greedy
  leading-term division, which is a complete membership test for one-sided
  principal ideals because the graded-lex leading word of a product is the
  product of the leading words (no cancellation is possible among distinct
  quotient words);
* reduced weak bases of two-generator one-sided ideals with cofactor
  tracking (`weak_basis`).  In the free algebra the leading words of a
  one-sided combination can only collide when one is a prefix (right ideals)
  or suffix (left ideals) of the other, so a Euclidean-style reduction loop
  on the two generators is a complete, terminating completion procedure;
* comaximality certificates (`comaximality_certificate`) — u, v with
  f*u + g*v = 1 (or u*f + v*g = 1), and a definitive `None` otherwise.
  Whenever such a pair exists at all, one exists with deg u < deg g and
  deg v < deg f, so a single bounded linear solve decides the question;
* greatest common right divisors (`gcrd`) via the left-ideal weak basis
  (complete whenever the left ideal is principal) with a second candidate
  source for the non-principal case: common right factors of the leading
  homogeneous parts, lifted stratum by stratum;
* unique factorization of homogeneous elements (`factor_homogeneous`).
"""

from __future__ import annotations

from .ncpoly import NcPoly, letter_key, word_key
from .linalg import sparse_eliminate, sparse_solve_affine


def letters_of(*polys):
    """Sorted letters appearing in any of the given polynomials."""
    s = set()
    for f in polys:
        for w in f.terms:
            s.update(w)
    return sorted(s, key=letter_key)


def words_of_degree(letters, deg):
    """All words of exact length `deg` over `letters`, lexicographic order."""
    out = [()]
    for _ in range(deg):
        out = [w + (l,) for w in out for l in letters]
    return out


def _monomial(f, word, coeff):
    return NcPoly(f.field, f.vars, {word: coeff})


def divide_right_by(f, h):
    """q with f == q * h, or None (complete: no such q exists)."""
    if h.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if h.degree() == 0:
        return f * h.constant_term().inverse()
    q = NcPoly.zero(f.field, f.vars)
    r = f
    lh = h.leading_word()
    ch = h.leading_coeff()
    while not r.is_zero():
        lr = r.leading_word()
        if len(lr) < len(lh) or lr[len(lr) - len(lh):] != lh:
            return None
        m = _monomial(f, lr[:len(lr) - len(lh)], r.leading_coeff() / ch)
        q = q + m
        r = r - m * h
    return q


def divide_left_by(f, h):
    """q with f == h * q, or None (complete)."""
    if h.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if h.degree() == 0:
        return f * h.constant_term().inverse()
    q = NcPoly.zero(f.field, f.vars)
    r = f
    lh = h.leading_word()
    ch = h.leading_coeff()
    while not r.is_zero():
        lr = r.leading_word()
        if len(lr) < len(lh) or lr[:len(lh)] != lh:
            return None
        m = _monomial(f, lr[len(lh):], r.leading_coeff() / ch)
        q = q + m
        r = r - h * m
    return q


def weak_basis(p, q, side):
    """Reduced weak basis of the one-sided ideal generated by p and q.

    side "right": ideal p*R + q*R, reductions when one leading word is a
    prefix of the other; side "left": R*p + R*q, suffix reductions.

    Returns a list of [element, cof_p, cof_q] triples with
    element == p*cof_p + q*cof_q (right) or cof_p*p + cof_q*q (left).
    Terminates because each reduction strictly decreases one element's
    leading word in the graded-lex well-order (or deletes the element).
    """
    field, vars = p.field, p.vars
    one = NcPoly.one(field, vars)
    zero = NcPoly.zero(field, vars)
    items = [[p, one, zero], [q, zero, one]]
    items = [it for it in items if not it[0].is_zero()]

    def try_reduce(tgt, by):
        lt, lb = tgt[0].leading_word(), by[0].leading_word()
        if len(lt) < len(lb):
            return False
        if side == "right":
            if lt[:len(lb)] != lb:
                return False
            m = _monomial(p, lt[len(lb):],
                          tgt[0].leading_coeff() / by[0].leading_coeff())
            for k in range(3):
                tgt[k] = tgt[k] - by[k] * m
        else:
            if lt[len(lt) - len(lb):] != lb:
                return False
            m = _monomial(p, lt[:len(lt) - len(lb)],
                          tgt[0].leading_coeff() / by[0].leading_coeff())
            for k in range(3):
                tgt[k] = tgt[k] - m * by[k]
        return True

    while True:
        items = [it for it in items if not it[0].is_zero()]
        if len(items) < 2:
            return items
        if any(it[0].degree() == 0 for it in items):
            return items
        a, b = items
        if word_key(a[0].leading_word()) < word_key(b[0].leading_word()):
            a, b = b, a
        if not try_reduce(a, b):
            return items


def words_up_to_degree(letters, deg):
    """All words of length <= deg over `letters`, graded-lex order."""
    out = []
    for d in range(deg + 1):
        out.extend(words_of_degree(letters, d))
    return out


def comaximality_certificate(f, g, side="right"):
    """(u, v) with f*u + g*v == 1 (side "right") or u*f + v*g == 1
    (side "left"), or None — and None is definitive.

    When the pair is comaximal, a certificate exists with deg u < deg g and
    deg v < deg f, so the bounded affine linear solve below is a complete
    decision procedure; the returned pair satisfies those degree bounds.
    """
    field, vars = f.field, f.vars
    zero = NcPoly.zero(field, vars)
    one = NcPoly.one(field, vars)
    if not f.is_zero() and f.degree() == 0:
        u = NcPoly.constant(field, vars, f.constant_term().inverse())
        return (u, zero)
    if not g.is_zero() and g.degree() == 0:
        v = NcPoly.constant(field, vars, g.constant_term().inverse())
        return (zero, v)
    if f.is_zero() or g.is_zero():
        return None
    letters = letters_of(f, g)
    u_words = words_up_to_degree(letters, g.degree() - 1)
    v_words = words_up_to_degree(letters, f.degree() - 1)
    cols = {}
    for w in u_words:
        cols[("u", w)] = len(cols)
    for w in v_words:
        cols[("v", w)] = len(cols)
    row_index = {}
    rows = []

    def row_of(word):
        if word not in row_index:
            row_index[word] = len(rows)
            rows.append({})
        return row_index[word]

    for kind, poly, unknown_words in (("u", f, u_words), ("v", g, v_words)):
        for wp, cp in poly.terms.items():
            for wu in unknown_words:
                word = wp + wu if side == "right" else wu + wp
                r = row_of(word)
                j = cols[(kind, wu)]
                acc = rows[r].get(j)
                acc = cp if acc is None else acc + cp
                if acc.is_zero():
                    rows[r].pop(j, None)
                else:
                    rows[r][j] = acc
    rhs = {row_of(()): field.one()}
    got = sparse_solve_affine(rows, rhs, len(cols), field)
    if got is None:
        return None
    particular, _ = got
    u_terms, v_terms = {}, {}
    for (kind, w), j in cols.items():
        c = particular.get(j)
        if c is None or c.is_zero():
            continue
        (u_terms if kind == "u" else v_terms)[w] = c
    u = NcPoly(field, vars, u_terms)
    v = NcPoly(field, vars, v_terms)
    lhs = f * u + g * v if side == "right" else u * f + v * g
    if lhs != one:
        raise AssertionError("comaximality solve returned a non-solution")
    return u, v


# -- homogeneous factorization -------------------------------------------------


def factor_homogeneous(f):
    """(scalar, [atoms]) with f == scalar * atoms[0] * ... * atoms[-1], each
    atom monic homogeneous and irreducible.  Homogeneous elements of the free
    algebra factor uniquely up to scalars: a split f = g*h at inner degree e
    exists iff the flattening matrix F[u, v] = coeff(u v) (|v| = e) has rank
    one, and a rank-one matrix is an outer product in exactly one way up to
    scaling."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if not f.is_homogeneous():
        raise ValueError("factor_homogeneous needs a homogeneous input")
    d = f.degree()
    lead = f.leading_coeff()
    work = f * lead.inverse()
    atoms = []
    while True:
        d = work.degree()
        if d == 0:
            break
        split = _homogeneous_split(work)
        if split is None:
            atoms.append(work)
            break
        g, h = split
        atoms.append(h)
        work = g
    atoms.reverse()
    return lead, atoms


def _homogeneous_split(f):
    """Least-e split f = g*h with deg h = e >= 1, g nonconstant; None if f is
    an atom.  g, h are monic; f must be monic homogeneous."""
    d = f.degree()
    field = f.field
    for e in range(1, d):
        prefixes = sorted({w[:d - e] for w in f.terms}, key=word_key)
        suffixes = sorted({w[d - e:] for w in f.terms}, key=word_key)
        pi = {w: i for i, w in enumerate(prefixes)}
        si = {w: i for i, w in enumerate(suffixes)}
        rows = [{} for _ in prefixes]
        for w, c in f.terms.items():
            rows[pi[w[:d - e]]][si[w[d - e:]]] = c
        rank, pivots, _, _ = sparse_eliminate(rows, len(suffixes), field,
                                              reduce_full=False)
        if rank != 1:
            continue
        # rank one: the matrix is an outer product; any nonzero row is h (up
        # to scale) and the column at h's leading word is g
        dense = {}
        for w, c in f.terms.items():
            dense.setdefault(w[:d - e], {})[w[d - e:]] = c
        u0 = sorted(dense, key=word_key)[0]
        h = NcPoly(field, f.vars, {v: c for v, c in dense[u0].items()})
        h = h.scale_to_monic()
        lh = h.leading_word()
        ch = h.coeff(lh)
        g_terms = {}
        for u, row in dense.items():
            c = row.get(lh)
            if c is not None:
                g_terms[u] = c / ch
        g = NcPoly(field, f.vars, g_terms)
        if g * h == f:
            return g, h
    return None


def homogeneous_right_factors(f):
    """All monic right factors of positive degree of a homogeneous f, from
    the unique atom chain: suffix products, longest first."""
    _, atoms = factor_homogeneous(f)
    out = []
    acc = None
    for a in reversed(atoms):
        acc = a if acc is None else a * acc
        out.append(acc)
    out.reverse()          # longest first
    return out


# -- lifting a homogeneous right factor to an inhomogeneous divisor -----------


def _lift_right_factor(p, tau, beam_width=16):
    """Candidates (h, a) with p == a*h and the top homogeneous part of h equal
    to tau, found stratum by stratum (top degree downwards).  Returns
    (candidates, exact) where exact=True means every stratum's linear system
    had a unique solution, so an empty candidate list refutes existence."""
    field, vars = p.field, p.vars
    d = p.degree()
    e = tau.degree()
    letters = letters_of(p, tau)
    a_top = _divide_homogeneous_right(p.homogeneous_part(d), tau)
    if a_top is None:
        return [], True
    # partial solutions: (H, A) dicts degree -> homogeneous NcPoly
    beam = [({e: tau}, {d - e: a_top})]
    exact = True
    for k in range(1, d + 1):
        h_deg = e - k
        a_deg = d - e - k
        target_deg = d - k
        new_beam = []
        for H, A in beam:
            known = NcPoly.zero(field, vars)
            for da, apoly in A.items():
                for dh, hpoly in H.items():
                    if da + dh == target_deg:
                        known = known + apoly * hpoly
            target = p.homogeneous_part(target_deg) - known
            h_words = words_of_degree(letters, h_deg) if h_deg >= 0 else []
            a_words = words_of_degree(letters, a_deg) if a_deg >= 0 else []
            if not h_words and not a_words:
                if target.is_zero():
                    new_beam.append((H, A))
                continue
            cols = {}
            for w in h_words:
                cols[("h", w)] = len(cols)
            for w in a_words:
                cols[("a", w)] = len(cols)
            row_index = {}
            rows = []
            rhs = {}

            def row_of(word):
                if word not in row_index:
                    row_index[word] = len(rows)
                    rows.append({})
                return row_index[word]

            for u, cu in A[d - e].terms.items():
                for v in h_words:
                    r = row_of(u + v)
                    j = cols[("h", v)]
                    rows[r][j] = rows[r].get(j, field.zero()) + cu
            for u in a_words:
                for v, cv in tau.terms.items():
                    r = row_of(u + v)
                    j = cols[("a", u)]
                    rows[r][j] = rows[r].get(j, field.zero()) + cv
            for w, c in target.terms.items():
                rhs[row_of(w)] = c
            for r in rows:
                for j in [j for j, c in r.items() if c.is_zero()]:
                    del r[j]
            got = sparse_solve_affine(rows, rhs, len(cols), field)
            if got is None:
                continue
            particular, kernel = got
            variants = [particular]
            if kernel:
                exact = False
                for kb in kernel:
                    for sign in (1, -1):
                        variants.append(_vec_add(particular, kb, sign, field))
            for vec in variants[:beam_width]:
                h_terms = {}
                a_terms = {}
                for (kind, w), j in cols.items():
                    c = vec.get(j)
                    if c is None or c.is_zero():
                        continue
                    (h_terms if kind == "h" else a_terms)[w] = c
                H2 = dict(H)
                A2 = dict(A)
                if h_deg >= 0:
                    H2[h_deg] = NcPoly(field, vars, h_terms)
                if a_deg >= 0:
                    A2[a_deg] = NcPoly(field, vars, a_terms)
                new_beam.append((H2, A2))
        beam = new_beam[:beam_width]
        if not beam:
            return [], exact
    out = []
    for H, A in beam:
        h = NcPoly.zero(field, vars)
        for poly in H.values():
            h = h + poly
        a = NcPoly.zero(field, vars)
        for poly in A.values():
            a = a + poly
        if a * h == p:
            out.append((h, a))
    return out, exact


def _vec_add(v1, v2, sign, field):
    out = dict(v1)
    for j, c in v2.items():
        nv = out.get(j, field.zero()) + (c if sign > 0 else -c)
        if nv.is_zero():
            out.pop(j, None)
        else:
            out[j] = nv
    return out


def _divide_homogeneous_right(f, tau):
    """a with f == a * tau for homogeneous f, tau; None if none exists.
    (Greedy division, complete.)"""
    if f.is_zero():
        return f
    return divide_right_by(f, tau)


# -- greatest common right divisor ---------------------------------------------


def gcrd(p, q):
    """Greatest common right divisor of p and q with certificates.

    Returns a dict:
      status "found":  h (monic), cofactor_p, cofactor_q with p = cofactor_p*h,
                       q = cofactor_q*h; combination (s, t) with s*p + t*q = h
                       when h came from the left-ideal weak basis (principal
                       case); maximal_certified True when h is provably the
                       greatest common right divisor.
      status "none":   no common right divisor of positive degree exists;
                       certificate (s, t) with s*p + t*q = 1 when the left
                       ideal is the whole ring, else refuted through the
                       leading-part candidates.
      status "undecided": the search was inconclusive (non-principal left
                       ideal and an inexact lift).
    """
    if p.is_zero() and q.is_zero():
        raise ValueError("gcrd(0, 0) is undefined")
    if p.is_zero() or q.is_zero():
        h = (q if p.is_zero() else p)
        lc = h.leading_coeff()
        hm = h * lc.inverse()
        if hm.degree() == 0:
            return {"status": "none", "certificate": None, "reason": "constant"}
        zero = NcPoly.zero(p.field, p.vars)
        cp = zero if p.is_zero() else NcPoly.constant(p.field, p.vars, lc)
        cq = zero if q.is_zero() else NcPoly.constant(p.field, p.vars, lc)
        return {"status": "found", "h": hm, "cofactor_p": cp, "cofactor_q": cq,
                "combination": None, "maximal_certified": True}
    if p.degree() == 0 or q.degree() == 0:
        c = p if p.degree() == 0 else q
        inv = c.constant_term().inverse()
        s = NcPoly.constant(p.field, p.vars, inv) if p.degree() == 0 \
            else NcPoly.zero(p.field, p.vars)
        t = NcPoly.constant(p.field, p.vars, inv) if p.degree() != 0 \
            else NcPoly.zero(p.field, p.vars)
        return {"status": "none", "certificate": (s, t), "reason": "constant"}

    basis = weak_basis(p, q, "left")
    consts = [it for it in basis if it[0].degree() == 0]
    if consts:
        it = consts[0]
        inv = it[0].constant_term().inverse()
        s, t = inv * it[1], inv * it[2]
        if s * p + t * q != NcPoly.one(p.field, p.vars):
            raise AssertionError("weak-basis cofactor tracking is broken")
        return {"status": "none", "certificate": (s, t), "reason": "comaximal"}
    if len(basis) == 1:
        elt, s, t = basis[0]
        inv = elt.leading_coeff().inverse()
        h = elt * inv
        a = divide_right_by(p, h)
        b = divide_right_by(q, h)
        if a is None or b is None:
            raise AssertionError("principal left ideal without divisibility")
        return {"status": "found", "h": h, "cofactor_p": a, "cofactor_q": b,
                "combination": (inv * s, inv * t), "maximal_certified": True}

    # non-principal: common right factors of the leading homogeneous parts
    tops_p = homogeneous_right_factors(p.homogeneous_part(p.degree()))
    tops_q = homogeneous_right_factors(q.homogeneous_part(q.degree()))
    keys_q = {frozenset(t.terms.items()) for t in tops_q}
    common = [t for t in tops_p if frozenset(t.terms.items()) in keys_q]
    all_exact = True
    for tau in common:                     # longest first
        cands, exact = _lift_right_factor(p, tau)
        all_exact = all_exact and exact
        for h, a in cands:
            inv = h.leading_coeff().inverse()
            h2 = h * inv
            b = divide_right_by(q, h2)
            if b is not None:
                return {"status": "found", "h": h2,
                        "cofactor_p": divide_right_by(p, h2),
                        "cofactor_q": b, "combination": None,
                        "maximal_certified": all_exact}
    if all_exact:
        return {"status": "none", "certificate": None,
                "reason": "leading-part candidates all refuted"}
    return {"status": "undecided", "certificate": None,
            "reason": "non-principal left ideal; lift was inexact"}
