"""Noncommutative polynomials over an exact scalar field.

Words are tuples of nonzero ints: +j is the j-th variable (1-based), -j its
star.  An NcPoly is a finite word -> scalar map; zero coefficients are never
stored.  The term order everywhere is graded lex (length first, then letters,
with x1 < x1* < x2 < ...).
"""

from __future__ import annotations

from fractions import Fraction

from .fields import Field, FieldMismatchError, Scalar

Word = tuple


def letter_key(letter):
    return (abs(letter), 0 if letter > 0 else 1)


def word_key(word):
    # graded lex sort key
    return (len(word), tuple(letter_key(l) for l in word))


def star_word(word):
    return tuple(-l for l in reversed(word))


def min_rotation(word):
    # lexicographically minimal rotation under word_key letter order;
    # canonical representative of the cyclic class
    if len(word) <= 1:
        return word
    best = word
    for s in range(1, len(word)):
        rot = word[s:] + word[:s]
        if word_key(rot) < word_key(best):
            best = rot
    return best


class NcPoly:
    __slots__ = ("field", "vars", "terms")

    def __init__(self, field, vars, terms):
        self.field = field
        self.vars = tuple(vars)
        self.terms = {w: c for w, c in terms.items() if not c.is_zero()}

    # -- constructors ------------------------------------------------------------

    @classmethod
    def zero(cls, field, vars):
        return cls(field, vars, {})

    @classmethod
    def constant(cls, field, vars, value):
        c = field.scalar(value)
        return cls(field, vars, {(): c})

    @classmethod
    def one(cls, field, vars):
        return cls.constant(field, vars, 1)

    @classmethod
    def variable(cls, field, vars, index, starred=False):
        if not 1 <= index <= len(vars):
            raise ValueError("variable index %d out of range" % index)
        letter = -index if starred else index
        return cls(field, vars, {(letter,): field.one()})

    @classmethod
    def from_terms(cls, field, vars, items):
        acc = {}
        for w, c in items:
            c = field.scalar(c)
            if w in acc:
                acc[w] = acc[w] + c
            else:
                acc[w] = c
        return cls(field, vars, acc)

    # -- basics ---------------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, NcPoly):
            return None
        if other.field != self.field:
            raise FieldMismatchError(
                "cannot combine %s with %s" % (self.field.spec, other.field.spec))
        if other.vars != self.vars:
            raise ValueError("variable sets differ: %r vs %r" % (self.vars, other.vars))
        return other

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(len(w) for w in self.terms)

    def is_constant(self):
        d = self.degree()
        return d is None or d == 0

    def constant_term(self):
        return self.terms.get((), self.field.zero())

    def coeff(self, word):
        return self.terms.get(tuple(word), self.field.zero())

    def support(self):
        return sorted(self.terms, key=word_key)

    def leading_word(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading word")
        return max(self.terms, key=word_key)

    def leading_coeff(self):
        return self.terms[self.leading_word()]

    def homogeneous_part(self, d):
        return NcPoly(self.field, self.vars,
                      {w: c for w, c in self.terms.items() if len(w) == d})

    def is_homogeneous(self):
        degs = {len(w) for w in self.terms}
        return len(degs) <= 1

    def n_terms(self):
        return len(self.terms)

    # -- arithmetic ---------------------------------------------------------------------

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            if isinstance(other, (int, Fraction, Scalar)):
                o = NcPoly.constant(self.field, self.vars, other)
            else:
                return NotImplemented
        acc = dict(self.terms)
        for w, c in o.terms.items():
            if w in acc:
                acc[w] = acc[w] + c
            else:
                acc[w] = c
        return NcPoly(self.field, self.vars, acc)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly(self.field, self.vars, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = NcPoly.constant(self.field, self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            if isinstance(other, (int, Fraction, Scalar)):
                c = self.field.scalar(other)
                return NcPoly(self.field, self.vars,
                              {w: a * c for w, a in self.terms.items()})
            return NotImplemented
        acc = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in o.terms.items():
                w = w1 + w2
                p = c1 * c2
                if w in acc:
                    acc[w] = acc[w] + p
                else:
                    acc[w] = p
        return NcPoly(self.field, self.vars, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            c = self.field.scalar(other)
            return NcPoly(self.field, self.vars,
                          {w: c * a for w, a in self.terms.items()})
        return NotImplemented

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = NcPoly.one(self.field, self.vars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = NcPoly.constant(self.field, self.vars, other)
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __ne__(self, other):
        r = self.__eq__(other)
        return NotImplemented if r is NotImplemented else not r

    def __hash__(self):
        return hash((self.field.spec, self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return not self.is_zero()

    # -- star and cyclic structure ----------------------------------------------------

    def star(self):
        """The *-image: words reversed with letters starred, coefficients conjugated."""
        return NcPoly(self.field, self.vars,
                      {star_word(w): c.conjugate() for w, c in self.terms.items()})

    def cyclic_canonical(self):
        """Coefficients summed over cyclic word classes, keyed by minimal rotation."""
        acc = {}
        for w, c in self.terms.items():
            k = min_rotation(w)
            acc[k] = acc[k] + c if k in acc else c
        return {k: c for k, c in acc.items() if not c.is_zero()}

    def scale_to_monic(self):
        """Divide by the leading graded-lex coefficient (zero poly unchanged)."""
        if not self.terms:
            return self
        lc = self.leading_coeff()
        return self * lc.inverse()

    def __repr__(self):
        from .parsing import pretty

        return "NcPoly(%s)" % pretty(self)


def cyclically_equivalent(f, g):
    """True iff f - g is a sum of commutators [u, v] of words.

    Two polynomials are cyclically equivalent exactly when, for every cyclic
    class of words, their coefficient sums agree.
    """
    f._check(g)
    return f.cyclic_canonical() == g.cyclic_canonical()


class UniPoly:
    """Dense univariate polynomial over a Field (printed in the letter t)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = [field.scalar(c) if not isinstance(c, Scalar) else c for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def constant(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def t(cls, field):
        return cls(field, (0, 1))

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        return None if not self.coeffs else len(self.coeffs) - 1

    def __getitem__(self, j):
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return self.field.zero()

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            if other.field != self.field:
                raise FieldMismatchError("field mismatch in univariate arithmetic")
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return UniPoly(self.field, (other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly(self.field, [self[j] + o[j] for j in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return UniPoly.zero(self.field)
        out = [self.field.zero()] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + a * b
        return UniPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = UniPoly(self.field, (1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __ne__(self, other):
        r = self.__eq__(other)
        return NotImplemented if r is NotImplemented else not r

    def __hash__(self):
        return hash((self.field.spec, self.coeffs))

    def divmod(self, other):
        """Quotient and remainder; other must be nonzero."""
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("univariate division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return UniPoly.zero(self.field), self
        quo = [self.field.zero()] * (dq + 1)
        lead = o.coeffs[-1].inverse()
        for k in range(dq, -1, -1):
            if len(rem) < len(o.coeffs) + k:
                continue
            c = rem[len(o.coeffs) - 1 + k] * lead
            if c.is_zero():
                continue
            quo[k] = c
            for j, b in enumerate(o.coeffs):
                rem[j + k] = rem[j + k] - c * b
        return UniPoly(self.field, quo), UniPoly(self.field, rem)

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("inexact univariate division")
        return q

    def eval_scalar(self, x):
        x = self.field.scalar(x) if not isinstance(x, Scalar) else x
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_poly(self, f):
        """Horner evaluation at an NcPoly; returns an NcPoly."""
        acc = NcPoly.zero(f.field, f.vars)
        for c in reversed(self.coeffs):
            acc = acc * f + c
        return acc

    def compose(self, inner):
        """self(inner(t)) as a UniPoly."""
        acc = UniPoly.zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shift_scale(self, alpha, beta=0):
        """self(alpha*t + beta)."""
        return self.compose(UniPoly(self.field, (beta, alpha)))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if c.is_zero():
                continue
            if j == 0:
                term = str(c) if c.is_simple() else "(%s)" % c
            else:
                tpow = "t" if j == 1 else "t^%d" % j
                if c == self.field.one():
                    term = tpow
                elif c == self.field.scalar(-1):
                    term = "-" + tpow
                else:
                    term = ("%s*%s" if c.is_simple() else "(%s)*%s") % (c, tpow)
            parts.append(term)
        text = parts[0]
        for p in parts[1:]:
            text += "-" + p[1:] if p.startswith("-") else "+" + p
        return text

    def __repr__(self):
        return "UniPoly(%s)" % self
