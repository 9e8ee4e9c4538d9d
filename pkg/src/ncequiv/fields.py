"""Exact scalar arithmetic over Q, Q(i), and declared quadratic extension towers.

A field is Q extended by a chain of square-root generators.  Every generator g
carries an exact square (an element of the subfield below it), so elements are
vectors of rationals indexed by subsets of generators.  Conjugation fixes the
real generators and sends i to -i; it is the identity on Q.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction


class FieldError(ValueError):
    pass


class FieldMismatchError(FieldError):
    """Raised when two scalars from different declared fields are combined."""


def _fraction_sqrt(r: Fraction):
    # exact square root of a rational, or None
    if r < 0:
        return None
    sn = math.isqrt(r.numerator)
    sd = math.isqrt(r.denominator)
    if sn * sn == r.numerator and sd * sd == r.denominator:
        return Fraction(sn, sd)
    return None


def _fraction_nth_root(r: Fraction, n: int):
    # exact real n-th root of a rational, or None
    if n <= 0:
        raise ValueError("root order must be positive")
    if n == 1:
        return r
    if r == 0:
        return Fraction(0)
    neg = r < 0
    if neg and n % 2 == 0:
        return None

    def iroot(m: int):
        if m == 0:
            return 0
        k = round(m ** (1.0 / n))
        for c in (k - 1, k, k + 1):
            if c >= 0 and c ** n == m:
                return c
        return None

    a = iroot(abs(r.numerator))
    b = iroot(r.denominator)
    if a is None or b is None:
        return None
    root = Fraction(a, b)
    return -root if neg else root


class _Gen:
    __slots__ = ("name", "square", "conj_sign")

    def __init__(self, name, square, conj_sign):
        self.name = name
        self.square = square  # dict mask -> Fraction, masks over lower generators
        self.conj_sign = conj_sign


class Field:
    """A tower Q(g_1)...(g_m) with g_j^2 declared in the field below it."""

    _Q = None

    def __init__(self, gens, spec):
        self.gens = tuple(gens)
        self.dim = 1 << len(self.gens)
        self.spec = spec
        self._mul_memo = {}
        self._embed_memo = {}

    @classmethod
    def rationals(cls):
        if cls._Q is None:
            cls._Q = cls((), "Q")
        return cls._Q

    @classmethod
    def gaussian(cls):
        return cls.rationals().extend_gaussian()

    def extend_gaussian(self):
        if any(g.conj_sign < 0 for g in self.gens):
            raise FieldError("field already contains i")
        gen = _Gen("i", {0: Fraction(-1)}, -1)
        return Field(self.gens + (gen,), self.spec + "(i)")

    def extend(self, name, square):
        """Extend by a real generator `name` with the given square.

        `square` may be an int, Fraction, or Scalar of this field; it must
        embed to a positive real (the generator denotes the positive root).
        """
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise FieldError("bad generator name %r" % name)
        if name == "i" or any(g.name == name for g in self.gens):
            raise FieldError("generator name %r already taken" % name)
        sq = self.scalar(square) if not isinstance(square, Scalar) else square
        if sq.field is not self and sq.field != self:
            raise FieldMismatchError("square of %s must live in %s" % (name, self.spec))
        emb = sq.embed()
        if abs(emb.imag) > 1e-12 or emb.real <= 0:
            raise FieldError("square of real generator %s must embed positive" % name)
        if sq.is_rational() and _fraction_sqrt(sq.as_fraction()) is not None:
            raise FieldError("square of %s is already a square in the subfield" % name)
        square_d = {m: c for m, c in enumerate(sq.coeffs) if c}
        m = re.fullmatch(r"sqrt(\d+)", name)
        if m is not None and sq.is_rational() and sq.as_fraction() == int(m.group(1)):
            decl = "(%s)" % name
        else:
            decl = "(%s: %s^2=%s)" % (name, name, sq)
        gen = _Gen(name, square_d, 1)
        return Field(self.gens + (gen,), self.spec + decl)

    # -- basis multiplication ------------------------------------------------

    def _basis_mul(self, m1, m2):
        if m1 > m2:
            m1, m2 = m2, m1
        key = (m1, m2)
        hit = self._mul_memo.get(key)
        if hit is not None:
            return hit
        common = m1 & m2
        if common == 0:
            out = {m1 | m2: Fraction(1)}
        else:
            bit = 1 << (common.bit_length() - 1)
            idx = bit.bit_length() - 1
            base = self._basis_mul(m1 & ~bit, m2 & ~bit)
            out = {}
            for ma, ca in base.items():
                for mb, cb in self.gens[idx].square.items():
                    for mc, cc in self._basis_mul(ma, mb).items():
                        v = out.get(mc, 0) + ca * cb * cc
                        if v:
                            out[mc] = v
                        elif mc in out:
                            del out[mc]
        self._mul_memo[key] = out
        return out

    # -- element constructors -------------------------------------------------

    def scalar(self, value):
        """Coerce an int/Fraction (or Scalar of this field) to a Scalar."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatchError(
                    "scalar of %s used in %s" % (value.field.spec, self.spec))
            return value
        c = [Fraction(0)] * self.dim
        c[0] = Fraction(value)
        return Scalar(self, tuple(c))

    def zero(self):
        return self.scalar(0)

    def one(self):
        return self.scalar(1)

    def generator(self, name):
        for j, g in enumerate(self.gens):
            if g.name == name:
                c = [Fraction(0)] * self.dim
                c[1 << j] = Fraction(1)
                return Scalar(self, tuple(c))
        raise FieldError("no generator %r in %s" % (name, self.spec))

    @property
    def generator_names(self):
        return tuple(g.name for g in self.gens)

    # -- numeric embedding ----------------------------------------------------

    def _gen_values(self, prec):
        vals = self._embed_memo.get(prec)
        if vals is not None:
            return vals
        if prec <= 53:
            vals = []
            for j, g in enumerate(self.gens):
                sq = complex(0)
                for m, c in g.square.items():
                    term = complex(c)
                    for k in range(j):
                        if m >> k & 1:
                            term *= vals[k]
                    sq += term
                vals.append(complex(sq) ** 0.5 if g.conj_sign > 0 else 1j)
        else:
            import mpmath

            with mpmath.workprec(prec):
                vals = []
                for j, g in enumerate(self.gens):
                    sq = mpmath.mpc(0)
                    for m, c in g.square.items():
                        term = mpmath.mpf(c.numerator) / c.denominator
                        for k in range(j):
                            if m >> k & 1:
                                term = term * vals[k]
                        sq += term
                    vals.append(mpmath.sqrt(sq) if g.conj_sign > 0 else mpmath.mpc(0, 1))
        vals = tuple(vals)
        self._embed_memo[prec] = vals
        return vals

    # -- roots ------------------------------------------------------------------

    def sqrt(self, value):
        """An exact square root of a rational value inside this field, or None."""
        value = self.scalar(value)
        if not value.is_rational():
            return None
        r = value.as_fraction()
        if r == 0:
            return self.zero()
        for mask in range(self.dim):
            prod = self._basis_mul(mask, mask)
            if set(prod) - {0}:
                continue
            rho = prod.get(0, Fraction(0))
            if rho == 0:
                continue
            root = _fraction_sqrt(r / rho)
            if root is not None:
                c = [Fraction(0)] * self.dim
                c[mask] = root
                return Scalar(self, tuple(c))
        return None

    def nth_roots(self, value, n):
        """All exact n-th roots of `value` found in this field (may be incomplete
        for n > 2 over proper towers; always complete over Q)."""
        value = self.scalar(value)
        if n == 1:
            return [value]
        roots = []
        if value.is_rational():
            r = _fraction_nth_root(value.as_fraction(), n)
            if r is not None:
                roots.append(self.scalar(r))
                if n % 2 == 0 and r != 0:
                    roots.append(self.scalar(-r))
        if n == 2:
            s = self.sqrt(value)
            if s is not None and s not in roots:
                roots.extend([s, -s])
        # dedupe preserving order
        out = []
        for r in roots:
            if r not in out:
                out.append(r)
        return out

    def __eq__(self, other):
        return isinstance(other, Field) and other.spec == self.spec

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return "Field(%s)" % self.spec


class Scalar:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    # -- helpers ---------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(
                    "cannot combine %s with %s" % (self.field.spec, other.field.spec))
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.scalar(other)
        return None

    def is_zero(self):
        return not any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def as_fraction(self):
        if not self.is_rational():
            raise FieldError("scalar %s is not rational" % self)
        return self.coeffs[0]

    @property
    def rational_part(self):
        return self.coeffs[0]

    # -- ring operations ---------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        if f.dim == 1:
            return Scalar(f, (self.coeffs[0] * o.coeffs[0],))
        acc = [Fraction(0)] * f.dim
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if not b:
                    continue
                ab = a * b
                for m, q in f._basis_mul(i, j).items():
                    acc[m] += ab * q
        return Scalar(f, tuple(acc))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        f = self.field
        top = 0
        for i, a in enumerate(self.coeffs):
            if a and i:
                top = max(top, i.bit_length() - 1)
        if self.is_rational():
            c = [Fraction(0)] * f.dim
            c[0] = 1 / self.coeffs[0]
            return Scalar(f, tuple(c))
        bit = 1 << top
        lo = [Fraction(0)] * f.dim
        hi = [Fraction(0)] * f.dim
        for i, a in enumerate(self.coeffs):
            if i & bit:
                hi[i & ~bit] = a
            else:
                lo[i] = a
        a = Scalar(f, tuple(lo))
        b = Scalar(f, tuple(hi))
        sq = [Fraction(0)] * f.dim
        for m, c in f.gens[top].square.items():
            sq[m] = c
        s = Scalar(f, tuple(sq))
        d = a * a - b * b * s
        if d.is_zero():
            raise FieldError("degenerate tower: norm form vanished on %s" % self)
        dinv = d.inverse()
        u = a * dinv
        v = -(b * dinv)
        out = list(u.coeffs)
        for i, c in enumerate(v.coeffs):
            if c:
                out[i | bit] += c
        return Scalar(f, tuple(out))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self):
        out = []
        for i, a in enumerate(self.coeffs):
            sign = 1
            for j, g in enumerate(self.field.gens):
                if i >> j & 1 and g.conj_sign < 0:
                    sign = -sign
            out.append(a if sign > 0 else -a)
        return Scalar(self.field, tuple(out))

    # -- comparisons / hashing -----------------------------------------------------

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

    def __bool__(self):
        return not self.is_zero()

    # -- numeric embedding -----------------------------------------------------------

    def embed(self, prec=53):
        """Numeric value: complex at prec<=53, mpmath.mpc above."""
        vals = self.field._gen_values(prec)
        if prec <= 53:
            out = complex(0)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                term = complex(a)
                for j in range(len(self.field.gens)):
                    if i >> j & 1:
                        term *= vals[j]
                out += term
            return out
        import mpmath

        with mpmath.workprec(prec):
            out = mpmath.mpc(0)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                term = mpmath.mpf(a.numerator) / a.denominator
                for j in range(len(self.field.gens)):
                    if i >> j & 1:
                        term = term * vals[j]
                out += term
            return out

    # -- rendering ------------------------------------------------------------------

    def __str__(self):
        parts = []
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            names = [g.name for j, g in enumerate(self.field.gens) if i >> j & 1]
            if not names:
                parts.append(str(a))
            elif a == 1:
                parts.append("*".join(names))
            elif a == -1:
                parts.append("-" + "*".join(names))
            else:
                parts.append("%s*%s" % (a, "*".join(names)))
        if not parts:
            return "0"
        text = parts[0]
        for p in parts[1:]:
            text += "-" + p[1:] if p.startswith("-") else "+" + p
        return text

    def __repr__(self):
        return "Scalar(%s, %s)" % (self.field.spec, self)

    def n_terms(self):
        return sum(1 for a in self.coeffs if a)

    def is_simple(self):
        """True when rendering needs no parentheses as a leading coefficient."""
        return self.n_terms() <= 1
