"""Text format for polynomials, scalars, and field declarations.

Grammar (whitespace-insensitive):

    expr    := ['-'] term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := primary ['^' nat]
    primary := rational ['i'] | name ['*'] | '(' expr ')'

A '*' directly after a variable name binds as the star involution when what
follows cannot start a factor (so ``x*y`` is a product, ``x**y`` is x-star
times y, and ``x*`` at the end of input is x-star).  Names resolve to
variables first, then to field generators (as constants).

Field declarations:  Q | Q(i) | Q(sqrt5) | Q(sqrt5)(xi: xi^2=29+13*sqrt5),
extensions nesting left to right.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .fields import Field, FieldError
from .ncpoly import NcPoly, letter_key


class ParseError(ValueError):
    def __init__(self, message, pos):
        super().__init__("%s (at position %d)" % (message, pos))
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
                    r"|(?P<op>[-+*^():=]))")


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            rest = text[pos:].lstrip()
            if not rest:
                break
            raise ParseError("unexpected character %r" % rest[0],
                             len(text) - len(rest))
        if m.group("num") is not None:
            toks.append(("num", m.group("num"), m.start("num")))
        elif m.group("name") is not None:
            toks.append(("name", m.group("name"), m.start("name")))
        else:
            toks.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _PolyParser:
    def __init__(self, toks, field, vars):
        self.toks = toks
        self.k = 0
        self.field = field
        self.vars = tuple(vars)
        overlap = set(self.vars) & set(field.generator_names)
        if overlap:
            raise FieldError("names %s are both variables and field generators"
                             % sorted(overlap))

    def peek(self, ahead=0):
        j = min(self.k + ahead, len(self.toks) - 1)
        return self.toks[j]

    def take(self):
        t = self.toks[self.k]
        if t[0] != "end":
            self.k += 1
        return t

    def expect_op(self, op):
        kind, text, pos = self.peek()
        if kind != "op" or text != op:
            raise ParseError("expected %r" % op, pos)
        return self.take()

    def at_primary(self, ahead=0):
        kind, text, _ = self.peek(ahead)
        return kind in ("num", "name") or (kind == "op" and text == "(")

    def parse_expr(self):
        kind, text, _ = self.peek()
        negate = False
        if kind == "op" and text == "-":
            self.take()
            negate = True
        acc = self.parse_term()
        if negate:
            acc = -acc
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.take()
                nxt = self.parse_term()
                acc = acc + nxt if text == "+" else acc - nxt
            else:
                return acc

    def parse_term(self):
        acc = self.parse_factor()
        while True:
            kind, text, pos = self.peek()
            if kind == "op" and text == "*":
                if not self.at_primary(1):
                    raise ParseError(
                        "'*' must be followed by a factor "
                        "(the star involution binds only to a variable)", pos)
                self.take()
                acc = acc * self.parse_factor()
            else:
                return acc

    def parse_factor(self):
        base = self.parse_primary()
        kind, text, pos = self.peek()
        if kind == "op" and text == "^":
            self.take()
            kind, text, pos = self.peek()
            if kind != "num" or "/" in text:
                raise ParseError("exponent must be a nonnegative integer", pos)
            self.take()
            base = base ** int(text)
        return base

    def parse_primary(self):
        kind, text, pos = self.take()
        if kind == "num":
            c = Fraction(text)
            nk, nt, _ = self.peek()
            if nk == "name" and nt == "i" and "i" in self.field.generator_names \
                    and "i" not in self.vars:
                self.take()
                return NcPoly.constant(self.field, self.vars,
                                       self.field.generator("i") * c)
            return NcPoly.constant(self.field, self.vars, c)
        if kind == "name":
            if text in self.vars:
                idx = self.vars.index(text) + 1
                starred = False
                nk, nt, _ = self.peek()
                if nk == "op" and nt == "*" and not self.at_primary(1):
                    self.take()
                    starred = True
                return NcPoly.variable(self.field, self.vars, idx, starred)
            if text in self.field.generator_names:
                return NcPoly.constant(self.field, self.vars,
                                       self.field.generator(text))
            raise ParseError("unknown name %r (variables: %s; generators: %s)"
                             % (text, ", ".join(self.vars) or "none",
                                ", ".join(self.field.generator_names) or "none"),
                             pos)
        if kind == "op" and text == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        raise ParseError("expected a number, name, or '('", pos)


def parse(text, field=None, vars=("x", "y")):
    """Parse an expression into an NcPoly over `field` in `vars`."""
    field = field or Field.rationals()
    toks = _tokenize(text)
    p = _PolyParser(toks, field, vars)
    poly = p.parse_expr()
    kind, text_, pos = p.peek()
    if kind != "end":
        raise ParseError("unexpected trailing %r" % text_, pos)
    return poly


def parse_scalar(text, field=None):
    """Parse a constant expression (matrix entry) into a Scalar."""
    field = field or Field.rationals()
    poly = parse(text, field, vars=())
    if not poly.is_constant():
        raise ParseError("expected a constant expression", 0)
    return poly.constant_term()


def _word_text(word, vars):
    if not word:
        return ""
    parts = []
    run_letter, run_len = word[0], 1
    for l in list(word[1:]) + [None]:
        if l == run_letter:
            run_len += 1
            continue
        name = vars[abs(run_letter) - 1] + ("*" if run_letter < 0 else "")
        parts.append(name if run_len == 1 else "%s^%d" % (name, run_len))
        run_letter, run_len = l, 1
    return "*".join(parts)


def pretty(f):
    """Canonical rendering: graded-lex order, degree descending, explicit '*',
    powers compressed, stars as a suffix '*'."""
    if f.is_zero():
        return "0"
    items = sorted(f.terms.items(),
                   key=lambda wc: (-len(wc[0]), tuple(letter_key(l) for l in wc[0])))
    rendered = []
    one = f.field.one()
    for w, c in items:
        word = _word_text(w, f.vars)
        if not word:
            s = str(c) if c.is_simple() else "(%s)" % c
        elif c == one:
            s = word
        elif c == f.field.scalar(-1):
            s = "-" + word
        elif c.is_simple():
            s = "%s*%s" % (c, word)
        else:
            s = "(%s)*%s" % (c, word)
        rendered.append(s)
    text = rendered[0]
    for s in rendered[1:]:
        if s.startswith("-"):
            text += " - " + s[1:]
        else:
            text += " + " + s
    return text


def parse_field(text):
    """Parse a field declaration: Q, Q(i), Q(sqrt5), Q(name: name^2=expr)..."""
    toks = _tokenize(text)
    k = 0

    def peek():
        return toks[min(k, len(toks) - 1)]

    kind, name, pos = peek()
    if kind != "name" or name != "Q":
        raise ParseError("field declaration must start with Q", pos)
    k += 1
    field = Field.rationals()
    while True:
        kind, t, pos = peek()
        if kind == "end":
            return field
        if not (kind == "op" and t == "("):
            raise ParseError("expected '(' in field declaration", pos)
        k += 1
        kind, gname, pos = peek()
        if kind != "name":
            raise ParseError("expected a generator name", pos)
        k += 1
        kind, t, pos = peek()
        if kind == "op" and t == ")":
            k += 1
            if gname == "i":
                field = field.extend_gaussian()
            else:
                m = re.fullmatch(r"sqrt(\d+)", gname)
                if m is None:
                    raise ParseError(
                        "generator %r needs an explicit square "
                        "(write %s: %s^2=...)" % (gname, gname, gname), pos)
                field = field.extend(gname, int(m.group(1)))
            continue
        if not (kind == "op" and t == ":"):
            raise ParseError("expected ':' or ')' after generator name", pos)
        k += 1
        kind, t, pos = peek()
        if not (kind == "name" and t == gname):
            raise ParseError("square declaration must repeat the generator name", pos)
        k += 1
        kind, t, pos = peek()
        if not (kind == "op" and t == "^"):
            raise ParseError("expected '^2' in square declaration", pos)
        k += 1
        kind, t, pos = peek()
        if not (kind == "num" and t == "2"):
            raise ParseError("only square extensions are supported", pos)
        k += 1
        kind, t, pos = peek()
        if not (kind == "op" and t == "="):
            raise ParseError("expected '=' in square declaration", pos)
        k += 1
        depth = 1
        start = k
        while True:
            kind, t, pos = peek()
            if kind == "end":
                raise ParseError("unterminated field declaration", pos)
            if kind == "op" and t == "(":
                depth += 1
            elif kind == "op" and t == ")":
                depth -= 1
                if depth == 0:
                    break
            k += 1
        sub = toks[start:k] + [("end", "", pos)]
        k += 1
        p = _PolyParser(sub, field, ())
        sq_poly = p.parse_expr()
        kind2, _, pos2 = p.peek()
        if kind2 != "end":
            raise ParseError("bad square expression", pos2)
        if not sq_poly.is_constant():
            raise ParseError("generator square must be a constant", pos)
        field = field.extend(gname, sq_poly.constant_term())


def field_spec(field):
    return field.spec
