"""Text form of polynomials, LC numbers, and points.

Grammar (whitespace ignored):

    expr     := ['-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ['^' exponent]
    base     := rational | 'i' | 'eps' | var | '(' expr ')'
    var      := ('z'|'w') digits
    rational := digits ['/' digits]
    exponent := digits | '(' ['-'] digits ['/' digits] ')'

Rational or negative exponents are legal only on the eps atom.  `wK` is an
input alias for `zK`; the formatter always emits `zK`.  Parsing the canonical
format returns an equal polynomial (term order is irrelevant to equality).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidInput, ParseError
from .gaussian import GaussianRational, QI_I
from .levicivita import LC_ONE, LCFraction, LCNumber
from .poly import EXTENDED, MONO_ONE, Poly, cmp_grevlex

_OPS = set("+-*^()=,;/")


def _tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum()):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        if ch in _OPS:
            tokens.append(("op", ch, i))
            i += 1
            continue
        raise ParseError("unexpected character %r" % ch, i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, val, at = self.next()
        if kind != "op" or val != op:
            raise ParseError("expected %r" % op, at)

    def fail(self, message):
        raise ParseError(message, self.peek()[2])

    # expr := ['-'] term (('+'|'-') term)*
    def expr(self):
        negate = False
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.next()
            negate = True
        out, _ = self.term()
        if negate:
            out = -out
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs, _ = self.term()
                out = out + rhs if val == "+" else out - rhs
            else:
                return out

    # term := factor ('*' factor)*
    def term(self):
        out, eps_atom = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.next()
                rhs, _ = self.factor()
                out = out * rhs
                eps_atom = False
            else:
                return out, eps_atom

    # factor := base ['^' exponent]
    def factor(self):
        base, eps_atom = self.base()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            exp, plain = self.exponent()
            if not plain and not eps_atom:
                self.fail("rational exponents are legal only on eps")
            if eps_atom:
                return Poly.constant(LCNumber.eps(exp)), False
            return base ** int(exp), False
        return base, eps_atom

    def exponent(self):
        """Returns (Fraction, is_plain_digits)."""
        kind, val, at = self.next()
        if kind == "int":
            return Fraction(int(val)), True
        if kind == "op" and val == "(":
            sign = 1
            kind, val, at = self.next()
            if kind == "op" and val == "-":
                sign = -1
                kind, val, at = self.next()
            if kind != "int":
                raise ParseError("expected digits in exponent", at)
            num = int(val)
            den = 1
            kind, val, at = self.peek()
            if kind == "op" and val == "/":
                self.next()
                kind, val, at = self.next()
                if kind != "int":
                    raise ParseError("expected digits after /", at)
                den = int(val)
                if den == 0:
                    raise ParseError("zero exponent denominator", at)
            self.expect_op(")")
            q = Fraction(sign * num, den)
            return q, q >= 0 and q.denominator == 1 and sign == 1
        raise ParseError("expected an exponent", at)

    def _rational_tail(self, num):
        kind, val, _ = self.peek()
        if kind == "op" and val == "/":
            self.next()
            kind, val, at = self.next()
            if kind != "int":
                raise ParseError("expected digits after /", at)
            if int(val) == 0:
                raise ParseError("zero denominator", at)
            return Poly.constant(GaussianRational(Fraction(num, int(val))))
        return Poly.constant(GaussianRational(num))

    # base := rational | 'i' | 'eps' | var | '(' expr ')'
    def base(self):
        kind, val, at = self.next()
        if kind == "int":
            return self._rational_tail(int(val)), False
        if kind == "op" and val == "-":
            # signed rational literal in base position
            kind, val, at = self.next()
            if kind != "int":
                raise ParseError("expected digits after -", at)
            return self._rational_tail(-int(val)), False
        if kind == "name":
            if val == "i":
                return Poly.constant(QI_I), False
            if val == "eps":
                return Poly.constant(LCNumber.eps()), True
            if val[0] in "zw" and len(val) > 1 and val[1:].isdigit():
                return Poly.variable(int(val[1:])), False
            raise ParseError("unknown name %r" % val, at)
        if kind == "op" and val == "(":
            out = self.expr()
            self.expect_op(")")
            return out, False
        raise ParseError("expected a value", at)


def parse_poly(text):
    """Parse an expression into a canonical Poly (standard if eps-free)."""
    p = _Parser(text)
    out = p.expr()
    kind, _, at = p.peek()
    if kind != "end":
        raise ParseError("trailing input", at)
    demoted = out.to_standard() if out.domain == EXTENDED else out
    return demoted if demoted is not None else out


def parse_lc(text):
    """Parse a constant expression into an LCNumber."""
    p = parse_poly(text)
    if not p.is_constant():
        raise InvalidInput("expected a constant expression, got %r" % text)
    c = p.as_constant()
    if isinstance(c, GaussianRational):
        return LCNumber.from_gaussian(c)
    if isinstance(c, LCFraction):
        out = c.to_lcnumber()
        if out is None:
            raise InvalidInput("value is not a finite sum")
        return out
    return c


def parse_point(text):
    """Parse `z1=1+eps,z2=0` into {index: LCNumber}, sorted by index."""
    out = {}
    if not text.strip():
        return out
    for chunk in text.split(","):
        if "=" not in chunk:
            raise ParseError("expected var=value", 0)
        name, value = chunk.split("=", 1)
        name = name.strip()
        if not (name and name[0] in "zw" and name[1:].isdigit()):
            raise ParseError("bad variable name %r" % name, 0)
        idx = int(name[1:])
        if idx in out:
            raise ParseError("variable %s assigned twice" % name, 0)
        out[idx] = parse_lc(value)
    return dict(sorted(out.items()))


def parse_generators(text):
    """Parse a `;`-separated generator list; empty text is the zero ideal."""
    gens = []
    for chunk in text.split(";"):
        if chunk.strip():
            gens.append(parse_poly(chunk))
    return gens


# --- formatting --------------------------------------------------------------


def format_gaussian(c):
    """Standalone canonical form: 3, -1/2, i, -i, 2*i, 1+i, 1/2-3*i."""
    if not c:
        return "0"
    if c.im == 0:
        return str(c.re)
    if c.im == 1:
        imag = "i"
    elif c.im == -1:
        imag = "-i"
    elif c.im > 0:
        imag = "%s*i" % c.im
    else:
        imag = "-%s*i" % (-c.im)
    if c.re == 0:
        return imag
    joiner = "+" if c.im > 0 else "-"
    return "%s%s%s" % (c.re, joiner, imag.lstrip("-"))


def _gaussian_factor(c):
    """(sign, body) for use as a multiplicative factor; body may be empty."""
    if c.im == 0:
        sign = "-" if c.re < 0 else ""
        mag = abs(c.re)
        return sign, "" if mag == 1 else str(mag)
    if c.re == 0:
        sign = "-" if c.im < 0 else ""
        mag = abs(c.im)
        return sign, "i" if mag == 1 else "%s*i" % mag
    return "", "(%s)" % format_gaussian(c)


def _eps_power(q):
    if q == 1:
        return "eps"
    if q.denominator == 1 and q > 0:
        return "eps^%d" % q
    return "eps^(%s)" % q


def _lc_term_str(q, c):
    if q == 0:
        return format_gaussian(c)
    sign, body = _gaussian_factor(c)
    eps = _eps_power(q)
    return sign + (eps if not body else "%s*%s" % (body, eps))


def _join(pieces):
    out = ""
    for piece in pieces:
        if not out:
            out = piece
        elif piece.startswith("-"):
            out += " - " + piece[1:]
        else:
            out += " + " + piece
    return out or "0"


def format_lc(x):
    """Canonical form of an LCNumber: terms in ascending exponent order."""
    if isinstance(x, LCFraction):
        collapsed = x.to_lcnumber()
        if collapsed is None:
            # display-only quotient form; not part of the input grammar
            return "(%s)/(%s)" % (format_lc(x.num), format_lc(x.den))
        x = collapsed
    if isinstance(x, GaussianRational):
        x = LCNumber.from_gaussian(x)
    if not x:
        return "0"
    return _join(_lc_term_str(q, c) for q, c in x.terms)


def _poly_term_str(mono, coeff):
    mono_str = None if not mono.exps else str(mono)
    if isinstance(coeff, GaussianRational):
        if mono_str is None:
            return format_gaussian(coeff)
        sign, body = _gaussian_factor(coeff)
        return sign + (mono_str if not body else "%s*%s" % (body, mono_str))
    if isinstance(coeff, LCFraction):
        collapsed = coeff.to_lcnumber()
        if collapsed is None:
            body = "(%s)/(%s)" % (format_lc(coeff.num), format_lc(coeff.den))
            return body if mono_str is None else "%s*%s" % (body, mono_str)
        coeff = collapsed
    if mono_str is None:
        return format_lc(coeff)
    if coeff.is_term():
        q, c = coeff.leading()
        if q == 0:
            sign, body = _gaussian_factor(c)
            return sign + (mono_str if not body else "%s*%s" % (body, mono_str))
        sign, body = _gaussian_factor(c)
        eps = _eps_power(q)
        head = eps if not body else "%s*%s" % (body, eps)
        return "%s%s*%s" % (sign, head, mono_str)
    return "(%s)*%s" % (format_lc(coeff), mono_str)


def format_poly(f):
    """Canonical form: terms descending in grevlex, deterministic signs."""
    if not f:
        return "0"
    pieces = [
        _poly_term_str(m, c) for m, c in f.sorted_terms(cmp_grevlex)
    ]
    return _join(pieces)


def format_point(point):
    """Inverse of parse_point, ascending variable index."""
    return ",".join(
        "z%d=%s" % (v, format_lc(x)) for v, x in sorted(point.items())
    )
