"""Sparse multivariate polynomials over exact coefficient domains.

Variables are natural-number indices with no upper bound; index 0 is reserved
for the auxiliary variable used by radical membership.  Coefficients are
GaussianRational ("standard" domain) or LCNumber / LCFraction ("extended"
domain).  Monomials carry strictly positive integer exponents only.
"""

from __future__ import annotations

import functools
from fractions import Fraction

from .errors import (
    InvalidInput,
    UnassignedVariable,
    UnlimitedCoefficient,
    ZeroPolynomial,
)
from .gaussian import GaussianRational, QI_ONE, QI_ZERO
from .levicivita import (
    LC_ONE,
    LC_ZERO,
    LCFraction,
    LCNumber,
    _unit_inverse,
    lc_abs_cmp,
)

STANDARD = "standard"
EXTENDED = "extended"


class Monomial:
    """Finitely supported exponent map, stored as a sorted (var, exp) tuple."""

    __slots__ = ("exps", "deg")

    def __init__(self, exps=()):
        merged = {}
        for v, e in exps:
            v, e = int(v), int(e)
            if v < 0 or e < 0:
                raise InvalidInput("variable indices and exponents are naturals")
            merged[v] = merged.get(v, 0) + e
        pairs = tuple(sorted((v, e) for v, e in merged.items() if e))
        object.__setattr__(self, "exps", pairs)
        object.__setattr__(self, "deg", sum(e for _, e in pairs))

    @staticmethod
    def _raw(pairs):
        # pairs already sorted, merged, and positive
        out = object.__new__(Monomial)
        object.__setattr__(out, "exps", pairs)
        object.__setattr__(out, "deg", sum(e for _, e in pairs))
        return out

    def __setattr__(self, name, value):
        raise AttributeError("Monomial is immutable")

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps

    def __hash__(self):
        return hash(self.exps)

    def __repr__(self):
        return "Monomial(%r)" % (self.exps,)

    def __str__(self):
        if not self.exps:
            return "1"
        return "*".join(
            "z%d" % v if e == 1 else "z%d^%d" % (v, e) for v, e in self.exps
        )

    def degree(self):
        return self.deg

    def exponent(self, var):
        for v, e in self.exps:
            if v == var:
                return e
        return 0

    def variables(self):
        return tuple(v for v, _ in self.exps)

    def mul(self, other):
        if not other.exps:
            return self
        if not self.exps:
            return other
        acc = dict(self.exps)
        for v, e in other.exps:
            acc[v] = acc.get(v, 0) + e
        return Monomial._raw(tuple(sorted(acc.items())))

    def divides(self, other):
        return all(other.exponent(v) >= e for v, e in self.exps)

    def div(self, other):
        if not other.exps:
            return self
        acc = dict(self.exps)
        for v, e in other.exps:
            r = acc.get(v, 0) - e
            if r < 0:
                raise InvalidInput("monomial division is not exact")
            if r:
                acc[v] = r
            else:
                del acc[v]
        return Monomial._raw(tuple(sorted(acc.items())))

    def lcm(self, other):
        acc = dict(self.exps)
        for v, e in other.exps:
            acc[v] = max(acc.get(v, 0), e)
        return Monomial._raw(tuple(sorted(acc.items())))


MONO_ONE = Monomial()


def cmp_grevlex(m, n):
    """Graded reverse lexicographic; smaller variable indices rank higher."""
    dm, dn = m.deg, n.deg
    if dm != dn:
        return 1 if dm > dn else -1
    a, b = m.exps, n.exps
    if a == b:
        return 0
    # ties: the rightmost nonzero entry of the exponent difference decides,
    # negative winning.  Both tuples are sorted by variable index, so walk
    # them from the tail; equal degrees guarantee the loop decides.
    i, j = len(a) - 1, len(b) - 1
    while i >= 0 and j >= 0:
        va, ea = a[i]
        vb, eb = b[j]
        if va != vb:
            return -1 if va > vb else 1
        if ea != eb:
            return -1 if ea > eb else 1
        i -= 1
        j -= 1
    return 0


def cmp_lex(m, n):
    """Pure lexicographic; the variable with the smallest index is largest."""
    a, b = m.exps, n.exps
    if a == b:
        return 0
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va != vb:
            return 1 if va < vb else -1
        if ea != eb:
            return 1 if ea > eb else -1
        i += 1
        j += 1
    if i < len(a):
        return 1
    if j < len(b):
        return -1
    return 0


def cmp_elimination(block):
    """Block order: total degree in `block` first, grevlex ties."""
    block = frozenset(block)

    def cmp(m, n):
        dm = sum(e for v, e in m.exps if v in block)
        dn = sum(e for v, e in n.exps if v in block)
        if dm != dn:
            return 1 if dm > dn else -1
        return cmp_grevlex(m, n)

    return cmp


def _promote_coeff(c):
    """Standard coefficient into the extended domain."""
    if isinstance(c, GaussianRational):
        return LCNumber.from_gaussian(c)
    return c


def _coeff_domain(c):
    if isinstance(c, GaussianRational):
        return STANDARD
    if isinstance(c, (LCNumber, LCFraction)):
        return EXTENDED
    raise InvalidInput("unsupported coefficient type %r" % type(c).__name__)


class Poly:
    """Sparse polynomial: dict from Monomial to nonzero coefficient."""

    __slots__ = ("domain", "terms")
    __hash__ = None

    def __init__(self, domain, terms):
        if domain not in (STANDARD, EXTENDED):
            raise InvalidInput("unknown domain %r" % domain)
        cleaned = {}
        for m, c in dict(terms).items():
            if domain == EXTENDED and isinstance(c, GaussianRational):
                c = LCNumber.from_gaussian(c)
            if c:
                cleaned[m] = c
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @staticmethod
    def zero(domain=STANDARD):
        return Poly(domain, {})

    @staticmethod
    def constant(c):
        if isinstance(c, (int, Fraction)):
            c = GaussianRational(c)
        return Poly(_coeff_domain(c), {MONO_ONE: c})

    @staticmethod
    def variable(index, domain=STANDARD):
        one = QI_ONE if domain == STANDARD else LC_ONE
        return Poly(domain, {Monomial(((index, 1),)): one})

    def to_extended(self):
        if self.domain == EXTENDED:
            return self
        return Poly(EXTENDED, {m: _promote_coeff(c) for m, c in self.terms.items()})

    def to_standard(self):
        """Demote when every coefficient is a pure eps^0 term."""
        if self.domain == STANDARD:
            return self
        out = {}
        for m, c in self.terms.items():
            if isinstance(c, LCFraction):
                c = c.to_lcnumber()
                if c is None:
                    return None
            if c.is_term() and c.valuation() == 0:
                out[m] = c.leading()[1]
            else:
                return None
        return Poly(STANDARD, out)

    # --- ring operations -----------------------------------------------------

    def _unify(self, other):
        if not isinstance(other, Poly):
            raise InvalidInput("expected a Poly")
        if self.domain == other.domain:
            return self, other
        return self.to_extended(), other.to_extended()

    def __add__(self, other):
        a, b = self._unify(other)
        acc = dict(a.terms)
        for m, c in b.terms.items():
            s = acc.get(m)
            s = c if s is None else s + c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        return Poly(a.domain, acc)

    def __sub__(self, other):
        a, b = self._unify(other)
        return a + (-b)

    def __neg__(self):
        return Poly(self.domain, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (GaussianRational, LCNumber, LCFraction, int, Fraction)):
            return self.scale(other)
        a, b = self._unify(other)
        acc = {}
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                m = ma.mul(mb)
                p = ca * cb
                s = acc.get(m)
                s = p if s is None else s + p
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
        return Poly(a.domain, acc)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise InvalidInput("polynomial powers take nonnegative integers")
        out = Poly.constant(QI_ONE) if self.domain == STANDARD else Poly.constant(LC_ONE)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c):
        if isinstance(c, (int, Fraction)):
            c = GaussianRational(c)
        domain = self.domain
        if _coeff_domain(c) == EXTENDED and domain == STANDARD:
            return self.to_extended().scale(c)
        if _coeff_domain(c) == STANDARD and domain == EXTENDED:
            c = _promote_coeff(c)
        return Poly(domain, {m: cc * c for m, cc in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._unify(other)
        if set(a.terms) != set(b.terms):
            return False
        return all(a.terms[m] == b.terms[m] for m in a.terms)

    def __repr__(self):
        return "Poly(%r, %r)" % (self.domain, self.terms)

    # --- structure -------------------------------------------------------

    def support(self):
        """Sorted tuple of variable indices that occur."""
        vs = set()
        for m in self.terms:
            vs.update(m.variables())
        return tuple(sorted(vs))

    def total_degree(self):
        return max((m.degree() for m in self.terms), default=0)

    def degree_in(self, var):
        return max((m.exponent(var) for m in self.terms), default=0)

    def is_constant(self):
        return all(m is MONO_ONE or not m.exps for m in self.terms)

    def as_constant(self):
        if not self.terms:
            return QI_ZERO_FOR[self.domain]
        if not self.is_constant():
            raise InvalidInput("polynomial is not constant")
        return next(iter(self.terms.values()))

    def coefficient(self, mono):
        c = self.terms.get(mono)
        if c is not None:
            return c
        return QI_ZERO_FOR[self.domain]

    def sorted_terms(self, cmp=cmp_grevlex):
        """Terms sorted descending under the given monomial comparison."""
        return sorted(
            self.terms.items(),
            key=functools.cmp_to_key(lambda a, b: cmp(a[0], b[0])),
            reverse=True,
        )


QI_ZERO_FOR = {STANDARD: QI_ZERO, EXTENDED: LC_ZERO}


def poly_eval(f, point):
    """Evaluate at a point with LCNumber coordinates; returns an LCNumber.

    Every variable in f's support must be assigned, else UnassignedVariable.
    """
    acc = LCNumber()
    frac_acc = None
    for m, c in f.terms.items():
        val = LC_ONE
        for v, e in m.exps:
            if v not in point:
                raise UnassignedVariable("variable z%d is not assigned" % v)
            val = val * (point[v] ** e)
        contrib = _promote_coeff(c) * val
        if isinstance(contrib, LCFraction):
            frac_acc = (frac_acc if frac_acc is not None else LCFraction(acc)) + contrib
        elif frac_acc is not None:
            frac_acc = frac_acc + contrib
        else:
            acc = acc + contrib
    if frac_acc is not None:
        out = frac_acc.to_lcnumber()
        if out is None:
            raise InvalidInput("evaluation is not a finite sum")
        return out
    return acc


def _coeff_standard_part(c, mono):
    if isinstance(c, GaussianRational):
        return c
    if isinstance(c, (LCNumber, LCFraction)):
        if not c.is_limited():
            raise UnlimitedCoefficient(
                "coefficient of %s is unlimited" % mono
            )
        return c.standard_part()
    raise InvalidInput("unsupported coefficient type")


def poly_shadow(f):
    """Coefficient-wise standard part; defined when all coefficients are limited."""
    out = {}
    for m, c in f.terms.items():
        s = _coeff_standard_part(c, m)
        if s:
            out[m] = s
    return Poly(STANDARD, out)


def max_abs_normalize(f):
    """Divide f by the leading term of a coefficient of maximal magnitude.

    The chosen coefficient is maximal under the magnitude preorder; ties pick
    the coefficient attached to the largest monomial in grevlex.  The chosen
    position becomes 1 + infinitesimal, so the result has limited coefficients,
    at least one appreciable, and a nonzero shadow.
    """
    if not f:
        raise ZeroPolynomial("cannot normalize the zero polynomial")
    f = f.to_extended()
    best_c = None
    best_m = None
    for m, c in f.terms.items():
        if isinstance(c, LCFraction):
            c = c.to_lcnumber()
            if c is None:
                raise InvalidInput("normalize needs finite-sum coefficients")
        if best_c is None:
            best_c, best_m = c, m
            continue
        r = lc_abs_cmp(c, best_c)
        if r > 0 or (r == 0 and cmp_grevlex(m, best_m) > 0):
            best_c, best_m = c, m
    unit_inv = _unit_inverse(LCNumber((best_c.leading(),)))
    return f.scale(unit_inv)


def split_inf_ap(f):
    """Split into the infinitesimal-coefficient and appreciable-coefficient parts.

    Every coefficient must be limited (UnlimitedCoefficient otherwise); the
    parts satisfy f = inf_part + ap_part exactly.
    """
    f = f.to_extended()
    inf_terms = {}
    ap_terms = {}
    for m, c in f.terms.items():
        cc = c.to_lcnumber() if isinstance(c, LCFraction) else c
        if cc is None or cc.is_unlimited():
            raise UnlimitedCoefficient("coefficient of %s is unlimited" % m)
        (inf_terms if cc.is_infinitesimal() else ap_terms)[m] = c
    return Poly(EXTENDED, inf_terms), Poly(EXTENDED, ap_terms)


class AffineSubstitution:
    """Per-variable degree-<=1 replacement polynomials."""

    def __init__(self, mapping):
        self.mapping = {}
        for v, g in mapping.items():
            if not isinstance(g, Poly):
                raise InvalidInput("substitution values must be Poly")
            if g.total_degree() > 1:
                raise InvalidInput("substitution for z%d is not affine" % v)
            self.mapping[int(v)] = g

    def apply(self, f):
        domain = f.domain
        if any(g.domain == EXTENDED for g in self.mapping.values()):
            domain = EXTENDED
        out = Poly.zero(domain)
        for m, c in f.terms.items():
            part = Poly.constant(c if domain == f.domain else _promote_coeff(c))
            for v, e in m.exps:
                if v not in self.mapping:
                    raise UnassignedVariable(
                        "substitution does not cover z%d" % v
                    )
                part = part * (self.mapping[v] ** e)
            out = out + part
        return out

    def is_invertible(self):
        """True iff the linear part is a bijection of the named variables."""
        sources = sorted(self.mapping)
        targets = sorted(
            {v for g in self.mapping.values() for v in g.support()}
        )
        if len(sources) != len(targets):
            return False
        rows = []
        for s in sources:
            g = self.mapping[s].to_extended()
            rows.append(
                [g.coefficient(Monomial(((t, 1),))) for t in targets]
            )
        return bool(_det(rows))


def _det(rows):
    """Exact determinant by expansion; fine at desk scale."""
    n = len(rows)
    if n == 0:
        return LC_ONE
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        c = rows[0][j]
        if not c:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = c * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else LC_ZERO


def apply_substitution(f, s):
    """Compose f with an AffineSubstitution covering its support."""
    return s.apply(f)
