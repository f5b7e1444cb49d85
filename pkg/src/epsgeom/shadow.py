"""Shadows and halos: points, varieties, lifting, and closure checks.

The operators here connect the infinitesimal world to the standard one:
coordinate-wise standard parts of points, the reduce-on-variety loop that
turns a polynomial with infinitesimal coefficients into one with a usable
shadow, Newton-polygon lifting of shadow roots to actual roots, and the
end-to-end closure check on factored univariate instances.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    EmptyOpen,
    InvalidInput,
    NonConstructibleRoot,
    NotAShadowRoot,
    SupportMismatch,
    UnassignedVariable,
    UnlimitedValue,
)
from .gaussian import GaussianRational, QI_ZERO, _poly_div_linear, gaussian_poly_roots
from .groebner import Ideal, radical_member
from .levicivita import (
    INF,
    LC_ONE,
    LC_ZERO,
    LCFraction,
    LCNumber,
    TruncationOrder,
    _lc_coerce,
)
from .parser import format_gaussian, format_lc, format_poly
from .poly import (
    EXTENDED,
    MONO_ONE,
    AffineSubstitution,
    Poly,
    max_abs_normalize,
    poly_eval,
    poly_shadow,
)


class PointAssignment:
    """Finitely supported map from variable index to LCNumber."""

    __slots__ = ("values",)

    def __init__(self, values):
        vals = {}
        for v, x in dict(values).items():
            x = _lc_coerce(x)
            if x is NotImplemented:
                raise InvalidInput("coordinate values must be LC numbers")
            vals[int(v)] = x
        object.__setattr__(self, "values", vals)

    def __setattr__(self, name, value):
        raise AttributeError("PointAssignment is immutable")

    def __contains__(self, v):
        return v in self.values

    def __getitem__(self, v):
        return self.values[v]

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        return isinstance(other, PointAssignment) and self.values == other.values

    def __repr__(self):
        return "PointAssignment(%r)" % (self.values,)

    def items(self):
        return sorted(self.values.items())

    def support(self):
        return tuple(sorted(self.values))

    def is_standard(self):
        return all(
            not x or (x.is_term() and x.valuation() == 0)
            for x in self.values.values()
        )


def point_shadow(p):
    """Coordinate-wise standard part."""
    out = {}
    for v, x in p.items():
        try:
            out[v] = LCNumber.from_gaussian(x.standard_part())
        except UnlimitedValue:
            raise UnlimitedValue("coordinate z%d is unlimited" % v) from None
    return PointAssignment(out)


def halo_member(p, a):
    """True iff every coordinate of p differs from a's by an infinitesimal."""
    if p.support() != a.support():
        raise SupportMismatch(
            "supports %r and %r differ" % (p.support(), a.support())
        )
    return all((p[v] - a[v]).is_infinitesimal() for v in p.support())


class VarietyPresentation:
    """An affine variety given by standard generators of its (radical) ideal.

    Radicality is the caller's assertion; spot_check_radical is a cheap
    consistency probe, not a decision procedure.
    """

    def __init__(self, ambient, generators):
        ambient = tuple(sorted(int(v) for v in ambient))
        gens = tuple(generators)
        for g in gens:
            if not isinstance(g, Poly) or g.domain != "standard":
                raise InvalidInput("variety generators must be standard Poly")
            if not set(g.support()) <= set(ambient):
                raise InvalidInput("generator uses a variable outside the ambient")
        self.ambient = ambient
        self.generators = gens
        self._ideal = None

    def ideal(self):
        if self._ideal is None:
            self._ideal = Ideal(self.generators)
        return self._ideal

    def spot_check_radical(self):
        return all(radical_member(g, self.ideal()) for g in self.generators)

    def __repr__(self):
        return "VarietyPresentation(%r, %d generators)" % (
            self.ambient,
            len(self.generators),
        )


@dataclass(frozen=True)
class VarietyReduction:
    """Outcome of reduce_on_variety: the whole variety, or a usable g."""

    all_of_x: bool
    poly: object
    iterations: int


def _eps_term_budget(f):
    return sum(
        len(c.terms) if isinstance(c, LCNumber) else 1
        for c in f.terms.values()
    )


def _finite_coeffs(f):
    """Extended copy with every coefficient a finite sum, scaling untouched."""
    f = f.to_extended()
    out = {}
    for m, c in f.terms.items():
        if isinstance(c, LCFraction):
            c = c.to_lcnumber()
            if c is None:
                raise InvalidInput("finite-sum coefficients required")
        out[m] = c
    return Poly(EXTENDED, out)


def reduce_on_variety(f, X):
    """Find g with the same zero set as f on X whose shadow survives on X.

    Returns all_of_x when f lies in the extension of I(X).  Otherwise loops:
    while the current shadow still vanishes on X (radical membership),
    normalize by the largest coefficient and subtract the shadow.  Each
    subtraction removes at least one eps-term, so the loop runs at most
    (total eps-term count of f) times.
    """
    f = _finite_coeffs(f)
    I = X.ideal()
    if not I.normal_form(f):
        return VarietyReduction(True, None, 0)
    g = f
    budget = _eps_term_budget(f) + 2
    iterations = 0
    while True:
        iterations += 1
        if iterations > budget:
            raise InvalidInput("internal: reduction loop exceeded its budget")
        sh = poly_shadow(g)
        if sh and not radical_member(sh, I):
            return VarietyReduction(False, g, iterations)
        g = max_abs_normalize(g)
        sh = poly_shadow(g)
        if not radical_member(sh, I):
            return VarietyReduction(False, g, iterations)
        g = g - sh.to_extended()
        if not g:
            # f was a unit multiple of a standard member of the radical
            return VarietyReduction(True, None, iterations)


def _univar_coeffs(f, v):
    out = {}
    for m, c in f.terms.items():
        if m.exps and (len(m.exps) > 1 or m.exps[0][0] != v):
            raise InvalidInput("expected a polynomial in z%d only" % v)
        out[m.exponent(v)] = c
    return out


def newton_puiseux_lift(f, a, t=TruncationOrder()):
    """Lift a shadow root `a` of f to a genuine root to the given order.

    Iterates the Newton polygon of f shifted to a: take the steepest edge,
    extract its largest constructible root, recenter, repeat until the
    residual valuation clears t.order.  The returned point ξ satisfies
    st(ξ) = a and valuation(f(ξ)) > t.order (often exactly zero).
    """
    if isinstance(a, (int, Fraction)):
        a = GaussianRational(a)
    if isinstance(a, LCNumber):
        st = a.standard_part()
        if a != LCNumber.from_gaussian(st):
            raise InvalidInput("the shadow root must be a standard value")
        a = st
    if not isinstance(a, GaussianRational):
        raise InvalidInput("the shadow root must be a standard value")
    f = _finite_coeffs(f)
    support = f.support()
    if len(support) != 1 or f.total_degree() < 1:
        raise InvalidInput("lifting needs a nonconstant univariate polynomial")
    v = support[0]
    fn = max_abs_normalize(f)
    sh = poly_shadow(fn)
    if poly_eval(sh, {v: LCNumber.from_gaussian(a)}):
        raise NotAShadowRoot("z%d = %s is not a root of the shadow" % (v, a))

    acc = LCNumber.from_gaussian(a)
    scale = LC_ONE
    g = AffineSubstitution(
        {v: Poly.constant(acc) + Poly.variable(v, EXTENDED)}
    ).apply(fn)
    for _ in range(4096):
        coeffs = _univar_coeffs(g, v)
        c0 = coeffs.get(0, LC_ZERO)
        v0 = c0.valuation() if c0 else INF
        if v0 > t.order:
            return PointAssignment({v: acc})
        mu = None
        for k, ck in coeffs.items():
            if k == 0 or not ck:
                continue
            cand = Fraction(v0 - ck.valuation(), k)
            if mu is None or cand > mu:
                mu = cand
        if mu is None or mu <= 0:
            raise InvalidInput("internal: no infinitesimal branch remains")
        edge = {}
        for k, ck in coeffs.items():
            if ck and ck.valuation() + k * mu == v0:
                edge[k] = ck.leading()[1]
        phi = [edge.get(k, QI_ZERO) for k in range(max(edge) + 1)]
        roots = gaussian_poly_roots(phi)
        if not roots:
            raise NonConstructibleRoot(
                "edge polynomial has no root in the coefficient field"
            )
        gamma = roots[0][0]
        step = LCNumber.term(gamma, mu)
        acc = acc + scale * step
        g = AffineSubstitution(
            {
                v: Poly.constant(step)
                + Poly.variable(v, EXTENDED).scale(LCNumber.eps(mu))
            }
        ).apply(g)
        scale = scale * LCNumber.eps(mu)
    raise InvalidInput("internal: lifting did not converge")


def open_shadow_witness(f, a, seed=0):
    """A point in the halo of a where f does not vanish.

    Restricts f to lines a + u*d: standard basis directions first, then a few
    seeded small-integer directions, then an exhaustive grid that cannot miss
    (a nonzero polynomial cannot vanish on a large enough grid).  On the
    first direction with a nonzero restriction, u = c*eps works for some
    c <= deg + 1.
    """
    if not f:
        raise EmptyOpen("the zero polynomial cuts out an empty open set")
    f = f.to_extended()
    for v in f.support():
        if v not in a:
            raise UnassignedVariable("point does not assign z%d" % v)
    if poly_eval(f, a):
        return a
    ambient = a.support()
    u = ambient[0]
    deg = f.total_degree()

    def directions():
        for w in ambient:
            yield {v: 1 if v == w else 0 for v in ambient}
        rng = random.Random(seed)
        for _ in range(16):
            yield {v: rng.randint(-3, 3) for v in ambient}
        for combo in itertools.product(range(deg + 1), repeat=len(ambient)):
            if any(combo):
                yield dict(zip(ambient, combo))

    for d in directions():
        sub = AffineSubstitution(
            {
                v: Poly.constant(a[v])
                + Poly.variable(u, EXTENDED).scale(GaussianRational(d[v]))
                for v in ambient
            }
        )
        h = sub.apply(f)
        if not h:
            continue
        for c in range(1, h.degree_in(u) + 2):
            ueps = LCNumber.term(GaussianRational(c), 1)
            if poly_eval(h, {u: ueps}):
                return PointAssignment(
                    {v: a[v] + ueps * LCNumber.from_gaussian(GaussianRational(d[v])) for v in ambient}
                )
    raise InvalidInput("internal: witness grid search failed")


def _collect_roots(sh, v, candidates):
    """Split off (z - a) factors for each candidate; return (mults, leftover)."""
    deg = sh.degree_in(v)
    coeffs = [QI_ZERO] * (deg + 1)
    for m, c in sh.terms.items():
        coeffs[m.exponent(v)] = c
    mults = {}
    for aa in candidates:
        mults[aa] = 0
        while len(coeffs) > 1:
            quot, rem = _poly_div_linear(coeffs, aa)
            if rem:
                break
            coeffs = quot
            mults[aa] += 1
    return mults, coeffs


def verify_shadow_closure(roots, t=TruncationOrder()):
    """End-to-end closure check for f = prod (z1 - root).

    LHS: standard parts of the limited roots.  RHS: reduce f on the full
    line, take the shadow, and require its root set to be exactly the LHS
    (division to exhaustion must leave a nonzero constant).  Each LHS element
    is then lifted back and checked to land in the halo of a supplied root.
    """
    parsed = []
    for r in roots:
        r = _lc_coerce(r)
        if r is NotImplemented:
            raise InvalidInput("roots must be LC numbers")
        parsed.append(r)
    if not parsed:
        raise InvalidInput("need at least one root")
    v = 1
    z = Poly.variable(v, EXTENDED)
    f = Poly.constant(LC_ONE)
    for r in parsed:
        f = f * (z - Poly.constant(r))
    # unlimited roots give unlimited coefficients; the zero set is unchanged
    # under scaling, so work with the normalized form throughout
    f = max_abs_normalize(f)

    lhs = []
    for r in parsed:
        if r.is_limited():
            s = r.standard_part()
            if s not in lhs:
                lhs.append(s)
    lhs.sort(key=lambda c: (c.re, c.im))

    X = VarietyPresentation((v,), ())
    rr = reduce_on_variety(f, X)
    sh = poly_shadow(rr.poly)
    mults, leftover = _collect_roots(sh, v, lhs)
    rhs_ok = (
        len(leftover) == 1
        and bool(leftover[0])
        and all(mults[aa] >= 1 for aa in lhs)
    )

    witnesses = []
    wit_ok = True
    for aa in lhs:
        xi = newton_puiseux_lift(f, aa, t)
        value = poly_eval(f, xi)
        res_val = value.valuation() if value else INF
        in_halo = any((xi[v] - r).is_infinitesimal() for r in parsed)
        ok = (
            xi[v].standard_part() == aa
            and res_val > t.order
            and in_halo
        )
        wit_ok = wit_ok and ok
        witnesses.append(
            {
                "shadow_root": format_gaussian(aa),
                "lift": format_lc(xi[v]),
                "residual_valuation": "inf" if res_val == INF else str(res_val),
                "in_halo_of_instance_root": in_halo,
                "ok": ok,
            }
        )

    return {
        "instance": [format_lc(r) for r in parsed],
        "lhs": [format_gaussian(aa) for aa in lhs],
        "rhs": {
            "reduced_shadow": format_poly(sh),
            "roots_match_lhs": rhs_ok,
        },
        "witnesses": witnesses,
        "pass": rhs_ok and wit_ok,
    }
