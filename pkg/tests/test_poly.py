from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import compose_polys
from _strategies import (
    extended_polys,
    gaussians,
    limited_lc,
    monomials,
    polys,
    small_fractions,
)
from epsgeom.errors import (
    UnassignedVariable,
    UnlimitedCoefficient,
    ZeroPolynomial,
)
from epsgeom.gaussian import GaussianRational
from epsgeom.levicivita import LC_ZERO, LCNumber, lc_st
from epsgeom.parser import parse_lc, parse_poly
from epsgeom.poly import (
    MONO_ONE,
    AffineSubstitution,
    Monomial,
    Poly,
    apply_substitution,
    cmp_grevlex,
    cmp_lex,
    max_abs_normalize,
    poly_eval,
    poly_shadow,
    split_inf_ap,
)
from epsgeom.shadow import PointAssignment


def P(text):
    return parse_poly(text)


def pt(values):
    return PointAssignment(
        {v: x if isinstance(x, LCNumber) else parse_lc(x) for v, x in values.items()}
    )


class TestEvalExamples:
    def test_origin(self):
        assert poly_eval(P("z1 + eps*z2"), pt({1: "0", 2: "0"})) == LC_ZERO

    def test_cancelling_point(self):
        # -eps^2 + eps*eps = 0 exactly
        assert poly_eval(P("z1 + eps*z2"), pt({1: "-eps^2", 2: "eps"})) == LC_ZERO

    def test_missing_variable(self):
        with pytest.raises(UnassignedVariable):
            poly_eval(P("z1"), pt({2: "1"}))


class TestShadowExamples:
    def test_drops_infinitesimal_term(self):
        assert poly_shadow(P("z1 + eps*z2")) == P("z1").to_standard()

    def test_all_infinitesimal(self):
        assert poly_shadow(P("eps*z1")) == Poly.zero("standard")

    def test_unlimited_coefficient(self):
        with pytest.raises(UnlimitedCoefficient):
            poly_shadow(P("eps^(-1)*z1"))


class TestNormalizeExamples:
    def test_divides_by_leading_infinitesimal(self):
        assert max_abs_normalize(P("eps*z1 + eps^2*z2")) == P("z1 + eps*z2")

    def test_already_normal(self):
        assert max_abs_normalize(P("z1").to_extended()) == P("z1").to_extended()

    def test_zero_rejected(self):
        with pytest.raises(ZeroPolynomial):
            max_abs_normalize(Poly.zero("extended"))


class TestSplitExamples:
    def test_mixed(self):
        inf, ap = split_inf_ap(P("z1 + eps*z2"))
        assert inf == P("eps*z2")
        assert ap == P("z1").to_extended()

    def test_all_appreciable(self):
        inf, ap = split_inf_ap(P("z1 + z2").to_extended())
        assert inf == Poly.zero("extended")
        assert ap == P("z1 + z2").to_extended()

    def test_all_infinitesimal(self):
        inf, ap = split_inf_ap(P("eps*z1"))
        assert inf == P("eps*z1")
        assert ap == Poly.zero("extended")

    def test_unlimited_rejected(self):
        with pytest.raises(UnlimitedCoefficient):
            split_inf_ap(P("eps^(-1)*z1"))


class TestSubstitutionExamples:
    def test_shift(self):
        s = AffineSubstitution({1: P("z1 + 1").to_standard()})
        assert apply_substitution(P("z1").to_standard(), s) == P("z1 + 1").to_standard()

    def test_identity(self):
        f = P("z1*z2 + 3*z1").to_standard()
        s = AffineSubstitution(
            {1: Poly.variable(1), 2: Poly.variable(2)}
        )
        assert apply_substitution(f, s) == f

    def test_triangular_change(self):
        # z1*z2 under (z1 -> w1, z2 -> w2 + w1); checked against direct
        # composition and at five sample points.
        f = P("z1*z2").to_standard()
        s = AffineSubstitution(
            {1: Poly.variable(1), 2: P("z2 + z1").to_standard()}
        )
        g = apply_substitution(f, s)
        assert g == P("z1*z2 + z1^2").to_standard()
        assert g == compose_polys(f, {1: Poly.variable(1), 2: P("z2 + z1").to_standard()})
        samples = [(0, 0), (1, 2), (-1, 3), (2, 2), (5, -4)]
        for a, b in samples:
            p = pt({1: str(a), 2: str(b)})
            lhs = poly_eval(g, p)
            rhs = poly_eval(f, pt({1: str(a), 2: str(a + b)}))
            assert lhs == rhs

    def test_partial_coverage_rejected(self):
        with pytest.raises(UnassignedVariable):
            apply_substitution(
                P("z1*z2").to_standard(), AffineSubstitution({1: Poly.variable(1)})
            )

    def test_invertibility_flag(self):
        shear = AffineSubstitution(
            {1: Poly.variable(1), 2: P("z2 + z1").to_standard()}
        )
        collapse = AffineSubstitution(
            {1: Poly.variable(1), 2: Poly.variable(1)}
        )
        assert shear.is_invertible()
        assert not collapse.is_invertible()


class TestRingLaws:
    @given(polys(), polys(), polys())
    @settings(max_examples=60, deadline=None)
    def test_standard_domain(self, f, g, h):
        assert f + g == g + f
        assert (f + g) + h == f + (g + h)
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert f + Poly.zero("standard") == f
        assert f * Poly.constant(GaussianRational(1)) == f
        assert f - f == Poly.zero("standard")

    @given(extended_polys(), extended_polys(), extended_polys())
    @settings(max_examples=60, deadline=None)
    def test_extended_domain(self, f, g, h):
        assert f + g == g + f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert f - f == Poly.zero("extended")

    @given(polys(), polys())
    @settings(max_examples=40, deadline=None)
    def test_embedding_is_a_hom(self, f, g):
        assert (f + g).to_extended() == f.to_extended() + g.to_extended()
        assert (f * g).to_extended() == f.to_extended() * g.to_extended()


class TestEvalHomomorphism:
    @given(polys(max_vars=2), polys(max_vars=2), st.lists(limited_lc(), min_size=2, max_size=2))
    @settings(max_examples=50, deadline=None)
    def test_eval_respects_ring_ops(self, f, g, values):
        p = PointAssignment({1: values[0], 2: values[1]})
        assert poly_eval(f + g, p) == poly_eval(f, p) + poly_eval(g, p)
        assert poly_eval(f * g, p) == poly_eval(f, p) * poly_eval(g, p)


class TestShadowEvalCompatibility:
    @given(
        extended_polys(max_vars=2, limited=True),
        st.lists(limited_lc(), min_size=2, max_size=2),
    )
    @settings(max_examples=60, deadline=None)
    def test_st_of_value_equals_shadow_eval(self, f, values):
        p = PointAssignment({1: values[0], 2: values[1]})
        shadow_point = PointAssignment(
            {v: LCNumber.from_gaussian(lc_st(x)) for v, x in p.items()}
        )
        lhs = lc_st(poly_eval(f, p))
        rhs = lc_st(poly_eval(poly_shadow(f), shadow_point))
        assert lhs == rhs


class TestNormalizeShadowProperty:
    @given(extended_polys(limited=False, nonzero=True))
    @settings(max_examples=60, deadline=None)
    def test_normalized_shadow_nonzero(self, f):
        g = max_abs_normalize(f)
        assert poly_shadow(g) != Poly.zero("standard")

    @given(extended_polys(limited=True))
    @settings(max_examples=60, deadline=None)
    def test_split_parts(self, f):
        inf, ap = split_inf_ap(f)
        assert inf + ap == f
        assert poly_shadow(f) == poly_shadow(ap)


class TestSubstitutionHomomorphism:
    @given(polys(max_vars=2), polys(max_vars=2))
    @settings(max_examples=40, deadline=None)
    def test_ring_hom_in_f(self, f, g):
        s = AffineSubstitution(
            {1: P("z1 + 1").to_standard(), 2: P("z2 + z1").to_standard()}
        )
        assert apply_substitution(f + g, s) == apply_substitution(f, s) + apply_substitution(g, s)
        assert apply_substitution(f * g, s) == apply_substitution(f, s) * apply_substitution(g, s)


class TestMonomialOrders:
    @given(monomials(), monomials())
    @settings(max_examples=80, deadline=None)
    def test_antisymmetry(self, a, b):
        for cmp in (cmp_grevlex, cmp_lex):
            assert cmp(a, b) == -cmp(b, a)
            assert (cmp(a, b) == 0) == (a == b)

    @given(monomials(), monomials(), monomials())
    @settings(max_examples=80, deadline=None)
    def test_multiplicative(self, a, b, c):
        for cmp in (cmp_grevlex, cmp_lex):
            assert cmp(a, b) == cmp(a.mul(c), b.mul(c))

    @given(monomials())
    @settings(max_examples=40, deadline=None)
    def test_one_is_least(self, a):
        for cmp in (cmp_grevlex, cmp_lex):
            assert cmp(MONO_ONE, a) <= 0

    def test_grevlex_vs_lex_disagree(self):
        # z1^2 vs z2^3: grevlex ranks by total degree first, lex by z1.
        a = Monomial([(1, 2)])
        b = Monomial([(2, 3)])
        assert cmp_grevlex(a, b) == -1
        assert cmp_lex(a, b) == 1
