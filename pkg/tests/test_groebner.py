import random
from itertools import product

import pytest

from _oracles import brute_force_member, brute_force_syzygies, monomials_upto
from epsgeom.errors import ReservedVariableInUse
from epsgeom.gaussian import GaussianRational
from epsgeom.groebner import (
    GREVLEX,
    LEX,
    Ideal,
    MonomialOrder,
    SyzygyBasis,
    buchberger,
    contraction,
    eliminate,
    ideal_combine,
    ideal_member,
    ideal_member_cofactors,
    is_proper,
    module_member,
    normal_form,
    radical_member,
    syzygy_basis,
)
from epsgeom.parser import format_poly, parse_poly
from epsgeom.poly import Monomial, Poly


def std(text):
    return parse_poly(text).to_standard()


def ext(text):
    return parse_poly(text).to_extended()


def random_std_poly(rng, max_vars=3, max_degree=2, max_terms=3):
    monos = monomials_upto(range(1, max_vars + 1), max_degree)
    acc = Poly.zero("standard")
    for _ in range(rng.randint(1, max_terms)):
        m = rng.choice(monos)
        c = GaussianRational(rng.randint(-3, 3), rng.choice((0, 0, 0, 1, -1)))
        if c:
            acc = acc + Poly("standard", {m: c})
    return acc


def random_ideal(rng, max_gens=3, **kwargs):
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        f = random_std_poly(rng, **kwargs)
        if f:
            gens.append(f)
    return Ideal(gens)


def spoly(f, g, order):
    lf = max(f.terms, key=order.key())
    lg = max(g.terms, key=order.key())
    lcm = lf.lcm(lg)
    a = Poly(f.domain, {lcm.div(lf): GaussianRational(1) / f.terms[lf]})
    b = Poly(g.domain, {lcm.div(lg): GaussianRational(1) / g.terms[lg]})
    return a * f - b * g


class TestBuchbergerExamples:
    def test_axes(self):
        assert buchberger([std("z1"), std("z2")]) == [std("z1"), std("z2")]

    def test_lex_triangularization(self):
        basis = buchberger([std("z1 - z2"), std("z2 - 1")], LEX)
        assert basis == [std("z1 - 1"), std("z2 - 1")]
        # mutual reduction: both generating sets lie in each other's ideal
        left = Ideal([std("z1 - z2"), std("z2 - 1")], LEX)
        right = Ideal(basis, LEX)
        assert all(ideal_member(g, right) for g in left.generators)
        assert all(ideal_member(g, left) for g in basis)

    def test_zero_ideal(self):
        assert buchberger([]) == []


class TestNormalFormExamples:
    def test_multiple_reduces_to_zero(self):
        assert normal_form(std("z1^2"), Ideal([std("z1")])) == Poly.zero("standard")

    def test_remainder(self):
        assert normal_form(std("z1 + z2"), Ideal([std("z1")])) == std("z2")

    def test_zero_ideal_is_identity(self):
        f = std("z1*z2 - 3")
        assert normal_form(f, Ideal([])) == f


class TestMembershipExamples:
    def test_multiple(self):
        assert ideal_member(std("z1*z2"), Ideal([std("z1")]))

    def test_non_member(self):
        assert not ideal_member(std("z2"), Ideal([std("z1")]))

    def test_unit_ideal(self):
        assert ideal_member(std("1"), Ideal([std("z1"), std("z1 - 1")]))


class TestRadicalExamples:
    def test_square_root(self):
        assert radical_member(std("z1"), Ideal([std("z1^2")]))

    def test_binomial_cube(self):
        # (z1+z2)^3 = z1^3 + 3 z1^2 z2 + 3 z1 z2^2 + z2^3: every term is
        # divisible by z1^2 or z2^2, so the cube is a member by inspection.
        cube = std("z1 + z2") * std("z1 + z2") * std("z1 + z2")
        sq1, sq2 = Monomial([(1, 2)]), Monomial([(2, 2)])
        assert all(sq1.divides(m) or sq2.divides(m) for m in cube.terms)
        assert radical_member(std("z1 + z2"), Ideal([std("z1^2"), std("z2^2")]))

    def test_not_in_radical(self):
        assert not radical_member(std("z1"), Ideal([std("z2")]))

    def test_reserved_variable(self):
        with pytest.raises(ReservedVariableInUse):
            radical_member(std("z0"), Ideal([std("z1")]))
        with pytest.raises(ReservedVariableInUse):
            radical_member(std("z1"), Ideal([std("z0*z1")]))


class TestCombineExamples:
    def test_intersection(self):
        K = ideal_combine("intersection", Ideal([std("z1")]), Ideal([std("z2")]))
        target = Ideal([std("z1*z2")])
        assert all(ideal_member(g, target) for g in K.generators)
        assert all(ideal_member(g, K) for g in target.generators)

    def test_sum(self):
        S = ideal_combine("sum", Ideal([std("z1")]), Ideal([std("z2")]))
        assert list(S.generators) == [std("z1"), std("z2")]

    def test_product(self):
        P = ideal_combine("product", Ideal([std("z1")]), Ideal([std("z2")]))
        assert list(P.generators) == [std("z1*z2")]


class TestEliminationExamples:
    def test_parabola_has_no_z2_free_part(self):
        E = eliminate(Ideal([std("z2 - z1^2")]), {2})
        assert list(E.generators) == []

    def test_point_projection(self):
        E = eliminate(Ideal([std("z1 - 1"), std("z2 - 2")]), {2})
        assert list(E.generators) == [std("z1 - 1")]
        # substitution oracle: z2 -> 2 sends the dropped generator into E
        assert ideal_member(std("z1 - 1"), E)

    def test_empty_drop(self):
        I = Ideal([std("z1*z2 - 1")])
        E = eliminate(I, set())
        assert all(ideal_member(g, I) for g in E.generators)
        assert all(ideal_member(g, E) for g in I.generators)


class TestContractionExamples:
    def test_drops_high_variable(self):
        assert list(contraction(Ideal([std("z3 - z1")]), 1).generators) == []

    def test_keeps_low_variable(self):
        C = contraction(Ideal([std("z1 - 1"), std("z2 - 2")]), 1)
        assert list(C.generators) == [std("z1 - 1")]

    def test_full_index_is_identity(self):
        I = Ideal([std("z1 - 1"), std("z2 - 2")])
        C = contraction(I, 2)
        assert all(ideal_member(g, I) for g in C.generators)
        assert all(ideal_member(g, C) for g in I.generators)


class TestProperExamples:
    def test_principal(self):
        assert is_proper(Ideal([std("z1")]))

    def test_unit(self):
        assert not is_proper(Ideal([std("z1"), std("z1 - 1")]))

    def test_zero_ideal(self):
        assert is_proper(Ideal([]))


class TestSyzygyExamples:
    def test_two_variables(self):
        b = syzygy_basis([std("z1"), std("z2")])
        assert [list(beta) for beta in b.generators] == [[std("z2"), std("-z1")]]
        b.check()
        # brute-force degree-3 solutions all lie in the span
        for sol in brute_force_syzygies([std("z1"), std("z2")], 3):
            assert module_member(list(b.generators), sol) is not None

    def test_repeated_generator(self):
        b = syzygy_basis([std("z1"), std("z1")])
        assert [list(beta) for beta in b.generators] == [[std("1"), std("-1")]]

    def test_single_nonzero(self):
        assert syzygy_basis([std("z1")]).generators == ()


class TestBuchbergerCriterion:
    def test_spolys_reduce_to_zero(self):
        rng = random.Random(4001)
        for _ in range(12):
            I = random_ideal(rng)
            for order in (GREVLEX, LEX):
                basis = buchberger(list(I.generators), order)
                J = Ideal(list(I.generators), order)
                for i in range(len(basis)):
                    for j in range(i + 1, len(basis)):
                        s = spoly(basis[i], basis[j], order)
                        assert normal_form(s, J) == Poly.zero("standard")


class TestMembershipOracle:
    def test_agrees_with_brute_force(self):
        rng = random.Random(4002)
        for _ in range(20):
            I = random_ideal(rng, max_vars=3, max_degree=2)
            f = random_std_poly(rng, max_vars=3, max_degree=2)
            brute = brute_force_member(f, list(I.generators), 4)
            member = ideal_member(f, I)
            if brute:
                assert member
            if member:
                cof = ideal_member_cofactors(f, I)
                assert cof is not None
                recomposed = Poly.zero("standard")
                for h, g in zip(cof, I.generators):
                    recomposed = recomposed + h * g
                assert recomposed == f
            else:
                assert not brute


class TestRadicalOracle:
    def test_agrees_with_power_search(self):
        rng = random.Random(4003)
        for _ in range(15):
            I = random_ideal(rng, max_gens=2, max_vars=2, max_degree=2)
            g = random_std_poly(rng, max_vars=2, max_degree=2)
            power = std("1")
            brute = False
            for _ in range(6):
                power = power * g
                if ideal_member(power, I):
                    brute = True
                    break
            rad = radical_member(g, I)
            if brute:
                assert rad
            if not rad:
                assert not brute


class TestRadicalOfProducts:
    def test_product_and_intersection_share_radical(self):
        rng = random.Random(4004)
        for _ in range(8):
            I = random_ideal(rng, max_gens=2, max_vars=2, max_degree=2)
            J = random_ideal(rng, max_gens=2, max_vars=2, max_degree=2)
            prod = ideal_combine("product", I, J)
            inter = ideal_combine("intersection", I, J)
            for g in prod.generators:
                assert radical_member(g, inter)
            for g in inter.generators:
                assert radical_member(g, prod)


class TestSyzygyProperties:
    def test_exactness_and_span(self):
        rng = random.Random(4005)
        for _ in range(10):
            a = [random_std_poly(rng, max_vars=2, max_degree=2) for _ in range(2)]
            if not any(a):
                continue
            b = syzygy_basis(a)
            b.check()
            for beta in b.generators:
                total = Poly.zero("standard")
                for ai, xi in zip(a, beta):
                    total = total + ai * xi
                assert total == Poly.zero("standard")
            for sol in brute_force_syzygies(a, 2):
                assert module_member(list(b.generators), sol) is not None


class TestDeterminism:
    def test_shuffle_invariance(self):
        rng = random.Random(4006)
        for _ in range(8):
            I = random_ideal(rng)
            gens = list(I.generators)
            reference = buchberger(gens)
            for _ in range(3):
                shuffled = gens[:]
                rng.shuffle(shuffled)
                assert buchberger(shuffled) == reference

    def test_repeat_runs_are_identical(self):
        gens = [std("z1^2 - z2"), std("z1*z2 - 1")]
        first = buchberger(gens, LEX)
        assert all(buchberger(gens, LEX) == first for _ in range(3))


class TestExtendedDomain:
    def test_unit_scaled_axes(self):
        basis = buchberger([ext("(1 + eps)*z1"), ext("eps*z2")])
        assert basis == [ext("z1"), ext("z2")]

    def test_stable_under_field_extension(self):
        rng = random.Random(4007)
        for _ in range(8):
            I = random_ideal(rng, max_gens=2, max_vars=2, max_degree=2)
            lifted = buchberger([g.to_extended() for g in I.generators])
            assert lifted == [g.to_extended() for g in buchberger(list(I.generators))]

    def test_extended_membership(self):
        I = Ideal([ext("z1 + eps*z2")])
        assert ideal_member(ext("z1*z2 + eps*z2^2"), I)
        assert not ideal_member(ext("z1"), I)


class TestIdealCache:
    def test_basis_is_cached_and_stable(self):
        I = Ideal([std("z1^2 - z2"), std("z2^2 - z1")])
        first = I.groebner_basis()
        assert I.groebner_basis() == first
        assert buchberger(list(I.generators)) == first

    def test_contains_matches_normal_form(self):
        I = Ideal([std("z1 - z2")])
        assert I.contains(std("z1^2 - z2^2"))
        assert I.normal_form(std("z1")) == I.normal_form(std("z2"))


class TestDenseKeys:
    """The engine's tuple keys must sort exactly like the order comparators."""

    def _random_monomials(self, rng, count=60):
        out = []
        for _ in range(count):
            k = rng.randint(0, 4)
            out.append(Monomial([(rng.randint(1, 5), rng.randint(1, 4)) for _ in range(k)]))
        return out

    @pytest.mark.parametrize(
        "order",
        [GREVLEX, LEX, MonomialOrder("elimination", {2, 4})],
        ids=lambda o: o.name,
    )
    def test_key_sort_matches_cmp_sort(self, order):
        from epsgeom.groebner import _dense_keys

        rng = random.Random(hash(order.name) & 0xFFFF)
        for _ in range(10):
            mons = self._random_monomials(rng)
            keys = _dense_keys(order, ([{(0, m): None for m in mons}],))
            by_key = sorted(mons, key=keys.mono)
            by_cmp = sorted(mons, key=order.key())
            assert by_key == by_cmp
            for m, n in zip(by_key, by_key[1:]):
                assert order.cmp(m, n) <= 0
