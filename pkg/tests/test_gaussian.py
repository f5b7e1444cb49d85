from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import eval_coeffs, poly_from_roots
from _strategies import gaussians, small_fractions
from epsgeom.gaussian import (
    QI_I,
    QI_ONE,
    QI_ZERO,
    GaussianRational,
    gaussian_poly_roots,
    gaussian_sqrt,
)


class TestFieldLaws:
    @given(gaussians(), gaussians(), gaussians())
    def test_ring_laws(self, a, b, c):
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + QI_ZERO == a
        assert a * QI_ONE == a

    @given(gaussians(nonzero=True))
    def test_inverse(self, a):
        assert a * (QI_ONE / a) == QI_ONE

    @given(gaussians())
    def test_conjugate_norm(self, a):
        assert a * a.conjugate() == GaussianRational(a.norm())
        assert a.norm() >= 0
        assert (a.norm() == 0) == (not a)

    def test_imaginary_unit(self):
        assert QI_I * QI_I == GaussianRational(-1)


class TestSqrt:
    @given(gaussians())
    def test_square_then_sqrt(self, a):
        r = gaussian_sqrt(a * a)
        assert r is not None
        assert r * r == a * a

    def test_nonsquare(self):
        assert gaussian_sqrt(GaussianRational(2)) is None


class TestPolyRoots:
    # oracle: coefficients built by plain list convolution from a known
    # root multiset; the solver must recover exactly that multiset

    @given(
        st.lists(
            st.sampled_from(
                [
                    QI_ZERO,
                    QI_ONE,
                    QI_I,
                    GaussianRational(-2),
                    GaussianRational(Fraction(1, 2)),
                    GaussianRational(1, 1),
                ]
            ),
            min_size=1,
            max_size=4,
        )
    )
    @settings(max_examples=60)
    def test_recovers_known_roots(self, roots):
        coeffs = poly_from_roots(roots)
        found = gaussian_poly_roots(coeffs)
        flat = [r for r, mult in found for _ in range(mult)]
        assert sorted(flat, key=lambda g: (g.re, g.im)) == sorted(
            roots, key=lambda g: (g.re, g.im)
        )
        for r, _ in found:
            assert eval_coeffs(coeffs, r) == QI_ZERO

    def test_sorted_descending(self):
        coeffs = poly_from_roots([QI_ZERO, QI_ONE, QI_I])
        found = gaussian_poly_roots(coeffs)
        keys = [(r.re, r.im) for r, _ in found]
        assert keys == sorted(keys, reverse=True)

    def test_irrational_roots_invisible(self):
        # z^2 - 2 has no Gaussian-rational roots
        assert gaussian_poly_roots([GaussianRational(-2), QI_ZERO, QI_ONE]) == []

    def test_rejects_zero_polynomial(self):
        with pytest.raises(ValueError):
            gaussian_poly_roots([QI_ZERO])

    def test_constant_has_no_roots(self):
        assert gaussian_poly_roots([QI_ONE]) == []
