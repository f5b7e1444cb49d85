"""Shared hypothesis strategies for library values."""

from fractions import Fraction

from hypothesis import strategies as st

from epsgeom.gaussian import GaussianRational
from epsgeom.levicivita import LCNumber
from epsgeom.poly import Monomial, Poly

small_fractions = st.fractions(
    min_value=Fraction(-4), max_value=Fraction(4), max_denominator=4
)


def gaussians(nonzero=False):
    base = st.builds(GaussianRational, small_fractions, small_fractions)
    if nonzero:
        return base.filter(bool)
    return base


def _assemble_lc(pairs):
    acc = LCNumber()
    for exp, coeff in pairs:
        acc = acc + LCNumber.term(coeff, exp)
    return acc


def lc_numbers(max_terms=3, min_exponent=Fraction(-2), nonzero=False):
    exps = st.fractions(
        min_value=min_exponent, max_value=Fraction(3), max_denominator=3
    )
    base = st.lists(
        st.tuples(exps, gaussians()), max_size=max_terms
    ).map(_assemble_lc)
    if nonzero:
        return base.filter(bool)
    return base


def limited_lc(max_terms=3, nonzero=False):
    return lc_numbers(
        max_terms=max_terms, min_exponent=Fraction(0), nonzero=nonzero
    )


def monomials(max_vars=3, max_degree=3):
    pair = st.tuples(
        st.integers(min_value=1, max_value=max_vars),
        st.integers(min_value=1, max_value=max_degree),
    )
    return st.lists(pair, max_size=2).map(Monomial).filter(
        lambda m: m.degree() <= max_degree
    )


def _assemble_poly(domain, pairs):
    acc = Poly.zero(domain)
    for m, c in pairs:
        if c:
            acc = acc + Poly(domain, {m: c})
    return acc


def polys(max_vars=3, max_degree=3, max_terms=3, nonzero=False):
    term = st.tuples(monomials(max_vars, max_degree), gaussians())
    base = st.lists(term, max_size=max_terms).map(
        lambda pairs: _assemble_poly("standard", pairs)
    )
    if nonzero:
        return base.filter(bool)
    return base


def extended_polys(
    max_vars=3, max_degree=3, max_terms=3, limited=True, nonzero=False
):
    coeffs = limited_lc(max_terms=2) if limited else lc_numbers(max_terms=2)
    term = st.tuples(monomials(max_vars, max_degree), coeffs)
    base = st.lists(term, max_size=max_terms).map(
        lambda pairs: _assemble_poly("extended", pairs)
    )
    if nonzero:
        return base.filter(bool)
    return base
