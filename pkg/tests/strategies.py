"""Hypothesis strategies shared by the module tests."""

from fractions import Fraction

from hypothesis import strategies as st

from heisrep.group import ExtHeisElement, HeisElement
from heisrep.rep import PsiElement
from heisrep.scalar import ONE, AlphaLabel, SymScalar

small = st.integers(-4, 4)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
positive_rationals = st.fractions(min_value=Fraction(1, 4), max_value=6, max_denominator=4).filter(lambda r: r > 0)


@st.composite
def scalars(draw, max_terms=3, allow_den=True):
    out = SymScalar()
    for _ in range(draw(st.integers(0, max_terms))):
        out = out + SymScalar.monomial(draw(rationals), draw(st.integers(-3, 3)), draw(st.integers(-2, 2)))
    if allow_den:
        for _ in range(draw(st.integers(0, 2))):
            out = out / (SymScalar.q_pow(1) - ONE)
    return out


labels = st.builds(AlphaLabel, st.integers(-3, 3), st.sampled_from([-1, 0, 1]), positive_rationals)
heis = st.builds(HeisElement, small, small, small)
ext = st.builds(ExtHeisElement, small, small, small, st.integers(-3, 3))


@st.composite
def psi_elements(draw):
    terms = draw(st.dictionaries(st.tuples(labels, small), scalars(2), max_size=4))
    return PsiElement(terms)
