from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heisrep.errors import DomainError, PoleError
from heisrep.scalar import (
    ONE,
    Q,
    ZERO,
    A,
    AlphaLabel,
    SymScalar,
    scalar_arith,
    scalar_eval,
    scalar_eval_c,
)
from strategies import labels, scalars

QM1 = Q - ONE


def test_additive_inverse():
    assert scalar_arith(Q, -Q, "add") == ZERO
    assert ZERO.numerator == {} and ZERO.den_pow == 0


def test_q_minus_one_cancels():
    x = scalar_arith(ONE / QM1, QM1, "mul")
    assert x.numerator == {(0, 0): Fraction(1)}
    assert x.den_pow == 0


def test_denominator_kept_when_numerator_nonzero_at_q1():
    x = A / QM1 + ONE / QM1
    assert x.den_pow == 1
    assert x.numerator == {(0, 1): 1, (0, 0): 1}


def test_numerator_divisible_by_q_minus_one_is_reduced():
    x = (Q * Q - ONE) / (QM1 * QM1)
    # (q^2 - 1) / (q-1)^2 = (q + 1) / (q - 1)
    assert x.den_pow == 1
    assert x.numerator == {(1, 0): 1, (0, 0): 1}


def test_eval_examples():
    x = SymScalar({(0, 1): 1, (0, 0): -1}, 1)
    assert scalar_eval(x, 2, 3) == 2
    assert scalar_eval(ZERO, 7, 5) == 0
    assert scalar_eval(SymScalar.q_pow(-2), 2, 5) == Fraction(1, 4)


def test_eval_errors():
    x = ONE / QM1
    with pytest.raises(PoleError):
        x.eval(1, 2)
    with pytest.raises(DomainError):
        Q.eval(0, 2)
    with pytest.raises(DomainError):
        A.eval(2, 0)
    # no pole once the denominator is gone
    assert (Q * Q - ONE).eval(1, 2) == 0


def test_only_units_invert():
    assert (Q * A).inverse() == SymScalar.monomial(1, -1, -1)
    assert (ONE / QM1).inverse() == QM1
    with pytest.raises(DomainError):
        (A - ONE).inverse()


def test_render():
    assert (A - ONE).render() == "A - 1"
    assert ((A - ONE) / QM1).render() == "(A - 1) / (q-1)^1"
    assert (SymScalar.monomial(-1, -2, 1) + SymScalar.const(Fraction(3, 2))).render() == "-q^-2*A + 3/2"
    assert ZERO.render() == "0"


def test_complex_eval_matches_exact():
    x = (A * A - Q) / QM1
    assert abs(scalar_eval_c(x, 3.0, 2 + 0j) - float(x.eval(3, 2))) < 1e-12


def test_label_values():
    lab = AlphaLabel(2, -1, Fraction(3, 5))
    assert lab.value() == SymScalar.monomial(Fraction(3, 5), 2, -1)
    assert lab.power(3) == lab.value() ** 3
    assert lab.power(-2) == lab.value() ** -2
    assert AlphaLabel.from_scalar(lab.value()) == lab
    with pytest.raises(DomainError):
        AlphaLabel(0, 2, 1)
    with pytest.raises(DomainError):
        AlphaLabel(0, 0, -1)


@settings(max_examples=300)
@given(scalars(), scalars(), scalars())
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x - x == ZERO
    assert hash(x + y) == hash(y + x)


@settings(max_examples=300)
@given(scalars(), scalars(), st.sampled_from([2, 3, Fraction(5, 2), -2]), st.sampled_from([1, -3, Fraction(2, 7)]))
def test_eval_is_homomorphism(x, y, q0, a0):
    assert (x * y).eval(q0, a0) == x.eval(q0, a0) * y.eval(q0, a0)
    assert (x + y).eval(q0, a0) == x.eval(q0, a0) + y.eval(q0, a0)


@given(scalars())
def test_canonical_form_is_idempotent(x):
    again = SymScalar(x.numerator, x.den_pow)
    assert again == x
    assert again.numerator == x.numerator and again.den_pow == x.den_pow
    if x.den_pow:
        # the numerator does not vanish at q = 1
        at_one = {}
        for (eq, ea), c in x.numerator.items():
            at_one[ea] = at_one.get(ea, 0) + c
        assert any(at_one.values())
    assert all(c != 0 for c in x.numerator.values())


@given(labels, st.integers(-4, 4), st.integers(-4, 4))
def test_label_power_law(lab, j, k):
    assert lab.power(j) * lab.power(k) == lab.power(j + k)
