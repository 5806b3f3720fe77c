import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heisrep import analysis
from heisrep.analysis import Distinct, Isomorphic
from heisrep.errors import BadLevels, DivergentSeries, NeedConcreteQ, ToleranceError
from heisrep.group import ExtHeisElement
from heisrep.scalar import GENERIC_LABEL, ONE, A, AlphaLabel, SymScalar

E = ExtHeisElement


def test_trace_formal_examples():
    assert analysis.trace_formal(E(1, 2, 3, 4), GENERIC_LABEL) is None
    ts = analysis.trace_formal(E(0, 0, 0, 1), GENERIC_LABEL)
    assert ts.prefactor == ONE and (ts.a, ts.d) == (0, 1)
    ts = analysis.trace_formal(E(2, 0, -1, 3), GENERIC_LABEL)
    assert ts.prefactor == SymScalar.q_pow(-1) * A ** 2


def test_trace_eval_examples():
    base = analysis.trace_eval(analysis.trace_formal(E(0, 0, 0, 2), GENERIC_LABEL), 2, 1, 1e-10)
    assert abs(base.value - 2.53174019046) < 1e-10 and base.bound < 1e-10
    scaled = analysis.trace_eval(analysis.trace_formal(E(0, 0, 5, 2), GENERIC_LABEL), 2, 1, 1e-10)
    assert abs(scaled.value - base.value / 32) < 1e-12
    shifted = analysis.trace_eval(analysis.trace_formal(E(0, 0, 0, 2), AlphaLabel(1, 1, 1)), 2, 3, 1e-12)
    plain = analysis.trace_eval(analysis.trace_formal(E(0, 0, 0, 2), GENERIC_LABEL), 2, 3, 1e-12)
    assert abs(shifted.value - 9 * plain.value) < 1e-10


def test_trace_errors():
    with pytest.raises(DivergentSeries):
        analysis.trace_eval(analysis.trace_formal(E(0, 0, 0, 0), GENERIC_LABEL), 2, 1)
    with pytest.raises(ToleranceError):
        analysis.trace_eval(analysis.trace_formal(E(0, 0, 0, 1), GENERIC_LABEL), 2, 1, 0)


def test_jacobi_parameters():
    qt, eta = analysis.jacobi_parameters(analysis.trace_formal(E(0, 0, 0, 2), GENERIC_LABEL), 4, 1)
    assert qt == 0.25 and abs(eta - 0.25) < 1e-15


@given(st.integers(-3, 3), st.integers(-3, 3), st.sampled_from([2, 4]),
       st.sampled_from([2, 3, Fraction(5, 2)]), st.sampled_from([1, 2, Fraction(-1, 3)]))
def test_exact_jacobi_terms(a, c, d, q0, a0):
    ts = analysis.trace_formal(E(a, 0, c, d), GENERIC_LABEL)
    assert analysis.trace_terms_exact(ts, q0, a0, 6) == analysis.jacobi_terms_exact(ts, q0, a0, 6)


def _brute(ts, q0, a0, half):
    alpha = ts.label.eval_c(q0, a0)
    pref = ts.prefactor.eval_c(q0, a0)
    terms = [pref * q0 ** (-ts.a * l - ts.d * l * (l + 1) / 2) * alpha ** (ts.d * l) for l in range(-half, half + 1)]
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def test_bound_is_honest():
    rng = random.Random(5)
    for _ in range(50):
        a, c, d = rng.randint(-2, 2), rng.randint(-2, 2), rng.randint(1, 3)
        q0 = rng.uniform(1.5, 4)
        a0 = cmath.rect(rng.uniform(0.5, 2), rng.uniform(-3, 3))
        ts = analysis.trace_formal(E(a, 0, c, d), GENERIC_LABEL)
        res = analysis.trace_eval(ts, q0, a0, 1e-9)
        half = (res.terms_used - 1) // 2
        wider = _brute(ts, q0, a0, 2 * half + 2)
        assert abs(wider - res.value) <= res.bound + 1e-13 * max(1.0, abs(wider))


def test_vandermonde_examples():
    assert analysis.vandermonde_certificate([0, 1], 2).det == 1
    cert = analysis.vandermonde_certificate([0, 1, 2], 2)
    assert cert.det == cert.product == 6
    assert analysis.vandermonde_certificate([5], 2).det == 1
    with pytest.raises(BadLevels):
        analysis.vandermonde_certificate([1, 1], 2)
    with pytest.raises(BadLevels):
        analysis.vandermonde_certificate([], 2)


def test_cyclic_examples():
    res = analysis.cyclic_generation([(0, 1), (1, 1)], 2)
    # v~_0 = 2 y_1 - y_2, v~_1 = -y_1 + y_2
    assert res.coordinates == ((2, -1), (-1, 1))
    assert analysis.cyclic_generation([(3, 5)], 2).coordinates == ((Fraction(1, 5),),)
    res = analysis.cyclic_generation([(0, 1), (1, 1), (2, 1)], 2)
    assert all((6 * c).denominator == 1 for row in res.coordinates for c in row)


def test_classify_examples():
    assert analysis.classify_iso(AlphaLabel(0, 1, 1), AlphaLabel(3, 1, 1)) == Isomorphic(-3)
    assert analysis.classify_iso(AlphaLabel(0, 0, 3), AlphaLabel(0, 0, 12), 2) == Isomorphic(-2)
    assert analysis.classify_iso(AlphaLabel(0, 1, 1), AlphaLabel(0, -1, 1)) == Distinct()
    with pytest.raises(NeedConcreteQ):
        analysis.classify_iso(AlphaLabel(0, 0, 3), AlphaLabel(0, 0, 12))


def test_final_proposition_shadow():
    for e1 in range(-3, 4):
        for e2 in range(-3, 4):
            assert analysis.classify_iso(AlphaLabel(e1, 1, 1), AlphaLabel(e2, 1, 1)) == Isomorphic(e1 - e2)
    assert analysis.classify_iso(AlphaLabel(0, 1, 3), AlphaLabel(0, 1, 5), 2) == Distinct()


label_q2 = st.builds(AlphaLabel, st.integers(-2, 2), st.sampled_from([0, 1]),
                     st.sampled_from([Fraction(1), Fraction(2), Fraction(3), Fraction(3, 4), Fraction(12), Fraction(5)]))


@given(label_q2, label_q2, label_q2)
def test_classification_is_equivalence(x, y, z):
    q0 = 2
    assert analysis.classify_iso(x, x, q0) == Isomorphic(0)
    xy, yx = analysis.classify_iso(x, y, q0), analysis.classify_iso(y, x, q0)
    assert isinstance(xy, Isomorphic) == isinstance(yx, Isomorphic)
    if isinstance(xy, Isomorphic):
        assert yx.shift == -xy.shift
        yz = analysis.classify_iso(y, z, q0)
        if isinstance(yz, Isomorphic):
            assert analysis.classify_iso(x, z, q0) == Isomorphic(xy.shift + yz.shift)


@given(label_q2)
def test_canonical_labels_are_fixed_points(x):
    rep_ = analysis.canonical_label(x, 2)
    assert 1 < rep_.r <= 2 and rep_.e == 0
    assert analysis.canonical_label(rep_, 2) == rep_
    assert isinstance(analysis.classify_iso(x, rep_, 2), Isomorphic)
