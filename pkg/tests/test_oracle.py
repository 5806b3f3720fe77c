import itertools
from fractions import Fraction

import pytest

from heisrep import onedim, oracle
from heisrep.errors import DomainError, NotRadial, WindowOverflow
from heisrep.onedim import CHAR_O, ZERO_TS, OneDimDistribution, TestSequence
from heisrep.scalar import DELTA_LABEL, GENERIC_LABEL, AlphaLabel, SymScalar


def test_embed_examples():
    f = oracle.finite_embed(CHAR_O, 3, 2, 2)
    for x in f.points():
        assert f(x) == (1 if x[0] == x[1] == 0 else 0)
    g = oracle.finite_embed(onedim.ts_shift(CHAR_O, 1), 3, 2, 2)
    for x in g.points():
        assert g(x) == (1 if x[:3] == (0, 0, 0) else 0)
    assert oracle.finite_embed(ZERO_TS, 2, 1, 1).values == {}
    with pytest.raises(WindowOverflow):
        oracle.finite_embed(TestSequence(-3, [1]), 2, 1, 1)
    with pytest.raises(DomainError):
        oracle.FiniteLevelFunction(4, 1, 1, {})


def test_haar_examples():
    assert oracle.finite_haar(oracle.finite_embed(CHAR_O, 3, 2, 2)) == 1
    assert oracle.finite_haar(oracle.finite_embed(TestSequence(1, [1]), 3, 2, 2)) == Fraction(1, 3)
    assert oracle.finite_haar(oracle.finite_embed(ZERO_TS, 3, 2, 2)) == 0


@pytest.mark.parametrize("p", [2, 3, 5])
def test_fourier_self_duality(p):
    f = oracle.finite_embed(CHAR_O, p, 2, 2)
    dual = oracle.finite_fourier(f)
    assert max(abs(dual(x) - f(x)) for x in dual.points()) < 1e-9


@pytest.mark.parametrize("p", [2, 3])
def test_fourier_inversion_on_radial(p):
    f = oracle.finite_embed(TestSequence(-1, [2, -1, 3]), p, 2, 3)
    back = oracle.finite_fourier(oracle.finite_fourier(f))
    assert (back.M, back.N) == (f.M, f.N)
    assert max(abs(back(x) - f(x)) for x in f.points()) < 1e-9


@pytest.mark.parametrize("p", [2, 3])
def test_fourier_of_delta_approximation(p):
    N = 2
    approx = oracle.finite_embed(TestSequence(N, [p ** N]), p, 2, N)
    dual = oracle.finite_fourier(approx)
    assert max(abs(dual(x) - 1) for x in dual.points()) < 1e-9


@pytest.mark.parametrize("p", [2, 3])
def test_parseval(p):
    f = oracle.finite_embed(TestSequence(-2, [1, 4, -2, 0, 5]), p, 2, 3)
    dual = oracle.finite_fourier(f)
    norm_f = sum(abs(v) ** 2 for v in f.values.values()) / p ** f.N
    norm_dual = sum(abs(dual(y)) ** 2 for y in dual.points()) / p ** dual.N
    assert abs(norm_f - norm_dual) < 1e-9


def test_pushforward_examples():
    p = 3
    w = onedim.TowerWindow(2, -1, tuple(SymScalar.const(x) for x in (2, -1, 5, 4)))
    fn = oracle.distribution_function(oracle.radial_from_window(w, p), p, 1, 2)
    assert oracle.finite_pushforward(fn) == oracle.radial_from_window(onedim.tower_transition(w), p)
    N = 2
    haar = oracle.distribution_function({n: Fraction(1, p ** (N + 1)) for n in range(-1, N + 2)}, p, 1, N + 1)
    assert set(oracle.finite_pushforward(haar).values()) == {Fraction(1, p ** N)}
    delta = oracle.distribution_function({N + 1: 1}, p, 1, N + 1)
    pushed = oracle.finite_pushforward(delta)
    assert pushed[N] == 1 and all(v == 0 for n, v in pushed.items() if n != N)


def test_pushforward_rejects_non_radial():
    f = oracle.tabulate(2, 1, 2, lambda x: x[0] + 2 * x[2])
    with pytest.raises(NotRadial):
        oracle.finite_pushforward(f)


@pytest.mark.parametrize("p", [2, 3])
def test_pair_examples(p):
    w = onedim.g_entries(GENERIC_LABEL, 2, 4)
    data = oracle.radial_from_window(w, p, a0=p)
    assert oracle.finite_pair(CHAR_O, data, p, 2) == 1
    delta = oracle.radial_from_window(onedim.g_entries(DELTA_LABEL, 2, 4), p)
    assert oracle.finite_pair(CHAR_O, delta, p, 2) == 1
    assert oracle.finite_pair(ZERO_TS, delta, p, 2) == 0


def test_coset_count_matches_enumeration():
    p, N = 3, 2
    f = oracle.FiniteLevelFunction(p, 2, N, {})
    counts = {}
    for x in f.points():
        counts[f.valuation(x)] = counts.get(f.valuation(x), 0) + 1
    for n in range(-2, N):
        assert counts[n] == oracle.coset_count(p, n, N)


@pytest.mark.parametrize("p", [2, 3])
def test_pair_matches_symbolic_with_powers(p):
    labels = [AlphaLabel(k, 0, 1) for k in range(3)]
    for f in itertools.islice(iter(_sequences()), 60):
        for lab in labels:
            data = oracle.radial_from_window(onedim.g_entries(lab, 2, 4), p)
            assert oracle.finite_pair(f, data, p, 2) == onedim.pair(f, OneDimDistribution.atom(lab)).eval(p, 1)


def _sequences():
    for start in range(-2, 3):
        for vals in itertools.product((0, 1, 2), repeat=min(3, 3 - start)):
            f = TestSequence(start, [SymScalar.const(v) for v in vals])
            if f.end <= 2:
                yield f


def test_size_cap():
    with pytest.raises(WindowOverflow):
        oracle.tabulate(3, 4, 3, lambda x: 1)
    assert len(oracle.tabulate(2, 4, 6, lambda x: 1, allow_large=True).values) == 2 ** 10
