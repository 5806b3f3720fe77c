import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heisrep import group, rep
from heisrep.errors import DomainError, NotInKernel
from heisrep.group import ExtHeisElement, HeisElement
from heisrep.onedim import DELTA, HAAR, OneDimDistribution
from heisrep.rep import IndElement, PsiElement
from heisrep.scalar import DELTA_LABEL, GENERIC_LABEL, HAAR_LABEL, ONE, A, AlphaLabel, SymScalar
from strategies import ext, heis, labels, psi_elements, scalars

E = ExtHeisElement
psi = PsiElement.atom
ind = IndElement.atom


def test_normal_form_examples():
    assert psi(DELTA_LABEL, 0) == psi(HAAR_LABEL, 1)
    assert psi(HAAR_LABEL, 3).terms == {(HAAR_LABEL, 3): ONE}
    assert (psi(DELTA_LABEL, 0) - psi(HAAR_LABEL, 1)).is_zero()
    assert all(not lab.is_one for lab, _ in (psi(DELTA_LABEL, 5) + psi(GENERIC_LABEL, 1)).terms)


def test_act_psi_examples():
    x = psi(GENERIC_LABEL, 2, SymScalar.const(3))
    assert rep.act_psi(E(0, 0, 0, 0), x) == x
    a, b, c, m = 2, -1, 3, 4
    lhs = rep.act_psi(E(a, b, c, 0), psi(GENERIC_LABEL, m))
    assert lhs == psi(GENERIC_LABEL, m + b, SymScalar.q_pow(-c - a * (m + 1)) * A ** a)
    assert rep.act_psi(E(0, 0, 0, 1), psi(GENERIC_LABEL, 2)) == psi(GENERIC_LABEL, 2, SymScalar.q_pow(-3) * A ** 2)


def test_act_ind_examples():
    assert rep.act_ind(HeisElement(1, 0, 0), ind(GENERIC_LABEL, 0)) == ind(GENERIC_LABEL, 0, SymScalar.q_pow(-1) * A)
    assert rep.act_ind(HeisElement(0, 5, 0), ind(DELTA_LABEL, 2)) == ind(DELTA_LABEL, 7)
    x = ind(GENERIC_LABEL, 1) + ind(HAAR_LABEL, -2, SymScalar.const(4))
    assert rep.act_ind(group.IDENTITY, x) == x
    with pytest.raises(DomainError):
        rep.act_ind(E(0, 0, 0, 1), x)


def test_beta_examples():
    assert rep.beta_map(ind(DELTA_LABEL, 3) - ind(HAAR_LABEL, 4)).is_zero()
    assert rep.beta_map(ind(GENERIC_LABEL, 3)) == psi(GENERIC_LABEL, 3)
    assert rep.beta_map(ind(HAAR_LABEL, 0) + ind(DELTA_LABEL, 1)) == psi(HAAR_LABEL, 0) + psi(HAAR_LABEL, 2)


def test_kernel_examples():
    assert rep.kernel_decompose(rep.kernel_vector(5)) == [(5, ONE)]
    x = rep.kernel_vector(0).scale(SymScalar.const(2)) - rep.kernel_vector(1).scale(SymScalar.const(3))
    assert rep.kernel_decompose(x) == [(0, SymScalar.const(2)), (1, SymScalar.const(-3))]
    with pytest.raises(NotInKernel):
        rep.kernel_decompose(ind(GENERIC_LABEL, 0))


def test_fourier_examples():
    assert rep.fourier_onedim(DELTA) == HAAR
    assert rep.fourier_onedim(OneDimDistribution.atom(GENERIC_LABEL)) == OneDimDistribution.atom(AlphaLabel(1, -1, 1))
    x = psi(GENERIC_LABEL, 5)
    assert rep.fourier_psi(rep.fourier_psi(x)) == x
    for k in range(-3, 4):
        assert rep.fourier_psi(psi(HAAR_LABEL, k)) == psi(HAAR_LABEL, -k)
        assert rep.fourier_psi(psi(DELTA_LABEL, k)) == psi(DELTA_LABEL, -k - 2)


@given(labels)
def test_fourier_onedim_involution(lab):
    x = OneDimDistribution.atom(lab, SymScalar.const(2))
    assert rep.fourier_onedim(rep.fourier_onedim(x)) == x


@settings(max_examples=300)
@given(ext, ext, psi_elements())
def test_action_axiom(g, h, x):
    assert rep.act_psi(group.ext_mul(g, h), x) == rep.act_psi(g, rep.act_psi(h, x))


@given(heis, st.dictionaries(st.tuples(labels, st.integers(-4, 4)), scalars(2), max_size=4))
def test_beta_is_equivariant(g, terms):
    x = IndElement(terms)
    assert rep.beta_map(rep.act_ind(g, x)) == rep.act_psi(g, rep.beta_map(x))


@given(heis, psi_elements())
def test_fourier_equivariance(g, x):
    a, b, c = g
    lhs = rep.act_psi(E(a, b, c, 0), rep.fourier_psi(x))
    assert lhs == rep.fourier_psi(rep.act_psi(E(-a, -b, c, 0), x))


@given(heis, st.integers(-5, 5))
def test_kernel_action(g, m):
    a, b, c = g
    assert rep.act_ind(g, rep.shifted_kernel_vector(m)) == rep.shifted_kernel_vector(m + b).scale(SymScalar.q_pow(-c - a * m))


@given(labels, st.integers(-5, 5), st.integers(-5, 5))
def test_weight_decomposition(lab, l1, l2):
    if lab.is_one:
        return
    x = psi(lab, l1)
    ev = rep.weight_eigenvalue(lab, l1)
    assert rep.act_psi(E(1, 0, 0, 0), x) == x.scale(ev)
    if l1 != l2:
        assert ev != rep.weight_eigenvalue(lab, l2)


@given(st.lists(st.tuples(ext, st.sampled_from(["act", "fourier"])), max_size=5), labels, labels)
def test_distinct_labels_never_merge(ops, l1, l2):
    x = psi(l1, 0) + psi(l2, 0)
    count = len(x.terms)
    for g, op in ops:
        x = rep.act_psi(g, x) if op == "act" else rep.fourier_psi(x)
        assert len(x.terms) == count
