"""The space Psi, the induced module ind(sigma), the map beta and Fourier.

Atoms of Psi are ``(g_alpha)_l``; atoms of the induced module are
``Delta(m, g_alpha)``.  Psi is kept in a normal form in which the relation
``(delta_0)_l = (mu_0)_{l+1}`` has been applied, so two Psi elements are
equal exactly when their term maps agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import DomainError, NotInKernel, ResidueError
from .group import ExtHeisElement, HeisElement
from .onedim import OneDimDistribution
from .scalar import DELTA_LABEL, HAAR_LABEL, ONE, ZERO, AlphaLabel, SymScalar

Atom = tuple[AlphaLabel, int]


def _clean(terms: Mapping[Atom, SymScalar]) -> dict[Atom, SymScalar]:
    return dict(sorted((k, v) for k, v in terms.items() if not v.is_zero()))


def _merge(terms: dict[Atom, SymScalar], key: Atom, coeff: SymScalar) -> None:
    terms[key] = terms.get(key, ZERO) + coeff


def _render_atoms(terms: Mapping[Atom, SymScalar], atom_text) -> str:
    if not terms:
        return None
    parts = []
    for (label, k), c in terms.items():
        prefix = "" if c == ONE else f"({c.render()})*"
        parts.append(prefix + atom_text(label, k))
    return " + ".join(parts)


@dataclass(frozen=True)
class PsiElement:
    """Finite sum of atoms ``coeff * (g_label)_level`` in normal form."""

    terms: Mapping[Atom, SymScalar] = field(default_factory=dict)

    def __post_init__(self):
        raw: dict[Atom, SymScalar] = {}
        for (label, level), c in self.terms.items():
            if label.is_one:
                label, level = HAAR_LABEL, level + 1
            _merge(raw, (label, level), c)
        object.__setattr__(self, "terms", _clean(raw))

    @classmethod
    def atom(cls, label: AlphaLabel, level: int, coeff: SymScalar = ONE) -> "PsiElement":
        return cls({(label, level): coeff})

    def __add__(self, other: "PsiElement") -> "PsiElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            _merge(out, k, v)
        return PsiElement(out)

    def scale(self, k: SymScalar) -> "PsiElement":
        return PsiElement({a: k * v for a, v in self.terms.items()})

    def __neg__(self) -> "PsiElement":
        return self.scale(-ONE)

    def __sub__(self, other: "PsiElement") -> "PsiElement":
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PsiElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def labels(self) -> set[AlphaLabel]:
        return {lab for lab, _ in self.terms}

    def render(self) -> str:
        text = _render_atoms(self.terms, lambda lab, l: f"psi[{lab.render()}]_{l}")
        return text if text is not None else f"0*psi[{HAAR_LABEL.render()}]_0"

    def to_json(self) -> dict:
        return {
            "terms": [
                {"label": lab.to_json(), "level": l, "coeff": c.to_json()}
                for (lab, l), c in self.terms.items()
            ],
            "text": self.render(),
        }


def psi_normalize(terms: Mapping[Atom, SymScalar]) -> PsiElement:
    """Build the normal form of a raw term map."""
    return PsiElement(terms)


@dataclass(frozen=True)
class IndElement:
    """Finite sum ``coeff * Delta(slot, g_label)``; no relations among atoms."""

    terms: Mapping[Atom, SymScalar] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", _clean(self.terms))

    @classmethod
    def atom(cls, label: AlphaLabel, slot: int, coeff: SymScalar = ONE) -> "IndElement":
        return cls({(label, slot): coeff})

    def __add__(self, other: "IndElement") -> "IndElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            _merge(out, k, v)
        return IndElement(out)

    def scale(self, k: SymScalar) -> "IndElement":
        return IndElement({a: k * v for a, v in self.terms.items()})

    def __neg__(self) -> "IndElement":
        return self.scale(-ONE)

    def __sub__(self, other: "IndElement") -> "IndElement":
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IndElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def render(self) -> str:
        text = _render_atoms(self.terms, lambda lab, m: f"ind[{lab.render()}]@{m}")
        return text if text is not None else f"0*ind[{HAAR_LABEL.render()}]@0"

    def to_json(self) -> dict:
        return {
            "terms": [
                {"label": lab.to_json(), "slot": m, "coeff": c.to_json()}
                for (lab, m), c in self.terms.items()
            ],
            "text": self.render(),
        }


def kernel_vector(m: int) -> IndElement:
    """v_m = Delta(m, delta_0) - Delta(m+1, mu_0)."""
    return IndElement({(DELTA_LABEL, m): ONE, (HAAR_LABEL, m + 1): -ONE})


def shifted_kernel_vector(m: int) -> IndElement:
    """The reindexed basis vector v~_m = v_{m-1}."""
    return kernel_vector(m - 1)


# actions -------------------------------------------------------------------


def _tri(n: int) -> int:
    return n * (n + 1) // 2


def act_psi(g: ExtHeisElement | HeisElement, x: PsiElement) -> PsiElement:
    """Action of G~ (or of G, embedded with d = 0) on Psi."""
    if isinstance(g, HeisElement):
        g = g.extend()
    a, b, c, d = g
    out: dict[Atom, SymScalar] = {}
    for (label, l), coeff in x.terms.items():
        factor = SymScalar.q_pow(-c - a * (l + 1) - d * _tri(l)) * label.power(a + d * l)
        _merge(out, (label, l + b), coeff * factor)
    return PsiElement(out)


def act_ind(g: HeisElement, x: IndElement) -> IndElement:
    """Action of G on the induced module."""
    if isinstance(g, ExtHeisElement):
        if g.d != 0:
            raise DomainError("the rotation part of G~ does not act on the induced module")
        g = g.heis
    a, b, c = g
    out: dict[Atom, SymScalar] = {}
    for (label, m), coeff in x.terms.items():
        factor = SymScalar.q_pow(-c - a * (m + 1)) * label.power(a)
        _merge(out, (label, m + b), coeff * factor)
    return IndElement(out)


def beta_map(x: IndElement) -> PsiElement:
    return PsiElement(dict(x.terms))


def kernel_decompose(x: IndElement) -> list[tuple[int, SymScalar]]:
    """Coordinates of a kernel element in the basis v_m."""
    if not beta_map(x).is_zero():
        raise NotInKernel(f"{x.render()} is not in the kernel of beta")
    out: list[tuple[int, SymScalar]] = []
    rest = x
    while True:
        slots = [m for (lab, m) in rest.terms if lab.is_one]
        if not slots:
            break
        m = min(slots)
        e = rest.terms[(DELTA_LABEL, m)]
        out.append((m, e))
        rest = rest - kernel_vector(m).scale(e)
    if not rest.is_zero():
        raise ResidueError(f"elimination left {rest.render()}")
    return out


# Fourier -------------------------------------------------------------------


def fourier_label(label: AlphaLabel) -> AlphaLabel:
    """alpha -> q / alpha."""
    return AlphaLabel(1 - label.e, -label.s, 1 / label.r)


def fourier_onedim(x: OneDimDistribution) -> OneDimDistribution:
    return OneDimDistribution({fourier_label(lab): c for lab, c in x.terms.items()})


def fourier_psi(x: PsiElement) -> PsiElement:
    out: dict[Atom, SymScalar] = {}
    for (label, l), coeff in x.terms.items():
        _merge(out, (fourier_label(label), -1 - l), coeff)
    return PsiElement(out)


def weight_eigenvalue(label: AlphaLabel, level: int) -> SymScalar:
    """Eigenvalue of (1,0,0,0) on the atom (g_label)_level."""
    return SymScalar.q_pow(-(level + 1)) * label.value()
