"""Traces of G~ on Psi_alpha, theta evaluation, and the irreducibility and
classification certificates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from . import linalg
from .errors import BadLevels, DivergentSeries, NeedConcreteQ, SingularSystem, ToleranceError
from .group import ExtHeisElement
from .scalar import AlphaLabel, SymScalar

MAX_HALF_WIDTH = 100_000


@dataclass(frozen=True)
class TraceSeries:
    """prefactor * sum_l q^{-a l - d l(l+1)/2} alpha^{d l}."""

    prefactor: SymScalar
    a: int
    d: int
    label: AlphaLabel
    c: int = 0

    def render(self) -> str:
        return f"trace(HE({self.a},0,{self.c},{self.d}), g[{self.label.render()}])"

    def to_json(self) -> dict:
        return {
            "prefactor": self.prefactor.to_json(),
            "a": self.a,
            "c": self.c,
            "d": self.d,
            "label": self.label.to_json(),
            "convergent": self.d >= 1,
            "text": self.render(),
        }


def trace_formal(g: ExtHeisElement, label: AlphaLabel) -> TraceSeries | None:
    """Trace of g on Psi_alpha in the basis (g_alpha)_l; None means zero."""
    a, b, c, d = g
    if b != 0:
        return None
    return TraceSeries(SymScalar.q_pow(-c - a) * label.power(a), a, d, label, c)


@dataclass(frozen=True)
class ThetaValue:
    value: complex
    bound: float
    terms_used: int

    def to_json(self) -> dict:
        return {
            "value_re": self.value.real,
            "value_im": self.value.imag,
            "bound": self.bound,
            "terms_used": self.terms_used,
        }


def _check(ts: TraceSeries, q0: float, tol: float) -> None:
    if tol <= 0:
        raise ToleranceError("tolerance must be positive")
    if ts.d <= 0:
        raise DivergentSeries(f"the trace series converges only for d >= 1, got d = {ts.d}")
    if not q0 > 1:
        raise ValueError("q0 must be a real number > 1")


def _summation(term, ratio_up, ratio_down, tol: float) -> ThetaValue:
    """Symmetric partial sums over [-L, L] with a geometric tail bound.

    ``ratio_up(L)`` bounds |term(L+1) / term(L)| and ``ratio_down(L)`` bounds
    |term(-L-1) / term(-L)|; both ratios decrease in L.  Once both are below
    1/2 each tail is dominated by its last included term.
    """
    half = 0
    while True:
        if ratio_up(half) < 0.5 and ratio_down(half) < 0.5:
            edge = abs(term(half)) + abs(term(-half))
            bound = 2.0 * edge
            if bound < tol:
                break
        half += 1
        if half > MAX_HALF_WIDTH:
            raise DivergentSeries("series did not reach the requested tolerance")
    vals = [term(l) for l in range(-half, half + 1)]
    re = math.fsum(v.real for v in vals)
    im = math.fsum(v.imag for v in vals)
    return ThetaValue(complex(re, im), bound, len(vals))


def trace_eval(ts: TraceSeries, q0: float, a0: complex, tol: float = 1e-10) -> ThetaValue:
    """Numerically sum the trace series at q = q0, A = a0."""
    _check(ts, q0, tol)
    q0 = float(q0)
    alpha = ts.label.eval_c(q0, a0)
    pref = ts.prefactor.eval_c(q0, a0)
    a, d = ts.a, ts.d
    log_q = math.log(q0)
    log_alpha_abs = math.log(abs(alpha))

    unit = alpha / abs(alpha)

    def term(l: int) -> complex:
        log_mag = -(a * l + d * l * (l + 1) / 2) * log_q + d * l * log_alpha_abs
        return pref * math.exp(log_mag) * unit ** (d * l)

    def ratio_up(l: int) -> float:
        return math.exp((-a - d * (l + 1)) * log_q + d * log_alpha_abs)

    def ratio_down(l: int) -> float:
        return math.exp((a - d * l) * log_q - d * log_alpha_abs)

    return _summation(term, ratio_up, ratio_down, tol)


def jacobi_parameters(ts: TraceSeries, q0: float, a0: complex) -> tuple[float, complex]:
    """(q~, eta) with q~ = q0^{-d/2} and eta = q0^{-a} q0^{-d/2} alpha^d."""
    q0 = float(q0)
    qt = q0 ** (-ts.d / 2)
    alpha = ts.label.eval_c(q0, a0)
    eta = q0 ** (-ts.a) * q0 ** (-ts.d / 2) * alpha ** ts.d
    return qt, eta


def jacobi_eval(ts: TraceSeries, q0: float, a0: complex, tol: float = 1e-10) -> ThetaValue:
    """Sum prefactor * sum_l q~^{l^2} eta^l."""
    _check(ts, q0, tol)
    qt, eta = jacobi_parameters(ts, q0, a0)
    pref = ts.prefactor.eval_c(float(q0), a0)
    log_qt = math.log(qt)
    log_eta = math.log(abs(eta))

    def term(l: int) -> complex:
        unit = (eta / abs(eta)) ** l
        return pref * math.exp(l * l * log_qt + l * log_eta) * unit

    def ratio_up(l: int) -> float:
        return math.exp((2 * l + 1) * log_qt + log_eta)

    def ratio_down(l: int) -> float:
        return math.exp((2 * l + 1) * log_qt - log_eta)

    return _summation(term, ratio_up, ratio_down, tol)


def trace_terms_exact(ts: TraceSeries, q0: Rational, a0: Rational, half: int) -> list[Fraction]:
    """Exact terms l = -half..half of the trace series (without prefactor)."""
    q0 = Fraction(q0)
    alpha = ts.label.value().eval(q0, a0)
    return [
        q0 ** (-ts.a * l) * q0 ** (-(ts.d * l * (l + 1)) // 2) * alpha ** (ts.d * l)
        for l in range(-half, half + 1)
    ]


def jacobi_terms_exact(ts: TraceSeries, q0: Rational, a0: Rational, half: int) -> list[Fraction]:
    """Exact Jacobi-form terms; needs d even so that q~ is rational."""
    if ts.d % 2:
        raise ValueError("exact Jacobi terms need an even rotation index")
    q0 = Fraction(q0)
    alpha = ts.label.value().eval(q0, a0)
    qt = q0 ** (-(ts.d // 2))
    eta = q0 ** (-ts.a) * qt * alpha ** ts.d
    return [qt ** (l * l) * eta ** l for l in range(-half, half + 1)]


# Vandermonde and cyclic generation -----------------------------------------


@dataclass(frozen=True)
class VandermondeCertificate:
    levels: tuple[int, ...]
    q0: Fraction
    det: Fraction
    product: Fraction

    def to_json(self) -> dict:
        return {
            "levels": list(self.levels),
            "q": str(self.q0),
            "det": str(self.det),
            "product": str(self.product),
            "agree": self.det == self.product,
        }


def _check_levels(levels: Sequence[int]) -> None:
    if not levels or any(x >= y for x, y in zip(levels, levels[1:])):
        raise BadLevels(f"levels must be non-empty and strictly increasing: {list(levels)}")


def orbit_matrix(levels: Sequence[int], q0: Rational) -> list[list[Fraction]]:
    """Rows j = 1..n, columns i: q0^{(j-1) m_i}."""
    q0 = Fraction(q0)
    n = len(levels)
    return [[q0 ** (j * m) for m in levels] for j in range(n)]


def vandermonde_certificate(levels: Sequence[int], q0: Rational) -> VandermondeCertificate:
    _check_levels(levels)
    q0 = Fraction(q0)
    if q0 <= 1:
        raise ValueError("q0 must exceed 1")
    det = linalg.det(orbit_matrix(levels, q0))
    nodes = [q0 ** m for m in levels]
    product = Fraction(1)
    for j2 in range(len(nodes)):
        for j1 in range(j2):
            product *= nodes[j2] - nodes[j1]
    return VandermondeCertificate(tuple(levels), q0, det, product)


@dataclass(frozen=True)
class CyclicReconstruction:
    """Each v~_{m_i} written in terms of the orbit vectors y_j = (1-j, 0, 0) x."""

    levels: tuple[int, ...]
    coefficients: tuple[Fraction, ...]
    coordinates: tuple[tuple[Fraction, ...], ...]

    def to_json(self) -> dict:
        return {
            "levels": list(self.levels),
            "x": [str(c) for c in self.coefficients],
            "reconstruction": [
                {"level": m, "y_coordinates": [str(c) for c in row]}
                for m, row in zip(self.levels, self.coordinates)
            ],
        }


def cyclic_generation(x: Sequence[tuple[int, Rational]], q0: Rational) -> CyclicReconstruction:
    """Recover every basis vector in the support of x from its H-orbit."""
    levels = [m for m, _ in x]
    coeffs = [Fraction(c) for _, c in x]
    _check_levels(levels)
    if any(c == 0 for c in coeffs):
        raise ValueError("coefficients must be nonzero")
    q0 = Fraction(q0)
    if q0 <= 1:
        raise ValueError("q0 must exceed 1")
    inv = linalg.inverse(orbit_matrix(levels, q0))
    if inv is None:
        raise SingularSystem("orbit matrix is singular")
    # y = A z with z_i = coeff_i v~_{m_i}, hence v~_{m_i} = (A^{-1} y)_i / coeff_i
    coords = tuple(tuple(v / c for v in row) for row, c in zip(inv, coeffs))
    return CyclicReconstruction(tuple(levels), tuple(coeffs), coords)


# classification of Psi_alpha up to isomorphism ----------------------------


@dataclass(frozen=True)
class Isomorphic:
    """alpha_1 = q^shift * alpha_2."""

    shift: int

    def render(self) -> str:
        return f"Isomorphic({self.shift})"

    def to_json(self) -> dict:
        return {"isomorphic": True, "shift": self.shift, "text": self.render()}


@dataclass(frozen=True)
class Distinct:
    def render(self) -> str:
        return "Distinct"

    def to_json(self) -> dict:
        return {"isomorphic": False, "text": self.render()}


def q_power_of(ratio: Fraction, q0: Fraction) -> int | None:
    """k with ratio = q0^k, found by repeated exact division, or None."""
    k = 0
    while ratio >= q0:
        ratio /= q0
        k += 1
    while ratio < 1:
        ratio *= q0
        k -= 1
    return k if ratio == 1 else None


def classify_iso(l1: AlphaLabel, l2: AlphaLabel, q0: Rational | None = None) -> Isomorphic | Distinct:
    if l1.s != l2.s:
        return Distinct()
    if l1.r == l2.r:
        return Isomorphic(l1.e - l2.e)
    if q0 is None:
        raise NeedConcreteQ("the rational parts differ; supply a concrete q to compare them")
    q0 = Fraction(q0)
    if q0 <= 1:
        raise ValueError("q0 must exceed 1")
    k = q_power_of(l1.r / l2.r, q0)
    if k is None:
        return Distinct()
    return Isomorphic(l1.e - l2.e + k)


def canonical_label(label: AlphaLabel, q0: Rational | None = None) -> AlphaLabel:
    """Representative of the class of label: e = 0 and, with q0, r in (1, q0]."""
    if q0 is None:
        return AlphaLabel(0, label.s, label.r)
    q0 = Fraction(q0)
    r = label.r
    while r > q0:
        r /= q0
    while r <= 1:
        r *= q0
    return AlphaLabel(0, label.s, r)
