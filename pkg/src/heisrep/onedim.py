"""Invariant test functions and distributions on a one-dimensional local field.

An O*-invariant test function is a sequence ``c_n = f(u^n)`` that vanishes
for ``n << 0`` and is constant for ``n >> 0``.  An invariant distribution is
a compatible family of sequences ``(a_n)_{n <= m}``, one for every level
``m``; the ``TowerWindow`` type holds a finite slice of one level.  The
eigendistributions ``g_alpha`` have closed-form windows and span everything
the two-dimensional layer needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import InternalError, RankError, WindowTooShort, ZeroInput
from .scalar import (
    GENERIC_LABEL,
    ONE,
    Q,
    Q_MINUS_1,
    ZERO,
    AlphaLabel,
    SymScalar,
)


@dataclass(frozen=True, init=False)
class TestSequence:
    """c_n = 0 for n < start, window values, then the last value forever."""

    __test__ = False  # keep pytest from collecting this class

    start: int
    window: tuple[SymScalar, ...]

    def __init__(self, start: int, window: Iterable = ()):
        vals = [SymScalar.coerce(v) for v in window]
        while vals and vals[0].is_zero():
            vals.pop(0)
            start += 1
        while len(vals) >= 2 and vals[-1] == vals[-2]:
            vals.pop()
        if not vals:
            start = 0
        object.__setattr__(self, "start", int(start))
        object.__setattr__(self, "window", tuple(vals))

    @property
    def is_zero(self) -> bool:
        return not self.window

    @property
    def end(self) -> int:
        """Index M of the last listed value (the tail starts there)."""
        return self.start + len(self.window) - 1

    def __getitem__(self, n: int) -> SymScalar:
        if not self.window or n < self.start:
            return ZERO
        if n >= self.end:
            return self.window[-1]
        return self.window[n - self.start]

    def __add__(self, other: "TestSequence") -> "TestSequence":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo = min(self.start, other.start)
        hi = max(self.end, other.end)
        return TestSequence(lo, [self[n] + other[n] for n in range(lo, hi + 1)])

    def scale(self, k: SymScalar) -> "TestSequence":
        return TestSequence(self.start, [k * c for c in self.window])

    def __neg__(self) -> "TestSequence":
        return self.scale(-ONE)

    def __sub__(self, other: "TestSequence") -> "TestSequence":
        return self + (-other)

    def eval(self, q0: Rational, a0: Rational) -> list[Fraction]:
        return [c.eval(q0, a0) for c in self.window]

    def render(self) -> str:
        return f"ts[{self.start}; " + ", ".join(c.render() for c in self.window) + "]"

    def to_json(self) -> dict:
        return {
            "start": self.start,
            "window": [c.to_json() for c in self.window],
            "text": self.render(),
        }


CHAR_O = TestSequence(0, [ONE])
ZERO_TS = TestSequence(0, [])


@dataclass(frozen=True)
class TowerWindow:
    """Entries ``a_lo, ..., a_level`` of one level of a distribution tower."""

    level: int
    lo: int
    entries: tuple[SymScalar, ...]

    def __post_init__(self):
        if self.lo > self.level:
            raise ValueError("lo must not exceed level")
        if len(self.entries) != self.level - self.lo + 1:
            raise ValueError("window length must be level - lo + 1")

    def __getitem__(self, n: int) -> SymScalar:
        if not self.lo <= n <= self.level:
            raise IndexError(f"index {n} outside window [{self.lo}, {self.level}]")
        return self.entries[n - self.lo]

    def scale(self, k: SymScalar) -> "TowerWindow":
        return TowerWindow(self.level, self.lo, tuple(k * x for x in self.entries))

    def eval(self, q0: Rational, a0: Rational) -> list[Fraction]:
        return [x.eval(q0, a0) for x in self.entries]

    def to_json(self) -> dict:
        return {"level": self.level, "lo": self.lo, "entries": [x.to_json() for x in self.entries]}


@dataclass(frozen=True)
class OneDimDistribution:
    """A finite combination ``sum coeff * g_label``."""

    terms: Mapping[AlphaLabel, SymScalar] = field(default_factory=dict)

    def __post_init__(self):
        clean = {k: v for k, v in self.terms.items() if not v.is_zero()}
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def atom(cls, label: AlphaLabel, coeff: SymScalar = ONE) -> "OneDimDistribution":
        return cls({label: coeff})

    def __add__(self, other: "OneDimDistribution") -> "OneDimDistribution":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return OneDimDistribution(out)

    def scale(self, k: SymScalar) -> "OneDimDistribution":
        return OneDimDistribution({lab: k * v for lab, v in self.terms.items()})

    def __neg__(self) -> "OneDimDistribution":
        return self.scale(-ONE)

    def __sub__(self, other: "OneDimDistribution") -> "OneDimDistribution":
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OneDimDistribution):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def render(self) -> str:
        if not self.terms:
            return "0*g[1]"
        return " + ".join(_coeff_prefix(c) + f"g[{lab.render()}]" for lab, c in self.terms.items())

    def to_json(self) -> dict:
        return {
            "terms": [{"label": lab.to_json(), "coeff": c.to_json()} for lab, c in self.terms.items()],
            "text": self.render(),
        }


def _coeff_prefix(c: SymScalar) -> str:
    if c == ONE:
        return ""
    return f"({c.render()})*"


DELTA = OneDimDistribution.atom(AlphaLabel(0, 0, 1))
HAAR = OneDimDistribution.atom(AlphaLabel(1, 0, 1))


# towers -------------------------------------------------------------------


def g_entries(label: AlphaLabel, m: int, depth: int) -> TowerWindow:
    """Window ``a_{m-depth}, ..., a_m`` of g_alpha at level m."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    alpha_minus_1 = label.value() - ONE
    vals = [label.power(-m)]
    for k in range(1, depth + 1):
        vals.append(label.power(-m + k - 1) * alpha_minus_1 * SymScalar.q_pow(1 - k) / Q_MINUS_1)
    return TowerWindow(m, m - depth, tuple(reversed(vals)))


def tower_transition(w: TowerWindow) -> TowerWindow:
    """Push a level m+1 window down to level m."""
    if len(w.entries) < 2:
        raise WindowTooShort("transition needs at least two entries")
    m = w.level - 1
    lower = [Q * x for x in w.entries[:-2]]
    top = Q_MINUS_1 * w[m] + w[m + 1]
    return TowerWindow(m, w.lo, tuple(lower + [top]))


def tower_shift(w: TowerWindow) -> TowerWindow:
    """Action of the local parameter: b_n = a_{n-1}, one level up."""
    return TowerWindow(w.level + 1, w.lo + 1, w.entries)


# pairing ------------------------------------------------------------------


def pair_window(f: TestSequence, w: TowerWindow) -> SymScalar:
    """Pair a test sequence with one level of a tower.

    The window must reach from ``f.start`` up to at least ``f.end``.
    """
    if f.is_zero:
        return ZERO
    top = w.level
    if w.lo > f.start or top < f.end:
        raise WindowTooShort(
            f"window [{w.lo}, {top}] does not cover test sequence support [{f.start}, {f.end}]"
        )
    total = f[top] * w[top]
    for n in range(f.start, top):
        weight = SymScalar.q_pow(top - n) - SymScalar.q_pow(top - n - 1)
        total = total + weight * f[n] * w[n]
    return total


def pair_atom(f: TestSequence, label: AlphaLabel, extra: int = 0) -> SymScalar:
    if f.is_zero:
        return ZERO
    top = f.end + extra
    return pair_window(f, g_entries(label, top, top - f.start))


def pair(f: TestSequence, phi: OneDimDistribution, extra: int = 0) -> SymScalar:
    """Pairing <f, phi>; ``extra`` raises the evaluation level above f.end."""
    total = ZERO
    for label, coeff in phi.terms.items():
        total = total + coeff * pair_atom(f, label, extra)
    return total


# shifts and the Laurent model ---------------------------------------------


def ts_shift(f: TestSequence, k: int) -> TestSequence:
    """(c_n) -> (c_{n-k})."""
    if f.is_zero:
        return f
    return TestSequence(f.start + k, f.window)


def ts_to_laurent(f: TestSequence) -> dict[int, SymScalar]:
    """Coefficients of (1 - z) * sum c_n z^n."""
    out = {}
    for n in range(f.start, f.end + 1):
        d = f[n] - f[n - 1]
        if not d.is_zero():
            out[n] = d
    return out


def laurent_to_ts(poly: Mapping[int, SymScalar | Rational]) -> TestSequence:
    """Inverse of ``ts_to_laurent``: partial sums of the coefficients."""
    items = {n: SymScalar.coerce(c) for n, c in poly.items()}
    items = {n: c for n, c in items.items() if not c.is_zero()}
    if not items:
        return ZERO_TS
    lo, hi = min(items), max(items)
    vals, acc = [], ZERO
    for n in range(lo, hi + 1):
        acc = acc + items.get(n, ZERO)
        vals.append(acc)
    return TestSequence(lo, vals)


def _strip(poly: Mapping[int, Fraction]) -> tuple[int, list[Fraction]]:
    """(lowest exponent, dense ascending coefficient list)."""
    nz = {n: Fraction(c) for n, c in poly.items() if c}
    lo, hi = min(nz), max(nz)
    return lo, [nz.get(n, Fraction(0)) for n in range(lo, hi + 1)]


def laurent_mul(x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for i, a in x.items():
        for j, b in y.items():
            out[i + j] = out.get(i + j, 0) + a * b
    return {k: v for k, v in out.items() if v}


def laurent_divides(divisor: Mapping[int, Fraction], dividend: Mapping[int, Fraction]) -> bool:
    """Whether ``divisor`` divides ``dividend`` in Q[z, 1/z]."""
    if not any(divisor.values()):
        raise ZeroDivisionError("zero divisor")
    if not any(dividend.values()):
        return True
    _, num = _strip(dividend)
    _, den = _strip(divisor)
    # powers of z are units, so compare polynomials with nonzero constant term
    num = num[:]
    lead = den[-1]
    for shift in range(len(num) - len(den), -1, -1):
        f = num[shift + len(den) - 1] / lead
        if f:
            for i, c in enumerate(den):
                num[shift + i] -= f * c
    return not any(num)


@dataclass(frozen=True)
class InvariantWitness:
    """Certificate that the shift-invariant span of ``excluded`` is not minimal."""

    base: dict[int, Fraction]
    generator: dict[int, Fraction]
    generator_sequence: TestSequence
    excluded: TestSequence
    base_in_generated: bool

    @property
    def proper(self) -> bool:
        return not self.base_in_generated and bool(self.generator)

    def to_json(self) -> dict:
        return {
            "base": {str(k): str(v) for k, v in sorted(self.base.items())},
            "generator": {str(k): str(v) for k, v in sorted(self.generator.items())},
            "generator_sequence": self.generator_sequence.to_json(),
            "excluded": self.excluded.to_json(),
            "base_in_generated": self.base_in_generated,
            "proper": self.proper,
        }


ONE_PLUS_Z = {0: Fraction(1), 1: Fraction(1)}


def proper_invariant_witness(f: TestSequence, q0: Rational, a0: Rational) -> InvariantWitness:
    """Exhibit a proper nonzero invariant subspace inside the span of f.

    The span of the shifts of ``f`` corresponds to the ideal generated by its
    Laurent image ``w``; the ideal generated by ``(1 + z) w`` is invariant,
    nonzero, and misses ``w`` itself.
    """
    if f.is_zero:
        raise ZeroInput("the zero sequence spans no nonzero subspace")
    base = {n: c.eval(q0, a0) for n, c in ts_to_laurent(f).items()}
    base = {n: c for n, c in base.items() if c}
    if not base:
        raise ZeroInput("sequence vanishes at the chosen parameter values")
    gen = laurent_mul(ONE_PLUS_Z, base)
    return InvariantWitness(
        base=base,
        generator=gen,
        generator_sequence=laurent_to_ts(gen),
        excluded=f,
        base_in_generated=laurent_divides(gen, base),
    )


# brute-force eigen-solver --------------------------------------------------


def eigen_solve(q0: Rational, a0: Rational, depth: int = 3, levels: int = 3) -> list[TowerWindow]:
    """Solve for all towers with u(phi) = a0 * phi on levels 0..levels.

    Every level is a window ``[-depth, m]``.  The unknowns are tied together
    by the transition maps between consecutive levels and by the eigen
    equations.  The solution space must be a line; its generator is scaled to
    pair to 1 with the characteristic function of O and compared with the
    closed form for g_alpha.
    """
    q0, a0 = Fraction(q0), Fraction(a0)
    if q0 <= 1:
        raise ValueError("q0 must exceed 1")
    if a0 == 0:
        raise ValueError("a0 must be nonzero")
    if depth < 1 or levels < 1:
        raise ValueError("need depth >= 1 and levels >= 1")
    lo = -depth
    index: dict[tuple[int, int], int] = {}
    for m in range(levels + 1):
        for n in range(lo, m + 1):
            index[(m, n)] = len(index)
    size = len(index)
    rows: list[list[Fraction]] = []

    def equation(coeffs: dict[tuple[int, int], Fraction]) -> None:
        row = [Fraction(0)] * size
        for key, c in coeffs.items():
            row[index[key]] += c
        rows.append(row)

    for m in range(levels):
        for n in range(lo, m):
            equation({(m + 1, n): q0, (m, n): Fraction(-1)})
        equation({(m + 1, m): q0 - 1, (m + 1, m + 1): Fraction(1), (m, m): Fraction(-1)})
        for n in range(lo + 1, m + 2):
            equation({(m, n - 1): Fraction(1), (m + 1, n): -a0})

    basis = linalg.nullspace(rows, size)
    if len(basis) != 1:
        raise RankError(f"eigen space has dimension {len(basis)}, expected 1")
    vec = basis[0]
    norm = vec[index[(0, 0)]]
    if norm == 0:
        raise RankError("solution pairs to zero with the characteristic function of O")
    vec = [x / norm for x in vec]
    out = []
    for m in range(levels + 1):
        w = TowerWindow(m, lo, tuple(SymScalar.const(vec[index[(m, n)]]) for n in range(lo, m + 1)))
        expected = g_entries(GENERIC_LABEL, m, m - lo).eval(q0, a0)
        if w.eval(q0, a0) != expected:
            raise InternalError(f"solution at level {m} disagrees with the closed form")
        out.append(w)
    return out
