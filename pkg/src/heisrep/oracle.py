"""Brute-force model of L = F_p((u)) on finite windows.

A window ``(M, N)`` is the quotient ``u^{-M} O / m^N``; its points are digit
vectors ``(a_{-M}, ..., a_{N-1})`` over F_p.  Everything here is computed by
direct enumeration so it can check the closed formulas of the symbolic
layer independently.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Mapping, Union

from .errors import DomainError, NotRadial, PrecisionError, WindowOverflow
from .onedim import TestSequence, TowerWindow
from .scalar import SymScalar

DEFAULT_CAP = 3 ** 6
Value = Union[Fraction, complex]
Digits = tuple[int, ...]


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class FiniteLevelFunction:
    """A function on u^{-M} O / m^N, zero outside u^{-M} O.

    ``values`` is keyed by digit vectors; absent keys are zero.
    """

    p: int
    M: int
    N: int
    values: Mapping[Digits, Value]

    def __post_init__(self):
        if not _is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")
        if not -self.M < self.N:
            raise DomainError("window needs -M < N")

    @property
    def width(self) -> int:
        return self.M + self.N

    def points(self):
        return itertools.product(range(self.p), repeat=self.width)

    def __call__(self, x: Digits) -> Value:
        return self.values.get(tuple(x), 0)

    def valuation(self, x: Digits) -> int:
        for i, digit in enumerate(x):
            if digit:
                return i - self.M
        return self.N


def _check_size(p: int, width: int, allow_large: bool) -> None:
    if p ** width > DEFAULT_CAP and not allow_large:
        raise WindowOverflow(f"{p}^{width} points exceed the default cap of {DEFAULT_CAP}")


def tabulate(p: int, M: int, N: int, fn: Callable[[Digits], Value], allow_large: bool = False) -> FiniteLevelFunction:
    _check_size(p, M + N, allow_large)
    vals = {}
    for x in itertools.product(range(p), repeat=M + N):
        v = fn(x)
        if v != 0:
            vals[x] = v
    return FiniteLevelFunction(p, M, N, vals)


def _rational_window(ts: TestSequence, p: int, a0: Rational | None) -> dict[int, Fraction]:
    out = {}
    for n in range(ts.start, ts.end + 1):
        c = ts[n]
        if c.is_const():
            out[n] = c.as_fraction()
        elif a0 is None:
            raise DomainError("sequence has formal coefficients; pass a0 to evaluate them")
        else:
            out[n] = c.eval(p, a0)
    return out


def finite_embed(ts: TestSequence, p: int, M: int, N: int, a0: Rational | None = None,
                 allow_large: bool = False) -> FiniteLevelFunction:
    """The radial function x -> c_{v(x)} on the window."""
    if not ts.is_zero and (ts.start < -M or ts.end > N):
        raise WindowOverflow(f"sequence support [{ts.start}, {ts.end}] does not fit [{-M}, {N}]")
    coeffs = _rational_window(ts, p, a0)

    def value(n: int) -> Fraction:
        if ts.is_zero or n < ts.start:
            return Fraction(0)
        return coeffs[min(n, ts.end)]

    probe = FiniteLevelFunction(p, M, N, {})
    return tabulate(p, M, N, lambda x: value(probe.valuation(x)), allow_large)


def finite_haar(f: FiniteLevelFunction) -> Value:
    """Integral against the Haar measure with mu(O) = 1."""
    total = sum(f.values.values(), Fraction(0))
    return total * Fraction(1, f.p ** f.N) if isinstance(total, Fraction) else total / f.p ** f.N


def _a_minus_1_of_product(x: Digits, xM: int, y: Digits, yM: int) -> int:
    total = 0
    for i, xi in enumerate(x):
        if xi:
            j = -1 - (i - xM) + yM
            if 0 <= j < len(y):
                total += xi * y[j]
    return total


def finite_fourier(f: FiniteLevelFunction, allow_large: bool = False) -> FiniteLevelFunction:
    """(Ff)(y) = p^{-N} sum_x f(x) exp(-2 pi i a_{-1}(x y) / p).

    The result lives on the dual window (M', N') = (N, M), which is exactly
    where the pairing with the chosen character is well defined.
    """
    M2, N2 = f.N, f.M
    if -M2 >= N2:
        raise PrecisionError("dual window is empty")
    _check_size(f.p, M2 + N2, allow_large)
    scale = 1.0 / f.p ** f.N
    support = sorted(f.values.items())
    roots = [cmath.exp(-2j * math.pi * k / f.p) for k in range(f.p)]

    def value(y: Digits) -> complex:
        acc = 0j
        for x, fx in support:
            k = _a_minus_1_of_product(x, f.M, y, M2) % f.p
            acc += complex(fx) * roots[k]
        return acc * scale

    vals = {}
    for y in itertools.product(range(f.p), repeat=M2 + N2):
        v = value(y)
        if v != 0:
            vals[y] = v
    return FiniteLevelFunction(f.p, M2, N2, vals)


def radial_data(f: FiniteLevelFunction) -> dict[int, Value]:
    """Values a_n = f(u^n + m^N) for -M <= n <= N, checking O*-invariance."""
    data: dict[int, Value] = {}
    for x in f.points():
        n = f.valuation(x)
        v = f(x)
        if n in data:
            if data[n] != v:
                raise NotRadial(f"function is not constant on valuation class {n}")
        else:
            data[n] = v
    return data


def finite_pushforward(f: FiniteLevelFunction) -> dict[int, Value]:
    """Sum over the fibres of level N+1 -> level N and return radial data."""
    radial_data(f)
    if f.N - 1 <= -f.M:
        raise DomainError("window too narrow to push forward")
    summed: dict[Digits, Value] = {}
    for x, v in f.values.items():
        key = x[:-1]
        summed[key] = summed.get(key, 0) + v
    return radial_data(FiniteLevelFunction(f.p, f.M, f.N - 1, summed))


def window_from_radial(data: Mapping[int, Value], level: int, lo: int) -> TowerWindow:
    return TowerWindow(level, lo, tuple(SymScalar.const(data.get(n, 0)) for n in range(lo, level + 1)))


def radial_from_window(w: TowerWindow, p: int, a0: Rational = 1) -> dict[int, Fraction]:
    return {n: w[n].eval(p, a0) for n in range(w.lo, w.level + 1)}


def distribution_function(data: Mapping[int, Value], p: int, M: int, N: int,
                          allow_large: bool = False) -> FiniteLevelFunction:
    """Radial distribution data at level N as a function on the window."""
    probe = FiniteLevelFunction(p, M, N, {})
    return tabulate(p, M, N, lambda x: data.get(probe.valuation(x), Fraction(0)), allow_large)


def finite_pair(ts: TestSequence, data: Mapping[int, Value], p: int, N: int,
                a0: Rational | None = None, allow_large: bool = False) -> Value:
    """Sum over L / m^N of f(x) * phi(x) by enumerating every coset."""
    if ts.is_zero:
        return Fraction(0)
    M = max(-ts.start, 1 - N)
    if ts.end > N:
        raise WindowOverflow(f"test sequence tail starts at {ts.end}, after level {N}")
    f = finite_embed(ts, p, M, N, a0, allow_large)
    phi = distribution_function(data, p, M, N, allow_large)
    total: Value = Fraction(0)
    for x, v in f.values.items():
        total += v * phi(x)
    return total


def coset_count(p: int, n: int, N: int) -> int:
    """Number of cosets of m^N in L with valuation exactly n (n < N)."""
    return (p - 1) * p ** (N - 1 - n)
