"""Exact scalars in Q[q^{+-1}, A^{+-1}, (q-1)^{-1}].

``q`` is the residue field size and ``A`` a formal eigenvalue parameter.
A scalar is stored as a Laurent numerator over the rationals together with
a power of ``(q - 1)`` in the denominator.  Canonical form cancels every
factor ``(q - 1)`` that divides the numerator, which makes structural
equality coincide with equality in the ring.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

from .errors import DomainError, PoleError

Monomial = tuple[int, int]  # (exponent of q, exponent of A)
Coercible = Union["SymScalar", int, Fraction]


def _divide_by_q_minus_1(num: dict[Monomial, Fraction]) -> dict[Monomial, Fraction]:
    """Exact division of a numerator known to vanish at q = 1."""
    by_a: dict[int, dict[int, Fraction]] = {}
    for (eq, ea), c in num.items():
        by_a.setdefault(ea, {})[eq] = c
    out: dict[Monomial, Fraction] = {}
    for ea, poly in by_a.items():
        lo, hi = min(poly), max(poly)
        carry = Fraction(0)
        # synthetic division by the root q = 1, from the top degree down
        for eq in range(hi, lo, -1):
            carry += poly.get(eq, 0)
            if carry:
                out[(eq - 1, ea)] = carry
        if carry + poly.get(lo, 0) != 0:
            raise AssertionError("numerator not divisible by (q-1)")
    return out


def _vanishes_at_q1(num: Mapping[Monomial, Fraction]) -> bool:
    sums: dict[int, Fraction] = {}
    for (_, ea), c in num.items():
        sums[ea] = sums.get(ea, 0) + c
    return all(v == 0 for v in sums.values())


def _mul_nums(x: Mapping[Monomial, Fraction], y: Mapping[Monomial, Fraction]) -> dict[Monomial, Fraction]:
    out: dict[Monomial, Fraction] = {}
    for (q1, a1), c1 in x.items():
        for (q2, a2), c2 in y.items():
            key = (q1 + q2, a1 + a2)
            out[key] = out.get(key, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _times_q_minus_1_pow(num: Mapping[Monomial, Fraction], k: int) -> dict[Monomial, Fraction]:
    out = dict(num)
    for _ in range(k):
        nxt: dict[Monomial, Fraction] = {}
        for (eq, ea), c in out.items():
            nxt[(eq + 1, ea)] = nxt.get((eq + 1, ea), 0) + c
            nxt[(eq, ea)] = nxt.get((eq, ea), 0) - c
        out = {k2: v for k2, v in nxt.items() if v}
    return out


class SymScalar:
    """Immutable canonical element of Q[q^{+-1}, A^{+-1}, (q-1)^{-1}]."""

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, numerator: Mapping[Monomial, Rational] | None = None, den_pow: int = 0):
        if den_pow < 0:
            raise ValueError("den_pow must be a natural number")
        num = {}
        for (eq, ea), c in (numerator or {}).items():
            c = Fraction(c)
            if c:
                key = (int(eq), int(ea))
                num[key] = num.get(key, 0) + c
        num = {k: v for k, v in num.items() if v}
        self._set(num, den_pow)

    def _set(self, num: dict[Monomial, Fraction], den: int) -> None:
        if not num:
            den = 0
        while den > 0 and _vanishes_at_q1(num):
            num = _divide_by_q_minus_1(num)
            den -= 1
        self._num = num
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, num: dict[Monomial, Fraction], den: int) -> "SymScalar":
        obj = cls.__new__(cls)
        obj._set(num, den)
        return obj

    # constructors -------------------------------------------------------

    @classmethod
    def const(cls, c: Rational) -> "SymScalar":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, c: Rational = 1, eq: int = 0, ea: int = 0) -> "SymScalar":
        return cls({(eq, ea): c})

    @classmethod
    def q_pow(cls, k: int) -> "SymScalar":
        return cls._raw({(k, 0): Fraction(1)}, 0)

    @classmethod
    def coerce(cls, x: Coercible) -> "SymScalar":
        if isinstance(x, SymScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot interpret {x!r} as a scalar")

    # accessors ----------------------------------------------------------

    @property
    def numerator(self) -> dict[Monomial, Fraction]:
        return dict(self._num)

    @property
    def den_pow(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not self._num

    def is_monomial(self) -> bool:
        return self._den == 0 and len(self._num) == 1

    def as_monomial(self) -> tuple[Fraction, int, int]:
        """Return (coefficient, e_q, e_A) for a single-term scalar."""
        if not self.is_monomial():
            raise DomainError(f"{self} is not a monomial")
        ((eq, ea), c), = self._num.items()
        return c, eq, ea

    def is_const(self) -> bool:
        return self.is_zero() or (self._den == 0 and set(self._num) == {(0, 0)})

    def as_fraction(self) -> Fraction:
        if not self.is_const():
            raise DomainError(f"{self} is not a rational constant")
        return self._num.get((0, 0), Fraction(0))

    def pure_q_power(self) -> int | None:
        """k if this scalar equals q^k exactly, otherwise None."""
        if self.is_monomial():
            c, eq, ea = self.as_monomial()
            if c == 1 and ea == 0:
                return eq
        return None

    # ring operations -----------------------------------------------------

    def __add__(self, other: Coercible) -> "SymScalar":
        try:
            other = SymScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._num:
            return self
        if not self._num:
            return other
        den = max(self._den, other._den)
        x = _times_q_minus_1_pow(self._num, den - self._den)
        y = _times_q_minus_1_pow(other._num, den - other._den)
        out = dict(x)
        for k, v in y.items():
            out[k] = out.get(k, 0) + v
        return SymScalar._raw({k: v for k, v in out.items() if v}, den)

    __radd__ = __add__

    def __neg__(self) -> "SymScalar":
        return SymScalar._raw({k: -v for k, v in self._num.items()}, self._den)

    def __sub__(self, other: Coercible) -> "SymScalar":
        try:
            other = SymScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Coercible) -> "SymScalar":
        return SymScalar.coerce(other) - self

    def __mul__(self, other: Coercible) -> "SymScalar":
        try:
            other = SymScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return SymScalar._raw(_mul_nums(self._num, other._num), self._den + other._den)

    __rmul__ = __mul__

    def inverse(self) -> "SymScalar":
        """Inverse of a unit of the ring: c * q^i * A^j * (q-1)^n.

        Anything else would need a new denominator (for instance A - 1),
        which the ring deliberately does not contain.
        """
        if not self._num:
            raise ZeroDivisionError("inverse of zero scalar")
        num, n = dict(self._num), 0
        while len(num) > 1 and _vanishes_at_q1(num):
            num = _divide_by_q_minus_1(num)
            n += 1
        if len(num) != 1:
            raise DomainError(f"{self} is not invertible in Q[q, 1/q, A, 1/A, 1/(q-1)]")
        ((eq, ea), c), = num.items()
        inv = SymScalar._raw({(-eq, -ea): 1 / c}, n)
        return inv * SymScalar._raw(_times_q_minus_1_pow({(0, 0): Fraction(1)}, self._den), 0)

    def __truediv__(self, other: Coercible) -> "SymScalar":
        try:
            other = SymScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Coercible) -> "SymScalar":
        return SymScalar.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "SymScalar":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SymScalar.const(other)
        if not isinstance(other, SymScalar):
            return NotImplemented
        return self._den == other._den and self._num == other._num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._num.items()), self._den))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._num)

    # evaluation ----------------------------------------------------------

    def eval(self, q0: Rational, a0: Rational) -> Fraction:
        """Substitute q = q0, A = a0 exactly."""
        q0, a0 = Fraction(q0), Fraction(a0)
        if q0 == 0 or a0 == 0:
            raise DomainError("q0 and a0 must be nonzero")
        if q0 == 1 and self._den > 0:
            raise PoleError(f"{self} has a pole at q = 1")
        total = sum((c * q0 ** eq * a0 ** ea for (eq, ea), c in self._num.items()), Fraction(0))
        return total / (q0 - 1) ** self._den if self._den else total

    def eval_c(self, q0: float, a0: complex) -> complex:
        """Substitute q = q0, A = a0 in floating point."""
        if q0 == 0 or a0 == 0:
            raise DomainError("q0 and a0 must be nonzero")
        if q0 == 1 and self._den > 0:
            raise PoleError(f"{self} has a pole at q = 1")
        q0 = float(q0)
        a0 = complex(a0)
        total = 0j
        for (eq, ea), c in sorted(self._num.items()):
            total += float(c) * q0 ** eq * a0 ** ea
        return total / (q0 - 1) ** self._den if self._den else total

    # rendering -----------------------------------------------------------

    def render(self) -> str:
        """Text form ``c*q^i*A^j + ... / (q-1)^k`` accepted by the CLI parser."""
        if not self._num:
            return "0"
        terms = sorted(self._num.items(), key=lambda kv: (-kv[0][1], -kv[0][0]))
        parts = []
        for i, ((eq, ea), c) in enumerate(terms):
            body = _render_term(abs(c), eq, ea)
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        text = "".join(parts)
        if self._den:
            return f"({text}) / (q-1)^{self._den}"
        return text

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"SymScalar({self.render()!r})"

    def to_json(self) -> dict:
        return {
            "numerator": [[eq, ea, str(c)] for (eq, ea), c in sorted(self._num.items())],
            "den_pow": self._den,
            "text": self.render(),
        }


def _render_term(c: Fraction, eq: int, ea: int) -> str:
    factors = []
    if eq:
        factors.append("q" if eq == 1 else f"q^{eq}")
    if ea:
        factors.append("A" if ea == 1 else f"A^{ea}")
    if not factors:
        return str(c)
    if c == 1:
        return "*".join(factors)
    return "*".join([str(c)] + factors)


ZERO = SymScalar()
ONE = SymScalar.const(1)
Q = SymScalar.monomial(1, 1, 0)
A = SymScalar.monomial(1, 0, 1)
Q_MINUS_1 = Q - ONE


def scalar_arith(x: SymScalar, y: SymScalar, kind: str):
    """Dispatch helper for add / mul / neg / eq."""
    if kind == "add":
        return x + y
    if kind == "mul":
        return x * y
    if kind == "neg":
        return -x
    if kind == "eq":
        return x == y
    raise ValueError(f"unknown operation {kind!r}")


def scalar_eval(x: SymScalar, q0: Rational, a0: Rational) -> Fraction:
    return x.eval(q0, a0)


def scalar_eval_c(x: SymScalar, q0: float, a0: complex) -> complex:
    return x.eval_c(q0, a0)


def ssum(items: Iterable[SymScalar]) -> SymScalar:
    total = ZERO
    for item in items:
        total = total + item
    return total


@dataclass(frozen=True, order=True)
class AlphaLabel:
    """The value q^e * A^s * r of an eigen-parameter.

    ``s`` is restricted to -1, 0, 1 and ``r`` is a positive rational.
    """

    e: int = 0
    s: int = 0
    r: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        if self.s not in (-1, 0, 1):
            raise DomainError(f"A-exponent must be -1, 0 or 1, got {self.s}")
        if self.r <= 0:
            raise DomainError(f"rational part must be positive, got {self.r}")

    @property
    def is_one(self) -> bool:
        return self.e == 0 and self.s == 0 and self.r == 1

    def value(self) -> SymScalar:
        return SymScalar.monomial(self.r, self.e, self.s)

    def power(self, k: int) -> SymScalar:
        return SymScalar._raw({(k * self.e, k * self.s): self.r ** k}, 0)

    def times_q(self, k: int = 1) -> "AlphaLabel":
        return AlphaLabel(self.e + k, self.s, self.r)

    def eval_c(self, q0: float, a0: complex) -> complex:
        return complex(float(q0) ** self.e * complex(a0) ** self.s * float(self.r))

    @classmethod
    def from_scalar(cls, x: SymScalar) -> "AlphaLabel":
        c, eq, ea = x.as_monomial()
        return cls(eq, ea, c)

    def render(self) -> str:
        return self.value().render()

    def __str__(self) -> str:
        return self.render()

    def to_json(self) -> dict:
        return {"e": self.e, "s": self.s, "r": str(self.r), "text": self.render()}


DELTA_LABEL = AlphaLabel(0, 0, 1)
HAAR_LABEL = AlphaLabel(1, 0, 1)
GENERIC_LABEL = AlphaLabel(0, 1, 1)
