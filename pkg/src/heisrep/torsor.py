"""Haar-measure torsor calculus and the lifted model of K~*/O'*.

A lifted element ``(a, b, c)`` stands for the pair
``(u^a t^b, q^{-c} mu[B,0,b])``.  Products are computed only from the
contraction rule ``mu[B,r,s] (x) mu[B,s,w] = mu[B,r,w]`` and the actions of
the local parameters ``t`` and ``u`` on measure symbols, so the resulting
group law is an independent check on the closed-form Heisenberg law.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ChainMismatch, InternalError
from .group import HeisElement
from .scalar import ONE, SymScalar


@dataclass(frozen=True)
class MeasureSymbol:
    """``coeff * mu[B,r,s]``."""

    r: int
    s: int
    coeff: SymScalar = ONE

    def __post_init__(self):
        if self.coeff.is_zero():
            raise ValueError("measure symbol coefficient must be nonzero")

    def scale(self, k: SymScalar) -> "MeasureSymbol":
        return MeasureSymbol(self.r, self.s, self.coeff * k)

    def render(self) -> str:
        atom = f"mu[B,{self.r},{self.s}]"
        if self.coeff == ONE:
            return atom
        return f"({self.coeff.render()})*{atom}"

    def to_json(self) -> dict:
        return {"r": self.r, "s": self.s, "coeff": self.coeff.to_json(), "text": self.render()}


def measure_tensor(x: MeasureSymbol, y: MeasureSymbol) -> MeasureSymbol:
    if x.s != y.r:
        raise ChainMismatch(f"cannot contract mu[B,{x.r},{x.s}] with mu[B,{y.r},{y.s}]")
    return MeasureSymbol(x.r, y.s, x.coeff * y.coeff)


def measure_unit(r: int) -> MeasureSymbol:
    """mu[B,r,r], which is the scalar 1."""
    return MeasureSymbol(r, r)


def t_act(x: MeasureSymbol) -> MeasureSymbol:
    return MeasureSymbol(x.r + 1, x.s + 1, x.coeff)


def t_inv_act(x: MeasureSymbol) -> MeasureSymbol:
    return MeasureSymbol(x.r - 1, x.s - 1, x.coeff)


def u_act(x: MeasureSymbol) -> MeasureSymbol:
    return MeasureSymbol(x.r, x.s, x.coeff * SymScalar.q_pow(x.r - x.s))


def u_inv_act(x: MeasureSymbol) -> MeasureSymbol:
    return MeasureSymbol(x.r, x.s, x.coeff * SymScalar.q_pow(x.s - x.r))


def monomial_act(a: int, b: int, x: MeasureSymbol) -> MeasureSymbol:
    """Apply u^a, then t^b, one generator step at a time."""
    step = u_act if a >= 0 else u_inv_act
    for _ in range(abs(a)):
        x = step(x)
    step = t_act if b >= 0 else t_inv_act
    for _ in range(abs(b)):
        x = step(x)
    return x


@dataclass(frozen=True)
class LiftElement:
    a: int
    b: int
    cexp: int

    def measure(self) -> MeasureSymbol:
        return MeasureSymbol(0, self.b, SymScalar.q_pow(-self.cexp))

    def render(self) -> str:
        return f"lift({self.a},{self.b},{self.cexp})"

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "cexp": self.cexp, "text": self.render()}


def _from_measure(a: int, b: int, m: MeasureSymbol) -> LiftElement:
    if m.r != 0 or m.s != b:
        raise InternalError(f"measure component {m.render()} is not based at (0, {b})")
    k = m.coeff.pure_q_power()
    if k is None:
        raise InternalError(f"coefficient {m.coeff} is not a pure power of q")
    return LiftElement(a, b, -k)


def lift_mul(x: LiftElement, y: LiftElement) -> LiftElement:
    """(g1, m1)(g2, m2) = (g1 g2, m1 (x) g1(m2))."""
    moved = monomial_act(x.a, x.b, y.measure())
    return _from_measure(x.a + y.a, x.b + y.b, measure_tensor(x.measure(), moved))


def _rd_unit_step(d: int, i: int, j: int) -> MeasureSymbol:
    # R_d scales mu[B,i,i+1] by q^{-d i}; the reversed step is its dual
    if j == i + 1:
        return MeasureSymbol(i, j, SymScalar.q_pow(-d * i))
    if j == i - 1:
        return MeasureSymbol(i, j, SymScalar.q_pow(d * j))
    raise ValueError("not a unit step")


def rd_measure(d: int, b: int) -> MeasureSymbol:
    """R_d(mu[B,0,b]) as a contraction of unit steps."""
    out = measure_unit(0)
    step = 1 if b >= 0 else -1
    for i in range(0, b, step):
        out = measure_tensor(out, _rd_unit_step(d, i, i + step))
    return out


def lift_rd(d: int, x: LiftElement) -> LiftElement:
    # R_d(u^a t^b) = u^{a + d b} t^b
    m = rd_measure(d, x.b).scale(SymScalar.q_pow(-x.cexp))
    return _from_measure(x.a + d * x.b, x.b, m)


def to_heis(x: LiftElement) -> HeisElement:
    return HeisElement(x.a, x.b, x.cexp)


def from_heis(x: HeisElement) -> LiftElement:
    return LiftElement(x.a, x.b, x.c)
