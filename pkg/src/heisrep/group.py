"""The discrete Heisenberg group G and its extension G~ = G x| Z.

Elements are plain integer tuples.  ``(a, b, c)`` multiplies as
``(a1 + a2, b1 + b2, c1 + c2 + a1*b2)``; the rotation automorphisms R_d
twist the second factor before multiplying in G~.
"""

from __future__ import annotations

from typing import NamedTuple

Matrix = tuple[tuple[int, ...], ...]


def _tri(b: int) -> int:
    # b(b-1)/2 is an integer for every integer b
    return b * (b - 1) // 2


class HeisElement(NamedTuple):
    a: int = 0
    b: int = 0
    c: int = 0

    def __mul__(self, other):  # type: ignore[override]
        if isinstance(other, HeisElement):
            return heis_mul(self, other)
        return NotImplemented

    def inv(self) -> "HeisElement":
        return heis_inv(self)

    def extend(self) -> "ExtHeisElement":
        return ExtHeisElement(self.a, self.b, self.c, 0)

    def render(self) -> str:
        return f"H({self.a},{self.b},{self.c})"

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "text": self.render()}


class ExtHeisElement(NamedTuple):
    a: int = 0
    b: int = 0
    c: int = 0
    d: int = 0

    def __mul__(self, other):  # type: ignore[override]
        if isinstance(other, ExtHeisElement):
            return ext_mul(self, other)
        return NotImplemented

    def inv(self) -> "ExtHeisElement":
        return ext_inv(self)

    @property
    def heis(self) -> HeisElement:
        return HeisElement(self.a, self.b, self.c)

    def render(self) -> str:
        return f"HE({self.a},{self.b},{self.c},{self.d})"

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d, "text": self.render()}


IDENTITY = HeisElement(0, 0, 0)
EXT_IDENTITY = ExtHeisElement(0, 0, 0, 0)
ETA = HeisElement(1, 0, 0)
GAMMA = HeisElement(0, 1, 0)


def heis_mul(x: HeisElement, y: HeisElement) -> HeisElement:
    return HeisElement(x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1])


def heis_inv(x: HeisElement) -> HeisElement:
    a, b, c = x
    return HeisElement(-a, -b, a * b - c)


def heis_comm(x: HeisElement, y: HeisElement) -> HeisElement:
    """x y x^-1 y^-1."""
    return heis_mul(heis_mul(x, y), heis_mul(heis_inv(x), heis_inv(y)))


def rd_auto(d: int, x: HeisElement) -> HeisElement:
    a, b, c = x
    return HeisElement(a + d * b, b, c + _tri(b) * d)


def ext_mul(x: ExtHeisElement, y: ExtHeisElement) -> ExtHeisElement:
    a1, b1, c1, d1 = x
    a2, b2, c2, d2 = y
    return ExtHeisElement(a1 + a2 + d1 * b2, b1 + b2, c1 + c2 + _tri(b2) * d1 + a1 * b2, d1 + d2)


def ext_inv(x: ExtHeisElement) -> ExtHeisElement:
    # (g, d)^-1 = (R_{-d}(g^-1), -d)
    a, b, c, d = x
    g = rd_auto(-d, heis_inv(HeisElement(a, b, c)))
    return ExtHeisElement(g.a, g.b, g.c, -d)


def ext_comm(x: ExtHeisElement, y: ExtHeisElement) -> ExtHeisElement:
    return ext_mul(ext_mul(x, y), ext_mul(ext_inv(x), ext_inv(y)))


def embed(x: HeisElement) -> ExtHeisElement:
    return ExtHeisElement(x[0], x[1], x[2], 0)


def matrix_embed3(x: HeisElement) -> Matrix:
    a, b, c = x
    return ((1, a, c), (0, 1, b), (0, 0, 1))


def matrix_embed(x: ExtHeisElement) -> Matrix:
    a, b, c, d = x
    return (
        (1, d, a, c),
        (0, 1, b, _tri(b)),
        (0, 0, 1, b),
        (0, 0, 0, 1),
    )


def matmul(x: Matrix, y: Matrix) -> Matrix:
    n = len(x)
    cols = list(zip(*y))
    return tuple(tuple(sum(x[i][k] * cols[j][k] for k in range(n)) for j in range(n)) for i in range(n))


def matrix_unembed3(m: Matrix) -> HeisElement:
    return HeisElement(m[0][1], m[1][2], m[0][2])


def matrix_unembed(m: Matrix) -> ExtHeisElement:
    return ExtHeisElement(m[0][2], m[1][2], m[0][3], m[0][1])


# the literal witness elements for nilpotency class 3 (y and z coincide)
CLASS3_X = ExtHeisElement(0, 0, 0, 1)
CLASS3_Y = ExtHeisElement(0, 1, 0, 0)
CLASS3_Z = ExtHeisElement(0, 1, 0, 0)


def class3_witness() -> tuple[ExtHeisElement, ExtHeisElement]:
    """Return ([x, y], [[x, y], z]) for the fixed witness triple."""
    xy = ext_comm(CLASS3_X, CLASS3_Y)
    return xy, ext_comm(xy, CLASS3_Z)
