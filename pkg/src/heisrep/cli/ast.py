"""Syntax tree for the expression language and its canonical printer."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str  # "q" or "A"


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # + - * /
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


@dataclass(frozen=True)
class GroupLit:
    kind: str  # "H", "HE" or "lift"
    args: tuple[int, ...]


@dataclass(frozen=True)
class Atom:
    kind: str  # "psi", "ind" or "g"
    label: "Node"
    index: int | None = None


@dataclass(frozen=True)
class Named:
    name: str  # "delta" or "haar"


@dataclass(frozen=True)
class KernelVec:
    m: int


@dataclass(frozen=True)
class TS:
    start: int
    items: tuple["Node", ...]


@dataclass(frozen=True)
class Mu:
    r: int
    s: int


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["Node", ...]


Node = Union[Num, Sym, Neg, BinOp, Pow, GroupLit, Atom, Named, KernelVec, TS, Mu, Call]

FUNCTIONS = {
    "act": (2, 2),
    "fourier": (1, 1),
    "beta": (1, 1),
    "pair": (2, 2),
    "trace": (2, 2),
    "classify": (2, 2),
    "vandermonde": (1, None),
    "cyclic": (1, 1),
    "rd": (2, 2),
    "comm": (2, 2),
    "inv": (1, 1),
    "shift": (2, 2),
}

GROUP_ARITY = {"H": 3, "HE": 4, "lift": 3}

_SUM, _PRODUCT, _UNARY, _POWER, _PRIMARY = range(1, 6)


def _prec(node: Node) -> int:
    if isinstance(node, BinOp):
        return _SUM if node.op in "+-" else _PRODUCT
    if isinstance(node, Neg):
        return _UNARY
    if isinstance(node, Pow):
        return _POWER
    return _PRIMARY


def to_source(node: Node, min_prec: int = 0) -> str:
    """Print ``node`` so that parsing the text gives back the same tree."""
    text = _emit(node)
    return f"({text})" if _prec(node) < min_prec else text


def _emit(node: Node) -> str:
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Neg):
        return "-" + to_source(node.operand, _UNARY)
    if isinstance(node, BinOp):
        if node.op in "+-":
            return f"{to_source(node.left, _SUM)} {node.op} {to_source(node.right, _PRODUCT)}"
        return f"{to_source(node.left, _PRODUCT)}{node.op}{to_source(node.right, _UNARY)}"
    if isinstance(node, Pow):
        return f"{to_source(node.base, _PRIMARY)}^{node.exp}"
    if isinstance(node, GroupLit):
        return f"{node.kind}({','.join(str(a) for a in node.args)})"
    if isinstance(node, Atom):
        label = to_source(node.label)
        if node.kind == "psi":
            return f"psi[{label}]_{node.index}"
        if node.kind == "ind":
            return f"ind[{label}]@{node.index}"
        return f"g[{label}]"
    if isinstance(node, Named):
        return node.name
    if isinstance(node, KernelVec):
        return f"v_{node.m}"
    if isinstance(node, TS):
        return f"ts[{node.start}; " + ", ".join(to_source(x) for x in node.items) + "]"
    if isinstance(node, Mu):
        return f"mu[B,{node.r},{node.s}]"
    if isinstance(node, Call):
        return f"{node.name}(" + ", ".join(to_source(a) for a in node.args) + ")"
    raise TypeError(f"not a syntax node: {node!r}")


def to_json(node: Node):
    """Nested-dict view of the tree, for ``parse --json``."""
    if isinstance(node, tuple):
        return [to_json(x) for x in node]
    if not hasattr(node, "__dataclass_fields__"):
        return node
    out = {"node": type(node).__name__}
    for name in node.__dataclass_fields__:
        out[name] = to_json(getattr(node, name))
    return out
