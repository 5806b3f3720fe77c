"""Random well-typed expressions, used by the round-trip checks."""

from __future__ import annotations

import random

from .ast import TS, Atom, BinOp, Call, GroupLit, KernelVec, Mu, Named, Neg, Node, Num, Pow, Sym

LABELS = [
    Num(1),
    Sym("q"),
    Sym("A"),
    BinOp("*", Sym("q"), Sym("A")),
    BinOp("*", Pow(Sym("q"), 3), Sym("A")),
    Pow(Sym("A"), -1),
    BinOp("/", Num(5), Num(2)),
    BinOp("*", Num(3), Pow(Sym("q"), -2)),
]


def _sint(rng: random.Random, k: int = 4) -> int:
    return rng.randint(-k, k)


def _int_node(rng: random.Random, k: int = 4) -> Node:
    n = _sint(rng, k)
    return Num(n) if n >= 0 else Neg(Num(-n))


def scalar(rng: random.Random, depth: int = 2) -> Node:
    if depth <= 0 or rng.random() < 0.3:
        return rng.choice([Num(rng.randint(0, 9)), Sym("q"), Sym("A")])
    kind = rng.randrange(5)
    if kind == 0:
        return BinOp(rng.choice("+-"), scalar(rng, depth - 1), scalar(rng, depth - 1))
    if kind == 1:
        return BinOp("*", scalar(rng, depth - 1), scalar(rng, depth - 1))
    if kind == 2:
        # only units may appear in a denominator
        return BinOp("/", scalar(rng, depth - 1), rng.choice([Sym("q"), Sym("A"), BinOp("-", Sym("q"), Num(1))]))
    if kind == 3:
        return Neg(scalar(rng, depth - 1))
    return Pow(rng.choice([Sym("q"), Sym("A")]), _sint(rng, 3))


def heis(rng: random.Random) -> Node:
    return GroupLit("H", tuple(_sint(rng) for _ in range(3)))


def ext(rng: random.Random) -> Node:
    return GroupLit("HE", tuple(_sint(rng) for _ in range(4)))


def _additive(rng: random.Random, atom, depth: int) -> Node:
    if depth <= 0 or rng.random() < 0.35:
        return atom()
    kind = rng.randrange(3)
    if kind == 0:
        return BinOp(rng.choice("+-"), _additive(rng, atom, depth - 1), _additive(rng, atom, depth - 1))
    if kind == 1:
        return BinOp("*", scalar(rng, 1), _additive(rng, atom, depth - 1))
    return Neg(_additive(rng, atom, depth - 1))


def psi(rng: random.Random, depth: int = 2) -> Node:
    def atom():
        if rng.random() < 0.2:
            return Call("act", (ext(rng), Atom("psi", rng.choice(LABELS), _sint(rng))))
        if rng.random() < 0.2:
            return Call("fourier", (Atom("psi", rng.choice(LABELS), _sint(rng)),))
        return Atom("psi", rng.choice(LABELS), _sint(rng))

    return _additive(rng, atom, depth)


def ind(rng: random.Random, depth: int = 2) -> Node:
    def atom():
        if rng.random() < 0.3:
            return KernelVec(_sint(rng))
        return Atom("ind", rng.choice(LABELS), _sint(rng))

    return _additive(rng, atom, depth)


def dist(rng: random.Random, depth: int = 2) -> Node:
    def atom():
        r = rng.random()
        if r < 0.15:
            return Named(rng.choice(["delta", "haar"]))
        if r < 0.3:
            return Call("fourier", (Atom("g", rng.choice(LABELS)),))
        return Atom("g", rng.choice(LABELS))

    return _additive(rng, atom, depth)


def ts(rng: random.Random) -> Node:
    items = tuple(scalar(rng, 1) for _ in range(rng.randint(0, 4)))
    node = TS(_sint(rng), items)
    if rng.random() < 0.2:
        return Call("shift", (node, _int_node(rng)))
    return node


def expression(rng: random.Random) -> Node:
    """One random expression of a random result type."""
    kind = rng.randrange(12)
    if kind == 0:
        return scalar(rng, 3)
    if kind == 1:
        g = rng.choice([heis, ext])
        return BinOp("*", g(rng), g(rng)) if rng.random() < 0.5 else Call("comm", (g(rng), g(rng)))
    if kind == 2:
        return psi(rng)
    if kind == 3:
        return Call("act", (rng.choice([heis, ext])(rng), psi(rng, 1)))
    if kind == 4:
        return Call("act", (heis(rng), ind(rng, 1))) if rng.random() < 0.5 else ind(rng)
    if kind == 5:
        return Call("beta", (ind(rng),))
    if kind == 6:
        return Call("pair", (ts(rng), dist(rng, 1)))
    if kind == 7:
        return dist(rng)
    if kind == 8:
        return ts(rng)
    if kind == 9:
        return Call("rd", (_int_node(rng, 3), heis(rng)))
    if kind == 10:
        r = rng.randint(-3, 3)
        s = rng.randint(-3, 3)
        return BinOp("*", Mu(r, s), Mu(s, rng.randint(-3, 3)))
    return Call("trace", (ext(rng), Atom("g", rng.choice(LABELS))))
