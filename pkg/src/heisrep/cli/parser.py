"""Tokenizer and LL(1) recursive-descent parser for the expression language.

Grammar::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := primary ("^" sint)?
    primary := INT | "(" expr ")" | "q" | "A" | "delta" | "haar"
             | "H" "(" sint "," sint "," sint ")"
             | "HE" "(" sint "," sint "," sint "," sint ")"
             | "lift" "(" sint "," sint "," sint ")"
             | "psi" "[" expr "]" "_" sint
             | "ind" "[" expr "]" "@" sint
             | "g" "[" expr "]"
             | "v" "_" sint
             | "ts" "[" sint ";" (expr ("," expr)*)? "]"
             | "mu" "[" "B" "," sint "," sint "]"
             | NAME "(" expr ("," expr)* ")"
    sint    := "-"? INT
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ExprSyntaxError
from .ast import (
    FUNCTIONS,
    GROUP_ARITY,
    TS,
    Atom,
    BinOp,
    Call,
    GroupLit,
    KernelVec,
    Mu,
    Named,
    Neg,
    Node,
    Num,
    Pow,
    Sym,
)

PUNCT = set("+-*/^()[],;_@")
KEYWORDS = {"q", "A", "delta", "haar", "psi", "ind", "g", "v", "ts", "mu"} | set(GROUP_ARITY) | set(FUNCTIONS)


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", a punctuation character, or "eof"
    text: str
    line: int
    column: int


def tokenize(src: str) -> list[Token]:
    tokens = []
    i, line, col = 0, 1, 1
    while i < len(src):
        ch = src[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        start = i
        if ch.isdigit():
            while i < len(src) and src[i].isdigit():
                i += 1
            tokens.append(Token("int", src[start:i], line, col))
        elif ch.isalpha():
            while i < len(src) and src[i].isalpha():
                i += 1
            tokens.append(Token("name", src[start:i], line, col))
        elif ch in PUNCT:
            i += 1
            tokens.append(Token(ch, ch, line, col))
        else:
            raise ExprSyntaxError(f"unexpected character {ch!r}", line, col)
        col += i - start
    tokens.append(Token("eof", "", line, col))
    return tokens


class Parser:
    def __init__(self, src: str):
        self.tokens = tokenize(src)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def _fail(self, expected) -> ExprSyntaxError:
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        return ExprSyntaxError(f"unexpected {found}", t.line, t.column, expected)

    def accept(self, kind: str, text: str | None = None) -> Token | None:
        t = self.tok
        if t.kind == kind and (text is None or t.text == text):
            self.pos += 1
            return t
        return None

    def expect(self, kind: str, text: str | None = None) -> Token:
        t = self.accept(kind, text)
        if t is None:
            raise self._fail([text or kind])
        return t

    # grammar ---------------------------------------------------------------

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "eof":
            raise self._fail(["+", "-", "*", "/", "^", "end of input"])
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.tok.kind
            self.pos += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.tok.kind in ("*", "/"):
            op = self.tok.kind
            self.pos += 1
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        node = self.primary()
        if self.accept("^"):
            return Pow(node, self.sint())
        return node

    def sint(self) -> int:
        sign = -1 if self.accept("-") else 1
        t = self.accept("int")
        if t is None:
            raise self._fail(["integer"] if sign < 0 else ["integer", "-"])
        return sign * int(t.text)

    def primary(self) -> Node:
        t = self.tok
        if t.kind == "int":
            self.pos += 1
            return Num(int(t.text))
        if t.kind == "(":
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        if t.kind != "name":
            raise self._fail(["integer", "(", "-", "name"])
        name = t.text
        if name not in KEYWORDS:
            raise ExprSyntaxError(f"unknown name {name!r}", t.line, t.column, sorted(KEYWORDS))
        self.pos += 1
        if name in ("q", "A"):
            return Sym(name)
        if name in ("delta", "haar"):
            return Named(name)
        if name in GROUP_ARITY:
            self.expect("(")
            args = [self.sint()]
            for _ in range(GROUP_ARITY[name] - 1):
                self.expect(",")
                args.append(self.sint())
            self.expect(")")
            return GroupLit(name, tuple(args))
        if name in ("psi", "ind", "g"):
            self.expect("[")
            label = self.expr()
            self.expect("]")
            if name == "psi":
                self.expect("_")
                return Atom("psi", label, self.sint())
            if name == "ind":
                self.expect("@")
                return Atom("ind", label, self.sint())
            return Atom("g", label)
        if name == "v":
            self.expect("_")
            return KernelVec(self.sint())
        if name == "ts":
            self.expect("[")
            start = self.sint()
            self.expect(";")
            items = []
            if self.tok.kind != "]":
                items.append(self.expr())
                while self.accept(","):
                    items.append(self.expr())
            self.expect("]")
            return TS(start, tuple(items))
        if name == "mu":
            self.expect("[")
            self.expect("name", "B")
            self.expect(",")
            r = self.sint()
            self.expect(",")
            s = self.sint()
            self.expect("]")
            return Mu(r, s)
        return self.call(name)

    def call(self, name: str) -> Node:
        lo, hi = FUNCTIONS[name]
        open_tok = self.expect("(")
        args = [self.expr()]
        while self.accept(","):
            args.append(self.expr())
        self.expect(")")
        if len(args) < lo or (hi is not None and len(args) > hi):
            want = str(lo) if lo == hi else f"at least {lo}"
            raise ExprSyntaxError(
                f"{name} takes {want} argument(s), got {len(args)}", open_tok.line, open_tok.column
            )
        return Call(name, tuple(args))


def parse_expr(src: str) -> Node:
    return Parser(src).parse()
