"""Expression parser for polynomial input.

Grammar (no implicit multiplication)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('+' | '-') unary | power
    power   := atom ('^' INT)?
    atom    := INT | VAR | '(' expr ')'

``VAR`` is ``x0`` through ``x9``.  Division is only allowed by a nonzero
constant, which covers rational literals ``p/q``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from persist.polycore import Polynomial

MAX_VARS = 10


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")

    def render(self) -> str:
        if not self.text:
            return str(self)
        return f"{self}\n  {self.text}\n  {' ' * self.pos}^"


class HomogeneityError(ValueError):
    def __init__(self, degrees):
        self.degrees = sorted(degrees)
        super().__init__(f"polynomial is not homogeneous; term degrees {self.degrees}")


# AST


@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: int


@dataclass(frozen=True)
class Var:
    index: int
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    pos: int


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    pos: int


Node = Union[Num, Var, Neg, BinOp, Pow]

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>x\d+)|(?P<op>[-+*/^()]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, pos=None):
        if pos is None:
            pos = self.peek()[2]
        raise ParseError(msg, pos, self.text)

    def parse(self) -> Node:
        if self.peek()[0] == "end":
            self.error("empty expression")
        node = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            _, op, pos = self.take()
            node = BinOp(op, node, self.term(), pos)
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            _, op, pos = self.take()
            node = BinOp(op, node, self.unary(), pos)
        return node

    def unary(self) -> Node:
        kind, val, pos = self.peek()
        if kind == "op" and val in ("+", "-"):
            self.take()
            operand = self.unary()
            return Neg(operand, pos) if val == "-" else operand
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            _, _, pos = self.take()
            kind, val, epos = self.take()
            if kind != "int":
                self.error("exponent must be a nonnegative integer", epos)
            return Pow(base, int(val), pos)
        return base

    def atom(self) -> Node:
        kind, val, pos = self.take()
        if kind == "int":
            return Num(Fraction(int(val)), pos)
        if kind == "var":
            idx = int(val[1:])
            if idx >= MAX_VARS:
                self.error(f"variable {val} out of range x0..x{MAX_VARS - 1}", pos)
            return Var(idx, pos)
        if kind == "op" and val == "(":
            node = self.expr()
            k, v, p = self.take()
            if v != ")":
                self.error("expected ')'", p)
            return node
        self.error("unexpected end of input" if kind == "end" else f"unexpected token {val!r}", pos)


def parse_ast(text: str) -> Node:
    return _Parser(text).parse()


def max_var(node: Node) -> int:
    if isinstance(node, Var):
        return node.index
    if isinstance(node, Num):
        return -1
    if isinstance(node, Neg):
        return max_var(node.operand)
    if isinstance(node, Pow):
        return max_var(node.base)
    return max(max_var(node.left), max_var(node.right))


def to_polynomial(node: Node, nvars: int, text: str = "") -> Polynomial:
    if isinstance(node, Num):
        return Polynomial.constant(nvars, node.value)
    if isinstance(node, Var):
        return Polynomial.var(nvars, node.index)
    if isinstance(node, Neg):
        return -to_polynomial(node.operand, nvars, text)
    if isinstance(node, Pow):
        return to_polynomial(node.base, nvars, text) ** node.exponent
    left = to_polynomial(node.left, nvars, text)
    right = to_polynomial(node.right, nvars, text)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if not right.is_constant() or not right:
        raise ParseError("division only by a nonzero constant", node.pos, text)
    return left / right.constant_value()


def parse(text: str, nvars: int | None = None, homogeneous: bool = False) -> Polynomial:
    """Parse ``text`` into a :class:`Polynomial`.

    The variable count defaults to one more than the largest index used.
    With ``homogeneous=True`` a :class:`HomogeneityError` lists the term
    degrees of a non-homogeneous result.
    """
    node = parse_ast(text)
    used = max_var(node) + 1
    if nvars is None:
        nvars = max(used, 1)
    elif nvars < used:
        raise ValueError(f"expression uses x{used - 1} but only {nvars} variables were requested")
    p = to_polynomial(node, nvars, text)
    if homogeneous and not p.is_homogeneous():
        raise HomogeneityError(p.term_degrees())
    return p
