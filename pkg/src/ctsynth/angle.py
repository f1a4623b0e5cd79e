"""Angle expressions such as ``pi/128`` or ``-(3*pi)/7 + 0.25``.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := number | 'pi' | '(' expr ')' | '-' factor

Numbers are decimal rationals (``12``, ``0.5``, ``1e-3``) and are kept exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .highprec import HighPrecReal

__all__ = ["AngleExpr", "Num", "Pi", "Neg", "BinOp", "AngleSyntaxError", "parse_angle"]


class AngleSyntaxError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.pos = pos


@dataclass(frozen=True)
class Num:
    value: Fraction

    def evaluate(self, prec: int) -> HighPrecReal:
        return HighPrecReal.from_fraction(self.value, prec)

    def render(self) -> str:
        return _decimal(self.value)


@dataclass(frozen=True)
class Pi:
    def evaluate(self, prec: int) -> HighPrecReal:
        return HighPrecReal.pi(prec)

    def render(self) -> str:
        return "pi"


@dataclass(frozen=True)
class Neg:
    arg: AngleExpr

    def evaluate(self, prec: int) -> HighPrecReal:
        return -self.arg.evaluate(prec)

    def render(self) -> str:
        return f"-({self.arg.render()})"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: AngleExpr
    right: AngleExpr

    def evaluate(self, prec: int) -> HighPrecReal:
        a, b = self.left.evaluate(prec), self.right.evaluate(prec)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if b.possibly_ge(0) and b.possibly_le(0):
            raise ZeroDivisionError("division by zero in angle expression")
        return a / b

    def render(self) -> str:
        return f"({self.left.render()} {self.op} {self.right.render()})"


def _decimal(v: Fraction) -> str:
    """Exact decimal text for v when its expansion terminates, else ``(p/q)``."""
    d = v.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"({v.numerator}/{v.denominator})"
    scale = max(twos, fives)
    digits = str(abs(v.numerator) * 10**scale // v.denominator).rjust(scale + 1, "0")
    text = digits if scale == 0 else f"{digits[:-scale]}.{digits[-scale:]}"
    return "-" + text if v < 0 else text


AngleExpr = Union[Num, Pi, Neg, BinOp]

_TOKEN = re.compile(r"\s*(?:(\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)|(pi|π)|([-+*/()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise AngleSyntaxError("unexpected character", text, start)
        num, pi, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("num", num, start))
        elif pi is not None:
            out.append(("pi", pi, start))
        else:
            out.append(("op", op, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg: str):
        raise AngleSyntaxError(msg, self.text, self.peek()[2])

    def expr(self) -> AngleExpr:
        node = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> AngleExpr:
        node = self.factor()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> AngleExpr:
        kind, val, _ = self.peek()
        if kind == "num":
            self.take()
            return Num(Fraction(val))
        if kind == "pi":
            self.take()
            return Pi()
        if (kind, val) == ("op", "-"):
            self.take()
            return Neg(self.factor())
        if (kind, val) == ("op", "("):
            self.take()
            node = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.fail("expected ')'")
            self.take()
            return node
        self.fail("expected a number, 'pi' or '('" if kind != "end" else "unexpected end of input")


def parse_angle(text: str) -> AngleExpr:
    p = _Parser(text)
    if p.peek()[0] == "end":
        p.fail("empty expression")
    node = p.expr()
    if p.peek()[0] != "end":
        p.fail("unexpected token")
    return node
