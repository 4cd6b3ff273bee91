"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace is insignificant)::

    expr    := term (('+' | '-') term)*
    term    := unary ('*' unary)*
    unary   := '-' unary | '+' unary | power
    power   := atom ('^' INT)?
    atom    := NUMBER ('/' NUMBER)? | NAME | '(' expr ')'

so ``^`` binds tighter than unary minus, which binds tighter than ``*``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple

from .poly import Polynomial, UnknownVariableError, VarContext


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(message)
        self.message = message
        self.position = position
        self.text = text

    def __str__(self) -> str:
        return f"{self.message} at position {self.position}"


class Token(NamedTuple):
    kind: str
    value: str
    pos: int


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<NUMBER>\d+)|(?P<NAME>[A-Za-z_][A-Za-z0-9_]*)|(?P<OP>[-+*/^()]))"
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("EOF", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: VarContext):
        self.text = text
        self.ctx = ctx
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ParseError(message, tok.pos, self.text)

    def expect(self, value: str) -> Token:
        if self.tok.value != value or self.tok.kind != "OP":
            found = self.tok.value or "end of input"
            self.error(f"expected {value!r}, found {found!r}")
        return self.advance()

    def parse(self) -> Polynomial:
        result = self.expr()
        if self.tok.kind != "EOF":
            self.error(f"unexpected {self.tok.value!r}")
        return result

    def expr(self) -> Polynomial:
        result = self.term()
        while self.tok.kind == "OP" and self.tok.value in "+-":
            op = self.advance().value
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.unary()
        while self.tok.kind == "OP" and self.tok.value == "*":
            self.advance()
            result = result * self.unary()
        return result

    def unary(self) -> Polynomial:
        if self.tok.kind == "OP" and self.tok.value == "-":
            self.advance()
            return -self.unary()
        if self.tok.kind == "OP" and self.tok.value == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.tok.kind == "OP" and self.tok.value == "^":
            self.advance()
            if self.tok.kind != "NUMBER":
                self.error("exponent must be a non-negative integer literal")
            base = base ** int(self.advance().value)
            if self.tok.kind == "OP" and self.tok.value == "^":
                self.error("chained exponents are ambiguous; use parentheses")
        return base

    def atom(self) -> Polynomial:
        tok = self.tok
        if tok.kind == "NUMBER":
            self.advance()
            value = Fraction(int(tok.value))
            if self.tok.kind == "OP" and self.tok.value == "/":
                self.advance()
                if self.tok.kind != "NUMBER":
                    self.error("denominator of a rational literal must be an integer")
                den_tok = self.advance()
                if int(den_tok.value) == 0:
                    self.error("zero denominator", den_tok)
                value /= int(den_tok.value)
            return self.ctx.const(value)
        if tok.kind == "NAME":
            self.advance()
            if tok.value not in self.ctx:
                raise UnknownVariableError(tok.value)
            return self.ctx.var(tok.value)
        if tok.kind == "OP" and tok.value == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        found = tok.value or "end of input"
        self.error(f"unexpected {found!r}")


def parse_polynomial(text: str, ctx: VarContext) -> Polynomial:
    """Parse ``text`` into a canonical :class:`Polynomial` over ``ctx``."""
    return _Parser(text, ctx).parse()
