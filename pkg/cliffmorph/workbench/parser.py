"""Recursive-descent parser for multivector expressions.

Grammar::

    expr   := ["-"] term (("+" | "-") term)*
    term   := unary (("*" | "^" | "." | "v" | "t") unary)*
    unary  := ("rev" | "gi" | "conj" | "star") "(" expr ")"
            | "grade" "(" expr "," int ")"
            | atom
    atom   := rational | blade | "(" expr ")"
    blade  := "e" digit+        (strictly increasing generator indices)
    rational := int ("/" posint)?

All operators inside a term share one precedence level and associate to the
left; mixed products need parentheses.
"""

from __future__ import annotations

import re
from collections.abc import Iterator
from fractions import Fraction
from typing import NamedTuple

from .models import (
    Binary,
    BladeAtom,
    Expression,
    GradeOf,
    Literal,
    ParseError,
    SessionConfig,
    Unary,
)

MAX_DEPTH = 128

FUNCTIONS = frozenset({"rev", "gi", "conj", "star"})
TERM_OPERATORS = frozenset({"*", "^", ".", "v", "t"})

_TOKEN = re.compile(
    r"(?P<space>\s+)|(?P<blade>e\d+)|(?P<int>\d+)|(?P<name>[A-Za-z]+)"
    r"|(?P<symbol>[-+*^.(),/])",
    re.ASCII,
)


class Token(NamedTuple):
    """Lexical token with its offset in the input."""

    kind: str  # blade, int, name, symbol or end
    text: str
    position: int


def tokenize(text: str) -> Iterator[Token]:
    """Split ``text`` into tokens, ending with an ``end`` token."""
    position = 0
    while position < len(text):
        match = _TOKEN.match(text, position)
        if match is None:
            raise ParseError("Unexpected character", position, text[position])
        kind = match.lastgroup or ""
        if kind != "space":
            yield Token(kind, match.group(), position)
        position = match.end()
    yield Token("end", "", len(text))


class Parser:
    """Recursive-descent parser over the token list of one expression."""

    def __init__(self, text: str, n: int) -> None:
        self.tokens = list(tokenize(text))
        self.index = 0
        self.n = n
        self.depth = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        if token.kind != "end":
            self.index += 1
        return token

    def expect(self, text: str) -> Token:
        """Consume a token with text ``text`` or raise."""
        token = self.current
        if token.text != text or token.kind == "end":
            found = token.text or "end of input"
            raise ParseError(f"Expected {text!r}", token.position, found)
        return self.advance()

    def error(self, message: str, token: Token | None = None) -> ParseError:
        """ParseError positioned at ``token``, default the current one."""
        token = token or self.current
        return ParseError(message, token.position, token.text or "end of input")

    def parse(self) -> Expression:
        """Whole input as one expression."""
        expr = self.expression()
        if self.current.kind != "end":
            raise self.error("Unexpected token")
        return expr

    def expression(self) -> Expression:
        """Sum or difference of terms."""
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self.error(f"Expression nested deeper than {MAX_DEPTH}")
        negate = self.current.kind == "symbol" and self.current.text == "-"
        if negate:
            self.advance()
        left = self.term()
        if negate:
            left = Unary("neg", left)
        while self.current.kind == "symbol" and self.current.text in ("+", "-"):
            op = self.advance().text
            left = Binary(op, left, self.term())
        self.depth -= 1
        return left

    def term(self) -> Expression:
        """Product-like infix chain of unary operands."""
        left = self.unary()
        while self.current.text in TERM_OPERATORS and self.current.kind in (
            "symbol",
            "name",
        ):
            op = self.advance().text
            left = Binary(op, left, self.unary())
        return left

    def unary(self) -> Expression:
        """Function call, grade projection or an atom."""
        token = self.current
        if token.kind == "name" and token.text in FUNCTIONS:
            self.advance()
            self.expect("(")
            operand = self.expression()
            self.expect(")")
            return Unary(token.text, operand)
        if token.kind == "name" and token.text == "grade":
            self.advance()
            self.expect("(")
            operand = self.expression()
            self.expect(",")
            k_token = self.current
            if k_token.kind != "int":
                raise self.error("Expected a grade")
            k = int(self.advance().text)
            if k > self.n:
                raise self.error(f"Grade outside 0..{self.n}", k_token)
            self.expect(")")
            return GradeOf(operand, k)
        return self.atom()

    def atom(self) -> Expression:
        """Rational literal, blade or parenthesised expression."""
        token = self.current
        if token.kind == "int":
            self.advance()
            value = Fraction(int(token.text))
            if self.current.kind == "symbol" and self.current.text == "/":
                self.advance()
                denominator = self.current
                if denominator.kind != "int" or int(denominator.text) == 0:
                    raise self.error("Expected a positive denominator")
                self.advance()
                value /= int(denominator.text)
            return Literal(value)
        if token.kind == "blade":
            self.advance()
            return BladeAtom(self.blade_mask(token))
        if token.kind == "symbol" and token.text == "(":
            self.advance()
            inner = self.expression()
            self.expect(")")
            return inner
        if token.kind == "name":
            raise self.error("Unknown name", token)
        raise self.error("Expected a number, blade or '('", token)

    def blade_mask(self, token: Token) -> int:
        """Mask of a blade token, checked against the dimension."""
        indices = [int(c) for c in token.text[1:]]
        if any(b <= a for a, b in zip(indices, indices[1:], strict=False)):
            raise self.error("Blade indices must be strictly increasing", token)
        if max(indices) >= self.n:
            raise self.error(f"Blade index outside 0..{self.n - 1}", token)
        mask = 0
        for index in indices:
            mask |= 1 << index
        return mask


def parse(text: str, cfg: SessionConfig) -> Expression:
    """Parse ``text`` for the signature of ``cfg``; raise ParseError on bad input."""
    return Parser(text, cfg.n).parse()
