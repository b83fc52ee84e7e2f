"""Tokenizer and recursive-descent parser for the expression grammar.

Grammar (``^`` binds tightest, then unary minus, then ``* /``, then ``+ -``)::

    relation := expr ['=' expr]
    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := ('-' | '+') unary | power
    power    := atom ['^' unary]
    atom     := INT | NAME | '(' expr ')'

Parsing produces a small tuple AST; ``evaluate`` folds it with a
caller-supplied name resolver, so the same front-end serves scalars,
elements of the base ring and noncommutative words.
"""

from __future__ import annotations

import re
from typing import Callable, NamedTuple

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(.))", re.S)


class Token(NamedTuple):
    kind: str  # 'int' | 'name' | 'op' | 'end'
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(Token("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(Token("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()=":
                raise ParseError(f"unexpected character {ch!r}", text, m.start(3))
            tokens.append(Token("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        return ParseError(msg, self.text, tok.pos)

    def expect(self, value: str) -> Token:
        tok = self.peek()
        if tok.kind != "op" or tok.value != value:
            found = "end of input" if tok.kind == "end" else repr(tok.value)
            raise self.error(f"expected {value!r}, found {found}")
        return self.next()

    def expr(self):
        node = self.term()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value in "+-":
                self.next()
                rhs = self.term()
                node = ("add" if tok.value == "+" else "sub", node, rhs, tok.pos)
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value in "*/":
                self.next()
                rhs = self.unary()
                node = ("mul" if tok.value == "*" else "div", node, rhs, tok.pos)
            else:
                return node

    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.value in "+-":
            self.next()
            operand = self.unary()
            return ("neg", operand, tok.pos) if tok.value == "-" else operand
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.value == "^":
            self.next()
            return ("pow", base, self.unary(), tok.pos)
        return base

    def atom(self):
        tok = self.peek()
        if tok.kind == "int":
            self.next()
            return ("num", int(tok.value), tok.pos)
        if tok.kind == "name":
            self.next()
            return ("name", tok.value, tok.pos)
        if tok.kind == "op" and tok.value == "(":
            self.next()
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if tok.kind == "end" else repr(tok.value)
        raise self.error(f"unexpected {found}")


def parse(text: str):
    """Parse a single expression into an AST."""
    p = _Parser(text)
    node = p.expr()
    if p.peek().kind != "end":
        raise p.error(f"unexpected {p.peek().value!r}")
    return node


def parse_relation(text: str):
    """Parse ``lhs = rhs`` (or a bare ``expr``, read as ``expr = 0``)."""
    p = _Parser(text)
    lhs = p.expr()
    rhs = None
    tok = p.peek()
    if tok.kind == "op" and tok.value == "=":
        p.next()
        rhs = p.expr()
    if p.peek().kind != "end":
        raise p.error(f"unexpected {p.peek().value!r}")
    return lhs, rhs


def names_in(node) -> set[str]:
    kind = node[0]
    if kind == "name":
        return {node[1]}
    if kind == "num":
        return set()
    out: set[str] = set()
    for child in node[1:-1]:
        out |= names_in(child)
    return out


def _int_value(node, text: str) -> int:
    kind = node[0]
    if kind == "num":
        return node[1]
    if kind == "neg":
        return -_int_value(node[1], text)
    if kind in ("add", "sub", "mul"):
        a = _int_value(node[1], text)
        b = _int_value(node[2], text)
        return a + b if kind == "add" else a - b if kind == "sub" else a * b
    pos = node[-1]
    raise ParseError("exponent must be an integer constant", text, pos)


def evaluate(node, resolve: Callable[[str, int], object], number: Callable[[int], object], text: str = ""):
    """Fold an AST.

    ``resolve(name, pos)`` maps identifiers to values and ``number(n)`` maps
    integer literals; values combine with the ordinary Python operators.
    Errors raised by ``resolve`` should be ``ParseError``; other exceptions
    propagate unchanged.
    """

    def ev(nd):
        kind = nd[0]
        if kind == "num":
            return number(nd[1])
        if kind == "name":
            return resolve(nd[1], nd[2])
        if kind == "neg":
            return -ev(nd[1])
        if kind == "pow":
            n = _int_value(nd[2], text)
            return ev(nd[1]) ** n
        a = ev(nd[1])
        b = ev(nd[2])
        if kind == "add":
            return a + b
        if kind == "sub":
            return a - b
        if kind == "mul":
            return a * b
        try:
            return a / b
        except TypeError:
            raise ParseError("division is only allowed by scalars", text, nd[3]) from None

    return ev(node)
