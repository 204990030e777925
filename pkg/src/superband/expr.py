"""Small recursive-descent evaluator for algebra expressions.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "." | "/") unary)*
    unary  := ("+" | "-") unary | atom
    atom   := INT | GEN | "(" expr ")" | matrix | NAME "(" args ")"
    matrix := "[" row ("," row)* "]"      row := "[" expr ("," expr)* "]"

Generators are written ``θk`` or ``gk`` (1-based). ``.`` is an alias for
``*`` so the text form of elements (``2*g1.g2``) reads back. Functions:
``str(M)``, ``ber(M)``, ``pow(X, k)``, ``inv(x)``, ``mat(p, q, M)``. A bare
matrix literal of size ``s`` is read as a ``(1|s-1)`` supermatrix.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .grassmann import GrassmannElement
from .supermatrix import Supermatrix, berezinian, supertrace

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<gen>(?:θ|g)\d+)|(?P<name>[A-Za-z_]+)|(?P<op>[-+*/.(),\[\]]))"
)

FUNCTIONS = ("str", "ber", "pow", "inv", "mat")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r} at {pos}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


def max_generator(text: str) -> int:
    """Largest generator index mentioned in ``text`` (0 if none)."""
    found = [int(g[1:]) for kind, g, _ in tokenize(text) if kind == "gen"]
    return max(found, default=0)


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.n = n

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self, value: str | None = None):
        kind, tok, pos = self.peek()
        if kind is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        if value is not None and tok != value:
            raise ParseError(f"expected {value!r} at {pos}, found {tok!r}")
        self.i += 1
        return kind, tok, pos

    def parse(self):
        if not self.tokens:
            raise ParseError("empty expression")
        value = self.expr()
        kind, tok, pos = self.peek()
        if kind is not None:
            raise ParseError(f"unexpected {tok!r} at {pos}")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-"):
            _, op, pos = self.take()
            rhs = self.term()
            value = _binary(op, value, rhs, pos, self.n)
        return value

    def term(self):
        value = self.unary()
        while self.peek()[1] in ("*", ".", "/"):
            _, op, pos = self.take()
            rhs = self.unary()
            value = _binary("*" if op == "." else op, value, rhs, pos, self.n)
        return value

    def unary(self):
        if self.peek()[1] in ("+", "-"):
            _, op, pos = self.take()
            value = _materialize_rows(self.unary(), self.n)
            return -value if op == "-" else value
        return self.atom()

    def atom(self):
        kind, tok, pos = self.take()
        if kind == "int":
            return Fraction(int(tok))
        if kind == "gen":
            k = int(tok[1:])
            if not 1 <= k <= self.n:
                raise ParseError(f"generator {tok!r} at {pos} outside 1..{self.n}")
            return GrassmannElement.generator(self.n, k)
        if tok == "(":
            value = self.expr()
            self.take(")")
            return value
        if tok == "[":
            return self.matrix(pos)
        if kind == "name":
            if tok not in FUNCTIONS:
                raise ParseError(f"unknown function {tok!r} at {pos}")
            self.take("(")
            args = [self.expr()]
            while self.peek()[1] == ",":
                self.take(",")
                args.append(self.expr())
            self.take(")")
            return self.call(tok, args, pos)
        raise ParseError(f"unexpected {tok!r} at {pos}")

    def matrix(self, pos):
        rows = [self.row()]
        while self.peek()[1] == ",":
            self.take(",")
            rows.append(self.row())
        self.take("]")
        return _Rows(rows, pos)

    def row(self):
        self.take("[")
        entries = [self.expr()]
        while self.peek()[1] == ",":
            self.take(",")
            entries.append(self.expr())
        self.take("]")
        return entries

    def call(self, name, args, pos):
        if name == "mat":
            if len(args) != 3 or not isinstance(args[2], _Rows):
                raise ParseError(f"mat(p, q, [[...]]) expected at {pos}")
            return args[2].to_matrix(self.n, _as_int(args[0], pos), _as_int(args[1], pos))
        if name == "pow":
            if len(args) != 2:
                raise ParseError(f"pow takes 2 arguments at {pos}")
            base = _materialize(args[0], self.n)
            k = _as_int(args[1], pos)
            if isinstance(base, Supermatrix) and k < 0:
                raise ParseError("negative matrix powers are not supported")
            return base ** k
        if len(args) != 1:
            raise ParseError(f"{name} takes 1 argument at {pos}")
        arg = _materialize(args[0], self.n)
        if name == "inv":
            if isinstance(arg, Supermatrix):
                raise ParseError("inv() takes an element")
            return arg.inverse()
        if not isinstance(arg, Supermatrix):
            raise ParseError(f"{name}() takes a matrix")
        return supertrace(arg) if name == "str" else berezinian(arg)


class _Rows:
    """Matrix literal whose shape is fixed only when it is used."""

    def __init__(self, rows, pos):
        self.rows = rows
        self.pos = pos

    def to_matrix(self, n: int, p: int | None = None, q: int | None = None) -> Supermatrix:
        size = len(self.rows)
        if any(len(r) != size for r in self.rows):
            raise ParseError(f"matrix literal at {self.pos} is not square")
        if p is None:
            p, q = 1, size - 1
        grid = [[_to_element(x, n) for x in row] for row in self.rows]
        return Supermatrix(p, q, grid, n=n)


def _as_int(x, pos) -> int:
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    raise ParseError(f"integer expected at {pos}")


def _to_element(x, n):
    if isinstance(x, Fraction):
        return GrassmannElement.scalar(n, x)
    if isinstance(x, GrassmannElement):
        return x
    raise ParseError("matrix entries must be algebra elements")


def _materialize_rows(x, n):
    return x.to_matrix(n) if isinstance(x, _Rows) else x


def _materialize(x, n):
    if isinstance(x, _Rows):
        return x.to_matrix(n)
    if isinstance(x, Fraction):
        return GrassmannElement.scalar(n, x)
    return x


def _binary(op, lhs, rhs, pos, n):
    if isinstance(lhs, Fraction) and isinstance(rhs, Fraction):
        if op == "/":
            if rhs == 0:
                raise ParseError(f"division by zero at {pos}")
            return lhs / rhs
        return lhs + rhs if op == "+" else lhs - rhs if op == "-" else lhs * rhs
    lhs, rhs = _materialize(lhs, n), _materialize(rhs, n)
    if op == "/":
        if isinstance(rhs, Supermatrix) or isinstance(lhs, Supermatrix):
            raise ParseError(f"matrix division is not supported (at {pos})")
        return lhs / rhs
    if op == "+":
        return lhs + rhs
    if op == "-":
        return lhs - rhs
    return lhs * rhs


def evaluate(text: str, n: int | None = None):
    """Evaluate ``text``; returns a ``GrassmannElement`` or ``Supermatrix``.

    ``n`` defaults to the largest generator index used (at least 1).
    """
    if n is None:
        n = max(1, max_generator(text))
    try:
        value = _Parser(text, n).parse()
    except ParseError:
        raise
    except TypeError as exc:
        raise ParseError(f"type error in {text!r}: {exc}") from exc
    return _materialize(value, n)


def parse_element(text: str, n: int) -> GrassmannElement:
    value = evaluate(text, n)
    if not isinstance(value, GrassmannElement):
        raise ParseError(f"{text!r} is not an algebra element")
    return value
