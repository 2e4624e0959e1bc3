"""Propositional formulas over named atoms.

Connectives: negation, conjunction, disjunction, exclusive disjunction.
The text syntax uses ``!``, ``&``, ``^``, ``|`` with that binding order
(``!`` tightest) and left-associative binary operators:

    formula  = or-expr
    or-expr  = xor-expr ("|" xor-expr)*
    xor-expr = and-expr ("^" and-expr)*
    and-expr = unary ("&" unary)*
    unary    = "!" unary | name | "(" formula ")"

Atom names match ``[A-Za-z][A-Za-z0-9_]*``. Formula trees are immutable;
equality is structural.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

__all__ = [
    "Atom",
    "Not",
    "And",
    "Or",
    "Xor",
    "Formula",
    "ParseError",
    "parse",
    "render",
    "atoms",
    "desugar_xor",
]


class ParseError(Exception):
    """Syntax error in the formula text, carrying the character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("atom name must be nonempty")


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Xor:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Not, And, Or, Xor]

_ATOM_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in "!&^|()":
            tokens.append((c, c, i))
            i += 1
            continue
        m = _ATOM_RE.match(text, i)
        if m:
            tokens.append(("atom", m.group(0), i))
            i = m.end()
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str, int]]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def or_expr(self) -> Formula:
        node = self.xor_expr()
        while self.peek()[0] == "|":
            self.take()
            node = Or(node, self.xor_expr())
        return node

    def xor_expr(self) -> Formula:
        node = self.and_expr()
        while self.peek()[0] == "^":
            self.take()
            node = Xor(node, self.and_expr())
        return node

    def and_expr(self) -> Formula:
        node = self.unary()
        while self.peek()[0] == "&":
            self.take()
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        kind, text, pos = self.peek()
        if kind == "!":
            self.take()
            return Not(self.unary())
        if kind == "atom":
            self.take()
            return Atom(text)
        if kind == "(":
            self.take()
            node = self.or_expr()
            kind, text, pos = self.take()
            if kind != ")":
                raise ParseError("expected ')'", pos)
            return node
        found = repr(text) if text else "end of input"
        raise ParseError(f"expected an atom, '!', or '(', found {found}", pos)


def parse(text: str) -> Formula:
    """Parse formula text into a tree, or raise :class:`ParseError`."""
    parser = _Parser(_tokenize(text))
    node = parser.or_expr()
    kind, tok, pos = parser.peek()
    if kind != "end":
        raise ParseError(f"unexpected trailing {tok!r}", pos)
    return node


_PREC = {Or: 1, Xor: 2, And: 3}
_OP_TEXT = {Or: "|", Xor: "^", And: "&"}


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), 4)


def render(formula: Formula) -> str:
    """Formula text that parses back to the identical tree.

    Parentheses are emitted only where precedence or left-associativity
    would otherwise regroup the tree.
    """
    if isinstance(formula, Atom):
        return formula.name
    if isinstance(formula, Not):
        inner = render(formula.child)
        if _prec(formula.child) < 4:
            inner = f"({inner})"
        return f"!{inner}"
    p = _prec(formula)
    left = render(formula.left)
    if _prec(formula.left) < p:
        left = f"({left})"
    right = render(formula.right)
    if _prec(formula.right) <= p:
        right = f"({right})"
    return f"{left} {_OP_TEXT[type(formula)]} {right}"


def atoms(formula: Formula) -> tuple[str, ...]:
    """Atom names in first-appearance order."""
    seen: dict[str, None] = {}

    def walk(f: Formula) -> None:
        if isinstance(f, Atom):
            seen.setdefault(f.name)
        elif isinstance(f, Not):
            walk(f.child)
        else:
            walk(f.left)
            walk(f.right)

    walk(formula)
    return tuple(seen)


def desugar_xor(formula: Formula) -> Formula:
    """Rewrite every ``a ^ b`` to ``(a | b) & !(a & b)``, innermost first."""
    if isinstance(formula, Atom):
        return formula
    if isinstance(formula, Not):
        return Not(desugar_xor(formula.child))
    left = desugar_xor(formula.left)
    right = desugar_xor(formula.right)
    if isinstance(formula, Xor):
        return And(Or(left, right), Not(And(left, right)))
    return type(formula)(left, right)
