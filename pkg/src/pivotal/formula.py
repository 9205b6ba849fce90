"""Propositional language over atoms, constants, ``~``, ``&`` and ``|``.

Concrete syntax::

    formula := disj
    disj    := conj ('|' conj)*
    conj    := unary ('&' unary)*
    unary   := '~' unary | atom | 'true' | 'false' | '(' formula ')'

Binary connectives associate to the left; ``~`` binds tighter than ``&``,
which binds tighter than ``|``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Union

IDENT_RE = re.compile(r"[a-zA-Z_][a-zA-Z0-9_]*")
RESERVED = frozenset({"true", "false"})


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class _Ops:
    """Operator sugar: ``~a``, ``a & b``, ``a | b`` build formulas."""

    def __invert__(self) -> "Not":
        return Not(self)

    def __and__(self, other: "Formula") -> "And":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Or":
        return Or(self, other)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Atom(_Ops):
    name: str

    def __post_init__(self):
        if not IDENT_RE.fullmatch(self.name) or self.name in RESERVED:
            raise ValueError(f"invalid atom name {self.name!r}")

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True, repr=False)
class Const(_Ops):
    value: bool

    def __repr__(self):
        return f"Const({self.value})"


@dataclass(frozen=True, repr=False)
class Not(_Ops):
    child: "Formula"

    def __repr__(self):
        return f"Not({self.child!r})"


@dataclass(frozen=True, repr=False)
class Or(_Ops):
    left: "Formula"
    right: "Formula"

    def __repr__(self):
        return f"Or({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class And(_Ops):
    left: "Formula"
    right: "Formula"

    def __repr__(self):
        return f"And({self.left!r}, {self.right!r})"


Formula = Union[Atom, Const, Not, Or, And]

TRUE = Const(True)
FALSE = Const(False)


def atoms_of(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return {f.name}
    if isinstance(f, Const):
        return set()
    if isinstance(f, Not):
        return atoms_of(f.child)
    return atoms_of(f.left) | atoms_of(f.right)


# --- parsing -----------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<ident>[a-zA-Z_][a-zA-Z0-9_]*)|(?P<op>[~&|()]))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unknown token {text[bad]!r}", text, bad)
        tok = m.group("ident") or m.group("op")
        tokens.append((tok, m.start(m.lastgroup)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def take(self) -> str:
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def parse(self) -> Formula:
        if not self.tokens:
            raise FormulaSyntaxError("empty formula", self.text, 0)
        f = self.disj()
        if self.peek() is not None:
            raise FormulaSyntaxError(f"unexpected {self.peek()!r}", self.text, self.pos())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise FormulaSyntaxError("unexpected end of input", self.text, self.pos())
        if tok == "~":
            self.take()
            return Not(self.unary())
        if tok == "(":
            self.take()
            f = self.disj()
            if self.peek() != ")":
                raise FormulaSyntaxError("expected ')'", self.text, self.pos())
            self.take()
            return f
        if tok in ("true", "false"):
            self.take()
            return Const(tok == "true")
        if IDENT_RE.fullmatch(tok):
            self.take()
            return Atom(tok)
        raise FormulaSyntaxError(f"unexpected {tok!r}", self.text, self.pos())


def parse(text: str) -> Formula:
    return _Parser(text).parse()


def parse_list(text: str) -> list[Formula]:
    """Comma-separated formulas; the empty string is the empty list."""
    parts = [p for p in text.split(",")]
    if len(parts) == 1 and not parts[0].strip():
        return []
    return [parse(p) for p in parts]


def read_formula_file(path: str | Path) -> list[Formula]:
    """One formula per line; ``#`` starts a comment; blank lines are skipped."""
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse(line))
    return out


# --- printing ----------------------------------------------------------------

_PREC = {Or: 1, And: 2, Not: 3, Atom: 4, Const: 4}


def to_text(f: Formula) -> str:
    """Render with the fewest parentheses that still parse back to ``f``."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Not):
        inner = to_text(f.child)
        return "~" + (f"({inner})" if _PREC[type(f.child)] < 3 else inner)
    p = _PREC[type(f)]
    sym = " | " if isinstance(f, Or) else " & "
    left = to_text(f.left)
    right = to_text(f.right)
    if _PREC[type(f.left)] < p:
        left = f"({left})"
    # left-associative: a right operand at the same level needs parentheses
    if _PREC[type(f.right)] <= p:
        right = f"({right})"
    return left + sym + right


def disjoin_sets(gamma: Iterable[Formula], delta: Iterable[Formula]) -> set[Formula]:
    """``{a | b : a in gamma, b in delta}``."""
    delta = list(delta)
    return {Or(a, b) for a in gamma for b in delta}


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.child)
    elif isinstance(f, (Or, And)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
