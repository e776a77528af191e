"""Regular expressions with interleaving: AST, concrete syntax and classification.

Concrete syntax, loosest binding first::

    e | e        alternation
    e & e        interleaving (shuffle)
    e e          concatenation (juxtaposition)
    e* e+ e?     postfix repetition / option
    (e)  _  name grouping, epsilon, symbol

Symbols are tokens over ``[A-Za-z0-9_:.-]``; the bare token ``_`` is epsilon.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator, Union

SYMBOL_RE = re.compile(r"[A-Za-z0-9_:.-]+")
_TOKEN_RE = re.compile(r"\s+|[A-Za-z0-9_:.-]+|[()|&*+?]")


class RsoireError(Exception):
    """Base class for all errors raised by this package."""


class ExprSyntaxError(RsoireError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


def is_symbol_name(name: str) -> bool:
    return bool(SYMBOL_RE.fullmatch(name)) and name.strip("_") != ""


# --------------------------------------------------------------------------
# AST

class _Node:
    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Epsilon(_Node):
    pass


@dataclass(frozen=True)
class Empty(_Node):
    """Empty language. Internal to the derivative engine; has no syntax."""


@dataclass(frozen=True)
class Sym(_Node):
    name: str


@dataclass(frozen=True)
class Star(_Node):
    arg: "Expr"


@dataclass(frozen=True)
class Plus(_Node):
    arg: "Expr"


@dataclass(frozen=True)
class Opt(_Node):
    arg: "Expr"


@dataclass(frozen=True)
class Concat(_Node):
    items: tuple["Expr", ...]


@dataclass(frozen=True)
class Alt(_Node):
    items: tuple["Expr", ...]


@dataclass(frozen=True)
class Inter(_Node):
    items: tuple["Expr", ...]


Expr = Union[Epsilon, Empty, Sym, Star, Plus, Opt, Concat, Alt, Inter]
Unary = (Star, Plus, Opt)
Nary = (Concat, Alt, Inter)

EPSILON = Epsilon()
EMPTY = Empty()


def _nary(cls, items) -> Expr:
    flat: list[Expr] = []
    for item in items:
        if isinstance(item, cls):
            flat.extend(item.items)
        else:
            flat.append(item)
    if not flat:
        raise ValueError(f"{cls.__name__} needs at least one operand")
    if len(flat) == 1:
        return flat[0]
    return cls(tuple(flat))


def concat(*items: Expr) -> Expr:
    """Flattening constructor; a single operand is returned unchanged."""
    return _nary(Concat, items)


def alt(*items: Expr) -> Expr:
    return _nary(Alt, items)


def inter(*items: Expr) -> Expr:
    return _nary(Inter, items)


def sym(name: str) -> Sym:
    if not is_symbol_name(name):
        raise ValueError(f"invalid symbol name {name!r}")
    return Sym(name)


def children(e: Expr) -> tuple[Expr, ...]:
    if isinstance(e, Unary):
        return (e.arg,)
    if isinstance(e, Nary):
        return e.items
    return ()


def walk(e: Expr) -> Iterator[Expr]:
    """Pre-order traversal."""
    stack = [e]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def symbols(e: Expr) -> list[str]:
    """Symbol names at the leaves, left to right, with repetitions."""
    return [n.name for n in walk(e) if isinstance(n, Sym)]


def alphabet(e: Expr) -> frozenset[str]:
    return frozenset(symbols(e))


def is_single_occurrence(e: Expr) -> bool:
    names = symbols(e)
    return len(names) == len(set(names))


# --------------------------------------------------------------------------
# Parsing

def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
        if not m.group().isspace():
            tokens.append((m.group(), pos))
        pos = m.end()
    return tokens


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def offset(self) -> int:
        if self.i < len(self.tokens):
            return _byte_offset(self.text, self.tokens[self.i][1])
        return len(self.text.encode("utf-8"))

    def error(self, message: str):
        raise ExprSyntaxError(message, self.offset())

    def parse(self) -> Expr:
        if not self.tokens:
            raise ExprSyntaxError("empty input", 0)
        e = self.alternation()
        if self.peek() is not None:
            self.error(f"unexpected {self.peek()!r}")
        return e

    def alternation(self) -> Expr:
        items = [self.interleaving()]
        while self.peek() == "|":
            self.i += 1
            items.append(self.interleaving())
        return alt(*items)

    def interleaving(self) -> Expr:
        items = [self.concatenation()]
        while self.peek() == "&":
            self.i += 1
            items.append(self.concatenation())
        return inter(*items)

    def concatenation(self) -> Expr:
        items = [self.postfix()]
        while self.peek() is not None and self.peek() not in "|&)*+?":
            items.append(self.postfix())
        return concat(*items)

    def postfix(self) -> Expr:
        e = self.atom()
        while self.peek() in ("*", "+", "?"):
            op = self.tokens[self.i][0]
            self.i += 1
            e = {"*": Star, "+": Plus, "?": Opt}[op](e)
        return e

    def atom(self) -> Expr:
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of input")
        if tok == "(":
            self.i += 1
            e = self.alternation()
            if self.peek() != ")":
                self.error("expected ')'")
            self.i += 1
            return e
        if tok == "_":
            self.i += 1
            return EPSILON
        if SYMBOL_RE.fullmatch(tok):
            if not is_symbol_name(tok):
                self.error(f"reserved token {tok!r}")
            self.i += 1
            return Sym(tok)
        self.error(f"unexpected {tok!r}")


def parse(text: str) -> Expr:
    """Parse concrete syntax into a flattened AST.

    >>> parse("a+|b+&c*")
    Alt(items=(Plus(arg=Sym(name='a')), Inter(items=(Plus(arg=Sym(name='b')), Star(arg=Sym(name='c'))))))
    """
    return _Parser(text).parse()


# --------------------------------------------------------------------------
# Printing

_LEVEL = {Alt: 0, Inter: 1, Concat: 2, Star: 3, Plus: 3, Opt: 3}
_SEP = {Alt: "|", Inter: "&", Concat: " "}
_POSTFIX = {Star: "*", Plus: "+", Opt: "?"}


def _level(e: Expr) -> int:
    return _LEVEL.get(type(e), 4)


def _wrap(child: Expr, parent: Expr) -> str:
    text = to_text(child)
    if isinstance(parent, Unary):
        need = _level(child) < 3
    else:
        need = _level(child) <= _level(parent)
        # a juxtaposition inside & reads ambiguously; keep it grouped
        need = need or (isinstance(parent, Inter) and isinstance(child, Concat))
    return f"({text})" if need else text


def to_text(e: Expr) -> str:
    """Canonical concrete syntax."""
    if isinstance(e, Epsilon):
        return "_"
    if isinstance(e, Sym):
        return e.name
    if isinstance(e, Unary):
        return _wrap(e.arg, e) + _POSTFIX[type(e)]
    if isinstance(e, Nary):
        return _SEP[type(e)].join(_wrap(c, e) for c in e.items)
    raise ValueError(f"{e!r} has no concrete syntax")


# --------------------------------------------------------------------------
# Normalization

def _normalize_unary(e: Expr) -> Expr:
    inner = e.arg
    if isinstance(e, Star) and isinstance(inner, Unary):
        return Star(inner.arg)
    if isinstance(e, Plus) and isinstance(inner, (Star, Opt)):
        return Star(inner.arg)
    if isinstance(e, Plus) and isinstance(inner, Plus):
        return inner
    if isinstance(e, Opt) and isinstance(inner, Plus):
        return Star(inner.arg)
    if isinstance(e, Opt) and isinstance(inner, (Star, Opt)):
        return inner
    return e


def normalize(e: Expr) -> Expr:
    """Collapse stacked unary operators and flatten n-ary nodes, preserving the language."""
    if isinstance(e, Unary):
        arg = normalize(e.arg)
        out = _normalize_unary(type(e)(arg))
        while True:
            nxt = _normalize_unary(out) if isinstance(out, Unary) else out
            if nxt == out:
                return out
            out = nxt
    if isinstance(e, Nary):
        return _nary(type(e), [normalize(c) for c in e.items])
    return e


# --------------------------------------------------------------------------
# Classification against the restricted grammar
#
#   P ::= S P | P S | S | P '|' S
#   S ::= S & S | T
#   T ::= T '|' T | T T | _ | a | a* | a+ | a?

class SoClass(enum.Enum):
    NOT_SOIRE = "not-soire"
    SOIRE_ONLY = "soire"
    RSOIRE = "rsoire"

    def __str__(self) -> str:
        return self.value


def _desugar(e: Expr) -> Expr:
    if isinstance(e, Opt):
        if isinstance(e.arg, Sym):
            return e
        return alt(_desugar(e.arg), EPSILON)
    if isinstance(e, (Star, Plus)):
        return type(e)(_desugar(e.arg))
    if isinstance(e, Nary):
        return _nary(type(e), [_desugar(c) for c in e.items])
    return e


def _is_t(e: Expr) -> bool:
    if isinstance(e, (Epsilon, Sym)):
        return True
    if isinstance(e, Unary):
        return isinstance(e.arg, Sym)
    if isinstance(e, (Alt, Concat)):
        return all(_is_t(c) for c in e.items)
    return False


def _is_s(e: Expr) -> bool:
    if isinstance(e, Inter):
        return all(_is_s(c) for c in e.items)
    return _is_t(e)


def _is_p(e: Expr) -> bool:
    if _is_s(e):
        return True
    if isinstance(e, (Concat, Alt)):
        rest = [c for c in e.items if not _is_s(c)]
        return not rest or (len(rest) == 1 and _is_p(rest[0]))
    return False


def classify(e: Expr) -> SoClass:
    if not is_single_occurrence(e):
        return SoClass.NOT_SOIRE
    if _is_p(_desugar(normalize(e))):
        return SoClass.RSOIRE
    return SoClass.SOIRE_ONLY


def repetition_on_composite(e: Expr) -> list[Expr]:
    """Star/Plus nodes whose argument is not a single symbol."""
    return [n for n in walk(e) if isinstance(n, (Star, Plus)) and not isinstance(n.arg, Sym)]
