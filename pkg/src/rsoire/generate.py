"""Random expressions and characteristic samples for round-trip testing."""

from __future__ import annotations

import random
import string
from itertools import islice
from typing import Optional, Sequence

from .expr import EPSILON, Expr, Opt, Plus, Star, Sym, alphabet, alt, concat, inter
from .lang import EnumerationCapExceeded, Word, iter_words
from .soa import Sample

DEFAULT_SAMPLE_CAP = 5000


def default_max_len(e: Expr) -> int:
    return len(alphabet(e)) + 2


def characteristic_sample(e: Expr, max_len: Optional[int] = None, cap: int = DEFAULT_SAMPLE_CAP) -> Sample:
    """The first ``cap`` words of ``L(e)`` up to ``max_len`` in (length, lex) order.

    Raises ``EnumerationCapExceeded`` if the cap cuts into words of length <= 2.
    """
    n = default_max_len(e) if max_len is None else max_len
    words = list(islice(iter_words(e, n), cap + 1))
    if len(words) > cap:
        if len(words[cap]) <= 2:
            raise EnumerationCapExceeded(cap)
        words = words[:cap]
    return Sample(tuple(words))


def _split(rng: random.Random, items: Sequence[str], max_parts: int = 3) -> list[list[str]]:
    """Cut ``items`` (already shuffled) into 2..max_parts non-empty runs."""
    k = rng.randint(2, min(max_parts, len(items)))
    cuts = sorted(rng.sample(range(1, len(items)), k - 1))
    bounds = [0, *cuts, len(items)]
    return [list(items[i:j]) for i, j in zip(bounds, bounds[1:])]


class RsoireGenerator:
    """Draws expressions from the restricted grammar

        P ::= S P | P S | S | P '|' S
        S ::= S & S | T
        T ::= T '|' T | T T | _ | a | a* | a+ | a?

    with every symbol used exactly once.  ``depth`` bounds the nesting of
    n-ary operators.
    """

    def __init__(self, rng: random.Random, max_depth: int = 4):
        self.rng = rng
        self.max_depth = max_depth

    def __call__(self, n_symbols: int) -> Expr:
        syms = list(string.ascii_lowercase[:n_symbols])
        self.rng.shuffle(syms)
        return self.p(syms, self.max_depth)

    def p(self, syms: list[str], depth: int) -> Expr:
        rng = self.rng
        if depth == 0 or len(syms) == 1:
            return self.s(syms, depth)
        kind = rng.choice(["s", "s", "concat", "concat", "alt", "opt"])
        if kind == "s":
            return self.s(syms, depth)
        if kind == "opt":
            return alt(self.p(syms, depth - 1), EPSILON)
        groups = _split(rng, syms)
        if kind == "concat":
            hole = rng.randrange(len(groups))
            return concat(*(self.p(g, depth - 1) if i == hole else self.s(g, depth - 1)
                            for i, g in enumerate(groups)))
        return alt(self.p(groups[0], depth - 1), *(self.s(g, depth - 1) for g in groups[1:]))

    def s(self, syms: list[str], depth: int) -> Expr:
        if depth > 0 and len(syms) > 1 and self.rng.random() < 0.5:
            return inter(*(self.t(g, depth - 1) for g in _split(self.rng, syms)))
        return self.t(syms, depth)

    def t(self, syms: list[str], depth: int) -> Expr:
        rng = self.rng
        if len(syms) == 1:
            a = Sym(syms[0])
            return rng.choice([a, a, Star(a), Plus(a), Opt(a)])
        if depth == 0:
            return concat(*(self.t([x], 0) for x in syms))
        groups = _split(rng, syms)
        parts = [self.t(g, depth - 1) for g in groups]
        e = concat(*parts) if rng.random() < 0.5 else alt(*parts)
        if rng.random() < 0.15:
            e = alt(e, EPSILON)
        return e


def random_rsoire(rng: random.Random, n_symbols: int, max_depth: int = 4) -> Expr:
    return RsoireGenerator(rng, max_depth)(n_symbols)


def random_expr(rng: random.Random, symbols: Sequence[str], depth: int) -> Expr:
    """Unrestricted expression; symbols may repeat."""
    if depth == 0 or rng.random() < 0.25:
        return EPSILON if rng.random() < 0.1 else Sym(rng.choice(symbols))
    op = rng.choice(["star", "plus", "opt", "concat", "alt", "inter", "inter"])
    if op in ("star", "plus", "opt"):
        cls = {"star": Star, "plus": Plus, "opt": Opt}[op]
        return cls(random_expr(rng, symbols, depth - 1))
    k = rng.choice([2, 2, 3])
    items = [random_expr(rng, symbols, depth - 1) for _ in range(k)]
    return {"concat": concat, "alt": alt, "inter": inter}[op](*items)


def random_word(rng: random.Random, symbols: Sequence[str], max_len: int) -> Word:
    return tuple(rng.choice(symbols) for _ in range(rng.randint(0, max_len)))

