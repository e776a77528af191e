"""Language semantics for regular expressions with interleaving.

Two independent routes to membership live here: Brzozowski derivatives
(``derivative``/``matches``, extended with the shuffle rule) and a
compositional bounded enumeration (``enumerate_words``) built directly
from the shuffle recurrence.  Tests cross-check one against the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from .expr import (
    EMPTY,
    EPSILON,
    Alt,
    Concat,
    Empty,
    Epsilon,
    Expr,
    Inter,
    Opt,
    Plus,
    RsoireError,
    Star,
    Sym,
    alphabet,
)

Word = tuple[str, ...]

DEFAULT_WORD_CAP = 10**6


class EnumerationCapExceeded(RsoireError):
    def __init__(self, cap: int):
        super().__init__(f"bounded language exceeds {cap} words; lower --max-len or raise the cap")
        self.cap = cap


def word_key(w: Word) -> tuple[int, Word]:
    """Sort key for (length, lexicographic) order."""
    return (len(w), w)


# --------------------------------------------------------------------------
# Shuffle

@lru_cache(maxsize=65536)
def _shuffle(u: Word, v: Word) -> frozenset[Word]:
    if not u:
        return frozenset([v])
    if not v:
        return frozenset([u])
    left = {(u[0],) + w for w in _shuffle(u[1:], v)}
    right = {(v[0],) + w for w in _shuffle(u, v[1:])}
    return frozenset(left | right)


def shuffle(u: Sequence[str], v: Sequence[str]) -> frozenset[Word]:
    """All interleavings of ``u`` and ``v`` that keep each word's own order."""
    return _shuffle(tuple(u), tuple(v))


# --------------------------------------------------------------------------
# Derivatives

def nullable(e: Expr) -> bool:
    if isinstance(e, (Epsilon, Star, Opt)):
        return True
    if isinstance(e, (Empty, Sym)):
        return False
    if isinstance(e, Plus):
        return nullable(e.arg)
    if isinstance(e, Alt):
        return any(nullable(c) for c in e.items)
    return all(nullable(c) for c in e.items)


def _cat(items: Iterable[Expr]) -> Expr:
    out: list[Expr] = []
    for item in items:
        if isinstance(item, Empty):
            return EMPTY
        if isinstance(item, Epsilon):
            continue
        out.extend(item.items if isinstance(item, Concat) else (item,))
    if not out:
        return EPSILON
    return out[0] if len(out) == 1 else Concat(tuple(out))


def _union(items: Iterable[Expr]) -> Expr:
    out: list[Expr] = []
    for item in items:
        for part in item.items if isinstance(item, Alt) else (item,):
            if not isinstance(part, Empty) and part not in out:
                out.append(part)
    if not out:
        return EMPTY
    return out[0] if len(out) == 1 else Alt(tuple(out))


def _shuf(items: Iterable[Expr]) -> Expr:
    out: list[Expr] = []
    for item in items:
        if isinstance(item, Empty):
            return EMPTY
        if isinstance(item, Epsilon):
            continue
        out.extend(item.items if isinstance(item, Inter) else (item,))
    if not out:
        return EPSILON
    return out[0] if len(out) == 1 else Inter(tuple(out))


@lru_cache(maxsize=None)
def derivative(e: Expr, a: str) -> Expr:
    """Expression for ``{w : a w in L(e)}``; dead branches collapse to ``EMPTY``."""
    if isinstance(e, (Epsilon, Empty)):
        return EMPTY
    if isinstance(e, Sym):
        return EPSILON if e.name == a else EMPTY
    if isinstance(e, (Star, Plus)):
        return _cat([derivative(e.arg, a), Star(e.arg)])
    if isinstance(e, Opt):
        return derivative(e.arg, a)
    if isinstance(e, Alt):
        return _union(derivative(c, a) for c in e.items)
    if isinstance(e, Concat):
        head, rest = e.items[0], _cat(e.items[1:])
        first = _cat([derivative(head, a), rest])
        if nullable(head):
            return _union([first, derivative(rest, a)])
        return first
    if isinstance(e, Inter):
        # d(r & s) = d(r) & s | r & d(s)
        branches = []
        for i, c in enumerate(e.items):
            branches.append(_shuf(e.items[:i] + (derivative(c, a),) + e.items[i + 1:]))
        return _union(branches)
    raise TypeError(f"not an expression: {e!r}")


def matches(e: Expr, w: Sequence[str]) -> bool:
    for a in w:
        e = derivative(e, a)
        if isinstance(e, Empty):
            return False
    return nullable(e)


# --------------------------------------------------------------------------
# Compositional enumeration (the oracle)

def _check(words: set, cap: int) -> set:
    if len(words) > cap:
        raise EnumerationCapExceeded(cap)
    return words


def _bounded(e: Expr, n: int, cap: int) -> set[Word]:
    if isinstance(e, Epsilon):
        return {()}
    if isinstance(e, Empty):
        return set()
    if isinstance(e, Sym):
        return {(e.name,)} if n >= 1 else set()
    if isinstance(e, Opt):
        return _bounded(e.arg, n, cap) | {()}
    if isinstance(e, Alt):
        out: set[Word] = set()
        for c in e.items:
            out |= _bounded(c, n, cap)
            _check(out, cap)
        return out
    if isinstance(e, Concat):
        out = {()}
        for c in e.items:
            part = _bounded(c, n, cap)
            out = _check({u + v for u in out for v in part if len(u) + len(v) <= n}, cap)
        return out
    if isinstance(e, Inter):
        out = {()}
        for c in e.items:
            part = _bounded(c, n, cap)
            nxt: set[Word] = set()
            for u in out:
                for v in part:
                    if len(u) + len(v) <= n:
                        nxt |= _shuffle(u, v)
                _check(nxt, cap)
            out = nxt
        return out
    if isinstance(e, (Star, Plus)):
        step = {w for w in _bounded(e.arg, n, cap) if w}
        out = {()}
        frontier = {()}
        while frontier:
            frontier = {u + v for u in frontier for v in step if len(u) + len(v) <= n} - out
            out |= frontier
            _check(out, cap)
        if isinstance(e, Plus) and () not in _bounded(e.arg, 0, cap):
            out.discard(())
        return out
    raise TypeError(f"not an expression: {e!r}")


def enumerate_words(e: Expr, max_len: int, cap: int = DEFAULT_WORD_CAP) -> frozenset[Word]:
    """Every word of ``L(e)`` with length at most ``max_len``.

    Built bottom-up from the operators; interleaving goes through ``shuffle``.
    Raises ``EnumerationCapExceeded`` when an intermediate set grows past ``cap``.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    return frozenset(_bounded(e, max_len, cap))


def sorted_words(words: Iterable[Word]) -> list[Word]:
    return sorted(words, key=word_key)


# --------------------------------------------------------------------------
# Derivative-driven generation and counting

def iter_words(e: Expr, max_len: int, symbols: Optional[Sequence[str]] = None) -> Iterator[Word]:
    """Yield the words of ``L(e)`` up to ``max_len`` in (length, lex) order, lazily."""
    sigma = sorted(symbols if symbols is not None else alphabet(e))
    layer: list[tuple[Word, Expr]] = [((), e)]
    for length in range(max_len + 1):
        for w, state in layer:
            if nullable(state):
                yield w
        if length == max_len:
            return
        nxt = []
        for w, state in layer:
            for a in sigma:
                d = derivative(state, a)
                if not isinstance(d, Empty):
                    nxt.append((w + (a,), d))
        layer = nxt
        if not layer:
            return


def count_words(e: Expr, max_len: int) -> list[int]:
    """Number of words of each length ``0..max_len`` in ``L(e)``."""
    sigma = sorted(alphabet(e))
    counts = [0] * (max_len + 1)
    weights: dict[Expr, int] = {e: 1}
    for length in range(max_len + 1):
        counts[length] = sum(k for state, k in weights.items() if nullable(state))
        if length == max_len:
            break
        nxt: dict[Expr, int] = {}
        for state, k in weights.items():
            for a in sigma:
                d = derivative(state, a)
                if not isinstance(d, Empty):
                    nxt[d] = nxt.get(d, 0) + k
        weights = nxt
    return counts


# --------------------------------------------------------------------------
# Bounded equivalence

@dataclass(frozen=True)
class EquivResult:
    equal: bool
    max_len: int
    counterexample: Optional[Word] = None

    def __bool__(self) -> bool:
        return self.equal


def bounded_equiv(e1: Expr, e2: Expr, max_len: int) -> EquivResult:
    """Compare ``L(e1)`` and ``L(e2)`` on words up to ``max_len``.

    Explores pairs of derivatives breadth-first in (length, lex) order, so the
    first disagreement found is the least word in the symmetric difference.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    sigma = sorted(alphabet(e1) | alphabet(e2))
    seen = {(e1, e2)}
    layer: list[tuple[Word, Expr, Expr]] = [((), e1, e2)]
    for length in range(max_len + 1):
        for w, x, y in layer:
            if nullable(x) != nullable(y):
                return EquivResult(False, max_len, w)
        if length == max_len:
            break
        nxt = []
        for w, x, y in layer:
            for a in sigma:
                pair = (derivative(x, a), derivative(y, a))
                if pair in seen or (isinstance(pair[0], Empty) and isinstance(pair[1], Empty)):
                    continue
                seen.add(pair)
                nxt.append((w + (a,), *pair))
        layer = nxt
    return EquivResult(True, max_len)

