"""Brute-force reference semantics, independent of the library's engines."""

from functools import lru_cache
from itertools import combinations, permutations, product

from rsoire.expr import Alt, Concat, Epsilon, Inter, Opt, Plus, Star, Sym, concat, inter


@lru_cache(maxsize=None)
def brute_match(e, w) -> bool:
    """Membership by trying every split (concatenation) and every position subset (interleaving)."""
    if isinstance(e, Epsilon):
        return w == ()
    if isinstance(e, Sym):
        return w == (e.name,)
    if isinstance(e, Opt):
        return w == () or brute_match(e.arg, w)
    if isinstance(e, Alt):
        return any(brute_match(c, w) for c in e.items)
    if isinstance(e, Concat):
        head, rest = e.items[0], concat(*e.items[1:])
        return any(brute_match(head, w[:i]) and brute_match(rest, w[i:]) for i in range(len(w) + 1))
    if isinstance(e, Inter):
        head, rest = e.items[0], inter(*e.items[1:])
        n = len(w)
        for k in range(n + 1):
            for pos in combinations(range(n), k):
                chosen = set(pos)
                left = tuple(w[i] for i in pos)
                right = tuple(w[i] for i in range(n) if i not in chosen)
                if brute_match(head, left) and brute_match(rest, right):
                    return True
        return False
    if isinstance(e, Star):
        return w == () or any(brute_match(e.arg, w[:i]) and brute_match(e, w[i:]) for i in range(1, len(w) + 1))
    if isinstance(e, Plus):
        return any(brute_match(e.arg, w[:i]) and brute_match(Star(e.arg), w[i:]) for i in range(len(w) + 1))
    raise TypeError(e)


def all_words(symbols, max_len):
    for n in range(max_len + 1):
        yield from product(sorted(symbols), repeat=n)


def brute_language(e, symbols, max_len):
    return {w for w in all_words(symbols, max_len) if brute_match(e, w)}


def brute_shuffle(u, v):
    """Interleavings by choosing which positions of the result hold ``u``."""
    n = len(u) + len(v)
    out = set()
    for pos in combinations(range(n), len(u)):
        iu, iv = iter(u), iter(v)
        out.add(tuple(next(iu) if i in pos else next(iv) for i in range(n)))
    return out


def brute_orders(words):
    """Pairs (x, y) with some occurrence of x strictly before some occurrence of y."""
    out = set()
    for w in words:
        for i, j in combinations(range(len(w)), 2):
            if w[i] != w[j]:
                out.add((w[i], w[j]))
    return out


def brute_lex_least_mis(vertices, edges):
    """Largest independent set; ties broken by the sorted name sequence."""
    vs = sorted(vertices)
    for k in range(len(vs), 0, -1):
        for combo in combinations(vs, k):
            if all(frozenset(p) not in edges for p in combinations(combo, 2)):
                return frozenset(combo)
    return frozenset()


def permutations_with(constraints, symbols):
    """Orderings of ``symbols`` respecting every (before, after) pair."""
    out = set()
    for p in permutations(symbols):
        if all(p.index(x) < p.index(y) for x, y in constraints):
            out.add(p)
    return out
