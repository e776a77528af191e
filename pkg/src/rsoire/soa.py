"""Single-occurrence automata built from positive samples.

Internal nodes are identified by the first-occurrence rank of their
(least) symbol in the sample, so ordering nodes by id is the same as
ordering them by where they first show up.  Surgery never mutates; every
operation returns a new ``Soa``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .expr import Expr, RsoireError, Sym, alphabet, is_symbol_name, to_text
from .lang import Word

Q0 = -1
QF = -2
Node = int
Edge = tuple[Node, Node]


class EmptySampleError(RsoireError):
    pass


@dataclass(frozen=True)
class Sample:
    words: tuple[Word, ...]

    def __post_init__(self):
        for w in self.words:
            for a in w:
                if not is_symbol_name(a):
                    raise ValueError(f"invalid symbol {a!r}")

    @classmethod
    def of(cls, words: Iterable[Sequence[str] | str]) -> "Sample":
        """Build from token sequences; a plain string is split on whitespace."""
        return cls(tuple(tuple(w.split()) if isinstance(w, str) else tuple(w) for w in words))

    @property
    def alphabet(self) -> tuple[str, ...]:
        """Symbols in order of first occurrence."""
        seen: dict[str, None] = {}
        for w in self.words:
            for a in w:
                seen.setdefault(a)
        return tuple(seen)

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)


@dataclass(frozen=True)
class Soa:
    labels: Mapping[Node, Expr]
    edges: frozenset[Edge]
    _succ: dict = field(init=False, repr=False, compare=False, hash=False)
    _pred: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        succ: dict[Node, set] = {n: set() for n in self.nodes}
        pred: dict[Node, set] = {n: set() for n in self.nodes}
        for x, y in self.edges:
            if x not in succ or y not in pred:
                raise ValueError(f"edge {x}->{y} touches an unknown node")
            succ[x].add(y)
            pred[y].add(x)
        object.__setattr__(self, "_succ", succ)
        object.__setattr__(self, "_pred", pred)

    @property
    def internal(self) -> list[Node]:
        return sorted(self.labels)

    @property
    def nodes(self) -> list[Node]:
        return [Q0, *self.internal, QF]

    def label(self, v: Node) -> Expr:
        return self.labels[v]

    def _check(self, v: Node):
        if v not in self._succ:
            raise KeyError(f"unknown node {v}")

    def succ(self, v: Node) -> frozenset[Node]:
        """Successors of ``v``, not counting a self-loop."""
        self._check(v)
        return frozenset(self._succ[v] - {v})

    def pred(self, v: Node) -> frozenset[Node]:
        self._check(v)
        return frozenset(self._pred[v] - {v})

    def has_loop(self, v: Node) -> bool:
        self._check(v)
        return v in self._succ[v]

    def name(self, v: Node) -> str:
        if v == Q0:
            return "q0"
        if v == QF:
            return "qf"
        return to_text(self.labels[v])

    def replace(self, labels: Mapping[Node, Expr] | None = None, edges: Iterable[Edge] | None = None) -> "Soa":
        return Soa(dict(self.labels if labels is None else labels),
                   frozenset(self.edges if edges is None else edges))


def build_2t_inf(sample: Sample) -> Soa:
    """SOA whose edges are exactly the adjacent symbol pairs seen in the sample."""
    if not sample.words:
        raise EmptySampleError("sample is empty")
    rank = {a: i for i, a in enumerate(sample.alphabet)}
    edges = set()
    for w in sample.words:
        path = [Q0, *(rank[a] for a in w), QF]
        edges.update(zip(path, path[1:]))
    return Soa({i: Sym(a) for a, i in rank.items()}, frozenset(edges))


def accepts(a: Soa, w: Sequence[str]) -> bool:
    """Path acceptance for single-symbol SOAs."""
    index = {lab.name: v for v, lab in a.labels.items() if isinstance(lab, Sym)}
    path = [Q0]
    for s in w:
        if s not in index:
            return False
        path.append(index[s])
    path.append(QF)
    return all(e in a.edges for e in zip(path, path[1:]))


def nontrivial_sccs(a: Soa) -> list[frozenset[Node]]:
    """Cyclic SCCs among internal nodes, ordered by their least node."""
    g = nx.DiGraph()
    g.add_nodes_from(a.internal)
    g.add_edges_from((x, y) for x, y in a.edges if x >= 0 and y >= 0)
    out = []
    for comp in nx.strongly_connected_components(g):
        if len(comp) > 1 or a.has_loop(next(iter(comp))):
            out.append(frozenset(comp))
    return sorted(out, key=min)


def contract(a: Soa, u: Iterable[Node], label: Expr) -> Soa:
    """Collapse ``u`` into one node carrying ``label``.

    The new node takes the smallest id in ``u``.  Edges inside ``u`` and the
    resulting self-loop are dropped.
    """
    u = frozenset(u)
    if not u:
        raise ValueError("cannot contract an empty node set")
    if not u <= set(a.labels):
        raise ValueError("contraction must stay within internal nodes")
    new = min(u)
    edges = set()
    for x, y in a.edges:
        x2 = new if x in u else x
        y2 = new if y in u else y
        if x2 == new and y2 == new:
            continue
        edges.add((x2, y2))
    labels = {v: lab for v, lab in a.labels.items() if v not in u}
    labels[new] = label
    return a.replace(labels, edges)


def validate(a: Soa) -> list[str]:
    """Problems with the SOA shape; an empty list means it is well formed."""
    problems = []
    if any(y == Q0 for _, y in a.edges):
        problems.append("q0 has an incoming edge")
    if any(x == QF for x, _ in a.edges):
        problems.append("qf has an outgoing edge")
    g = nx.DiGraph()
    g.add_nodes_from(a.nodes)
    g.add_edges_from(a.edges)
    reach = nx.descendants(g, Q0)
    coreach = nx.ancestors(g, QF)
    for v in a.internal:
        if v not in reach or v not in coreach:
            problems.append(f"node {a.name(v)} is not on a q0-qf walk")
    seen: set[str] = set()
    for v in a.internal:
        syms = alphabet(a.labels[v])
        if syms & seen:
            problems.append(f"node {a.name(v)} repeats a symbol")
        seen |= syms
    return problems


def to_dot(a: Soa, name: str = "soa") -> str:
    def ident(v: Node) -> str:
        return {Q0: "q0", QF: "qf"}.get(v, f"n{v}")

    lines = [f"digraph {name} {{", "  rankdir=LR;",
             '  q0 [shape=point];', '  qf [shape=doublecircle, label=""];']
    for v in a.internal:
        text = a.name(v).replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  {ident(v)} [label="{text}"];')
    for x, y in sorted(a.edges, key=_edge_key):
        lines.append(f"  {ident(x)} -> {ident(y)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _edge_key(e: Edge) -> tuple:
    # q0 first, qf last
    def k(v):
        return {Q0: -1, QF: 1 << 30}.get(v, v)
    return (k(e[0]), k(e[1]))
