"""Learning interleaving expressions from positive samples.

The learner rewrites the 2T-INF automaton of a sample until a single node
is left.  Rules are tried in priority order, scanning nodes by id:

  Plus      singleton cycle {v} with a self-loop: label v as v+
  MergeScc  cycle U with |U| > 1: learn an interleaving for U and contract
  Or        u, v with equal predecessor and successor sets: u|v
  Concat    u -> v as the only way out of u and into v: u v
  Optional  bypass edges around v: v?, drop the bypasses

Cycles are resolved by ``merge``: the conflict graph of the projected
sample is split into maximum independent sets, each set is learnt
recursively and the results are joined with ``&``.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .expr import (
    Expr,
    Inter,
    Opt,
    Plus,
    RsoireError,
    SoClass,
    Sym,
    alphabet,
    alt,
    classify,
    concat,
    inter,
    normalize,
    parse,
    to_text,
    walk,
)
from .lang import nullable
from .soa import (
    Q0,
    QF,
    EmptySampleError,
    Sample,
    Soa,
    build_2t_inf,
    contract,
    nontrivial_sccs,
    to_dot,
)

log = logging.getLogger(__name__)

RULES = ("Plus", "MergeScc", "Or", "Concat", "Optional", "Fallback")


class StuckError(RsoireError):
    """No rewrite rule applies but more than one internal node is left."""

    def __init__(self, soa: Soa):
        super().__init__("no rewrite rule applies; automaton:\n" + to_dot(soa))
        self.soa = soa
        self.dot = to_dot(soa)


# --------------------------------------------------------------------------
# Trace

@dataclass
class TraceStep:
    rule: str
    depth: int
    ids: list[int]
    nodes: list[str]
    result: str
    parts: Optional[list[list[str]]] = None

    def to_json(self) -> dict:
        out = {"rule": self.rule, "depth": self.depth, "ids": self.ids,
               "nodes": self.nodes, "result": self.result}
        if self.parts is not None:
            out["parts"] = self.parts
        return out


@dataclass
class InferenceTrace:
    steps: list[TraceStep] = field(default_factory=list)

    def add(self, rule: str, depth: int, ids: Iterable[int], nodes: Iterable[str], result: str,
            parts: Optional[list[list[str]]] = None):
        step = TraceStep(rule, depth, list(ids), list(nodes), result, parts)
        log.debug("%s%s %s -> %s", "  " * depth, rule, step.nodes, result)
        self.steps.append(step)

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)


@dataclass
class LearnResult:
    expression: Expr
    trace: InferenceTrace
    classification: SoClass
    sample: Sample

    def trace_json(self) -> str:
        doc = {
            "input": [" ".join(w) for w in self.sample.words],
            "steps": [s.to_json() for s in self.trace.steps],
            "result": to_text(self.expression),
            "class": str(self.classification),
        }
        return json.dumps(doc, indent=2) + "\n"


# --------------------------------------------------------------------------
# Sample projection and conflict graphs

def filter_sample(u: Iterable[str], s: Sample) -> Sample:
    """Project every word onto the symbols in ``u``; words may become empty."""
    keep = frozenset(u)
    return Sample(tuple(tuple(a for a in w if a in keep) for w in s.words))


@dataclass(frozen=True)
class ConflictGraph:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    def adjacent(self, x: str, y: str) -> bool:
        return frozenset((x, y)) in self.edges


def conflict_graph(s: Sample) -> ConflictGraph:
    """Join two symbols when the sample shows them in both relative orders."""
    before: set[tuple[str, str]] = set()
    for w in s.words:
        first: dict[str, int] = {}
        last: dict[str, int] = {}
        for i, a in enumerate(w):
            first.setdefault(a, i)
            last[a] = i
        for x in first:
            for y in last:
                if x != y and first[x] < last[y]:
                    before.add((x, y))
    edges = frozenset(frozenset(p) for p in before if (p[1], p[0]) in before)
    return ConflictGraph(tuple(sorted(s.alphabet)), edges)


class _MisSolver:
    def __init__(self, g: ConflictGraph):
        self.names = list(g.vertices)
        index = {a: i for i, a in enumerate(self.names)}
        self.adj = [0] * len(self.names)
        for e in g.edges:
            x, y = (index[a] for a in e)
            self.adj[x] |= 1 << y
            self.adj[y] |= 1 << x
        self.memo: dict[int, int] = {0: 0}

    def alpha(self, mask: int) -> int:
        """Size of a maximum independent set inside ``mask``."""
        if mask in self.memo:
            return self.memo[mask]
        best = best_deg = -1
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            deg = bin(self.adj[i] & mask).count("1")
            if deg <= 1:
                # some maximum set contains a vertex of degree <= 1
                best, best_deg = i, -1
                break
            if deg > best_deg:
                best, best_deg = i, deg
        bit = 1 << best
        take = 1 + self.alpha(mask & ~bit & ~self.adj[best])
        if best_deg == -1:
            res = take
        else:
            res = max(take, self.alpha(mask & ~bit))
        self.memo[mask] = res
        return res

    def lex_least(self, mask: int) -> int:
        """The maximum independent set of ``mask`` whose sorted names are lexicographically least."""
        need = self.alpha(mask)
        chosen = 0
        cand = mask
        for i in range(len(self.names)):
            if need == 0:
                break
            if not cand >> i & 1:
                continue
            rest = cand & ~self.adj[i] & ~((1 << (i + 1)) - 1)
            if 1 + self.alpha(rest) == need:
                chosen |= 1 << i
                cand = rest
                need -= 1
            else:
                cand &= ~(1 << i)
        return chosen

    def names_of(self, mask: int) -> frozenset[str]:
        return frozenset(a for i, a in enumerate(self.names) if mask >> i & 1)


def all_mis(g: ConflictGraph) -> list[frozenset[str]]:
    """Partition the vertices by repeatedly removing a maximum independent set.

    Ties go to the lexicographically least sorted name sequence.  When the
    whole graph is independent and has several vertices, singletons are
    returned instead so that recursion always shrinks the alphabet.
    """
    return _partition(g)[0]


def _partition(g: ConflictGraph) -> tuple[list[frozenset[str]], bool]:
    if not g.vertices:
        raise ValueError("conflict graph has no vertices")
    solver = _MisSolver(g)
    full = (1 << len(g.vertices)) - 1
    remaining = full
    parts = []
    while remaining:
        mis = solver.lex_least(remaining)
        if remaining == full and mis == full and len(g.vertices) > 1:
            return [frozenset([a]) for a in g.vertices], True
        parts.append(solver.names_of(mis))
        remaining &= ~mis
    return parts, False


# --------------------------------------------------------------------------
# Rewriting

def merge(s: Sample, trace: Optional[InferenceTrace] = None, depth: int = 0) -> Expr:
    """Learn one interleaving expression for a sample with at least two symbols."""
    if len(s.alphabet) < 2:
        raise ValueError("merge needs at least two symbols")
    trace = trace if trace is not None else InferenceTrace()
    parts, degenerate = _partition(conflict_graph(s))
    if degenerate:
        trace.add("Fallback", depth, [], sorted(s.alphabet), "singletons",
                  parts=[sorted(p) for p in parts])
    operands = []
    for part in parts:
        sub = filter_sample(part, s)
        operands.append(soa2soire(sub, build_2t_inf(sub), trace, depth))
    return inter(*operands)


def _relabel(a: Soa, v: int, label: Expr) -> Soa:
    labels = dict(a.labels)
    labels[v] = label
    return a.replace(labels)


def _bypass(a: Soa, v: int) -> set[tuple[int, int]]:
    pred, succ = a.pred(v), a.succ(v)
    return {(p, t) for p, t in a.edges if p in pred and t in succ}


def _step(a: Soa, s: Sample, trace: InferenceTrace, depth: int) -> Optional[Soa]:
    """Apply the highest-priority applicable rule once; None when nothing applies."""
    internal = a.internal
    sccs = nontrivial_sccs(a)

    for comp in sccs:
        if len(comp) == 1:
            (v,) = comp
            label = a.label(v)
            if not isinstance(label, Sym):
                raise AssertionError(f"iteration on composite node {to_text(label)}")
            out = _relabel(a, v, Plus(label))
            out = out.replace(edges=a.edges - {(v, v)})
            trace.add("Plus", depth, [v], [a.name(v)], to_text(Plus(label)))
            return out

    for comp in sccs:
        if len(comp) > 1:
            syms = set().union(*(alphabet(a.label(v)) for v in comp))
            touching = Sample(tuple(w for w in s.words if syms.intersection(w)))
            label = merge(filter_sample(syms, touching), trace, depth + 1)
            names = [a.name(v) for v in sorted(comp)]
            parts = [sorted(alphabet(op)) for op in (label.items if isinstance(label, Inter) else (label,))]
            trace.add("MergeScc", depth, sorted(comp), names, to_text(label), parts=parts)
            return contract(a, comp, label)

    for i, u in enumerate(internal):
        for v in internal[i + 1:]:
            if a.pred(u) == a.pred(v) and a.succ(u) == a.succ(v):
                label = alt(a.label(u), a.label(v))
                trace.add("Or", depth, [u, v], [a.name(u), a.name(v)], to_text(label))
                return contract(a, {u, v}, label)

    for u in internal:
        succ = a.succ(u)
        if len(succ) == 1:
            (v,) = succ
            if v >= 0 and a.pred(v) == {u}:
                label = concat(a.label(u), a.label(v))
                trace.add("Concat", depth, [u, v], [a.name(u), a.name(v)], to_text(label))
                return contract(a, {u, v}, label)

    # complete bypasses (every predecessor reaches every successor) first
    for complete in (True, False):
        for v in internal:
            bypass = _bypass(a, v)
            if not bypass or (complete and len(bypass) < len(a.pred(v)) * len(a.succ(v))):
                continue
            label = a.label(v)
            if not nullable(label):
                label = Opt(label)
            trace.add("Optional", depth, [v], [a.name(v)], to_text(label))
            return _relabel(a, v, label).replace(edges=a.edges - bypass)

    return None


def soa2soire(s: Sample, a: Soa, trace: Optional[InferenceTrace] = None, depth: int = 0) -> Expr:
    """Rewrite ``a`` (built from ``s``) down to a single expression."""
    trace = trace if trace is not None else InferenceTrace()
    while True:
        nxt = _step(a, s, trace, depth)
        if nxt is None:
            break
        a = nxt
    internal = a.internal
    if len(internal) == 1:
        return normalize(a.label(internal[0]))
    if not internal and (Q0, QF) in a.edges:
        return normalize(parse("_"))
    raise StuckError(a)


def learn(s: Sample) -> LearnResult:
    if not s.words:
        raise EmptySampleError("sample is empty")
    trace = InferenceTrace()
    expression = normalize(soa2soire(s, build_2t_inf(s), trace))
    return LearnResult(expression, trace, classify(expression), s)


def replay(trace: InferenceTrace, a: Soa) -> Expr:
    """Re-run the top-level steps of ``trace`` against the automaton they started from."""
    for step in trace:
        if step.depth != 0:
            continue
        if step.rule == "Plus":
            (v,) = step.ids
            a = _relabel(a, v, Plus(a.label(v))).replace(edges=a.edges - {(v, v)})
        elif step.rule == "MergeScc":
            a = contract(a, step.ids, parse(step.result))
        elif step.rule in ("Or", "Concat"):
            u, v = step.ids
            join = alt if step.rule == "Or" else concat
            a = contract(a, {u, v}, join(a.label(u), a.label(v)))
        elif step.rule == "Optional":
            (v,) = step.ids
            bypass = _bypass(a, v)
            label = a.label(v)
            a = _relabel(a, v, label if nullable(label) else Opt(label)).replace(edges=a.edges - bypass)
        else:
            raise ValueError(f"cannot replay rule {step.rule}")
    internal = a.internal
    if len(internal) == 1:
        return normalize(a.label(internal[0]))
    if not internal:
        return parse("_")
    raise StuckError(a)


def merge_operands_inter_free(result: LearnResult) -> bool:
    """Each merge operand is &-free unless a deeper merge produced its &."""
    steps = result.trace.steps
    for i, step in enumerate(steps):
        if step.rule != "MergeScc":
            continue
        label = parse(step.result)
        operands = label.items if isinstance(label, Inter) else (label,)
        for op in operands:
            if not any(isinstance(n, Inter) for n in walk(op)):
                continue
            deeper = [t for t in steps[:i]
                      if t.rule == "MergeScc" and t.depth > step.depth
                      and set().union(*map(set, t.parts)) <= alphabet(op)]
            if not deeper:
                return False
    return True
