"""Built-in experiments: what the learner can and cannot recover.

Three groups of targets are sampled, learnt and compared with the target on
all words up to ``|alphabet| + 2``:

* ``repetition``: repeated composite sub-expressions.  The learner only
  repeats single symbols, so each target must be missed.
* ``nested-interleaving``: an interleaving whose operand itself contains an
  interleaving behind a concatenation.  Must be missed.
* ``round-trip``: restricted expressions that must be recovered exactly.

A ``probe`` group holds hand-made samples that are reported without being
asserted on.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Optional

from .expr import classify, parse, repetition_on_composite, to_text
from .generate import characteristic_sample, default_max_len
from .infer import learn
from .lang import bounded_equiv, count_words
from .soa import Sample

# (name, group, target)
TARGETS = [
    ("(a b)+", "repetition", "(a b)+"),
    ("(a|b)+", "repetition", "(a|b)+"),
    ("(a|b&c)+", "repetition", "(a|b&c)+"),
    ("(a&b)+", "repetition", "(a&b)+"),
    ("((a|b)&(c|d)&(e|f))*", "repetition", "((a|b)&(c|d)&(e|f))*"),
    ("a&(b (c&d))", "nested-interleaving", "a&(b (c&d))"),
    ("(a+|b) (c&d)", "round-trip", "(a+|b) (c&d)"),
    ("a d&(b|c*)", "round-trip", "a d&(b|c*)"),
    ("a+|b+&c*", "round-trip", "a+|b+&c*"),
]

# (name, words); target-free, never asserted
PROBES = [
    ("cabd/cbad/cd", ["c a b d", "c b a d", "c d"]),
]

EXPECT_EQUAL = {"repetition": False, "nested-interleaving": False, "round-trip": True}


@dataclass
class CaseResult:
    name: str
    group: str
    target: Optional[str]
    max_len: int
    sample_size: int
    learnt: str
    cls: str
    composite_repetition: bool
    verdict: str
    counterexample: Optional[str]
    ok: Optional[bool]
    counts: dict

    def to_json(self) -> dict:
        out = asdict(self)
        out["class"] = out.pop("cls")
        return out


def _word_text(w) -> str:
    return " ".join(w) if w else "_"


def run_target(name: str, group: str, target: str) -> CaseResult:
    e = parse(target)
    n = default_max_len(e)
    sample = characteristic_sample(e, n)
    result = learn(sample)
    learnt = result.expression
    eq = bounded_equiv(e, learnt, n)
    composite = bool(repetition_on_composite(learnt))
    if EXPECT_EQUAL[group]:
        ok = eq.equal
    else:
        ok = not eq.equal and eq.counterexample is not None
        if group == "repetition":
            ok = ok and not composite
    return CaseResult(
        name=name, group=group, target=to_text(e), max_len=n, sample_size=len(sample),
        learnt=to_text(learnt), cls=str(result.classification), composite_repetition=composite,
        verdict=f"equal@{n}" if eq.equal else "not-equal",
        counterexample=None if eq.equal else _word_text(eq.counterexample),
        ok=ok,
        counts={"target": count_words(e, n), "learnt": count_words(learnt, n)},
    )


def run_probe(name: str, words: list[str]) -> CaseResult:
    sample = Sample.of(words)
    result = learn(sample)
    n = len(sample.alphabet) + 2
    return CaseResult(
        name=name, group="probe", target=None, max_len=n, sample_size=len(sample),
        learnt=to_text(result.expression), cls=str(classify(result.expression)),
        composite_repetition=bool(repetition_on_composite(result.expression)),
        verdict="-", counterexample=None, ok=None,
        counts={"target": [0] * (n + 1), "learnt": count_words(result.expression, n)},
    )


def run_all() -> list[CaseResult]:
    cases = [run_target(*t) for t in TARGETS]
    cases += [run_probe(*p) for p in PROBES]
    return cases


def passed(cases: list[CaseResult]) -> bool:
    return all(c.ok is not False for c in cases)


def to_markdown(cases: list[CaseResult]) -> str:
    head = ["case", "group", "N", "|S|", "learnt", "class", "composite rep", "verdict", "counterexample", "ok"]
    lines = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
    for c in cases:
        ok = "-" if c.ok is None else ("PASS" if c.ok else "FAIL")
        row = [f"`{c.name}`", c.group, str(c.max_len), str(c.sample_size), f"`{c.learnt}`", c.cls,
               "yes" if c.composite_repetition else "no", c.verdict,
               f"`{c.counterexample}`" if c.counterexample else "-", ok]
        lines.append("| " + " | ".join(cell.replace("|", "\\|") for cell in row) + " |")
    lines.append("")
    lines.append(f"overall: {'PASS' if passed(cases) else 'FAIL'}")
    return "\n".join(lines) + "\n"


def to_json(cases: list[CaseResult]) -> str:
    doc = {"cases": [c.to_json() for c in cases], "passed": passed(cases)}
    return json.dumps(doc, indent=2) + "\n"
