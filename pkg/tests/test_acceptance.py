"""End-to-end acceptance checks, one test per criterion.

Each test prints a ``criterion N [PASS|FAIL]`` line (collected again in the
terminal summary) and then asserts, so a failure is visible both ways.
"""

import os
import random
import subprocess
import sys
from itertools import product
from math import comb

import pytest

from rsoire import repro
from rsoire.expr import SoClass, classify, parse, repetition_on_composite, to_text
from rsoire.generate import characteristic_sample, default_max_len, random_expr, random_rsoire
from rsoire.infer import StuckError, learn
from rsoire.lang import bounded_equiv, enumerate_words, matches, shuffle, sorted_words
from rsoire.soa import Sample
from oracle import brute_match, permutations_with

ROUND_TRIP = ["(a+|b) (c&d)", "a d&(b|c*)", "a+|b+&c*"]
SOIRE_ONLY = ["(a b)&(c|d)+", "((a|b&c) d?)*", "a&(b (c&d))"]
REPETITION = ["(a b)+", "(a|b)+", "(a|b&c)+", "(a&b)+", "((a|b)&(c|d)&(e|f))*"]


def test_criterion_1_classification(record):
    expected = {**{t: SoClass.RSOIRE for t in ROUND_TRIP}, **{t: SoClass.SOIRE_ONLY for t in SOIRE_ONLY}}
    got = {t: classify(parse(t)) for t in expected}
    hits = sum(got[t] is expected[t] for t in expected)
    detail = f"{hits}/6; " + ", ".join(f"{t} -> {got[t]}" for t in expected)
    assert record(1, "classification of the six example expressions", hits == 6, detail)


def test_criterion_2_repetition_not_learnable(record):
    rows, hits = [], 0
    for target in REPETITION:
        e = parse(target)
        n = default_max_len(e)
        learnt = learn(characteristic_sample(e, n)).expression
        composite = repetition_on_composite(learnt)
        eq = bounded_equiv(e, learnt, n)
        case_ok = not composite and not eq.equal and eq.counterexample is not None
        hits += case_ok
        rows.append(f"{target} -> {to_text(learnt)} (diff {' '.join(eq.counterexample or ()) or '_'})")
    assert record(2, "repetition on composite sub-expressions is not recovered", hits == 5,
                  f"{hits}/5; " + "; ".join(rows))


def test_criterion_3_nested_interleaving_not_learnable(record):
    target = parse("a&(b (c&d))")
    sample = Sample(tuple(sorted_words(enumerate_words(target, 4))))
    # independent check of the sample: a inserted anywhere into b c d / b d c
    assert set(sample) == permutations_with({("b", "c"), ("b", "d")}, "abcd")
    assert len(sample) == 8
    learnt = learn(sample).expression
    eq = bounded_equiv(target, learnt, 6)
    w = eq.counterexample
    ok = not eq.equal and w is not None and brute_match(target, w) != brute_match(learnt, w)
    assert record(3, "nested interleaving is not recovered", ok,
                  f"learnt {to_text(learnt)}, counterexample {' '.join(w or ())}")


def test_criterion_4_round_trip(record):
    rows, hits = [], 0
    for target in ROUND_TRIP:
        case = repro.run_target(target, "round-trip", target)
        hits += case.verdict == f"equal@{case.max_len}"
        rows.append(f"{target} -> {case.learnt} [{case.verdict}]")
    assert record(4, "round-trip of the restricted examples", hits == 3, f"{hits}/3; " + "; ".join(rows))


@pytest.fixture(scope="module")
def fuzz_run():
    """200 random restricted expressions, their samples and what the learner made of them."""
    rng = random.Random(2024)
    out = []
    for _ in range(200):
        target = random_rsoire(rng, rng.randint(2, 8), max_depth=4)
        sample = characteristic_sample(target)
        try:
            learnt = learn(sample).expression
        except StuckError:
            learnt = None
        out.append((target, sample, learnt))
    return out


def test_criterion_5_soundness(record, fuzz_run):
    stuck = [to_text(t) for t, _, r in fuzz_run if r is None]
    unsound = []
    checked = 0
    for target, sample, learnt in fuzz_run:
        if learnt is None:
            continue
        for w in sample:
            checked += 1
            # second, independent matcher on the shorter words
            if not matches(learnt, w) or (len(w) <= 6 and not brute_match(learnt, w)):
                unsound.append(f"{to_text(target)}: {' '.join(w)}")
                break
    ok = not stuck and not unsound
    detail = f"{len(fuzz_run)} targets, {checked} sample words, {len(stuck)} stuck, {len(unsound)} unsound"
    if not ok:
        detail += "; witnesses: " + "; ".join((stuck + unsound)[:3])
    assert record(5, "soundness on random restricted targets", ok, detail)


def test_criterion_6_class_closure(record, fuzz_run):
    outside = [f"{to_text(t)} -> {to_text(r)}" for t, _, r in fuzz_run
               if r is not None and classify(r) is not SoClass.RSOIRE]
    learnt = sum(r is not None for _, _, r in fuzz_run)
    ok = learnt == len(fuzz_run) and not outside
    detail = f"{learnt - len(outside)}/{len(fuzz_run)} learnt expressions are rsoire"
    if outside:
        detail += "; witnesses: " + "; ".join(outside[:3])
    assert record(6, "learnt expressions stay in the restricted class", ok, detail)


def test_criterion_7_matcher_vs_enumeration(record):
    rng = random.Random(7)
    symbols = ["a", "b", "c"]
    all_short = [w for n in range(7) for w in product(symbols, repeat=n)]
    pairs = mismatches = 0
    witness = None
    while pairs < 10_000:
        e = random_expr(rng, symbols, 4)
        language = enumerate_words(e, 6)
        for w in all_short:
            pairs += 1
            if matches(e, w) != (w in language):
                mismatches += 1
                witness = witness or f"{to_text(e)} / {' '.join(w)}"
    detail = f"{pairs} pairs, {mismatches} mismatches" + (f"; witness {witness}" if witness else "")
    assert record(7, "derivative matcher agrees with enumeration", mismatches == 0, detail)


def test_criterion_8_shuffle_laws(record):
    left = [w for n in range(6) for w in product("ab", repeat=n)]
    right = [w for n in range(6) for w in product("cd", repeat=n)]
    pairs = bad = 0
    for u in left:
        for v in right:
            pairs += 1
            uv = shuffle(u, v)
            if uv != shuffle(v, u) or len(uv) != comb(len(u) + len(v), len(u)):
                bad += 1
    assert record(8, "shuffle commutativity and cardinality", bad == 0, f"{pairs} word pairs, {bad} violations")


def _cli(args, cwd, seed):
    env = {**os.environ, "PYTHONHASHSEED": str(seed)}
    proc = subprocess.run([sys.executable, "-m", "rsoire", *args], cwd=cwd, env=env,
                          capture_output=True, check=False)
    return proc.returncode, proc.stdout


def test_criterion_9_determinism(record, tmp_path):
    inputs = {
        "pair.sample": "a b\na b a b\n",
        "nested.sample": "".join(" ".join(w) + "\n" for w in sorted_words(enumerate_words(parse("a&(b (c&d))"), 4))),
        "mixed.sample": "x a b y\nx b a y\ny x a b\na b y x\nx\n\n",
    }
    for name, text in inputs.items():
        (tmp_path / name).write_text(text)
    runs = []
    for seed in (1, 2):
        out_dir = tmp_path / f"run{seed}"
        out_dir.mkdir()
        outputs = {}
        for name in inputs:
            trace = out_dir / f"{name}.json"
            outputs[name] = _cli(["learn", "--sample", name, "--trace", str(trace)], tmp_path, seed)
            outputs[name + ".trace"] = trace.read_bytes()
        outputs["repro"] = _cli(["repro", "--out", str(out_dir / "report.json"),
                                 "--figure", str(out_dir / "report.png")], tmp_path, seed)
        outputs["report.json"] = (out_dir / "report.json").read_bytes()
        outputs["report.png"] = (out_dir / "report.png").read_bytes()
        runs.append(outputs)
    differing = sorted(k for k in runs[0] if runs[0][k] != runs[1][k])
    exit_codes = {k: v[0] for k, v in runs[0].items() if isinstance(v, tuple)}
    ok = not differing and all(code == 0 for code in exit_codes.values())
    detail = f"{len(runs[0])} outputs compared across two hash seeds"
    if differing:
        detail += "; differing: " + ", ".join(differing)
    assert record(9, "byte-identical output across runs", ok, detail)
