"""Command-line interface.

Exit codes: 0 success, 1 failed check / difference found, 2 syntax error,
4 empty sample, 5 learner stuck, 6 enumeration cap exceeded, 7 bad XML.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import formats, repro
from .expr import ExprSyntaxError, classify, parse, to_text
from .generate import DEFAULT_SAMPLE_CAP, characteristic_sample
from .infer import StuckError, learn
from .lang import DEFAULT_WORD_CAP, EnumerationCapExceeded, bounded_equiv, enumerate_words, matches, sorted_words
from .soa import EmptySampleError, Sample, build_2t_inf, to_dot

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_SYNTAX = 2
EXIT_EMPTY = 4
EXIT_STUCK = 5
EXIT_CAP = 6
EXIT_XML = 7


def _word_arg(text: str) -> tuple[str, ...]:
    tokens = text.split()
    return () if tokens in ([], ["_"]) else tuple(tokens)


def _word_text(w: Sequence[str]) -> str:
    return " ".join(w) if w else "_"


def cmd_learn(args) -> int:
    sample = formats.read_sample(args.sample)
    if args.dot and sample.words:
        Path(args.dot).write_text(to_dot(build_2t_inf(sample)), encoding="utf-8")
    result = learn(sample)
    if args.trace:
        Path(args.trace).write_text(result.trace_json(), encoding="utf-8")
    print(to_text(result.expression))
    return EXIT_OK


def cmd_classify(args) -> int:
    print(classify(parse(args.expr)))
    return EXIT_OK


def cmd_match(args) -> int:
    print("true" if matches(parse(args.expr), _word_arg(args.word)) else "false")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    words = enumerate_words(parse(args.expr), args.max_len, args.cap)
    sys.stdout.write(formats.format_sample(Sample(tuple(sorted_words(words)))))
    return EXIT_OK


def cmd_equiv(args) -> int:
    res = bounded_equiv(parse(args.expr1), parse(args.expr2), args.max_len)
    if res.equal:
        print(f"equal@{args.max_len}")
        return EXIT_OK
    print(f"diff: {_word_text(res.counterexample)}")
    return EXIT_FAIL if args.fail_on_diff else EXIT_OK


def cmd_sample(args) -> int:
    sample = characteristic_sample(parse(args.expr), args.max_len, args.cap)
    sys.stdout.write(formats.format_sample(sample))
    return EXIT_OK


def cmd_xml_extract(args) -> int:
    for path in formats.extract_samples(args.input, args.out):
        print(path)
    return EXIT_OK


def cmd_repro(args) -> int:
    cases = repro.run_all()
    sys.stdout.write(repro.to_markdown(cases))
    if args.out:
        Path(args.out).write_text(repro.to_json(cases), encoding="utf-8")
    if args.figure:
        from .plotting import language_growth_figure

        language_growth_figure([c.to_json() for c in cases if c.target], args.figure)
    return EXIT_OK if repro.passed(cases) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rsoire", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log rewrite steps to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("learn", help="learn an expression from a sample file")
    p.add_argument("--sample", required=True, help="sample file, one word per line")
    p.add_argument("--trace", help="write the rewrite trace as JSON")
    p.add_argument("--dot", help="write the initial automaton in DOT format")
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("classify", help="print not-soire, soire or rsoire")
    p.add_argument("expr")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("match", help="test membership of a space-separated word")
    p.add_argument("expr")
    p.add_argument("word")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("enumerate", help="list all words up to a length")
    p.add_argument("expr")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_WORD_CAP)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("equiv", help="compare two expressions up to a length")
    p.add_argument("expr1")
    p.add_argument("expr2")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--fail-on-diff", action="store_true")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("sample", help="write a bounded sample of an expression")
    p.add_argument("expr")
    p.add_argument("--max-len", type=int, default=None, help="default: alphabet size + 2")
    p.add_argument("--cap", type=int, default=DEFAULT_SAMPLE_CAP)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("xml-extract", help="one sample file of child sequences per element name")
    p.add_argument("--input", nargs="+", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_xml_extract)

    p = sub.add_parser("repro", help="run the built-in learnability experiments")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--figure", help="write a PNG of language growth per case")
    p.set_defaults(func=cmd_repro)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(message)s", stream=sys.stderr)
    if getattr(args, "max_len", None) is not None and args.max_len < 0:
        parser.error("--max-len must be non-negative")
    try:
        return args.func(args)
    except (ExprSyntaxError, formats.SampleSyntaxError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_SYNTAX
    except EmptySampleError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_EMPTY
    except StuckError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_STUCK
    except EnumerationCapExceeded as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CAP
    except formats.XmlInputError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_XML


if __name__ == "__main__":
    sys.exit(main())
