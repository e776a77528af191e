"""Sample files and XML child-sequence extraction.

A sample file holds one word per line, symbols separated by single spaces.
An empty line is the empty word; lines starting with ``#`` are comments.
"""

from __future__ import annotations

import os
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Iterable, Union

from .expr import RsoireError, is_symbol_name
from .soa import Sample

PathLike = Union[str, os.PathLike]

SAMPLE_SUFFIX = ".sample"


class SampleSyntaxError(RsoireError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class XmlInputError(RsoireError):
    pass


def parse_sample(text: str) -> Sample:
    words = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.startswith("#"):
            continue
        tokens = line.split()
        for tok in tokens:
            if not is_symbol_name(tok):
                raise SampleSyntaxError(f"invalid symbol {tok!r}", lineno)
        words.append(tuple(tokens))
    return Sample(tuple(words))


def format_sample(sample: Sample) -> str:
    return "".join(" ".join(w) + "\n" for w in sample.words)


def read_sample(path: PathLike) -> Sample:
    return parse_sample(Path(path).read_text(encoding="utf-8"))


def write_sample(sample: Sample, path: PathLike) -> None:
    Path(path).write_text(format_sample(sample), encoding="utf-8")


def escape_name(name: str) -> str:
    """Escape an element name into the symbol token class.

    A character outside the class becomes ``_xHHHH_`` (its code point in hex),
    as does an underscore that would otherwise start such a sequence, so
    distinct names stay distinct.  Names made only of underscores are escaped
    in full because ``_`` alone is the empty word.
    """
    out = []
    for i, ch in enumerate(name):
        if ch.isascii() and (ch.isalnum() or ch in ":.-") or (ch == "_" and name[i + 1:i + 2] != "x"):
            out.append(ch)
        else:
            out.append(f"_x{ord(ch):04X}_")
    text = "".join(out)
    if not is_symbol_name(text):
        text = "".join(f"_x{ord(ch):04X}_" for ch in name)
    return text


def child_sequences(paths: Iterable[PathLike]) -> dict[str, list[tuple[str, ...]]]:
    """Map each element name to the child-name words of its occurrences, in document order."""
    out: dict[str, list[tuple[str, ...]]] = {}
    for path in paths:
        try:
            root = ET.parse(path).getroot()
        except ET.ParseError as err:
            raise XmlInputError(f"{path}: malformed XML: {err}") from err
        except OSError as err:
            raise XmlInputError(f"{path}: {err.strerror}") from err
        for elem in root.iter():
            word = tuple(escape_name(c.tag) for c in elem)
            out.setdefault(escape_name(elem.tag), []).append(word)
    return out


def extract_samples(paths: Iterable[PathLike], out_dir: PathLike) -> list[Path]:
    """Write one ``<element>.sample`` file per element name; returns the files written."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, words in sorted(child_sequences(paths).items()):
        target = out_dir / f"{name}{SAMPLE_SUFFIX}"
        write_sample(Sample(tuple(words)), target)
        written.append(target)
    return written
