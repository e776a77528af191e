"""Learn single-occurrence regular expressions with interleaving from positive samples."""

from .expr import (
    Alt,
    Concat,
    Epsilon,
    Expr,
    ExprSyntaxError,
    Inter,
    Opt,
    Plus,
    RsoireError,
    SoClass,
    Star,
    Sym,
    alphabet,
    classify,
    is_single_occurrence,
    normalize,
    parse,
    to_text,
)
from .infer import LearnResult, StuckError, learn
from .lang import EnumerationCapExceeded, bounded_equiv, enumerate_words, matches, shuffle
from .soa import EmptySampleError, Sample, Soa, build_2t_inf

__version__ = "0.1.0"
