"""Figures for the reproduction report."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib import ticker  # noqa: E402

RC = {
    "font.size": 8,
    "axes.titlesize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "legend.frameon": False,
    "savefig.bbox": "tight",
}


def _decades(values: Sequence[int]) -> tuple[float, float]:
    """Whole-decade bounds around positive counts, at least one decade wide."""
    if not values:
        return 1.0, 10.0
    lo = 10.0 ** math.floor(math.log10(min(values)))
    hi = 10.0 ** math.ceil(math.log10(max(values)))
    return lo, max(hi, lo * 10)


def language_growth_figure(cases: Sequence[dict], path: str | Path, dpi: int = 150) -> Path:
    """Small multiples: words per length for target vs learnt expression, one panel per case.

    Each case needs ``name``, ``verdict`` and ``counts`` with ``target`` and
    ``learnt`` lists indexed by word length.
    """
    path = Path(path)
    ncols = 3
    nrows = max(1, math.ceil(len(cases) / ncols))
    with plt.rc_context(RC):
        fig, axes = plt.subplots(nrows, ncols, figsize=(3.0 * ncols, 2.2 * nrows), squeeze=False)
        for ax, case in zip(axes.flat, cases):
            target = case["counts"]["target"]
            learnt = case["counts"]["learnt"]
            xs = range(len(target))
            ax.plot(xs, [c or math.nan for c in target], "o-", ms=3, label="target")
            ax.plot(xs, [c or math.nan for c in learnt], "s--", ms=3, label="learnt")
            ax.set_yscale("log")
            lo, hi = _decades([c for c in target + learnt if c])
            ax.set_ylim(lo * 0.7, hi)
            subs = (1.0, 2.0, 5.0) if hi / lo <= 1000 else (1.0,)
            ax.yaxis.set_major_locator(ticker.LogLocator(base=10, subs=subs))
            ax.yaxis.set_major_formatter(ticker.FuncFormatter(lambda v, _: f"{v:g}"))
            ax.yaxis.set_minor_formatter(ticker.NullFormatter())
            ax.set_xticks(list(xs))
            ax.set_title(f"{case['name']}  [{case['verdict']}]")
            ax.set_xlabel("word length")
        for ax in axes.flat[len(cases):]:
            ax.set_visible(False)
        axes.flat[0].set_ylabel("words")
        axes.flat[0].legend(loc="upper left")
        fig.text(0.01, 0.0, "lengths with no words are not drawn", fontsize=7, color="0.4", va="bottom")
        fig.tight_layout(rect=(0, 0.02, 1, 1))
        fig.savefig(path, dpi=dpi, metadata={"Software": None})
        plt.close(fig)
    return path
