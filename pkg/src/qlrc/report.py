"""Tab-separated summaries and parity-check support plots."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

from .linalg import Matrix  # noqa: E402

SUMMARY_COLUMNS = (
    "label", "field_order", "n", "k", "d", "r", "delta", "singleton_like_bound",
    "quantum", "quantum_optimal", "dual_containing",
)
GROUP_COLOURS = ("#4c72b0", "#dd8452")


def write_tsv(rows: Iterable[dict], path: str | Path, columns: Sequence[str] = SUMMARY_COLUMNS) -> Path:
    """Write rows (dicts keyed by `columns`) as a tab-separated table with a header."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(columns), delimiter="\t", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({c: _cell(row.get(c, "")) for c in columns})
    return path


def read_tsv(path: str | Path) -> list[dict]:
    with Path(path).open(newline="") as fh:
        return list(csv.DictReader(fh, delimiter="\t"))


def _cell(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def plot_support(
    H: Matrix,
    groups: Sequence[Sequence[int]],
    path: str | Path,
    title: str = "",
) -> Path:
    """Save a picture of the nonzero pattern of H with each repair group shaded."""
    path = Path(path)
    mask = H.data != 0
    rows, cols = mask.shape
    fig, ax = plt.subplots(figsize=(max(4.0, cols * 0.22), max(2.0, rows * 0.25 + 1.0)))
    for i, g in enumerate(groups):
        colour = GROUP_COLOURS[i % len(GROUP_COLOURS)]
        for lo, hi in _runs(sorted(g)):
            ax.axvspan(lo - 0.5, hi + 0.5, color=colour, alpha=0.15, lw=0)
    ys, xs = np.nonzero(mask)
    ax.scatter(xs, ys, marker="s", s=12, color="black")
    ax.set_xlim(-0.5, cols - 0.5)
    ax.set_ylim(rows - 0.5, -0.5)
    ax.xaxis.set_major_locator(MaxNLocator(integer=True))
    ax.yaxis.set_major_locator(MaxNLocator(integer=True))
    ax.set_xlabel("coordinate")
    ax.set_ylabel("check row")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _runs(sorted_cols: Sequence[int]) -> list[tuple[int, int]]:
    runs: list[tuple[int, int]] = []
    for c in sorted_cols:
        if runs and c == runs[-1][1] + 1:
            runs[-1] = (runs[-1][0], c)
        else:
            runs.append((c, c))
    return runs
