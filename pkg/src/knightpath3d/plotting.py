"""Matplotlib figures: a tour in 3D and record coverage per box."""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .records import RecordEntry  # noqa: E402
from .tour import Tour  # noqa: E402


def plot_tour(tour: Tour, path: str, title: Optional[str] = None, dpi: int = 150) -> None:
    """Draw the tour's polyline inside its box and save it to ``path``."""
    fig = plt.figure(figsize=(6, 6))
    ax = fig.add_subplot(projection="3d")
    box = tour.box
    grid = list(box.cells())
    ax.scatter(*zip(*grid), s=6, c="0.8", depthshade=False)
    cells = list(tour.cells)
    if tour.closed and len(cells) >= 3:
        cells.append(cells[0])
    if cells:
        xs, ys, zs = zip(*cells)
        ax.plot(xs, ys, zs, "-", color="tab:blue", lw=1.2)
        ax.scatter(xs[:1], ys[:1], zs[:1], s=40, c="tab:green", depthshade=False, label="start")
        if not tour.closed:
            ax.scatter(xs[-1:], ys[-1:], zs[-1:], s=40, c="tab:red", depthshade=False, label="end")
        ax.legend(loc="upper left", fontsize=8)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_zlabel("z")
    try:
        ax.set_box_aspect(box.dims)
    except AttributeError:  # matplotlib < 3.3
        pass
    kind = "closed" if tour.closed else "open"
    ax.set_title(title or f"{box} {kind}, {tour.length} jumps")
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)


def plot_coverage(
    records: Iterable[RecordEntry],
    path: str,
    found: Optional[Sequence[tuple[RecordEntry, int]]] = None,
    dpi: int = 150,
) -> None:
    """Bar chart of record coverage (percent of cells visited) per box shape.

    ``found`` optionally pairs registry entries with new lengths to overlay.
    """
    records = list(records)
    labels = ["x".join(map(str, r.dims)) + (" (closed)" if r.closed else "") for r in records]
    pcts = [r.coverage()[1] for r in records]
    fig, ax = plt.subplots(figsize=(max(6, 0.7 * len(records)), 4))
    xs = range(len(records))
    ax.bar(xs, pcts, color="0.6", label="published")
    for x, p in zip(xs, pcts):
        ax.text(x, p + 1, f"{p}%", ha="center", fontsize=8)
    if found:
        index = {r: i for i, r in enumerate(records)}
        from .tour import cells_for_length, coverage_of

        pts = [
            (index[r], coverage_of(cells_for_length(n, r.closed), r.box)[1])
            for r, n in found
            if r in index
        ]
        if pts:
            ax.scatter(*zip(*pts), color="tab:red", zorder=3, label="found")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=45, ha="right")
    ax.set_ylabel("cells visited (%)")
    ax.set_ylim(0, 100)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
