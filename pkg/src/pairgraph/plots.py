"""Figure rendering for graphs and feasibility tables.

Draws straight to files through the Agg canvas, leaving the process-wide
matplotlib state alone so library users keep whatever backend they had.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.colors import ListedColormap
from matplotlib.figure import Figure
from matplotlib.patches import Patch

from .analysis import Feasibility, FeasibilityVerdict
from .graphs import ExperimentGraph
from .io import EDGE_PALETTE

__all__ = ["plot_graph", "plot_feasibility"]

_KIND_COLOR = {
    Feasibility.FEASIBLE: "#2a9d4e",
    Feasibility.INFEASIBLE: "#e8a33d",
    Feasibility.NONEXISTENT: "#9aa0a6",
}


def _save(fig: Figure, path: str | Path) -> None:
    FigureCanvasAgg(fig)
    fig.savefig(Path(path), dpi=150, bbox_inches="tight")


def plot_graph(graph: ExperimentGraph, path: str | Path) -> None:
    """Circular layout with split-color edges.

    Each edge is two segments meeting between its endpoints, one segment per
    endpoint mode. Parallel edges bow outward so every pair source stays
    visible, and non-unit weights are printed at the bend.
    """
    n = graph.vertex_count
    angles = [math.pi / 2 - 2 * math.pi * i / n for i in range(n)]
    pos = [(math.cos(t), math.sin(t)) for t in angles]

    fig = Figure(figsize=(5.0, 5.0))
    ax = fig.add_subplot(111)

    by_pair: dict[tuple[int, int], list] = {}
    for e in graph.edges:
        by_pair.setdefault(e.pair(), []).append(e)

    size = len(EDGE_PALETTE)
    for pair, group in sorted(by_pair.items()):
        (x1, y1), (x2, y2) = pos[pair[0]], pos[pair[1]]
        dx, dy = x2 - x1, y2 - y1
        length = math.hypot(dx, dy) or 1.0
        nx, ny = -dy / length, dx / length
        for k, e in enumerate(group):
            shift = (k - (len(group) - 1) / 2) * 0.16
            mx, my = (x1 + x2) / 2 + nx * shift, (y1 + y2) / 2 + ny * shift
            xu, yu = pos[e.u]
            xv, yv = pos[e.v]
            ax.plot([xu, mx], [yu, my], color=EDGE_PALETTE[e.color_u % size], lw=2.5, zorder=1)
            ax.plot([mx, xv], [my, yv], color=EDGE_PALETTE[e.color_v % size], lw=2.5, zorder=1)
            if e.weight != 1:
                txt = f"{e.weight.real:g}" if e.weight.imag == 0 else str(e.weight)
                ax.annotate(
                    txt, (mx, my), fontsize=8, ha="center", va="center",
                    bbox={"boxstyle": "round,pad=0.15", "fc": "white", "ec": "0.7"},
                    zorder=3,
                )

    for i, (x, y) in enumerate(pos):
        ax.scatter([x], [y], s=500, c="white", edgecolors="black", zorder=4)
        ax.annotate(graph.vertex_labels[i], (x, y), ha="center", va="center", zorder=5)

    ax.set_xlim(-1.35, 1.35)
    ax.set_ylim(-1.35, 1.35)
    ax.set_aspect("equal")
    ax.axis("off")
    _save(fig, path)


def plot_feasibility(verdicts: Sequence[FeasibilityVerdict], path: str | Path) -> None:
    """One panel per leading rank: cells over (b, c) colored by verdict."""
    if not verdicts:
        raise ValueError("nothing to plot")
    a_values = sorted({v.a for v in verdicts})
    ncols = min(4, len(a_values))
    nrows = -(-len(a_values) // ncols)
    fig = Figure(figsize=(3.0 * ncols, 2.8 * nrows))
    cmap = ListedColormap([_KIND_COLOR[k] for k in Feasibility])
    kind_index = {k: i for i, k in enumerate(Feasibility)}

    for panel, a in enumerate(a_values):
        ax = fig.add_subplot(nrows, ncols, panel + 1)
        rows = [v for v in verdicts if v.a == a]
        grid = np.full((a, a), np.nan)
        for v in rows:
            grid[v.b - 1, v.c - 1] = kind_index[v.kind]
        masked = np.ma.masked_invalid(grid)
        ax.imshow(masked.T, cmap=cmap, vmin=0, vmax=2, origin="lower")
        ax.set_title(f"a = {a}", fontsize=10)
        ax.set_xlabel("b")
        ax.set_ylabel("c")
        ax.set_xticks(range(a), [str(i + 1) for i in range(a)], fontsize=8)
        ax.set_yticks(range(a), [str(i + 1) for i in range(a)], fontsize=8)

    fig.legend(
        handles=[Patch(color=_KIND_COLOR[k], label=k.value) for k in Feasibility],
        loc="lower center", ncols=3, fontsize=8, frameon=False,
    )
    fig.tight_layout(rect=(0, 0.06, 1, 1))
    _save(fig, path)
