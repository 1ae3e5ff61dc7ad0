"""Figures for the CLI report paths.

Everything renders with the Agg backend straight to a file; nothing is shown
interactively.
"""

from __future__ import annotations

import math
from collections import Counter

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .circles import EdgePartition  # noqa: E402
from .preorder import PreOrder  # noqa: E402

_PALETTE = plt.get_cmap("tab10")


def _circle_layout(n):
    if n == 1:
        return [(0.0, 0.0)]
    return [(math.cos(2 * math.pi * k / n + math.pi / 2), math.sin(2 * math.pi * k / n + math.pi / 2)) for k in range(n)]


def plot_edge_classes(poset: PreOrder, partition: EdgePartition, path, title=None):
    """Comparability graph on a circle, each undirected edge colored by its edge class."""
    pos = _circle_layout(poset.n)
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    for k, cls in enumerate(partition.classes):
        color = _PALETTE(k % 10)
        drawn = set()
        for i, j in cls:
            a, b = sorted((i, j))
            if (a, b) in drawn:
                continue
            drawn.add((a, b))
            (x0, y0), (x1, y1) = pos[a], pos[b]
            ax.plot([x0, x1], [y0, y1], color=color, lw=2.2, zorder=1, label=f"class {k + 1}" if len(drawn) == 1 else None)
    for (x, y), lab in zip(pos, poset.elements):
        ax.scatter([x], [y], s=360, c="white", edgecolors="black", zorder=2)
        ax.text(x, y, lab, ha="center", va="center", fontsize=10, zorder=3)
    ax.set_aspect("equal")
    ax.axis("off")
    if partition.classes:
        ax.legend(loc="upper left", bbox_to_anchor=(1.0, 1.0), frameon=False, fontsize=8)
    ax.set_title(title or f"{len(partition.classes)} edge classes")
    fig.savefig(path, bbox_inches="tight", dpi=120)
    plt.close(fig)


def plot_enumeration(rows, path):
    """Summary of an enumeration run.

    ``rows`` are dicts with keys size, guaranteed, dim_commuting, dim_proper.
    Left panel: pre-orders per size split by the verdict; right panel: the
    two dimensions against each other.
    """
    sizes = sorted({r["size"] for r in rows})
    yes = Counter(r["size"] for r in rows if r["guaranteed"])
    no = Counter(r["size"] for r in rows if not r["guaranteed"])
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(9, 3.8))
    ax0.bar(sizes, [yes[s] for s in sizes], color="tab:blue", label="all proper")
    ax0.bar(sizes, [no[s] for s in sizes], bottom=[yes[s] for s in sizes], color="tab:red", label="improper exists")
    ax0.set_xlabel("|X|")
    ax0.set_ylabel("labeled pre-orders")
    ax0.set_xticks(sizes)
    ax0.legend(frameon=False)

    pts = Counter((r["dim_proper"], r["dim_commuting"], r["guaranteed"]) for r in rows)
    for (dp, dc, g), c in sorted(pts.items()):
        ax1.scatter([dp], [dc], s=12 + 6 * math.sqrt(c), c="tab:blue" if g else "tab:red", alpha=0.7)
    hi = max([r["dim_commuting"] for r in rows] + [1])
    ax1.plot([0, hi], [0, hi], color="gray", lw=0.8, ls="--")
    ax1.set_xlabel("dim proper maps")
    ax1.set_ylabel("dim commuting maps")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
