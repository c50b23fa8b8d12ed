"""Figures for analysis reports, written straight to files."""
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402

from .io import palette, rows_top_down  # noqa: E402


def plot_point(pt, symbols, path, repeats=(3, 3)):
    """A few periods of a planar periodic point, one colour per symbol."""
    arr = np.tile(pt.array, repeats)
    k = len(symbols)
    cmap = ListedColormap([tuple(c / 255 for c in rgb) for rgb in palette(k)])
    fig, ax = plt.subplots(figsize=(4, 4))
    ax.imshow(np.array(rows_top_down(arr)), cmap=cmap, vmin=-0.5, vmax=k - 0.5,
              interpolation="nearest")
    qx, qy = pt.periods
    for x in range(0, arr.shape[0] + 1, qx):
        ax.axvline(x - 0.5, color="k", lw=0.6)
    for y in range(0, arr.shape[1] + 1, qy):
        ax.axhline(y - 0.5, color="k", lw=0.6)
    ax.set_xticks([])
    ax.set_yticks([])
    ax.set_title(f"periods {qx} x {qy}")
    handles = [plt.Rectangle((0, 0), 1, 1, color=cmap(i)) for i in range(k)]
    ax.legend(handles, symbols, loc="upper left", bbox_to_anchor=(1.02, 1), frameon=False)
    fig.savefig(path, bbox_inches="tight", dpi=120)
    plt.close(fig)


def plot_matrix(m, path, title="strip matrix"):
    entries = np.asarray(m.entries, dtype=float)
    fig, ax = plt.subplots(figsize=(4, 4))
    if entries.size:
        ax.imshow(entries, cmap="Greys", vmin=0, vmax=1, interpolation="nearest")
    ax.set_xlabel("upper strip")
    ax.set_ylabel("lower strip")
    ax.set_title(f"{title} ({len(entries)} x {len(entries)})")
    fig.savefig(path, bbox_inches="tight", dpi=120)
    plt.close(fig)


def plot_window_counts(counts, path):
    sides = np.arange(1, len(counts) + 1)
    fig, ax = plt.subplots(figsize=(5, 3.5))
    shown = np.array([max(c, 0.5) for c in counts], dtype=float)
    ax.bar(sides, shown, color="0.4")
    ax.set_yscale("log")
    ax.set_xlabel("window side n")
    ax.set_ylabel("admissible n x n windows")
    ax.set_xticks(sides)
    fig.savefig(path, bbox_inches="tight", dpi=120)
    plt.close(fig)
