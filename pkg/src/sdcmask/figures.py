"""Matplotlib renderings of the report series, saved to files.

All figures are drawn on the Agg backend with fixed size/dpi and stripped
PNG metadata, so identical inputs produce byte-identical image files.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_FIGSIZE = (7.0, 4.5)
_SAVE = {"dpi": 150, "metadata": {"Software": None}}


def _finish(fig, ax, out, title, xlabel, ylabel):
    ax.set_title(title)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    fig.tight_layout()
    fig.savefig(out, format="png", **_SAVE)
    plt.close(fig)


def density_series(
    values: np.ndarray, other: np.ndarray | None = None, bins: int = 100
) -> tuple[np.ndarray, np.ndarray, np.ndarray | None]:
    """Histogram densities on edges shared by both columns.

    Returns (edges, density of values, density of other or None).
    """
    pooled = values if other is None else np.concatenate([values, other])
    edges = np.histogram_bin_edges(pooled, bins=bins)
    dens, _ = np.histogram(values, bins=edges, density=True)
    dens_other = None
    if other is not None:
        dens_other, _ = np.histogram(other, bins=edges, density=True)
    return edges, dens, dens_other


def save_density_figure(
    out,
    edges: np.ndarray,
    density: np.ndarray,
    reference: np.ndarray | None = None,
    title: str = "Density",
) -> None:
    """Density curve through bin centers, optionally over a reference curve."""
    centers = 0.5 * (edges[:-1] + edges[1:])
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    if reference is not None:
        ax.plot(centers, reference, color="0.6", lw=1.2, label="original")
        ax.plot(centers, density, color="C0", lw=1.2, label="masked")
        ax.legend()
    else:
        ax.plot(centers, density, color="C0", lw=1.2)
    _finish(fig, ax, out, title, "value", "density")


def save_absdiff_figure(out, diffs: np.ndarray, title: str) -> None:
    """Per-record absolute perturbation, records ordered by original value."""
    idx = np.arange(1, diffs.size + 1)
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.plot(idx, diffs, color="C0", lw=0.6)
    _finish(fig, ax, out, title, "rank of original value", "|masked - original|")


def save_rank_pairs_figure(out, rank_x: np.ndarray, rank_y: np.ndarray, title: str) -> None:
    """Original vs masked rank scatter; the diagonal means no swaps."""
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.scatter(rank_x, rank_y, s=3, color="C0", alpha=0.5, linewidths=0)
    lim = max(int(rank_x.max()), int(rank_y.max()))
    ax.plot([1, lim], [1, lim], color="0.7", lw=0.8)
    _finish(fig, ax, out, title, "original rank", "masked rank")


def save_summary_figure(out, alphas, pearsons, spearmans) -> None:
    """Correlation between original and masked data across the alpha grid."""
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.plot(alphas, pearsons, "o-", color="C0", label="pearson")
    ax.plot(alphas, spearmans, "s--", color="C1", label="spearman")
    ax.set_ylim(0.0, 1.05)
    ax.legend()
    _finish(
        fig, ax, out,
        "Original vs masked correlation by similarity",
        "similarity alpha", "correlation",
    )
