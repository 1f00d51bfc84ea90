"""Figures for the report path of the CLI.  Rendered headless with Agg."""

from __future__ import annotations

from math import comb
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _figure(width=6.0, height=None):
    golden = (5 ** 0.5 - 1) / 2
    fig, ax = plt.subplots(figsize=(width, height or width * golden))
    return fig, ax


def h_prime_figure(h_prime, betti, path, title=""):
    """Bars of h'_j against the lower bound C(d,j) b_{j-1}."""
    d = len(h_prime) - 1
    js = list(range(d + 1))
    bound = [1] + [comb(d, j) * betti[j] for j in range(1, d)] + [betti[d]]
    fig, ax = _figure()
    ax.bar([j - 0.2 for j in js], list(h_prime), width=0.4, label="h'")
    ax.bar([j + 0.2 for j in js], bound, width=0.4, label="lower bound", color="0.6")
    ax.set_xticks(js)
    ax.set_xlabel("j")
    ax.legend(frameon=False)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return Path(path)


def ridge_figure(histogram: dict, path, title=""):
    """Number of ridges per facet multiplicity; multiplicity 3+ is shaded."""
    fig, ax = _figure()
    ms = sorted(histogram)
    ax.bar(ms, [histogram[m] for m in ms], color=["C0" if m <= 2 else "C3" for m in ms])
    ax.set_xticks(ms)
    ax.set_xlabel("facets containing the ridge")
    ax.set_ylabel("ridges")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return Path(path)


def sweep_figure(results: dict, path):
    """Pass/fail grid over (d, k); ``results`` maps (k, d) to a bool."""
    ds = sorted({d for _, d in results})
    ks = sorted({k for k, _ in results})
    grid = [[float("nan")] * len(ds) for _ in ks]
    for (k, d), ok in results.items():
        grid[ks.index(k)][ds.index(d)] = 1.0 if ok else 0.0
    fig, ax = _figure(width=1 + 0.6 * len(ds), height=1 + 0.5 * len(ks))
    ax.imshow(grid, origin="lower", cmap="RdYlGn", vmin=0, vmax=1, aspect="auto")
    ax.set_xticks(range(len(ds)), [str(d) for d in ds])
    ax.set_yticks(range(len(ks)), [str(k) for k in ks])
    ax.set_xlabel("d")
    ax.set_ylabel("k")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return Path(path)
