"""Headless figure rendering for the CLI report path.

Figures are written to files next to the delimited output, never shown
interactively.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["plot_table", "plot_field", "plot_scales"]


def plot_table(abscissa, values, path: str, xlabel: str = "r", ylabel: str = "value",
               title: str = "", loglog: bool = False) -> None:
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    if loglog:
        sel = (np.asarray(abscissa) > 0) & (np.asarray(values) > 0)
        ax.loglog(np.asarray(abscissa)[sel], np.asarray(values)[sel], lw=1.2)
    else:
        ax.plot(abscissa, values, lw=1.2)
        ax.axhline(0.0, color="0.7", lw=0.6)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title, fontsize=9)
    ax.grid(True, linestyle=":", alpha=0.6)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_field(values, spacing: float, path: str, title: str = "") -> None:
    L = values.shape[0]
    extent = [0.0, L * spacing, 0.0, L * spacing]
    fig, ax = plt.subplots(figsize=(4.6, 4.0))
    im = ax.imshow(values, origin="lower", extent=extent, cmap="viridis")
    fig.colorbar(im, ax=ax, shrink=0.85)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    if title:
        ax.set_title(title, fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_scales(alphas, lambdas, path: str, title: str = "") -> None:
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.plot(alphas, lambdas, marker="o", ms=3, lw=1.0)
    ax.set_xlabel(r"$\alpha$")
    ax.set_ylabel(r"$\lambda_c^{(\alpha)}$")
    if title:
        ax.set_title(title, fontsize=9)
    ax.grid(True, linestyle=":", alpha=0.6)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
