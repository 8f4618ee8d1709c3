"""Matplotlib report figures written next to the CSV output."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from litho_sim.pattern import _normalize_shape  # noqa: E402


def _finish(fig, path):
    fig.tight_layout()
    # fixed metadata keeps repeated runs byte-identical
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)


def plot_curves(series, path, title="", xlabel=r"$\phi/\pi$", ylabel="deposition rate"):
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for label, x, y in series:
        ax.plot(x / math.pi, y, lw=1.2, label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    if len(series) > 1:
        ax.legend(frameon=False, fontsize=9)
    _finish(fig, path)


def plot_figure1(data, path):
    """Normalized |sin phi| fits for each photon cutoff against the exact pattern."""
    phi = data["phi"]
    fig, ax = plt.subplots(figsize=(6.4, 4.6))
    ax.plot(phi / math.pi, _normalize_shape(data["reference"]), "k-", lw=1.8,
            label=r"$|\sin\phi|$")
    styles = ("--", "-.", ":")
    for i, row in enumerate(data["fits"]):
        ax.plot(phi / math.pi, _normalize_shape(row["curve"].values), styles[i % 3], lw=1.2,
                label=f"N = {row['n_max']} (rms {row['rms']:.3f})")
    ax.set_xlabel(r"$\phi/\pi$")
    ax.set_ylabel("normalized exposure")
    ax.legend(frameon=False, fontsize=9)
    _finish(fig, path)
