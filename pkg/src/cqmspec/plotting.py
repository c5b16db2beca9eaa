"""Figure rendering for the CLI report path.

All figures are written to files (Agg backend), with fixed sizes and no
timestamps, so repeated runs produce byte-identical images.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

FIG_SIZE = (6.4, 4.0)
DPI = 130

plt.rcParams.update(
    {
        "font.size": 9,
        "axes.grid": True,
        "grid.alpha": 0.3,
        "lines.linewidth": 1.4,
        "figure.autolayout": True,
    }
)


def _finish(fig, path):
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def plot_series(path, x, series, xlabel, ylabel, title, logy=False):
    """Line plot of one or more named series over a common abscissa."""
    fig, ax = plt.subplots(figsize=FIG_SIZE)
    for label, y in series.items():
        ax.plot(x, y, label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    if logy:
        ax.set_yscale("log")
    if len(series) > 1:
        ax.legend(frameon=False)
    _finish(fig, path)


def plot_levels(path, ns, energies, title):
    fig, ax = plt.subplots(figsize=FIG_SIZE)
    for n, e in zip(ns, energies):
        ax.hlines(e, n - 0.3, n + 0.3)
    ax.plot(ns, energies, "o", ms=3)
    ax.set_xlabel("n")
    ax.set_ylabel("energy")
    ax.set_title(title)
    _finish(fig, path)


def plot_check_bars(path, labels, rel_errs, tolerances, title):
    fig, ax = plt.subplots(figsize=(7.2, 4.2))
    idx = np.arange(len(labels))
    floor = 1e-17
    ax.bar(idx, np.maximum(rel_errs, floor), width=0.6, label="measured")
    ax.plot(idx, tolerances, "k_", ms=14, label="tolerance")
    ax.set_yscale("log")
    ax.set_xticks(idx)
    ax.set_xticklabels(labels, rotation=60, ha="right", fontsize=7)
    ax.set_ylabel("relative error")
    ax.set_title(title)
    ax.legend(frameon=False)
    _finish(fig, path)


def plot_convergence(path, x, err_series, xlabel, title, guide_orders=()):
    fig, ax = plt.subplots(figsize=FIG_SIZE)
    for label, errs in err_series.items():
        ax.loglog(x, errs, "o-", label=label)
    x = np.asarray(x, dtype=float)
    for p in guide_orders:
        ref = err_series[next(iter(err_series))][0] * (x / x[0]) ** (-p)
        ax.loglog(x, ref, "--", alpha=0.6, label=f"order {p:g}")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("abs error")
    ax.set_title(title)
    ax.legend(frameon=False)
    _finish(fig, path)
