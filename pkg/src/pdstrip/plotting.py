"""Figures written next to the CSV/JSON reports (non-interactive backend)."""
from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

VERDICT_COLORS = {
    "pd": "tab:green",
    "co_pd": "tab:green",
    "nd": "tab:red",
    "co_nd": "tab:red",
    "indefinite": "tab:purple",
    "inconclusive": "0.7",
}


def plot_grid(results, path, title="|f| on grid"):
    zs = np.array([z for z, _ in results])
    vals = np.array([r.value if hasattr(r, "value") else np.nan for _, r in results], dtype=complex)
    re = np.unique(zs.real)
    im = np.unique(zs.imag)
    mod = np.abs(vals).reshape(im.size, re.size)
    fig, ax = plt.subplots(figsize=(6, 4.5))
    with np.errstate(divide="ignore"):
        img = ax.pcolormesh(re, im, np.log10(mod), shading="nearest", cmap="viridis")
    fig.colorbar(img, ax=ax, label="log10 |f|")
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_scan(verdicts, path, title="strip verdicts"):
    fig, ax = plt.subplots(figsize=(6, 1.8 + 0.05 * len(verdicts)))
    seen = set()
    for v in verdicts:
        lo, hi = v.strip.finite_window()
        label = v.mode if v.mode not in seen else None
        seen.add(v.mode)
        ax.axvspan(lo, hi, color=VERDICT_COLORS.get(v.mode, "0.5"), alpha=0.6, label=label)
        ax.axvline(lo, color="k", lw=0.5)
    axis = "Im z" if verdicts and verdicts[0].strip.orientation == "horizontal" else "Re s"
    ax.set_xlabel(axis)
    ax.set_yticks([])
    ax.set_title(title)
    ax.legend(loc="upper center", bbox_to_anchor=(0.5, -0.45), ncol=4, fontsize=8, frameon=False)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_moments(records, path, title="moments"):
    ns = [r.n for r in records]
    vals = [abs(r.value) for r in records]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.semilogy(ns, [v if v > 0 else math.nan for v in vals], "o-")
    ax.set_xlabel("n")
    ax.set_ylabel("|M_n|")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_verify(rows, path):
    ids = list(dict.fromkeys(r.criterion for r in rows))
    ok = [all(r.passed for r in rows if r.criterion == c) for c in ids]
    fig, ax = plt.subplots(figsize=(6, 2.5))
    ax.bar(ids, [1] * len(ids), color=["tab:green" if o else "tab:red" for o in ok])
    ax.set_yticks([])
    ax.set_xlabel("criterion")
    ax.set_title(f"acceptance: {sum(ok)}/{len(ok)} pass")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
