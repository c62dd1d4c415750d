"""Figure rendering for the report path.

Each function takes plain arrays plus an output path, draws one figure
with the non-interactive Agg backend, and returns the path written.
PNG metadata is stripped so repeated runs stay byte-comparable.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_SAVE_KW = {"dpi": 150, "bbox_inches": "tight", "metadata": {"Software": None}}


def save_temperature_sweep(temperatures, delta0s, tc, branch, path) -> Path:
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.plot(temperatures, delta0s, "o-", ms=3.5, lw=1.2, color="C0")
    ax.axvline(tc, color="C3", lw=1.0, ls="--", label=f"$T_c$ = {tc:.4g}")
    ax.set_xlabel("$T$ (units of $\\omega_c$)")
    ax.set_ylabel("$\\Delta_0(T)$")
    ax.set_title(f"Self-consistent gap, {branch} branch")
    ax.legend(frameon=False)
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
    return Path(path)


def save_gap_profile(theta, gap_row, delta0, branch, path) -> Path:
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.plot(theta, gap_row, "o", ms=3.5, color="C0", label="solved $|\\Delta(\\theta)|$")
    if branch == "nonesp":
        ref = delta0 * np.sqrt(3.0 / (8.0 * np.pi)) * np.sin(theta)
        ax.plot(theta, ref, "-", lw=1.0, color="C3",
                label="$\\Delta_0\\sqrt{3/8\\pi}\\,\\sin\\theta$")
    else:
        ax.axhline(delta0, color="C3", lw=1.0, label="$\\Delta_0$")
    ax.set_xlabel("$\\theta$")
    ax.set_ylabel("$|\\Delta(\\mathbf{k})|$")
    ax.set_title(f"Angular gap profile, {branch} branch")
    ax.legend(frameon=False)
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
    return Path(path)


def save_closure_residuals(pairs, path) -> Path:
    """Heatmap of the closure residuals over the 10x10 generator pairs."""
    labels = [f"{a}{b}" for a in range(1, 6) for b in range(a + 1, 6)]
    n = len(labels)
    grid = np.zeros((n, n))
    index = {tuple(map(int, lab)): i for i, lab in enumerate(labels)}
    for entry in pairs:
        a, b, c, d = entry["pair"]
        grid[index[(a, b)], index[(c, d)]] = entry["residual"]
    fig, ax = plt.subplots(figsize=(5.2, 4.4))
    im = ax.imshow(np.log10(grid + 1e-18), cmap="viridis", vmin=-18, vmax=0)
    ax.set_xticks(range(n), labels, fontsize=6, rotation=90)
    ax.set_yticks(range(n), labels, fontsize=6)
    ax.set_xlabel("$I_{cd}$")
    ax.set_ylabel("$I_{ab}$")
    ax.set_title("log10 closure residual per generator pair")
    fig.colorbar(im, ax=ax, shrink=0.85)
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
    return Path(path)


def save_field_residuals(mu_bs, residuals, path) -> Path:
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.semilogy(mu_bs, np.maximum(residuals, 1e-18), "o", ms=4, color="C0")
    ax.set_xlabel("$\\mu B$")
    ax.set_ylabel("residual of the claimed diagonal form")
    ax.set_title("Zeeman-coupled diagonalization check")
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
    return Path(path)
