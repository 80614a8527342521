"""Matplotlib figures written next to the CSV/JSON reports."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

RC = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "figure.figsize": (4.8, 3.2),
    "savefig.dpi": 150,
    "svg.hashsalt": "morphokit",
}


def table_figure(rows: list[dict], path: str | Path, title: str = "") -> Path:
    """Tail probability against t: Monte Carlo (with 2 s.e. bars) and approximations."""
    path = Path(path)
    t = np.array([r["t"] for r in rows], dtype=float)
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        ax.errorbar(t, [r["mc"] for r in rows], yerr=[2 * r["mc_stderr"] for r in rows],
                    fmt="o", ms=3, color="k", label="Monte Carlo")
        ax.plot(t, [r["vom"] for r in rows], "-", color="C0", label="VOM")
        if "vomsad" in rows[0]:
            ax.plot(t, [r["vomsad"] for r in rows], "--", color="C3", label="VOM+SAD")
        ax.set_yscale("log")
        ax.set_xlabel("t")
        ax.set_ylabel(r"$P_F\{G_s > t\}$")
        if title:
            ax.set_title(title)
        ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path, metadata=_metadata(path))
        plt.close(fig)
    return path


def scores_figure(scores: np.ndarray, labels: Sequence[str], path: str | Path, explained: Sequence[float] = ()) -> Path:
    path = Path(path)
    S = np.asarray(scores, dtype=float)
    y = S[:, 1] if S.shape[1] > 1 else np.zeros(len(S))
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        ax.axhline(0, color="0.7", lw=0.6)
        ax.axvline(0, color="0.7", lw=0.6)
        ax.scatter(S[:, 0], y, s=14, color="C0")
        for xi, yi, label in zip(S[:, 0], y, labels):
            ax.annotate(label, (xi, yi), xytext=(3, 3), textcoords="offset points", fontsize=7)
        ax.set_xlabel("PC1" + (f" ({explained[0]:.3g})" if len(explained) > 0 else ""))
        ax.set_ylabel("PC2" + (f" ({explained[1]:.3g})" if len(explained) > 1 else ""))
        fig.tight_layout()
        fig.savefig(path, metadata=_metadata(path))
        plt.close(fig)
    return path


def _metadata(path: Path) -> dict:
    # drop timestamps so figures are reproducible
    suffix = path.suffix.lower()
    if suffix == ".svg":
        return {"Date": None}
    if suffix == ".pdf":
        return {"CreationDate": None}
    return {}
