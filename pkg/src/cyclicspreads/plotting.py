"""Figures for the CLI report verbs (Agg backend, files only)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def _save(fig, path):
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_counts(rows, q: int, path):
    """Observed vs expected bars for the count report. rows: (name, observed, expected)."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 3.0))
        names = [r[0] for r in rows]
        x = range(len(rows))
        ax.bar([i - 0.2 for i in x], [r[1] for r in rows], width=0.4, label="sweep", color="#4c72b0")
        ax.bar([i + 0.2 for i in x], [r[2] for r in rows], width=0.4, label="formula", color="#dd8452")
        ax.set_xticks(list(x))
        ax.set_xticklabels(names, rotation=20)
        ax.set_yscale("symlog")
        ax.set_ylabel("count")
        ax.set_title(f"spread-condition cubics over F_{{{q}^2}}")
        ax.legend(frameon=False)
        return _save(fig, path)


def plot_classes(T, classes, path):
    """delta of every P_{delta,1} in each class, drawn in the (a0, a1) coordinate plane."""
    q = T.q
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.0, 4.0))
        cmap = plt.get_cmap("tab10")
        for i, c in enumerate(classes):
            xs = [d % q for d in c.p_deltas]
            ys = [d // q for d in c.p_deltas]
            ax.scatter(xs, ys, s=28, color=cmap(i % 10), label=f"class {i} (rep {c.rep_delta})")
            ax.scatter([c.rep_delta % q], [c.rep_delta // q], s=90, facecolors="none",
                       edgecolors=cmap(i % 10), linewidths=1.2)
        ax.set_xlim(-0.5, q - 0.5)
        ax.set_ylim(-0.5, q - 0.5)
        ax.set_xlabel("a0")
        ax.set_ylabel("a1")
        ax.set_aspect("equal")
        ax.set_title(f"P_(delta,1) classes, q = {q}")
        ax.legend(frameon=False, loc="upper left", bbox_to_anchor=(1.0, 1.0))
        return _save(fig, path)
