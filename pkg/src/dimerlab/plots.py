"""Matplotlib figures for reports: truncated monomial counts by degree."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def counts_figure(series: dict, title: str = "", path=None):
    """Bar chart of monomial counts per total degree.

    ``series`` maps a legend label to a MonoidDescription.  Written to
    ``path`` when given (format from the suffix); the figure is returned.
    """
    fig, ax = plt.subplots(figsize=(6, 3.6))
    n = len(series)
    width = 0.8 / max(n, 1)
    for k, (name, mon) in enumerate(series.items()):
        counts = mon.counts_by_degree()
        xs = [d + (k - (n - 1) / 2) * width for d in range(len(counts))]
        ax.bar(xs, counts, width=width, label=name)
    ax.set_xlabel("total degree")
    ax.set_ylabel("monomials")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    if path is not None:
        with matplotlib.rc_context({"svg.hashsalt": "dimerlab"}):
            fig.savefig(path, metadata=_stable_metadata(path))
        plt.close(fig)
    return fig


def _stable_metadata(path) -> dict:
    # drop version and date stamps so reruns give identical files
    suffix = str(path).rsplit(".", 1)[-1].lower()
    if suffix == "png":
        return {"Software": None}
    if suffix == "svg":
        return {"Creator": None, "Date": None}
    if suffix == "pdf":
        return {"Creator": None, "Producer": None, "CreationDate": None}
    return {}
