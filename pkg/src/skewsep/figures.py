"""Summary charts rendered next to report output.

Two PNG files per report: verdict counts as a bar chart, and the
shapes of the extracted witnesses (pair-family sizes, single-witness
support sizes) as histograms.  Rendering is headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .report import document_entries


def _witness_shapes(entries):
    pair_sizes = []
    support_sizes = []
    for e in entries:
        rep = e["report"]
        if rep.get("witness_pairs"):
            pair_sizes.append(len(rep["witness_pairs"]))
        wh = rep.get("witness_h")
        if wh:
            support_sizes.append(
                sum(1 for comp in wh["coeffs"] for v in comp if v)
            )
    return pair_sizes, support_sizes


def render_figures(doc, out_base):
    """Write <out_base>_counts.png and <out_base>_witnesses.png."""
    entries = document_entries(doc)
    summary = doc.get("summary") or {
        "candidates": len(entries),
        "invariant": sum(1 for e in entries if e["report"]["invariant"]),
        "separable": sum(1 for e in entries if e["report"]["separable"] is True),
        "hirata": sum(1 for e in entries if e["report"]["hirata"] is True),
    }
    written = []

    labels = ["candidates", "invariant", "separable", "hirata"]
    values = [summary.get(k, 0) for k in labels]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar(labels, values, color=["#888", "#4878b0", "#59a14f", "#e15759"])
    for i, v in enumerate(values):
        ax.text(i, v, str(v), ha="center", va="bottom", fontsize=9)
    ax.set_ylabel("count")
    ax.set_title("verdict counts")
    fig.tight_layout()
    path = f"{out_base}_counts.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    pair_sizes, support_sizes = _witness_shapes(entries)
    fig, axes = plt.subplots(1, 2, figsize=(7, 3.2))
    for ax, data, name in (
        (axes[0], pair_sizes, "pairs per family"),
        (axes[1], support_sizes, "nonzero coords of h"),
    ):
        if data:
            top = max(data)
            ax.hist(data, bins=range(1, top + 2), align="left", rwidth=0.8,
                    color="#4878b0")
            ax.set_xticks(range(1, top + 1))
        else:
            ax.text(0.5, 0.5, "none", ha="center", va="center",
                    transform=ax.transAxes, color="#888")
        ax.set_xlabel(name)
        ax.set_ylabel("witnesses")
    fig.suptitle("witness shapes")
    fig.tight_layout()
    path = f"{out_base}_witnesses.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)
    return written
