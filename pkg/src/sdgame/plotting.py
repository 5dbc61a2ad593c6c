"""Render study datasets to image files (Agg backend, no display needed)."""
from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .figures import FigureDataset  # noqa: E402


def _records(dataset: FigureDataset) -> list[dict]:
    return [dict(zip(dataset.columns, row)) for row in dataset.rows]


def _group(records, key):
    grouped = defaultdict(list)
    for rec in records:
        grouped[key(rec)].append(rec)
    return grouped


def _plot_f2(records, ax):
    for n, recs in sorted(_group(records, lambda r: r["n"]).items()):
        omegas = [r["omega"] for r in recs]
        ax.plot(omegas, [r["total_home_isolation"] for r in recs], marker="o",
                label=f"N={n}, home isolation")
        ax.plot(omegas, [r["total_random_location"] for r in recs], marker="s",
                linestyle="--", label=f"N={n}, random location")
    ax.set_xlabel("isolation weight omega")
    ax.set_ylabel("mean total incentive")
    ax.legend(fontsize=8)


def _plot_fraction_bars(records, ax, value_key, ylabel):
    by_n = sorted(_group(records, lambda r: r["n"]).items())
    fractions = sorted({r["isolation_fraction"] for r in records})
    width = 0.8 / max(len(by_n), 1)
    for k, (n, recs) in enumerate(by_n):
        values = {r["isolation_fraction"]: r[value_key] for r in recs}
        xs = [i + k * width for i in range(len(fractions))]
        ax.bar(xs, [values[f] for f in fractions], width=width, label=f"N={n}")
    ax.set_xticks([i + 0.4 - width / 2 for i in range(len(fractions))])
    ax.set_xticklabels([f"{int(f * 100)}%" for f in fractions])
    ax.set_xlabel("home isolation share")
    ax.set_ylabel(ylabel)
    ax.legend(fontsize=8)


def _plot_f6(records, ax):
    for n, recs in sorted(_group(records, lambda r: r["n"]).items()):
        recs = sorted(recs, key=lambda r: r["isolation_fraction"])
        ax.plot([r["isolation_fraction"] for r in recs],
                [r["max_lockdown_days"] for r in recs], marker="o", label=f"N={n}")
    ax.set_xlabel("home isolation share")
    ax.set_ylabel("maximum lockdown days")
    ax.legend(fontsize=8)


def render_figure(dataset: FigureDataset, path) -> Path:
    """Draw one dataset to ``path``; layout depends on the figure id."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    records = _records(dataset)
    if dataset.figure_id == "F3":
        fractions = sorted({r["isolation_fraction"] for r in records})
        groups = sorted(_group(records, lambda r: r["n"]).items())
        fig, axes = plt.subplots(2, 2, figsize=(9, 7), squeeze=False)
        for ax, (n, recs) in zip(axes.ravel(), groups):
            for fraction in fractions:
                pts = [r for r in recs if r["isolation_fraction"] == fraction]
                ax.step([p["total_incentive"] for p in pts],
                        [p["cumulative_probability"] for p in pts],
                        where="post", label=f"{int(fraction * 100)}% home")
            ax.set_title(f"N={n}", fontsize=9)
            ax.set_xlabel("total incentive")
            ax.set_ylabel("cumulative probability")
            ax.legend(fontsize=7)
        for ax in axes.ravel()[len(groups):]:
            ax.set_visible(False)
    elif dataset.figure_id == "F7":
        fractions = sorted({r["isolation_fraction"] for r in records})
        fig, axes = plt.subplots(2, 2, figsize=(9, 7), squeeze=False)
        for ax, fraction in zip(axes.ravel(), fractions):
            recs = [r for r in records if r["isolation_fraction"] == fraction]
            for ratio, pts in sorted(_group(recs, lambda r: r["collection_ratio"]).items()):
                pts = sorted(pts, key=lambda r: r["r0"])
                ax.plot([p["r0"] for p in pts], [p["max_lockdown_days"] for p in pts],
                        marker="o", label=f"collections {int(ratio * 100)}%")
            ax.set_title(f"{int(fraction * 100)}% home isolation", fontsize=9)
            ax.set_xlabel("initial stock")
            ax.set_ylabel("maximum lockdown days")
            ax.legend(fontsize=7)
        for ax in axes.ravel()[len(fractions):]:
            ax.set_visible(False)
    else:
        fig, ax = plt.subplots(figsize=(7, 5))
        if dataset.figure_id == "F2":
            _plot_f2(records, ax)
        elif dataset.figure_id == "F4":
            _plot_fraction_bars(records, ax, "mean_total_incentive", "mean total incentive")
        elif dataset.figure_id == "F5":
            _plot_fraction_bars(records, ax, "mean_individual_incentive",
                                "mean individual incentive")
        else:
            _plot_f6(records, ax)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_ecdf(values, probabilities, path, xlabel="total incentive") -> Path:
    """Step plot of an empirical CDF."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.step(values, probabilities, where="post")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("cumulative probability")
    ax.set_ylim(0, 1.05)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
