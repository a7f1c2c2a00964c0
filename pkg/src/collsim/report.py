"""Figure rendering for sweep reports: modeled time vs element count."""

from __future__ import annotations

from typing import Mapping, Sequence


def render_sweep_figure(rows: Sequence[Mapping], path: str) -> None:
    """Plot one modeled-time curve per (op, algo, k) series and save to `path`.

    Axes are log-log; the file format follows the path suffix (png, pdf, svg).
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    series: dict[tuple, list[tuple[int, float]]] = {}
    for row in rows:
        key = (row["op"], row["algo"], row["k"])
        series.setdefault(key, []).append((row["c"], row["modeled_time"]))

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for key in sorted(series):
        pts = sorted(series[key])
        op, algo, k = key
        ax.plot(
            [c for c, _ in pts],
            [t for _, t in pts],
            marker="o",
            markersize=3,
            label=f"{op} {algo} k={k}",
        )
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("elements per process c")
    ax.set_ylabel("modeled time")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
