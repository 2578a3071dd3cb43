"""Figure rendering for sweep reports.

Draws the IPC landscape over the swept design space and the per-criterion
accuracy bars, writing PNG files next to the CSV output.  Uses the Agg
backend; this module is batch-only.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .explorer import DOMINANT_ACCURACY_FLOOR_PERCENT, AccuracyReport, SweepGrid


def render_sweep_figures(
    grid: SweepGrid, report: AccuracyReport, out_dir: str | Path
) -> list[Path]:
    """Render the IPC-vs-size curves and the accuracy bar chart.

    Returns the paths written, IPC figure first.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = [out_dir / "sweep_ipc.png", out_dir / "accuracy.png"]
    _render_ipc_curves(grid, report, paths[0])
    _render_accuracy_bars(report, paths[1])
    return paths


def _render_ipc_curves(grid: SweepGrid, report: AccuracyReport, path: Path) -> None:
    by_line_size: dict[int, list[tuple[float, float]]] = {}
    for config, result in grid.entries:
        point = (config.total_bytes / 1024.0, result.ipc)
        by_line_size.setdefault(config.line_size_bytes, []).append(point)

    fig, ax = plt.subplots(figsize=(8, 5))
    for line_size in sorted(by_line_size):
        points = by_line_size[line_size]
        ax.plot(
            [kb for kb, _ in points],
            [ipc for _, ipc in points],
            marker="o",
            markersize=3,
            linewidth=1,
            label=f"{line_size} B line",
        )
    for entry in report.entries:
        kb = entry.config.total_bytes / 1024.0
        ax.scatter([kb], [entry.ipc], marker="v", s=60, zorder=5, color="black")
        ax.annotate(
            entry.criterion.value,
            (kb, entry.ipc),
            textcoords="offset points",
            xytext=(4, 6),
            fontsize=8,
        )
    ax.set_xscale("log", base=2)
    ax.set_xlabel("total cache size (KB)")
    ax.set_ylabel("IPC")
    ax.set_title("IPC across the cache design space")
    ax.grid(True, alpha=0.4)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _render_accuracy_bars(report: AccuracyReport, path: Path) -> None:
    labels = [entry.criterion.value for entry in report.entries]
    values = [entry.accuracy_percent for entry in report.entries]

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(labels, values, color="steelblue", edgecolor="black")
    ax.axhline(
        DOMINANT_ACCURACY_FLOOR_PERCENT,
        color="firebrick",
        linestyle="--",
        linewidth=1,
        label=f"{DOMINANT_ACCURACY_FLOOR_PERCENT:.0f}% floor",
    )
    ax.set_ylim(0, 105)
    ax.set_ylabel("IPC accuracy vs. sweep maximum (%)")
    ax.set_title("Estimation accuracy by criterion")
    for index, value in enumerate(values):
        ax.text(index, value + 1, f"{value:.1f}", ha="center", fontsize=8)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
