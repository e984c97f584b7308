"""Figure and summary-table output for a session.

Writes PNG figures (occupancy curves, before/after rasters, density
histograms) next to delimited summaries (levels.csv, sample_areas.csv) so a
run can be inspected without the interactive explorer.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .grid import DensityHistogram
from .occupancy import expected_occupied
from .session import Session, analyze_scene


def write_report(session: Session, out_dir: str | Path) -> list[Path]:
    """Render the report for the session's current state. Returns paths."""
    session._require_loaded()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    before = analyze_scene(session.points, session.viewport, session.config)
    after = session.artifacts
    written = [
        _occupancy_figure(session.config.pixels_per_sa, out / "occupancy_curves.png"),
        _raster_figure(before, after, out / "rasters.png"),
        _histogram_figure(before, after, out / "histograms.png"),
        _sample_areas_csv(before, after, out / "sample_areas.csv"),
    ]
    if session.plan is not None:
        written.append(_levels_csv(session, out / "levels.csv"))
    return written


def _occupancy_figure(p: int, path: Path) -> Path:
    """Occupied, colliding and free expectations versus point count."""
    ns = np.arange(0, 4 * p + 1)
    occupied = np.array([expected_occupied(int(n), p) for n in ns])
    collision_pct = np.zeros_like(occupied)
    collision_pct[1:] = (ns[1:] - occupied[1:]) / ns[1:] * 100.0
    free_pct = (p - occupied) / p * 100.0
    fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))
    left.plot(ns, occupied, color="tab:blue")
    left.set_xlabel("points tossed")
    left.set_ylabel(f"expected occupied pixels (of {p})")
    left.axhline(p, color="gray", linewidth=0.6, linestyle="--")
    right.plot(ns, collision_pct, color="tab:red", label="colliding points %")
    right.plot(ns, free_pct, color="tab:green", label="free pixels %")
    right.set_xlabel("points tossed")
    right.set_ylabel("percentage")
    right.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def _raster_figure(before, after, path: Path) -> Path:
    fig, (left, right) = plt.subplots(1, 2, figsize=(11, 5))
    for axis, art, title in ((left, before, "original"), (right, after, "current")):
        axis.imshow(
            art.raster.bitmap, cmap="gray_r", interpolation="nearest", aspect="equal"
        )
        axis.set_title(f"{title}: {art.raster.active_count} active px")
        axis.set_xticks([])
        axis.set_yticks([])
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def _bar(axis, hist: DensityHistogram, title: str, color: str):
    entries = hist.nonzero()
    if entries:
        axis.bar(
            [v for v, _ in entries],
            [c for _, c in entries],
            color=color,
            width=max(1.0, max(v for v, _ in entries) / 80.0),
        )
    axis.set_title(title)
    axis.set_xlabel("density")
    axis.set_ylabel("sample areas")


def _histogram_figure(before, after, path: Path) -> Path:
    fig, axes = plt.subplots(2, 2, figsize=(11, 7))
    _bar(axes[0, 0], before.data_histogram, "data density, original", "tab:blue")
    _bar(axes[0, 1], after.data_histogram, "data density, current", "tab:blue")
    _bar(
        axes[1, 0],
        before.represented_histogram,
        "represented density, original",
        "tab:orange",
    )
    _bar(
        axes[1, 1],
        after.represented_histogram,
        "represented density, current",
        "tab:orange",
    )
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def _levels_csv(session: Session, path: Path) -> Path:
    plan = session.plan
    retained = {}
    original = {}
    for entry in plan.entries:
        level = plan.partition.level_for(entry.count)
        retained[level] = retained.get(level, 0) + entry.retain
        original[level] = original.get(level, 0) + entry.count
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["level", "density_lo", "density_hi", "sa_count",
             "target_rd", "points_before", "points_after"]
        )
        for index, level in enumerate(plan.partition.levels, start=1):
            writer.writerow(
                [index, level.density_lo, level.density_hi, level.sa_count,
                 level.target_rd, original.get(level, 0), retained.get(level, 0)]
            )
    return path


def _sample_areas_csv(before, after, path: Path) -> Path:
    data_b = before.data_grid.values
    data_a = after.data_grid.values
    repr_b = before.represented_grid.values
    repr_a = after.represented_grid.values
    occupied = np.argwhere((data_b + data_a + repr_b + repr_a) > 0)
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["row", "col", "data_before", "data_after",
             "represented_before", "represented_after"]
        )
        for row, col in occupied:
            writer.writerow(
                [int(row), int(col), int(data_b[row, col]), int(data_a[row, col]),
                 int(repr_b[row, col]), int(repr_a[row, col])]
            )
    return path
