"""Dataset ingestion, synthetic generation, and artifact (de)serialization.

File formats:

- points: delimited text with a header row (comma by default),
- rasters: binary portable graymap (P5), active pixels 255,
- grids, histograms, plans: JSON documents (see the ``*_to_obj`` builders),
  written with a trailing newline so files diff cleanly.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InputDataError, SpecError
from .grid import DensityGrid, DensityHistogram, GridConfig, PointSet, Raster
from .sampling import Level, LevelPartition, PlanEntry, SamplingPlan


@dataclass
class DatasetMeta:
    source: str
    point_count: int
    x_column: str
    y_column: str
    x_min: float
    x_max: float
    y_min: float
    y_max: float
    skipped_rows: int = 0


@dataclass(frozen=True)
class UniformBox:
    """Points uniform over an axis-aligned box."""

    weight: float
    x_min: float
    x_max: float
    y_min: float
    y_max: float


@dataclass(frozen=True)
class GaussianBlob:
    """Points normal around a center, clipped into the generator bounds."""

    weight: float
    center_x: float
    center_y: float
    spread_x: float
    spread_y: float


Component = UniformBox | GaussianBlob


@dataclass(frozen=True)
class GeneratorSpec:
    total: int
    components: tuple[Component, ...]
    seed: int = 0
    bounds: tuple[float, float, float, float] = (0.0, 1.0, 0.0, 1.0)

    def __post_init__(self):
        if self.total < 0:
            raise SpecError(f"total must be >= 0, got {self.total}")
        if not self.components:
            raise SpecError("generator needs at least one component")
        weight_sum = sum(c.weight for c in self.components)
        if any(c.weight < 0 for c in self.components):
            raise SpecError("component weights must be non-negative")
        if abs(weight_sum - 1.0) > 1e-9:
            raise SpecError(f"component weights must sum to 1, got {weight_sum}")


def parcel_like_spec(total: int = 160_000, seed: int = 0) -> GeneratorSpec:
    """Mail-parcel-shaped mixture: a very tight mass near the origin, a
    mid-range spread, a small far cluster, and a uniform background."""
    return GeneratorSpec(
        total=total,
        seed=seed,
        components=(
            GaussianBlob(0.42, 0.02, 0.02, 0.012, 0.012),
            GaussianBlob(0.28, 0.12, 0.10, 0.060, 0.050),
            GaussianBlob(0.05, 0.80, 0.85, 0.040, 0.040),
            UniformBox(0.25, 0.0, 1.0, 0.0, 1.0),
        ),
    )


def generate(spec: GeneratorSpec) -> PointSet:
    """Sample the mixture; deterministic for equal (spec, seed)."""
    rng = np.random.default_rng(np.random.SeedSequence(entropy=spec.seed))
    weights = np.array([c.weight for c in spec.components], dtype=float)
    weights = weights / weights.sum()
    which = rng.choice(len(spec.components), size=spec.total, p=weights)
    xs = np.empty(spec.total, dtype=np.float64)
    ys = np.empty(spec.total, dtype=np.float64)
    x_lo, x_hi, y_lo, y_hi = spec.bounds
    for idx, comp in enumerate(spec.components):
        mask = which == idx
        n = int(mask.sum())
        if isinstance(comp, UniformBox):
            xs[mask] = rng.uniform(comp.x_min, comp.x_max, size=n)
            ys[mask] = rng.uniform(comp.y_min, comp.y_max, size=n)
        else:
            xs[mask] = np.clip(
                rng.normal(comp.center_x, comp.spread_x, size=n), x_lo, x_hi
            )
            ys[mask] = np.clip(
                rng.normal(comp.center_y, comp.spread_y, size=n), y_lo, y_hi
            )
    return PointSet.from_xy(xs, ys)


def load_points(
    path: str | Path,
    x_column: str = "x",
    y_column: str = "y",
    delimiter: str = ",",
) -> tuple[PointSet, DatasetMeta]:
    """Read a delimited text file with a header row into a point set.

    Row ids are 0-based data-row numbers from the file, so indices stay
    stable even when malformed rows are skipped.
    """
    path = Path(path)
    if not path.exists():
        raise InputDataError(f"input file not found: {path}")
    xs, ys, ids = [], [], []
    skipped = 0
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle, delimiter=delimiter)
        if reader.fieldnames is None:
            raise InputDataError(f"{path}: empty file, expected a header row")
        for col in (x_column, y_column):
            if col not in reader.fieldnames:
                raise InputDataError(
                    f"{path}: column {col!r} not in header {reader.fieldnames}"
                )
        for row_index, row in enumerate(reader):
            try:
                x = float(row[x_column])
                y = float(row[y_column])
            except (TypeError, ValueError):
                skipped += 1
                continue
            if not (math.isfinite(x) and math.isfinite(y)):
                skipped += 1
                continue
            xs.append(x)
            ys.append(y)
            ids.append(row_index)
    if not xs:
        raise InputDataError(f"{path}: no parseable data rows")
    points = PointSet.from_xy(xs, ys, ids=ids)
    x_min, x_max, y_min, y_max = points.bbox()
    meta = DatasetMeta(
        source=path.name,
        point_count=len(points),
        x_column=x_column,
        y_column=y_column,
        x_min=x_min,
        x_max=x_max,
        y_min=y_min,
        y_max=y_max,
        skipped_rows=skipped,
    )
    return points, meta


def write_points(points: PointSet, path: str | Path, x_column="x", y_column="y"):
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["id", x_column, y_column])
        for pid, x, y in zip(points.ids, points.xs, points.ys):
            writer.writerow([int(pid), repr(float(x)), repr(float(y))])


# ---------------------------------------------------------------------------
# raster: binary portable graymap


def raster_to_pgm(raster: Raster) -> bytes:
    header = f"P5\n{raster.width} {raster.height}\n255\n".encode()
    payload = np.where(raster.bitmap, 255, 0).astype(np.uint8).tobytes()
    return header + payload


def write_raster(raster: Raster, path: str | Path):
    _write_bytes(raster_to_pgm(raster), path)


# ---------------------------------------------------------------------------
# grids, histograms, plans: JSON documents


def grid_to_obj(grid: DensityGrid) -> dict:
    return {
        "config": {
            "screen_width": grid.config.screen_width,
            "screen_height": grid.config.screen_height,
            "sa_side": grid.config.sa_side,
        },
        "kind": grid.kind,
        "values": grid.values.tolist(),
    }


def grid_from_obj(obj: dict) -> DensityGrid:
    config = GridConfig(**obj["config"])
    return DensityGrid(
        config=config,
        kind=obj["kind"],
        values=np.array(obj["values"], dtype=np.int64),
    )


def histogram_to_obj(hist: DensityHistogram) -> dict:
    return {
        "entries": [
            {"density": v, "sa_count": c} for v, c in hist.entries
        ]
    }


def histogram_from_obj(obj: dict) -> DensityHistogram:
    return DensityHistogram(
        entries=[(int(e["density"]), int(e["sa_count"])) for e in obj["entries"]]
    )


def plan_to_obj(plan: SamplingPlan) -> dict:
    return {
        "seed": plan.seed,
        "levels": [
            {
                "density_lo": lv.density_lo,
                "density_hi": lv.density_hi,
                "sa_count": lv.sa_count,
                "target_rd": lv.target_rd,
            }
            for lv in plan.partition.levels
        ],
        "entries": [
            {"row": e.row, "col": e.col, "count": e.count, "retain": e.retain}
            for e in plan.entries
        ],
    }


def plan_from_obj(obj: dict) -> SamplingPlan:
    partition = LevelPartition(
        tuple(
            Level(
                density_lo=int(lv["density_lo"]),
                density_hi=int(lv["density_hi"]),
                sa_count=int(lv["sa_count"]),
                target_rd=int(lv["target_rd"]),
            )
            for lv in obj["levels"]
        )
    )
    entries = tuple(
        PlanEntry(
            row=int(e["row"]),
            col=int(e["col"]),
            count=int(e["count"]),
            retain=int(e["retain"]),
        )
        for e in obj["entries"]
    )
    return SamplingPlan(partition=partition, entries=entries, seed=int(obj["seed"]))


def dumps(obj: dict) -> str:
    """Canonical JSON serialization shared by files and service responses."""
    return json.dumps(obj, indent=2) + "\n"


def write_grid(grid: DensityGrid, path: str | Path):
    _write_text(dumps(grid_to_obj(grid)), path)


def read_grid(path: str | Path) -> DensityGrid:
    return grid_from_obj(_read_json(path))


def write_histogram(hist: DensityHistogram, path: str | Path):
    _write_text(dumps(histogram_to_obj(hist)), path)


def read_histogram(path: str | Path) -> DensityHistogram:
    return histogram_from_obj(_read_json(path))


def write_plan(plan: SamplingPlan, path: str | Path):
    _write_text(dumps(plan_to_obj(plan)), path)


def read_plan(path: str | Path) -> SamplingPlan:
    return plan_from_obj(_read_json(path))


def _write_text(text: str, path: str | Path):
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputDataError(f"cannot write {path}: {exc}") from exc


def _write_bytes(data: bytes, path: str | Path):
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise InputDataError(f"cannot write {path}: {exc}") from exc


def _read_json(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputDataError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputDataError(f"{path}: invalid JSON: {exc}") from exc
