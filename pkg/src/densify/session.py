"""Shared session core turning (dataset, settings) into render artifacts.

Both the command line and the HTTP service route through this module, which
is what makes their outputs byte-identical for equal inputs. A session never
keeps hidden state: the working set is recomputed from scratch as
filter(sample(dataset)) after every mutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from . import dataio
from .dataio import DatasetMeta
from .errors import InputDataError, NoDatasetError, SpecError
from .grid import (
    DensityGrid,
    DensityHistogram,
    GridConfig,
    PointSet,
    Raster,
    Viewport,
    data_density_grid,
    filter_by_density,
    histogram,
    project,
    rasterize,
    represented_density_grid,
)
from .sampling import SamplingPlan, nonuniform_sample, uniform_sample

METHODS = ("none", "uniform", "nonuniform")
GRID_KINDS = ("data", "represented")


@dataclass
class SceneArtifacts:
    """Everything derivable from one point set under one grid config."""

    raster: Raster
    data_grid: DensityGrid
    represented_grid: DensityGrid
    data_histogram: DensityHistogram
    represented_histogram: DensityHistogram


@dataclass
class FilterRange:
    kind: str
    lo: int
    hi: int | None = None


def analyze_scene(
    points: PointSet, viewport: Viewport, config: GridConfig
) -> SceneArtifacts:
    raster = rasterize(project(points, viewport, config), config)
    data_grid = data_density_grid(points, viewport, config)
    represented_grid = represented_density_grid(raster, config)
    return SceneArtifacts(
        raster=raster,
        data_grid=data_grid,
        represented_grid=represented_grid,
        data_histogram=histogram(data_grid),
        represented_histogram=histogram(represented_grid),
    )


class Session:
    """One dataset plus the current sampling method and filter range."""

    def __init__(self, config: GridConfig | None = None):
        self.config = config or GridConfig()
        self.points: PointSet | None = None
        self.meta: DatasetMeta | None = None
        self.viewport: Viewport | None = None
        self.method: str = "none"
        self.ratio: float | None = None
        self.levels: int | str = "auto"
        self.seed: int = 0
        self.filter: FilterRange | None = None
        self.working: PointSet | None = None
        self.plan: SamplingPlan | None = None
        self.artifacts: SceneArtifacts | None = None

    @property
    def loaded(self) -> bool:
        return self.points is not None

    def load(self, points: PointSet, meta: DatasetMeta):
        """Install a dataset and reset every setting to its default."""
        if len(points) == 0:
            raise InputDataError("dataset has no points")
        self.points = points
        self.meta = meta
        # The viewport is pinned to the full dataset so that rasters taken
        # before and after sampling or filtering stay pixel-aligned.
        self.viewport = Viewport.of_points(points)
        self.method = "none"
        self.ratio = None
        self.levels = "auto"
        self.seed = 0
        self.filter = None
        self.recompute()

    def set_sampling(self, method: str, ratio=None, levels="auto", seed=0):
        self._require_loaded()
        if method not in METHODS:
            raise SpecError(f"method must be one of {METHODS}, got {method!r}")
        if method == "uniform":
            if ratio is None:
                raise SpecError("uniform sampling needs a ratio in [0, 1]")
            ratio = float(ratio)
            if not 0.0 <= ratio <= 1.0:
                raise SpecError(f"sampling ratio must lie in [0, 1], got {ratio}")
        if method == "nonuniform" and levels != "auto":
            levels = int(levels)
            if levels < 1:
                raise SpecError(f"levels must be >= 1, got {levels}")
        self.method = method
        self.ratio = ratio if method == "uniform" else None
        self.levels = levels if method == "nonuniform" else "auto"
        self.seed = int(seed)
        self.recompute()

    def set_filter(self, kind: str, lo: int, hi: int | None = None):
        """Restrict the scene to SAs with density in [lo, hi].

        hi = None means no upper bound: it resolves to the maximum density
        present when the filter is applied.
        """
        self._require_loaded()
        if kind not in GRID_KINDS:
            raise SpecError(f"grid kind must be one of {GRID_KINDS}, got {kind!r}")
        lo = int(lo)
        if lo < 0:
            raise SpecError(f"density bounds must be non-negative, got min {lo}")
        if hi is not None:
            hi = int(hi)
            if lo > hi:
                raise SpecError(f"empty density range [{lo}, {hi}]")
        self.filter = FilterRange(kind=kind, lo=lo, hi=hi)
        self.recompute()

    def clear_filter(self):
        self._require_loaded()
        self.filter = None
        self.recompute()

    def reset(self):
        """Back to the freshly loaded state: no sampling, no filter."""
        self._require_loaded()
        self.method = "none"
        self.ratio = None
        self.levels = "auto"
        self.seed = 0
        self.filter = None
        self.recompute()

    def recompute(self):
        self._require_loaded()
        working = self.points
        plan = None
        if self.method == "uniform":
            working = uniform_sample(working, self.ratio, seed=self.seed)
        elif self.method == "nonuniform":
            working, plan = nonuniform_sample(
                working, self.viewport, self.config,
                levels=self.levels, seed=self.seed,
            )
        if self.filter is not None:
            working = self._apply_filter(working)
        self.working = working
        self.plan = plan
        self.artifacts = analyze_scene(working, self.viewport, self.config)

    def _apply_filter(self, working: PointSet) -> PointSet:
        # The range applies to the densities of the working set itself, so
        # filtering after sampling sees the sampled densities.
        if self.filter.kind == "data":
            grid = data_density_grid(working, self.viewport, self.config)
        else:
            raster = rasterize(project(working, self.viewport, self.config), self.config)
            grid = represented_density_grid(raster, self.config)
        hi = self.filter.hi
        if hi is None:
            hi = max(int(grid.values.max()), self.filter.lo)
        return filter_by_density(working, grid, self.viewport, self.filter.lo, hi)

    def _require_loaded(self):
        if not self.loaded:
            raise NoDatasetError("no dataset loaded")


def write_scene(session: Session, out_dir: str | Path) -> list[Path]:
    """Write the session's current artifacts into a directory.

    Produces the raster, both grids, both histograms, the retained points,
    and the plan when non-uniform sampling is active. Returns the paths.
    """
    session._require_loaded()
    art = session.artifacts
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    def emit(name: str, writer, payload):
        path = out / name
        writer(payload, path)
        written.append(path)

    emit("raster.pgm", dataio.write_raster, art.raster)
    emit("grid_data.json", dataio.write_grid, art.data_grid)
    emit("grid_represented.json", dataio.write_grid, art.represented_grid)
    emit("histogram_data.json", dataio.write_histogram, art.data_histogram)
    emit(
        "histogram_represented.json",
        dataio.write_histogram,
        art.represented_histogram,
    )
    if session.plan is not None:
        emit("plan.json", dataio.write_plan, session.plan)
    points_path = out / "points.csv"
    dataio.write_points(
        session.working,
        points_path,
        x_column=session.meta.x_column,
        y_column=session.meta.y_column,
    )
    written.append(points_path)
    return written
