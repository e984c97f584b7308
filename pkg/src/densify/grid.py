"""Pixel raster, sample-area lattice, and density accounting for 2D scenes.

A scene is a point set projected through a viewport onto a screen of
width x height binary pixels. The screen is tiled by square sample areas
(SAs) of side ``sa_side`` pixels; densities are measured per SA:

- data density: points landing in the SA,
- represented density: distinct lit pixels in the SA after rendering.

Densities are stored as plain counts; the physical SA area is a constant
that cancels out of every comparison the pipeline makes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class GridConfig:
    """Screen size in pixels plus the sample-area side length."""

    screen_width: int = 1280
    screen_height: int = 1024
    sa_side: int = 8

    def __post_init__(self):
        if self.sa_side < 1:
            raise ValueError(f"sa_side must be >= 1, got {self.sa_side}")
        for name in ("screen_width", "screen_height"):
            size = getattr(self, name)
            if size < self.sa_side or size % self.sa_side:
                raise ValueError(
                    f"{name}={size} must be a positive multiple of "
                    f"sa_side={self.sa_side}; ragged sample areas would "
                    f"distort density comparisons"
                )

    @property
    def sa_cols(self) -> int:
        return self.screen_width // self.sa_side

    @property
    def sa_rows(self) -> int:
        return self.screen_height // self.sa_side

    @property
    def sa_count(self) -> int:
        return self.sa_cols * self.sa_rows

    @property
    def pixels_per_sa(self) -> int:
        return self.sa_side * self.sa_side


@dataclass
class PointSet:
    """Ordered 2D points with stable row ids surviving subsampling."""

    xs: np.ndarray
    ys: np.ndarray
    ids: np.ndarray

    @classmethod
    def from_xy(cls, xs, ys, ids=None) -> "PointSet":
        xs = np.asarray(xs, dtype=np.float64)
        ys = np.asarray(ys, dtype=np.float64)
        if xs.shape != ys.shape or xs.ndim != 1:
            raise ValueError("xs and ys must be 1D arrays of equal length")
        if ids is None:
            ids = np.arange(len(xs), dtype=np.int64)
        else:
            ids = np.asarray(ids, dtype=np.int64)
            if ids.shape != xs.shape:
                raise ValueError("ids must match the coordinate arrays")
        return cls(xs=xs, ys=ys, ids=ids)

    @classmethod
    def empty(cls) -> "PointSet":
        return cls.from_xy([], [])

    def __len__(self) -> int:
        return len(self.xs)

    def take(self, positions) -> "PointSet":
        """Subset by array positions, preserving order and original ids."""
        positions = np.asarray(positions, dtype=np.int64)
        return PointSet(
            xs=self.xs[positions],
            ys=self.ys[positions],
            ids=self.ids[positions],
        )

    def bbox(self) -> tuple[float, float, float, float]:
        if len(self) == 0:
            raise ValueError("empty point set has no bounding box")
        return (
            float(self.xs.min()),
            float(self.xs.max()),
            float(self.ys.min()),
            float(self.ys.max()),
        )


@dataclass(frozen=True)
class Viewport:
    """Data-space window mapped onto the screen."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError(
                f"viewport must have positive extent, got "
                f"x [{self.x_min}, {self.x_max}] y [{self.y_min}, {self.y_max}]"
            )

    @classmethod
    def of_points(cls, points: PointSet) -> "Viewport":
        """Bounding box of the points, padded when an extent collapses."""
        x_min, x_max, y_min, y_max = points.bbox()
        if x_min == x_max:
            x_min, x_max = x_min - 0.5, x_max + 0.5
        if y_min == y_max:
            y_min, y_max = y_min - 0.5, y_max + 0.5
        return cls(x_min, x_max, y_min, y_max)


@dataclass
class Projection:
    """Pixel coordinates of the in-viewport points of a point set.

    ``kept`` holds positions into the source PointSet arrays; points outside
    the viewport are dropped and only counted.
    """

    px: np.ndarray
    py: np.ndarray
    kept: np.ndarray
    dropped: int


@dataclass
class Raster:
    """Binary screen: a pixel is active iff at least one point maps to it."""

    width: int
    height: int
    bitmap: np.ndarray = field(repr=False)

    @property
    def active_count(self) -> int:
        return int(self.bitmap.sum())


@dataclass
class DensityGrid:
    """Per-SA counts: points (kind 'data') or lit pixels (kind 'represented')."""

    config: GridConfig
    kind: str
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.kind not in ("data", "represented"):
            raise ValueError(f"kind must be 'data' or 'represented', got {self.kind!r}")
        expected = (self.config.sa_rows, self.config.sa_cols)
        if self.values.shape != expected:
            raise ValueError(
                f"values shape {self.values.shape} does not match the "
                f"{expected} sample-area lattice"
            )


@dataclass
class DensityHistogram:
    """Distinct density value -> number of SAs holding it, sorted by value."""

    entries: list[tuple[int, int]]

    def nonzero(self) -> list[tuple[int, int]]:
        return [(v, c) for v, c in self.entries if v > 0]

    def total_sas(self) -> int:
        return sum(c for _, c in self.entries)


def project(points: PointSet, viewport: Viewport, config: GridConfig) -> Projection:
    """Linear map of data coordinates to integer pixel coordinates.

    Data y grows upward, pixel y downward, so (x_min, y_min) lands on pixel
    (0, height - 1). Points on the max edges clamp into the last pixel
    row/column; points outside the viewport are dropped and counted.
    """
    w, h = config.screen_width, config.screen_height
    inside = (
        (points.xs >= viewport.x_min)
        & (points.xs <= viewport.x_max)
        & (points.ys >= viewport.y_min)
        & (points.ys <= viewport.y_max)
    )
    kept = np.flatnonzero(inside)
    span_x = viewport.x_max - viewport.x_min
    span_y = viewport.y_max - viewport.y_min
    px = np.floor((points.xs[kept] - viewport.x_min) / span_x * w).astype(np.int64)
    py = np.floor((viewport.y_max - points.ys[kept]) / span_y * h).astype(np.int64)
    np.clip(px, 0, w - 1, out=px)
    np.clip(py, 0, h - 1, out=py)
    return Projection(px=px, py=py, kept=kept, dropped=int(len(points) - len(kept)))


def rasterize(projection: Projection, config: GridConfig) -> Raster:
    """Turn projected pixel hits into the binary screen; duplicates collapse."""
    bitmap = np.zeros((config.screen_height, config.screen_width), dtype=bool)
    bitmap[projection.py, projection.px] = True
    return Raster(width=config.screen_width, height=config.screen_height, bitmap=bitmap)


def sa_indices(projection: Projection, config: GridConfig) -> tuple[np.ndarray, np.ndarray]:
    """Sample-area (row, col) of each projected point."""
    return projection.py // config.sa_side, projection.px // config.sa_side


def data_density_grid(
    points: PointSet, viewport: Viewport, config: GridConfig
) -> DensityGrid:
    """Count points per sample area."""
    proj = project(points, viewport, config)
    rows, cols = sa_indices(proj, config)
    flat = np.bincount(
        rows * config.sa_cols + cols, minlength=config.sa_count
    )
    values = flat.reshape(config.sa_rows, config.sa_cols).astype(np.int64)
    return DensityGrid(config=config, kind="data", values=values)


def represented_density_grid(raster: Raster, config: GridConfig) -> DensityGrid:
    """Count distinct active pixels per sample area."""
    if (raster.height, raster.width) != (config.screen_height, config.screen_width):
        raise ValueError(
            f"raster is {raster.width}x{raster.height} but the grid config "
            f"expects {config.screen_width}x{config.screen_height}"
        )
    side = config.sa_side
    values = (
        raster.bitmap.reshape(config.sa_rows, side, config.sa_cols, side)
        .sum(axis=(1, 3))
        .astype(np.int64)
    )
    return DensityGrid(config=config, kind="represented", values=values)


def histogram(grid: DensityGrid) -> DensityHistogram:
    """Distribution of density values over sample areas (zero included)."""
    values, counts = np.unique(grid.values, return_counts=True)
    return DensityHistogram(
        entries=[(int(v), int(c)) for v, c in zip(values, counts)]
    )


def filter_by_density(
    points: PointSet,
    grid: DensityGrid,
    viewport: Viewport,
    lo: int,
    hi: int,
) -> PointSet:
    """Keep only points whose sample area has a grid value in [lo, hi]."""
    if lo > hi:
        raise ValueError(f"empty density range [{lo}, {hi}]")
    proj = project(points, viewport, grid.config)
    rows, cols = sa_indices(proj, grid.config)
    cell = grid.values[rows, cols]
    selected = proj.kept[(cell >= lo) & (cell <= hi)]
    return points.take(selected)
