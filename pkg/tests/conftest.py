"""Shared scene builders.

Two constructed scenes drive most tests:

- reference_scene: a 10x10 grid of 4x4-pixel sample areas holding 2264
  points with an exactly known data-density histogram. Placement caps the
  distinct pixels per SA at 12, so the observed represented-density
  ceiling (and with it the automatic level count) is deterministic.
- stratified scenes: 100 sample areas of 64 pixels in five equal strata of
  known point counts, with fresh uniform positions per seed, used for the
  sampling statistics.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pytest

from densify import GridConfig, PointSet, Viewport, expected_occupied
from densify.dataio import write_points

# data density -> number of sample areas; 96 occupied SAs, 2264 points
KNOWN_HISTOGRAM = [
    (1, 6), (2, 3), (3, 3), (4, 2), (5, 2),
    (9, 8), (13, 8), (17, 8), (22, 8), (29, 8),
    (34, 8), (36, 8), (38, 8), (39, 8), (40, 7), (49, 1),
]
KNOWN_TOTAL_POINTS = 2264
KNOWN_OCCUPIED_SAS = 96
# optimal partition of the histogram into 12 levels: SA counts per level
KNOWN_LEVEL_COUNTS = [9, 7, 8, 8, 8, 8, 8, 8, 8, 8, 8, 8]
KNOWN_PARTITION_COST = 2
# density -> target represented density under that partition
KNOWN_TARGETS = {22: 6, 29: 7}
PIN_DENSITY, PIN_ROW, PIN_COL = 49, 2, 6


def pixel_cap(count: int, pixels: int, ceiling: int) -> int:
    """Distinct pixels granted to an SA holding `count` points."""
    return min(ceiling, round(expected_occupied(count, pixels)))


@dataclass
class ReferenceScene:
    points: PointSet
    config: GridConfig
    viewport: Viewport
    values: np.ndarray


def build_reference_scene() -> ReferenceScene:
    config = GridConfig(screen_width=40, screen_height=40, sa_side=4)
    viewport = Viewport(0.0, 40.0, 0.0, 40.0)
    densities = []
    for value, sas in KNOWN_HISTOGRAM:
        densities.extend([value] * sas)
    densities.extend([0] * (config.sa_count - len(densities)))
    rng = np.random.default_rng(KNOWN_TOTAL_POINTS)
    rng.shuffle(densities)
    # pin the densest SA at a fixed grid cell so UI tests can hover it
    pin_index = PIN_ROW * config.sa_cols + PIN_COL
    at = densities.index(PIN_DENSITY)
    densities[at], densities[pin_index] = densities[pin_index], densities[at]

    xs, ys = [], []
    values = np.zeros((config.sa_rows, config.sa_cols), dtype=np.int64)
    side = config.sa_side
    for index, count in enumerate(densities):
        if count == 0:
            continue
        row, col = divmod(index, config.sa_cols)
        values[row, col] = count
        cap = pixel_cap(count, config.pixels_per_sa, 12)
        for j in range(count):
            offset = j % cap
            px = col * side + offset % side
            py = row * side + offset // side
            xs.append(px + 0.5)
            ys.append(40.0 - py - 0.5)
    points = PointSet.from_xy(np.array(xs), np.array(ys))
    return ReferenceScene(
        points=points, config=config, viewport=viewport, values=values
    )


@pytest.fixture(scope="session")
def reference_scene() -> ReferenceScene:
    return build_reference_scene()


@pytest.fixture(scope="session")
def reference_csv(reference_scene, tmp_path_factory) -> Path:
    path = tmp_path_factory.mktemp("data") / "reference.csv"
    write_points(reference_scene.points, path)
    return path


STRATA_COUNTS = (40, 80, 150, 300, 700)
STRATA_CONFIG = GridConfig(screen_width=80, screen_height=80, sa_side=8)
STRATA_VIEWPORT = Viewport(0.0, 80.0, 0.0, 80.0)


def build_stratified_scene(seed: int) -> PointSet:
    """100 SAs of 64 px, 20 per stratum, fresh uniform positions per seed.

    x lands in [lo, hi) and y in (lo, hi] of its SA, matching the half-open
    pixel binning, so per-SA counts are exact for every seed.
    """
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(1,)))
    side = STRATA_CONFIG.sa_side
    xs, ys = [], []
    for index in range(STRATA_CONFIG.sa_count):
        row, col = divmod(index, STRATA_CONFIG.sa_cols)
        count = STRATA_COUNTS[index % len(STRATA_COUNTS)]
        xs.append(side * col + side * rng.random(count))
        ys.append(80.0 - side * row - side * rng.random(count))
    return PointSet.from_xy(np.concatenate(xs), np.concatenate(ys))


@pytest.fixture(scope="session")
def parcel_points() -> PointSet:
    from densify import generate, parcel_like_spec

    return generate(parcel_like_spec(total=160_000, seed=0))
