"""Uniform and density-equalizing non-uniform subsampling.

The non-uniform sampler spreads the data densities of a scene across the
available represented-density levels:

1. take the histogram of nonzero data densities,
2. split the sorted distinct values into at most L contiguous intervals
   whose SA populations are as equal as possible (``partition_levels``),
3. give every SA in interval l the target represented density l and convert
   the target into a retain count by inverting the expected-occupancy curve
   (``build_plan``),
4. subsample each SA to its retain count with a deterministic per-SA
   random substream (``apply_plan``).

Dense intervals that previously collapsed onto a few saturated levels come
apart, at the cost of compressing the magnitude of the differences.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError
from .grid import (
    DensityGrid,
    DensityHistogram,
    GridConfig,
    PointSet,
    Viewport,
    data_density_grid,
    histogram,
    project,
    rasterize,
    represented_density_grid,
    sa_indices,
)
from .occupancy import expected_occupied, inverse_occupancy


@dataclass(frozen=True)
class Level:
    """One contiguous interval of data densities and its target."""

    density_lo: int
    density_hi: int
    sa_count: int
    target_rd: int


@dataclass(frozen=True)
class LevelPartition:
    """Ordered intervals covering the distinct nonzero data densities."""

    levels: tuple[Level, ...]

    def __len__(self) -> int:
        return len(self.levels)

    def level_for(self, density: int) -> Level:
        for level in self.levels:
            if level.density_lo <= density <= level.density_hi:
                return level
        raise ConsistencyError(
            f"data density {density} is not covered by the partition"
        )


@dataclass(frozen=True)
class PlanEntry:
    """Retain decision for one nonzero sample area."""

    row: int
    col: int
    count: int
    retain: int


@dataclass(frozen=True)
class SamplingPlan:
    """Per-SA retain counts plus the partition that produced them."""

    partition: LevelPartition
    entries: tuple[PlanEntry, ...]
    seed: int

    def retained_total(self) -> int:
        return sum(e.retain for e in self.entries)


def partition_levels(hist: DensityHistogram, levels: int) -> LevelPartition:
    """Split the nonzero density values into near-equal SA populations.

    Finds contiguous groups of the sorted distinct values, at most
    ``levels`` of them, minimizing sum((group SA count - N/levels)^2) where
    N counts all nonzero SAs. Solved exactly by dynamic programming on
    (value index, groups used); the integer objective sum((L*c - N)^2)
    avoids float ties. Among equal-cost partitions the one whose earlier
    groups are smaller wins, deterministically. All SAs sharing one density
    value stay together. If ``levels`` exceeds the number of distinct
    values, each value gets its own group.
    """
    if levels < 1:
        raise ValueError(f"level count must be >= 1, got {levels}")
    nonzero = hist.nonzero()
    if not nonzero:
        raise ValueError("histogram has no nonzero densities to partition")
    values = [v for v, _ in nonzero]
    counts = [c for _, c in nonzero]
    distinct = len(values)
    # more levels than values: no grouping needed, keep every value apart
    if levels > distinct:
        return LevelPartition(
            tuple(
                Level(v, v, c, i + 1)
                for i, (v, c) in enumerate(zip(values, counts))
            )
        )

    prefix = np.concatenate([[0], np.cumsum(counts, dtype=np.int64)])
    total = int(prefix[-1])
    if levels**3 * total**2 >= 2**62:  # cost sums would not fit int64
        prefix = np.array([int(s) for s in prefix], dtype=object)

    def segment_costs(i: int) -> np.ndarray:
        # cost of grouping values[i:j] for every j in (i, distinct]
        return (levels * (prefix[i + 1 :] - prefix[i]) - total) ** 2

    big = 2**62 if prefix.dtype == object else np.int64(2**62)
    # best[r][i]: minimal cost of covering values[i:] with at most r groups
    best = np.full((levels + 1, distinct + 1), big, dtype=prefix.dtype)
    best[:, distinct] = 0
    for r in range(1, levels + 1):
        for i in range(distinct - 1, -1, -1):
            best[r, i] = np.min(segment_costs(i) + best[r - 1, i + 1 :])

    result = []
    i, r = 0, levels
    while i < distinct:
        candidates = segment_costs(i) + best[r - 1, i + 1 :]
        j = i + 1 + int(np.flatnonzero(candidates == best[r, i])[0])
        result.append(
            Level(
                density_lo=values[i],
                density_hi=values[j - 1],
                sa_count=int(prefix[j] - prefix[i]),
                target_rd=len(result) + 1,
            )
        )
        i, r = j, r - 1
    return LevelPartition(tuple(result))


def _retain_count(target_rd: int, pixels_per_sa: int) -> int | None:
    """Points to keep so the expected lit-pixel count is closest to the target.

    None means the target is the saturation value and the SA keeps all its
    points (expected occupancy never reaches pixels_per_sa at finite n).
    """
    if target_rd >= pixels_per_sa:
        return None
    return inverse_occupancy(float(target_rd), pixels_per_sa)


def build_plan(
    data_grid: DensityGrid,
    partition: LevelPartition,
    pixels_per_sa: int,
    seed: int,
) -> SamplingPlan:
    """Retain counts for every nonzero SA from its interval's target.

    retain = min(count, inverse_occupancy(target, pixels_per_sa)), so the
    decision depends only on (count, target): equal data densities always
    receive equal retain counts.
    """
    retain_cache: dict[int, int | None] = {}
    entries = []
    for row, col in np.argwhere(data_grid.values > 0):
        count = int(data_grid.values[row, col])
        level = partition.level_for(count)
        if level.target_rd not in retain_cache:
            retain_cache[level.target_rd] = _retain_count(
                level.target_rd, pixels_per_sa
            )
        wanted = retain_cache[level.target_rd]
        retain = count if wanted is None else min(count, wanted)
        entries.append(
            PlanEntry(row=int(row), col=int(col), count=count, retain=retain)
        )
    return SamplingPlan(partition=partition, entries=tuple(entries), seed=seed)


def _sa_rng(seed: int, row: int, col: int) -> np.random.Generator:
    # substream keyed by (seed, row, col): deterministic no matter in which
    # order sample areas are processed
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(row, col))
    )


def apply_plan(
    points: PointSet,
    viewport: Viewport,
    config: GridConfig,
    plan: SamplingPlan,
) -> PointSet:
    """Subsample each SA to its planned retain count.

    Every SA keeps a uniformly random subset of exactly ``retain`` of its
    points, drawn from a substream derived from (plan.seed, row, col).
    Output preserves the original point order and ids; points outside the
    viewport are dropped.
    """
    proj = project(points, viewport, config)
    rows, cols = sa_indices(proj, config)
    flat = rows * config.sa_cols + cols
    order = np.argsort(flat, kind="stable")
    boundaries = np.flatnonzero(np.diff(flat[order])) + 1
    groups = np.split(order, boundaries)
    by_cell = {(e.row, e.col): e for e in plan.entries}

    keep_parts = []
    for group in groups:
        if len(group) == 0:
            continue
        row, col = int(rows[group[0]]), int(cols[group[0]])
        entry = by_cell.get((row, col))
        if entry is None or entry.count != len(group):
            raise ConsistencyError(
                f"plan does not match the scene at sample area "
                f"({row}, {col}): plan has "
                f"{entry.count if entry else 'no entry'}, scene has {len(group)}"
            )
        if entry.retain >= entry.count:
            keep_parts.append(group)
        elif entry.retain > 0:
            rng = _sa_rng(plan.seed, row, col)
            chosen = rng.choice(len(group), size=entry.retain, replace=False)
            keep_parts.append(group[chosen])
    if keep_parts:
        kept_positions = np.sort(np.concatenate(keep_parts))
        return points.take(proj.kept[kept_positions])
    return points.take(np.array([], dtype=np.int64))


def auto_level_count(
    points: PointSet, viewport: Viewport, config: GridConfig
) -> int:
    """Level count for 'auto': max represented density of the raw render."""
    raster = rasterize(project(points, viewport, config), config)
    observed = int(represented_density_grid(raster, config).values.max())
    return max(1, min(observed, config.pixels_per_sa))


def nonuniform_sample(
    points: PointSet,
    viewport: Viewport,
    config: GridConfig,
    levels: int | str = "auto",
    seed: int = 0,
) -> tuple[PointSet, SamplingPlan]:
    """Full density-equalizing pipeline; returns the sample and its plan."""
    data_grid = data_density_grid(points, viewport, config)
    if int(data_grid.values.sum()) == 0:
        empty_plan = SamplingPlan(
            partition=LevelPartition(()), entries=(), seed=seed
        )
        return points.take(np.array([], dtype=np.int64)), empty_plan
    if levels == "auto":
        level_count = auto_level_count(points, viewport, config)
    else:
        level_count = int(levels)
    partition = partition_levels(histogram(data_grid), level_count)
    plan = build_plan(data_grid, partition, config.pixels_per_sa, seed)
    return apply_plan(points, viewport, config, plan), plan


def uniform_sample(points: PointSet, ratio: float, seed: int = 0) -> PointSet:
    """Keep exactly floor(ratio * N) points, uniformly, order-preserving."""
    if not 0 <= ratio <= 1:
        raise ValueError(f"sampling ratio must lie in [0, 1], got {ratio}")
    total = len(points)
    wanted = int(np.floor(ratio * total))
    if wanted >= total:
        return points.take(np.arange(total))
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed))
    chosen = np.sort(rng.choice(total, size=wanted, replace=False))
    return points.take(chosen)


def occupied_level_variance(hist: DensityHistogram) -> float:
    """Population variance of SA counts across occupied nonzero levels.

    The equalization target: after non-uniform sampling the represented
    densities should share the SAs more evenly, shrinking this number.
    """
    counts = [c for v, c in hist.entries if v > 0]
    if not counts:
        return 0.0
    return float(np.var(counts))
