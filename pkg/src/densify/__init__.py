"""Density analysis and decluttering for 2D scatter plots.

The pipeline: model pixel occupancy for points tossed onto an area
(occupancy), measure per-sample-area data and represented densities
(grid), then subsample each sample area toward an equalized set of target
densities that preserves relative ordering (sampling). dataio handles
files and synthetic datasets; session, cli and service expose the whole
thing to scripts, the shell, and a local UI.
"""

from .dataio import (
    DatasetMeta,
    GaussianBlob,
    GeneratorSpec,
    UniformBox,
    dumps,
    generate,
    grid_from_obj,
    grid_to_obj,
    histogram_from_obj,
    histogram_to_obj,
    load_points,
    parcel_like_spec,
    plan_from_obj,
    plan_to_obj,
    raster_to_pgm,
    read_grid,
    read_histogram,
    read_plan,
    write_grid,
    write_histogram,
    write_plan,
    write_points,
    write_raster,
)
from .errors import (
    ConsistencyError,
    DecayUnachievableError,
    DensifyError,
    InputDataError,
    NoDatasetError,
    SizeLimitError,
    SpecError,
)
from .grid import (
    DensityGrid,
    DensityHistogram,
    GridConfig,
    PointSet,
    Projection,
    Raster,
    Viewport,
    data_density_grid,
    filter_by_density,
    histogram,
    project,
    rasterize,
    represented_density_grid,
)
from .occupancy import (
    CollisionPmf,
    OccupancySummary,
    TossParams,
    brute_force_pmf,
    collision_pmf,
    expected_occupied,
    inverse_occupancy,
    occupancy_summary,
    uniform_ratio_for_decay,
)
from .sampling import (
    Level,
    LevelPartition,
    PlanEntry,
    SamplingPlan,
    apply_plan,
    auto_level_count,
    build_plan,
    nonuniform_sample,
    occupied_level_variance,
    partition_levels,
    uniform_sample,
)
from .session import (
    FilterRange,
    SceneArtifacts,
    Session,
    analyze_scene,
    write_scene,
)

__version__ = "0.1.0"

__all__ = [
    "CollisionPmf",
    "ConsistencyError",
    "DatasetMeta",
    "DecayUnachievableError",
    "DensifyError",
    "DensityGrid",
    "DensityHistogram",
    "FilterRange",
    "GaussianBlob",
    "GeneratorSpec",
    "GridConfig",
    "InputDataError",
    "Level",
    "LevelPartition",
    "NoDatasetError",
    "OccupancySummary",
    "PlanEntry",
    "PointSet",
    "Projection",
    "Raster",
    "SamplingPlan",
    "SceneArtifacts",
    "Session",
    "SizeLimitError",
    "SpecError",
    "TossParams",
    "UniformBox",
    "Viewport",
    "analyze_scene",
    "apply_plan",
    "auto_level_count",
    "brute_force_pmf",
    "build_plan",
    "collision_pmf",
    "data_density_grid",
    "dumps",
    "expected_occupied",
    "filter_by_density",
    "generate",
    "grid_from_obj",
    "grid_to_obj",
    "histogram",
    "histogram_from_obj",
    "histogram_to_obj",
    "inverse_occupancy",
    "load_points",
    "nonuniform_sample",
    "occupancy_summary",
    "occupied_level_variance",
    "parcel_like_spec",
    "partition_levels",
    "plan_from_obj",
    "plan_to_obj",
    "project",
    "raster_to_pgm",
    "rasterize",
    "read_grid",
    "read_histogram",
    "read_plan",
    "represented_density_grid",
    "uniform_ratio_for_decay",
    "uniform_sample",
    "write_grid",
    "write_histogram",
    "write_plan",
    "write_points",
    "write_raster",
    "write_scene",
]
