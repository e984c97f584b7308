"""Session state machine: load, sample, filter, reset, artifact export."""

import numpy as np
import pytest

from densify import (
    DatasetMeta,
    GridConfig,
    NoDatasetError,
    PointSet,
    Session,
    SpecError,
    Viewport,
    analyze_scene,
    load_points,
    write_scene,
)


def meta_for(points, name="synthetic"):
    x_min, x_max, y_min, y_max = points.bbox()
    return DatasetMeta(
        source=name,
        point_count=len(points),
        x_column="x",
        y_column="y",
        x_min=x_min,
        x_max=x_max,
        y_min=y_min,
        y_max=y_max,
    )


def fresh_session(points, config=None):
    session = Session(config or GridConfig(screen_width=40, screen_height=40,
                                           sa_side=4))
    session.load(points, meta_for(points))
    return session


def random_points(seed=0, count=3000):
    rng = np.random.default_rng(seed)
    return PointSet.from_xy(rng.random(count), rng.random(count))


class TestLifecycle:
    def test_operations_require_a_dataset(self):
        session = Session()
        assert not session.loaded
        with pytest.raises(NoDatasetError):
            session.set_sampling("none")
        with pytest.raises(NoDatasetError):
            session.set_filter("data", 1)
        with pytest.raises(NoDatasetError):
            session.reset()
        with pytest.raises(NoDatasetError):
            session.recompute()

    def test_load_computes_artifacts(self):
        session = fresh_session(random_points())
        assert session.loaded
        assert session.working is session.points
        art = session.artifacts
        assert art.raster.active_count > 0
        assert int(art.data_grid.values.sum()) == len(session.points)

    def test_load_pins_viewport_to_full_dataset(self):
        points = random_points()
        session = fresh_session(points)
        assert session.viewport == Viewport.of_points(points)
        session.set_sampling("uniform", ratio=0.2)
        # sampling must not rescale the scene
        assert session.viewport == Viewport.of_points(points)

    def test_load_resets_settings(self):
        session = fresh_session(random_points())
        session.set_sampling("uniform", ratio=0.5, seed=3)
        session.set_filter("data", 1)
        session.load(random_points(seed=9), meta_for(random_points(seed=9)))
        assert session.method == "none"
        assert session.ratio is None
        assert session.filter is None
        assert len(session.working) == len(session.points)

    def test_empty_dataset_rejected(self):
        session = Session()
        points = PointSet.from_xy([1.0], [2.0])
        with pytest.raises(Exception):
            session.load(PointSet.empty(), meta_for(points))


class TestSampling:
    def test_uniform_keeps_floor(self):
        session = fresh_session(random_points(count=1000))
        session.set_sampling("uniform", ratio=0.8, seed=1)
        assert len(session.working) == 800
        assert session.plan is None

    def test_nonuniform_records_plan(self):
        session = fresh_session(random_points())
        session.set_sampling("nonuniform", levels=5, seed=2)
        assert session.plan is not None
        assert len(session.plan.partition.levels) <= 5
        assert len(session.working) == session.plan.retained_total()

    def test_back_to_none_restores_everything(self):
        session = fresh_session(random_points())
        session.set_sampling("uniform", ratio=0.1)
        session.set_sampling("none")
        assert np.array_equal(session.working.ids, session.points.ids)

    def test_validation(self):
        session = fresh_session(random_points())
        with pytest.raises(SpecError, match="method"):
            session.set_sampling("median")
        with pytest.raises(SpecError, match="ratio"):
            session.set_sampling("uniform")
        with pytest.raises(SpecError, match="ratio"):
            session.set_sampling("uniform", ratio=1.2)
        with pytest.raises(SpecError, match="levels"):
            session.set_sampling("nonuniform", levels=0)

    def test_seed_changes_resample(self):
        session = fresh_session(random_points())
        session.set_sampling("uniform", ratio=0.5, seed=1)
        first = session.working.ids.copy()
        session.set_sampling("uniform", ratio=0.5, seed=2)
        assert not np.array_equal(first, session.working.ids)
        session.set_sampling("uniform", ratio=0.5, seed=1)
        assert np.array_equal(first, session.working.ids)


class TestFilter:
    def test_identity_range_keeps_all(self):
        session = fresh_session(random_points())
        session.set_filter("data", 0)
        assert len(session.working) == len(session.points)

    def test_unbounded_max_resolves_at_apply_time(self):
        session = fresh_session(random_points())
        top = int(session.artifacts.data_grid.values.max())
        session.set_filter("data", top)
        kept_with_open_max = len(session.working)
        session.set_filter("data", top, top)
        assert len(session.working) == kept_with_open_max > 0

    def test_out_of_range_min_empties_the_scene(self):
        session = fresh_session(random_points())
        top = int(session.artifacts.data_grid.values.max())
        session.set_filter("data", top + 1)
        assert len(session.working) == 0
        assert session.artifacts.raster.active_count == 0

    def test_filter_sees_post_sampling_densities(self):
        session = fresh_session(random_points(count=4000))
        session.set_filter("data", 3)
        dense_only = len(session.working)
        # heavy sampling lowers densities, so the same threshold cuts more
        session.set_sampling("uniform", ratio=0.2, seed=5)
        session.set_filter("data", 3)
        assert len(session.working) < dense_only

    def test_represented_kind_uses_pixel_densities(self):
        session = fresh_session(random_points(count=4000))
        session.set_filter("represented", 2)
        grid = session.artifacts.represented_grid
        nonzero = grid.values[grid.values > 0]
        assert nonzero.size > 0
        assert nonzero.min() >= 2

    def test_clear_filter(self):
        session = fresh_session(random_points())
        session.set_filter("data", 10**6)
        assert len(session.working) == 0
        session.clear_filter()
        assert len(session.working) == len(session.points)

    def test_validation(self):
        session = fresh_session(random_points())
        with pytest.raises(SpecError, match="kind"):
            session.set_filter("raw", 1)
        with pytest.raises(SpecError, match="non-negative"):
            session.set_filter("data", -1)
        with pytest.raises(SpecError, match="empty density range"):
            session.set_filter("data", 5, 4)


class TestResetAndReplay:
    def test_reset_restores_loaded_state(self):
        session = fresh_session(random_points())
        baseline = session.artifacts.raster.bitmap.copy()
        session.set_sampling("nonuniform", levels=4, seed=7)
        session.set_filter("data", 2)
        session.reset()
        assert session.method == "none"
        assert session.filter is None
        assert np.array_equal(session.artifacts.raster.bitmap, baseline)

    def test_state_is_reconstructible_from_settings(self):
        points = random_points(seed=11)
        first = fresh_session(points)
        first.set_sampling("nonuniform", levels=6, seed=3)
        first.set_filter("data", 2, 40)

        second = fresh_session(points)
        second.set_filter("represented", 1)  # divergent history
        second.set_sampling("nonuniform", levels=6, seed=3)
        second.set_filter("data", 2, 40)

        assert np.array_equal(first.working.ids, second.working.ids)
        assert np.array_equal(
            first.artifacts.raster.bitmap, second.artifacts.raster.bitmap
        )
        assert first.plan == second.plan


class TestWriteScene:
    def test_writes_all_artifacts(self, tmp_path):
        session = fresh_session(random_points())
        session.set_sampling("nonuniform", levels=3, seed=1)
        written = write_scene(session, tmp_path / "out")
        names = sorted(p.name for p in written)
        assert names == [
            "grid_data.json",
            "grid_represented.json",
            "histogram_data.json",
            "histogram_represented.json",
            "plan.json",
            "points.csv",
            "raster.pgm",
        ]
        for path in written:
            assert path.stat().st_size > 0

    def test_no_plan_file_without_nonuniform(self, tmp_path):
        session = fresh_session(random_points())
        written = write_scene(session, tmp_path / "out")
        assert "plan.json" not in {p.name for p in written}

    def test_round_trip_through_points_file(self, tmp_path):
        session = fresh_session(random_points(count=500))
        session.set_sampling("uniform", ratio=0.4, seed=9)
        write_scene(session, tmp_path)
        reloaded, _ = load_points(tmp_path / "points.csv")
        assert np.array_equal(reloaded.xs, session.working.xs)
        assert np.array_equal(reloaded.ys, session.working.ys)
        # rebuilding the scene over the pinned viewport reproduces the raster
        art = analyze_scene(reloaded, session.viewport, session.config)
        assert np.array_equal(
            art.raster.bitmap, session.artifacts.raster.bitmap
        )
