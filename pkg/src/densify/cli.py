"""Command-line front door.

Subcommands: stats (occupancy arithmetic), render (project + optional
sampling, write artifacts), filter (density-range selection), report
(figures plus delimited summaries), generate (synthetic datasets), serve
(local HTTP service for the explorer UI).

Exit codes: 0 success, 2 usage error, 3 input data error, 4 internal error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import dataio, report, service
from .errors import ConsistencyError, DensifyError, InputDataError
from .grid import GridConfig
from .occupancy import TossParams, occupancy_summary
from .session import GRID_KINDS, METHODS, Session, write_scene


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except InputDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ConsistencyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DensifyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except KeyboardInterrupt:
        return 130
    except Exception as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="densify",
        description="Density analysis and decluttering for 2D scatter plots.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--input", help="delimited point file with a header row")
    data.add_argument("--x-col", default="x", help="x column name")
    data.add_argument("--y-col", default="y", help="y column name")

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--width", type=int, default=1280, help="screen width, px")
    grid.add_argument("--height", type=int, default=1024, help="screen height, px")
    grid.add_argument(
        "--sa-side", type=int, default=8, help="sample-area side, px"
    )

    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument("--method", choices=METHODS, default="none")
    sampling.add_argument("--ratio", type=float, help="uniform: fraction kept")
    sampling.add_argument(
        "--levels", default="auto", help='non-uniform: level count or "auto"'
    )
    sampling.add_argument(
        "--seed", type=int, help="sampling seed (default: $DENSIFY_SEED or 0)"
    )

    ranged = argparse.ArgumentParser(add_help=False)
    ranged.add_argument("--min", type=int, help="lowest density kept")
    ranged.add_argument("--max", type=int, help="highest density kept")
    ranged.add_argument("--kind", choices=GRID_KINDS, default="data")

    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--out-dir", required=True, help="artifact directory")

    stats = sub.add_parser("stats", help="expected occupancy for one toss")
    stats.add_argument("--points", type=int, required=True)
    stats.add_argument("--pixels", type=int, required=True)
    stats.set_defaults(handler=_cmd_stats)

    render = sub.add_parser(
        "render", parents=[data, grid, sampling, out],
        help="project a dataset, optionally sample it, write artifacts",
    )
    render.set_defaults(handler=_cmd_render)

    filt = sub.add_parser(
        "filter", parents=[data, grid, ranged, out],
        help="keep only sample areas within a density range",
    )
    filt.set_defaults(handler=_cmd_filter)

    rep = sub.add_parser(
        "report", parents=[data, grid, sampling, ranged, out],
        help="render figures and summary tables for a full pipeline run",
    )
    rep.set_defaults(handler=_cmd_report)

    gen = sub.add_parser("generate", help="write a synthetic dataset")
    gen.add_argument("--preset", choices=("parcel",), default="parcel")
    gen.add_argument("--total", type=int, default=160_000)
    gen.add_argument("--seed", type=int)
    gen.add_argument("--out", required=True, help="output point file")
    gen.set_defaults(handler=_cmd_generate)

    srv = sub.add_parser(
        "serve", parents=[data, grid],
        help="run the local HTTP service (dataset optional at startup)",
    )
    srv.add_argument("--port", type=int, default=8765, help="0 picks a free port")
    srv.set_defaults(handler=_cmd_serve)
    return parser


def _resolve_seed(value) -> int:
    if value is not None:
        return int(value)
    env = os.environ.get("DENSIFY_SEED", "").strip()
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"DENSIFY_SEED must be an integer, got {env!r}")
    return 0


def _build_session(args, require_input=True) -> Session:
    config = GridConfig(
        screen_width=args.width, screen_height=args.height, sa_side=args.sa_side
    )
    session = Session(config)
    if args.input:
        points, meta = dataio.load_points(
            args.input, x_column=args.x_col, y_column=args.y_col
        )
        session.load(points, meta)
        if meta.skipped_rows:
            print(
                f"skipped {meta.skipped_rows} malformed rows in {meta.source}",
                file=sys.stderr,
            )
    elif require_input:
        raise ValueError("--input is required for this command")
    return session


def _apply_sampling(session: Session, args):
    if args.method == "none":
        return
    if args.method == "uniform" and args.ratio is None:
        raise ValueError("--method uniform needs --ratio")
    session.set_sampling(
        args.method,
        ratio=args.ratio,
        levels=args.levels,
        seed=_resolve_seed(args.seed),
    )


def _apply_filter(session: Session, args, require_range=False):
    if args.min is None and args.max is None:
        if require_range:
            raise ValueError("give at least one of --min / --max")
        return
    session.set_filter(args.kind, args.min or 0, args.max)


def _print_outcome(session: Session, paths):
    print(f"retained {len(session.working)} of {len(session.points)} points")
    for path in paths:
        print(f"wrote {path}")


def _cmd_stats(args) -> int:
    summary = occupancy_summary(TossParams(n=args.points, p=args.pixels))
    print(f"points {args.points} on {args.pixels} pixels")
    print(
        f"expected occupied {summary.expected_occupied:.1f} px "
        f"({summary.occupied_fraction * 100:.1f}%)"
    )
    print(
        f"collisions {summary.expected_collisions:.1f} "
        f"({summary.collision_fraction * 100:.1f}%), "
        f"free {summary.expected_free:.1f} px "
        f"({summary.free_fraction * 100:.1f}%)"
    )
    return 0


def _cmd_render(args) -> int:
    session = _build_session(args)
    _apply_sampling(session, args)
    _print_outcome(session, write_scene(session, args.out_dir))
    return 0


def _cmd_filter(args) -> int:
    session = _build_session(args)
    _apply_filter(session, args, require_range=True)
    _print_outcome(session, write_scene(session, args.out_dir))
    return 0


def _cmd_report(args) -> int:
    session = _build_session(args)
    _apply_sampling(session, args)
    _apply_filter(session, args)
    paths = write_scene(session, args.out_dir)
    paths += report.write_report(session, args.out_dir)
    _print_outcome(session, paths)
    return 0


def _cmd_generate(args) -> int:
    spec = dataio.parcel_like_spec(
        total=args.total, seed=_resolve_seed(args.seed)
    )
    points = dataio.generate(spec)
    dataio.write_points(points, args.out)
    print(f"wrote {args.out} ({len(points)} points)")
    return 0


def _cmd_serve(args) -> int:
    session = _build_session(args, require_input=False)
    service.run(session, port=args.port)
    return 0


if __name__ == "__main__":
    sys.exit(main())
