"""
Command-line entry point.

    haarsvie run --problem paper-example --level 2 --paths 1000 --seed 7 \\
        --output table.csv --grid-out surface.csv
    haarsvie problems
    haarsvie serve --port 8000

Exit codes: 0 success, 2 configuration error, 3 numerical failure, 4 I/O error.
"""
import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from haarsvie import __version__
from haarsvie.config import settings
from haarsvie.core.exceptions import (
    DomainError,
    EnsembleError,
    HaarSvieError,
    RegistryError,
    SingularSystemError,
)
from haarsvie.core.logging import setup_logging
from haarsvie.schemas.run import OutputFormat, PointSet, RunConfig, RunMode
from haarsvie.services import runs
from haarsvie.services.problems import list_problems

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="haarsvie",
        description="Haar collocation and Monte Carlo for 2D stochastic Volterra equations",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an ensemble and write the summary table")
    run.add_argument("--problem", required=True, help="registered problem name")
    run.add_argument("--level", type=int, required=True, help="maximum resolution level L")
    run.add_argument("--level-y", type=int, default=None, help="level in y (default: L)")
    run.add_argument("--paths", type=int, default=settings.DEFAULT_PATHS, help="number of paths R")
    run.add_argument("--seed", type=int, default=settings.DEFAULT_SEED, help="root seed")
    run.add_argument("--confidence", type=float, default=settings.DEFAULT_CONFIDENCE)
    run.add_argument(
        "--deterministic",
        action="store_true",
        help="drop the stochastic term (zero-width intervals)",
    )
    run.add_argument("--output", required=True, help="summary table file")
    run.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.CSV.value,
    )
    run.add_argument("--grid-out", default=None, help="surface file (CSV: x, y, mean)")
    run.add_argument(
        "--surface-mesh",
        type=int,
        default=None,
        metavar="K",
        help="write the surface on a K x K mesh instead of the collocation grid",
    )
    run.add_argument(
        "--points",
        choices=[p.value for p in PointSet],
        default=PointSet.ALL.value,
        help="table rows: every collocation pair or the published pairs",
    )
    run.add_argument("--workers", type=int, default=None, help="solver threads")
    run.add_argument("--log-level", default=None, help="override HAARSVIE_LOG_LEVEL")

    problems = sub.add_parser("problems", help="list registered problems")
    problems.add_argument("--log-level", default=None)

    serve = sub.add_parser("serve", help="serve the HTTP API with uvicorn")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--log-level", default=None)
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        problem=args.problem,
        level=args.level,
        level_y=args.level_y,
        paths=args.paths,
        seed=args.seed,
        confidence=args.confidence,
        mode=RunMode.DETERMINISTIC if args.deterministic else RunMode.STOCHASTIC,
        points=PointSet(args.points),
        workers=args.workers,
        output=args.output,
        format=OutputFormat(args.format),
        grid_out=args.grid_out,
        surface_mesh=args.surface_mesh,
    )


def run(config: RunConfig) -> int:
    """Execute one run and translate failures into exit codes."""
    try:
        summary = runs.run(config)
    except (DomainError, RegistryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (EnsembleError, SingularSystemError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        if exc.details:
            print(f"details: {exc.details}", file=sys.stderr)
        return EXIT_NUMERICAL
    except HaarSvieError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO

    if summary.failures:
        print(
            f"{len(summary.failures)} of {summary.R} paths failed: "
            + ", ".join(str(f.path_index) for f in summary.failures),
            file=sys.stderr,
        )
    return EXIT_OK


def _list_problems() -> int:
    for problem in list_problems():
        print(f"{problem.name}\t{problem.description}")
    return EXIT_OK


def _serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("haarsvie.main:app", host=args.host, port=args.port)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)

    if args.command == "problems":
        return _list_problems()
    if args.command == "serve":
        return _serve(args)

    try:
        config = _run_config(args)
    except ValidationError as exc:
        print(f"invalid configuration:\n{exc}", file=sys.stderr)
        return EXIT_CONFIG
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
