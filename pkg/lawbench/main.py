"""Command-line entry point: parser factory, dispatch and exit codes."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from lawbench import __version__
from lawbench.commands import checks, repro
from lawbench.config import SPEC_PATH, WORKERS, parse_bounds_overrides, setup_logging
from lawbench.errors import LawbenchError, UsageError
from lawbench.report import RunResult, render_report
from lawbench.routing import Context, Router

logger = logging.getLogger(__name__)


def create_router() -> Router:
    router = Router()
    router.include_router(checks.router)
    router.include_router(repro.router)
    return router


def _common_arguments() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help=f"Spec document (default: {SPEC_PATH})")
    common.add_argument("--bounds", help="Bounds overrides, e.g. maxListLen=3,maxFnEnum=128")
    common.add_argument("--seed", type=int, help="Sample seed; overrides sampleSeed")
    common.add_argument("--format", choices=["text", "machine"], help="Report format")
    common.add_argument("--workers", type=int, help=f"Worker threads (default: {WORKERS})")
    common.add_argument("--over", help="Quantifier universes, comma separated")
    common.add_argument("--log-level", help="Log level for the lawbench loggers")
    return common


def create_parser(router: Router | None = None) -> argparse.ArgumentParser:
    """Build the argument parser from the included routers."""
    router = router or create_router()
    parser = argparse.ArgumentParser(
        prog="lawbench",
        description="Check monad, strength and distributive-law equations on finite universes.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    common = _common_arguments()
    for route in router.routes.values():
        sub = subparsers.add_parser(route.name, help=route.help, parents=[common])
        for flags, options in route.arguments:
            sub.add_argument(*flags, **options)
    return parser


def _context(args: argparse.Namespace, needs_spec: bool) -> Context:
    try:
        overrides = parse_bounds_overrides(args.bounds) if args.bounds else {}
    except ValueError as exc:
        raise UsageError(f"--bounds: {exc}") from None
    workers = args.workers if args.workers is not None else WORKERS
    if workers < 1:
        raise UsageError(f"--workers must be at least 1, got {workers}")
    over = [name.strip() for name in args.over.split(",") if name.strip()] if args.over else None
    return Context(
        spec_path=args.spec or SPEC_PATH,
        overrides=overrides,
        seed=args.seed,
        workers=workers,
        over=over,
        needs_spec=needs_spec,
    )


def execute(args: argparse.Namespace, router: Router | None = None) -> RunResult:
    router = router or create_router()
    route = router.route(args.command)
    ctx = _context(args, route.needs_spec)
    try:
        ctx.bounds
    except ValueError as exc:
        raise UsageError(f"invalid bounds: {exc}") from None
    return router.dispatch(args.command, ctx, args)


def run(argv: Sequence[str]) -> RunResult:
    """Parse ``argv`` and run the command; errors propagate as LawbenchError."""
    router = create_router()
    return execute(create_parser(router).parse_args(list(argv)), router)


def main(argv: Sequence[str] | None = None) -> int:
    router = create_router()
    args = create_parser(router).parse_args(argv)
    try:
        setup_logging(args.log_level)
        result = execute(args, router)
    except LawbenchError as exc:
        print(f"error: {exc.detail}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.buffer.write(render_report(result, args.format or "text"))
    sys.stdout.flush()
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
