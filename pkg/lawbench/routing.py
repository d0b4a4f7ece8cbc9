"""Subcommand routing: routers collect handlers, the CLI includes routers."""

from __future__ import annotations

import argparse
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

from lawbench.config import DEFAULT_BOUNDS, layer_bounds
from lawbench.errors import UsageError
from lawbench.loader import SpecDocument, parse_spec
from lawbench.report import RunResult
from lawbench.schemas import Bounds
from lawbench.values import Universe

logger = logging.getLogger(__name__)


@dataclass
class Context:
    """What every handler sees: the spec, effective bounds and quantifier choice."""

    spec_path: str
    overrides: dict = field(default_factory=dict)
    seed: Optional[int] = None
    workers: int = 1
    over: Optional[list[str]] = None
    needs_spec: bool = True

    @cached_property
    def doc(self) -> SpecDocument:
        return parse_spec(self.spec_path)

    @cached_property
    def bounds(self) -> Bounds:
        base = self.doc.bounds if self.needs_spec else DEFAULT_BOUNDS
        return layer_bounds(base, self.overrides, {"sampleSeed": self.seed})

    def universes(self, n: int) -> list[Universe]:
        """Quantifier universes for an n-ary law: ``--over`` or the spec's A, B, C."""
        if not self.over:
            base = self.doc.default_universes()
            return [base[i % len(base)] for i in range(n)]
        names = self.over
        if len(names) == 1:
            names = names * n
        elif len(names) < n:
            raise UsageError(f"arity mismatch: --over names {len(names)} universes, {n} needed")
        return [self.doc.universe(name) for name in names[:n]]


Handler = Callable[[Context, argparse.Namespace], RunResult]


def arg(*flags: str, **options) -> tuple[tuple[str, ...], dict]:
    """One argparse argument, declared next to its handler."""
    return flags, options


@dataclass(frozen=True)
class Route:
    name: str
    handler: Handler
    help: str
    arguments: tuple = ()
    needs_spec: bool = True


class Router:
    """Named subcommands with their arguments."""

    def __init__(self):
        self.routes: dict[str, Route] = {}

    def command(self, name: str, *arguments, help: str = "", needs_spec: bool = True):
        def register(handler: Handler) -> Handler:
            if name in self.routes:
                raise ValueError(f"command {name!r} is already registered")
            self.routes[name] = Route(name, handler, help, arguments, needs_spec)
            return handler

        return register

    def include_router(self, other: Router) -> None:
        for name, route in other.routes.items():
            if name in self.routes:
                raise ValueError(f"command {name!r} is already registered")
            self.routes[name] = route

    def route(self, name: str) -> Route:
        try:
            return self.routes[name]
        except KeyError:
            raise UsageError(f"unknown subcommand {name!r}") from None

    def dispatch(self, name: str, ctx: Context, args: argparse.Namespace) -> RunResult:
        route = self.route(name)
        logger.info("running %s", name)
        result = route.handler(ctx, args)
        if not (result.reports or result.reproductions or result.entries or result.values):
            raise UsageError("nothing to check")
        return result
