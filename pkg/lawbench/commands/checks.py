"""Law-checking subcommands over the loaded spec document."""

from __future__ import annotations

import argparse
import logging
from pathlib import Path

import orjson
from pydantic import ValidationError

from lawbench.compose import (
    CompositeMonad,
    DistLaw,
    composite_bind,
    derive_distlaw,
    list_sequence,
    verify_distlaw,
)
from lawbench.errors import DerivationError, SpecError, UsageError
from lawbench.lawcheck import (
    ListFunctor,
    check_commutative,
    check_composite_bind,
    check_gamma_assoc,
    check_kleisli_strength,
    check_lift_transformation,
    check_map_lift,
    check_monad_laws,
    check_product_coherence,
    check_reconstruct,
    check_rst_lift,
    equivalence_audit,
)
from lawbench.monads import FreeMonad, Monad, catalog_entries, sequence_values
from lawbench.report import RunResult
from lawbench.routing import Context, Router, arg
from lawbench.schemas import TermFileIn
from lawbench.strength import (
    BUILTIN_STRENGTHS,
    StrengthSpec,
    default_order,
    extend_gamma,
    strength_applies,
)
from lawbench.syntax import parse_value
from lawbench.values import FnV

logger = logging.getLogger(__name__)

router = Router()

MONAD = arg("--monad", required=True, help="Monad name declared in the spec")
STRENGTH = arg("--strength", required=True, help="Declared or builtin strength name")
OUTER = arg("--outer", required=True, help="Signature name, or 'list' for sequence")
INNER = arg("--inner", required=True, help="Inner monad name")
UNCHECKED = arg(
    "--unchecked", action="store_true", help="Derive and compose without verifying first"
)


def _result(ctx: Context, reports) -> RunResult:
    return RunResult(reports=list(reports), bounds=ctx.bounds)


@router.command("laws", MONAD, help="Unit, associativity and functor laws")
def laws(ctx: Context, args: argparse.Namespace) -> RunResult:
    m = ctx.doc.monad(args.monad)
    return _result(ctx, check_monad_laws(m, *ctx.universes(1), ctx.bounds, workers=ctx.workers))


def _strength(ctx: Context, m: Monad, name: str, order: int, nesting: str | None) -> StrengthSpec:
    declared = ctx.doc.strengths.get(name)
    if declared is not None and declared.order == order:
        return ctx.doc.strength(name, m)
    if nesting is None and declared is None:
        return ctx.doc.strength(name, m, order)
    base = ctx.doc.strength(name, m, 2)
    if base.order != 2 or order < 2:
        raise UsageError(f"order mismatch: {name} has order {base.order}, requested {order}")
    return extend_gamma(base, order, nesting or "left")


@router.command(
    "strength",
    MONAD,
    STRENGTH,
    arg("--order", type=int, help="Order of the strength (default: its native order)"),
    arg("--nesting", choices=["left", "right"], help="Build order n by nesting the order-2 one"),
    arg("--assoc", action="store_true", help="Also check associativity of the order-2 strength"),
    arg("--reconstruct", action="store_true", help="Also rebuild it from its one-sided parts"),
    help="Naturality and the Kleisli-strength equations",
)
def strength(ctx: Context, args: argparse.Namespace) -> RunResult:
    m = ctx.doc.monad(args.monad)
    declared = ctx.doc.strengths.get(args.strength)
    order = args.order
    if order is None:
        order = declared.order if declared is not None else default_order(args.strength)
    gamma = _strength(ctx, m, args.strength, order, args.nesting)
    bounds, workers = ctx.bounds, ctx.workers
    reports = check_kleisli_strength(gamma, ctx.universes(gamma.order), bounds, workers=workers)
    if args.assoc:
        reports.append(check_gamma_assoc(gamma, ctx.universes(3), bounds, workers=workers))
    if args.reconstruct:
        reports.extend(check_reconstruct(gamma, ctx.universes(2), bounds, workers=workers))
    return _result(ctx, reports)


@router.command("commutative", MONAD, help="lstΓ = rstΓ")
def commutative(ctx: Context, args: argparse.Namespace) -> RunResult:
    m = ctx.doc.monad(args.monad)
    report = check_commutative(m, *ctx.universes(2), ctx.bounds, workers=ctx.workers)
    return _result(ctx, [report])


@router.command("coherence", MONAD, STRENGTH, help="Pairing against Kleisli composition")
def coherence(ctx: Context, args: argparse.Namespace) -> RunResult:
    m = ctx.doc.monad(args.monad)
    gamma = ctx.doc.strength(args.strength, m, 2)
    report = check_product_coherence(gamma, ctx.universes(3), ctx.bounds, workers=ctx.workers)
    return _result(ctx, [report])


def _parse_family(ctx: Context, text: str | None, signature, K: Monad) -> dict | None:
    if not text:
        return None
    family = {}
    for chunk in text.split(","):
        symbol, sep, name = chunk.strip().partition("=")
        if not sep:
            raise UsageError(f"--strengths expects symbol=name, got {chunk!r}")
        family[symbol] = ctx.doc.strength(name, K, signature.arity(symbol))
    return family


def _outer_monad(ctx: Context, signature) -> Monad | None:
    for monad in ctx.doc.monads.values():
        if isinstance(monad, FreeMonad) and monad.signature == signature:
            return monad
    return None


def _distlaw(ctx: Context, args: argparse.Namespace, K: Monad) -> DistLaw:
    if args.outer == "list":
        if args.strengths:
            raise UsageError("--strengths applies to signatures, not to list")
        return list_sequence(K)
    signature = ctx.doc.signature(args.outer)
    return derive_distlaw(
        signature,
        K,
        _parse_family(ctx, args.strengths, signature, K),
        checked=not args.unchecked,
        universes=ctx.universes(1),
        bounds=ctx.bounds,
        outer=_outer_monad(ctx, signature),
    )


@router.command(
    "distlaw",
    OUTER,
    INNER,
    arg("--strengths", help="Strength per operation: N=lst_gamma,Op=powerset_product"),
    UNCHECKED,
    help="Derive λ and check the distributive-law equations",
)
def distlaw(ctx: Context, args: argparse.Namespace) -> RunResult:
    K = ctx.doc.monad(args.inner)
    dl = _distlaw(ctx, args, K)
    _, reports = verify_distlaw(dl, *ctx.universes(1), ctx.bounds, workers=ctx.workers)
    return _result(ctx, reports)


def _load_terms(path: str) -> TermFileIn:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise SpecError(f"cannot read term file: {exc.strerror}", location=path) from None
    try:
        return TermFileIn.model_validate(orjson.loads(data))
    except orjson.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc}", location=path) from None
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise SpecError(first["msg"], path=where, location=path) from None


@router.command(
    "compose",
    OUTER,
    INNER,
    arg("--strengths", help="Strength per operation: N=lst_gamma,Op=powerset_product"),
    arg("--eval", dest="termfile", help="JSON file of unit/join/bind steps to evaluate"),
    arg("--laws", action="store_true", help="Check the composite monad's own laws"),
    UNCHECKED,
    help="Build the composite monad KH and evaluate in it",
)
def compose(ctx: Context, args: argparse.Namespace) -> RunResult:
    K = ctx.doc.monad(args.inner)
    (A,) = ctx.universes(1)
    checked = not args.unchecked
    dl, reports = verify_distlaw(_distlaw(ctx, args, K), A, ctx.bounds, workers=ctx.workers)
    if checked and not dl.verified:
        failed = next(r for r in reports if not r.matched)
        raise DerivationError(
            f"{dl.name} fails {failed.law.value}; rerun with --unchecked to compose anyway"
        )
    composite = CompositeMonad(dl, checked=checked)
    result = _result(ctx, reports)
    if args.laws:
        result.reports.extend(check_monad_laws(composite, A, ctx.bounds, workers=ctx.workers))
        result.reports.append(check_composite_bind(composite, A, ctx.bounds, workers=ctx.workers))
    if args.termfile:
        for step in _load_terms(args.termfile).steps:
            value = parse_value(step.value)
            if step.op == "unit":
                out = composite.unit(value)
            elif step.op == "join":
                out = composite.join(value)
            else:
                f = parse_value(step.f)
                if not isinstance(f, FnV):
                    raise UsageError(f"bind needs a fn{{...}} table, got {step.f!r}")
                out = composite_bind(dl, value, f.table, checked=checked)
            result.values.append((step.label or f"{step.op} {step.value}", out))
    return result


@router.command("audit", MONAD, help="Commutativity iff lstΓ (and rstΓ) is a Kleisli strength")
def audit(ctx: Context, args: argparse.Namespace) -> RunResult:
    m = ctx.doc.monad(args.monad)
    outcome = equivalence_audit(m, ctx.universes(2), ctx.bounds, workers=ctx.workers)
    return _result(ctx, outcome.reports)


@router.command("rstlift", MONAD, help="rst and lst as lifting transformations")
def rstlift(ctx: Context, args: argparse.Namespace) -> RunResult:
    m = ctx.doc.monad(args.monad)
    return _result(ctx, check_rst_lift(m, *ctx.universes(2), ctx.bounds, workers=ctx.workers))


@router.command("maplift", MONAD, help="Functoriality of mapping Kleisli arrows over lists")
def maplift(ctx: Context, args: argparse.Namespace) -> RunResult:
    m = ctx.doc.monad(args.monad)
    (A,) = ctx.universes(1)
    reports = [check_map_lift(m, A, ctx.bounds, workers=ctx.workers)]
    reports.extend(
        check_lift_transformation(
            ListFunctor(),
            m,
            m,
            lambda xs: sequence_values(m, xs.items),
            A,
            ctx.bounds,
            subject=f"sequence[{m.name}]",
            workers=ctx.workers,
        )
    )
    return _result(ctx, reports)


@router.command("catalog", help="Monad kinds, declared instances, strengths and signatures")
def catalog(ctx: Context, args: argparse.Namespace) -> RunResult:
    doc = ctx.doc
    result = RunResult(bounds=ctx.bounds)
    result.entries.extend(("kind", kind, text) for kind, text in catalog_entries())
    for name, universe in doc.universes.items():
        result.entries.append(("universe", name, f"{len(universe.values)} values"))
    for name, monad in doc.monads.items():
        applicable = [s for s in BUILTIN_STRENGTHS if strength_applies(s, monad)]
        result.entries.append(("monad", name, f"{monad.describe()}: {', '.join(applicable)}"))
    for name, spec in doc.strengths.items():
        result.entries.append(("strength", name, f"{spec.describe()} {spec.kind.value}"))
    for name, signature in doc.signatures.items():
        result.entries.append(("signature", name, signature.describe()))
    return result

