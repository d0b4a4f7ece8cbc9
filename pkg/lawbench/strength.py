"""Prestrengths and Kleisli-strength candidates.

A strength of order n maps n monadic values ``M V1, ..., M Vn`` to one
monadic value over the product ``M(V1 x ... x Vn)``. Products follow
``values.product_value``: unit, the value itself, a pair, or a flat tuple.
"""

from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Sequence

from lawbench.errors import UsageError
from lawbench.monads import (
    ExceptionsMonad,
    FreeMonad,
    IdentityMonad,
    ListMonad,
    Monad,
    PowersetMonad,
    ReaderMonad,
    StateMonad,
    WriterMonad,
)
from lawbench.terms import leftmost
from lawbench.values import (
    FnTable,
    FnV,
    ListV,
    Pair,
    Val,
    components,
    make_set,
    product_value,
)

logger = logging.getLogger(__name__)


class StrengthKind(str, enum.Enum):
    KLEISLI_CANDIDATE = "kleisli-candidate"
    DERIVED_LEFT = "derived-left"
    DERIVED_RIGHT = "derived-right"
    PRESTRENGTH_ONLY = "prestrength-only"


@dataclass(frozen=True)
class StrengthSpec:
    name: str
    monad: Monad
    order: int
    kind: StrengthKind
    fn: Callable[[tuple[Val, ...]], Val] = field(repr=False, compare=False)

    def apply(self, args: Sequence[Val]) -> Val:
        args = tuple(args)
        if len(args) != self.order:
            raise UsageError(f"{self.name} has order {self.order}, applied to {len(args)} values")
        return self.fn(args)

    def describe(self) -> str:
        return f"{self.name}@{self.monad.name}/{self.order}"


def rst(m: Monad, a: Val, mb: Val) -> Val:
    return m.fmap_fn(lambda b: Pair(a, b), mb)


def lst(m: Monad, ma: Val, b: Val) -> Val:
    return m.fmap_fn(lambda a: Pair(a, b), ma)


def lst_gamma(m: Monad, ma: Val, mb: Val) -> Val:
    """Run the left value, then the right one."""
    return m.bind_fn(ma, lambda a: rst(m, a, mb))


def rst_gamma(m: Monad, ma: Val, mb: Val) -> Val:
    """Run the right value, then the left one."""
    return m.bind_fn(mb, lambda b: lst(m, ma, b))


def derived_strength(m: Monad, side: str = "left", order: int = 2) -> StrengthSpec:
    """lstΓ or rstΓ of ``m``, extended to ``order`` by nesting on the same side."""
    if side not in ("left", "right"):
        raise UsageError(f"side must be left or right, got {side!r}")
    if side == "left":
        base = StrengthSpec(
            "lst_gamma", m, 2, StrengthKind.DERIVED_LEFT, lambda args: lst_gamma(m, *args)
        )
    else:
        base = StrengthSpec(
            "rst_gamma", m, 2, StrengthKind.DERIVED_RIGHT, lambda args: rst_gamma(m, *args)
        )
    return _at_order(base, order, side)


def gamma_zero(m: Monad) -> StrengthSpec:
    """Order 0: the unit at the empty product."""
    return StrengthSpec(
        "gamma0", m, 0, StrengthKind.KLEISLI_CANDIDATE, lambda args: m.unit(product_value(()))
    )


def gamma_one(m: Monad) -> StrengthSpec:
    return StrengthSpec(
        "identity_order1", m, 1, StrengthKind.KLEISLI_CANDIDATE, lambda args: args[0]
    )


def _at_order(gamma2: StrengthSpec, order: int, nesting: str = "left") -> StrengthSpec:
    if order == 0:
        return gamma_zero(gamma2.monad)
    if order == 1:
        return gamma_one(gamma2.monad)
    return extend_gamma(gamma2, order, nesting)


def extend_gamma(gamma: StrengthSpec, n: int, nesting: str = "left") -> StrengthSpec:
    """Order-n strength from an order-2 one, nested on the left or on the right.

    The nested pairs are reassociated so the result is over a flat n-tuple.
    """
    if gamma.order != 2:
        raise UsageError(
            f"extend_gamma needs an order-2 strength, {gamma.name} has order {gamma.order}"
        )
    if n < 2:
        raise UsageError(f"extend_gamma needs n >= 2, got {n}")
    if nesting not in ("left", "right"):
        raise UsageError(f"nesting must be left or right, got {nesting!r}")
    if n == 2:
        return gamma
    m = gamma.monad
    inner = extend_gamma(gamma, n - 1, nesting)

    if nesting == "left":

        def apply(args: tuple[Val, ...]) -> Val:
            head = inner.apply(args[:-1])
            return m.fmap_fn(
                lambda p: product_value((*components(p.fst, n - 1), p.snd)),
                gamma.apply((head, args[-1])),
            )

    else:

        def apply(args: tuple[Val, ...]) -> Val:
            tail = inner.apply(args[1:])
            return m.fmap_fn(
                lambda p: product_value((p.fst, *components(p.snd, n - 1))),
                gamma.apply((args[0], tail)),
            )

    return StrengthSpec(f"{gamma.name}^{n}{nesting[0]}", m, n, gamma.kind, apply)


def l_of_gamma(gamma: StrengthSpec) -> Callable[[Val, Val], Val]:
    """lΓ(ma, b) = Γ(ma, unit b)."""
    _require_order2(gamma)
    m = gamma.monad
    return lambda ma, b: gamma.apply((ma, m.unit(b)))


def r_of_gamma(gamma: StrengthSpec) -> Callable[[Val, Val], Val]:
    """rΓ(a, mb) = Γ(unit a, mb)."""
    _require_order2(gamma)
    m = gamma.monad
    return lambda a, mb: gamma.apply((m.unit(a), mb))


def reconstruct_gamma(gamma: StrengthSpec, ma: Val, mb: Val) -> tuple[Val, Val]:
    """Both reconstructions of Γ(ma, mb) from its one-sided restrictions.

    The first runs lΓ at (ma, mb) and binds rΓ, the second runs rΓ at
    (ma, mb) and binds lΓ.
    """
    m = gamma.monad
    left, right = l_of_gamma(gamma), r_of_gamma(gamma)
    via_left = m.bind_fn(left(ma, mb), lambda p: right(p.fst, p.snd))
    via_right = m.bind_fn(right(ma, mb), lambda p: left(p.fst, p.snd))
    return via_left, via_right


def _require_order2(gamma: StrengthSpec) -> None:
    if gamma.order != 2:
        raise UsageError(f"{gamma.name} has order {gamma.order}; order 2 is required")


def _require(m: Monad, kinds: tuple[type, ...], name: str, nonempty: bool = False) -> None:
    if not isinstance(m, kinds):
        raise UsageError(f"strength {name} does not apply to monad {m.name}")
    if nonempty and not getattr(m, "nonempty", False):
        raise UsageError(f"strength {name} needs a non-empty list or tree monad, not {m.name}")


def _identity_order1(m: Monad, order: int, params: dict) -> StrengthSpec:
    if order != 1:
        raise UsageError("identity_order1 has order 1")
    return gamma_one(m)


def _list_rev(m: Monad, order: int, params: dict) -> StrengthSpec:
    _require(m, (ListMonad,), "list_rev")
    if order != 1:
        raise UsageError("list_rev has order 1")
    return StrengthSpec(
        "list_rev", m, 1, StrengthKind.KLEISLI_CANDIDATE, lambda args: ListV(args[0].items[::-1])
    )


def _powerset_product(m: Monad, order: int, params: dict) -> StrengthSpec:
    _require(m, (PowersetMonad,), "powerset_product")

    def apply(args):
        return make_set(product_value(c) for c in itertools.product(*(a.items for a in args)))

    return StrengthSpec("powerset_product", m, order, StrengthKind.KLEISLI_CANDIDATE, apply)


def _exceptions_default(m: Monad, order: int, params: dict) -> StrengthSpec:
    _require(m, (ExceptionsMonad,), "exceptions_default")
    default = params.get("default", m.default)
    if default not in m.exceptions.values:
        raise UsageError(f"default exception is not in {m.exceptions.name}")
    raised = m.raise_value(default)

    def apply(args):
        if all(m.is_ok(a) for a in args):
            return m.unit(product_value([a.payload for a in args]))
        return raised

    return StrengthSpec("exceptions_default", m, order, StrengthKind.KLEISLI_CANDIDATE, apply)


def _reader_pointwise(m: Monad, order: int, params: dict) -> StrengthSpec:
    _require(m, (ReaderMonad,), "reader_pointwise")

    def apply(args):
        columns = zip(*(a.table.entries for a in args)) if args else [()] * len(m.domain)
        return FnV(FnTable(m.domain, tuple(product_value(c) for c in columns)))

    return StrengthSpec("reader_pointwise", m, order, StrengthKind.KLEISLI_CANDIDATE, apply)


def _writer_monoid(m: Monad, order: int, params: dict) -> StrengthSpec:
    _require(m, (WriterMonad,), "writer_monoid")

    def apply(args):
        return Pair(m.monoid.fold(a.fst for a in args), product_value([a.snd for a in args]))

    return StrengthSpec("writer_monoid", m, order, StrengthKind.KLEISLI_CANDIDATE, apply)


def _state_snapback(m: Monad, order: int, params: dict) -> StrengthSpec:
    _require(m, (StateMonad,), "state_snapback")

    def apply(args):
        return FnV(
            FnTable(
                m.domain,
                tuple(
                    Pair(product_value([a.table.apply(s).fst for a in args]), s) for s in m.domain
                ),
            )
        )

    return StrengthSpec("state_snapback", m, order, StrengthKind.KLEISLI_CANDIDATE, apply)


def _tree_leftmost(m: Monad, order: int, params: dict) -> StrengthSpec:
    _require(m, (FreeMonad,), "tree_leftmost", nonempty=True)

    def apply(args):
        return m.unit(product_value([leftmost(t) for t in args]))

    return StrengthSpec("tree_leftmost", m, order, StrengthKind.KLEISLI_CANDIDATE, apply)


def _list_pick(position: int, name: str):
    def build(m: Monad, order: int, params: dict) -> StrengthSpec:
        _require(m, (ListMonad,), name, nonempty=True)

        def apply(args):
            return ListV((product_value([a.items[position] for a in args]),))

        return StrengthSpec(name, m, order, StrengthKind.KLEISLI_CANDIDATE, apply)

    return build


def _comprehension(m: Monad, order: int, params: dict) -> StrengthSpec:
    _require(m, (ListMonad,), "comprehension", nonempty=True)
    derived = derived_strength(m, "left", order)
    return StrengthSpec("comprehension", m, order, StrengthKind.PRESTRENGTH_ONLY, derived.fn)


def _derived(side: str):
    def build(m: Monad, order: int, params: dict) -> StrengthSpec:
        return derived_strength(m, side, order)

    return build


BUILTIN_STRENGTHS: dict[str, Callable[[Monad, int, dict], StrengthSpec]] = {
    "identity_order1": _identity_order1,
    "list_rev": _list_rev,
    "powerset_product": _powerset_product,
    "exceptions_default": _exceptions_default,
    "reader_pointwise": _reader_pointwise,
    "writer_monoid": _writer_monoid,
    "state_snapback": _state_snapback,
    "tree_leftmost": _tree_leftmost,
    "list_fst": _list_pick(0, "list_fst"),
    "list_lst": _list_pick(-1, "list_lst"),
    "comprehension": _comprehension,
    "lst_gamma": _derived("left"),
    "rst_gamma": _derived("right"),
}


def builtin_strength(name: str, monad: Monad, order: int = 2, **params) -> StrengthSpec:
    """Catalog strength ``name`` on ``monad`` at ``order``."""
    try:
        build = BUILTIN_STRENGTHS[name]
    except KeyError:
        raise UsageError(f"unknown strength {name!r}") from None
    if order < 0:
        raise UsageError(f"strength order must be non-negative, got {order}")
    spec = build(monad, order, params)
    logger.debug("built strength %s", spec.describe())
    return spec


ORDER_ONE = frozenset({"identity_order1", "list_rev"})


def default_order(name: str) -> int:
    return 1 if name in ORDER_ONE else 2


def strength_applies(name: str, monad: Monad) -> bool:
    if isinstance(monad, IdentityMonad):
        return name in ("identity_order1", "lst_gamma", "rst_gamma")
    try:
        builtin_strength(name, monad, default_order(name))
    except UsageError:
        return False
    return True
