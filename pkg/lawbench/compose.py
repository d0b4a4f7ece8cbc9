"""Distributive laws over free monads and the composite monads they induce."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping, Sequence

from lawbench.errors import CompositeMismatchError, DerivationError, MalformedTermError
from lawbench.lawcheck import (
    LawReport,
    Status,
    check_distributive_law,
    check_kleisli_strength,
)
from lawbench.monads import FreeMonad, ListMonad, Monad, sequence_values
from lawbench.schemas import Bounds
from lawbench.strength import StrengthSpec, derived_strength
from lawbench.terms import Signature, make_op, op_view
from lawbench.values import FnTable, Leaf, Space, Val, as_space, components, show

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DistLaw:
    """λ : HK -> KH with the data it was derived from."""

    name: str
    outer: Monad
    inner: Monad
    fn: Callable[[Val], Val] = field(repr=False, compare=False)
    gamma_family: Mapping[str, StrengthSpec] = field(
        default_factory=dict, repr=False, compare=False
    )
    verified: bool = False

    def apply(self, hk: Val) -> Val:
        return self.fn(hk)

    def __call__(self, hk: Val) -> Val:
        return self.fn(hk)


def default_gamma_family(signature: Signature, K: Monad) -> dict[str, StrengthSpec]:
    """lstΓ of ``K`` at each operation's arity, nested to the left."""
    return {
        symbol: derived_strength(K, "left", arity)
        for symbol, arity in signature.ops
        if arity > 0
    }


def _check_family(signature: Signature, family: Mapping[str, StrengthSpec], K: Monad) -> None:
    for symbol, arity in signature.ops:
        if arity == 0:
            continue
        if symbol not in family:
            raise DerivationError(f"missing strength for operation {symbol}/{arity}")
        gamma = family[symbol]
        if gamma.order != arity:
            raise DerivationError(
                f"order mismatch: {gamma.name} has order {gamma.order}, {symbol} has arity {arity}"
            )
        if gamma.monad.name != K.name:
            raise DerivationError(f"{gamma.name} is a strength on {gamma.monad.name}, not {K.name}")


def derive_distlaw(
    signature: Signature,
    K: Monad,
    gamma_family: Mapping[str, StrengthSpec] | None = None,
    *,
    checked: bool = True,
    universes: Sequence | None = None,
    bounds: Bounds | None = None,
    outer: Monad | None = None,
) -> DistLaw:
    """λ : Σ@K -> KΣ@ by structural recursion over terms.

    Variables go through ``K.fmap(Leaf)``, constants through ``K.unit`` and
    every other operation through its strength. In checked mode each strength
    must first pass the Kleisli-strength laws over ``universes``, run under
    ``bounds.nested()``.
    """
    family = dict(gamma_family) if gamma_family is not None else default_gamma_family(signature, K)
    _check_family(signature, family, K)
    if checked:
        if bounds is None or universes is None:
            raise DerivationError("checked derivation needs universes and bounds")
        for symbol, gamma in family.items():
            reports = check_kleisli_strength(
                gamma, [universes[0]] * gamma.order, bounds.nested()
            )
            failed = [r for r in reports if r.status == Status.FAIL]
            if failed:
                raise DerivationError(
                    f"{gamma.name} for {symbol} is not a Kleisli strength: "
                    f"{failed[0].law.value} fails; rerun with --unchecked to derive anyway"
                )

    def lam(term: Val) -> Val:
        view = op_view(term)
        if view is None:
            return K.fmap_fn(Leaf, term.value)
        symbol, children = view
        if not children:
            return K.unit(term)
        if symbol not in family:
            raise MalformedTermError(f"{symbol} is not an operation of {signature.name}")
        arity = len(children)
        lifted = family[symbol].apply([lam(child) for child in children])
        return K.fmap_fn(lambda p: make_op(symbol, components(p, arity)), lifted)

    H = outer or FreeMonad(signature.name, signature)
    mode = "checked" if checked else "unchecked"
    logger.info("derived λ for %s over %s (%s)", signature.name, K.name, mode)
    return DistLaw(f"λ[{signature.name},{K.name}]", H, K, lam, family)


def list_sequence(K: Monad, outer: ListMonad | None = None) -> DistLaw:
    """``sequence`` as a candidate λ : LK -> KL; the outer list is named L by default."""
    H = outer or ListMonad("L")
    return DistLaw(f"sequence[{K.name}]", H, K, lambda xs: sequence_values(K, xs.items))


def verify_distlaw(
    dl: DistLaw, A: Space | Sequence[Val], bounds: Bounds, *, workers: int = 1
) -> tuple[DistLaw, list[LawReport]]:
    """Run the distributive-law checks; a verified copy is returned when none fails."""
    reports = check_distributive_law(
        dl.outer, dl.inner, dl.apply, as_space(A), bounds, subject=dl.name, workers=workers
    )
    if any(report.status == Status.FAIL for report in reports):
        return dl, reports
    return replace(dl, verified=True), reports


class CompositeMonad(Monad):
    """KH with unit ρη and join νK ∘ KKμ ∘ Kλ."""

    kind = "composite"
    stacked = True

    def __init__(self, dl: DistLaw, *, checked: bool = True):
        if checked and not dl.verified:
            raise DerivationError(
                f"{dl.name} is not verified; rerun with --unchecked to compose anyway"
            )
        super().__init__(f"{dl.inner.name}∘{dl.outer.name}")
        self.dl = dl
        self.H = dl.outer
        self.K = dl.inner
        self.checked = checked

    def _carrier(self, base, bounds):
        return self.K.carrier(self.H.carrier(base, bounds), bounds)

    def unit(self, a):
        return self.K.unit(self.H.unit(a))

    def fmap_fn(self, fn, ma):
        return self.K.fmap_fn(lambda h: self.H.fmap_fn(fn, h), ma)

    def join(self, mma):
        K, H = self.K, self.H
        swapped = K.fmap_fn(self.dl.apply, mma)
        return K.join(K.fmap_fn(lambda khh: K.fmap_fn(H.join, khh), swapped))

    def bind_both(self, v: Val, f: Callable[[Val], Val]) -> tuple[Val, Val]:
        """Composite bind by join-after-fmap and by the do-form through λ."""
        K, H = self.K, self.H
        via_join = self.bind_fn(v, f)
        via_lambda = K.bind_fn(
            v,
            lambda x: K.bind_fn(self.dl.apply(H.fmap_fn(f, x)), lambda b: K.unit(H.join(b))),
        )
        return via_join, via_lambda

    def describe(self):
        return f"{self.name}[{self.dl.name}]"


def composite_unit(dl: DistLaw, a: Val, *, checked: bool = True) -> Val:
    return CompositeMonad(dl, checked=checked).unit(a)


def composite_join(dl: DistLaw, v: Val, *, checked: bool = True) -> Val:
    return CompositeMonad(dl, checked=checked).join(v)


def composite_bind(dl: DistLaw, v: Val, f: FnTable, *, checked: bool = True) -> Val:
    """Bind in KH; in checked mode both computation paths must agree."""
    via_join, via_lambda = CompositeMonad(dl, checked=checked).bind_both(v, f.apply)
    if checked and via_join != via_lambda:
        raise CompositeMismatchError(
            f"composite bind paths disagree at {show(v)}: {show(via_join)} vs {show(via_lambda)}"
        )
    return via_lambda

