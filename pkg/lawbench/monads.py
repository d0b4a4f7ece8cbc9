"""Catalog monads as data: carrier enumeration, unit, fmap and join.

``bind`` and Kleisli composition are derived once on the base class and never
overridden by an instance.
"""

from __future__ import annotations

import itertools
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from lawbench.errors import MonoidLawError, NestingBoundError, UsageError
from lawbench.schemas import Bounds
from lawbench.terms import (
    NONEMPTY_TREE,
    TREE,
    Signature,
    enumerate_terms,
    term_fmap,
    term_join,
    term_unit,
)
from lawbench.values import (
    Atom,
    Concat,
    FnTable,
    FnV,
    ListV,
    Listed,
    Mapped,
    Pair,
    Product,
    SetV,
    Space,
    Subsets,
    Tagged,
    Universe,
    Val,
    as_space,
    function_space,
    make_set,
    show,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MonoidSpec:
    """Finite monoid; a failed law raises MonoidLawError at construction."""

    name: str
    carrier: Universe
    op: FnTable = field(repr=False)
    identity: Val
    commutative: bool = False

    def __post_init__(self):
        self.verify()

    @classmethod
    def from_callable(
        cls,
        name: str,
        carrier: Universe,
        fn: Callable[[Val, Val], Val],
        identity: Val,
        commutative: bool = False,
    ) -> MonoidSpec:
        pairs = [Pair(x, y) for x, y in itertools.product(carrier.values, repeat=2)]
        table = FnTable.from_callable(pairs, lambda p: fn(p.fst, p.snd), carrier.name)
        return cls(name, carrier, table, identity, commutative)

    def multiply(self, x: Val, y: Val) -> Val:
        return self.op.apply(Pair(x, y))

    def fold(self, values: Iterable[Val]) -> Val:
        total = self.identity
        for value in values:
            total = self.multiply(total, value)
        return total

    def verify(self) -> None:
        elements = self.carrier.values
        members = set(elements)
        if self.identity not in members:
            raise MonoidLawError(self.name, "identity membership", (show(self.identity),))
        for x, y in itertools.product(elements, repeat=2):
            if self.multiply(x, y) not in members:
                raise MonoidLawError(self.name, "closure", (show(x), show(y)))
        for x, y, z in itertools.product(elements, repeat=3):
            if self.multiply(self.multiply(x, y), z) != self.multiply(x, self.multiply(y, z)):
                raise MonoidLawError(self.name, "associativity", (show(x), show(y), show(z)))
        if self.commutative:
            for x, y in itertools.product(elements, repeat=2):
                if self.multiply(x, y) != self.multiply(y, x):
                    raise MonoidLawError(self.name, "commutativity", (show(x), show(y)))
        for x in elements:
            if self.multiply(self.identity, x) != x or self.multiply(x, self.identity) != x:
                raise MonoidLawError(self.name, "identity", (show(x),))


def add_mod(n: int, name: str | None = None) -> MonoidSpec:
    carrier = Universe.of(f"Z{n}", range(n))
    return MonoidSpec.from_callable(
        name or f"z{n}", carrier, lambda x, y: Atom((x.value + y.value) % n), Atom(0), True
    )


def left_zero(name: str = "leftzero") -> MonoidSpec:
    """Band ``xy = x`` on {a, b} with an adjoined identity e."""
    carrier = Universe.of("LZ", ["a", "b", "e"])
    identity = Atom("e")
    return MonoidSpec.from_callable(
        name, carrier, lambda x, y: y if x == identity else x, identity, False
    )


class Monad(ABC):
    """A monad given by unit, fmap and join on the universal value type."""

    kind: str = ""
    # carrier stacks two different monads; law checks then use Bounds.nested()
    stacked: bool = False

    def __init__(self, name: str):
        self.name = name

    def carrier(self, base: Space | Iterable[Val], bounds: Bounds) -> Space:
        """Bounded enumeration of ``M base`` in val_order."""
        base = as_space(base)
        depth = base.layers.count(self.name) + 1
        if depth > bounds.maxNestDepth:
            raise NestingBoundError(self.name, depth, bounds.maxNestDepth)
        space = self._carrier(base, bounds)
        space.layers = base.layers + (self.name,)
        space.label = f"{self.name}({base.label})"
        return space

    @abstractmethod
    def _carrier(self, base: Space, bounds: Bounds) -> Space: ...

    @abstractmethod
    def unit(self, a: Val) -> Val: ...

    @abstractmethod
    def fmap_fn(self, fn: Callable[[Val], Val], ma: Val) -> Val: ...

    @abstractmethod
    def join(self, mma: Val) -> Val: ...

    def fmap(self, f: FnTable, ma: Val) -> Val:
        return self.fmap_fn(f.apply, ma)

    def bind_fn(self, ma: Val, fn: Callable[[Val], Val]) -> Val:
        return self.join(self.fmap_fn(fn, ma))

    def bind(self, ma: Val, f: FnTable) -> Val:
        return self.bind_fn(ma, f.apply)

    def kleisli_compose(self, f: FnTable, g: FnTable) -> FnTable:
        return FnTable.from_callable(f.domain, lambda a: self.bind(f.apply(a), g))

    def describe(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.describe()}>"


class IdentityMonad(Monad):
    kind = "identity"

    def _carrier(self, base, bounds):
        return Mapped(base, lambda a: a)

    def unit(self, a):
        return a

    def fmap_fn(self, fn, ma):
        return fn(ma)

    def join(self, mma):
        return mma


class ListMonad(Monad):
    kind = "list"

    def __init__(self, name: str, nonempty: bool = False):
        super().__init__(name)
        self.nonempty = nonempty
        if nonempty:
            self.kind = "list+"

    def _carrier(self, base, bounds):
        shortest = 1 if self.nonempty else 0
        return Concat(
            [
                Product([base] * length, build=lambda items: ListV(tuple(items)))
                for length in range(shortest, bounds.maxListLen + 1)
            ]
        )

    def unit(self, a):
        return ListV((a,))

    def fmap_fn(self, fn, ma):
        return ListV(tuple(map(fn, ma.items)))

    def join(self, mma):
        return ListV(tuple(itertools.chain.from_iterable(inner.items for inner in mma.items)))


class ExceptionsMonad(Monad):
    """``X + Exc``; the maybe monad is the instance with one nullary exception."""

    kind = "exceptions"

    def __init__(
        self,
        name: str,
        exceptions: Universe,
        default: Val | None = None,
        *,
        ok_tag: str = "ok",
        raise_tag: str = "exc",
        nullary: bool = False,
    ):
        super().__init__(name)
        if not exceptions.values:
            raise UsageError(f"{name}: the exception universe must be non-empty")
        self.exceptions = exceptions
        self.default = exceptions.values[0] if default is None else default
        if self.default not in exceptions.values:
            raise UsageError(f"{name}: default {show(self.default)} is not in {exceptions.name}")
        self.ok_tag = ok_tag
        self.raise_tag = raise_tag
        self.nullary = nullary
        self.raised = [self.raise_value(e) for e in exceptions.values]

    def raise_value(self, exception: Val) -> Val:
        return Tagged(self.raise_tag, None if self.nullary else exception)

    def is_ok(self, value: Val) -> bool:
        return isinstance(value, Tagged) and value.tag == self.ok_tag

    def _carrier(self, base, bounds):
        ok = Mapped(base, lambda a: Tagged(self.ok_tag, a))
        return Concat([ok, Listed(self.raised)])

    def unit(self, a):
        return Tagged(self.ok_tag, a)

    def fmap_fn(self, fn, ma):
        return Tagged(self.ok_tag, fn(ma.payload)) if self.is_ok(ma) else ma

    def join(self, mma):
        return mma.payload if self.is_ok(mma) else mma

    def describe(self):
        return f"{self.name}[{self.exceptions.name}]"


def maybe_monad(name: str = "maybe") -> ExceptionsMonad:
    monad = ExceptionsMonad(
        name,
        Universe("Nothing", (Atom("nothing"),)),
        ok_tag="just",
        raise_tag="nothing",
        nullary=True,
    )
    monad.kind = "maybe"
    return monad


class ReaderMonad(Monad):
    kind = "reader"

    def __init__(self, name: str, environment: Universe):
        super().__init__(name)
        self.environment = environment
        self.domain = environment.values

    def _carrier(self, base, bounds):
        return function_space(self.domain, base)

    def unit(self, a):
        return FnV(FnTable(self.domain, (a,) * len(self.domain)))

    def fmap_fn(self, fn, ma):
        return FnV(FnTable(self.domain, tuple(map(fn, ma.table.entries))))

    def join(self, mma):
        entries = mma.table.entries
        diagonal = tuple(entries[i].table.entries[i] for i in range(len(entries)))
        return FnV(FnTable(self.domain, diagonal))

    def describe(self):
        return f"{self.name}[{self.environment.name}]"


class WriterMonad(Monad):
    kind = "writer"

    def __init__(self, name: str, monoid: MonoidSpec):
        super().__init__(name)
        self.monoid = monoid

    def _carrier(self, base, bounds):
        return Product([self.monoid.carrier.space(), base], build=lambda p: Pair(p[0], p[1]))

    def unit(self, a):
        return Pair(self.monoid.identity, a)

    def fmap_fn(self, fn, ma):
        return Pair(ma.fst, fn(ma.snd))

    def join(self, mma):
        return Pair(self.monoid.multiply(mma.fst, mma.snd.fst), mma.snd.snd)

    def describe(self):
        return f"{self.name}[{self.monoid.name}]"


class StateMonad(Monad):
    """``(X x S)^S`` as tables over the state universe."""

    kind = "state"

    def __init__(self, name: str, states: Universe):
        super().__init__(name)
        self.states = states
        self.domain = states.values

    def _carrier(self, base, bounds):
        outcomes = Product([base, self.states.space()], build=lambda p: Pair(p[0], p[1]))
        return function_space(self.domain, outcomes)

    def unit(self, a):
        return FnV(FnTable(self.domain, tuple(Pair(a, s) for s in self.domain)))

    def fmap_fn(self, fn, ma):
        return FnV(FnTable(self.domain, tuple(Pair(fn(r.fst), r.snd) for r in ma.table.entries)))

    def join(self, mma):
        def run(result: Pair) -> Val:
            return result.fst.table.apply(result.snd)

        return FnV(FnTable(self.domain, tuple(run(r) for r in mma.table.entries)))

    def describe(self):
        return f"{self.name}[{self.states.name}]"


class PowersetMonad(Monad):
    kind = "powerset"

    def _carrier(self, base, bounds):
        return Subsets(base, max_size=bounds.maxSetSize)

    def unit(self, a):
        return SetV((a,))

    def fmap_fn(self, fn, ma):
        return make_set(map(fn, ma.items))

    def join(self, mma):
        return make_set(itertools.chain.from_iterable(inner.items for inner in mma.items))


class FreeMonad(Monad):
    """Terms of a signature with grafting as join."""

    kind = "free"

    def __init__(self, name: str, signature: Signature):
        super().__init__(name)
        self.signature = signature
        if signature == TREE:
            self.kind = "tree"
        elif signature == NONEMPTY_TREE:
            self.kind = "tree+"

    @property
    def nonempty(self) -> bool:
        return not self.signature.constants

    def _carrier(self, base, bounds):
        return enumerate_terms(self.signature, base, bounds.maxTreeDepth)

    def unit(self, a):
        return term_unit(a)

    def fmap_fn(self, fn, ma):
        return term_fmap(fn, ma)

    def join(self, mma):
        return term_join(mma)

    def describe(self):
        return f"{self.name}[{self.signature.describe()}]"


def sequence_values(monad: Monad, items: Sequence[Val]) -> Val:
    """Run monadic values left to right and collect their results in a list."""
    if not items:
        return monad.unit(ListV(()))
    head, rest = items[0], items[1:]
    return monad.bind_fn(
        head,
        lambda a: monad.bind_fn(
            sequence_values(monad, rest), lambda tail: monad.unit(ListV((a,) + tail.items))
        ),
    )


def enumerate_m(m: Monad, A: Space | Iterable[Val], bounds: Bounds) -> list[Val]:
    return m.carrier(A, bounds).to_list()


def unit(m: Monad, a: Val) -> Val:
    return m.unit(a)


def fmap(m: Monad, f: FnTable, ma: Val) -> Val:
    return m.fmap(f, ma)


def join(m: Monad, mma: Val) -> Val:
    return m.join(mma)


def bind(m: Monad, ma: Val, f: FnTable) -> Val:
    return m.bind(ma, f)


def kleisli_compose(m: Monad, f: FnTable, g: FnTable) -> FnTable:
    return m.kleisli_compose(f, g)


def catalog_entries() -> list[tuple[str, str]]:
    """Kind and one-line description of every catalog monad."""
    return [
        ("identity", "X"),
        ("list", "finite lists, join = concatenation"),
        ("list+", "non-empty lists"),
        ("maybe", "X + 1, printed Just x / Nothing"),
        ("exceptions", "X + Exc for a declared exception universe and default"),
        ("reader", "R -> X over a declared environment universe"),
        ("writer", "M x X over a declared monoid"),
        ("state", "(X x S)^S over a declared state universe"),
        ("powerset", "finite subsets, join = union"),
        ("tree", "binary trees with empty tree E, join = grafting"),
        ("tree+", "non-empty binary trees"),
        ("free", "free monad of a declared signature"),
    ]
