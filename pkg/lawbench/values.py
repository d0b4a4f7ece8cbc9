"""Universal value representation, the global total order, and lazy enumeration spaces.

Every carrier the engine quantifies over is a ``Space``: a finite sequence of
values in ``val_order`` that can report its size and produce the element at a
given index without materialising its neighbours. Nested carriers such as
``M(M A)`` are therefore never built in full unless a check visits all of them.
"""

from __future__ import annotations

import enum
import hashlib
import itertools
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence, Union

from lawbench.errors import NoTotalFunctionsError, PartialApplicationError
from lawbench.schemas import Bounds

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Atom:
    value: int | str


@dataclass(frozen=True, slots=True)
class UnitV:
    pass


@dataclass(frozen=True, slots=True)
class Pair:
    fst: Val
    snd: Val


@dataclass(frozen=True, slots=True)
class TupleV:
    items: tuple[Val, ...]


@dataclass(frozen=True, slots=True)
class ListV:
    items: tuple[Val, ...]


@dataclass(frozen=True, slots=True)
class SetV:
    """Finite set. Build with ``make_set`` so ``items`` stays sorted and duplicate-free."""

    items: tuple[Val, ...]


@dataclass(frozen=True, slots=True)
class EmptyTree:
    pass


@dataclass(frozen=True, slots=True)
class Leaf:
    value: Val


@dataclass(frozen=True, slots=True)
class Node:
    left: Val
    right: Val


@dataclass(frozen=True, slots=True)
class OpNode:
    """Operation of a signature other than the binary ``N`` and the constant ``E``."""

    symbol: str
    children: tuple[Val, ...] = ()


@dataclass(frozen=True, slots=True)
class Tagged:
    tag: str
    payload: Val | None = None


@dataclass(frozen=True, slots=True)
class FnV:
    table: FnTable


Val = Union[Atom, UnitV, Pair, TupleV, ListV, SetV, EmptyTree, Leaf, Node, OpNode, Tagged, FnV]

UNIT = UnitV()
EMPTY = EmptyTree()


@dataclass(frozen=True, slots=True)
class FnTable:
    """Total function on an explicit finite domain, compared by (domain, entries)."""

    domain: tuple[Val, ...]
    entries: tuple[Val, ...]
    codomain: str = field(default="", compare=False)
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.domain) != len(self.entries):
            raise ValueError("function table needs one entry per domain value")
        object.__setattr__(self, "_index", dict(zip(self.domain, self.entries)))

    @classmethod
    def from_callable(
        cls, domain: Iterable[Val], fn: Callable[[Val], Val], codomain: str = ""
    ) -> FnTable:
        domain = tuple(domain)
        return cls(domain, tuple(fn(x) for x in domain), codomain)

    @classmethod
    def identity(cls, domain: Iterable[Val]) -> FnTable:
        return cls.from_callable(domain, lambda x: x)

    def apply(self, value: Val) -> Val:
        try:
            return self._index[value]
        except KeyError:
            raise PartialApplicationError(self.describe(), show(value)) from None

    def __call__(self, value: Val) -> Val:
        return self.apply(value)

    def items(self) -> Iterator[tuple[Val, Val]]:
        return zip(self.domain, self.entries)

    def describe(self) -> str:
        into = f" into {self.codomain}" if self.codomain else ""
        return f"table on {len(self.domain)} values{into}"


class Ordering(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


_TAG_RANK = {"ok": 0, "just": 0, "exc": 1, "nothing": 1}


@lru_cache(maxsize=1 << 16)
def order_key(v: Val) -> tuple:
    """Sort key realising the global total order on values."""
    match v:
        case Atom(value=int() as n):
            return (0, 0, n)
        case Atom(value=name):
            return (0, 1, name)
        case UnitV():
            return (1,)
        case Pair(fst, snd):
            return (2, order_key(fst), order_key(snd))
        case TupleV(items):
            return (3, len(items), tuple(map(order_key, items)))
        case ListV(items):
            return (4, len(items), tuple(map(order_key, items)))
        case SetV(items):
            return (5, len(items), tuple(map(order_key, items)))
        case EmptyTree():
            return (6, 0)
        case Leaf(value):
            return (6, 1, order_key(value))
        case Node(left, right):
            return (6, 2, order_key(left), order_key(right))
        case OpNode(symbol, children):
            return (6, 3, symbol, len(children), tuple(map(order_key, children)))
        case Tagged(tag, payload):
            rank = _TAG_RANK.get(tag, 2)
            return (7, rank, tag, (0,) if payload is None else (1, order_key(payload)))
        case FnV(table):
            return (
                8,
                len(table.domain),
                tuple(map(order_key, table.domain)),
                tuple(map(order_key, table.entries)),
            )
    raise TypeError(f"not a value: {v!r}")


def val_order(a: Val, b: Val) -> Ordering:
    ka, kb = order_key(a), order_key(b)
    if ka < kb:
        return Ordering.LT
    if ka > kb:
        return Ordering.GT
    return Ordering.EQ


def sort_values(values: Iterable[Val]) -> tuple[Val, ...]:
    return tuple(sorted(values, key=order_key))


def make_set(values: Iterable[Val]) -> SetV:
    return SetV(sort_values(set(values)))


def canon(v: Val) -> Val:
    """Canonical form: every nested set sorted and deduplicated.

    Parsed and enumerated values are canonical already; values assembled from
    the raw constructors, such as ``SetV((Atom(2), Atom(1)))``, compare equal
    to their parsed counterparts only after ``canon``.
    """
    match v:
        case SetV(items):
            return make_set(canon(x) for x in items)
        case Pair(fst, snd):
            return Pair(canon(fst), canon(snd))
        case TupleV(items):
            return TupleV(tuple(map(canon, items)))
        case ListV(items):
            return ListV(tuple(map(canon, items)))
        case Leaf(value):
            return Leaf(canon(value))
        case Node(left, right):
            return Node(canon(left), canon(right))
        case OpNode(symbol, children):
            return OpNode(symbol, tuple(map(canon, children)))
        case Tagged(tag, payload) if payload is not None:
            return Tagged(tag, canon(payload))
        case FnV(table):
            domain, entries = tuple(map(canon, table.domain)), tuple(map(canon, table.entries))
            return FnV(FnTable(domain, entries, table.codomain))
    return v


def product_value(components: Sequence[Val]) -> Val:
    """Element of V1 x ... x Vn: unit, the value itself, a pair, or a flat tuple."""
    match len(components):
        case 0:
            return UNIT
        case 1:
            return components[0]
        case 2:
            return Pair(components[0], components[1])
    return TupleV(tuple(components))


def components(v: Val, n: int) -> tuple[Val, ...]:
    """Inverse of ``product_value`` at arity ``n``."""
    if n == 0:
        return ()
    if n == 1:
        return (v,)
    if n == 2 and isinstance(v, Pair):
        return (v.fst, v.snd)
    if n >= 3 and isinstance(v, TupleV) and len(v.items) == n:
        return v.items
    raise TypeError(f"{show(v)} is not a product of arity {n}")


@dataclass(frozen=True)
class Universe:
    name: str
    values: tuple[Val, ...]

    def __post_init__(self):
        if len(set(self.values)) != len(self.values):
            raise ValueError(f"universe {self.name} has repeated values")

    @classmethod
    def of(cls, name: str, raw: Iterable[int | str]) -> Universe:
        return cls(name, tuple(Atom(x) for x in raw))

    def space(self) -> Space:
        return Listed(self.values, label=self.name)


def enumerate_universe(u: Universe) -> list[Val]:
    return list(u.values)


class Space(ABC):
    """Finite sequence of values in val_order, addressable by index."""

    layers: tuple[str, ...] = ()
    sampled: bool = False
    label: str = ""

    @property
    @abstractmethod
    def size(self) -> int: ...

    @abstractmethod
    def at(self, index: int) -> Val: ...

    def __iter__(self) -> Iterator[Val]:
        for index in range(self.size):
            yield self.at(index)

    def to_list(self) -> list[Val]:
        return list(self)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label or '?'} size={self.size}>"


class Listed(Space):
    def __init__(self, values: Iterable[Val], *, label: str = "", sampled: bool = False):
        self.values = sort_values(values)
        self.label = label
        self.sampled = sampled

    @property
    def size(self) -> int:
        return len(self.values)

    def at(self, index: int) -> Val:
        return self.values[index]

    def __iter__(self) -> Iterator[Val]:
        return iter(self.values)


class Mapped(Space):
    """Image of a space under a function that preserves val_order."""

    def __init__(self, base: Space, fn: Callable[[Val], Val], *, label: str = ""):
        self.base = base
        self.fn = fn
        self.label = label
        self.sampled = base.sampled

    @property
    def size(self) -> int:
        return self.base.size

    def at(self, index: int) -> Val:
        return self.fn(self.base.at(index))

    def __iter__(self) -> Iterator[Val]:
        return map(self.fn, self.base)


class Concat(Space):
    """Concatenation of spaces whose elements are ordered part by part."""

    def __init__(self, parts: Sequence[Space], *, label: str = ""):
        self.parts = tuple(parts)
        self.label = label
        self.sampled = any(part.sampled for part in self.parts)
        self._size = sum(part.size for part in self.parts)

    @property
    def size(self) -> int:
        return self._size

    def at(self, index: int) -> Val:
        if index < 0:
            raise IndexError(index)
        for part in self.parts:
            if index < part.size:
                return part.at(index)
            index -= part.size
        raise IndexError(index)

    def __iter__(self) -> Iterator[Val]:
        return itertools.chain.from_iterable(self.parts)


class Product(Space):
    """Cartesian product, last factor varying fastest, assembled by ``build``."""

    def __init__(
        self,
        factors: Sequence[Space],
        build: Callable[[tuple[Val, ...]], Val] = tuple,
        *,
        label: str = "",
    ):
        self.factors = tuple(factors)
        self.build = build
        self.label = label
        self.sampled = any(factor.sampled for factor in self.factors)
        self._size = math.prod(factor.size for factor in self.factors)

    @property
    def size(self) -> int:
        return self._size

    def coordinates(self, index: int) -> tuple[Val, ...]:
        if not 0 <= index < self._size:
            raise IndexError(index)
        picked = []
        for factor in reversed(self.factors):
            index, digit = divmod(index, factor.size)
            picked.append(factor.at(digit))
        return tuple(reversed(picked))

    def at(self, index: int) -> Val:
        return self.build(self.coordinates(index))

    def __iter__(self) -> Iterator[Val]:
        return map(self.build, itertools.product(*self.factors))


class Subsets(Space):
    """Finite subsets of a base space, shortlex: by size, then lexicographically.

    With ``max_size`` only the subsets of at most that many elements are
    enumerated, which is a prefix of the uncapped order.
    """

    def __init__(self, base: Space, *, max_size: int | None = None, label: str = ""):
        self.base = base
        self.label = label
        self.sampled = base.sampled
        self._n = base.size
        self._top = self._n if max_size is None else min(max_size, self._n)
        self._size = sum(math.comb(self._n, k) for k in range(self._top + 1))

    @property
    def size(self) -> int:
        return self._size

    def at(self, index: int) -> Val:
        if not 0 <= index < self._size:
            raise IndexError(index)
        n = self._n
        for k in range(self._top + 1):
            count = math.comb(n, k)
            if index < count:
                return SetV(tuple(self.base.at(j) for j in _unrank_combination(n, k, index)))
            index -= count
        raise IndexError(index)

    def __iter__(self) -> Iterator[Val]:
        values = self.base.to_list()
        for k in range(self._top + 1):
            for combo in itertools.combinations(values, k):
                yield SetV(combo)


def _unrank_combination(n: int, k: int, rank: int) -> list[int]:
    picked: list[int] = []
    start = 0
    for slot in range(k):
        for j in range(start, n):
            count = math.comb(n - j - 1, k - slot - 1)
            if rank < count:
                picked.append(j)
                start = j + 1
                break
            rank -= count
    return picked


def function_space(domain: Sequence[Val], codomain: Space, *, label: str = "") -> Product:
    """All tables ``domain -> codomain`` as FnV, ordered pointwise in domain order."""
    domain = tuple(domain)
    codomain_name = codomain.label
    return Product(
        [codomain] * len(domain),
        build=lambda entries: FnV(FnTable(domain, tuple(entries), codomain_name)),
        label=label,
    )


def as_space(values: Space | Universe | Iterable[Val]) -> Space:
    if isinstance(values, Space):
        return values
    if isinstance(values, Universe):
        return values.space()
    return Listed(values)


def sample_indices(total: int, count: int, seed: int, salt: str = "") -> list[int]:
    """``count`` distinct indices below ``total``, sorted; a pure function of the arguments.

    The indices are an arithmetic progression modulo ``total`` with a hashed
    offset and a stride coprime to ``total`` near the golden section, so they
    are distinct without rejection and spread across the whole range.
    """
    if count >= total:
        return list(range(total))
    digest = hashlib.blake2b(f"{seed}:{salt}:{total}".encode(), digest_size=16).digest()
    mixed = int.from_bytes(digest, "big")
    offset = mixed % total
    stride = (total * 618033988749895) // 10**15 + (mixed >> 64) % max(1, total // 16)
    stride = stride % total or 1
    while math.gcd(stride, total) != 1:
        stride = stride % (total - 1) + 1
    return sorted((offset + k * stride) % total for k in range(count))


def enumerate_functions(
    domain: Space | Sequence[Val], codomain: Space | Sequence[Val], bounds: Bounds
) -> list[FnTable]:
    """All tables ``domain -> codomain``, or a seeded sample of maxFnEnum of them."""
    return [fv.table for fv in function_quantifier(domain, codomain, bounds)]


def function_quantifier(
    domain: Space | Sequence[Val], codomain: Space | Sequence[Val], bounds: Bounds
) -> Space:
    """Space of FnV tables used when a law quantifies over functions."""
    domain = as_space(domain).to_list()
    codomain = as_space(codomain)
    if domain and codomain.size == 0:
        raise NoTotalFunctionsError()
    space = function_space(domain, codomain, label=f"{len(domain)}->{codomain.label}")
    if space.size <= bounds.maxFnEnum:
        return Listed(space, label=space.label, sampled=codomain.sampled)
    picks = sample_indices(space.size, bounds.maxFnEnum, bounds.sampleSeed, salt="functions")
    logger.debug("sampling %d of %d function tables", len(picks), space.size)
    return Listed((space.at(i) for i in picks), label=space.label, sampled=True)


def show(v: Val) -> str:
    from lawbench.syntax import show_value

    return show_value(v)
