"""Finitary signatures and terms of their free monads.

Terms share the tree constructors: a variable is ``Leaf``, the binary
operation ``N`` is ``Node``, the constant ``E`` is ``EmptyTree`` and every
other operation is an ``OpNode``. The binary-tree monads are the free monads
over ``{N/2, E/0}`` and ``{N/2}``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterable

from lawbench.errors import MalformedTermError, UsageError
from lawbench.values import (
    EMPTY,
    Concat,
    EmptyTree,
    Leaf,
    Listed,
    Mapped,
    Node,
    OpNode,
    Product,
    Space,
    Val,
    as_space,
    show,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Signature:
    name: str
    ops: tuple[tuple[str, int], ...]

    def __post_init__(self):
        symbols = [symbol for symbol, _ in self.ops]
        if len(set(symbols)) != len(symbols):
            raise UsageError(f"signature {self.name} repeats an operation symbol")
        for symbol, arity in self.ops:
            if arity < 0:
                raise UsageError(f"signature {self.name}: {symbol} has negative arity")
            if not symbol[:1].isupper():
                raise UsageError(f"signature {self.name}: operation {symbol} must be capitalised")
            if symbol in ("N", "E") and arity != {"N": 2, "E": 0}[symbol]:
                raise UsageError(f"signature {self.name}: {symbol} is reserved with its tree arity")
            if symbol in ("L", "Var", "Just", "Nothing"):
                raise UsageError(f"signature {self.name}: {symbol} is a reserved constructor")
        if not self.ops:
            logger.warning(
                "signature %s has no operations; its free monad is the identity", self.name
            )
        object.__setattr__(self, "ops", tuple(sorted(self.ops)))

    @classmethod
    def of(cls, name: str, ops: dict[str, int] | Iterable[tuple[str, int]]) -> Signature:
        items = ops.items() if isinstance(ops, dict) else ops
        return cls(name, tuple((symbol, int(arity)) for symbol, arity in items))

    def arity(self, symbol: str) -> int:
        for known, arity in self.ops:
            if known == symbol:
                return arity
        raise MalformedTermError(f"{symbol} is not an operation of {self.name}")

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(symbol for symbol, _ in self.ops)

    @property
    def constants(self) -> tuple[str, ...]:
        return tuple(symbol for symbol, arity in self.ops if arity == 0)

    def describe(self) -> str:
        return f"{self.name}{{" + ", ".join(f"{s}/{a}" for s, a in self.ops) + "}"


TREE = Signature.of("V", {"N": 2, "E": 0})
NONEMPTY_TREE = Signature.of("V+", {"N": 2})


def make_op(symbol: str, children: Iterable[Val]) -> Val:
    children = tuple(children)
    if symbol == "N" and len(children) == 2:
        return Node(children[0], children[1])
    if symbol == "E" and not children:
        return EMPTY
    return OpNode(symbol, children)


def op_view(term: Val) -> tuple[str, tuple[Val, ...]] | None:
    """``(symbol, children)`` for an operation term, ``None`` for a variable."""
    match term:
        case Leaf():
            return None
        case Node(left, right):
            return "N", (left, right)
        case EmptyTree():
            return "E", ()
        case OpNode(symbol, children):
            return symbol, children
    raise MalformedTermError(f"{show(term)} is not a term")


def check_term(signature: Signature, term: Val) -> None:
    view = op_view(term)
    if view is None:
        return
    symbol, children = view
    if signature.arity(symbol) != len(children):
        raise MalformedTermError(
            f"{symbol} has arity {signature.arity(symbol)} in {signature.name}, got {len(children)}"
        )
    for child in children:
        check_term(signature, child)


def term_unit(a: Val) -> Val:
    return Leaf(a)


def term_fmap(fn: Callable[[Val], Val], term: Val) -> Val:
    view = op_view(term)
    if view is None:
        return Leaf(fn(term.value))
    symbol, children = view
    return make_op(symbol, (term_fmap(fn, child) for child in children))


def term_join(term: Val) -> Val:
    """Graft: replace every variable ``Leaf(t)`` by the term ``t``."""
    view = op_view(term)
    if view is None:
        op_view(term.value)
        return term.value
    symbol, children = view
    return make_op(symbol, map(term_join, children))


def leftmost(term: Val) -> Val:
    """Value in the leftmost variable position."""
    view = op_view(term)
    if view is None:
        return term.value
    symbol, children = view
    if not children:
        raise MalformedTermError(f"{symbol} has no leftmost variable")
    return leftmost(children[0])


def enumerate_terms(signature: Signature, variables: Space | Iterable[Val], depth: int) -> Space:
    """All terms over ``variables`` with operation nesting at most ``depth``, in val_order."""
    variables = as_space(variables)
    constants = [(s, a) for s, a in signature.ops if a == 0]
    operations = [(s, a) for s, a in signature.ops if a > 0]

    def level(d: int) -> Space:
        parts: list[Space] = []
        if "E" in signature.constants:
            parts.append(Listed([EMPTY]))
        parts.append(Mapped(variables, Leaf))
        if d > 0:
            below = level(d - 1)
            if ("N", 2) in operations:
                parts.append(Product([below, below], build=lambda c: Node(*c)))
        others = sorted(
            [(s, a) for s, a in constants if s != "E"]
            + ([(s, a) for s, a in operations if s != "N"] if d > 0 else []),
        )
        for symbol, arity in others:
            if arity == 0:
                parts.append(Listed([OpNode(symbol, ())]))
            else:
                parts.append(
                    Product([below] * arity, build=lambda c, s=symbol: OpNode(s, tuple(c)))
                )
        return Concat(parts, label=f"{signature.name}^{d}")

    return level(depth)
