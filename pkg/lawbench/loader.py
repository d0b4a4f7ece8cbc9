"""Spec documents: parse, validate and resolve into engine objects."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

import orjson
from pydantic import ValidationError

from lawbench.config import DEFAULT_BOUNDS, layer_bounds
from lawbench.errors import LawbenchError, MonoidLawError, SpecError, UsageError
from lawbench.monads import (
    ExceptionsMonad,
    FreeMonad,
    IdentityMonad,
    ListMonad,
    Monad,
    MonoidSpec,
    PowersetMonad,
    ReaderMonad,
    StateMonad,
    WriterMonad,
    maybe_monad,
)
from lawbench.schemas import Bounds, MonadIn, MonoidIn, SpecDocumentIn
from lawbench.strength import StrengthSpec, builtin_strength
from lawbench.terms import NONEMPTY_TREE, TREE, Signature
from lawbench.values import Atom, FnTable, Pair, Universe, Val, order_key

logger = logging.getLogger(__name__)

_SYMBOL = re.compile(r"[a-z_][A-Za-z0-9_']*\Z")
_RESERVED = {"ok", "exc", "fn"}


@dataclass
class SpecDocument:
    """A loaded spec with every cross-reference resolved."""

    universes: dict[str, Universe] = field(default_factory=dict)
    monoids: dict[str, MonoidSpec] = field(default_factory=dict)
    monads: dict[str, Monad] = field(default_factory=dict)
    strengths: dict[str, StrengthSpec] = field(default_factory=dict)
    signatures: dict[str, Signature] = field(default_factory=dict)
    quantifiers: tuple[str, str, str] = ("Bit", "Bit", "Bit")
    bounds: Bounds = DEFAULT_BOUNDS
    source: str = "<memory>"

    def universe(self, name: str) -> Universe:
        try:
            return self.universes[name]
        except KeyError:
            raise UsageError(f"unknown universe {name!r}") from None

    def monad(self, name: str) -> Monad:
        try:
            return self.monads[name]
        except KeyError:
            declared = ", ".join(self.monads)
            raise UsageError(f"unknown monad {name!r}; declared: {declared}") from None

    def signature(self, name: str) -> Signature:
        try:
            return self.signatures[name]
        except KeyError:
            raise UsageError(f"unknown signature {name!r}") from None

    def strength(self, name: str, monad: Monad, order: int = 2) -> StrengthSpec:
        """A declared strength by name, or a builtin constructed on ``monad``."""
        declared = self.strengths.get(name)
        if declared is not None:
            if declared.monad is not monad:
                raise UsageError(
                    f"strength {name} is declared on {declared.monad.name}, not {monad.name}"
                )
            return declared
        return builtin_strength(name, monad, order)

    def default_universes(self) -> list[Universe]:
        return [self.universe(name) for name in self.quantifiers]


def _scalar(value: int | str, where: str) -> Val:
    if isinstance(value, str) and (not _SYMBOL.match(value) or value in _RESERVED):
        raise SpecError(f"{value!r} is not a lowercase symbol", path=where)
    return Atom(value)


def _lookup(table: dict, name: str | None, kind: str, where: str):
    if name is None:
        raise SpecError(f"missing {kind} reference", path=where)
    if name not in table:
        raise SpecError(f"unresolved {kind} {name!r}", path=where)
    return table[name]


def _claim(seen: set[str], name: str, where: str) -> None:
    if name in seen:
        raise SpecError(f"duplicate name {name!r}", path=where)
    seen.add(name)


def _build_monoid(raw: MonoidIn, carrier: Universe, where: str) -> MonoidSpec:
    identity = _scalar(raw.identity, f"{where}.identity")
    op = raw.op
    if op.kind == "addMod":
        ints = [v.value for v in carrier.values]
        if not all(isinstance(x, int) for x in ints) or sorted(ints) != list(range(len(ints))):
            raise SpecError("addMod needs the carrier 0..n-1", path=f"{where}.carrier")
        modulus = len(ints)

        def fn(x: Val, y: Val) -> Val:
            return Atom((x.value + y.value) % modulus)

    elif op.kind == "max":

        def fn(x: Val, y: Val) -> Val:
            return max(x, y, key=order_key)

    elif op.kind == "leftZero":

        def fn(x: Val, y: Val) -> Val:
            return y if x == identity else x

    else:
        values = carrier.values
        if len(op.rows) != len(values) or any(len(row) != len(values) for row in op.rows):
            raise SpecError(f"table must be {len(values)}x{len(values)}", path=f"{where}.op.rows")
        entries = {
            Pair(x, y): _scalar(cell, f"{where}.op.rows[{i}][{j}]")
            for i, (x, row) in enumerate(zip(values, op.rows))
            for j, (y, cell) in enumerate(zip(values, row))
        }
        table = FnTable(tuple(entries), tuple(entries.values()), carrier.name)
        return MonoidSpec(raw.name, carrier, table, identity, raw.commutative)
    return MonoidSpec.from_callable(raw.name, carrier, fn, identity, raw.commutative)


def _build_monad(raw: MonadIn, doc: SpecDocument, where: str) -> Monad:
    kind = raw.kind
    if kind == "identity":
        return IdentityMonad(raw.name)
    if kind in ("list", "list+"):
        return ListMonad(raw.name, nonempty=kind == "list+")
    if kind == "maybe":
        return maybe_monad(raw.name)
    if kind == "exceptions":
        exceptions = _lookup(doc.universes, raw.exceptions, "universe", f"{where}.exceptions")
        default = None if raw.default is None else _scalar(raw.default, f"{where}.default")
        if default is not None and default not in exceptions.values:
            raise SpecError(
                f"default {raw.default!r} is not in {exceptions.name}", path=f"{where}.default"
            )
        return ExceptionsMonad(raw.name, exceptions, default)
    if kind == "reader":
        environment = _lookup(doc.universes, raw.environment, "universe", f"{where}.environment")
        return ReaderMonad(raw.name, environment)
    if kind == "writer":
        return WriterMonad(raw.name, _lookup(doc.monoids, raw.monoid, "monoid", f"{where}.monoid"))
    if kind == "state":
        states = _lookup(doc.universes, raw.states, "universe", f"{where}.states")
        return StateMonad(raw.name, states)
    if kind == "powerset":
        return PowersetMonad(raw.name)
    if kind == "tree":
        return FreeMonad(raw.name, TREE)
    if kind == "tree+":
        return FreeMonad(raw.name, NONEMPTY_TREE)
    signature = _lookup(doc.signatures, raw.signature, "signature", f"{where}.signature")
    return FreeMonad(raw.name, signature)


def resolve(raw: SpecDocumentIn, source: str = "<memory>") -> SpecDocument:
    """Resolve a validated document; errors name the offending field."""
    doc = SpecDocument(source=source)
    doc.signatures = {TREE.name: TREE, NONEMPTY_TREE.name: NONEMPTY_TREE}
    seen: set[str] = set()
    try:
        for i, u in enumerate(raw.universes):
            where = f"universes[{i}]"
            _claim(seen, u.name, f"{where}.name")
            doc.universes[u.name] = Universe(
                u.name, tuple(_scalar(v, f"{where}.values[{j}]") for j, v in enumerate(u.values))
            )
        for i, s in enumerate(raw.signatures):
            where = f"signatures[{i}]"
            _claim(seen, s.name, f"{where}.name")
            try:
                doc.signatures[s.name] = Signature.of(s.name, s.ops)
            except UsageError as exc:
                raise SpecError(exc.detail, path=where) from None
        for i, mo in enumerate(raw.monoids):
            where = f"monoids[{i}]"
            _claim(seen, mo.name, f"{where}.name")
            carrier = _lookup(doc.universes, mo.carrier, "universe", f"{where}.carrier")
            try:
                doc.monoids[mo.name] = _build_monoid(mo, carrier, where)
            except MonoidLawError as exc:
                raise exc.at(path=where)
        for i, mn in enumerate(raw.monads):
            where = f"monads[{i}]"
            _claim(seen, mn.name, f"{where}.name")
            doc.monads[mn.name] = _build_monad(mn, doc, where)
        for i, st in enumerate(raw.strengths):
            where = f"strengths[{i}]"
            _claim(seen, st.name, f"{where}.name")
            monad = _lookup(doc.monads, st.monad, "monad", f"{where}.monad")
            params = {}
            if st.default is not None:
                params["default"] = _scalar(st.default, f"{where}.default")
            try:
                spec = builtin_strength(st.builtin, monad, st.order, **params)
            except UsageError as exc:
                raise SpecError(exc.detail, path=where) from None
            doc.strengths[st.name] = StrengthSpec(
                st.name, spec.monad, spec.order, spec.kind, spec.fn
            )
    except SpecError as exc:
        raise exc.at(location=source)
    except LawbenchError as exc:
        raise SpecError(exc.detail, location=source) from None

    q = raw.quantifiers
    for role, name in (("A", q.A), ("B", q.B), ("C", q.C)):
        _lookup(doc.universes, name, "universe", f"quantifiers.{role}")
    doc.quantifiers = (q.A, q.B, q.C)
    doc.bounds = layer_bounds(DEFAULT_BOUNDS, raw.bounds.model_dump())
    logger.info(
        "loaded %s: %d universes, %d monads, %d strengths",
        source,
        len(doc.universes),
        len(doc.monads),
        len(doc.strengths),
    )
    return doc


def parse_spec_bytes(data: bytes, source: str = "<memory>") -> SpecDocument:
    try:
        payload = orjson.loads(data)
    except orjson.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc}", location=source) from None
    try:
        raw = SpecDocumentIn.model_validate(payload)
    except ValidationError as exc:
        first = exc.errors()[0]
        path = ".".join(
            f"[{part}]" if isinstance(part, int) else str(part) for part in first["loc"]
        ).replace(".[", "[")
        raise SpecError(first["msg"], path=path, location=source) from None
    return resolve(raw, source)


def parse_spec(path: str | Path) -> SpecDocument:
    """Load a spec document from disk."""
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise SpecError(f"cannot read spec: {exc.strerror}", location=str(path)) from None
    return parse_spec_bytes(data, str(path))
