"""Named reproductions of known positive and negative results.

Each example builds its own monads and universes so it does not depend on the
spec document, checks its laws with the expected verdicts and, where exact
values are known, compares them structurally.
"""

from __future__ import annotations

import argparse
import logging
from typing import Callable

from lawbench.compose import (
    CompositeMonad,
    composite_bind,
    derive_distlaw,
    list_sequence,
    verify_distlaw,
)
from lawbench.errors import UsageError
from lawbench.lawcheck import (
    Law,
    LawId,
    LawReport,
    Status,
    check_commutative,
    check_composite_bind,
    check_kleisli_strength,
    check_map_lift,
    check_monad_laws,
    check_product_coherence,
    first_divergence,
    run_law,
)
from lawbench.monads import (
    ExceptionsMonad,
    FreeMonad,
    ListMonad,
    Monad,
    PowersetMonad,
    ReaderMonad,
    StateMonad,
    WriterMonad,
    add_mod,
    maybe_monad,
    sequence_values,
)
from lawbench.report import Reproduction, RunResult
from lawbench.routing import Context, Router, arg
from lawbench.schemas import Bounds
from lawbench.strength import builtin_strength, derived_strength
from lawbench.syntax import parse_value
from lawbench.terms import NONEMPTY_TREE, TREE, term_fmap
from lawbench.values import (
    EMPTY,
    Atom,
    EmptyTree,
    FnTable,
    FnV,
    Leaf,
    ListV,
    Node,
    Pair,
    SetV,
    Universe,
    Val,
    make_set,
)

logger = logging.getLogger(__name__)

router = Router()

BIT = Universe.of("Bit", [0, 1])
EXC = Universe.of("Exc", ["e1", "e2"])
STATES = Universe.of("S", [0, 1])
ENVIRONMENT = Universe.of("R", [4, 5])

Example = Callable[[Reproduction, Bounds, int], None]


class ExampleRegistry:
    def __init__(self):
        self.examples: dict[str, tuple[str, Example]] = {}

    def example(self, name: str, claim: str):
        def register(fn: Example) -> Example:
            self.examples[name] = (claim, fn)
            return fn

        return register

    def run(self, name: str, bounds: Bounds, workers: int = 1) -> Reproduction:
        try:
            claim, fn = self.examples[name]
        except KeyError:
            known = ", ".join(self.examples)
            raise UsageError(f"unknown example {name!r}; known: {known}") from None
        logger.info("reproducing %s", name)
        repro = Reproduction(name, claim)
        fn(repro, bounds, workers)
        return repro


examples = ExampleRegistry()

REQUIRED_EXAMPLES = (
    "comprehension-gammaB",
    "exceptions-product",
    "state-commutative",
    "sequence-list",
    "maybe-list-bind",
    "reader-tree-bind",
    "writer-tree-bind",
    "rev-monadmap",
    "powerset-tree-distlaw",
    "reader-tree-distlaw",
    "state-snapback",
    "exceptions-noncommutative",
)


def _expect(reports: list[LawReport], *statuses: Status) -> list[LawReport]:
    return [report.expecting(status) for report, status in zip(reports, statuses, strict=True)]


def _ints(*values: int) -> tuple[Val, ...]:
    return tuple(Atom(v) for v in values)


def _tree(a: Val, b: Val) -> Val:
    return Node(Leaf(a), Leaf(b))


def atoms(v: Val) -> int:
    """Number of atoms inside a value."""
    if isinstance(v, Atom):
        return 1
    if isinstance(v, (ListV, SetV)):
        return sum(atoms(x) for x in v.items)
    if isinstance(v, Pair):
        return atoms(v.fst) + atoms(v.snd)
    if isinstance(v, Leaf):
        return atoms(v.value)
    if isinstance(v, Node):
        return atoms(v.left) + atoms(v.right)
    return 0


def _composite_laws(repro: Reproduction, dl, A, bounds: Bounds, workers: int) -> None:
    if not dl.verified:
        repro.notes.append(f"{dl.name} is not verified; composite laws skipped")
        repro.checks.append(False)
        return
    composite = CompositeMonad(dl)
    reports = check_monad_laws(composite, A, bounds, workers=workers)
    reports.append(check_composite_bind(composite, A, bounds, workers=workers))
    repro.reports.extend(_expect(reports, *[Status.PASS] * len(reports)))


def _verified(repro: Reproduction, dl, A, bounds: Bounds, workers: int):
    dl, reports = verify_distlaw(dl, A, bounds, workers=workers)
    repro.reports.extend(_expect(reports, *[Status.PASS] * len(reports)))
    return dl


@examples.example(
    "comprehension-gammaB",
    "the comprehension prestrength on non-empty lists is natural and unital but fails ΓB",
)
def comprehension_gamma_b(repro: Reproduction, bounds: Bounds, workers: int) -> None:
    m = ListMonad("list+", nonempty=True)
    gamma = builtin_strength("comprehension", m, 2)
    reports = check_kleisli_strength(gamma, [BIT, BIT], bounds, workers=workers)
    repro.reports.extend(_expect(reports, Status.PASS, Status.PASS, Status.FAIL))

    u1 = parse_value("[[1,2],[3]]")
    u2 = parse_value("[[5,6],[7]]")
    lhs = m.join(m.fmap_fn(lambda p: gamma.apply((p.fst, p.snd)), gamma.apply((u1, u2))))
    rhs = gamma.apply((m.join(u1), m.join(u2)))
    repro.show("u1", u1)
    repro.show("u2", u2)
    repro.show("ν ∘ KΓ ∘ Γ_K", lhs)
    repro.show("Γ ∘ (ν×ν)", rhs)
    divergence = first_divergence(lhs, rhs)
    repro.expect(lhs != rhs, "the two composites differ on the fixed input")
    repro.expect(divergence == 2, f"first divergence at index 2, got {divergence}")
    repro.notes.append(f"first divergence at index {divergence}")


@examples.example(
    "exceptions-product",
    "pairing with lstΓ does not commute with Kleisli composition for exceptions",
)
def exceptions_product(repro: Reproduction, bounds: Bounds, workers: int) -> None:
    m = ExceptionsMonad("exceptions", EXC)
    report = check_product_coherence(
        derived_strength(m, "left"), [BIT, BIT, BIT], bounds, workers=workers
    ).expecting(Status.FAIL)
    repro.reports.append(report)
    if report.witness is not None:
        sides = {report.witness.lhs, report.witness.rhs}
        repro.expect(sides == set(m.raised), "the two sides are exactly exc e1 and exc e2")


@examples.example("state-commutative", "the state monad is not commutative")
def state_commutative(repro: Reproduction, bounds: Bounds, workers: int) -> None:
    m = StateMonad("state", STATES)
    repro.reports.append(
        check_commutative(m, BIT, BIT, bounds, workers=workers).expecting(Status.FAIL)
    )


@examples.example(
    "sequence-list",
    "sequence over the list monad is not a distributive law and mapping fails to be functorial",
)
def sequence_list(repro: Reproduction, bounds: Bounds, workers: int) -> None:
    K = ListMonad("list")
    repro.reports.append(check_map_lift(K, BIT, bounds, workers=workers).expecting(Status.FAIL))

    f = FnTable.from_callable(_ints(1, 3), lambda n: ListV(_ints(n.value, 2 * n.value)))
    g = FnTable.from_callable(_ints(1, 2, 3, 6), lambda n: ListV(_ints(n.value, 3 * n.value)))
    xs = ListV(_ints(1, 3))

    def lifted(h: FnTable, items: Val) -> Val:
        return sequence_values(K, [h.apply(x) for x in items.items])

    lhs = lifted(K.kleisli_compose(f, g), xs)
    rhs = K.bind_fn(lifted(f, xs), lambda ys: lifted(g, ys))
    repro.show("sequence ∘ map(g♯ ∘ f) [1,3]", lhs)
    repro.show("(sequence ∘ map g)♯ ∘ sequence ∘ map f [1,3]", rhs)
    repro.expect(
        lhs.items[:3] == tuple(parse_value("[[1,3],[1,9],[1,6]]").items),
        "left side starts [[1,3],[1,9],[1,6]]",
    )
    repro.expect(
        rhs.items[:3] == tuple(parse_value("[[1,3],[1,9],[3,3]]").items),
        "right side starts [[1,3],[1,9],[3,3]]",
    )

    _, reports = verify_distlaw(list_sequence(K), BIT, bounds, workers=workers)
    reports = _expect(reports, Status.PASS, Status.PASS, Status.FAIL, Status.PASS, Status.PASS)
    repro.reports.extend(reports)
    witness = reports[2].witness
    if witness is not None:
        size = atoms(witness.input("x"))
        repro.expect(size <= 8, f"DL_B witness has at most 8 atoms, got {size}")


@examples.example("maybe-list-bind", "bind in maybe∘list through the sequence law")
def maybe_list_bind(repro: Reproduction, bounds: Bounds, workers: int) -> None:
    K, H = maybe_monad(), ListMonad("list")
    dl = _verified(repro, list_sequence(K, H), BIT, bounds, workers)
    _composite_laws(repro, dl, BIT, bounds, workers)

    def f(n: Val) -> Val:
        if n.value % 2:
            return K.raised[0]
        return K.unit(ListV(_ints(n.value, 2 * n.value)))

    table = FnTable.from_callable(_ints(2, 3, 4, 6), f)
    cases = [
        ("Just [2,4,6]", "Just [2,4,4,8,6,12]"),
        ("Just [2,3,6]", "Nothing"),
    ]
    for given, expected in cases:
        out = composite_bind(dl, parse_value(given), table)
        repro.show(f"{given} >>= f", out)
        repro.expect(out == parse_value(expected), f"{given} >>= f is {expected}")


@examples.example("reader-tree-bind", "bind in reader∘V through the derived distributive law")
def reader_tree_bind(repro: Reproduction, bounds: Bounds, workers: int) -> None:
    K, H = ReaderMonad("reader", ENVIRONMENT), FreeMonad("tree", TREE)
    dl = derive_distlaw(TREE, K, universes=[BIT], bounds=bounds, outer=H)
    dl = _verified(repro, dl, BIT, bounds, workers)
    _composite_laws(repro, dl, BIT, bounds, workers)

    def f(a: int) -> Val:
        return Node(_tree(Atom(a), Atom(a + 1)), _tree(Atom(2 * a), Atom(3 * a)))

    def g(n: Val) -> Val:
        x, y = (2, 4) if n.value % 2 == 0 else (1, 3)
        return FnV(
            FnTable.from_callable(
                ENVIRONMENT.values, lambda r: _tree(Atom(x * r.value), Atom(y * r.value))
            )
        )

    table = FnTable.from_callable(_ints(5, 6, 10, 15), g)
    out = composite_bind(dl, K.unit(f(5)), table)
    at_five = out.table.apply(Atom(5))
    repro.show("(f >>= g) 5", at_five)
    expected = "N(N(N(L 5,L 15),N(L 10,L 20)),N(N(L 10,L 20),N(L 5,L 15)))"
    repro.expect(at_five == parse_value(expected), f"(f >>= g) 5 is {expected}")


@examples.example("writer-tree-bind", "bind in writer(ℤ16)∘V⁺ through the derived distributive law")
def writer_tree_bind(repro: Reproduction, bounds: Bounds, workers: int) -> None:
    K, H = WriterMonad("writer", add_mod(16)), FreeMonad("tree+", NONEMPTY_TREE)
    dl = derive_distlaw(NONEMPTY_TREE, K, universes=[BIT], bounds=bounds, outer=H)
    dl = _verified(repro, dl, BIT, bounds, workers)
    _composite_laws(repro, dl, BIT, bounds, workers)

    table = FnTable.from_callable(
        _ints(3, 4), lambda a: Pair(a, _tree(Atom(2 * a.value), Atom(3 * a.value)))
    )
    out = composite_bind(dl, Pair(Atom(5), _tree(Atom(3), Atom(4))), table)
    repro.show("(5, N(L 3,L 4)) >>= f", out)
    expected = "(12, N(N(L 6,L 9),N(L 8,L 12)))"
    repro.expect(out == parse_value(expected), f"result is {expected}")


@examples.example("rev-monadmap", "list reversal is an order-1 Kleisli strength, i.e. a monad map")
def rev_monadmap(repro: Reproduction, bounds: Bounds, workers: int) -> None:
    m = ListMonad("list")
    gamma = builtin_strength("list_rev", m, 1)
    reports = check_kleisli_strength(gamma, [BIT], bounds, workers=workers)
    repro.reports.extend(_expect(reports, Status.PASS, Status.PASS, Status.PASS))
    sample = parse_value("[[0],[0,1]]")
    repro.show("rev (join [[0],[0,1]])", gamma.apply([m.join(sample)]))


def _agreement(subject: str, H: Monad, K: Monad, derived, explicit, bounds: Bounds, workers: int):
    depth2 = bounds.model_copy(update={"maxTreeDepth": min(bounds.maxTreeDepth, 2)})
    law = Law(
        LawId.EQUIVALENCE,
        subject,
        ("x",),
        (H.carrier(K.carrier(BIT, depth2), depth2),),
        derived,
        explicit,
        "λ derived",
        "λ explicit",
    )
    return run_law(law, depth2, workers=workers).expecting(Status.PASS)


def powerset_tree_lambda(term: Val) -> Val:
    """Explicit λ : V P -> P V, all ways of choosing one element per leaf."""
    if isinstance(term, EmptyTree):
        return SetV((EMPTY,))
    if isinstance(term, Leaf):
        return make_set(Leaf(x) for x in term.value.items)
    return make_set(
        Node(left, right)
        for left in powerset_tree_lambda(term.left).items
        for right in powerset_tree_lambda(term.right).items
    )


@examples.example(
    "powerset-tree-distlaw",
    "the λ derived for V over powerset is the choice law and makes powerset∘V a monad",
)
def powerset_tree_distlaw(repro: Reproduction, bounds: Bounds, workers: int) -> None:
    K, H = PowersetMonad("powerset"), FreeMonad("tree", TREE)
    dl = derive_distlaw(TREE, K, universes=[BIT], bounds=bounds, outer=H)
    repro.reports.append(
        _agreement(f"{dl.name} = choice", H, K, dl.apply, powerset_tree_lambda, bounds, workers)
    )
    dl = _verified(repro, dl, BIT, bounds, workers)
    _composite_laws(repro, dl, BIT, bounds, workers)


@examples.example(
    "reader-tree-distlaw",
    "the λ derived for V over reader evaluates every leaf at the same environment",
)
def reader_tree_distlaw(repro: Reproduction, bounds: Bounds, workers: int) -> None:
    K, H = ReaderMonad("reader", ENVIRONMENT), FreeMonad("tree", TREE)
    dl = derive_distlaw(TREE, K, universes=[BIT], bounds=bounds, outer=H)

    def explicit(term: Val) -> Val:
        return FnV(
            FnTable(
                ENVIRONMENT.values,
                tuple(
                    term_fmap(lambda x, r=r: x.table.apply(r), term) for r in ENVIRONMENT.values
                ),
            )
        )

    repro.reports.append(
        _agreement(f"{dl.name} = pointwise", H, K, dl.apply, explicit, bounds, workers)
    )
    _verified(repro, dl, BIT, bounds, workers)


@examples.example(
    "state-snapback",
    "state_snapback is natural and unital but fails ΓB at |S| = |A| = |B| = 2",
)
def state_snapback(repro: Reproduction, bounds: Bounds, workers: int) -> None:
    m = StateMonad("state", STATES)
    gamma = builtin_strength("state_snapback", m, 2)
    exhaustive = bounds.model_copy(update={"maxCases": max(bounds.maxCases, 1 << 20)})
    reports = check_kleisli_strength(gamma, [BIT, BIT], exhaustive, workers=workers)
    repro.reports.extend(_expect(reports, Status.PASS, Status.PASS, Status.FAIL))


@examples.example(
    "exceptions-noncommutative",
    "lstΓ keeps the left exception and rstΓ the right one",
)
def exceptions_noncommutative(repro: Reproduction, bounds: Bounds, workers: int) -> None:
    m = ExceptionsMonad("exceptions", EXC)
    report = check_commutative(m, BIT, BIT, bounds, workers=workers).expecting(Status.FAIL)
    repro.reports.append(report)
    e1, e2 = m.raised
    if report.witness is not None:
        w = report.witness
        repro.expect(w.inputs == (("ma", e1), ("mb", e2)), "witness is (exc e1, exc e2)")
        repro.expect((w.lhs, w.rhs) == (e1, e2), "lstΓ gives exc e1, rstΓ gives exc e2")


@router.command(
    "repro",
    arg("--example", action="append", help="Example id, repeatable; 'all' runs every example"),
    help="Reproduce a named positive or negative result",
    needs_spec=False,
)
def reproduce(ctx: Context, args: argparse.Namespace) -> RunResult:
    names = args.example or []
    if "all" in names:
        names = list(examples.examples)
    result = RunResult(bounds=ctx.bounds)
    for name in names:
        result.reproductions.append(examples.run(name, ctx.bounds, ctx.workers))
    return result
