"""Kleisli-strength verdicts for the catalog strengths."""

from pathlib import Path

import pytest

from lawbench.errors import UsageError
from lawbench.lawcheck import (
    LawId,
    Status,
    check_gamma_assoc,
    check_kleisli_strength,
    check_reconstruct,
)
from lawbench.loader import parse_spec
from lawbench.monads import ExceptionsMonad, ListMonad, PowersetMonad
from lawbench.schemas import Bounds
from lawbench.strength import (
    StrengthKind,
    StrengthSpec,
    builtin_strength,
    derived_strength,
    extend_gamma,
    lst,
    lst_gamma,
    rst,
    rst_gamma,
    strength_applies,
)
from lawbench.syntax import parse_value
from lawbench.values import UNIT, Pair, Universe, order_key

CATALOG = Path(__file__).parent.parent / "data" / "catalog.json"
doc = parse_spec(CATALOG)
BIT = Universe.of("Bit", [0, 1])
EXC = Universe.of("Exc", ["e1", "e2"])
bounds = Bounds(maxTreeDepth=1)
defaults = Bounds()

KLEISLI = [
    "identity_order1",
    "list_rev",
    "powerset_product",
    "powerset_product3",
    "exc_default_e1",
    "exc_default_e2",
    "reader_pointwise",
    "writer_monoid",
    "tree_leftmost",
    "list_fst",
    "list_lst",
]


def declared(name):
    return doc.strengths[name]


@pytest.mark.parametrize("name", KLEISLI)
def test_catalog_kleisli_strengths_pass(name):
    """Naturality, ΓA and ΓB all hold at the default bounds."""
    gamma = declared(name)
    reports = check_kleisli_strength(gamma, [BIT] * gamma.order, defaults)
    assert [r.status for r in reports] == [Status.PASS] * 3


@pytest.mark.parametrize("name", ["comprehension", "writer_lz_monoid", "state_snapback"])
def test_prestrengths_fail_only_gamma_b(name):
    """These prestrengths are natural and unital but fail ΓB."""
    reports = check_kleisli_strength(declared(name), [BIT, BIT], bounds)
    assert [r.status for r in reports] == [Status.PASS, Status.PASS, Status.FAIL]
    assert reports[2].law == LawId.GAMMA_B


def test_comprehension_witness_is_minimal_in_order():
    """Both sides of the comprehension witness hold the same pairs in another order."""
    report = check_kleisli_strength(declared("comprehension"), [BIT, BIT], bounds)[2]
    w = report.witness
    assert w.lhs_path == "ν ∘ KΓ ∘ Γ_K"
    assert w.rhs_path == "Γ ∘ (ν×ν)"
    assert sorted(w.lhs.items, key=order_key) == sorted(w.rhs.items, key=order_key)


def test_extend_gamma_flattens_to_tuples():
    """Order-3 nesting yields flat triples."""
    m = ListMonad("list")
    gamma3 = extend_gamma(derived_strength(m, "left"), 3)
    result = gamma3.apply([parse_value("[0,1]"), parse_value("[0]"), parse_value("[1]")])
    assert result == parse_value("[(0, 0, 1),(1, 0, 1)]")


def test_extend_gamma_needs_order_two_and_n_at_least_two():
    """Extension starts from an order-2 strength and targets order 2 or more."""
    m = ListMonad("list")
    with pytest.raises(UsageError):
        extend_gamma(derived_strength(m, "left"), 1)
    with pytest.raises(UsageError):
        extend_gamma(builtin_strength("list_rev", m, 1), 3)


def test_order_zero_is_the_unit_at_the_empty_product():
    """Γ⁰ is the unit at the empty product."""
    m = ListMonad("list")
    assert derived_strength(m, "left", 0).apply(()) == m.unit(UNIT)


def non_associative_gamma():
    """Both raised: e2 when both are e1, else e1; one raised: that one."""
    m = ExceptionsMonad("exceptions", EXC)
    e1, e2 = EXC.values

    def apply(args):
        x, y = args
        if m.is_ok(x) and m.is_ok(y):
            return m.unit(Pair(x.payload, y.payload))
        if not m.is_ok(x) and not m.is_ok(y):
            both_e1 = x.payload == e1 and y.payload == e1
            return m.raise_value(e2 if both_e1 else e1)
        return y if m.is_ok(x) else x

    return StrengthSpec("odd", m, 2, StrengthKind.PRESTRENGTH_ONLY, apply)


def test_left_and_right_nesting_differ_without_associativity():
    """A non-associative Γ nests differently to the left and to the right."""
    gamma = non_associative_gamma()
    args = [parse_value("exc e2"), parse_value("exc e1"), parse_value("exc e1")]
    assert extend_gamma(gamma, 3, "left").apply(args) == parse_value("exc e2")
    assert extend_gamma(gamma, 3, "right").apply(args) == parse_value("exc e1")
    assert check_gamma_assoc(gamma, [BIT] * 3, bounds).status == Status.FAIL


def test_derived_strength_is_associative():
    """lstΓ of exceptions is associative."""
    m = ExceptionsMonad("exceptions", EXC)
    assert check_gamma_assoc(derived_strength(m, "left"), [BIT] * 3, bounds).status == Status.PASS


@pytest.mark.parametrize(
    "name",
    [
        "powerset_product",
        "exc_default_e1",
        "reader_pointwise",
        "writer_monoid",
        "list_fst",
        "tree_leftmost",
    ],
)
def test_kleisli_strengths_reconstruct(name):
    """Kleisli strengths are rebuilt from either one-sided part."""
    reports = check_reconstruct(declared(name), [BIT, BIT], bounds)
    assert [r.status for r in reports] == [Status.PASS, Status.PASS]


def test_comprehension_reconstructs_only_from_the_left():
    """The comprehension prestrength is rebuilt only from its left part."""
    reports = check_reconstruct(declared("comprehension"), [BIT, BIT], bounds)
    assert [r.status for r in reports] == [Status.PASS, Status.FAIL]


def test_strength_applicability():
    """A builtin strength applies only to monads of its kind."""
    assert strength_applies("powerset_product", PowersetMonad("powerset"))
    assert not strength_applies("powerset_product", ListMonad("list"))
    assert not strength_applies("list_fst", ListMonad("list"))
    assert strength_applies("list_fst", ListMonad("list+", nonempty=True))


def test_unknown_builtin():
    """An unknown builtin strength is a usage error."""
    with pytest.raises(UsageError):
        builtin_strength("nope", ListMonad("list"))


@pytest.mark.parametrize("name", ["list_fst", "powerset_product", "tree_leftmost"])
def test_catalog_strengths_are_associative(name):
    """Nesting to the left and to the right agree for these order-2 strengths."""
    assert check_gamma_assoc(declared(name), [BIT] * 3, bounds).status == Status.PASS


@pytest.mark.parametrize(
    "monad",
    ["list", "list+", "maybe", "exceptions", "reader", "writer", "state", "powerset", "tree"],
)
def test_one_sided_strengths_are_gammas_at_a_unit(monad):
    """lst(ma, b) = lstΓ(ma, unit b) and rst(a, mb) = rstΓ(unit a, mb)."""
    m = doc.monad(monad)
    for ma in m.carrier(BIT, bounds):
        for b in BIT.values:
            assert lst(m, ma, b) == lst_gamma(m, ma, m.unit(b))
            assert rst(m, b, ma) == rst_gamma(m, m.unit(b), ma)
