"""Surface syntax of values."""

import pytest

from lawbench.errors import ValueSyntaxError
from lawbench.syntax import parse_value, show_value
from lawbench.values import (
    UNIT,
    Atom,
    FnTable,
    FnV,
    Leaf,
    ListV,
    Node,
    OpNode,
    Pair,
    SetV,
    Tagged,
    TupleV,
)

CANONICAL = [
    "[1,2]",
    "{0,1}",
    "(0, 1)",
    "(0, 1, 2)",
    "()",
    "N(L 0,E)",
    "Just [2,4,4,8,6,12]",
    "Nothing",
    "exc e1",
    "ok (0, 1)",
    "fn{0 -> (0, 0), 1 -> (1, 0)}",
    "#tag",
    "#tag 3",
    "F(L 0,Z)",
    "Z",
]


def test_trees():
    """L, Var and N build leaves and nodes."""
    assert parse_value("N(L 5,L 15)") == Node(Leaf(Atom(5)), Leaf(Atom(15)))
    assert parse_value("L(3)") == parse_value("Var 3") == Leaf(Atom(3))


def test_parentheses_group_or_pair():
    """Parentheses group one value, pair two, and () is unit."""
    assert parse_value("(1)") == Atom(1)
    assert parse_value("()") == UNIT
    assert parse_value("(1, 2)") == Pair(Atom(1), Atom(2))
    assert parse_value("(1, 2, 3)") == TupleV((Atom(1), Atom(2), Atom(3)))
    assert parse_value("((0, 0), 0)") == Pair(Pair(Atom(0), Atom(0)), Atom(0))


def test_sets_are_canonical():
    """Parsed sets are sorted and deduplicated."""
    assert parse_value("{2,1,1}") == SetV((Atom(1), Atom(2)))


def test_tagged_values():
    """Constructor tags wrap their payload."""
    assert parse_value("Just [2]") == Tagged("just", ListV((Atom(2),)))
    assert parse_value("Nothing") == Tagged("nothing", None)
    assert parse_value("exc e1") == Tagged("exc", Atom("e1"))
    assert parse_value("Just L 5") == Tagged("just", Leaf(Atom(5)))


def test_function_tables():
    """fn{...} parses to a function table."""
    assert parse_value("fn{0 -> 1, 1 -> 0}") == FnV(FnTable((Atom(0), Atom(1)), (Atom(1), Atom(0))))
    assert parse_value("fn{}") == FnV(FnTable((), ()))


def test_operations():
    """Uppercase names parse as signature operations."""
    assert parse_value("F(E, L 1)") == OpNode("F", (parse_value("E"), Leaf(Atom(1))))
    assert parse_value("Z") == OpNode("Z", ())


@pytest.mark.parametrize("text", CANONICAL)
def test_show_prints_the_canonical_form(text):
    """show_value inverts parse_value on canonical text."""
    assert show_value(parse_value(text)) == text


@pytest.mark.parametrize("text", ["N(1)", "[1,2", "1 2", "fn{0 1}", "(1,"])
def test_malformed_input(text):
    """Malformed text raises ValueSyntaxError."""
    with pytest.raises(ValueSyntaxError):
        parse_value(text)


def test_deep_nesting_is_a_syntax_error():
    """Nesting past the parser's limit is reported, not a crash."""
    with pytest.raises(ValueSyntaxError, match="levels of nesting"):
        parse_value("{" * 2000)
    assert parse_value("[" * 50 + "]" * 50) is not None
