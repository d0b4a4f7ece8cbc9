"""Spec documents: loading, defaults and error paths."""

from pathlib import Path

import orjson
import pytest

from lawbench.config import DEFAULT_BOUNDS, layer_bounds, parse_bounds_overrides
from lawbench.errors import MonoidLawError, SpecError
from lawbench.loader import parse_spec, parse_spec_bytes
from lawbench.monads import WriterMonad
from lawbench.values import Atom

CATALOG = Path(__file__).parent.parent / "data" / "catalog.json"
BIT = {"name": "Bit", "values": [0, 1]}


def load(payload):
    return parse_spec_bytes(orjson.dumps(payload))


def test_catalog_loads():
    """The shipped catalog loads with every monad and strength resolved."""
    doc = parse_spec(CATALOG)
    assert len(doc.monads) == 14
    assert doc.strengths["powerset_product3"].order == 3
    assert doc.quantifiers == ("Bit", "Bit", "Bit")
    assert isinstance(doc.monad("writer-lz"), WriterMonad)


def test_defaults_applied():
    """Missing sections fall back to default bounds, universes and signatures."""
    doc = load({"universes": [BIT], "monads": [{"name": "list", "kind": "list"}]})
    assert doc.bounds == DEFAULT_BOUNDS
    assert [u.name for u in doc.default_universes()] == ["Bit", "Bit", "Bit"]
    assert "V" in doc.signatures


def test_bounds_in_the_document_override_defaults():
    """Document bounds replace only the fields they name."""
    doc = load({"universes": [BIT], "bounds": {"maxListLen": 3}})
    assert doc.bounds.maxListLen == 3
    assert doc.bounds.maxFnEnum == DEFAULT_BOUNDS.maxFnEnum


def test_undeclared_monoid_names_the_field():
    """An unresolved monoid reference names its document path."""
    payload = {"universes": [BIT], "monads": [{"name": "w", "kind": "writer", "monoid": "nope"}]}
    with pytest.raises(SpecError) as exc:
        load(payload)
    assert exc.value.path == "monads[0].monoid"
    assert exc.value.exit_code == 2


def test_first_projection_is_not_commutative():
    """A monoid declared commutative is checked when the document loads."""
    payload = {
        "universes": [{"name": "F2", "values": ["a", "b"]}],
        "monoids": [
            {
                "name": "first",
                "carrier": "F2",
                "op": {"kind": "table", "rows": [["a", "a"], ["b", "b"]]},
                "identity": "a",
                "commutative": True,
            }
        ],
    }
    with pytest.raises(MonoidLawError) as exc:
        load(payload)
    assert exc.value.path == "monoids[0]"
    assert "commutativity at (a, b)" in exc.value.detail


def test_schema_errors_carry_a_path():
    """Schema errors point at the offending field."""
    with pytest.raises(SpecError) as exc:
        load({"universes": [BIT], "monads": [{"name": "m", "kind": "bogus"}]})
    assert exc.value.path == "monads[0].kind"


def test_duplicate_names():
    """Two declarations with one name are rejected."""
    with pytest.raises(SpecError, match="duplicate name"):
        load({"universes": [BIT, BIT]})


@pytest.mark.parametrize("value", ["Upper", "ok", "fn"])
def test_symbols_must_be_lowercase_and_unreserved(value):
    """Symbol values must be lowercase and not a constructor name."""
    with pytest.raises(SpecError):
        load({"universes": [{"name": "U", "values": [value]}]})


def test_empty_universe_needs_opt_in():
    """An empty universe loads only with allowEmpty."""
    with pytest.raises(SpecError):
        load({"universes": [{"name": "Void", "values": []}]})
    doc = load({"universes": [BIT, {"name": "Void", "values": [], "allowEmpty": True}]})
    assert doc.universe("Void").values == ()


def test_unknown_quantifier_universe():
    """Quantifiers must name declared universes."""
    with pytest.raises(SpecError) as exc:
        load({"universes": [BIT], "quantifiers": {"A": "Nope"}})
    assert exc.value.path == "quantifiers.A"


def test_missing_file():
    """A missing spec file is a spec error."""
    with pytest.raises(SpecError, match="cannot read spec"):
        parse_spec("does/not/exist.json")


def test_invalid_json():
    """Malformed JSON is a spec error."""
    with pytest.raises(SpecError, match="invalid JSON"):
        parse_spec_bytes(b"{not json")


def test_exceptions_default_resolved():
    """The declared default exception is resolved to a value."""
    payload = {
        "universes": [BIT, {"name": "Exc", "values": ["e1", "e2"]}],
        "monads": [{"name": "x", "kind": "exceptions", "exceptions": "Exc", "default": "e2"}],
    }
    assert load(payload).monad("x").default == Atom("e2")


def test_bounds_overrides_layer_left_to_right():
    """Later layers win and None leaves a field alone."""
    overrides = parse_bounds_overrides("maxListLen=3, maxFnEnum=128")
    assert overrides == {"maxListLen": 3, "maxFnEnum": 128}
    bounds = layer_bounds(DEFAULT_BOUNDS, overrides, {"maxListLen": 1, "sampleSeed": None})
    assert bounds.maxListLen == 1
    assert bounds.maxFnEnum == 128
    with pytest.raises(ValueError):
        parse_bounds_overrides("maxListLen")


def test_nested_budget():
    """Stacked-monad checks run with the smaller of each main and nested field."""
    nested = DEFAULT_BOUNDS.nested()
    assert (nested.maxTreeDepth, nested.maxSetSize, nested.maxCases) == (1, 2, 4096)
    assert nested.maxListLen == DEFAULT_BOUNDS.maxListLen
    tight = layer_bounds(DEFAULT_BOUNDS, {"maxTreeDepth": 0, "maxSetSize": 1, "maxCases": 10})
    assert (tight.nested().maxTreeDepth, tight.nested().maxSetSize) == (0, 1)
    assert tight.nested().maxCases == 10


def test_document_sets_the_nested_budget():
    """The document can widen the budget for stacked monads."""
    doc = load({"universes": [BIT], "bounds": {"maxNestedCases": 100, "maxNestedTreeDepth": 2}})
    assert doc.bounds.nested().maxCases == 100
    assert doc.bounds.nested().maxTreeDepth == 2
