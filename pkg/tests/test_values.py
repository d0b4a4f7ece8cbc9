"""Value order, products and enumeration spaces."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lawbench.errors import NoTotalFunctionsError, PartialApplicationError
from lawbench.schemas import Bounds
from lawbench.values import (
    EMPTY,
    UNIT,
    Atom,
    FnTable,
    FnV,
    Leaf,
    Listed,
    ListV,
    Node,
    OpNode,
    Ordering,
    Pair,
    Product,
    SetV,
    Subsets,
    Tagged,
    TupleV,
    Universe,
    canon,
    components,
    enumerate_functions,
    enumerate_universe,
    function_quantifier,
    function_space,
    make_set,
    order_key,
    product_value,
    sample_indices,
    sort_values,
    val_order,
)

BIT = Universe.of("Bit", [0, 1])
bounds = Bounds()


def ints(*values):
    return tuple(Atom(v) for v in values)


def test_integers_sort_before_symbols():
    """Integer atoms come before symbol atoms."""
    assert val_order(Atom(5), Atom("a")) == Ordering.LT
    assert val_order(Atom("b"), Atom("a")) == Ordering.GT
    assert val_order(Atom(3), Atom(3)) == Ordering.EQ


def test_lists_compare_shortlex():
    """Shorter lists sort first."""
    short, long_ = ListV(ints(1)), ListV(ints(0, 0))
    assert sort_values([long_, short, ListV(())]) == (ListV(()), short, long_)


def test_tree_constructors_in_order():
    """E, then leaves, then binary nodes, then other operations."""
    values = [OpNode("F", (EMPTY,)), Node(EMPTY, EMPTY), Leaf(Atom(0)), EMPTY]
    assert sort_values(values) == (EMPTY, Leaf(Atom(0)), Node(EMPTY, EMPTY), OpNode("F", (EMPTY,)))


def test_successful_tags_sort_first():
    """ok sorts before exc."""
    raised, ok = Tagged("exc", Atom("e1")), Tagged("ok", Atom(0))
    assert sort_values([raised, ok]) == (ok, raised)
    assert sort_values([Tagged("nothing", None), Tagged("just", Atom(1))])[0].tag == "just"


def test_product_value_by_arity():
    """Products of 0, 1, 2 and 3 values."""
    a, b, c = ints(1, 2, 3)
    assert product_value([]) == UNIT
    assert product_value([a]) == a
    assert product_value([a, b]) == Pair(a, b)
    assert product_value([a, b, c]) == TupleV((a, b, c))
    assert components(TupleV((a, b, c)), 3) == (a, b, c)
    assert components(Pair(a, b), 2) == (a, b)


def test_components_rejects_wrong_arity():
    """components checks the arity it is asked for."""
    with pytest.raises(TypeError):
        components(Pair(Atom(1), Atom(2)), 3)


def test_make_set_dedupes_and_sorts():
    """make_set yields the canonical set."""
    assert make_set(ints(2, 1, 2)) == SetV(ints(1, 2))


def test_product_varies_last_factor_fastest():
    """Product enumeration is row-major."""
    space = Product([BIT.space(), BIT.space()])
    assert space.to_list() == [ints(0, 0), ints(0, 1), ints(1, 0), ints(1, 1)]


def test_subsets_are_shortlex():
    """Subsets come out by size, then lexicographically."""
    space = Subsets(Listed(ints(0, 1, 2)))
    expected = [(), (0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]
    assert space.to_list() == [SetV(ints(*s)) for s in expected]
    assert space.to_list() == list(sort_values(space))


@given(st.integers(min_value=0, max_value=31))
def test_subsets_index_matches_iteration(index):
    """Random access agrees with iteration."""
    space = Subsets(Listed(ints(0, 1, 2, 3, 4)))
    assert space.at(index) == space.to_list()[index]


def test_function_space_in_value_order():
    """Function tables enumerate in value order."""
    space = function_space(BIT.values, BIT.space())
    tables = space.to_list()
    assert len(tables) == 4
    assert tables[1] == FnV(FnTable(BIT.values, ints(0, 1)))
    assert tables == sorted(tables, key=order_key)


@given(
    total=st.integers(min_value=1, max_value=10_000),
    count=st.integers(min_value=1, max_value=500),
    seed=st.integers(min_value=0, max_value=2**32),
)
def test_sample_indices_distinct_and_stable(total, count, seed):
    """Sampled indices are sorted, distinct and seeded."""
    picks = sample_indices(total, count, seed, "salt")
    assert picks == sorted(set(picks))
    assert len(picks) == min(count, total)
    assert all(0 <= i < total for i in picks)
    assert picks == sample_indices(total, count, seed, "salt")


def test_function_quantifier_samples_above_cap():
    """Function spaces above maxFunctions are sampled down."""
    codomain = Listed(ints(*range(9)))
    space = function_quantifier(BIT, codomain, bounds)
    assert space.size == bounds.maxFnEnum
    assert space.sampled


def test_function_quantifier_exhaustive_under_cap():
    """Small function spaces are enumerated in full."""
    space = function_quantifier(BIT, BIT, bounds)
    assert space.size == 4
    assert not space.sampled


def test_no_total_functions():
    """No total functions into an empty codomain."""
    with pytest.raises(NoTotalFunctionsError):
        function_quantifier(BIT, Listed([]), bounds)


def test_empty_domain_has_one_function():
    """The empty product has exactly one element: the empty table."""
    space = function_quantifier(Listed([]), BIT, bounds)
    assert space.to_list() == [FnV(FnTable((), ()))]


def test_partial_application():
    """Applying a table outside its domain names the argument."""
    table = FnTable.from_callable(BIT.values, lambda a: a)
    with pytest.raises(PartialApplicationError) as exc:
        table.apply(Atom(7))
    assert "partial function application" in exc.value.detail


def test_enumerate_universe():
    """Universes enumerate in declaration order."""
    assert enumerate_universe(Universe.of("Exc2", ["e1", "e2"])) == [Atom("e1"), Atom("e2")]
    assert enumerate_universe(Universe("Void", ())) == []


def test_enumerate_functions_exhaustive():
    """A singleton codomain gives one function."""
    bits = Universe.of("Bit", [0, 1]).values
    tables = enumerate_functions(bits, [Atom("a")], Bounds())
    assert tables == [FnTable(bits, (Atom("a"), Atom("a")))]
    assert len(enumerate_functions([Atom(0)], [Atom("a"), Atom("b")], Bounds())) == 2


def test_enumerate_functions_sampled():
    """Above maxFnEnum the seeded sample is a fixed set of distinct tables."""
    bits = Universe.of("Bit", [0, 1]).values
    abc = Universe.of("ABC", ["a", "b", "c"]).values
    bounds = Bounds(maxFnEnum=4)
    tables = enumerate_functions(bits, abc, bounds)
    expected = [("a", "c"), ("b", "a"), ("c", "b"), ("c", "c")]
    assert [tuple(e.value for e in t.entries) for t in tables] == expected
    assert all(t.domain == bits for t in tables)
    assert sample_indices(9, 4, 0, salt="functions") == [2, 3, 7, 8]


POOL = ints(0, 1, 2, 3) + (Atom("a"), Atom("b"))
FLIP = {Ordering.LT: Ordering.GT, Ordering.EQ: Ordering.EQ, Ordering.GT: Ordering.LT}

universes = st.lists(st.sampled_from(POOL), min_size=1, max_size=4, unique=True)


def first_level(universe):
    """Values of the universe and one constructor layer over them."""
    element = st.sampled_from(universe)
    short = st.lists(element, max_size=3)
    return st.one_of(
        element,
        short.map(lambda xs: ListV(tuple(xs))),
        short.map(make_set),
        st.tuples(element, element).map(lambda p: Pair(*p)),
        st.just(EMPTY),
        element.map(Leaf),
        st.tuples(element, element).map(lambda p: Node(Leaf(p[0]), Leaf(p[1]))),
        element.map(lambda x: Tagged("just", x)),
        st.just(Tagged("nothing")),
        st.tuples(element, element).map(lambda p: FnV(FnTable(BIT.values, p))),
    )


def raw_sets(universe):
    """Sets straight from the constructor, unsorted and with repeats."""
    element = st.sampled_from(universe)
    raw = st.lists(element, max_size=4).map(lambda xs: SetV(tuple(xs)))
    return st.one_of(raw, st.tuples(raw, element).map(lambda p: Pair(*p)), raw.map(Leaf))


@given(st.data())
def test_val_order_is_a_total_order(data):
    """Antisymmetric, transitive and total on small universes and their containers."""
    universe = data.draw(universes)
    x, y, z = (data.draw(first_level(universe)) for _ in range(3))
    assert (val_order(x, y) == Ordering.EQ) == (x == y)
    assert val_order(y, x) == FLIP[val_order(x, y)]
    if val_order(x, y) != Ordering.GT and val_order(y, z) != Ordering.GT:
        assert val_order(x, z) != Ordering.GT


@given(st.data())
def test_canon_is_idempotent(data):
    """canon applied twice equals canon applied once."""
    universe = data.draw(universes)
    v = data.draw(st.one_of(first_level(universe), raw_sets(universe)))
    assert canon(canon(v)) == canon(v)


@given(st.data())
def test_canon_fixes_enumerated_values(data):
    """Enumerated values are already canonical."""
    v = data.draw(first_level(data.draw(universes)))
    assert canon(v) == v


def test_canon_examples():
    """canon sorts and deduplicates nested sets."""
    assert canon(SetV(ints(2, 1, 1))) == SetV(ints(1, 2))
    assert canon(Pair(SetV(ints(3, 3)), Atom(1))) == Pair(SetV(ints(3)), Atom(1))
    assert canon(Atom(5)) == Atom(5)


def test_subsets_capped_by_size():
    """A size cap keeps the shortlex prefix of sets with at most that many elements."""
    full = Subsets(Listed(ints(0, 1, 2, 3)))
    capped = Subsets(Listed(ints(0, 1, 2, 3)), max_size=2)
    assert capped.size == 1 + 4 + 6
    assert capped.to_list() == full.to_list()[: capped.size]
    assert [capped.at(i) for i in range(capped.size)] == capped.to_list()
    with pytest.raises(IndexError):
        capped.at(capped.size)
    assert Subsets(Listed(ints(0, 1)), max_size=5).size == 4
