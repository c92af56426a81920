import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_preorders, brute_class, lift_geq, naive_closure, subsets
from strategies import preorders

from extcausal import Preorder, Relation, equivalence_class, lift_preorder

CHAIN = Preorder("abc", [("a", "b"), ("b", "c")])


def test_closure_is_reflexive_and_transitive():
    assert CHAIN.geq("a", "c") and CHAIN.geq("b", "b")
    assert not CHAIN.geq("c", "a")


def test_derived_relations():
    pre = Preorder("abcd", [("a", "b"), ("b", "a"), ("b", "c")])
    assert pre.equivalent("a", "b") and not pre.gt("a", "b")
    assert pre.gt("a", "c")
    assert pre.compare("c", "a") is Relation.LESS
    assert pre.compare("a", "d") is Relation.INCOMPARABLE
    assert pre.classes() == [("a", "b"), ("c",), ("d",)]
    assert pre.maximal("bcd") == ["b", "d"]


def test_unknown_element():
    with pytest.raises(ValueError):
        Preorder("ab", [("a", "z")])


def test_restrict_and_inverse():
    assert CHAIN.restrict("ac").pairs() == [("a", "a"), ("a", "c"), ("c", "c")]
    assert CHAIN.inverse().gt("c", "a")


class TestLift:
    def test_singletons_follow_the_order(self):
        for a, b in itertools.product("abc", repeat=2):
            assert lift_preorder(CHAIN, {a}, {b}) == CHAIN.geq(a, b)

    def test_vacuous_for_empty(self):
        assert lift_preorder(CHAIN, set(), set())
        assert lift_preorder(CHAIN, {"c"}, set())

    def test_chain(self):
        assert lift_preorder(CHAIN, {"b"}, {"b", "c"})
        assert not lift_preorder(CHAIN, {"b", "c"}, {"a"})


class TestEquivalenceClass:
    def test_all_equivalent(self):
        pre = Preorder("abc", [("a", "b"), ("b", "c"), ("c", "a")])
        for u in subsets("abc"):
            if u:
                assert equivalence_class(pre, u) == frozenset("abc")

    def test_antichain(self):
        pre = Preorder("abc")
        for w in "abc":
            assert equivalence_class(pre, {w}) == {w}

    def test_tie_above_bottom(self):
        # a and b tie above c; {a} already dominates everything b or c can, so its class is everything
        pre = Preorder("abc", [("a", "b"), ("b", "a"), ("b", "c")])
        assert equivalence_class(pre, {"a"}) == frozenset("abc")
        assert brute_class(set(pre.pairs()), "abc", frozenset("a")) == frozenset("abc")

    def test_matches_brute_force_on_all_three_element_preorders(self):
        for rel in all_preorders(3):
            pre = Preorder(range(3), rel)
            for u in subsets(range(3)):
                assert equivalence_class(pre, u) == brute_class(rel, range(3), u)


# properties


@settings(max_examples=200, deadline=None)
@given(preorders(max_size=6))
def test_closure_matches_fixpoint(pre):
    base = [(a, b) for a, b in pre.pairs()]
    assert set(pre.pairs()) == naive_closure(pre.elements, base)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 5), st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), max_size=12))
def test_closure_of_declared_pairs(n, raw):
    pairs = [(a, b) for a, b in raw if a < n and b < n]
    assert set(Preorder(range(n), pairs).pairs()) == naive_closure(range(n), pairs)


@settings(max_examples=100, deadline=None)
@given(preorders(max_size=4), st.data())
def test_lift_laws(pre, data):
    rel = set(pre.pairs())
    sets = [s for s in subsets(pre.elements) if s]
    u, v, w = (data.draw(st.sampled_from(sets)) for _ in range(3))
    assert pre.lift(u, v) == lift_geq(rel, u, v)
    assert pre.lift(u, u)
    if pre.lift(u, v) and pre.lift(v, w):
        assert pre.lift(u, w)
    if u <= v:
        assert pre.lift(v, u)


@settings(max_examples=100, deadline=None)
@given(preorders(max_size=4))
def test_equivalent_sets_are_equivalent_to_their_union(pre):
    sets = list(subsets(pre.elements))
    for u, v in itertools.product(sets, repeat=2):
        if pre.lift(u, v) and pre.lift(v, u):
            assert pre.lift(u, u | v) and pre.lift(u | v, u)


@settings(max_examples=100, deadline=None)
@given(preorders(max_size=5))
def test_class_is_largest_equivalent_set(pre):
    rel = set(pre.pairs())
    for u in subsets(pre.elements):
        assert equivalence_class(pre, u) == brute_class(rel, pre.elements, u)
