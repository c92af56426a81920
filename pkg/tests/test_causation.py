import itertools
import random

import pytest
from hypothesis import given, settings

from oracles import products_geq, naive_closure
from strategies import models_seeds, random_binary_model, random_preorder

from extcausal import (
    AtomOrder,
    CauseQuery,
    Cpt,
    PlausibilisticNetwork,
    Preorder,
    Relation,
    Verdict,
    actual_cause,
    build_model,
    compile_spec,
    counterfactually_depends,
    enumerate_worlds,
    grade,
    induced_order,
    intervene,
    parse_model,
    normality_order,
    solve,
    world_plausibility,
)
from extcausal.errors import CausationError, FactualMismatch, ModelError, NoWitness, UnknownVariable

BIN = (0, 1)
PEN = """
var PS, AA, PO : {0, 1}
PO = min(PS, AA)
Pl(PS=0) > Pl(PS=1)
Pl(AA=0) = Pl(AA=1)
"""
PEN_BOTH_ABNORMAL = PEN.replace("Pl(AA=0) = Pl(AA=1)", "Pl(AA=0) > Pl(AA=1)")
ACTUAL = {"PS": 1, "AA": 1}


def pen():
    return build_model({"PS": BIN, "AA": BIN, "PO": BIN}, {"PO": "min(PS, AA)"})


def queries(model=None, ctx=ACTUAL):
    model = model or pen()
    return CauseQuery(model, ctx, ("PS", 1), ("PO", 1)), CauseQuery(model, ctx, ("AA", 1), ("PO", 1))


class TestActualCause:
    def test_pen_witnesses(self):
        ps, aa = queries()
        v = actual_cause(ps)
        assert v.holds and [(x, w.describe()) for x, w in v.witnesses] == [(0, "(PS=0, AA=1, PO=0)")]
        v = actual_cause(aa)
        assert [(x, w.describe()) for x, w in v.witnesses] == [(0, "(PS=1, AA=0, PO=0)")]
        assert v.actual.values == (1, 1, 1)

    def test_constant_effect(self):
        model = build_model({"X": BIN, "Y": BIN}, {"Y": 1})
        for x in BIN:
            verdict = actual_cause(CauseQuery(model, {"X": x}, ("X", x), ("Y", 1)))
            assert not verdict.holds and verdict.witnesses == ()
            with pytest.raises(FactualMismatch):
                actual_cause(CauseQuery(model, {"X": x}, ("X", x), ("Y", 0)))

    def test_condition_a_fails(self):
        with pytest.raises(FactualMismatch):
            actual_cause(CauseQuery(pen(), {"PS": 0, "AA": 1}, ("PS", 1), ("PO", 1)))

    def test_query_validation(self):
        with pytest.raises(UnknownVariable):
            CauseQuery(pen(), ACTUAL, ("Q", 1), ("PO", 1))
        with pytest.raises(ModelError):
            CauseQuery(pen(), ACTUAL, ("PO", 1), ("PO", 1))
        with pytest.raises(ModelError):
            CauseQuery(pen(), ACTUAL, ("PS", 2), ("PO", 1))

    def test_overdetermination_is_not_caught(self):
        # both lightning and arson: neither alone makes a difference
        model = build_model({"L": BIN, "M": BIN, "F": BIN}, {"F": "max(L, M)"})
        assert not actual_cause(CauseQuery(model, {"L": 1, "M": 1}, ("L", 1), ("F", 1)))

    def test_non_binary_cause(self):
        model = build_model({"X": (0, 1, 2), "Y": BIN}, {"Y": "X >= 2"})
        verdict = actual_cause(CauseQuery(model, {"X": 2}, ("X", 2), ("Y", 1)))
        assert [x for x, _ in verdict.witnesses] == [0, 1]

    def test_definition_hook(self):
        ps, _ = queries()
        never = lambda q: Verdict(False)
        assert not actual_cause(ps, definition=never)


class TestGrade:
    def test_norm_violation_grades_higher(self):
        spec = parse_model(PEN)
        grading = grade(list(queries(spec.model)), normality_order(spec))
        assert grading.compare(("PS", 1), ("AA", 1)) is Relation.GREATER
        assert grading.best(("PS", 1))[0].values == (0, 1, 0)

    def test_equivalent_witnesses_tie(self):
        model = pen()
        worlds = [solve(intervene(model, {"PS": a, "AA": b, "PO": c}), ACTUAL)
                  for a, b, c in itertools.product(BIN, repeat=3)]
        flat = Preorder(worlds, [(w, v) for w in worlds for v in worlds])
        assert grade(list(queries(model)), flat).compare(("PS", 1), ("AA", 1)) is Relation.EQUAL

    def test_incomparable_witnesses(self):
        spec = parse_model(PEN_BOTH_ABNORMAL)
        grading = grade(list(queries(spec.model)), normality_order(spec))
        assert grading.compare(("PS", 1), ("AA", 1)) is Relation.INCOMPARABLE
        # brute force on the products of the two witnesses
        net, order = compile_spec(spec)
        geq = naive_closure(order.atoms, [(a, b) for a, b in order.closure()])
        p = world_plausibility(net, grading.best(("PS", 1))[0]).factors
        q = world_plausibility(net, grading.best(("AA", 1))[0]).factors
        assert not products_geq(geq, p, q) and not products_geq(geq, q, p)

    def test_inverted_order_flips(self):
        spec = parse_model(PEN)
        pre = normality_order(spec)
        qs = list(queries(spec.model))
        assert grade(qs, pre).compare(("PS", 1), ("AA", 1)) is Relation.GREATER
        assert grade(qs, pre.inverse()).compare(("PS", 1), ("AA", 1)) is Relation.LESS

    def test_multiple_best_witnesses(self):
        # X ranges over three values; two incomparable witnesses for X=2, one for Z=1
        model = build_model({"X": (0, 1, 2), "Z": BIN, "Y": BIN}, {"Y": "if X >= 2 then Z else 0"})
        ctx = {"X": 2, "Z": 1}
        qx = CauseQuery(model, ctx, ("X", 2), ("Y", 1))
        qz = CauseQuery(model, ctx, ("Z", 1), ("Y", 1))
        wx0, wx1 = actual_cause(qx).witness_worlds()
        (wz,) = actual_cause(qz).witness_worlds()
        order = Preorder([wx0, wx1, wz], [(wx0, wz)])
        grading = grade([qx, qz], order)
        assert set(grading.best(("X", 2))) == {wx0, wx1}
        assert grading.compare(("X", 2), ("Z", 1)) is Relation.GREATER
        # every best witness of X would need a match in Z's set
        reverse = grade([qx, qz], Preorder([wx0, wx1, wz], [(wz, wx0)]))
        assert reverse.compare(("X", 2), ("Z", 1)) is Relation.INCOMPARABLE

    def test_no_witness(self):
        model = build_model({"L": BIN, "M": BIN, "F": BIN}, {"F": "max(L, M)"})
        spec = parse_model("var L, M, F : {0, 1}; F = max(L, M); Pl(L=0) > Pl(L=1); Pl(M=0) > Pl(M=1)")
        q = CauseQuery(model, {"L": 1, "M": 1}, ("L", 1), ("F", 1))
        with pytest.raises(NoWitness):
            grade([q], normality_order(spec))
        with pytest.raises(NoWitness):
            grade([CauseQuery(model, {"L": 0, "M": 0}, ("L", 1), ("F", 1))], normality_order(spec))

    def test_candidates_must_share_context(self):
        spec = parse_model(PEN)
        a = CauseQuery(spec.model, ACTUAL, ("PS", 1), ("PO", 1))
        b = CauseQuery(spec.model, {"PS": 1, "AA": 0}, ("PS", 1), ("PO", 0))
        with pytest.raises(CausationError):
            grade([a, b], normality_order(spec))

    def test_witness_outside_order(self):
        ps, aa = queries()
        with pytest.raises(CausationError):
            grade([ps, aa], Preorder([actual_cause(ps).witness_worlds()[0]]))

    def test_empty(self):
        with pytest.raises(CausationError):
            grade([], Preorder([]))


def test_grading_ignores_atom_names():
    spec = parse_model(PEN_BOTH_ABNORMAL.replace("Pl(AA=0) > Pl(AA=1)", "Pl(AA=0) > Pl(AA=1)\nPl(PS=0) > Pl(AA=0)"))
    net, order = compile_spec(spec)
    rename = {a: f"atom{i}" for i, a in enumerate(order.atoms)}
    tables = {v: Cpt(c.parents, {k: rename[a] for k, a in c.entries.items()}) for v, c in net.tables.items()}
    renamed = induced_order(PlausibilisticNetwork(net.signature, tables), order.rename(rename))
    original = induced_order(net, order)
    qs = list(queries(spec.model))
    assert grade(qs, original).relation == grade(qs, renamed).relation


# properties


@settings(max_examples=60, deadline=None)
@given(models_seeds)
def test_verdict_agrees_with_dependence_and_witnesses_solve(seed):
    rng = random.Random(seed)
    model, order, py, context = random_binary_model(rng)
    actual = solve(model, context)
    for x, y in itertools.permutations(order, 2):
        verdict = actual_cause(CauseQuery(model, context, (x, actual[x]), (y, actual[y])))
        assert verdict.holds == bool(counterfactually_depends(model, context, x, y))
        for x_alt, world in verdict.witnesses:
            assert intervene(model, {x: x_alt}).satisfies(context, world)
            assert world[y] != actual[y]


@settings(max_examples=30, deadline=None)
@given(models_seeds)
def test_grading_is_a_preorder_and_flips_with_the_order(seed):
    rng = random.Random(seed)
    model, order, py, context = random_binary_model(rng, max_vars=4)
    actual = solve(model, context)
    y = order[-1]
    qs = [CauseQuery(model, context, (x, actual[x]), (y, actual[y])) for x in order[:-1]]
    qs = [q for q in qs if actual_cause(q).holds]
    if not qs:
        return
    worlds = list(enumerate_worlds(model.signature))
    shape = random_preorder(rng, len(worlds))
    pre = Preorder(worlds, [(worlds[a], worlds[b]) for a, b in shape.pairs()])
    g, flipped = grade(qs, pre), grade(qs, pre.inverse())
    for a, b in itertools.product([q.cause for q in qs], repeat=2):
        assert g.relation.geq(a, a)
        if g.relation.gt(a, b) and all(len(g.best(c)) == 1 for c in (a, b)):
            assert flipped.relation.gt(b, a)
