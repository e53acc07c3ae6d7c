from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from rgshift.rgraph import (
    ZERO,
    Edge,
    InvalidInput,
    Kind,
    RGraph,
    SemigroupProbe,
    Word,
    check_condition_a,
    check_word,
    classify,
    dyck,
    elements,
    format_elem,
    graph_inverse,
    inverse,
    isomorphic,
    mul,
    mul_all,
    random_element,
    random_rgraph,
    reconstruct_rgraph,
    validate_rgraph,
)
from rgshift.examples import two_vertex_graph


def test_dyck_relations():
    g = dyck(2)
    a_m, b_m = g.gen_minus(0), g.gen_minus(1)
    a_p, b_p = g.gen_plus(0), g.gen_plus(1)
    one = g.unit("p")
    assert mul(a_m, a_p, g) == one
    assert mul(b_m, b_p, g) == one
    assert mul(a_m, b_p, g) is ZERO
    assert mul(b_m, a_p, g) is ZERO
    # plus before minus does not cancel
    pm = mul(a_p, a_m, g)
    assert classify(pm).kind is Kind.MIXED
    assert format_elem(pm, g) == "a+ a-"


def test_units_act_as_identity():
    g = two_vertex_graph()
    for x in elements(g, 3):
        lu = g.unit(x.plus and g.plus_class(x.plus[0])[1] or x.idem)
        assert mul(lu, x, g) == x


def test_classify_kinds():
    g = dyck(2)
    assert classify(ZERO).kind is Kind.ZERO
    assert classify(g.unit("p")).kind is Kind.IDEMPOTENT
    assert classify(g.gen_minus(0)).kind is Kind.PURE_MINUS
    assert classify(g.gen_plus(1)).kind is Kind.PURE_PLUS


def test_inverse_cancels_in_graph_inverse_semigroup():
    g = two_vertex_graph()
    for x in elements(g, 3):
        if not x.plus:
            y = inverse(x)
            assert mul(x, y, g) == g.unit(x.idem)


def test_mul_all_and_zero_absorbs():
    g = dyck(3)
    seq = [g.gen_minus(0), g.gen_minus(1), g.gen_plus(1), g.gen_plus(0)]
    assert mul_all(seq, g) == g.unit("p")
    assert mul(ZERO, g.unit("p"), g) is ZERO


def test_check_word_rejects_bad_units():
    g = two_vertex_graph()
    pq = next(e for e in g.minus if e.q == "p")
    with pytest.raises(InvalidInput):
        check_word(Word((), "q", (pq.id,)), g)


def test_validate_rgraph_clean_and_broken():
    assert validate_rgraph(dyck(2)) == []
    bad = RGraph(("p", "q"), (Edge(0, "p", "q"),), (Edge(0, "p", "q"),), frozenset())
    rules = {v.rule for v in validate_rgraph(bad)}
    assert "strong-connectivity" in rules
    onesided = RGraph(("p",), (Edge(0, "p", "p"),), (), frozenset())
    assert "nonempty-iff" in {v.rule for v in validate_rgraph(onesided)}
    crossed = RGraph(("p", "q"), (Edge(0, "p", "q"), Edge(1, "q", "p")), (Edge(0, "p", "q"), Edge(1, "q", "p")), frozenset({(0, 1)}))
    assert "relation-class" in {v.rule for v in validate_rgraph(crossed)}


def test_condition_a():
    assert check_condition_a(dyck(2)).ok
    # two minus edges related to the same plus edge share omega sets
    g = RGraph(("p",), (Edge(0, "p", "p"), Edge(1, "p", "p")), (Edge(0, "p", "p"),), frozenset({(0, 0), (1, 0)}))
    res = check_condition_a(g)
    assert not res.ok and res.collision[0] == "-"


def test_json_round_trip():
    g = two_vertex_graph()
    assert RGraph.from_json(g.to_json()) == g
    with pytest.raises(InvalidInput):
        RGraph.from_dict({"vertices": ["p"]})


def test_graph_inverse_names():
    g = graph_inverse(("p",), [("p", "p"), ("p", "p")])
    assert [e.name for e in g.minus] == ["a-", "b-"]
    assert g.minus_by_name("b-") == 1 and g.plus_by_name("b+") == 1


def _graphs():
    return [dyck(2), dyck(3), two_vertex_graph()]


@pytest.mark.parametrize("g", _graphs(), ids=["dyck2", "dyck3", "two_vertex"])
def test_associativity_random(g):
    rng = random.Random(7)
    for _ in range(2000):
        a, b, c = (random_element(g, rng) for _ in range(3))
        assert mul(mul(a, b, g), c, g) == mul(a, mul(b, c, g), g)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_associativity_on_random_graphs(seed):
    rng = random.Random(seed)
    g = random_rgraph(rng)
    assert validate_rgraph(g) == []
    for _ in range(30):
        a, b, c = (random_element(g, rng, 4) for _ in range(3))
        assert mul(mul(a, b, g), c, g) == mul(a, mul(b, c, g), g)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_reconstruct_round_trip(seed):
    g = random_rgraph(random.Random(seed))
    h = reconstruct_rgraph(SemigroupProbe.of(g))
    assert isomorphic(g, h)


def test_isomorphic_detects_relation_change():
    g = dyck(2)
    h = RGraph(g.vertices, g.minus, g.plus, frozenset({(0, 1), (1, 0)}))
    assert isomorphic(g, h)  # swapping the plus edges
    k = RGraph(g.vertices, g.minus, g.plus, frozenset({(0, 0)}))
    assert not isomorphic(g, k)


def test_word_json():
    w = Word((1,), "p", (0, 0))
    assert Word.from_dict(json.loads(json.dumps(w.to_dict()))) == w


def _bracketed(items, g, rng):
    """Product of ``items`` under a random binary bracketing."""
    if len(items) == 1:
        return items[0]
    k = rng.randint(1, len(items) - 1)
    left = _bracketed(items[:k], g, rng)
    right = _bracketed(items[k:], g, rng)
    if left is ZERO or right is ZERO:
        return ZERO
    return mul(left, right, g)


@pytest.mark.parametrize("g", _graphs(), ids=["dyck2", "dyck3", "two_vertex"])
def test_reduction_order_does_not_matter(g):
    rng = random.Random(3)
    gens = g.generators()
    for _ in range(500):
        word = [rng.choice(gens) for _ in range(rng.randint(1, 12))]
        ref = mul_all(word, g)
        for _ in range(3):
            assert _bracketed(word, g, rng) == ref


@pytest.mark.parametrize("g", _graphs(), ids=["dyck2", "dyck3", "two_vertex"])
def test_unit_laws(g):
    for p in g.vertices:
        for e in g.minus:
            x = g.gen_minus(e.id)
            assert mul(g.unit(p), x, g) == (x if p == e.q else ZERO)
            assert mul(x, g.unit(p), g) == (x if p == e.r else ZERO)
        for e in g.plus:
            x = g.gen_plus(e.id)
            assert mul(g.unit(p), x, g) == (x if p == e.r else ZERO)
            assert mul(x, g.unit(p), g) == (x if p == e.q else ZERO)
        for p2 in g.vertices:
            assert mul(g.unit(p), g.unit(p2), g) == (g.unit(p) if p == p2 else ZERO)


@pytest.mark.parametrize("g", _graphs(), ids=["dyck2", "dyck3", "two_vertex"])
def test_idempotents_and_kinds(g):
    for x in elements(g, 3):
        kind = classify(x).kind
        assert kind is not Kind.ZERO
        if kind is Kind.IDEMPOTENT:
            assert mul(x, x, g) == x
    # mixed elements such as a+ a- are idempotent as well
    e = g.plus[0]
    m = next(f for f in g.minus if (f.id, e.id) in g.relation)
    x = mul(g.gen_plus(e.id), g.gen_minus(m.id), g)
    assert classify(x).kind is Kind.MIXED and mul(x, x, g) == x


@pytest.mark.parametrize("g", _graphs(), ids=["dyck2", "dyck3", "two_vertex"])
def test_reconstruct_fixture_graphs(g):
    assert isomorphic(g, reconstruct_rgraph(SemigroupProbe.of(g)))
