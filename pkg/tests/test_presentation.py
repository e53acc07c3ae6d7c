from __future__ import annotations

import random

import pytest

from rgshift import examples as ex
from rgshift.presentation import (
    BudgetExceeded,
    G1Violation,
    PEdge,
    Presentation,
    PresentationLanguage,
    apply_block_map,
    atomize,
    bounded_contexts,
    check_G1,
    check_G2_to_G5,
    contexts_differ,
    enumerate_language,
    gamma_minus,
    gamma_plus,
    higher_block,
    identity_presentation,
    is_admissible,
    neutral_reachability,
    omega_plus_set,
    property_B_witness_search,
    property_c_witness_search,
)
from rgshift.rgraph import InvalidInput, Word, dyck

from conftest import naive_language


NAMES = ["dyck2", "dyck3", "motzkin2", "markov_dyck", "markov_motzkin"]


@pytest.mark.parametrize("name", NAMES)
def test_language_matches_naive_reduction(name, fixtures):
    pres = fixtures[name]
    lang = PresentationLanguage(pres)
    for n in range(1, 5):
        assert set(lang.words(n)) == naive_language(pres, n)


def test_language_counts_frozen(fixtures):
    # frozen from the naive reduction above
    counts = {
        name: [len(PresentationLanguage(fixtures[name]).words(n)) for n in range(1, 5)]
        for name in ("dyck2", "motzkin2")
    }
    assert counts["dyck2"] == [4, 14, 48, 160]
    assert counts["motzkin2"] == [5, 23, 103, 453]


def test_is_admissible(fixtures):
    pres = fixtures["dyck2"]
    a_m, b_m, a_p, b_p = 0, 1, 2, 3
    assert is_admissible(pres, (a_m, a_p))
    assert not is_admissible(pres, (a_m, b_p))
    assert is_admissible(pres, (a_p, b_m))
    with pytest.raises(InvalidInput):
        is_admissible(pres, ())


def test_enumerate_language_order_and_budget(fixtures):
    words = enumerate_language(fixtures["dyck2"], 3)
    assert words == sorted(words, key=lambda w: (len(w), w))
    with pytest.raises(BudgetExceeded):
        enumerate_language(fixtures["dyck3"], 6, budget=100)


@pytest.mark.parametrize("name", NAMES)
def test_positive_fixtures_pass_G(name, fixtures):
    rep = check_G2_to_G5(fixtures[name])
    assert rep.ok, rep.failed_rules()


@pytest.mark.parametrize("rule", ["G3", "G4", "G5"])
def test_negative_fixtures_name_the_rule(rule):
    rep = check_G2_to_G5(ex.NEGATIVE_G_FIXTURES[rule]())
    assert rep.failed_rules() == [rule]


def test_G1_rejects_mixed_label():
    g = dyck(2)
    mixed = Word((2,), "p", (0,))
    pres = Presentation(g, ("p",), (PEdge(0, "p", "p", mixed, "x"),))
    assert check_G1(pres) == [0]
    with pytest.raises(G1Violation):
        atomize(pres)


def _neutral_pairs_by_paths(pres, max_len):
    """Pairs (U, W, p) joined by a path of length <= max_len whose letters reduce to 1_p."""
    g = pres.rgraph
    mcls = {e.id: (e.q, e.r) for e in g.minus}
    pcls = {e.id: (e.q, e.r) for e in g.plus}

    def letters(lab):
        if not lab.plus and not lab.minus:
            return [("1", lab.idem)]
        out = [("+", x, pcls[x][1], pcls[x][0]) for x in lab.plus]
        return out + [("-", x, mcls[x][0], mcls[x][1]) for x in lab.minus]

    found = set()
    # state: (start, cur, stack, left unit of path, right unit so far)
    layer = set()
    for e in pres.edges:
        st = _push(letters(e.label), (), None, None, g)
        if st is not None:
            layer.add((e.src, e.dst) + st)
    for n in range(1, max_len + 1):
        for s, t, stack, lu, ru in layer:
            if not stack:
                found.add((s, t, lu))
        if n == max_len:
            break
        nxt = set()
        for s, t, stack, lu, ru in layer:
            if len(stack) > max_len - n:
                continue
            for e in pres.out_edges(t):
                st = _push(letters(e.label), stack, lu, ru, g)
                if st is not None:
                    nxt.add((s, e.dst) + st)
        layer = nxt
    return found


def _push(lets, stack, lu, ru, g):
    stack = list(stack)
    for let in lets:
        if let[0] == "1":
            l = r = let[1]
        else:
            _, x, l, r = let
        if ru is not None and ru != l:
            return None
        if lu is None:
            lu = l
        ru = r
        if let[0] == "+" and stack and stack[-1][0] == "-":
            m = stack.pop()
            if (m[1], let[1]) not in g.relation:
                return None
        elif let[0] != "1":
            stack.append((let[0], let[1]))
    return tuple(stack), lu, ru


@pytest.mark.parametrize("name", ["dyck2", "motzkin2", "markov_dyck", "markov_motzkin"])
def test_neutral_reachability_matches_paths(name, fixtures):
    pres = fixtures[name]
    reach = neutral_reachability(pres)
    verts = set(pres.vertices)
    fix = {(u, w, p) for p, pairs in reach.pairs.items() for u, w in pairs if u in verts and w in verts}
    assert fix == _neutral_pairs_by_paths(pres, 12)


def test_contexts_of_dyck_word(fixtures):
    pres = fixtures["dyck2"]
    lang = PresentationLanguage(pres)
    a = (0,)  # a-
    c = bounded_contexts(pres, a, 1, 2)
    assert (2,) in c.gamma_plus and (3,) not in c.gamma_plus
    assert c.gamma_minus == frozenset({(0,), (1,), (2,), (3,)})
    # a- can be followed by a+ whatever came before
    assert (2,) in omega_plus_set(lang, a, 1, 2)
    assert gamma_plus(lang, (0, 3), 1) == frozenset()
    assert gamma_minus(lang, a, 2) == frozenset(lang.extend_left(a, 2))


def test_higher_block_counts(fixtures):
    base = PresentationLanguage(fixtures["motzkin2"])
    hb = higher_block(base, 2)
    for n in range(1, 4):
        assert len(hb.words(n)) == len(base.words(n + 1))


def test_apply_block_map_identity(fixtures):
    base = PresentationLanguage(fixtures["dyck2"])
    img = apply_block_map(base, 0, lambda w: w[0])
    for n in range(1, 4):
        assert set(img.words(n)) == set(base.words(n))


def test_contexts_differ_finds_separator(fixtures):
    lang = PresentationLanguage(fixtures["dyck2"])
    assert contexts_differ(lang, (0,), (1,), 1) is not None
    assert contexts_differ(lang, (0, 2), (1, 3), 2) is None


@pytest.mark.parametrize("name", ["dyck2", "motzkin2"])
def test_no_B_or_c_witness_at_desk_bounds(name, fixtures):
    pres = fixtures[name]
    rb = property_B_witness_search(pres, 1, 1, 2, 3)
    rc = property_c_witness_search(pres, 1, 2, 3)
    assert not rb.found and not rc.found


def test_presentation_json_round_trip(fixtures):
    for name in NAMES:
        pres = fixtures[name]
        assert Presentation.from_dict(pres.to_dict()) == pres
    with pytest.raises(InvalidInput):
        Presentation.from_dict({"rgraph": {}})


def test_identity_presentation_edge_order():
    pres = identity_presentation(dyck(3))
    assert [pres.symbol_name(i) for i in pres.alphabet] == ["a-", "b-", "c-", "a+", "b+", "c+"]


@pytest.mark.parametrize("name", ["dyck2", "motzkin2", "markov_dyck"])
def test_admissible_is_factor_closed(name, fixtures):
    pres = fixtures[name]
    lang = PresentationLanguage(pres)
    for w in lang.words(5):
        for i in range(5):
            for j in range(i + 1, 6):
                assert is_admissible(pres, w[i:j])


@pytest.mark.parametrize("name", ["dyck2", "motzkin2"])
def test_omega_plus_shrinks_with_past_bound(name, fixtures):
    lang = PresentationLanguage(fixtures[name])
    rng = random.Random(5)
    for n in range(1, 7):
        for a in rng.sample(lang.words(n), 1):
            prev = None
            for M in range(0, 9):
                cur = omega_plus_set(lang, a, 1, M)
                if prev is not None:
                    assert cur <= prev
                prev = cur
