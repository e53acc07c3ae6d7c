from __future__ import annotations

import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from rgshift import examples as ex
from rgshift.presentation import PresentationLanguage
from rgshift.rgraph import InvalidInput
from rgshift.sofic import (
    SoficLanguage,
    SoficPresentation,
    bi_mapping_pair_search,
    family_signature,
    follower_family,
    has_periodic,
    instantaneity_check,
    li_mapping_search,
    lifted_instantaneity,
    monotone_bound_violations,
    monotone_bound_violations_sampled,
    omega1_minus,
    omega1_plus,
    periodic_words,
    ri_mapping_search,
    sofic_from_edges,
    stabilization_index,
    strong_bi_check,
    theorem61_transform,
    theta_embed,
    verify_mapping,
)

SMALL = {"full2": ex.full_shift(2), "even": ex.even_shift(), "doctored": ex.doctored_sbi_fixture()}


@pytest.fixture(scope="module")
def sec6():
    return ex.left_not_right_sofic()


@pytest.fixture(scope="module")
def sec6_transform(sec6):
    return theorem61_transform(sec6)


def test_follower_family_full_shift():
    ff = follower_family(ex.full_shift(2))
    assert len(ff) == 1


@pytest.mark.parametrize("name", ["even", "doctored"])
def test_follower_methods_agree(name):
    sp = SMALL[name]
    a = follower_family(sp, "matrix")
    b = follower_family(sp, "recurrent")
    assert family_signature(a) == family_signature(b)


def test_follower_family_sec6(sec6):
    a = follower_family(sec6, "matrix")
    b = follower_family(sec6, "recurrent")
    assert len(a) == 8
    assert family_signature(a) == family_signature(b)


def test_follower_sets_of_long_pasts_are_in_family(sec6):
    # every past long enough to synchronize lands in a family class
    lang = SoficLanguage(sec6)
    fam = {frozenset(f for k in range(1, 5) for f in lang.words(k) if sec6.run(S, f)) for S in lang.family.sets}
    futs = [w for k in range(1, 5) for w in lang.words(k)]
    for p in lang.words(7):
        S = sec6.run(frozenset(sec6.states), p)
        assert frozenset(f for f in futs if sec6.run(S, f)) in fam


def test_non_essential_rejected():
    sp = sofic_from_edges([("A", "A", "0"), ("A", "B", "1")])
    with pytest.raises(InvalidInput):
        follower_family(sp)


def test_sec6_is_left_but_not_right_instantaneous(sec6):
    rep = instantaneity_check(sec6)
    assert not rep.right and rep.left
    assert rep.right_fail == ("1",)
    lang = SoficLanguage(sec6)
    for n in range(0, 4):
        assert omega1_plus(lang, ("0",) * n + ("1",)) == ()
    assert omega1_minus(lang, ("1",)) != ()


@pytest.mark.parametrize("name", ["full2", "even"])
def test_small_shifts_bi_instantaneous(name):
    rep = instantaneity_check(SMALL[name])
    assert rep.right and rep.left


def test_omega1_matches_brute_force(sec6):
    # t is in omega1+(a) iff t, with some continuation, follows every long past ending with a
    lang = SoficLanguage(sec6)
    for a in lang.alphabet:
        pasts = [p for p in lang.words(6) if p[-1] == a]
        brute = tuple(
            t for t in lang.alphabet if all(any(lang.contains(p + (t,) + f) for f in lang.extend_right((t,), 3)) for p in pasts)
        )
        assert set(omega1_plus(lang, (a,))) == set(brute)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(["0", "1", "alpha", "beta"]), max_size=4), st.lists(st.sampled_from(["0", "1", "alpha", "beta"]), max_size=4))
def test_tau_is_functorial(a, b):
    ff = follower_family(ex.left_not_right_sofic())
    left = ff.act(tuple(a) + tuple(b))
    first, second = ff.act(a), ff.act(b)
    assert left == tuple(second[j] if j >= 0 else -1 for j in first)


def test_stabilization_conventions():
    ff = follower_family(ex.full_shift(2))
    assert stabilization_index(ff, ("0", "1"), "half-open") == (2, 1)
    assert stabilization_index(ff, ("0", "1"), "open") is None
    with pytest.raises(InvalidInput):
        stabilization_index(ff, ("0",), "closed")


@pytest.mark.parametrize("name", ["full2", "even", "doctored"])
@pytest.mark.parametrize("conv", ["half-open", "open"])
def test_transform_small(name, conv):
    sp = SMALL[name]
    tr = theorem61_transform(sp, conv)
    direct = instantaneity_check(tr.image)
    lifted = lifted_instantaneity(tr)
    assert direct.right and direct.left
    assert lifted.omega_plus == direct.omega_plus
    assert lifted.omega_minus == direct.omega_minus
    assert monotone_bound_violations(tr) == []
    lang = SoficLanguage(sp)
    assert monotone_bound_violations_sampled(tr, lang, max(tr.m_plus, tr.m_minus) + 2) == []
    seen = {}
    for n in range(1, 6):
        for w in periodic_words(sp, n):
            img = tr.xi_periodic(w)
            assert has_periodic(tr.image, img)
            assert seen.setdefault(img, w) == w


def test_transform_bounds_full_shift():
    assert theorem61_transform(ex.full_shift(2), "half-open").m_plus == 2
    assert theorem61_transform(ex.full_shift(2), "open").m_plus == 3


def test_sec6_transform_statistics(sec6_transform):
    d = sec6_transform.to_dict()
    assert (d["m_plus"], d["m_minus"]) == (8, 8)
    assert (d["minimal_futures"], d["minimal_pasts"]) == (225, 250)


@pytest.mark.slow
def test_sec6_image_lifted_equals_direct(sec6_transform):
    direct = instantaneity_check(sec6_transform.image)
    lifted = lifted_instantaneity(sec6_transform)
    assert direct.right and direct.left
    assert lifted.omega_plus == direct.omega_plus
    assert lifted.omega_minus == direct.omega_minus


def test_ri_on_full_shift():
    res = ri_mapping_search(ex.full_shift(2), 0)
    assert res.found
    assert verify_mapping(ex.full_shift(2), 0, res.psi_plus) == []
    bi = bi_mapping_pair_search(ex.full_shift(2), 1)
    assert bi.found and verify_mapping(ex.full_shift(2), 1, bi.psi_plus, bi.psi_minus) == []


def test_sec6_mappings(sec6):
    assert not ri_mapping_search(sec6, 0).found
    ri = ri_mapping_search(sec6, 1)
    assert ri.found and verify_mapping(sec6, 1, ri.psi_plus) == []
    li = li_mapping_search(sec6, 0)
    assert li.found and verify_mapping(sec6, 0, psi_minus=li.psi_minus) == []


def test_verify_mapping_flags_bad_image(sec6):
    psi = {(s,): ("0",) for s in SoficLanguage(sec6).alphabet}
    fails = verify_mapping(sec6, 0, psi)
    assert fails and fails[0].clause == "RIa"


def test_coded_system_has_no_mappings():
    c = ex.CodedLanguage()
    for L in (0, 1, 2):
        assert not ri_mapping_search(c, L).found
        assert not li_mapping_search(c, L).found


def test_d2_graph_mappings():
    unit = ex.d2_graph_example(True)
    assert ri_mapping_search(unit, 0).found and ri_mapping_search(unit, 1).found
    assert not li_mapping_search(unit, 0).found
    plain = ex.d2_graph_example(False)
    assert not ri_mapping_search(plain, 0).found and not ri_mapping_search(plain, 1).found


def test_d2_graph_bounded_instantaneity():
    unit = instantaneity_check(ex.d2_graph_example(True))
    assert unit.right and not unit.left
    plain = instantaneity_check(ex.d2_graph_example(False))
    assert not plain.right and not plain.left


@pytest.mark.parametrize("L", [0, 1])
def test_theta_embed_is_instantaneous(L):
    sp = ex.even_shift()
    ri = ri_mapping_search(sp, L)
    img = theta_embed(sp, L, ri.psi_plus)
    assert instantaneity_check(img).right
    bi = bi_mapping_pair_search(sp, L)
    img2 = theta_embed(sp, L, bi.psi_plus, bi.psi_minus)
    rep = instantaneity_check(img2)
    assert rep.right and rep.left


def test_theta_embed_rejects_bad_mapping(sec6):
    with pytest.raises(InvalidInput):
        theta_embed(sec6, 0, {(s,): ("0",) for s in SoficLanguage(sec6).alphabet})


def test_strong_bi():
    assert strong_bi_check(ex.full_shift(2), 1, 3).ok
    bad = strong_bi_check(ex.doctored_sbi_fixture(), 1, 2)
    assert not bad.ok and bad.failing == ("0", "1")


@pytest.mark.parametrize("name", ["dyck2", "motzkin2"])
def test_strong_bi_on_presentations(name, fixtures):
    rep = strong_bi_check(fixtures[name], 1, 3, c_maxlen=4)
    assert rep.ok
    lang = PresentationLanguage(fixtures[name])
    for a, c in rep.witnesses.items():
        assert lang.contains(a + c) and lang.contains(c + a)


def test_sofic_json_round_trip(sec6):
    assert SoficPresentation.from_json(sec6.to_json()) == sec6


def test_sofic_language_brute_force():
    sp = ex.even_shift()
    lang = SoficLanguage(sp)
    for n in range(1, 7):
        brute = {w for w in product(("0", "1"), repeat=n) if sp.run(frozenset(sp.states), w)}
        assert set(lang.words(n)) == brute


@pytest.mark.parametrize("name", ["full2", "even", "doctored", "sec6"])
def test_tau_functorial_random_pairs(name):
    sp = SMALL.get(name) or ex.left_not_right_sofic()
    ff = follower_family(sp)
    syms = list(sp.symbols)
    rng = random.Random(17)
    for _ in range(1000):
        a = tuple(rng.choice(syms) for _ in range(rng.randint(0, 5)))
        b = tuple(rng.choice(syms) for _ in range(rng.randint(0, 5)))
        first, second = ff.act(a), ff.act(b)
        assert ff.act(a + b) == tuple(second[j] if j >= 0 else -1 for j in first)


@pytest.mark.parametrize("name", ["full2", "even", "doctored"])
def test_recoding_preserves_periodic_counts(name):
    # factor counts are not conjugacy invariants, periodic counts are
    sp = SMALL[name]
    tr = theorem61_transform(sp)
    for n in range(1, 9):
        assert len(periodic_words(tr.image, n)) == len(periodic_words(sp, n))


def test_sec6_recoding_preserves_periodic_counts(sec6, sec6_transform):
    # the image has about 28k symbols; word enumeration is the bottleneck
    for n in range(1, 4):
        assert len(periodic_words(sec6_transform.image, n)) == len(periodic_words(sec6, n))


@pytest.mark.parametrize("L", [0, 1])
def test_theta_preserves_periodic_counts(L):
    sp = ex.even_shift()
    ri = ri_mapping_search(sp, L)
    img = theta_embed(sp, L, ri.psi_plus)
    for n in range(1, 9):
        assert len(periodic_words(img, n)) == len(periodic_words(sp, n))
