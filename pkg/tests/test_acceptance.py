"""End-to-end acceptance checks, one test per criterion.

A summary line per criterion is printed at the end of the run (see conftest).
"""

from __future__ import annotations

import random
import warnings

import pytest

from rgshift import examples as ex
from rgshift.periodic import cyclic_words, periodic_admissible
from rgshift.presentation import (
    atomize,
    check_G1,
    check_G2_to_G5,
    neutral_reachability,
    property_B_witness_search,
    property_c_witness_search,
)
from rgshift.rgraph import SemigroupProbe, dyck, isomorphic, mul, random_element, random_rgraph, reconstruct_rgraph
from rgshift.sofic import (
    has_periodic,
    instantaneity_check,
    lifted_instantaneity,
    periodic_words,
    ri_mapping_search,
    strong_bi_check,
    theorem61_transform,
    theta_embed,
    verify_mapping,
)
from rgshift.zeta import catalan, catalan_check, prop92_invariant, two_block_presentation, zeta_bruteforce, zeta_theorem91

from test_periodic import power_check
from test_presentation import _neutral_pairs_by_paths

SR_FIXTURES = ("dyck2", "dyck3", "motzkin2", "motzkin3", "markov_dyck", "markov_motzkin")


def test_criterion_01_zeta_agreement(fixtures):
    """Zeta from the code factorization equals brute force."""
    for name, order in (("dyck2", 10), ("dyck3", 10), ("motzkin2", 8), ("markov_dyck", 8)):
        pres = fixtures[name]
        assert zeta_theorem91(pres, order) == zeta_bruteforce(pres, order), name


def test_criterion_02_catalan():
    """Neutral code data gives N^k C_k for k <= 8."""
    for n in (2, 3):
        chk = catalan_check(n, kmax=8)
        assert chk.ok, chk.to_dict()
        assert [catalan(k) for k in range(9)] == [1, 1, 2, 5, 14, 42, 132, 429, 1430]


def test_criterion_03_periodic_oracle(fixtures):
    """Periodic admissibility equals the power check on cyclic words up to length 6."""
    bad = []
    for name in ex.PRESENTATION_NAMES:
        pres = fixtures[name]
        for n in range(1, 7):
            for w in cyclic_words(pres, n):
                if periodic_admissible(pres, w) != power_check(pres, w):
                    bad.append((name, w))
    assert bad == []


def test_criterion_04_semigroup_algebra():
    """10^4 associativity triples per graph and 50 reconstructions."""
    for g in (dyck(2), dyck(3), ex.two_vertex_graph()):
        rng = random.Random(2024)
        for _ in range(10_000):
            a, b, c = (random_element(g, rng) for _ in range(3))
            assert mul(mul(a, b, g), c, g) == mul(a, mul(b, c, g), g)
    rng = random.Random(11)
    for _ in range(50):
        g = random_rgraph(rng)
        assert isomorphic(g, reconstruct_rgraph(SemigroupProbe.of(g)))


def test_criterion_05_g_validation(fixtures):
    """G1-G5 on the fixtures, named rules on the negatives, neutral reachability."""
    for name in SR_FIXTURES:
        pres = fixtures[name]
        assert check_G1(pres) == []
        atomize(pres)
        assert check_G2_to_G5(pres).ok, name
    for rule, build in ex.NEGATIVE_G_FIXTURES.items():
        assert check_G2_to_G5(build()).failed_rules() == [rule]
    for name in ("dyck2", "motzkin2", "markov_dyck", "markov_motzkin"):
        pres = fixtures[name]
        reach = neutral_reachability(pres)
        verts = set(pres.vertices)
        got = {(u, w, p) for p, pairs in reach.pairs.items() for u, w in pairs if u in verts and w in verts}
        assert got == _neutral_pairs_by_paths(pres, 12), name


def test_criterion_06_sofic_example():
    """Left but not right instantaneous; the recoding is both; xi injective to period 8."""
    sp = ex.left_not_right_sofic()
    rep = instantaneity_check(sp)
    assert rep.left and not rep.right
    tr = theorem61_transform(sp)
    direct = instantaneity_check(tr.image)
    assert direct.left and direct.right
    lifted = lifted_instantaneity(tr)
    assert lifted.omega_plus == direct.omega_plus and lifted.omega_minus == direct.omega_minus
    seen = {}
    for n in range(1, 9):
        for w in periodic_words(sp, n):
            img = tr.xi_periodic(w)
            assert has_periodic(tr.image, img)
            assert seen.setdefault(img, w) == w


def test_criterion_07_ri_search():
    """RI mappings on the full shift and on every recoding output, re-verified."""
    full = ex.full_shift(2)
    res = ri_mapping_search(full, 0)
    assert res.found and verify_mapping(full, 0, res.psi_plus) == []
    assert instantaneity_check(theta_embed(full, 0, res.psi_plus)).right
    for sp in (ex.full_shift(2), ex.even_shift(), ex.doctored_sbi_fixture(), ex.left_not_right_sofic()):
        tr = theorem61_transform(sp)
        # the recoding is right instantaneous, so L = 0 is certified
        res = ri_mapping_search(tr.image, 0)
        assert res.found and verify_mapping(tr.image, 0, res.psi_plus) == []
        if len(tr.image.symbols) < 100:
            assert instantaneity_check(theta_embed(tr.image, 0, res.psi_plus)).right
    sec6 = ex.left_not_right_sofic()
    res = ri_mapping_search(sec6, 1)
    assert res.found and verify_mapping(sec6, 1, res.psi_plus) == []
    assert instantaneity_check(theta_embed(sec6, 1, res.psi_plus)).right


def test_criterion_08_strong_bi(fixtures):
    """Strong bi-instantaneity on the presentations; the doctored graph fails at 0 1."""
    for name in SR_FIXTURES:
        assert strong_bi_check(fixtures[name], 1, 3, c_maxlen=4).ok, name
    rep = strong_bi_check(ex.doctored_sbi_fixture(), 1, 2)
    assert not rep.ok and rep.failing == ("0", "1")


@pytest.mark.xfail(strict=True, reason="flip positions as stated give unequal one-sided contexts; see decisions ledger")
def test_criterion_09_flagged_witness():
    """Four flagged words with equal one-sided contexts and the exact gamma pattern, some D <= 8.

    Fails: with the stated flip positions the one-sided contexts already
    differ at depth 1, hence at every depth, and the gamma pattern fails.
    """
    w = ex.section8_c_witness(ex.Section8Config.d2_base(), depth=1, recipe="stated", max_depth=8)
    assert w.ok, w.to_dict()


def test_criterion_10_prop92(fixtures):
    """The neutral invariant agrees with the 2-block recoding to order 8."""
    pres = fixtures["dyck2"]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert prop92_invariant(pres, 8) == prop92_invariant(two_block_presentation(pres), 8)


def test_criterion_11_property_searches(fixtures):
    """No (B)/(c) witness on dyck2/motzkin2; the generic search agrees with the flagged constructor."""
    for name in ("dyck2", "motzkin2"):
        assert not property_B_witness_search(fixtures[name], 1, 1, 2, 3).found
        assert not property_c_witness_search(fixtures[name], 1, 2, 3).found
    cfg = ex.Section8Config.d2_base()
    lang = ex.Section8Language(cfg)
    for recipe in ("stated", "parent"):
        w = ex.section8_c_witness(cfg, depth=2, recipe=recipe, max_depth=4)
        rep = property_c_witness_search(lang, min(w.flip_positions), w.depth, candidates=list(w.words.values()))
        assert rep.found == w.ok, recipe
        if rep.found:
            assert {rep.a, rep.b} <= set(w.words.values())
