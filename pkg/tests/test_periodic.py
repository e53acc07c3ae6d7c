from __future__ import annotations

import pytest

from rgshift.periodic import (
    PeriodKind,
    count_periodic,
    cyclic_words,
    periodic_admissible,
    periodic_class,
    periodic_counts,
)
from rgshift.rgraph import ZERO, InvalidInput, mul_all
from rgshift.zeta import periodic_from_zeta, zeta_bruteforce

from conftest import naive_nonzero

NAMES = ["dyck2", "dyck3", "motzkin2", "markov_dyck", "markov_motzkin"]


def power_check(pres, w) -> bool:
    """w^inf is admissible iff every power up to 2|w|+2 has a non-zero label."""
    g = pres.rgraph
    lab = mul_all((pres.edge(s).label for s in w), g)
    acc = lab
    for _ in range(2 * len(w) + 2):
        if acc is ZERO:
            return False
        acc = mul_all([acc, lab], g)
    return acc is not ZERO


@pytest.mark.parametrize("name", NAMES)
def test_admissible_matches_power_check(name, fixtures):
    pres = fixtures[name]
    for n in range(1, 5):
        for w in cyclic_words(pres, n):
            assert periodic_admissible(pres, w) == power_check(pres, w), w


@pytest.mark.parametrize("name", ["dyck2", "motzkin2"])
def test_admissible_matches_naive_reduction_of_powers(name, fixtures):
    pres = fixtures[name]
    for n in range(1, 5):
        for w in cyclic_words(pres, n):
            assert periodic_admissible(pres, w) == naive_nonzero(pres, w * (2 * n + 3))


def test_classes_on_dyck(fixtures):
    pres = fixtures["dyck2"]
    a_m, a_p, b_p = 0, 2, 3
    assert periodic_class(pres, (a_m, a_p)).kind is PeriodKind.NEUTRAL
    assert periodic_class(pres, (a_p, a_m)).kind is PeriodKind.NEUTRAL
    assert periodic_class(pres, (a_m,)).kind is PeriodKind.NEGATIVE
    assert periodic_class(pres, (b_p,)).kind is PeriodKind.POSITIVE
    assert periodic_class(pres, (a_m, b_p)).kind is PeriodKind.INADMISSIBLE
    assert periodic_class(pres, (a_m, a_m, a_p)).kind is PeriodKind.NEGATIVE


def test_counts_match_classification(fixtures):
    for name in ("dyck2", "markov_motzkin"):
        pres = fixtures[name]
        for pc in periodic_counts(pres, 5):
            kinds = [periodic_class(pres, w) for w in cyclic_words(pres, pc.n)]
            adm = [k for k in kinds if k.kind is not PeriodKind.INADMISSIBLE]
            assert pc.pi_n == len(adm)
            assert pc.negative == sum(k.kind is PeriodKind.NEGATIVE for k in adm)
            assert pc.positive == sum(k.kind is PeriodKind.POSITIVE for k in adm)
            for p, c in pc.neutral.items():
                assert c == sum(k.kind is PeriodKind.NEUTRAL and k.vertex == p for k in adm)


def test_frozen_counts_dyck2(fixtures):
    # frozen from the classification loop above
    assert [c.pi_n for c in periodic_counts(fixtures["dyck2"], 6)] == [4, 12, 40, 120, 384, 1152]


def test_rejects_non_cycle(fixtures):
    pres = fixtures["markov_dyck"]
    e = pres.edges[0]
    if e.src != e.dst:
        with pytest.raises(InvalidInput):
            periodic_admissible(pres, (e.id,))
    with pytest.raises(InvalidInput):
        periodic_admissible(pres, ())
    with pytest.raises(InvalidInput):
        count_periodic(pres, 0)


@pytest.mark.parametrize("name", ["dyck2", "motzkin2", "markov_dyck"])
def test_rotation_invariance(name, fixtures):
    pres = fixtures[name]
    for n in range(1, 6):
        for w in cyclic_words(pres, n):
            adm = periodic_admissible(pres, w)
            neutral = adm and periodic_class(pres, w).kind is PeriodKind.NEUTRAL
            for k in range(1, n):
                r = w[k:] + w[:k]
                assert periodic_admissible(pres, r) == adm
                if adm:
                    assert (periodic_class(pres, r).kind is PeriodKind.NEUTRAL) == neutral


@pytest.mark.parametrize("name", ["dyck2", "markov_motzkin"])
def test_divisor_coherence(name, fixtures):
    pres = fixtures[name]
    for n in range(1, 4):
        for w in cyclic_words(pres, n):
            if periodic_admissible(pres, w):
                for d in (2, 3):
                    assert periodic_admissible(pres, w * d)


@pytest.mark.parametrize("name", ["dyck2", "motzkin2", "markov_dyck"])
def test_counts_match_zeta_series(name, fixtures):
    pres = fixtures[name]
    pis = [c.pi_n for c in periodic_counts(pres, 6)]
    assert periodic_from_zeta(zeta_bruteforce(pres, 6)) == pis
