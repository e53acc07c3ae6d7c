"""Periodic points of presentations.

A cycle ``w`` in the presentation graph gives the periodic point ``w^inf``.
The point lies in the presented shift iff every power of ``w`` has a non-zero
label.  Writing the label as ``P . 1_p . N``, the powers are
``P . 1_p . c^(k-1) . N`` with ``c = N . P`` reduced, so a single interface
reduction decides all powers.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from .presentation import BudgetExceeded, Presentation, PresentationLanguage
from .rgraph import ZERO, InvalidInput, Kind, Word, classify, left_unit, mul, mul_all, right_unit


class PeriodKind(enum.Enum):
    NEUTRAL = "neutral"
    NEGATIVE = "negative"
    POSITIVE = "positive"
    INADMISSIBLE = "inadmissible"


@dataclass(frozen=True)
class PeriodClass:
    kind: PeriodKind
    vertex: str | None = None


def check_cycle(pres: Presentation, w: Sequence[int]) -> None:
    if not w:
        raise InvalidInput("a cyclic word is non-empty")
    edges = [pres.edge(s) for s in w]
    for x, y in zip(edges, edges[1:] + edges[:1]):
        if x.dst != y.src:
            raise InvalidInput(f"not a cycle: edge {x.id} ends at {x.dst}, edge {y.id} starts at {y.src}")


def cycle_label(pres: Presentation, w: Sequence[int]):
    return mul_all((pres.edge(s).label for s in w), pres.rgraph)


def interface(a: Word, pres: Presentation):
    """The reduced product N . P of the label ``P . 1_p . N``."""
    g = pres.rgraph
    return mul(Word((), a.idem, a.minus), Word(a.plus, a.idem, ()), g)


def _admissible_label(a, pres: Presentation) -> bool:
    if a is ZERO:
        return False
    c = interface(a, pres)
    if c is ZERO:
        return False
    g = pres.rgraph
    k = classify(c).kind
    p = a.idem
    if k is Kind.IDEMPOTENT:
        return c.idem == p
    if k is Kind.PURE_MINUS:
        return right_unit(c, g) == p
    if k is Kind.PURE_PLUS:
        return left_unit(c, g) == p
    return False


def periodic_admissible(pres: Presentation, w: Sequence[int]) -> bool:
    """Whether the periodic point ``w^inf`` belongs to the presented shift."""
    check_cycle(pres, w)
    return _admissible_label(cycle_label(pres, w), pres)


def periodic_class(pres: Presentation, w: Sequence[int]) -> PeriodClass:
    check_cycle(pres, w)
    w = tuple(w)
    a = cycle_label(pres, w)
    if not _admissible_label(a, pres):
        return PeriodClass(PeriodKind.INADMISSIBLE)
    for i in range(len(w)):
        r = cycle_label(pres, w[i:] + w[:i])
        if r is not ZERO and classify(r).kind is Kind.IDEMPOTENT:
            return PeriodClass(PeriodKind.NEUTRAL, r.idem)
    k = classify(interface(a, pres)).kind
    if k is Kind.PURE_MINUS:
        return PeriodClass(PeriodKind.NEGATIVE)
    if k is Kind.PURE_PLUS:
        return PeriodClass(PeriodKind.POSITIVE)
    raise RuntimeError(f"idempotent interface without a neutral rotation for {w}")


def _label_class(a, pres: Presentation) -> PeriodClass:
    """Classification from the label alone, used by the counting pass."""
    if not _admissible_label(a, pres):
        return PeriodClass(PeriodKind.INADMISSIBLE)
    k = classify(interface(a, pres)).kind
    if k is Kind.IDEMPOTENT:
        return PeriodClass(PeriodKind.NEUTRAL, a.idem)
    return PeriodClass(PeriodKind.NEGATIVE if k is Kind.PURE_MINUS else PeriodKind.POSITIVE)


@dataclass
class PeriodicCounts:
    n: int
    pi_n: int = 0
    neutral: dict = field(default_factory=dict)
    negative: int = 0
    positive: int = 0

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "pi_n": self.pi_n,
            "neutral": dict(sorted(self.neutral.items())),
            "negative": self.negative,
            "positive": self.positive,
        }


def periodic_counts(pres: Presentation, n_max: int, budget: int = 5_000_000) -> list[PeriodicCounts]:
    """Counts of period-n points for n = 1..n_max (points with S^n x = x).

    Paths are grouped by (start vertex, end vertex, reduced label); prefixes
    with zero label are discarded since every extension stays zero.
    """
    lang = PresentationLanguage(pres)
    out = []
    layer: dict = defaultdict(int)
    for e in pres.edges:
        layer[(e.src, e.dst, e.label)] += 1
    for n in range(1, n_max + 1):
        pc = PeriodicCounts(n, neutral={p: 0 for p in pres.rgraph.vertices})
        for (s, t, lab), cnt in layer.items():
            if s != t:
                continue
            cl = _label_class(lab, pres)
            if cl.kind is PeriodKind.INADMISSIBLE:
                continue
            pc.pi_n += cnt
            if cl.kind is PeriodKind.NEUTRAL:
                pc.neutral[cl.vertex] += cnt
            elif cl.kind is PeriodKind.NEGATIVE:
                pc.negative += cnt
            else:
                pc.positive += cnt
        out.append(pc)
        if n == n_max:
            break
        nxt: dict = defaultdict(int)
        for (s, t, lab), cnt in layer.items():
            for e in pres.out_edges(t):
                st = lang.step((s, t, lab), e.id)
                if st is not None:
                    nxt[st] += cnt
        if len(nxt) > budget:
            raise BudgetExceeded("path-label states", budget)
        layer = nxt
    return out


def count_periodic(pres: Presentation, n: int, budget: int = 5_000_000) -> PeriodicCounts:
    if n < 1:
        raise InvalidInput("period must be >= 1")
    return periodic_counts(pres, n, budget)[-1]


def cyclic_words(pres: Presentation, n: int) -> list[tuple[int, ...]]:
    """All cycles of length n as edge sequences (sequences, not necklaces)."""
    out = []

    def rec(prefix, start, cur):
        if len(prefix) == n:
            if cur == start:
                out.append(prefix)
            return
        for e in pres.out_edges(cur):
            rec(prefix + (e.id,), start, e.dst)

    for v in pres.vertices:
        rec((), v, v)
    return sorted(out)
