"""Builders for the worked examples.

Besides the Dyck, Motzkin and Markov-Dyck presentations this module holds
the sofic and non-sofic examples used for the instantaneity tools, and the
flagged coded system built from a base graph together with the words used to
probe its contexts.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .presentation import (
    BudgetExceeded,
    LanguageOracle,
    PEdge,
    Presentation,
    PresentationLanguage,
    contexts_differ,
    gamma_minus,
    gamma_plus,
    identity_presentation,
    motzkin_presentation,
)
from .rgraph import InvalidInput, RGraph, dyck, graph_inverse
from .sofic import SoficPresentation, sofic_from_edges


# ----------------------------------------------------------------------
# R-graph shifts


def dyck_presentation(n: int) -> Presentation:
    return identity_presentation(dyck(n))


def motzkin(n: int) -> Presentation:
    return motzkin_presentation(dyck(n))


def two_vertex_graph() -> RGraph:
    """Two vertices with two parallel edges in each direction."""
    return graph_inverse(("p", "q"), [("p", "q"), ("p", "q"), ("q", "p"), ("q", "p")])


def markov_dyck(g: RGraph | None = None) -> Presentation:
    return identity_presentation(g or two_vertex_graph())


def markov_motzkin(g: RGraph | None = None) -> Presentation:
    return motzkin_presentation(g or two_vertex_graph())


def _pres(g: RGraph, vertices, edge_rows) -> Presentation:
    edges = tuple(PEdge(i, s, t, lab, nm) for i, (s, t, lab, nm) in enumerate(edge_rows))
    return Presentation(g, tuple(vertices), edges)


def g3_violation() -> Presentation:
    """D_2 at U plus a vertex W entered by a- and left by a+: W has no unit cycle."""
    g = dyck(2)
    a, b = 0, 1
    return _pres(g, ("U", "W"), [
        ("U", "U", g.gen_minus(a), "a-"),
        ("U", "U", g.gen_plus(a), "a+"),
        ("U", "U", g.gen_minus(b), "b-"),
        ("U", "U", g.gen_plus(b), "b+"),
        ("U", "W", g.gen_minus(a), "a-'"),
        ("W", "U", g.gen_plus(a), "a+'"),
    ])


def g4_violation() -> Presentation:
    """Identity presentation of the two-vertex graph plus an edge p -> q whose
    label starts at q, so it is annihilated by the unit of its source."""
    g = two_vertex_graph()
    base = identity_presentation(g)
    qp = next(e for e in g.minus if e.q == "q")
    edge_rows = [(e.src, e.dst, e.label, e.name) for e in base.edges]
    edge_rows.append(("p", "q", g.gen_minus(qp.id), "x"))
    return _pres(g, base.vertices, edge_rows)


def g5_violation() -> Presentation:
    """Two D_2 vertices U, W of one class; every path from U to W keeps an unmatched a-."""
    g = dyck(2)
    a, b = 0, 1
    return _pres(g, ("U", "W"), [
        ("U", "U", g.gen_minus(a), "a-"),
        ("U", "U", g.gen_plus(a), "a+"),
        ("W", "W", g.gen_minus(b), "b-"),
        ("W", "W", g.gen_plus(b), "b+"),
        ("U", "W", g.gen_minus(a), "a-'"),
        ("W", "U", g.gen_plus(a), "a+'"),
    ])


NEGATIVE_G_FIXTURES = {"G3": g3_violation, "G4": g4_violation, "G5": g5_violation}


# ----------------------------------------------------------------------
# sofic examples


def left_not_right_sofic() -> SoficPresentation:
    """Alphabet 0, 1, alpha, beta; forbidden 10, 11, alpha 0^n 1 beta, beta 0^n 1 alpha.

    After ``x 0^n 1`` the next symbol must be ``x`` again, so the word ``0^n 1``
    has no future that fits every past.  States remember the last letter
    (a or b) and whether a run of zeros or the final 1 is pending.
    """
    edges = []
    name = {"a": "alpha", "b": "beta"}
    for x in ("a", "b"):
        edges += [
            (x, "a", "alpha"),
            (x, "b", "beta"),
            (x, x + "0", "0"),
            (x, "1f", "1"),
            (x + "0", x + "0", "0"),
            (x + "0", "1" + x, "1"),
            (x + "0", "a", "alpha"),
            (x + "0", "b", "beta"),
            ("1" + x, x, name[x]),
        ]
    edges += [("1f", "a", "alpha"), ("1f", "b", "beta")]
    return sofic_from_edges(edges)


def full_shift(n: int = 2) -> SoficPresentation:
    return sofic_from_edges([("u", "u", str(i)) for i in range(n)])


def even_shift() -> SoficPresentation:
    return sofic_from_edges([("p", "p", "1"), ("p", "q", "0"), ("q", "p", "0")])


def doctored_sbi_fixture() -> SoficPresentation:
    """A 0-loop, an edge labeled 1 and a 1-loop: no word connects 01 back to itself."""
    return sofic_from_edges([("A", "A", "0"), ("A", "B", "1"), ("B", "B", "1")])


# ----------------------------------------------------------------------
# non-sofic oracles


class CodedLanguage(LanguageOracle):
    """Coded system of {0 alpha^n beta^n : n >= 1} (factors of concatenations)."""

    exact = False
    alphabet = ("0", "alpha", "beta")

    def contains(self, word) -> bool:
        w = tuple(word)
        if not w or any(s not in self.alphabet for s in w):
            return False
        zeros = [i for i, s in enumerate(w) if s == "0"]
        if not zeros:
            return _runs_ok(w, head=False, tail=False)
        if not _runs_ok(w[: zeros[0]], head=True, tail=False):
            return False
        for i, j in zip(zeros, zeros[1:]):
            seg = w[i + 1 : j]
            if not _runs_ok(seg, head=False, tail=False, whole=True):
                return False
        return _runs_ok(w[zeros[-1] + 1 :], head=False, tail=True)

    def format_word(self, word) -> str:
        return " ".join(word)


def _runs_ok(seg, head: bool, tail: bool, whole: bool = False) -> bool:
    """Is ``seg`` a factor of alpha^n beta^n, anchored at its end (head) or start (tail)?"""
    i = 0
    while i < len(seg) and seg[i] == "alpha":
        i += 1
    j = i
    while j < len(seg) and seg[j] == "beta":
        j += 1
    if j != len(seg):
        return False
    na, nb = i, j - i
    if whole:
        return na == nb and na >= 1
    if head:
        # suffix of alpha^n beta^n: alpha^na beta^nb with na <= nb, or only betas
        return na <= nb
    if tail:
        # prefix: alpha^na beta^nb with nb <= na
        return nb <= na
    return True


class FilteredLanguage(LanguageOracle):
    """A language oracle with extra forbidden factors."""

    def __init__(self, base: LanguageOracle, forbidden: Iterable[Sequence]):
        self.base = base
        self.alphabet = base.alphabet
        self.exact = False
        self.forbidden = [tuple(f) for f in forbidden]

    def contains(self, word) -> bool:
        w = tuple(word)
        if not self.base.contains(w):
            return False
        for f in self.forbidden:
            k = len(f)
            for i in range(len(w) - k + 1):
                if w[i : i + k] == f:
                    return False
        return True

    def format_word(self, word) -> str:
        return self.base.format_word(word)


def d3_conjugacy_pair():
    """Motzkin M_3 minus the words c-c-, a-a-c-, b-b-c-, and the 3-block map Phi.

    Ids follow the Motzkin presentation: 0..2 are a-, b-, c-, 3..5 are a+,
    b+, c+ and 6 is the unit loop.  Phi sends the middle of a-b-c- and
    b-a-c- to c- and copies the middle symbol otherwise.
    """
    pres = motzkin(3)
    a_m, b_m, c_m = 0, 1, 2
    forbidden = [(c_m, c_m), (a_m, a_m, c_m), (b_m, b_m, c_m)]
    X = FilteredLanguage(PresentationLanguage(pres), forbidden)

    def phi(w):
        w = tuple(w)
        if w in ((a_m, b_m, c_m), (b_m, a_m, c_m)):
            return c_m
        return w[1]

    return pres, X, phi


def d2_graph_example(unit_loop: bool = False) -> Presentation:
    """Dyck D_2 labels on vertices v, v(+), v(-).

    Four loops at v, a b- loop at v(-), a b+ loop at v(+), and the path
    v -a-> v(-) -1-> v(+) -a+-> v.  With ``unit_loop`` a 1-labeled loop is
    added at v(+).
    """
    g = dyck(2)
    a, b = 0, 1
    one = g.unit("p")
    edge_rows = [
        ("v", "v", g.gen_minus(a), "a-"),
        ("v", "v", g.gen_plus(a), "a+"),
        ("v", "v", g.gen_minus(b), "b-"),
        ("v", "v", g.gen_plus(b), "b+"),
        ("v-", "v-", g.gen_minus(b), "b-'"),
        ("v+", "v+", g.gen_plus(b), "b+'"),
        ("v", "v-", g.gen_minus(a), "a-'"),
        ("v-", "v+", one, "1"),
        ("v+", "v", g.gen_plus(a), "a+'"),
    ]
    if unit_loop:
        edge_rows.append(("v+", "v+", one, "1'"))
    edges = tuple(PEdge(i, s, t, lab, nm) for i, (s, t, lab, nm) in enumerate(edge_rows))
    return Presentation(g, ("v", "v+", "v-"), edges)


# ----------------------------------------------------------------------
# flagged coded system over a base graph


@dataclass(frozen=True)
class Section8Config:
    """Base graph (vertices, named edges src -> dst) and fixed-point-free permutations.

    ``kappa`` maps each edge name to an edge with the same endpoints.
    """

    vertices: tuple
    edges: tuple  # (name, src, dst)
    kappa: dict
    max_len: int = 10

    def __post_init__(self) -> None:
        names = [e[0] for e in self.edges]
        if len(set(names)) != len(names):
            raise InvalidInput("edge names must be distinct")
        groups = defaultdict(list)
        for nm, s, t in self.edges:
            if s not in self.vertices or t not in self.vertices:
                raise InvalidInput(f"edge {nm} leaves the vertex set")
            groups[(s, t)].append(nm)
        for (s, t), es in groups.items():
            if len(es) == 1:
                raise InvalidInput(f"card E({s},{t}) = 1 is not allowed")
            img = [self.kappa.get(e) for e in es]
            if sorted(img, key=str) != sorted(es):
                raise InvalidInput(f"kappa is not a permutation of E({s},{t})")
            if any(self.kappa[e] == e for e in es):
                raise InvalidInput(f"kappa has a fixed point on E({s},{t})")

    @property
    def ends(self) -> dict:
        return {nm: (s, t) for nm, s, t in self.edges}

    def out_edges(self, v) -> list[str]:
        return [nm for nm, s, _ in self.edges if s == v]

    def kappa_inv(self, e: str) -> str:
        for k, v in self.kappa.items():
            if v == e:
                return k
        raise InvalidInput(f"unknown edge {e}")

    @classmethod
    def d2_base(cls, max_len: int = 10) -> "Section8Config":
        return cls(("p",), (("a", "p", "p"), ("b", "p", "p")), {"a": "b", "b": "a"}, max_len)

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "kappa": dict(self.kappa),
            "max_len": self.max_len,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Section8Config":
        return cls(tuple(d["vertices"]), tuple(tuple(e) for e in d["edges"]), dict(d["kappa"]), int(d.get("max_len", 10)))


def fsym(edge: str, sign: str, flag: int = 1) -> tuple:
    return (edge, sign, flag)


def format_fsym(s) -> str:
    e, sign, f = s
    return f"{e}{sign}" + ("" if f == 1 else "~")


def block_deltas(word: Sequence, start: int, end: int, children: Sequence[tuple[int, int]]):
    """Flags (delta-, delta+) of the complete block word[start..end].

    delta- sits at block position M- (M- = length of the first child) and
    delta+ at block position 2I - M+, the first symbol of the last child.
    None when the block has fewer than two children.
    """
    if len(children) < 2:
        return None
    m_minus = children[0][1] - children[0][0] + 1
    m_plus = children[-1][1] - children[-1][0] + 1
    i_minus = start + m_minus - 1
    i_plus = end - m_plus
    return word[i_minus][2], word[i_plus][2]


def _parse_blocks(cfg: Section8Config, word: Sequence):
    """Bracket structure of a factor; yields (start, end, children) of complete blocks.

    Returns None if the bracket or path structure is violated.
    """
    ends = cfg.ends
    stack: list = []
    root_vertex = None
    blocks = []
    for i, s in enumerate(word):
        e, sign, _ = s
        if e not in ends:
            return None
        src, dst = ends[e]
        if sign == "-":
            lvl = ends[stack[-1][0]][1] if stack else root_vertex
            if lvl is not None and lvl != src:
                return None
            if not stack and root_vertex is None:
                root_vertex = src
            stack.append([e, i, []])
        elif sign == "+":
            if stack:
                pe, s0, ch = stack.pop()
                if pe != e:
                    return None
                blocks.append((s0, i, tuple(ch)))
                if stack:
                    stack[-1][2].append((s0, i))
            else:
                if root_vertex is not None and root_vertex != dst:
                    return None
                root_vertex = src
        else:
            return None
    return blocks


class Section8Language(LanguageOracle):
    """Factors of concatenations of flagged blocks.

    A block is ``e- c_1 ... c_k e+`` with children blocks over edges leaving
    the target of e, k = 0 or k >= 3, and per-symbol flags.  Every complete
    block with children must carry equal flags at its two marked positions.
    Open blocks at the ends of a factor can always be completed, so these
    local checks decide membership.
    """

    exact = False

    def __init__(self, cfg: Section8Config):
        self.cfg = cfg
        self.alphabet = tuple(
            fsym(e, sign, f) for e, _, _ in cfg.edges for sign in ("-", "+") for f in (1, -1)
        )

    def contains(self, word) -> bool:
        w = tuple(word)
        if not w:
            return False
        blocks = _parse_blocks(self.cfg, w)
        if blocks is None:
            return False
        for s0, s1, ch in blocks:
            if len(ch) in (1, 2):
                return False
            d = block_deltas(w, s0, s1, ch)
            if d is not None and d[0] != d[1]:
                return False
        return True

    def format_word(self, word) -> str:
        return " ".join(format_fsym(s) for s in word)


def _block(cfg: Section8Config, e: str, children: Sequence[tuple], flag: int = 1) -> tuple:
    return (fsym(e, "-", flag),) + tuple(s for c in children for s in c) + (fsym(e, "+", flag),)


def _child(cfg: Section8Config, v, min_len: int) -> tuple:
    """Shortest block over an edge leaving v with length > min_len, all flags 1."""
    e = cfg.out_edges(v)[0]
    r = cfg.ends[e][1]
    w = _block(cfg, e, ())
    while len(w) <= min_len:
        sub = _child(cfg, r, len(w) - 1)
        w = _block(cfg, e, (sub, sub, sub))
    return w


@dataclass
class Section8System:
    cfg: Section8Config
    language: Section8Language
    raw_counts: dict  # length -> number of flagged C-circle blocks before filtering
    codes: dict  # vertex -> list of filtered blocks (D_p), up to max_len
    same_context: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "config": self.cfg.to_dict(),
            "raw_counts": {str(k): v for k, v in sorted(self.raw_counts.items())},
            "code_counts": {v: len(ws) for v, ws in self.codes.items()},
            "shortest": {v: [self.language.format_word(w) for w in ws[:4]] for v, ws in self.codes.items()},
            "same_context": {v: ok for v, ok in self.same_context.items()},
        }


def _blocks_over(cfg: Section8Config, v, max_len: int, memo: dict) -> list[tuple]:
    """Unflagged blocks over edges leaving v, with k = 0 or k >= 3 children, length <= max_len."""
    key = (v, max_len)
    if key in memo:
        return memo[key]
    out = []
    if max_len >= 2:
        for e in cfg.out_edges(v):
            r = cfg.ends[e][1]
            kids = _blocks_over(cfg, r, max_len - 2, memo) if max_len >= 8 else []
            out.append(((e, "-"), (e, "+")))
            # sequences of >= 3 children with total length <= max_len - 2
            budget = max_len - 2

            def seqs(prefix, used):
                if len(prefix) >= 3:
                    out.append(((e, "-"),) + tuple(s for c in prefix for s in c) + ((e, "+"),))
                for c in kids:
                    if used + len(c) <= budget:
                        seqs(prefix + [c], used + len(c))

            seqs([], 0)
    memo[key] = sorted(set(out), key=lambda w: (len(w), w))
    return memo[key]


def section8_build(cfg: Section8Config, max_len: int | None = None, context_depth: int = 2, budget: int = 200_000) -> Section8System:
    """Enumerate the codes D_p up to ``max_len`` and check bounded context equality."""
    max_len = cfg.max_len if max_len is None else max_len
    lang = Section8Language(cfg)
    memo: dict = {}
    raw = defaultdict(int)
    codes: dict = {}
    for v in cfg.vertices:
        words = []
        for b in _blocks_over(cfg, v, max_len, memo):
            for flags in product((1, -1), repeat=len(b)):
                raw[len(b)] += 1
                w = tuple(fsym(e, s, f) for (e, s), f in zip(b, flags))
                if lang.contains(w):
                    words.append(w)
                if sum(raw.values()) > budget:
                    raise BudgetExceeded("flagged code words", budget)
        codes[v] = sorted(words, key=lambda w: (len(w), w))
    system = Section8System(cfg, lang, dict(raw), codes)
    for v, ws in codes.items():
        sample = ws[: min(len(ws), 6)]
        ok = True
        for w in sample[1:]:
            if contexts_differ(lang, sample[0], w, context_depth) is not None:
                ok = False
                break
        system.same_context[v] = ok
    return system


@dataclass
class C8Witness:
    """The four words (b, d(s-, s+)) and what the bounded checks found."""

    words: dict
    flip_positions: tuple
    depth: int
    admissible: dict
    left_equal: bool
    right_equal: bool
    gamma_table: dict  # (word flags, probe flags) -> bool
    pattern_ok: bool
    distinct_two_sided: bool
    left_separator: tuple | None = None
    right_separator: tuple | None = None
    recipe: str = "stated"

    separated: tuple = ()  # flag pairs whose two-sided contexts differ

    @property
    def ok(self) -> bool:
        """``stated`` also needs the gamma pattern; both need equal one-sided and
        pairwise distinct two-sided contexts."""
        base = all(self.admissible.values()) and self.left_equal and self.right_equal and self.distinct_two_sided
        if self.recipe == "stated":
            return base and self.pattern_ok
        return base

    def to_dict(self, fmt=None) -> dict:
        fmt = fmt or (lambda w: " ".join(format_fsym(s) for s in w))
        key = lambda d: f"{d[0]:+d},{d[1]:+d}"
        return {
            "recipe": self.recipe,
            "ok": self.ok,
            "depth": self.depth,
            "flip_positions": list(self.flip_positions),
            "words": {key(k): fmt(w) for k, w in self.words.items()},
            "admissible": {key(k): v for k, v in self.admissible.items()},
            "left_contexts_equal": self.left_equal,
            "right_contexts_equal": self.right_equal,
            "left_separator": None if self.left_separator is None else [fmt(x) for x in self.left_separator],
            "right_separator": None if self.right_separator is None else [fmt(x) for x in self.right_separator],
            "gamma_pattern_ok": self.pattern_ok,
            "two_sided_distinct": self.distinct_two_sided,
            "separated_pairs": [[key(a), key(b)] for a, b in self.separated],
            "gamma_table": {f"{key(k[0])}|{key(k[1])}": v for k, v in self.gamma_table.items()},
        }


def _flipped(word: tuple, pos: Sequence[int], flags: Sequence[int]) -> tuple:
    w = list(word)
    for i, f in zip(pos, flags):
        e, s, _ = w[i]
        w[i] = (e, s, f)
    return tuple(w)


def _one_sided_equal(lang, words: list, depth: int, side: str):
    fn = gamma_minus if side == "left" else gamma_plus
    ctx = [fn(lang, w, depth) for w in words]
    for c in ctx[1:]:
        if c != ctx[0]:
            diff = sorted(c ^ ctx[0])
            return False, (diff[0],)
    return True, None


def _end_symbols(cfg: Section8Config, e: str, sign: str, delta: int) -> list[tuple]:
    name = e if delta == 1 else cfg.kappa_inv(e)
    return [fsym(name, sign, f) for f in (1, -1)]


def _gamma_probe(lang: Section8Language, cfg: Section8Config, e: str, w: tuple, dm: int, dp: int) -> bool:
    """Is some flag choice of (e-(dm), e+(dp)) admissible around w?"""
    for u in _end_symbols(cfg, e, "-", dm):
        for v in _end_symbols(cfg, e, "+", dp):
            if lang.contains((u,) + w + (v,)):
                return True
    return False


def section8_words(cfg: Section8Config, M: int = 1, recipe: str = "stated"):
    """The doubled word b = b_- b° b_+ and the two positions whose flags are set.

    ``stated`` flips the positions named in the construction (1-based
    M- - 1 and 6J - 1 - M+).  ``parent`` flips the two marked positions of
    the block that has b_-'s block, b° and b_+'s block as its only children.
    """
    if recipe not in ("stated", "parent"):
        raise InvalidInput(f"unknown recipe {recipe!r}")
    q = next(v for v in cfg.vertices if cfg.out_edges(v))
    e = cfg.out_edges(q)[0]
    r = cfg.ends[e][1]
    c = _child(cfg, r, M)
    b0 = _block(cfg, e, (c, c, c))
    J2 = len(b0)
    m_minus = m_plus = len(c)
    b = b0[1:] + b0 + b0[:-1]
    if recipe == "stated":
        pos = (m_minus - 2, 3 * J2 - 2 - m_plus)
    else:
        pos = (J2 - 3, 2 * J2 - 1)
    return e, b, pos


def section8_c_witness(cfg: Section8Config, depth: int = 2, M: int = 1, recipe: str = "stated", max_depth: int | None = None) -> C8Witness:
    """Build the four flagged words and test the claimed context pattern.

    Depths ``depth..max_depth`` are tried; the first depth where everything
    holds is reported, otherwise the report at ``depth``.
    """
    lang = Section8Language(cfg)
    e, b, pos = section8_words(cfg, M, recipe)
    flags = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
    words = {d: _flipped(b, pos, d) for d in flags}
    admissible = {d: lang.contains(w) for d, w in words.items()}
    table = {}
    for d, w in words.items():
        for dd in flags:
            table[(d, dd)] = _gamma_probe(lang, cfg, e, w, *dd)
    pattern_ok = all(v == (d == dd) for (d, dd), v in table.items())
    first = None
    for D in range(depth, (max_depth or depth) + 1):
        ws = [words[d] for d in flags]
        le, lsep = _one_sided_equal(lang, ws, D, "left")
        re_, rsep = _one_sided_equal(lang, ws, D, "right")
        separated = tuple(
            (flags[i], flags[j])
            for i in range(len(ws))
            for j in range(i + 1, len(ws))
            if contexts_differ(lang, ws[i], ws[j], D) is not None
        )
        distinct = len(separated) == len(ws) * (len(ws) - 1) // 2
        rep = C8Witness(words, pos, D, admissible, le, re_, table, pattern_ok, distinct, lsep, rsep, recipe, separated)
        if first is None:
            first = rep
        if rep.ok:
            return rep
        # one-sided contexts that differ keep differing at larger depth (the
        # language is factorial and extendable), and the gamma pattern does
        # not depend on depth
        if not (le and re_) or (recipe == "stated" and not pattern_ok):
            break
    return first


# ----------------------------------------------------------------------
# registry


def build_examples() -> dict:
    """Named fixtures; R-graph presentations, sofic graphs and language oracles."""
    return {
        "dyck2": dyck_presentation(2),
        "dyck3": dyck_presentation(3),
        "motzkin2": motzkin(2),
        "motzkin3": motzkin(3),
        "markov_dyck": markov_dyck(),
        "markov_motzkin": markov_motzkin(),
        "sofic_left_not_right": left_not_right_sofic(),
        "full2": full_shift(2),
        "even": even_shift(),
        "sbi_doctored": doctored_sbi_fixture(),
        "d2_graph": d2_graph_example(False),
        "neg_g3": g3_violation(),
        "neg_g4": g4_violation(),
        "neg_g5": g5_violation(),
        "d2_graph_unit": d2_graph_example(True),
        "coded_0anbn": CodedLanguage(),
        "d3_pair": d3_conjugacy_pair(),
        "section8_d2": Section8Config.d2_base(),
    }


PRESENTATION_NAMES = ("dyck2", "dyck3", "motzkin2", "motzkin3", "markov_dyck", "markov_motzkin", "d2_graph", "d2_graph_unit")
NEGATIVE_NAMES = ("neg_g3", "neg_g4", "neg_g5")
SOFIC_NAMES = ("sofic_left_not_right", "full2", "even", "sbi_doctored")


def example_json(name: str) -> str:
    ex = build_examples()
    if name not in ex:
        raise InvalidInput(f"unknown example {name!r}; choose from {', '.join(sorted(ex))}")
    obj = ex[name]
    if isinstance(obj, (Presentation, SoficPresentation)):
        return obj.to_json()
    if isinstance(obj, Section8Config):
        return json.dumps(obj.to_dict())
    raise InvalidInput(f"example {name!r} is a language oracle and has no JSON form")
