"""Labeled-graph presentations over an R-graph semigroup.

A presentation is a finite strongly connected graph whose edges carry labels
in ``S- U {1_p} U S+``.  Its language is the set of non-empty paths whose
label product is non-zero.  This module validates the structural conditions
on such graphs, exposes their languages as :class:`LanguageOracle` objects and
implements bounded context calculators and witness searches that work for any
oracle.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Sequence

import networkx as nx

from .rgraph import (
    ZERO,
    InvalidInput,
    Kind,
    RGraph,
    Word,
    check_word,
    classify,
    left_unit,
    mul,
    right_unit,
)


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed its configured bound."""

    def __init__(self, what: str, bound: int):
        super().__init__(f"budget exceeded: {what} > {bound}")
        self.what = what
        self.bound = bound


class G1Violation(InvalidInput):
    pass


@dataclass(frozen=True, order=True)
class PEdge:
    id: int
    src: str
    dst: str
    label: Word
    name: str = ""


@dataclass(frozen=True)
class Presentation:
    rgraph: RGraph
    vertices: tuple[str, ...]
    edges: tuple[PEdge, ...]
    _by_id: dict = field(init=False, repr=False, compare=False, hash=False)
    _out: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))
        object.__setattr__(self, "_by_id", {e.id: e for e in self.edges})
        out = defaultdict(list)
        for e in self.edges:
            out[e.src].append(e)
        object.__setattr__(self, "_out", dict(out))

    def edge(self, eid: int) -> PEdge:
        try:
            return self._by_id[eid]
        except KeyError:
            raise InvalidInput(f"unknown edge id {eid}") from None

    def out_edges(self, v: str) -> list[PEdge]:
        return self._out.get(v, [])

    @property
    def alphabet(self) -> tuple[int, ...]:
        return tuple(e.id for e in self.edges)

    def symbol_name(self, eid: int) -> str:
        e = self.edge(eid)
        return e.name or str(eid)

    def format_word(self, word: Sequence[int]) -> str:
        return " ".join(self.symbol_name(s) for s in word)

    def to_dict(self) -> dict:
        def edge(e: PEdge) -> dict:
            d = {"id": e.id, "src": e.src, "dst": e.dst, "label": e.label.to_dict()}
            if e.name:
                d["name"] = e.name
            return d

        return {"rgraph": self.rgraph.to_dict(), "V": list(self.vertices), "edges": [edge(e) for e in self.edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "Presentation":
        try:
            g = RGraph.from_dict(d["rgraph"])
            edges = []
            for e in d["edges"]:
                lab = Word.from_dict(e["label"])
                check_word(lab, g)
                edges.append(PEdge(int(e["id"]), str(e["src"]), str(e["dst"]), lab, e.get("name", "")))
            return cls(g, tuple(str(v) for v in d["V"]), tuple(edges))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidInput):
                raise
            raise InvalidInput(f"malformed presentation JSON: {exc}") from exc


def identity_presentation(g: RGraph) -> Presentation:
    """V = P, one edge per generator, each labeled by itself."""
    edges = []
    k = 0
    for e in g.minus:
        edges.append(PEdge(k, e.q, e.r, g.gen_minus(e.id), e.name))
        k += 1
    for e in g.plus:
        edges.append(PEdge(k, e.r, e.q, g.gen_plus(e.id), e.name))
        k += 1
    return Presentation(g, g.vertices, tuple(edges))


def add_unit_loops(pres: Presentation, at: Iterable[str] | None = None, name: str = "1") -> Presentation:
    """Add a loop labeled ``1_p`` at each listed vertex whose class is ``p``.

    For identity presentations the vertex is its own class.
    """
    at = list(pres.vertices if at is None else at)
    cls_map = vertex_classes(pres)
    k = max((e.id for e in pres.edges), default=-1) + 1
    edges = list(pres.edges)
    for v in at:
        p = cls_map.get(v)
        if p is None:
            raise InvalidInput(f"vertex {v!r} has no class; cannot add a unit loop")
        edges.append(PEdge(k, v, v, Word((), p, ()), name if len(at) == 1 or len(pres.rgraph.vertices) == 1 else f"{name}_{p}"))
        k += 1
    return Presentation(pres.rgraph, pres.vertices, tuple(edges))


def motzkin_presentation(g: RGraph) -> Presentation:
    return add_unit_loops(identity_presentation(g))


# ----------------------------------------------------------------------
# structure checks


def label_letters(label: Word) -> list[tuple[str, object]]:
    """Atomic letters of a (G1) label: ('+', id), ('1', p) or ('-', id)."""
    if not label.plus and not label.minus:
        return [("1", label.idem)]
    return [("+", x) for x in label.plus] + [("-", x) for x in label.minus]


def check_G1(pres: Presentation) -> list[int]:
    """Ids of edges whose label is Mixed."""
    return [e.id for e in pres.edges if classify(e.label).kind is Kind.MIXED]


def is_strongly_connected(pres: Presentation) -> bool:
    dg = nx.MultiDiGraph()
    dg.add_nodes_from(pres.vertices)
    dg.add_edges_from((e.src, e.dst) for e in pres.edges)
    return len(pres.vertices) > 0 and nx.is_strongly_connected(dg)


@dataclass(frozen=True)
class AtomEdge:
    src: object
    dst: object
    letter: tuple[str, object]


@dataclass(frozen=True)
class AtomGraph:
    vertices: tuple
    edges: tuple[AtomEdge, ...]


def atomize(pres: Presentation) -> AtomGraph:
    """Split composite labels into chains of single letters through fresh vertices.

    The result serves reachability questions only; its letters are generators
    or units, never composite products.
    """
    bad = check_G1(pres)
    if bad:
        raise G1Violation(f"(G1) violated: mixed labels on edges {bad}")
    verts = list(pres.vertices)
    out = []
    for e in pres.edges:
        letters = label_letters(e.label)
        chain = [e.src] + [("fresh", e.id, i) for i in range(1, len(letters))] + [e.dst]
        verts += chain[1:-1]
        for i, let in enumerate(letters):
            out.append(AtomEdge(chain[i], chain[i + 1], let))
    return AtomGraph(tuple(verts), tuple(out))


@dataclass(frozen=True)
class NeutralReach:
    """``pairs[p]`` holds (U, W) such that a non-empty path U -> W reduces to 1_p."""

    pairs: dict

    def has(self, p: str, u, w) -> bool:
        return (u, w) in self.pairs.get(p, ())


def neutral_reachability(pres: Presentation, atoms: AtomGraph | None = None) -> NeutralReach:
    """Least fixpoint of the base, compose and bracket rules."""
    g = pres.rgraph
    atoms = atoms or atomize(pres)
    D: dict[str, set] = {p: set() for p in g.vertices}
    minus_edges = [a for a in atoms.edges if a.letter[0] == "-"]
    plus_by_src = defaultdict(list)
    for a in atoms.edges:
        if a.letter[0] == "1":
            D[a.letter[1]].add((a.src, a.dst))
        elif a.letter[0] == "+":
            plus_by_src[a.src].append(a)
    changed = True
    while changed:
        changed = False
        for a in minus_edges:
            q, r = g.minus_class(a.letter[1])
            inner = [(a.dst, a.dst)] + [pw for pw in D[r] if pw[0] == a.dst]
            for _, w1 in inner:
                for b in plus_by_src.get(w1, ()):
                    if g.related(a.letter[1], b.letter[1]) and (a.src, b.dst) not in D[q]:
                        D[q].add((a.src, b.dst))
                        changed = True
        for p, rel in D.items():
            succ = defaultdict(set)
            for u, w in rel:
                succ[u].add(w)
            new = {(u, x) for u, w in rel for x in succ.get(w, ())} - rel
            if new:
                rel |= new
                changed = True
    return NeutralReach({p: frozenset(s) for p, s in D.items()})


def vertex_classes(pres: Presentation, reach: NeutralReach | None = None) -> dict[str, str | None]:
    """Map each vertex to the class p with a 1_p cycle through it (None if none or several)."""
    reach = reach or neutral_reachability(pres)
    out: dict[str, str | None] = {}
    for v in pres.vertices:
        ps = [p for p in pres.rgraph.vertices if reach.has(p, v, v)]
        out[v] = ps[0] if len(ps) == 1 else None
    return out


@dataclass
class GReport:
    G1: list = field(default_factory=list)
    G2: list = field(default_factory=list)
    G3: list = field(default_factory=list)
    G4: list = field(default_factory=list)
    G5: list = field(default_factory=list)
    strongly_connected: bool = True
    classes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.strongly_connected and not (self.G1 or self.G2 or self.G3 or self.G4 or self.G5)

    def failed_rules(self) -> list[str]:
        out = [r for r in ("G1", "G2", "G3", "G4", "G5") if getattr(self, r)]
        if not self.strongly_connected:
            out.insert(0, "strong-connectivity")
        return out

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "failed": self.failed_rules(),
            "violations": {r: [list(map(str, x)) if isinstance(x, tuple) else str(x) for x in getattr(self, r)] for r in ("G1", "G2", "G3", "G4", "G5")},
            "classes": {str(k): v for k, v in sorted(self.classes.items())},
        }


def check_G2_to_G5(pres: Presentation) -> GReport:
    """Decide (G1)-(G5) exactly.

    (G5) is decided by class-internal completeness of neutral reachability plus
    per-generator realizability through unit-reducing flanks.
    """
    rep = GReport()
    rep.G1 = check_G1(pres)
    if rep.G1:
        raise G1Violation(f"(G1) violated: mixed labels on edges {rep.G1}")
    rep.strongly_connected = is_strongly_connected(pres)
    g = pres.rgraph
    atoms = atomize(pres)
    reach = neutral_reachability(pres, atoms)
    vp = {p: [v for v in pres.vertices if reach.has(p, v, v)] for p in g.vertices}
    rep.G2 = [p for p in g.vertices if not vp[p]]
    member = defaultdict(list)
    for p, vs in vp.items():
        for v in vs:
            member[v].append(p)
    rep.G3 = [v for v in pres.vertices if len(member[v]) != 1]
    rep.classes = {v: (member[v][0] if len(member[v]) == 1 else None) for v in pres.vertices}
    for p, vs in vp.items():
        unit = Word((), p, ())
        for v in vs:
            for e in pres.edges:
                if e.src == v and mul(unit, e.label, g) is ZERO:
                    rep.G4.append(("leave", v, e.id))
                if e.dst == v and mul(e.label, unit, g) is ZERO:
                    rep.G4.append(("enter", v, e.id))
    # (G5, i): every U, W of one class are joined by a path with label 1_p
    for p, vs in vp.items():
        for u, w in product(vs, repeat=2):
            if not reach.has(p, u, w):
                rep.G5.append(("unit-path", p, u, w))

    # (G5, ii): each generator is realized between its unit classes
    def pad_from(p, starts):
        return set(starts) | {w for (u, w) in reach.pairs[p] if u in starts}

    def pad_to(p, ends):
        return set(ends) | {u for (u, w) in reach.pairs[p] if w in ends}

    for sign, edges in (("-", g.minus), ("+", g.plus)):
        for ge in edges:
            lu, ru = (ge.q, ge.r) if sign == "-" else (ge.r, ge.q)
            left = pad_from(lu, vp[lu])
            right = pad_to(ru, vp[ru])
            ok = any(
                a.letter == (sign, ge.id) and a.src in left and a.dst in right for a in atoms.edges
            )
            if not ok:
                rep.G5.append(("generator", sign, ge.id))
    return rep


# ----------------------------------------------------------------------
# languages


class LanguageOracle:
    """Factorial extendable language given by a membership test.

    Subclasses may provide an incremental ``start``/``step`` interface for
    faster right extension, and exact one-step omega tests.
    """

    alphabet: tuple = ()
    exact: bool = False

    def contains(self, word: Sequence) -> bool:  # pragma: no cover - abstract
        raise NotImplementedError

    def start(self, word: Sequence):
        return tuple(word) if self.contains(word) else None

    def step(self, state, sym):
        w = state + (sym,)
        return w if self.contains(w) else None

    def successors(self, state):
        """Pairs ``(symbol, next state)`` in alphabet order; ``state`` None means empty word."""
        for s in self.alphabet:
            nxt = self.start((s,)) if state is None else self.step(state, s)
            if nxt is not None:
                yield s, nxt

    def words(self, n: int, budget: int | None = None) -> list[tuple]:
        """All words of length ``n`` in lexicographic order."""
        out: list[tuple] = []
        self._grow((), None, n, out, budget)
        return out

    def _grow(self, prefix, state, n, out, budget):
        if len(prefix) == n:
            out.append(prefix)
            if budget is not None and len(out) > budget:
                raise BudgetExceeded("words", budget)
            return
        for s, st in self.successors(state):
            self._grow(prefix + (s,), st, n, out, budget)

    def extend_right(self, word: Sequence, n: int) -> list[tuple]:
        word = tuple(word)
        st = self.start(word) if word else None
        if word and st is None:
            return []
        out: list[tuple] = []

        def rec(suffix, state):
            if len(suffix) == n:
                out.append(suffix)
                return
            for s, nxt in self.successors(state):
                rec(suffix + (s,), nxt)

        rec((), st)
        return out

    def extend_left(self, word: Sequence, n: int) -> list[tuple]:
        word = tuple(word)
        if word and not self.contains(word):
            return []
        out: list[tuple] = []

        def rec(prefix):
            if len(prefix) == n:
                out.append(prefix)
                return
            for s in self.alphabet:
                w = (s,) + prefix
                if self.contains(w + word):
                    rec(w)

        rec(())
        return sorted(out)

    # omega tests; bounded by default
    def omega_plus_ok(self, a: Sequence, w: Sequence, past_bound: int) -> bool:
        """Is ``w`` a future of ``a`` compatible with every length-``past_bound`` past?"""
        a, w = tuple(a), tuple(w)
        if not self.contains(a + w):
            return False
        return all(self.contains(x + a + w) for x in self.extend_left(a, past_bound))

    def omega_minus_ok(self, a: Sequence, w: Sequence, future_bound: int) -> bool:
        a, w = tuple(a), tuple(w)
        if not self.contains(w + a):
            return False
        return all(self.contains(w + a + y) for y in self.extend_right(a, future_bound))

    def context_key(self, word: Sequence):
        """Exact invariant with equal keys implying equal contexts, or None."""
        return None

    def format_word(self, word: Sequence) -> str:
        return " ".join(map(str, word))


class PresentationLanguage(LanguageOracle):
    """Language of a presentation: paths with non-zero label product."""

    exact = False

    def __init__(self, pres: Presentation):
        self.pres = pres
        self.alphabet = pres.alphabet
        self._g = pres.rgraph

    def start(self, word):
        state = None
        for s in word:
            state = self.step(state, s)
            if state is None:
                return None
        return state

    def step(self, state, sym):
        e = self.pres._by_id.get(sym)
        if e is None:
            raise InvalidInput(f"unknown edge id {sym}")
        if state is None:
            return (e.src, e.dst, e.label)
        src, v, lab = state
        if e.src != v:
            return None
        nl = mul(lab, e.label, self._g)
        if nl is ZERO:
            return None
        return (src, e.dst, nl)

    def contains(self, word) -> bool:
        return bool(word) and self.start(word) is not None

    def label(self, word):
        st = self.start(word)
        return ZERO if st is None else st[2]

    def context_key(self, word):
        st = self.start(word)
        return None if st is None else st

    def plus_key(self, word):
        """Exact invariant of the right context: end vertex and the label's minus block."""
        st = self.start(word)
        if st is None:
            return None
        return (st[1], right_unit(st[2], self._g), st[2].minus)

    def minus_key(self, word):
        st = self.start(word)
        if st is None:
            return None
        return (st[0], left_unit(st[2], self._g), st[2].plus)

    def format_word(self, word) -> str:
        return self.pres.format_word(word)


def is_admissible(pres: Presentation, word: Sequence[int]) -> bool:
    if not word:
        raise InvalidInput("admissible words are non-empty")
    for s in word:
        pres.edge(s)
    return PresentationLanguage(pres).contains(tuple(word))


def enumerate_language(pres_or_oracle, n: int, budget: int = 200_000) -> list[tuple]:
    """All admissible words of length 1..n, ordered by (length, word)."""
    if n < 1:
        raise InvalidInput("n must be >= 1")
    lang = pres_or_oracle if isinstance(pres_or_oracle, LanguageOracle) else PresentationLanguage(pres_or_oracle)
    out: list[tuple] = []
    for k in range(1, n + 1):
        out += lang.words(k, budget=budget - len(out))
    return out


# ----------------------------------------------------------------------
# contexts


@dataclass(frozen=True)
class Contexts:
    depth: int
    past_bound: int
    gamma_minus: frozenset
    gamma_plus: frozenset
    gamma: frozenset
    omega_plus: frozenset
    omega_minus: frozenset


def gamma_plus(lang: LanguageOracle, a, n: int) -> frozenset:
    return frozenset(lang.extend_right(a, n)) if lang.contains(tuple(a)) else frozenset()


def gamma_minus(lang: LanguageOracle, a, n: int) -> frozenset:
    return frozenset(lang.extend_left(a, n)) if lang.contains(tuple(a)) else frozenset()


def gamma_two_sided(lang: LanguageOracle, a, n: int) -> frozenset:
    a = tuple(a)
    if not lang.contains(a):
        return frozenset()
    return frozenset((x, y) for x in lang.extend_left(a, n) for y in lang.extend_right(x + a, n))


def omega_plus_set(lang: LanguageOracle, a, n: int, past_bound: int) -> frozenset:
    """Futures of length n compatible with every admissible past of length ``past_bound``."""
    a = tuple(a)
    fut = gamma_plus(lang, a, n)
    for x in lang.extend_left(a, past_bound):
        fut = fut & frozenset(lang.extend_right(x + a, n))
        if not fut:
            break
    return fut


def omega_minus_set(lang: LanguageOracle, a, n: int, future_bound: int) -> frozenset:
    a = tuple(a)
    past = gamma_minus(lang, a, n)
    for y in lang.extend_right(a, future_bound):
        past = past & frozenset(lang.extend_left(a + y, n))
        if not past:
            break
    return past


def bounded_contexts(lang_or_pres, a, depth: int, past_bound: int, budget: int = 2_000_000) -> Contexts:
    lang = lang_or_pres if isinstance(lang_or_pres, LanguageOracle) else PresentationLanguage(lang_or_pres)
    size = len(lang.alphabet) ** (2 * depth)
    if size > budget:
        raise BudgetExceeded("two-sided context candidates", budget)
    return Contexts(
        depth,
        past_bound,
        gamma_minus(lang, a, depth),
        gamma_plus(lang, a, depth),
        gamma_two_sided(lang, a, depth),
        omega_plus_set(lang, a, depth, past_bound),
        omega_minus_set(lang, a, depth, past_bound),
    )


# ----------------------------------------------------------------------
# block codes


class HigherBlockLanguage(LanguageOracle):
    """N-block recoding: symbols are admissible N-words, consecutive ones overlap."""

    def __init__(self, base: LanguageOracle, n: int):
        if n < 1:
            raise InvalidInput("block length must be >= 1")
        self.base = base
        self.n = n
        self.alphabet = tuple(base.words(n))
        self.exact = base.exact

    def unblock(self, word):
        word = tuple(word)
        if not word:
            return ()
        for x, y in zip(word, word[1:]):
            if x[1:] != y[:-1]:
                return None
        return tuple(word[0]) + tuple(w[-1] for w in word[1:])

    def contains(self, word) -> bool:
        u = self.unblock(word)
        return bool(word) and u is not None and self.base.contains(u)


def higher_block(base, n: int) -> LanguageOracle:
    lang = base if isinstance(base, LanguageOracle) else PresentationLanguage(base)
    if n == 1:
        return lang
    return HigherBlockLanguage(lang, n)


class BlockImageLanguage(LanguageOracle):
    """Image of a language under a sliding block map with window [-L, L]."""

    def __init__(self, base: LanguageOracle, L: int, phi: Callable | dict, alphabet: Sequence | None = None):
        self.base = base
        self.L = L
        self._phi = phi if callable(phi) else (lambda w, _d=phi: _d[tuple(w)])
        windows = base.words(2 * L + 1)
        imgs = {}
        for w in windows:
            try:
                imgs[w] = self._phi(w)
            except KeyError:
                raise InvalidInput(f"block map undefined on window {w}") from None
        self._img = imgs
        self.alphabet = tuple(alphabet) if alphabet is not None else tuple(sorted(set(imgs.values()), key=repr))
        self._by_img = defaultdict(list)
        for w, s in imgs.items():
            self._by_img[s].append(w)
        self.exact = base.exact

    def contains(self, word) -> bool:
        word = tuple(word)
        if not word:
            return False
        frontier = [w for w in self._by_img.get(word[0], ()) if self.base.contains(w)]
        for s in word[1:]:
            nxt = set()
            for pre in frontier:
                for w in self._by_img.get(s, ()):
                    if w[:-1] == pre[1:] and self.base.contains(pre + (w[-1],)):
                        nxt.add(w)
            frontier = list(nxt)
            if not frontier:
                return False
        return bool(frontier)

    def image(self, word):
        word = tuple(word)
        k = 2 * self.L + 1
        return tuple(self._img[word[i : i + k]] for i in range(len(word) - k + 1))


def apply_block_map(base, L: int, phi, alphabet=None) -> BlockImageLanguage:
    lang = base if isinstance(base, LanguageOracle) else PresentationLanguage(base)
    return BlockImageLanguage(lang, L, phi, alphabet)


# ----------------------------------------------------------------------
# witness searches


@dataclass(frozen=True)
class WitnessReport:
    prop: str
    a: tuple | None
    b: tuple | None
    frames: tuple | None
    depth: int
    verdict: str
    checked_pairs: int = 0
    detail: str = ""

    @property
    def found(self) -> bool:
        return self.a is not None

    def to_dict(self, fmt: Callable | None = None) -> dict:
        f = fmt or (lambda w: list(w) if w is not None else None)
        return {
            "property": self.prop,
            "a": f(self.a) if self.a is not None else None,
            "b": f(self.b) if self.b is not None else None,
            "frames": [f(x) for x in self.frames] if self.frames else None,
            "depth": self.depth,
            "verdict": self.verdict,
            "checked_pairs": self.checked_pairs,
        }


def _pair_order(words):
    ws = sorted(set(words), key=lambda w: (len(w), w))
    return ws


def contexts_differ(lang: LanguageOracle, a, b, depth: int) -> tuple | None:
    """A pair (x, y) of length-``depth`` extensions accepted around exactly one of a, b."""
    a, b = tuple(a), tuple(b)
    xs = sorted(set(lang.extend_left(a, depth)) | set(lang.extend_left(b, depth)))
    for x in xs:
        ya = set(lang.extend_right(x + a, depth)) if lang.contains(x + a) else set()
        yb = set(lang.extend_right(x + b, depth)) if lang.contains(x + b) else set()
        diff = ya ^ yb
        if diff:
            return (x, min(diff))
    return None


def property_B_witness_search(
    lang_or_pres,
    M: int,
    R: int,
    depth: int,
    max_len: int,
    past_bound: int = 2,
    frame_depth: int | None = None,
    candidates: Iterable | None = None,
) -> WitnessReport:
    """Search pairs (a, b) refuting property (B) for parameter M at bounded depth.

    Framed contexts are compared through an exact key when the oracle has one,
    otherwise at ``frame_depth`` (default: the framed word length, so that
    the comparison sees the whole framed word).
    """
    lang = lang_or_pres if isinstance(lang_or_pres, LanguageOracle) else PresentationLanguage(lang_or_pres)
    words = _pair_order(candidates) if candidates is not None else [
        w for w in enumerate_language(lang, max_len) if len(w) >= max(M, 1)
    ]
    groups = defaultdict(list)
    for w in words:
        groups[(w[:M], w[len(w) - M :] if M else ())].append(w)
    sig = {w: (gamma_minus(lang, w, depth), gamma_two_sided(lang, w, depth)) for w in words}
    checked = 0
    best = None
    for key in sorted(groups, key=repr):
        ws = groups[key]
        for i, a in enumerate(ws):
            for b in ws[i + 1 :]:
                checked += 1
                if sig[a] == sig[b]:
                    continue
                if best is not None and (len(a) + len(b), a, b) >= best[0]:
                    continue
                frames = _common_frames(lang, a, b, R, past_bound)
                for xm, xp in frames:
                    fa, fb = xm + a + xp, xm + b + xp
                    ka, kb = lang.context_key(fa), lang.context_key(fb)
                    if ka is not None and kb is not None:
                        same = ka == kb
                    else:
                        fd = frame_depth if frame_depth is not None else max(len(fa), len(fb))
                        same = contexts_differ(lang, fa, fb, fd) is None
                    if same:
                        best = ((len(a) + len(b), a, b), (xm, xp))
                        break
    if best is None:
        return WitnessReport("B", None, None, None, depth, f"no witness up to length {max_len}", checked)
    (_, a, b), frames = best
    return WitnessReport("B", a, b, frames, depth, "witness: property (B) fails for this parameter", checked)


def _common_frames(lang, a, b, R, past_bound):
    if R == 0:
        return [((), ())]
    pa = omega_minus_set(lang, a, R, past_bound) & omega_minus_set(lang, b, R, past_bound)
    fa = omega_plus_set(lang, a, R, past_bound) & omega_plus_set(lang, b, R, past_bound)
    return [(x, y) for x in sorted(pa) for y in sorted(fa)]


def property_c_witness_search(
    lang_or_pres,
    Q: int,
    depth: int,
    max_len: int = 4,
    past_bound: int = 2,
    candidates: Iterable | None = None,
    probes: Iterable | None = None,
) -> WitnessReport:
    """Search pairs (a, b) refuting property (c) for parameter Q at bounded depth.

    Pairs must share their first and last Q symbols, have intersecting bounded
    omega sets on both sides and equal one-sided contexts at ``depth``; a
    witness additionally has distinct two-sided contexts.  ``probes`` lists
    (x, y) pairs tried first when separating two-sided contexts.
    """
    lang = lang_or_pres if isinstance(lang_or_pres, LanguageOracle) else PresentationLanguage(lang_or_pres)
    words = _pair_order(candidates) if candidates is not None else [
        w for w in enumerate_language(lang, max_len) if len(w) >= max(Q, 1)
    ]
    probes = list(probes or ())
    groups = defaultdict(list)
    for w in words:
        groups[(w[:Q], w[len(w) - Q :] if Q else ())].append(w)
    one_sided = {w: (gamma_minus(lang, w, depth), gamma_plus(lang, w, depth)) for w in words}
    checked = 0
    found = []
    for key in sorted(groups, key=repr):
        ws = groups[key]
        for i, a in enumerate(ws):
            for b in ws[i + 1 :]:
                checked += 1
                if one_sided[a] != one_sided[b]:
                    continue
                if not (omega_minus_set(lang, a, 1, past_bound) & omega_minus_set(lang, b, 1, past_bound)):
                    continue
                if not (omega_plus_set(lang, a, 1, past_bound) & omega_plus_set(lang, b, 1, past_bound)):
                    continue
                sep = None
                for x, y in probes:
                    if lang.contains(tuple(x) + a + tuple(y)) != lang.contains(tuple(x) + b + tuple(y)):
                        sep = (tuple(x), tuple(y))
                        break
                if sep is None:
                    sep = contexts_differ(lang, a, b, depth)
                if sep is not None:
                    found.append(((len(a) + len(b), a, b), sep))
    if not found:
        return WitnessReport("c", None, None, None, depth, f"no witness among {len(words)} words", checked)
    (_, a, b), sep = min(found)
    return WitnessReport("c", a, b, sep, depth, "witness: property (c) fails for this parameter", checked)
