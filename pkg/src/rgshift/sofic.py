"""Sofic shifts: follower sets, instantaneity and instantaneous recodings.

A sofic shift is given by a finite labeled graph; its points are the label
sequences of bi-infinite paths.  All checks here are exact for such inputs.
The RI/BI mapping searches also accept any :class:`LanguageOracle`, in which
case the past/future compatibility tests are bounded and reported as such.
"""

from __future__ import annotations

import json
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

import networkx as nx

from .presentation import BudgetExceeded, LanguageOracle
from .rgraph import InvalidInput


# ----------------------------------------------------------------------
# presentations


@dataclass(frozen=True, order=True)
class SEdge:
    src: Hashable
    dst: Hashable
    symbol: Hashable


def _sym_to_json(s):
    if isinstance(s, tuple):
        return [_sym_to_json(x) for x in s]
    return s


def _sym_from_json(s):
    if isinstance(s, list):
        return tuple(_sym_from_json(x) for x in s)
    return s


def _key(x):
    return (type(x).__name__, repr(x))


@dataclass(frozen=True)
class SoficPresentation:
    states: tuple
    edges: tuple

    def __post_init__(self) -> None:
        st = set(self.states)
        if len(st) != len(self.states):
            raise InvalidInput("duplicate state")
        out: dict = defaultdict(lambda: defaultdict(set))
        rin: dict = defaultdict(lambda: defaultdict(set))
        by_sym: dict = defaultdict(set)
        for e in self.edges:
            if e.src not in st or e.dst not in st:
                raise InvalidInput(f"edge {e} uses an unknown state")
            out[e.src][e.symbol].add(e.dst)
            rin[e.dst][e.symbol].add(e.src)
            by_sym[e.symbol].add(e.dst)
        object.__setattr__(self, "_out", {q: {a: frozenset(v) for a, v in d.items()} for q, d in out.items()})
        object.__setattr__(self, "_in", {q: {a: frozenset(v) for a, v in d.items()} for q, d in rin.items()})
        object.__setattr__(self, "_by_sym", {a: frozenset(v) for a, v in by_sym.items()})
        src_sym: dict = defaultdict(set)
        for e in self.edges:
            src_sym[e.symbol].add(e.src)
        object.__setattr__(self, "_src_sym", {a: frozenset(v) for a, v in src_sym.items()})
        object.__setattr__(self, "_symbols", tuple(sorted(by_sym, key=_key)))
        object.__setattr__(self, "_all", frozenset(self.states))

    @property
    def symbols(self) -> tuple:
        return self._symbols

    def out_symbols(self, S: Iterable) -> set:
        syms: set = set()
        for q in S:
            syms.update(self._out.get(q, ()))
        return syms

    def step(self, S: Iterable, sym) -> frozenset:
        if S is self._all or S == self._all:
            return self._by_sym.get(sym, frozenset())
        out: set = set()
        for q in S:
            d = self._out.get(q)
            if d:
                t = d.get(sym)
                if t:
                    out |= t
        return frozenset(out)

    def moves(self, S: Iterable) -> dict:
        """Nonempty successor sets of S, keyed by symbol."""
        acc: dict = defaultdict(set)
        for q in S:
            for a, t in self._out.get(q, {}).items():
                acc[a] |= t
        return {a: frozenset(t) for a, t in acc.items()}

    def run(self, S: Iterable, word: Sequence) -> frozenset:
        S = S if isinstance(S, frozenset) else frozenset(S)
        for s in word:
            if not S:
                break
            S = self.step(S, s)
        return S

    def back(self, S: Iterable, word: Sequence) -> frozenset:
        S = frozenset(S)
        for s in reversed(tuple(word)):
            if not S:
                break
            out: set = set()
            for q in S:
                t = self._in.get(q, {}).get(s)
                if t:
                    out |= t
            S = frozenset(out)
        return S

    def reversed(self) -> SoficPresentation:
        return SoficPresentation(self.states, tuple(SEdge(e.dst, e.src, e.symbol) for e in self.edges))

    def is_essential(self) -> bool:
        outs = {e.src for e in self.edges}
        ins = {e.dst for e in self.edges}
        return all(q in outs and q in ins for q in self.states)

    def trim(self) -> SoficPresentation:
        """Largest essential subgraph."""
        states = set(self.states)
        edges = list(self.edges)
        while True:
            outs = {e.src for e in edges}
            ins = {e.dst for e in edges}
            keep = {q for q in states if q in outs and q in ins}
            if keep == states:
                break
            states = keep
            edges = [e for e in edges if e.src in states and e.dst in states]
        order = [q for q in self.states if q in states]
        return SoficPresentation(tuple(order), tuple(sorted(edges, key=lambda e: (_key(e.src), _key(e.dst), _key(e.symbol)))))

    def to_dict(self) -> dict:
        return {
            "states": [_sym_to_json(q) for q in self.states],
            "edges": [{"from": _sym_to_json(e.src), "to": _sym_to_json(e.dst), "symbol": _sym_to_json(e.symbol)} for e in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> SoficPresentation:
        try:
            states = tuple(_sym_from_json(q) for q in d["states"])
            edges = tuple(SEdge(_sym_from_json(e["from"]), _sym_from_json(e["to"]), _sym_from_json(e["symbol"])) for e in d["edges"])
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed sofic presentation: {exc}") from None
        return cls(states, edges)

    @classmethod
    def from_json(cls, text: str) -> SoficPresentation:
        return cls.from_dict(json.loads(text))


def sofic_from_edges(edges: Iterable[tuple]) -> SoficPresentation:
    es = tuple(SEdge(*e) for e in edges)
    states = []
    for e in es:
        for q in (e.src, e.dst):
            if q not in states:
                states.append(q)
    return SoficPresentation(tuple(states), es)


def require_essential(sp: SoficPresentation) -> None:
    if not sp.is_essential():
        raise InvalidInput("presentation is not essential (some state lacks an in- or out-edge); trim it first")


# ----------------------------------------------------------------------
# follower family


def _language_classes(sp: SoficPresentation, seeds: Iterable[frozenset]) -> dict:
    """Partition the subsets reachable from ``seeds`` by their follower language."""
    seen = set()
    todo = deque(s for s in seeds if s)
    succ: dict = {}
    while todo:
        S = todo.popleft()
        if S in seen:
            continue
        seen.add(S)
        mv = sp.moves(S)
        succ[S] = mv
        for T in mv.values():
            if T not in seen:
                todo.append(T)
    nodes = list(succ)
    block = {S: 0 for S in nodes}
    nblocks = 1
    while True:
        sig = {S: (block[S], frozenset((a, block[T]) for a, T in succ[S].items())) for S in nodes}
        ids: dict = {}
        new = {}
        for S in nodes:
            new[S] = ids.setdefault(sig[S], len(ids))
        if len(ids) == nblocks:
            break
        block, nblocks = new, len(ids)
    # deterministic numbering: by the smallest member subset of each block
    rep: dict = {}
    for S in nodes:
        k = sorted(map(_key, S))
        b = block[S]
        if b not in rep or k < rep[b]:
            rep[b] = k
    order = {b: i for i, b in enumerate(sorted(rep, key=lambda b: rep[b]))}
    return {S: order[block[S]] for S in nodes}


def _bits(sp: SoficPresentation):
    idx = {q: i for i, q in enumerate(sp.states)}
    gens = {}
    for a in sp.symbols:
        rows = [0] * len(sp.states)
        for e in sp.edges:
            if e.symbol == a:
                rows[idx[e.src]] |= 1 << idx[e.dst]
        gens[a] = tuple(rows)
    return idx, gens


def _compose(m, g):
    out = []
    for r in m:
        acc = 0
        j = 0
        while r:
            if r & 1:
                acc |= g[j]
            r >>= 1
            j += 1
        out.append(acc)
    return tuple(out)


def _family_matrix(sp: SoficPresentation, budget: int) -> list[frozenset]:
    """Column supports of transition matrices that recur under left multiplication.

    A left-infinite word ending in ``v`` with matrix sequence passing through
    ``m`` infinitely often has follower states ``colsupp(m)``; every such ``m``
    lies on a cycle of the left-multiplication graph and conversely.
    """
    idx, gens = _bits(sp)
    seen = set()
    todo = deque(g for g in gens.values() if any(g))
    while todo:
        m = todo.popleft()
        if m in seen:
            continue
        seen.add(m)
        if len(seen) > budget:
            raise BudgetExceeded("transition matrices", budget)
        for g in gens.values():
            p = _compose(m, g)
            if any(p) and p not in seen:
                todo.append(p)
    G = nx.DiGraph()
    G.add_nodes_from(seen)
    for m in seen:
        for g in gens.values():
            p = _compose(g, m)
            if any(p):
                G.add_edge(m, p)
    rec = set()
    for comp in nx.strongly_connected_components(G):
        if len(comp) > 1 or any(G.has_edge(m, m) for m in comp):
            rec |= comp
    out = set()
    for m in rec:
        col = 0
        for r in m:
            col |= r
        out.add(frozenset(q for q, i in idx.items() if col >> i & 1))
    return sorted(out, key=lambda S: sorted(map(_key, S)))


def _family_recurrent(sp: SoficPresentation) -> list[frozenset]:
    """Recurrent states of the subset automaton started at all states, closed forward."""
    start = frozenset(sp.states)
    G = nx.DiGraph()
    todo = deque([start])
    seen = {start}
    while todo:
        S = todo.popleft()
        G.add_node(S)
        for T in sp.moves(S).values():
            G.add_edge(S, T)
            if T not in seen:
                seen.add(T)
                todo.append(T)
    rec = set()
    for comp in nx.strongly_connected_components(G):
        if len(comp) > 1 or any(G.has_edge(S, S) for S in comp):
            rec |= comp
    closed = set(rec)
    todo = deque(rec)
    while todo:
        for T in G.successors(todo.popleft()):
            if T not in closed:
                closed.add(T)
                todo.append(T)
    return sorted(closed, key=lambda S: sorted(map(_key, S)))


@dataclass
class FollowerFamily:
    """Follower sets of left-infinite pasts, one state subset per language class."""

    sp: SoficPresentation
    sets: tuple
    method: str
    _cls: dict = field(repr=False, default_factory=dict)
    _act: dict = field(repr=False, default_factory=dict)

    def __len__(self) -> int:
        return len(self.sets)

    def class_of(self, S: frozenset) -> int | None:
        if not S:
            return None
        return self._cls[S]

    def domain(self, word: Sequence) -> list[int]:
        return [i for i, S in enumerate(self.sets) if self.sp.run(S, word)]

    def act(self, word: Sequence) -> tuple:
        """``tau_word`` as a tuple: entry i is the image class of class i, or -1."""
        word = tuple(word)
        hit = self._act.get(word)
        if hit is not None:
            return hit
        if not word:
            res = tuple(range(len(self.sets)))
        else:
            prev = self.act(word[:-1])
            one = self._one(word[-1])
            res = tuple(one[j] if j >= 0 else -1 for j in prev)
        if len(self._act) < 200_000:
            self._act[word] = res
        return res

    def _one(self, sym) -> tuple:
        key = ("sym", sym)
        hit = self._act.get(key)
        if hit is None:
            out = []
            for S in self.sets:
                T = self.sp.step(S, sym)
                out.append(self._cls[T] if T else -1)
            hit = tuple(out)
            self._act[key] = hit
        return hit

    def tau(self, word: Sequence, i: int) -> int | None:
        j = self.act(word)[i]
        return None if j < 0 else j

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "sets": [sorted((_sym_to_json(q) for q in S), key=repr) for S in self.sets],
        }


MATRIX_MAX_STATES = 40


def follower_family(sp: SoficPresentation, method: str = "auto", budget: int = 50_000) -> FollowerFamily:
    """``method`` is ``matrix`` (exact), ``recurrent`` (subset automaton) or ``auto``.

    ``auto`` uses matrices for small graphs and falls back to the subset
    automaton when the graph or the matrix semigroup is large.
    """
    require_essential(sp)
    if method == "auto":
        used = "recurrent"
        if len(sp.states) <= MATRIX_MAX_STATES:
            try:
                subsets, used = _family_matrix(sp, budget), "matrix"
            except BudgetExceeded:
                pass
        if used == "recurrent":
            subsets = _family_recurrent(sp)
    elif method == "matrix":
        subsets, used = _family_matrix(sp, budget), "matrix"
    elif method == "recurrent":
        subsets, used = _family_recurrent(sp), "recurrent"
    else:
        raise InvalidInput(f"unknown family method {method!r}")
    cls = _language_classes(sp, subsets)
    reps: dict = {}
    for S in subsets:
        c = cls[S]
        if c not in reps or sorted(map(_key, S)) < sorted(map(_key, reps[c])):
            reps[c] = S
    order = sorted(reps.values(), key=lambda S: (len(S), sorted(map(_key, S))))
    renum = {cls[S]: i for i, S in enumerate(order)}
    missing = [S for S, c in cls.items() if c not in renum]
    if missing:
        raise RuntimeError("follower family is not closed under the transition maps")
    full = {S: renum[c] for S, c in cls.items()}
    return FollowerFamily(sp, tuple(order), used, full)


def family_signature(ff: FollowerFamily) -> frozenset:
    """Family as a set of follower languages, comparable across methods."""
    cls = _language_classes(ff.sp, ff.sets)
    return frozenset(cls[S] for S in ff.sets), len(ff.sets)


# ----------------------------------------------------------------------
# language oracle


class SoficLanguage(LanguageOracle):
    """Language of an essential sofic presentation; omega tests are exact."""

    exact = True

    def __init__(self, sp: SoficPresentation):
        require_essential(sp)
        self.sp = sp
        self.alphabet = sp.symbols
        self._all = frozenset(sp.states)
        self._ff: FollowerFamily | None = None
        self._pf: FollowerFamily | None = None
        self._idx: dict = {}

    @property
    def family(self) -> FollowerFamily:
        if self._ff is None:
            self._ff = follower_family(self.sp)
        return self._ff

    @property
    def past_family(self) -> FollowerFamily:
        if self._pf is None:
            self._pf = follower_family(self.sp.reversed())
        return self._pf

    def start(self, word):
        S = self.sp.run(self._all, word)
        return S or None

    def step(self, state, sym):
        if state is None:
            state = self._all
        T = self.sp.step(state, sym)
        return T or None

    def contains(self, word) -> bool:
        return bool(word) and bool(self.sp.run(self._all, word))

    def successors(self, state):
        mv = self.sp.moves(self._all if state is None else state)
        for a in sorted(mv, key=_key):
            yield a, mv[a]

    def extend_left(self, word, n: int) -> list[tuple]:
        word = tuple(word)
        S = self.sp.back(self._all, word) if word else self._all
        if not S:
            return []
        out: list[tuple] = []

        def rec(prefix, S):
            if len(prefix) == n:
                out.append(prefix)
                return
            acc: dict = defaultdict(set)
            for q in S:
                for a, t in self.sp._in.get(q, {}).items():
                    acc[a] |= t
            for a, T in acc.items():
                rec((a,) + prefix, frozenset(T))

        rec((), S)
        return sorted(out, key=lambda w: tuple(map(_key, w)))

    def relation(self, word) -> frozenset:
        return frozenset((q, r) for q in self.sp.states for r in self.sp.run({q}, word))

    def context_key(self, word):
        rel = self.relation(word)
        return rel or None

    def plus_key(self, word):
        return self.sp.run(self._all, word) or None

    def minus_key(self, word):
        return self.sp.back(self._all, word) or None

    def after_every_past(self, a: Sequence, u: Sequence) -> bool:
        """Is ``u`` readable after every left-infinite past admitting ``a``?"""
        a, u = tuple(a), tuple(u)
        if not a:
            raise InvalidInput("empty word")
        ok = False
        for S in self._readers(False, a[0]):
            if self.sp.run(S, a):
                ok = True
                if not self.sp.run(S, u):
                    return False
        return ok

    def before_every_future(self, a: Sequence, u: Sequence) -> bool:
        """Is ``u`` readable (leftwards) before every right-infinite future admitting ``a``?"""
        rsp = self.past_family.sp
        a, u = tuple(a)[::-1], tuple(u)[::-1]
        if not a:
            raise InvalidInput("empty word")
        ok = False
        for S in self._readers(True, a[0]):
            if rsp.run(S, a):
                ok = True
                if not rsp.run(S, u):
                    return False
        return ok

    def _readers(self, past: bool, sym) -> tuple:
        """Family sets from which ``sym`` can be read (reversed family if ``past``)."""
        idx = self._idx.get(past)
        if idx is None:
            ff = self.past_family if past else self.family
            acc: dict = defaultdict(list)
            for S in ff.sets:
                for a in ff.sp.moves(S):
                    acc[a].append(S)
            idx = self._idx[past] = {a: tuple(v) for a, v in acc.items()}
        return idx.get(sym, ())

    def omega_plus_ok(self, a, w, past_bound=None) -> bool:
        a, w = tuple(a), tuple(w)
        return self.after_every_past(a, a + w)

    def omega_minus_ok(self, a, w, future_bound=None) -> bool:
        a, w = tuple(a), tuple(w)
        return self.before_every_future(a, w + a)

    def format_word(self, word) -> str:
        return " ".join(str(s) for s in word)


def as_language(x) -> LanguageOracle:
    if isinstance(x, LanguageOracle):
        return x
    if isinstance(x, SoficPresentation):
        return SoficLanguage(x)
    from .presentation import Presentation, PresentationLanguage

    if isinstance(x, Presentation):
        return PresentationLanguage(x)
    raise InvalidInput(f"cannot build a language from {type(x).__name__}")


# compatibility tests used by the searches: exact for sofic, bounded otherwise


def _future_ok(lang: LanguageOracle, a, u, bound: int) -> bool:
    """``u`` may follow every past of ``a`` (``u`` starts where ``a`` starts)."""
    if isinstance(lang, SoficLanguage):
        return lang.after_every_past(a, u)
    a, u = tuple(a), tuple(u)
    if not lang.contains(u):
        return False
    return all(lang.contains(x + u) for x in lang.extend_left(a, bound))


def _past_ok(lang: LanguageOracle, a, u, bound: int) -> bool:
    """``u`` may precede every future of ``a`` (``u`` ends where ``a`` ends)."""
    if isinstance(lang, SoficLanguage):
        return lang.before_every_future(a, u)
    a, u = tuple(a), tuple(u)
    if not lang.contains(u):
        return False
    return all(lang.contains(u + y) for y in lang.extend_right(a, bound))


# ----------------------------------------------------------------------
# instantaneity


@dataclass
class InstantReport:
    right: bool
    left: bool
    omega_plus: dict
    omega_minus: dict
    right_fail: tuple
    left_fail: tuple
    exact: bool = True

    def to_dict(self, fmt=str) -> dict:
        return {
            "right": self.right,
            "left": self.left,
            "exact": self.exact,
            "right_fail": [fmt(s) for s in self.right_fail],
            "left_fail": [fmt(s) for s in self.left_fail],
            "omega_plus_1": {fmt(k): [fmt(s) for s in v] for k, v in self.omega_plus.items()},
            "omega_minus_1": {fmt(k): [fmt(s) for s in v] for k, v in self.omega_minus.items()},
        }


def _omega1_all(ff: FollowerFamily) -> dict:
    """One-step omega sets of every symbol, from a single pass over the family."""
    sp = ff.sp
    cand: dict = {}
    for V in ff.sets:
        for a, T in sp.moves(V).items():
            outs = sp.out_symbols(T)
            cand[a] = outs if a not in cand else cand[a] & outs
    return {a: tuple(sorted(v, key=_key)) for a, v in cand.items()}


def omega1_plus(lang: SoficLanguage, word: Sequence) -> tuple:
    word = tuple(word)
    cand = None
    for V in lang.family.sets:
        T = lang.sp.run(V, word)
        if T:
            outs = lang.sp.out_symbols(T)
            cand = outs if cand is None else cand & outs
    return tuple(sorted(cand or (), key=_key))


def omega1_minus(lang: SoficLanguage, word: Sequence) -> tuple:
    word = tuple(word)
    rsp = lang.past_family.sp
    cand = None
    for V in lang.past_family.sets:
        T = rsp.run(V, word[::-1])
        if T:
            outs = rsp.out_symbols(T)
            cand = outs if cand is None else cand & outs
    return tuple(sorted(cand or (), key=_key))


def instantaneity_check(x, past_bound: int = 3) -> InstantReport:
    """Right: every symbol has a one-step future compatible with all its pasts."""
    lang = as_language(x)
    if isinstance(lang, SoficLanguage):
        op = _omega1_all(lang.family)
        om = _omega1_all(lang.past_family)
        op = {s: op.get(s, ()) for s in lang.alphabet}
        om = {s: om.get(s, ()) for s in lang.alphabet}
        exact = True
    else:
        op = {s: tuple(t for t in lang.alphabet if _future_ok(lang, (s,), (s, t), past_bound)) for s in lang.alphabet if lang.contains((s,))}
        om = {s: tuple(t for t in lang.alphabet if _past_ok(lang, (s,), (t, s), past_bound)) for s in lang.alphabet if lang.contains((s,))}
        exact = False
    rf = tuple(s for s, v in op.items() if not v)
    lf = tuple(s for s, v in om.items() if not v)
    return InstantReport(not rf, not lf, op, om, rf, lf, exact)


# ----------------------------------------------------------------------
# bi-instantaneous recoding


def stabilization_index(ff: FollowerFamily, future: Sequence, convention: str = "open") -> tuple[int, int] | None:
    """``(I, i)`` with I minimal such that ``tau`` of ``future[i:I]`` fixes the image
    of ``tau`` of ``future[:i]``; ``i`` ranges over ``2..I-1`` (``open``) or
    ``1..I-1`` (``half-open``).  None if ``future`` is too short to decide.
    """
    if convention not in ("open", "half-open"):
        raise InvalidInput(f"unknown interval convention {convention!r}")
    lo = 2 if convention == "open" else 1
    future = tuple(future)
    for I in range(lo + 1, len(future) + 1):
        for i in range(lo, I):
            img = {j for j in ff.act(future[:i]) if j >= 0}
            if not img:
                continue
            act = ff.act(future[i:I])
            if all(act[j] == j for j in img):
                return I, i
    return None


def minimal_windows(lang: SoficLanguage, ff: FollowerFamily, convention: str, max_depth: int) -> list[tuple]:
    """All futures ``w`` whose stabilization index is exactly ``len(w)``.

    Every admissible future starts with exactly one of them, so the
    maximum length is the bound M on the index.
    """
    found = []
    stack = [((s,), st) for s, st in lang.successors(None)]
    while stack:
        w, st = stack.pop()
        r = stabilization_index(ff, w, convention)
        if r is not None:
            if r[0] == len(w):
                found.append(w)
            continue
        if len(w) >= max_depth:
            raise InvalidInput(f"stabilization index exceeds {max_depth} on {w}; interval convention {convention!r} may be ill-defined here")
        for s, nst in lang.successors(st):
            stack.append((w + (s,), nst))
    return sorted(found, key=lambda w: (len(w), tuple(map(_key, w))))


def _index_bound(lang: SoficLanguage, ff: FollowerFamily, convention: str, max_depth: int) -> int:
    """Maximum of the stabilization index over all admissible futures."""
    return max((len(w) for w in minimal_windows(lang, ff, convention, max_depth)), default=0)


@dataclass
class Transform61:
    """Recoding x -> (x[-I-..0], x0, x[1..I+]) and its image presentation.

    ``futures`` holds the minimal stabilizing futures ``x[1..I+]`` and
    ``pasts`` the minimal stabilizing pasts ``x[-I-..0]`` (left to right,
    ending with x0).  I- is stored as a length, not a negative index.
    """

    source: SoficPresentation
    convention: str
    m_plus: int
    m_minus: int
    image: SoficPresentation
    futures: tuple = ()
    pasts: tuple = ()
    _ff: FollowerFamily = field(repr=False, default=None)
    _pf: FollowerFamily = field(repr=False, default=None)

    @property
    def window(self) -> int:
        return self.m_minus + self.m_plus

    def i_plus(self, future: Sequence) -> int:
        r = stabilization_index(self._ff, future, self.convention)
        if r is None:
            raise InvalidInput("future window too short")
        return r[0]

    def i_minus(self, past: Sequence) -> int:
        """Length of the left window for a past ending at position 0."""
        r = stabilization_index(self._pf, tuple(past)[::-1], self.convention)
        if r is None:
            raise InvalidInput("past window too short")
        return r[0]

    def Xi(self, window: Sequence) -> tuple:
        """Symbol for a window x[1-m_minus .. m_plus]; position 0 is index m_minus-1."""
        w = tuple(window)
        if len(w) != self.window:
            raise InvalidInput(f"window length must be {self.window}")
        k = self.m_minus
        past, fut = w[:k], w[k:]
        ip = self.i_plus(fut)
        im = self.i_minus(past)
        return (past[k - im :], past[-1], fut[:ip])

    def xi_periodic(self, cycle: Sequence) -> tuple:
        """Image of the periodic point ``cycle^inf`` as one period of symbols."""
        c = tuple(cycle)
        n = len(c)
        out = []
        for i in range(n):
            w = tuple(c[(i - self.m_minus + 1 + j) % n] for j in range(self.window))
            out.append(self.Xi(w))
        return tuple(out)

    def to_dict(self) -> dict:
        return {
            "convention": self.convention,
            "m_plus": self.m_plus,
            "m_minus": self.m_minus,
            "minimal_futures": len(self.futures),
            "minimal_pasts": len(self.pasts),
            "image_states": len(self.image.states),
            "image_symbols": len(self.image.symbols),
        }


def block_image(sp: SoficPresentation, W: int, phi: Callable) -> SoficPresentation:
    """Presentation of ``y_i = phi(x[i .. i+W-1])``; vertices pair a state with the pending word."""
    require_essential(sp)
    if W < 1:
        raise InvalidInput("window must be >= 1")
    states = []
    edges = []
    seen = set()
    todo = deque()
    for q in sp.states:
        for u in _words_from(sp, q, W - 1):
            v = (q, u)
            seen.add(v)
            todo.append(v)
    while todo:
        q, u = todo.popleft()
        states.append((q, u))
        for w in _words_from(sp, q, W, prefix=u):
            lab = phi(w)
            rest = w[1:]
            for q2 in sp.step({q}, w[0]):
                if W == 1:
                    v = (q2, ())
                elif sp.run({q2}, rest):
                    v = (q2, rest)
                else:
                    continue
                edges.append(SEdge((q, u), v, lab))
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
    return SoficPresentation(tuple(states), tuple(edges)).trim()


def _words_from(sp: SoficPresentation, q, n: int, prefix: tuple = ()) -> list[tuple]:
    """Words of length ``n`` beginning with ``prefix`` readable from state ``q``."""
    S = sp.run({q}, prefix)
    if not S:
        return []
    out = []

    def rec(w, S):
        if len(w) == n:
            out.append(w)
            return
        for a, T in sp.moves(S).items():
            rec(w + (a,), T)

    rec(tuple(prefix), S)
    return out


def _triple_image(sp: SoficPresentation, pasts, futures, pf: FollowerFamily, convention: str) -> SoficPresentation:
    """Presentation of the recoded shift on symbols (past, x0, future).

    A vertex ``(d, q)`` means the symbol d was just read and the source
    path sits at q after x0.  Consecutive symbols must agree on their
    overlapping windows; with the monotone bounds this forces every window
    to be read off the underlying point.
    """
    allq = frozenset(sp.states)
    triples = []
    qs: dict = {}
    for Lw in pasts:
        after = sp.run(allq, Lw)
        for Rw in futures:
            good = frozenset(q for q in after if sp.run({q}, Rw))
            if good:
                d = (Lw, Lw[-1], Rw)
                triples.append(d)
                qs[d] = good
    by_past: dict = defaultdict(list)
    for d in triples:
        by_past[d[0]].append(d)
    edges = []
    for d in triples:
        Lw, _, Rw = d
        ext = Lw + Rw[:1]
        r = stabilization_index(pf, ext[::-1], convention)
        if r is None:
            raise InvalidInput(f"left index grows by more than one after {ext}")
        nxt_past = ext[len(ext) - r[0] :]
        k = len(Rw) - 1
        for d2 in by_past.get(nxt_past, ()):
            R2 = d2[2]
            if len(R2) < k or R2[:k] != Rw[1:]:
                continue
            for q in qs[d]:
                for q2 in sp.step({q}, Rw[0]):
                    if q2 in qs[d2]:
                        edges.append(SEdge((d, q), (d2, q2), d2))
    states = tuple(sorted({e.src for e in edges} | {e.dst for e in edges}, key=_key))
    return SoficPresentation(states, tuple(edges)).trim()


def theorem61_transform(sp: SoficPresentation, convention: str = "half-open", max_depth: int = 40) -> Transform61:
    """Bi-instantaneous recoding by stabilization of the follower-set maps.

    ``convention`` selects the range of the split point in the stabilization
    index (see :func:`stabilization_index`).
    """
    lang = SoficLanguage(sp)
    ff = lang.family
    pf = lang.past_family
    rlang = SoficLanguage(sp.reversed())
    futures = minimal_windows(lang, ff, convention, max_depth)
    pasts = tuple(w[::-1] for w in minimal_windows(rlang, pf, convention, max_depth))
    m_plus = max(map(len, futures))
    m_minus = max(map(len, pasts))
    image = _triple_image(sp, pasts, futures, pf, convention)
    return Transform61(sp, convention, m_plus, m_minus, image, tuple(futures), pasts, ff, pf)


def _sorted_syms(it) -> tuple:
    return tuple(sorted(it, key=_key))


def lifted_instantaneity(tr: Transform61) -> InstantReport:
    """Instantaneity of the image decided through the source family.

    A past of the image ending in ``(L, s, R)`` is a past of the source
    ending in ``L`` that admits ``R``.  The next symbol is forced to be
    ``(L', x1, R')`` with ``R'`` a minimal future extending ``R[1:]``, and it
    fits every such past iff ``L + R[0] + R'`` does.  The left side is the
    mirror image.  Used when the image is too large for its own family.
    """
    lang = SoficLanguage(tr.source)
    by_prefix: dict = defaultdict(list)
    for R in tr.futures:
        for k in range(len(R) + 1):
            by_prefix[R[:k]].append(R)
    by_suffix: dict = defaultdict(list)
    for P in tr.pasts:
        for k in range(len(P) + 1):
            by_suffix[P[len(P) - k :]].append(P)
    op: dict = {}
    om: dict = {}
    for d in tr.image.symbols:
        Lw, _, Rw = d
        a = Lw + Rw
        ext = Lw + Rw[:1]
        r = stabilization_index(tr._pf, ext[::-1], tr.convention)
        nxt_past = ext[len(ext) - r[0] :]
        op[d] = _sorted_syms(
            (nxt_past, Rw[0], R2)
            for R2 in by_prefix.get(Rw[1:], ())
            if lang.after_every_past(a, Lw + Rw[:1] + R2)
        )
        ext = Lw[-1:] + Rw
        r = stabilization_index(tr._ff, ext, tr.convention)
        prv_fut = ext[: r[0]]
        om[d] = _sorted_syms(
            (L2, L2[-1], prv_fut)
            for L2 in by_suffix.get(Lw[:-1], ())
            if lang.before_every_future(a, L2 + Lw[-1:] + Rw)
        )
    rf = tuple(d for d, v in op.items() if not v)
    lf = tuple(d for d, v in om.items() if not v)
    return InstantReport(not rf, not lf, op, om, rf, lf, True)


def monotone_bound_violations(tr: Transform61) -> list[tuple]:
    """Minimal windows where I+(x) <= I+(Sx) + 1 or I-(Sx) <= I-(x) + 1 fails (lengths).

    I+(Sx) < I+(x) - 1 happens iff the future x[2..I+(x)-1] already
    stabilizes, which depends on the minimal window alone; likewise on the
    left.  So checking the minimal windows covers every point.
    """
    bad = []
    for w in tr.futures:
        if len(w) >= 3 and stabilization_index(tr._ff, w[1:-1], tr.convention) is not None:
            bad.append(("plus", w))
    for w in tr.pasts:
        if len(w) >= 3 and stabilization_index(tr._pf, w[1:-1][::-1], tr.convention) is not None:
            bad.append(("minus", w))
    return bad


def monotone_bound_violations_sampled(tr: Transform61, lang: SoficLanguage, n: int) -> list[tuple]:
    """Brute-force version over all words of length n (n > both bounds)."""
    if n <= max(tr.m_plus, tr.m_minus):
        raise InvalidInput("sample length must exceed both bounds")
    bad = []
    for w in lang.words(n):
        if tr.i_plus(w[1:]) + 1 < tr.i_plus(w[:-1]):
            bad.append(("plus", w))
        if tr.i_minus(w[1:]) > tr.i_minus(w[:-1]) + 1:
            bad.append(("minus", w))
    return bad


def has_periodic(sp: SoficPresentation, word: Sequence) -> bool:
    """Whether ``word^inf`` labels a bi-infinite path."""
    word = tuple(word)
    if not word:
        raise InvalidInput("empty period")
    starts = sp._src_sym.get(word[0], frozenset())
    G = nx.DiGraph()
    for q in starts:
        for r in sp.run({q}, word):
            if r in starts:
                G.add_edge(q, r)
    return any(len(c) > 1 or G.has_edge(next(iter(c)), next(iter(c))) for c in nx.strongly_connected_components(G))


def periodic_words(sp: SoficPresentation, n: int) -> list[tuple]:
    """Words ``w`` of length n with ``w^inf`` in the shift (with phase)."""
    lang = SoficLanguage(sp)
    return [w for w in lang.words(n) if has_periodic(sp, w)]


# ----------------------------------------------------------------------
# RI / LI / BI mappings


@dataclass
class MappingResult:
    L: int
    found: bool
    psi_plus: dict | None = None
    psi_minus: dict | None = None
    nodes: int = 0
    exact: bool = True
    verdict: str = ""

    def to_dict(self, fmt=None) -> dict:
        f = fmt or (lambda w: " ".join(map(str, w)))
        d = {"L": self.L, "found": self.found, "nodes": self.nodes, "exact": self.exact, "verdict": self.verdict}
        if self.psi_plus is not None:
            d["psi_plus"] = {f(k): f(v) for k, v in sorted(self.psi_plus.items(), key=lambda kv: tuple(map(_key, kv[0])))}
        if self.psi_minus is not None:
            d["psi_minus"] = {f(k): f(v) for k, v in sorted(self.psi_minus.items(), key=lambda kv: tuple(map(_key, kv[0])))}
        return d


def _word_order(w):
    return tuple(_key(s) for s in w)


class _Problem:
    """Windows, candidate images and the equality constraints of the RI/LI/BI conditions."""

    def __init__(self, lang: LanguageOracle, L: int, bound: int, budget: int):
        self.lang = lang
        self.L = L
        self.bound = bound
        self.windows = sorted(lang.words(2 * L + 1, budget=budget), key=_word_order)
        self.wset = set(self.windows)
        self._lb: dict = {}
        self._rb: dict = {}

    def plus_cands(self, a) -> list[tuple]:
        L = self.L
        head = a[: L + 1]
        return sorted(
            (c for c in self.lang.extend_right(head, L + 1) if _future_ok(self.lang, a, head + c, self.bound)),
            key=_word_order,
        )

    def minus_cands(self, a) -> list[tuple]:
        L = self.L
        tail = a[L:]
        return sorted(
            (c for c in self.lang.extend_left(tail, L + 1) if _past_ok(self.lang, a, c + tail, self.bound)),
            key=_word_order,
        )

    def left_ext(self, a, k):
        key = (a, k)
        if key not in self._lb:
            self._lb[key] = self.lang.extend_left(a, k) if k else [()]
        return self._lb[key]

    def right_ext(self, a, k):
        key = (a, k)
        if key not in self._rb:
            self._rb[key] = self.lang.extend_right(a, k) if k else [()]
        return self._rb[key]

    def past_links(self, a, img):
        """Pairs (w1, w2) of windows whose images must agree given a future image ``img`` of a."""
        L = self.L
        for l in range(1, L + 1):
            for b in self.left_ext(a, L - l):
                yield l, b + a[: L + 1 + l], b + a[: L + 1] + img[:l]

    def future_links(self, a, img):
        """Pairs given a past image ``img`` of a."""
        L = self.L
        for l in range(1, L + 1):
            for b in self.right_ext(a, L - l):
                yield l, a[L - l :] + b, img[L + 1 - l :] + a[L:] + b


class _UF:
    def __init__(self, cands: dict):
        self.parent = {v: v for v in cands}
        self.members = {v: [v] for v in cands}
        self.cands = {v: frozenset(c) for v, c in cands.items()}
        self.order = {v: list(c) for v, c in cands.items()}
        self.val: dict = {v: None for v in cands}
        self.trail: list = []

    def find(self, v):
        while self.parent[v] != v:
            v = self.parent[v]
        return v

    def mark(self) -> int:
        return len(self.trail)

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            kind, *data = self.trail.pop()
            if kind == "val":
                self.val[data[0]] = None
            else:
                child, root, old_cands, n = data
                self.parent[child] = child
                del self.members[root][-n:]
                self.cands[root] = old_cands

    def set_value(self, v, x, work) -> bool:
        r = self.find(v)
        if self.val[r] is not None:
            return self.val[r] == x
        if x not in self.cands[r]:
            return False
        self.val[r] = x
        self.trail.append(("val", r))
        work.extend(self.members[r])
        return True

    def union(self, u, v, work) -> bool:
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return True
        if len(self.members[ru]) < len(self.members[rv]):
            ru, rv = rv, ru
        xu, xv = self.val[ru], self.val[rv]
        if xu is not None and xv is not None and xu != xv:
            return False
        new = self.cands[ru] & self.cands[rv]
        if not new or (xu is not None and xu not in new) or (xv is not None and xv not in new):
            return False
        moved = list(self.members[rv])
        self.trail.append(("union", rv, ru, self.cands[ru], len(moved)))
        self.parent[rv] = ru
        self.members[ru].extend(moved)
        self.cands[ru] = new
        if xv is not None and xu is None:
            # value travels to the root; record so undo clears it
            self.val[ru] = xv
            self.trail.append(("val", ru))
            work.extend(self.members[ru][: -len(moved)])
        elif xu is not None and xv is None:
            work.extend(moved)
        return True


def _solve(prob: _Problem, kinds: tuple[str, ...], budget: int) -> tuple[dict | None, int]:
    """Backtracking search; variables are (kind, window) with kind in {'+', '-'}."""
    cands = {}
    for a in prob.windows:
        for k in kinds:
            cs = prob.plus_cands(a) if k == "+" else prob.minus_cands(a)
            if not cs:
                return None, 0
            cands[(k, a)] = cs
    uf = _UF(cands)
    order = [(k, a) for a in prob.windows for k in kinds]
    nodes = 0

    def links(var, x):
        k, a = var
        if k == "+":
            # RIb on psi+, LBI on psi-
            for _, w1, w2 in prob.past_links(a, x):
                for kk in kinds:
                    yield (kk, w1), (kk, w2)
        else:
            # LIb on psi-, RBI on psi+
            for _, w1, w2 in prob.future_links(a, x):
                for kk in kinds:
                    yield (kk, w1), (kk, w2)

    def propagate(work) -> bool:
        while work:
            v = work.pop()
            x = uf.val[uf.find(v)]
            for p, q in links(v, x):
                if p[1] not in prob.wset or q[1] not in prob.wset:
                    return False
                if not uf.union(p, q, work):
                    return False
        return True

    def next_free(pos) -> int:
        while pos < len(order) and uf.val[uf.find(order[pos])] is not None:
            pos += 1
        return pos

    # explicit stack of (position, candidates left, trail mark); recursion
    # would be as deep as the number of windows
    stack: list = []
    pos = next_free(0)
    if pos < len(order):
        stack.append([pos, sorted(uf.cands[uf.find(order[pos])], key=_word_order), None])
    ok = pos == len(order)
    while stack and not ok:
        frame = stack[-1]
        if frame[2] is not None:
            uf.undo(frame[2])
            frame[2] = None
        if not frame[1]:
            stack.pop()
            continue
        x = frame[1].pop(0)
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded("mapping search nodes", budget)
        frame[2] = uf.mark()
        work: list = []
        if uf.set_value(order[frame[0]], x, work) and propagate(work):
            nxt = next_free(frame[0] + 1)
            if nxt == len(order):
                ok = True
            else:
                stack.append([nxt, sorted(uf.cands[uf.find(order[nxt])], key=_word_order), None])

    if not ok:
        return None, nodes
    return {v: uf.val[uf.find(v)] for v in order}, nodes


def ri_mapping_search(x, L: int, past_bound: int = 3, budget: int = 200_000, word_budget: int = 100_000) -> MappingResult:
    lang = as_language(x)
    prob = _Problem(lang, L, past_bound, word_budget)
    sol, nodes = _solve(prob, ("+",), budget)
    if sol is None:
        return MappingResult(L, False, nodes=nodes, exact=lang.exact, verdict=f"no RI-mapping for L={L}")
    psi = {a: v for (k, a), v in sol.items()}
    return MappingResult(L, True, psi_plus=psi, nodes=nodes, exact=lang.exact, verdict="found")


def li_mapping_search(x, L: int, past_bound: int = 3, budget: int = 200_000, word_budget: int = 100_000) -> MappingResult:
    lang = as_language(x)
    prob = _Problem(lang, L, past_bound, word_budget)
    sol, nodes = _solve(prob, ("-",), budget)
    if sol is None:
        return MappingResult(L, False, nodes=nodes, exact=lang.exact, verdict=f"no LI-mapping for L={L}")
    psi = {a: v for (k, a), v in sol.items()}
    return MappingResult(L, True, psi_minus=psi, nodes=nodes, exact=lang.exact, verdict="found")


def bi_mapping_pair_search(x, L: int, past_bound: int = 3, budget: int = 200_000, word_budget: int = 100_000) -> MappingResult:
    lang = as_language(x)
    prob = _Problem(lang, L, past_bound, word_budget)
    sol, nodes = _solve(prob, ("-", "+"), budget)
    if sol is None:
        return MappingResult(L, False, nodes=nodes, exact=lang.exact, verdict=f"no BI-pair for L={L}")
    pm = {a: v for (k, a), v in sol.items() if k == "-"}
    pp = {a: v for (k, a), v in sol.items() if k == "+"}
    return MappingResult(L, True, psi_plus=pp, psi_minus=pm, nodes=nodes, exact=lang.exact, verdict="found")


# independent re-verification: plain loops over every clause


@dataclass
class ClauseFailure:
    clause: str
    window: tuple
    detail: str

    def __str__(self) -> str:
        return f"{self.clause} fails at {self.window}: {self.detail}"


def verify_mapping(x, L: int, psi_plus: dict | None = None, psi_minus: dict | None = None, past_bound: int = 3) -> list[ClauseFailure]:
    lang = as_language(x)
    wins = lang.words(2 * L + 1)
    fails: list[ClauseFailure] = []
    for psi, name in ((psi_plus, "+"), (psi_minus, "-")):
        if psi is None:
            continue
        missing = [a for a in wins if a not in psi]
        if missing:
            fails.append(ClauseFailure("domain", missing[0], f"psi{name} undefined"))
            return fails
    for a in wins:
        if psi_plus is not None:
            c = psi_plus[a]
            if len(c) != L + 1:
                fails.append(ClauseFailure("RIa", a, "image length"))
            elif not _future_ok(lang, a, a[: L + 1] + c, past_bound):
                fails.append(ClauseFailure("RIa", a, f"image {c} not compatible with every past"))
        if psi_minus is not None:
            c = psi_minus[a]
            if len(c) != L + 1:
                fails.append(ClauseFailure("LIa", a, "image length"))
            elif not _past_ok(lang, a, c + a[L:], past_bound):
                fails.append(ClauseFailure("LIa", a, f"image {c} not compatible with every future"))
    if fails:
        return fails
    for a in wins:
        for l in range(1, L + 1):
            pasts = lang.extend_left(a, L - l) if L - l else [()]
            futs = lang.extend_right(a, L - l) if L - l else [()]
            if psi_plus is not None:
                img = psi_plus[a]
                for b in pasts:
                    w1 = b + a[: L + 1 + l]
                    w2 = b + a[: L + 1] + img[:l]
                    if psi_plus.get(w1) != psi_plus.get(w2) or w2 not in psi_plus:
                        fails.append(ClauseFailure("RIb", a, f"l={l} b={b}"))
                    if psi_minus is not None and (psi_minus.get(w1) != psi_minus.get(w2) or w2 not in psi_minus):
                        fails.append(ClauseFailure("LBI", a, f"l={l} b={b}"))
            if psi_minus is not None:
                img = psi_minus[a]
                for b in futs:
                    w1 = a[L - l :] + b
                    w2 = img[L + 1 - l :] + a[L:] + b
                    if psi_minus.get(w1) != psi_minus.get(w2) or w2 not in psi_minus:
                        fails.append(ClauseFailure("LIb", a, f"l={l} b={b}"))
                    if psi_plus is not None and (psi_plus.get(w1) != psi_plus.get(w2) or w2 not in psi_plus):
                        fails.append(ClauseFailure("RBI", a, f"l={l} b={b}"))
    return fails


def theta_embed(x, L: int, psi_plus: dict, psi_minus: dict | None = None, past_bound: int = 3):
    """Image of the recoding by (x[-L..0], psi+) or (psi-, x0, psi+).

    For sofic input the result is a :class:`SoficPresentation`; in the pair
    case it is recoded once more into L-blocks.  Other inputs give a block
    image language.
    """
    fails = verify_mapping(x, L, psi_plus, psi_minus, past_bound)
    if fails:
        raise InvalidInput(f"mapping violates {fails[0].clause}: {fails[0]}")
    if psi_minus is None:
        def phi(w):
            return (tuple(w[: L + 1]), psi_plus[tuple(w)])
    else:
        def phi(w):
            w = tuple(w)
            return (psi_minus[w], w[L], psi_plus[w])
    if isinstance(x, SoficPresentation):
        img = block_image(x, 2 * L + 1, phi)
        if psi_minus is not None and L >= 1:
            img = block_image(img, L, tuple)
        return img
    from .presentation import apply_block_map, higher_block

    img = apply_block_map(as_language(x), L, phi)
    if psi_minus is not None and L >= 1:
        return higher_block(img, L)
    return img


# ----------------------------------------------------------------------
# strong bi-instantaneity


@dataclass
class SBIReport:
    ok: bool
    R: int
    maxlen: int
    witnesses: dict
    failing: tuple | None
    exact: bool
    checked: int

    def to_dict(self, fmt=None) -> dict:
        f = fmt or (lambda w: " ".join(map(str, w)))
        return {
            "ok": self.ok,
            "R": self.R,
            "maxlen": self.maxlen,
            "exact": self.exact,
            "checked": self.checked,
            "failing": f(self.failing) if self.failing is not None else None,
            "witnesses": {f(a): f(c) for a, c in self.witnesses.items()},
        }


def _sbi_ok(lang, a, c, bound) -> bool:
    if not (lang.contains(a + c) and lang.contains(c + a)):
        return False
    return _future_ok(lang, a, a + c + a, bound) and _past_ok(lang, a, a + c + a, bound)


def strong_bi_check(x, R: int, maxlen: int, c_maxlen: int = 6, past_bound: int = 3, hint: Callable | None = None) -> SBIReport:
    """Search, for every admissible a with R <= |a| <= maxlen, a word c with
    ac, ca admissible, ca compatible with every past of a and ac with every
    future of a.  ``hint(a)`` may propose a first candidate.
    """
    lang = as_language(x)
    if R < 1 or maxlen < R:
        raise InvalidInput("need 1 <= R <= maxlen")
    wit = {}
    checked = 0
    pool: list[tuple] = []
    for n in range(1, c_maxlen + 1):
        pool += lang.words(n)
    for n in range(R, maxlen + 1):
        for a in lang.words(n):
            checked += 1
            found = None
            if hint is not None:
                c = hint(a)
                if c and _sbi_ok(lang, a, tuple(c), past_bound):
                    found = tuple(c)
            if found is None:
                found = next((c for c in pool if _sbi_ok(lang, a, c, past_bound)), None)
            if found is None:
                return SBIReport(False, R, maxlen, wit, a, lang.exact, checked)
            wit[a] = found
    return SBIReport(True, R, maxlen, wit, None, lang.exact, checked)
