"""R-graphs and exact arithmetic in their semigroups.

An R-graph is a vertex set with two edge families (minus and plus edges),
each edge carrying a class ``(q, r)``, and a relation pairing minus edges
with plus edges of the same class.  The associated semigroup with zero is
generated by the edges and the vertex units ``1_p`` subject to

* ``1_q e- = e- 1_r = e-`` for a minus edge of class (q, r),
* ``1_r e+ = e+ 1_q = e+`` for a plus edge of class (q, r),
* ``f- g+ = 1_q`` when (f-, g+) is related, and ``0`` otherwise,
* ``1_q 1_r = 0`` for ``q != r``.

Every non-zero element has a unique normal form ``plus-block . 1_p . minus-block``
which is what :class:`Word` stores.
"""

from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Sequence

import networkx as nx


class InvalidInput(ValueError):
    """Raised when an operation receives data outside its domain."""


@dataclass(frozen=True, order=True)
class Edge:
    id: int
    q: str
    r: str
    name: str = ""

    @property
    def cls(self) -> tuple[str, str]:
        return (self.q, self.r)


@dataclass(frozen=True)
class RGraph:
    """Partitioned graph with relation.

    ``minus`` edges of class (q, r) run q -> r.  ``plus`` edges of class (q, r)
    run r -> q; the class is stored rather than source/target so that related
    pairs are recognised by comparing classes directly.
    """

    vertices: tuple[str, ...]
    minus: tuple[Edge, ...]
    plus: tuple[Edge, ...]
    relation: frozenset[tuple[int, int]]
    _mcls: dict = field(init=False, repr=False, compare=False, hash=False)
    _pcls: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "minus", tuple(sorted(self.minus)))
        object.__setattr__(self, "plus", tuple(sorted(self.plus)))
        object.__setattr__(self, "relation", frozenset((int(a), int(b)) for a, b in self.relation))
        object.__setattr__(self, "_mcls", {e.id: e.cls for e in self.minus})
        object.__setattr__(self, "_pcls", {e.id: e.cls for e in self.plus})

    # unit bookkeeping -------------------------------------------------
    def minus_class(self, eid: int) -> tuple[str, str]:
        try:
            return self._mcls[eid]
        except KeyError:
            raise InvalidInput(f"unknown minus edge id {eid}") from None

    def plus_class(self, eid: int) -> tuple[str, str]:
        try:
            return self._pcls[eid]
        except KeyError:
            raise InvalidInput(f"unknown plus edge id {eid}") from None

    def minus_edge(self, eid: int) -> Edge:
        return next(e for e in self.minus if e.id == eid)

    def plus_edge(self, eid: int) -> Edge:
        return next(e for e in self.plus if e.id == eid)

    def edge_name(self, sign: str, eid: int) -> str:
        e = self.minus_edge(eid) if sign == "-" else self.plus_edge(eid)
        return e.name or f"{sign}{eid}"

    def minus_by_name(self, name: str) -> int:
        for e in self.minus:
            if e.name == name:
                return e.id
        raise InvalidInput(f"no minus edge named {name!r}")

    def plus_by_name(self, name: str) -> int:
        for e in self.plus:
            if e.name == name:
                return e.id
        raise InvalidInput(f"no plus edge named {name!r}")

    def related(self, m: int, p: int) -> bool:
        return (m, p) in self.relation

    # element constructors --------------------------------------------
    def unit(self, p: str) -> "Word":
        if p not in self.vertices:
            raise InvalidInput(f"unknown vertex {p!r}")
        return Word((), p, ())

    def gen_minus(self, eid: int) -> "Word":
        q, _ = self.minus_class(eid)
        return Word((), q, (eid,))

    def gen_plus(self, eid: int) -> "Word":
        q, _ = self.plus_class(eid)
        return Word((eid,), q, ())

    def generators(self) -> list["Word"]:
        """Units, then minus generators, then plus generators."""
        out = [self.unit(p) for p in self.vertices]
        out += [self.gen_minus(e.id) for e in self.minus]
        out += [self.gen_plus(e.id) for e in self.plus]
        return out

    # serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        def edge(e: Edge) -> dict:
            d = {"id": e.id, "q": e.q, "r": e.r}
            if e.name:
                d["name"] = e.name
            return d

        return {
            "vertices": list(self.vertices),
            "minus": [edge(e) for e in self.minus],
            "plus": [edge(e) for e in self.plus],
            "relation": [list(p) for p in sorted(self.relation)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "RGraph":
        try:
            return cls(
                vertices=tuple(str(v) for v in d["vertices"]),
                minus=tuple(Edge(int(e["id"]), str(e["q"]), str(e["r"]), e.get("name", "")) for e in d["minus"]),
                plus=tuple(Edge(int(e["id"]), str(e["q"]), str(e["r"]), e.get("name", "")) for e in d["plus"]),
                relation=frozenset((int(a), int(b)) for a, b in d["relation"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed R-graph JSON: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "RGraph":
        return cls.from_dict(json.loads(text))


class _Zero:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "ZERO"

    def __reduce__(self):
        return (_Zero, ())


ZERO = _Zero()


@dataclass(frozen=True, order=True)
class Word:
    """Non-zero element ``plus[0] ... plus[-1] . 1_idem . minus[0] ... minus[-1]``."""

    plus: tuple[int, ...]
    idem: str
    minus: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.plus) + len(self.minus)

    def to_dict(self) -> dict:
        return {"plus": list(self.plus), "idem": self.idem, "minus": list(self.minus)}

    @classmethod
    def from_dict(cls, d: dict) -> "Word":
        return cls(tuple(int(x) for x in d["plus"]), str(d["idem"]), tuple(int(x) for x in d["minus"]))


SgElem = "Word | _Zero"


def is_zero(a) -> bool:
    return a is ZERO


def left_unit(a: Word, g: RGraph) -> str:
    if a.plus:
        return g.plus_class(a.plus[0])[1]
    return a.idem


def right_unit(a: Word, g: RGraph) -> str:
    if a.minus:
        return g.minus_class(a.minus[-1])[1]
    return a.idem


def check_word(a: Word, g: RGraph) -> None:
    """Raise InvalidInput unless ``a`` is a well-formed normal form over ``g``."""
    if a.idem not in g.vertices:
        raise InvalidInput(f"unknown vertex {a.idem!r}")
    for x, y in zip(a.plus, a.plus[1:]):
        if g.plus_class(x)[0] != g.plus_class(y)[1]:
            raise InvalidInput(f"plus block units mismatch at {x},{y}")
    if a.plus and g.plus_class(a.plus[-1])[0] != a.idem:
        raise InvalidInput("last plus factor does not end at the idempotent")
    for x, y in zip(a.minus, a.minus[1:]):
        if g.minus_class(x)[1] != g.minus_class(y)[0]:
            raise InvalidInput(f"minus block units mismatch at {x},{y}")
    if a.minus and g.minus_class(a.minus[0])[0] != a.idem:
        raise InvalidInput("first minus factor does not start at the idempotent")


def mul(a, b, g: RGraph):
    """Product in the semigroup; cancels a's minus block against b's plus block."""
    if a is ZERO or b is ZERO:
        return ZERO
    am, bp = a.minus, b.plus
    ra = g._mcls[am[-1]][1] if am else a.idem
    lb = g._pcls[bp[0]][1] if bp else b.idem
    if ra != lb:
        return ZERO
    k, l = len(am), len(bp)
    n = min(k, l)
    rel = g.relation
    for i in range(n):
        if (am[k - 1 - i], bp[i]) not in rel:
            return ZERO
    if k >= l:
        return Word(a.plus, a.idem, am[: k - l] + b.minus)
    return Word(a.plus + bp[k:], b.idem, b.minus)


def mul_all(elems: Iterable, g: RGraph, start=None):
    """Left fold of :func:`mul`; ``start`` defaults to the first element."""
    it = iter(elems)
    acc = start
    if acc is None:
        try:
            acc = next(it)
        except StopIteration:
            raise InvalidInput("empty product") from None
    for x in it:
        if acc is ZERO:
            return ZERO
        acc = mul(acc, x, g)
    return acc


class Kind(enum.Enum):
    ZERO = "zero"
    IDEMPOTENT = "idempotent"
    PURE_MINUS = "pure-minus"
    PURE_PLUS = "pure-plus"
    MIXED = "mixed"


@dataclass(frozen=True)
class Classification:
    kind: Kind
    vertex: str | None = None


def classify(a) -> Classification:
    if a is ZERO:
        return Classification(Kind.ZERO)
    if not a.plus and not a.minus:
        return Classification(Kind.IDEMPOTENT, a.idem)
    if not a.plus:
        return Classification(Kind.PURE_MINUS)
    if not a.minus:
        return Classification(Kind.PURE_PLUS)
    return Classification(Kind.MIXED)


def inverse(a: Word) -> Word:
    """Swap blocks: the element whose product with ``a`` on the right is ``1_p``
    when the relation pairs each edge with itself (graph inverse semigroups)."""
    return Word(tuple(reversed(a.minus)), a.idem, tuple(reversed(a.plus)))


def format_elem(a, g: RGraph) -> str:
    if a is ZERO:
        return "0"
    parts = [g.edge_name("+", e) for e in a.plus]
    if not parts and not a.minus:
        return f"1_{a.idem}"
    parts += [g.edge_name("-", e) for e in a.minus]
    return " ".join(parts)


# ----------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    rule: str
    ids: tuple
    detail: str = ""


def validate_rgraph(g: RGraph) -> list[Violation]:
    out: list[Violation] = []
    verts = set(g.vertices)
    if not verts:
        out.append(Violation("structural", (), "empty vertex set"))
    if len(verts) != len(g.vertices):
        out.append(Violation("structural", tuple(g.vertices), "duplicate vertex"))
    for sign, edges in (("-", g.minus), ("+", g.plus)):
        ids = [e.id for e in edges]
        if len(set(ids)) != len(ids):
            out.append(Violation("structural", tuple(sorted(ids)), f"duplicate {sign} edge id"))
        for e in edges:
            if e.q not in verts or e.r not in verts:
                out.append(Violation("structural", (sign, e.id), "edge endpoint not a vertex"))
    for m, p in sorted(g.relation):
        if m not in g._mcls or p not in g._pcls:
            out.append(Violation("structural", (m, p), "relation names unknown edge"))
        elif g._mcls[m] != g._pcls[p]:
            out.append(Violation("relation-class", (m, p), f"{g._mcls[m]} vs {g._pcls[p]}"))
    mc = {e.cls for e in g.minus}
    pc = {e.cls for e in g.plus}
    for c in sorted(mc ^ pc):
        out.append(Violation("nonempty-iff", c, "class has edges on one side only"))
    if verts:
        dg = nx.DiGraph()
        dg.add_nodes_from(verts)
        dg.add_edges_from((e.q, e.r) for e in g.minus if e.q in verts and e.r in verts)
        if not nx.is_strongly_connected(dg):
            comps = sorted(sorted(c) for c in nx.strongly_connected_components(dg))
            out.append(Violation("strong-connectivity", tuple(tuple(c) for c in comps)))
    return out


def require_valid(g: RGraph) -> None:
    bad = validate_rgraph(g)
    if bad:
        raise InvalidInput(f"invalid R-graph: {bad[0].rule} {bad[0].ids}")


def omega_plus(g: RGraph, m: int) -> frozenset[int]:
    return frozenset(p for (mm, p) in g.relation if mm == m)


def omega_minus(g: RGraph, p: int) -> frozenset[int]:
    return frozenset(m for (m, pp) in g.relation if pp == p)


@dataclass(frozen=True)
class ConditionA:
    ok: bool
    collision: tuple | None = None  # (sign, edge id, edge id)


def check_condition_a(g: RGraph) -> ConditionA:
    require_valid(g)
    for sign, edges, omega in (("-", g.minus, omega_plus), ("+", g.plus, omega_minus)):
        seen: dict = {}
        for e in edges:
            key = (e.cls, omega(g, e.id))
            if key in seen:
                return ConditionA(False, (sign, seen[key], e.id))
            seen[key] = e.id
    return ConditionA(True)


# ----------------------------------------------------------------------
# constructions


def _letter_name(i: int) -> str:
    return "abcdefghijklmnopqrstuvwxyz"[i] if i < 26 else f"e{i}"


def graph_inverse(vertices: Sequence[str], edges: Sequence[tuple[str, str]], names: Sequence[str] | None = None) -> RGraph:
    """Graph inverse semigroup data of the directed graph ``(vertices, edges)``."""
    vertices = tuple(str(v) for v in vertices)
    if not vertices or not edges:
        raise InvalidInput("graph_inverse needs a non-empty graph")
    dg = nx.MultiDiGraph()
    dg.add_nodes_from(vertices)
    for s, t in edges:
        if s not in vertices or t not in vertices:
            raise InvalidInput(f"edge {(s, t)} leaves the vertex set")
        dg.add_edge(s, t)
    if not nx.is_strongly_connected(dg):
        raise InvalidInput("graph_inverse needs a strongly connected graph")
    names = list(names) if names is not None else [_letter_name(i) for i in range(len(edges))]
    minus = tuple(Edge(i, s, t, names[i] + "-") for i, (s, t) in enumerate(edges))
    plus = tuple(Edge(i, s, t, names[i] + "+") for i, (s, t) in enumerate(edges))
    return RGraph(vertices, minus, plus, frozenset((i, i) for i in range(len(edges))))


def dyck(n: int) -> RGraph:
    if n < 1:
        raise InvalidInput("dyck needs N >= 1")
    return graph_inverse(("p",), [("p", "p")] * n)


def random_rgraph(rng: random.Random, max_vertices: int = 3, max_mult: int = 2) -> RGraph:
    """Random valid R-graph with an arbitrary (possibly empty per class) relation."""
    nv = rng.randint(1, max_vertices)
    verts = [f"v{i}" for i in range(nv)]
    classes = {(verts[i], verts[(i + 1) % nv]) for i in range(nv)}
    for q, r in product(verts, repeat=2):
        if rng.random() < 0.35:
            classes.add((q, r))
    minus, plus, rel = [], [], set()
    mid = pid = 0
    for q, r in sorted(classes):
        ms = list(range(mid, mid + rng.randint(1, max_mult)))
        ps = list(range(pid, pid + rng.randint(1, max_mult)))
        mid, pid = mid + len(ms), pid + len(ps)
        minus += [Edge(i, q, r, f"m{i}") for i in ms]
        plus += [Edge(i, q, r, f"p{i}") for i in ps]
        for m in ms:
            for p in ps:
                if rng.random() < 0.5:
                    rel.add((m, p))
    return RGraph(tuple(verts), tuple(minus), tuple(plus), frozenset(rel))


# ----------------------------------------------------------------------
# element enumeration


def _minus_paths(g: RGraph, start: str, length: int) -> Iterator[tuple[int, ...]]:
    if length == 0:
        yield ()
        return
    for e in g.minus:
        if e.q == start:
            for rest in _minus_paths(g, e.r, length - 1):
                yield (e.id,) + rest


def _plus_paths_into(g: RGraph, end: str, length: int) -> Iterator[tuple[int, ...]]:
    """Plus blocks whose right unit is ``end``."""
    if length == 0:
        yield ()
        return
    for e in g.plus:
        if e.q == end:
            for rest in _plus_paths_into(g, e.r, length - 1):
                yield rest + (e.id,)


def elements(g: RGraph, max_len: int) -> list[Word]:
    """All non-zero normal forms with at most ``max_len`` edge factors."""
    out = []
    for p in g.vertices:
        for lp in range(max_len + 1):
            for lm in range(max_len + 1 - lp):
                for pl in _plus_paths_into(g, p, lp):
                    for mi in _minus_paths(g, p, lm):
                        out.append(Word(pl, p, mi))
    return sorted(out)


def random_element(g: RGraph, rng: random.Random, max_len: int = 6):
    p = rng.choice(g.vertices)
    lp = rng.randint(0, max_len)
    lm = rng.randint(0, max_len - lp)
    plus: list[int] = []
    cur = p
    for _ in range(lp):
        choices = [e for e in g.plus if e.q == cur]
        if not choices:
            break
        e = rng.choice(choices)
        plus.insert(0, e.id)
        cur = e.r
    minus: list[int] = []
    cur = p
    for _ in range(lm):
        choices = [e for e in g.minus if e.q == cur]
        if not choices:
            break
        e = rng.choice(choices)
        minus.append(e.id)
        cur = e.r
    return Word(tuple(plus), p, tuple(minus))


# ----------------------------------------------------------------------
# reconstruction from the semigroup


@dataclass(frozen=True)
class SemigroupProbe:
    """Finite window onto the semigroup: a pool of non-zero elements closed
    enough to contain every generator and every product of two generators,
    together with the multiplication."""

    pool: tuple
    graph: RGraph

    def mul(self, a, b):
        return mul(a, b, self.graph)

    @classmethod
    def of(cls, g: RGraph, max_len: int = 2) -> "SemigroupProbe":
        return cls(tuple(elements(g, max_len)), g)


def reconstruct_rgraph(probe: SemigroupProbe) -> RGraph:
    """Rebuild the R-graph from units, indecomposable pure elements and products.

    Units are the idempotents ``U`` that act as identity on every pool element
    they do not annihilate.  Pure elements are separated by sign through their
    normal form; an element is an edge when it is not a product of two non-unit
    pure pool elements of its sign.
    """
    pool = probe.pool
    m = probe.mul
    idem = [e for e in pool if m(e, e) == e]
    units = []
    for u in idem:
        if all(m(f, u) in (ZERO, f) and m(u, f) in (ZERO, f) for f in pool):
            units.append(u)
    unit_set = set(units)
    name = {u: u.idem for u in units}

    def lunit(f):
        return next(name[u] for u in units if m(u, f) != ZERO)

    def runit(f):
        return next(name[u] for u in units if m(f, u) != ZERO)

    minus_pure = [f for f in pool if f not in unit_set and classify(f).kind is Kind.PURE_MINUS]
    plus_pure = [f for f in pool if f not in unit_set and classify(f).kind is Kind.PURE_PLUS]

    def indecomposable(f, same):
        return not any(m(a, b) == f for a in same for b in same)

    minus_edges = [f for f in minus_pure if indecomposable(f, minus_pure)]
    plus_edges = [f for f in plus_pure if indecomposable(f, plus_pure)]
    minus = tuple(Edge(i, lunit(f), runit(f)) for i, f in enumerate(minus_edges))
    # a plus edge of class (q, r) has left unit r and right unit q
    plus = tuple(Edge(i, runit(f), lunit(f)) for i, f in enumerate(plus_edges))
    rel = frozenset(
        (i, j)
        for i, f in enumerate(minus_edges)
        for j, h in enumerate(plus_edges)
        if m(f, h) != ZERO
    )
    return RGraph(tuple(sorted(name.values())), minus, plus, rel)


def _encode(g: RGraph) -> nx.DiGraph:
    d = nx.DiGraph()
    for v in g.vertices:
        d.add_node(("v", v), kind=f"vertex:{v}")
    for sign, edges in (("-", g.minus), ("+", g.plus)):
        for e in edges:
            node = (sign, e.id)
            d.add_node(node, kind=f"edge{sign}")
            d.add_edge(("v", e.q), node, kind="q")
            d.add_edge(node, ("v", e.r), kind="r")
    for a, b in g.relation:
        node = ("R", a, b)
        d.add_node(node, kind="rel")
        d.add_edge(("-", a), node, kind="rel")
        d.add_edge(node, ("+", b), kind="rel")
    return d


def isomorphic(g: RGraph, h: RGraph) -> bool:
    """Isomorphism of R-graphs that fixes vertex names and may relabel edges."""
    if set(g.vertices) != set(h.vertices):
        return False
    same = lambda a, b: a["kind"] == b["kind"]  # noqa: E731
    return nx.is_isomorphic(_encode(g), _encode(h), node_match=same, edge_match=same)
