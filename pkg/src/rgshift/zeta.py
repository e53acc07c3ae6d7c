"""Zeta functions of presented shifts.

Two routes are provided.  The brute-force route exponentiates the periodic
point counts.  The code route splits the periodic points into Markov parts
over ``S- U units`` and ``units U S+`` and three circular codes (neutral,
negative, positive) and combines their generating matrices through
determinants.  Both are exact over the rationals up to a truncation order.
"""

from __future__ import annotations

import enum
import json
import warnings
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Sequence

from .periodic import periodic_counts
from .presentation import BudgetExceeded, PEdge, Presentation
from .rgraph import ZERO, InvalidInput, mul


# ----------------------------------------------------------------------
# truncated power series


class FormalSeries:
    """Power series in ``z`` truncated at order ``N`` (coefficients c_0..c_N)."""

    __slots__ = ("N", "c")

    def __init__(self, coeffs: Iterable = (), N: int | None = None):
        cs = [Fraction(x) for x in coeffs]
        if N is None:
            N = max(len(cs) - 1, 0)
        if N < 0:
            raise InvalidInput("truncation order must be >= 0")
        cs = cs[: N + 1]
        cs += [Fraction(0)] * (N + 1 - len(cs))
        self.N = N
        self.c = cs

    @classmethod
    def zero(cls, N: int) -> FormalSeries:
        return cls((), N)

    @classmethod
    def one(cls, N: int) -> FormalSeries:
        return cls((1,), N)

    @classmethod
    def monomial(cls, coeff, k: int, N: int) -> FormalSeries:
        cs = [0] * (N + 1)
        if k <= N:
            cs[k] = coeff
        return cls(cs, N)

    def _coerce(self, other) -> FormalSeries:
        if isinstance(other, FormalSeries):
            if other.N != self.N:
                n = min(self.N, other.N)
                return FormalSeries(other.c, n)
            return other
        if isinstance(other, (int, Fraction)):
            return FormalSeries((other,), self.N)
        return NotImplemented

    def _common(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented, NotImplemented
        n = min(self.N, o.N)
        a = self if self.N == n else FormalSeries(self.c, n)
        return a, (o if o.N == n else FormalSeries(o.c, n))

    def __add__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return FormalSeries([x + y for x, y in zip(a.c, b.c)], a.N)

    __radd__ = __add__

    def __neg__(self):
        return FormalSeries([-x for x in self.c], self.N)

    def __sub__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return FormalSeries([x - y for x, y in zip(a.c, b.c)], a.N)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FormalSeries([x * other for x in self.c], self.N)
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        N = a.N
        out = [Fraction(0)] * (N + 1)
        for i, x in enumerate(a.c):
            if x:
                for j in range(N + 1 - i):
                    y = b.c[j]
                    if y:
                        out[i + j] += x * y
        return FormalSeries(out, N)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return FormalSeries([x / other for x in self.c], self.N)
        return self * other.reciprocal()

    def __pow__(self, k: int):
        if k < 0:
            return self.reciprocal() ** (-k)
        out = FormalSeries.one(self.N)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.N == o.N and self.c == o.c

    def __hash__(self):
        return hash((self.N, tuple(self.c)))

    def __getitem__(self, k: int) -> Fraction:
        return self.c[k]

    def truncate(self, N: int) -> FormalSeries:
        if N > self.N:
            raise InvalidInput(f"cannot extend a series known to order {self.N} to order {N}")
        return FormalSeries(self.c, N)

    def reciprocal(self) -> FormalSeries:
        c0 = self.c[0]
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term has no reciprocal")
        out = [Fraction(0)] * (self.N + 1)
        out[0] = 1 / c0
        for n in range(1, self.N + 1):
            s = sum(self.c[k] * out[n - k] for k in range(1, n + 1))
            out[n] = -s / c0
        return FormalSeries(out, self.N)

    def derivative(self) -> FormalSeries:
        """Derivative, kept at the same order with a zero top coefficient."""
        cs = [k * self.c[k] for k in range(1, self.N + 1)] + [Fraction(0)]
        return FormalSeries(cs, self.N)

    def integral(self) -> FormalSeries:
        cs = [Fraction(0)] + [self.c[k] / (k + 1) for k in range(self.N)]
        return FormalSeries(cs, self.N)

    def exp(self) -> FormalSeries:
        if self.c[0] != 0:
            raise InvalidInput("exp needs a zero constant term")
        # f' = f g' solved coefficientwise
        N = self.N
        dg = [k * self.c[k] for k in range(N + 1)]
        f = [Fraction(0)] * (N + 1)
        f[0] = Fraction(1)
        for n in range(1, N + 1):
            f[n] = sum(dg[k] * f[n - k] for k in range(1, n + 1)) / n
        return FormalSeries(f, N)

    def log(self) -> FormalSeries:
        if self.c[0] != 1:
            raise InvalidInput("log needs constant term 1")
        # log f = integral of f'/f; f' is exact to order N-1
        N = self.N
        q = [Fraction(0)] * (N + 1)
        for n in range(N):
            q[n] = (n + 1) * self.c[n + 1] - sum(self.c[k] * q[n - k] for k in range(1, n + 1))
        return FormalSeries([Fraction(0)] + [q[n] / (n + 1) for n in range(N)], N)

    def is_polynomial_in(self, degree: int) -> bool:
        return all(x == 0 for x in self.c[degree + 1 :])

    def __repr__(self) -> str:
        return f"FormalSeries({str(self)!r}, N={self.N})"

    def __str__(self) -> str:
        terms = []
        for k, x in enumerate(self.c):
            if x == 0 and k:
                continue
            q = str(x)
            if k == 0:
                terms.append(q)
            elif k == 1:
                terms.append(f"{q} z")
            else:
                terms.append(f"{q} z^{k}")
        if len(terms) > 1 and self.c[0] == 0:
            terms = terms[1:]
        return " + ".join(terms).replace("+ -", "- ") + f" + O(z^{self.N + 1})"

    def to_json_list(self) -> list[list[str]]:
        return [[str(x.numerator), str(x.denominator)] for x in self.c]

    @classmethod
    def from_json_list(cls, data: Sequence[Sequence[str]]) -> FormalSeries:
        return cls([Fraction(int(p), int(q)) for p, q in data])

    def to_json(self) -> str:
        return json.dumps(self.to_json_list())


def geometric(a, N: int) -> FormalSeries:
    """1 / (1 - a z)."""
    return FormalSeries([Fraction(a) ** k for k in range(N + 1)], N)


# ----------------------------------------------------------------------
# matrices over series


class SeriesMatrix:
    """Square matrix with FormalSeries entries, rows and columns indexed by ``states``."""

    COFACTOR_MAX = 6

    def __init__(self, states: Sequence, entries: Sequence[Sequence[FormalSeries]], N: int):
        self.states = tuple(states)
        self.N = N
        n = len(self.states)
        if len(entries) != n or any(len(r) != n for r in entries):
            raise InvalidInput("matrix shape does not match its states")
        self.rows = [[FormalSeries(x.c, N) if x.N != N else x for x in r] for r in entries]

    @classmethod
    def zeros(cls, states: Sequence, N: int) -> SeriesMatrix:
        n = len(states)
        return cls(states, [[FormalSeries.zero(N) for _ in range(n)] for _ in range(n)], N)

    @classmethod
    def identity(cls, states: Sequence, N: int) -> SeriesMatrix:
        m = cls.zeros(states, N)
        for i in range(len(m.states)):
            m.rows[i][i] = FormalSeries.one(N)
        return m

    @classmethod
    def from_counts(cls, states: Sequence, counts: dict, N: int) -> SeriesMatrix:
        """``counts[(u, v)]`` is a list of coefficients (index = length)."""
        m = cls.zeros(states, N)
        idx = {s: i for i, s in enumerate(m.states)}
        for (u, v), cs in counts.items():
            m.rows[idx[u]][idx[v]] = m.rows[idx[u]][idx[v]] + FormalSeries(cs[: N + 1], N)
        return m

    @classmethod
    def from_int_matrix(cls, states: Sequence, A: Sequence[Sequence[int]], N: int, power: int = 1) -> SeriesMatrix:
        """The matrix ``A z^power``."""
        return cls(states, [[FormalSeries.monomial(x, power, N) for x in row] for row in A], N)

    def __len__(self) -> int:
        return len(self.states)

    def entry(self, u, v) -> FormalSeries:
        return self.rows[self.states.index(u)][self.states.index(v)]

    def __add__(self, other: SeriesMatrix) -> SeriesMatrix:
        return SeriesMatrix(self.states, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.N)

    def __sub__(self, other: SeriesMatrix) -> SeriesMatrix:
        return SeriesMatrix(self.states, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.N)

    def __mul__(self, other: SeriesMatrix) -> SeriesMatrix:
        n = len(self.states)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = FormalSeries.zero(self.N)
                for k in range(n):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return SeriesMatrix(self.states, out, self.N)

    def __eq__(self, other) -> bool:
        return isinstance(other, SeriesMatrix) and self.states == other.states and self.rows == other.rows

    def one_minus(self) -> SeriesMatrix:
        return SeriesMatrix.identity(self.states, self.N) - self

    def det(self) -> FormalSeries:
        n = len(self.states)
        if n == 0:
            return FormalSeries.one(self.N)
        if n <= self.COFACTOR_MAX:
            return _det_cofactor(self.rows, self.N)
        return _det_elimination(self.rows, self.N)

    def to_dict(self) -> dict:
        return {
            "states": [str(s) for s in self.states],
            "entries": [[x.to_json_list() for x in r] for r in self.rows],
        }


def _det_cofactor(rows, N: int) -> FormalSeries:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = FormalSeries.zero(N)
    for j in range(n):
        a = rows[0][j]
        if all(x == 0 for x in a.c):
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        t = a * _det_cofactor(minor, N)
        acc = acc + t if j % 2 == 0 else acc - t
    return acc


def _det_elimination(rows, N: int) -> FormalSeries:
    """Gaussian elimination over the series ring.

    A pivot must have an invertible constant term.  Matrices of the form
    ``1 - H`` with ``H(0) = 0`` always admit one on the diagonal.
    """
    m = [list(r) for r in rows]
    n = len(m)
    det = FormalSeries.one(N)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col].c[0] != 0), None)
        if piv is None:
            if all(all(x == 0 for x in m[r][col].c) for r in range(col, n)):
                return FormalSeries.zero(N)
            # fall back to the exact expansion when no unit pivot exists
            return _det_cofactor([r[col:] for r in m[col:]], N) * det
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        p = m[col][col]
        det = det * p
        inv = p.reciprocal()
        for r in range(col + 1, n):
            f = m[r][col]
            if all(x == 0 for x in f.c):
                continue
            f = f * inv
            m[r] = [m[r][k] - f * m[col][k] if k >= col else m[r][k] for k in range(n)]
    return det


def det_permutation(M: SeriesMatrix) -> FormalSeries:
    """Leibniz formula; an independent route used by the tests."""
    n = len(M)
    acc = FormalSeries.zero(M.N)
    for perm in permutations(range(n)):
        sign = 1
        seen = [False] * n
        for i in range(n):
            if not seen[i]:
                j, k = i, 0
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
                    k += 1
                if k % 2 == 0:
                    sign = -sign
        t = FormalSeries.one(M.N)
        for i in range(n):
            t = t * M.rows[i][perm[i]]
        acc = acc + t if sign > 0 else acc - t
    return acc


# ----------------------------------------------------------------------
# circular Markov codes


class Convention(enum.Enum):
    FIRST_RETURN = "first-return"
    STRICT_PAPER = "strict-paper"


@dataclass
class MarkovCode:
    """Code words grouped by (s-state, t-state) with counts per length.

    ``counts[(u, v)][n]`` is the number of code words of length ``n`` from
    state ``u`` to state ``v``.  ``words`` is filled only when explicit
    enumeration was requested.
    """

    name: str
    states: tuple
    maxlen: int
    counts: dict = field(default_factory=dict)
    words: tuple | None = None

    def total(self, n: int) -> int:
        return sum(cs[n] for cs in self.counts.values() if n < len(cs))

    def to_dict(self, pres: Presentation | None = None) -> dict:
        d = {
            "name": self.name,
            "states": [str(s) for s in self.states],
            "maxlen": self.maxlen,
            "counts": {f"{u}->{v}": cs for (u, v), cs in sorted(self.counts.items())},
        }
        if self.words is not None:
            d["words"] = [pres.format_word(w) if pres else list(w) for w in self.words]
        return d


@dataclass
class MarkovPart:
    """Symbols whose labels lie in one signed half, with the path transition matrix."""

    name: str
    symbols: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {"name": self.name, "symbols": list(self.symbols), "matrix": [list(r) for r in self.matrix]}


def _is_unit(lab) -> bool:
    return lab is not ZERO and not lab.plus and not lab.minus


def _pure_minus(lab) -> bool:
    return lab is not ZERO and not lab.plus and bool(lab.minus)


def _pure_plus(lab) -> bool:
    return lab is not ZERO and bool(lab.plus) and not lab.minus


def _code_dp(pres: Presentation, maxlen: int, keep, accept, forward: bool, budget: int, collect: bool):
    """Generic layered search over (start, end, label) states.

    Paths are grown to the right (``forward``) or to the left.  After each
    step ``accept(label, length)`` decides whether the path is a code word
    and ``keep(label, length)`` whether it may still grow.
    """
    g = pres.rgraph
    counts: dict = defaultdict(lambda: [0] * (maxlen + 1))
    words: list = []
    layer: dict = defaultdict(int)
    wlayer: dict = defaultdict(list)
    for e in pres.edges:
        key = (e.src, e.dst, e.label)
        layer[key] += 1
        if collect:
            wlayer[key].append((e.id,))
    ins: dict = defaultdict(list)
    for e in pres.edges:
        ins[e.dst].append(e)
    length = 1
    while layer:
        nxt: dict = defaultdict(int)
        wnxt: dict = defaultdict(list)
        for key, cnt in layer.items():
            s, t, lab = key
            if accept(lab, length):
                counts[(s, t)][length] += cnt
                if collect:
                    words.extend(wlayer[key])
            if length == maxlen or not keep(lab, length):
                continue
            if forward:
                for e in pres.out_edges(t):
                    nl = mul(lab, e.label, g)
                    if nl is ZERO:
                        continue
                    nk = (s, e.dst, nl)
                    nxt[nk] += cnt
                    if collect:
                        wnxt[nk].extend(w + (e.id,) for w in wlayer[key])
            else:
                for e in ins[s]:
                    nl = mul(e.label, lab, g)
                    if nl is ZERO:
                        continue
                    nk = (e.src, t, nl)
                    nxt[nk] += cnt
                    if collect:
                        wnxt[nk].extend((e.id,) + w for w in wlayer[key])
        if len(nxt) > budget:
            raise BudgetExceeded("code enumeration states", budget)
        layer, wlayer = nxt, wnxt
        length += 1
    return dict(counts), (tuple(sorted(words, key=lambda w: (len(w), w))) if collect else None)


def enumerate_C0(
    pres: Presentation,
    maxlen: int,
    convention: Convention | str = Convention.FIRST_RETURN,
    collect: bool = False,
    budget: int = 2_000_000,
) -> MarkovCode:
    """Neutral code: paths with a unit label and no unit-labeled proper prefix.

    ``first-return`` excludes every proper non-empty prefix and admits words
    of length 1.  ``strict-paper`` needs length > 1 and only excludes
    prefixes of length strictly between 1 and the word length.
    """
    conv = Convention(convention)
    if maxlen < 1:
        raise InvalidInput("maxlen must be >= 1")

    # a label with a plus block can never be completed to a unit, and each
    # further symbol cancels at most ``reach`` minus letters
    reach = max((len(e.label.plus) for e in pres.edges), default=0)

    def closable(lab, n):
        return not lab.plus and len(lab.minus) <= (maxlen - n) * reach

    if conv is Convention.FIRST_RETURN:
        def accept(lab, n):
            return _is_unit(lab)

        def keep(lab, n):
            return closable(lab, n) and not _is_unit(lab)
    else:
        def accept(lab, n):
            return n > 1 and _is_unit(lab)

        def keep(lab, n):
            return closable(lab, n) and (n == 1 or not _is_unit(lab))

    counts, words = _code_dp(pres, maxlen, keep, accept, True, budget, collect)
    return MarkovCode("C0", tuple(pres.vertices), maxlen, counts, words)


def enumerate_C_circ(pres: Presentation, sign: str, maxlen: int, collect: bool = False, budget: int = 2_000_000) -> MarkovCode:
    """``C-o``: whole label in S- or a unit, every proper suffix in S+.
    ``C+o``: whole label in S+ or a unit, every proper prefix in S-.
    Both need length > 1.
    """
    if sign == "-":
        def accept(lab, n):
            return n > 1 and (_pure_minus(lab) or _is_unit(lab))

        def keep(lab, n):
            return _pure_plus(lab)

        counts, words = _code_dp(pres, maxlen, keep, accept, False, budget, collect)
    elif sign == "+":
        def accept(lab, n):
            return n > 1 and (_pure_plus(lab) or _is_unit(lab))

        def keep(lab, n):
            return _pure_minus(lab)

        counts, words = _code_dp(pres, maxlen, keep, accept, True, budget, collect)
    else:
        raise InvalidInput("sign must be '-' or '+'")
    return MarkovCode(f"C{sign}o", tuple(pres.vertices), maxlen, counts, words)


def markov_part(pres: Presentation, sign: str) -> MarkovPart:
    """Symbols labeled in ``S- U units`` (sign '-') or ``units U S+`` (sign '+')."""
    if sign not in "-+" or len(sign) != 1:
        raise InvalidInput("sign must be '-' or '+'")
    pick = _pure_minus if sign == "-" else _pure_plus
    syms = tuple(e.id for e in pres.edges if pick(e.label) or _is_unit(e.label))
    A = tuple(tuple(int(pres.edge(a).dst == pres.edge(b).src) for b in syms) for a in syms)
    return MarkovPart(f"Sigma{sign}", syms, A)


def _markov_paths(pres: Presentation, part: MarkovPart, maxlen: int) -> dict:
    """Counts of non-empty paths inside a Markov part, by endpoints and length."""
    counts: dict = defaultdict(lambda: [0] * (maxlen + 1))
    layer: dict = defaultdict(int)
    for s in part.symbols:
        e = pres.edge(s)
        layer[(e.src, e.dst)] += 1
    out_by: dict = defaultdict(list)
    for s in part.symbols:
        e = pres.edge(s)
        out_by[e.src].append(e.dst)
    for n in range(1, maxlen + 1):
        for k, c in layer.items():
            counts[k][n] += c
        nxt: dict = defaultdict(int)
        for (u, v), c in layer.items():
            for w in out_by[v]:
                nxt[(u, w)] += c
        layer = nxt
    return dict(counts)


def enumerate_Cpm(pres: Presentation, maxlen: int, collect: bool = False, budget: int = 2_000_000) -> tuple[MarkovCode, MarkovCode]:
    """``C- = C-o U C-o . L(Sigma-)`` and ``C+ = C+o U C+o . L(Sigma+)``."""
    out = []
    for sign in "-+":
        circ = enumerate_C_circ(pres, sign, maxlen, collect, budget)
        part = markov_part(pres, sign)
        paths = _markov_paths(pres, part, maxlen)
        counts: dict = defaultdict(lambda: [0] * (maxlen + 1))
        for (u, v), cs in circ.counts.items():
            for i, x in enumerate(cs):
                if x:
                    counts[(u, v)][i] += x
            for (v2, w), ps in paths.items():
                if v2 != v:
                    continue
                for i, x in enumerate(cs):
                    if not x:
                        continue
                    for j in range(1, maxlen + 1 - i):
                        if ps[j]:
                            counts[(u, w)][i + j] += x * ps[j]
        words = None
        if collect:
            words = _extend_words(pres, circ.words, part, maxlen)
        out.append(MarkovCode(f"C{sign}", circ.states, maxlen, dict(counts), words))
    return out[0], out[1]


def _extend_words(pres: Presentation, base, part: MarkovPart, maxlen: int) -> tuple:
    syms = set(part.symbols)
    res = []

    def rec(w):
        res.append(w)
        if len(w) == maxlen:
            return
        end = pres.edge(w[-1]).dst
        for e in pres.out_edges(end):
            if e.id in syms:
                rec(w + (e.id,))

    for w in base:
        rec(w)
    return tuple(sorted(res, key=lambda w: (len(w), w)))


def H_matrix(code: MarkovCode, N: int) -> SeriesMatrix:
    if code.maxlen < N:
        raise InvalidInput(f"code {code.name} enumerated to length {code.maxlen}; order {N} needs length >= {N}")
    return SeriesMatrix.from_counts(code.states, code.counts, N)


def markov_det(part: MarkovPart, N: int) -> FormalSeries:
    """det(1 - A z); equal to 1 for an empty symbol set."""
    if not part.symbols:
        return FormalSeries.one(N)
    return SeriesMatrix.from_int_matrix(part.symbols, part.matrix, N).one_minus().det()


@dataclass
class Theorem91Parts:
    N: int
    convention: str
    C0: MarkovCode
    Cminus: MarkovCode
    Cplus: MarkovCode
    Aminus: MarkovPart
    Aplus: MarkovPart
    det_C0: FormalSeries
    det_Cminus: FormalSeries
    det_Cplus: FormalSeries
    det_Aminus: FormalSeries
    det_Aplus: FormalSeries

    @property
    def zeta(self) -> FormalSeries:
        den = self.det_Aminus * self.det_Cminus * self.det_Cplus * self.det_Aplus
        return self.det_C0 * den.reciprocal()

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "convention": self.convention,
            "det_C0": str(self.det_C0),
            "det_Cminus": str(self.det_Cminus),
            "det_Cplus": str(self.det_Cplus),
            "det_Aminus": str(self.det_Aminus),
            "det_Aplus": str(self.det_Aplus),
            "zeta": str(self.zeta),
        }


def theorem91_parts(pres: Presentation, N: int, convention: Convention | str = Convention.FIRST_RETURN, budget: int = 2_000_000) -> Theorem91Parts:
    if N < 1:
        raise InvalidInput("order must be >= 1")
    conv = Convention(convention)
    c0 = enumerate_C0(pres, N, conv, budget=budget)
    cm, cp = enumerate_Cpm(pres, N, budget=budget)
    am, ap = markov_part(pres, "-"), markov_part(pres, "+")
    return Theorem91Parts(
        N,
        conv.value,
        c0,
        cm,
        cp,
        am,
        ap,
        H_matrix(c0, N).one_minus().det(),
        H_matrix(cm, N).one_minus().det(),
        H_matrix(cp, N).one_minus().det(),
        markov_det(am, N),
        markov_det(ap, N),
    )


def zeta_theorem91(pres: Presentation, N: int, convention: Convention | str = Convention.FIRST_RETURN, budget: int = 2_000_000) -> FormalSeries:
    return theorem91_parts(pres, N, convention, budget).zeta


def zeta_from_counts(pis: Sequence[int], N: int) -> FormalSeries:
    """exp(sum Pi_n z^n / n) with ``pis[n-1] = Pi_n``."""
    if len(pis) < N:
        raise InvalidInput(f"need {N} periodic counts, got {len(pis)}")
    s = FormalSeries([0] + [Fraction(pis[n - 1], n) for n in range(1, N + 1)], N)
    return s.exp()


def zeta_bruteforce(pres: Presentation, N: int, budget: int = 5_000_000) -> FormalSeries:
    if N < 1:
        return FormalSeries.one(max(N, 0))
    counts = periodic_counts(pres, N, budget)
    return zeta_from_counts([c.pi_n for c in counts], N)


def periodic_from_zeta(z: FormalSeries) -> list[int]:
    """Recover Pi_1..Pi_N as n [z^n] log zeta."""
    lg = z.log()
    out = []
    for n in range(1, z.N + 1):
        v = n * lg[n]
        if v.denominator != 1:
            raise ValueError(f"non-integral periodic count at n={n}: {v}")
        out.append(int(v))
    return out


# ----------------------------------------------------------------------
# neutral-class invariant


@dataclass
class XiPolynomial:
    """Polynomial in xi with series coefficients; ``coeffs[k]`` multiplies xi^k."""

    coeffs: list[FormalSeries]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other) -> bool:
        return isinstance(other, XiPolynomial) and self.coeffs == other.coeffs

    def to_dict(self) -> dict:
        return {f"xi^{k}": str(c) for k, c in enumerate(self.coeffs)}


def neutral_zetas(pres: Presentation, N: int, budget: int = 5_000_000) -> dict[str, FormalSeries]:
    """zeta of the neutral periodic points of each class p."""
    counts = periodic_counts(pres, N, budget)
    out = {}
    for p in pres.rgraph.vertices:
        out[p] = zeta_from_counts([c.neutral.get(p, 0) for c in counts], N)
    return out


def prop92_invariant(pres: Presentation, N: int, budget: int = 5_000_000) -> XiPolynomial:
    """prod over classes p of (xi - zeta_p)."""
    g = pres.rgraph
    indeg: dict = defaultdict(int)
    for e in g.minus:
        indeg[e.r] += 1
    for e in g.plus:
        indeg[e.q] += 1
    thin = [p for p in g.vertices if indeg[p] < 2]
    if thin:
        warnings.warn(f"vertices {thin} have fewer than two incoming edges; the invariant is not known to hold there", stacklevel=2)
    poly = [FormalSeries.one(N)]
    for p, zp in sorted(neutral_zetas(pres, N, budget).items()):
        # multiply by (xi - zp)
        new = [FormalSeries.zero(N) for _ in range(len(poly) + 1)]
        for k, c in enumerate(poly):
            new[k + 1] = new[k + 1] + c
            new[k] = new[k] - c * zp
        poly = new
    return XiPolynomial(poly)


def catalan(k: int) -> int:
    from math import comb

    return comb(2 * k, k) // (k + 1)


@dataclass
class CatalanCheck:
    N: int
    kmax: int
    from_code: list[int]
    from_counts: list[int]
    expected: list[int]

    @property
    def ok(self) -> bool:
        return self.from_code == self.expected and self.from_counts == self.expected[: len(self.from_counts)]

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "kmax": self.kmax,
            "expected": self.expected,
            "from_code": self.from_code,
            "from_counts": self.from_counts,
            "ok": self.ok,
        }


def catalan_check(n_letters: int, kmax: int = 8, counts_kmax: int = 4) -> CatalanCheck:
    """Neutral zeta of the one-vertex Dyck shift on ``n_letters`` letters.

    The code route reads N^k C_k off ``1 / (1 - H_C0)`` at z^(2k).  The count
    route exponentiates neutral periodic counts (cheaper orders only).
    """
    from .presentation import identity_presentation
    from .rgraph import dyck

    pres = identity_presentation(dyck(n_letters))
    order = 2 * kmax
    h = H_matrix(enumerate_C0(pres, order), order)
    zp = h.one_minus().det().reciprocal()
    from_code = [int(zp[2 * k]) for k in range(kmax + 1)]
    order2 = 2 * counts_kmax
    zc = next(iter(neutral_zetas(pres, order2).values()))
    from_counts = [int(zc[2 * k]) for k in range(counts_kmax + 1)]
    expected = [n_letters**k * catalan(k) for k in range(kmax + 1)]
    return CatalanCheck(n_letters, kmax, from_code, from_counts, expected)


def two_block_presentation(pres: Presentation) -> Presentation:
    """Recoding on admissible 2-blocks: vertex per symbol, edge per admissible pair labeled by its second symbol."""
    g = pres.rgraph
    verts = tuple(f"e{e.id}" for e in pres.edges)
    edges = []
    k = 0
    for a in pres.edges:
        for b in pres.out_edges(a.dst):
            if mul(a.label, b.label, g) is ZERO:
                continue
            edges.append(PEdge(k, f"e{a.id}", f"e{b.id}", b.label, f"{pres.symbol_name(a.id)}.{pres.symbol_name(b.id)}"))
            k += 1
    return Presentation(g, verts, tuple(edges))


# ----------------------------------------------------------------------
# circularity spot-check


def parse_counts(cyc: Sequence[int], code_words: Iterable[tuple]) -> int:
    """Number of distinct cut sets splitting the cyclic word into code words."""
    n = len(cyc)
    words = set(code_words)
    doubled = tuple(cyc) * 2
    total = 0
    for start in range(n):
        # cut sets whose first cut (mod n) is ``start``
        ways = [0] * (n + 1)
        ways[0] = 1
        for i in range(n):
            if not ways[i]:
                continue
            for j in range(i + 1, n + 1):
                if j < n and start + j >= n:
                    continue
                if doubled[start + i : start + j] in words:
                    ways[j] += ways[i]
        total += ways[n]
    return total
