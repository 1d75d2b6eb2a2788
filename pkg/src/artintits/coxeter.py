"""Exact combinatorics of Coxeter systems.

Elements are kept as canonical reduced words (the lexicographically minimal
reduced expression with respect to the graph's declared generator order), so
element equality is word identity.  Length and descent queries run on one of
two interchangeable engines:

* geometric -- the canonical reflection representation with exact arithmetic.
  Coordinates live in Z when every finite label is 2 or 3 (the doubled Cartan
  integers 2*cos(pi/m) are then 0, 1 or 2), and in Z[sqrt2, sqrt3] when labels
  4 or 6 also occur.  A positive image of a simple root means the length goes
  up.
* combinatorial -- Tits' braid-move closure.  Slower, but works for any
  labels, and is kept fully independent of the geometric engine so the two
  can cross-check each other.

Any other finite label (5, 7, ...) disables the geometric engine and the
combinatorial one takes over everywhere.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .errors import (
    AsymmetricOrMissingEntry,
    BadLabel,
    CapExceeded,
    DuplicateName,
    GraphMismatch,
    NotFinite,
    UnknownGenerator,
)

INFINITY = math.inf

# scalar kinds for the geometric engine
_KIND_INT = "int"
_KIND_QUAD = "quad"


# ---------------------------------------------------------------------------
# arithmetic in Z[sqrt2, sqrt3]; elements are 4-tuples (a, b, c, d) standing
# for a + b*sqrt2 + c*sqrt3 + d*sqrt6
# ---------------------------------------------------------------------------

_Q_ZERO = (0, 0, 0, 0)
_Q_ONE = (1, 0, 0, 0)


def _q_add(x, y):
    return (x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3])


def _q_neg(x):
    return (-x[0], -x[1], -x[2], -x[3])


def _q_mul(x, y):
    a, b, c, d = x
    e, f, g, h = y
    return (
        a * e + 2 * b * f + 3 * c * g + 6 * d * h,
        a * f + b * e + 3 * (c * h + d * g),
        a * g + c * e + 2 * (b * h + d * f),
        a * h + d * e + b * g + c * f,
    )


def _sign_sqrt2(a, b):
    # sign of a + b*sqrt2 over the integers
    if a == 0 and b == 0:
        return 0
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sa == 0:
        return sb
    if sb == 0 or sa == sb:
        return sa
    t = a * a - 2 * b * b  # nonzero: sqrt2 is irrational
    return sa if t > 0 else sb


def _q_sign(x):
    # sign of (a + b*sqrt2) + (c + d*sqrt2)*sqrt3
    a, b, c, d = x
    sx = _sign_sqrt2(a, b)
    sy = _sign_sqrt2(c, d)
    if sy == 0:
        return sx
    if sx == 0 or sx == sy:
        return sy
    # compare |x| with |y*sqrt3| via x^2 - 3*y^2 in Z[sqrt2]
    ta = a * a + 2 * b * b - 3 * (c * c + 2 * d * d)
    tb = 2 * a * b - 6 * c * d
    st = _sign_sqrt2(ta, tb)
    return sx if st > 0 else sy


_CARTAN_QUAD = {2: _Q_ZERO, 3: _Q_ONE, 4: (0, 1, 0, 0), 6: (0, 0, 1, 0), INFINITY: (2, 0, 0, 0)}


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------

def _normalize_label(m):
    if m is None or m == INFINITY:
        return INFINITY
    if isinstance(m, bool) or not isinstance(m, int):
        raise BadLabel(f"label must be an integer >= 2 or infinity, got {m!r}")
    if m < 2:
        raise BadLabel(f"off-diagonal label must be >= 2, got {m}")
    return m


class CoxeterGraph:
    """A Coxeter matrix over named generators.

    Immutable after construction; build instances through :func:`build_graph`
    or :func:`load_graph`.
    """

    def __init__(self, names: Sequence[str], matrix: dict):
        self.generators: tuple[str, ...] = tuple(names)
        self._index = {s: i for i, s in enumerate(self.generators)}
        self._m = matrix  # dict[(i, j)] -> label, both orders present
        finite = {m for m in matrix.values() if m != INFINITY}
        if finite <= {2, 3}:
            self.root_engine = _KIND_INT
        elif finite <= {2, 3, 4, 6}:
            self.root_engine = _KIND_QUAD
        else:
            self.root_engine = None
        self._rows_int = None
        self._rows_quad = None
        if self.root_engine == _KIND_INT:
            cart = {2: 0, 3: 1, INFINITY: 2}
            self._rows_int = [
                [(j, cart[matrix[i, j]]) for j in range(len(names)) if j != i and matrix[i, j] != 2]
                for i in range(len(names))
            ]
        elif self.root_engine == _KIND_QUAD:
            self._rows_quad = [
                [(j, _CARTAN_QUAD[matrix[i, j]]) for j in range(len(names)) if j != i and matrix[i, j] != 2]
                for i in range(len(names))
            ]
        self._braid_rules = None
        self._enum_cache: dict[frozenset, list] = {}
        # per-graph memo slots for other modules (oracles, finite tables);
        # living on the graph ties their lifetime to it
        self._caches: dict[str, dict] = {}

    # -- basic queries ------------------------------------------------------

    def index(self, s: str) -> int:
        try:
            return self._index[s]
        except KeyError:
            raise UnknownGenerator(f"unknown generator {s!r}") from None

    def label(self, s: str, t: str):
        i, j = self.index(s), self.index(t)
        if i == j:
            return 1
        return self._m[i, j]

    def subset(self, names: Iterable[str]) -> frozenset:
        X = frozenset(names)
        for s in X:
            self.index(s)
        return X

    def sorted_subset(self, X: Iterable[str]) -> tuple[str, ...]:
        """Subset contents in the graph's declared generator order."""
        return tuple(sorted(X, key=self.index))

    def is_free_of_infinity(self, X: Iterable[str]) -> bool:
        ids = [self.index(s) for s in X]
        return all(self._m[i, j] != INFINITY for i in ids for j in ids if i < j)

    # -- elements ------------------------------------------------------------

    def identity(self) -> "CoxeterElement":
        return CoxeterElement(self, (), _trusted=True)

    def element(self, word: Iterable[str]) -> "CoxeterElement":
        return reduce(self, list(word))

    def __repr__(self):
        return f"CoxeterGraph({list(self.generators)!r})"

    # -- braid rules for the combinatorial engine -----------------------------

    def _rules(self):
        if self._braid_rules is None:
            by_first: dict[int, list] = {}
            n = len(self.generators)
            for i in range(n):
                for j in range(n):
                    if i == j:
                        continue
                    m = self._m[i, j]
                    if m == INFINITY:
                        continue
                    pat = tuple((i, j)[k % 2] for k in range(m))
                    rep = tuple((j, i)[k % 2] for k in range(m))
                    by_first.setdefault(pat[0], []).append((pat, rep))
            self._braid_rules = by_first
        return self._braid_rules


def build_graph(names: Sequence[str], entries: Iterable[tuple]) -> CoxeterGraph:
    """Build a graph from an explicit list of (s, t, m) off-diagonal entries.

    Every unordered pair of distinct generators must be covered exactly once;
    ``m`` is an integer >= 2 or ``None``/``math.inf`` for an infinite label.
    """
    names = list(names)
    if len(set(names)) != len(names):
        raise DuplicateName(f"generator names are not unique: {names!r}")
    index = {s: i for i, s in enumerate(names)}
    matrix = {}
    for s, t, m in entries:
        if s not in index or t not in index:
            raise UnknownGenerator(f"entry ({s!r}, {t!r}) names an unknown generator")
        i, j = index[s], index[t]
        if i == j:
            raise BadLabel(f"diagonal entry for {s!r}: m(s,s)=1 is implicit and cannot be set")
        m = _normalize_label(m)
        if (i, j) in matrix:
            raise AsymmetricOrMissingEntry(f"pair ({s!r}, {t!r}) covered more than once")
        matrix[i, j] = m
        matrix[j, i] = m
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            if (i, j) not in matrix:
                raise AsymmetricOrMissingEntry(
                    f"pair ({names[i]!r}, {names[j]!r}) has no entry"
                )
    return CoxeterGraph(names, matrix)


class CoxeterElement:
    """A group element as its canonical (lex-minimal) reduced word."""

    __slots__ = ("graph", "ids", "word")

    def __init__(self, graph: CoxeterGraph, ids: tuple[int, ...], _trusted=False):
        if not _trusted:
            raise TypeError("use graph.element(...) or reduce(...) to build elements")
        self.graph = graph
        self.ids = ids
        self.word = tuple(graph.generators[i] for i in ids)

    @property
    def length(self) -> int:
        return len(self.ids)

    def is_identity(self) -> bool:
        return not self.ids

    def __eq__(self, other):
        return (
            isinstance(other, CoxeterElement)
            and self.graph is other.graph
            and self.ids == other.ids
        )

    def __hash__(self):
        return hash((id(self.graph), self.ids))

    def __mul__(self, other):
        return multiply(self, other)

    def __repr__(self):
        return f"<{' '.join(self.word) or '1'}>"


# ---------------------------------------------------------------------------
# geometric kernels on id-words
# ---------------------------------------------------------------------------

def _append_right_int(graph, word, s):
    """Return (new_word, ascended) for w*s, w given as a reduced id-word."""
    rows = graph._rows_int
    n = len(graph.generators)
    v = [0] * n
    v[s] = 1
    for j in range(len(word) - 1, -1, -1):
        t = word[j]
        # exchange happens exactly where the tracked root equals alpha_t
        if v[t] == 1 and not any(v[u] for u in range(n) if u != t):
            return word[:j] + word[j + 1:], False
        x = -v[t]
        for u, c in rows[t]:
            if v[u]:
                x += c * v[u]
        v[t] = x
    return word + (s,), True


def _append_right_quad(graph, word, s):
    rows = graph._rows_quad
    n = len(graph.generators)
    v = [_Q_ZERO] * n
    v[s] = _Q_ONE
    for j in range(len(word) - 1, -1, -1):
        t = word[j]
        if v[t] == _Q_ONE and all(v[u] == _Q_ZERO for u in range(n) if u != t):
            return word[:j] + word[j + 1:], False
        x = _q_neg(v[t])
        for u, c in rows[t]:
            if v[u] != _Q_ZERO:
                x = _q_add(x, _q_mul(c, v[u]))
        v[t] = x
    return word + (s,), True


def _append_left_int(graph, word, s):
    rows = graph._rows_int
    n = len(graph.generators)
    v = [0] * n
    v[s] = 1
    for j, t in enumerate(word):
        if v[t] == 1 and not any(v[u] for u in range(n) if u != t):
            return word[:j] + word[j + 1:], False
        x = -v[t]
        for u, c in rows[t]:
            if v[u]:
                x += c * v[u]
        v[t] = x
    return (s,) + word, True


def _append_left_quad(graph, word, s):
    rows = graph._rows_quad
    n = len(graph.generators)
    v = [_Q_ZERO] * n
    v[s] = _Q_ONE
    for j, t in enumerate(word):
        if v[t] == _Q_ONE and all(v[u] == _Q_ZERO for u in range(n) if u != t):
            return word[:j] + word[j + 1:], False
        x = _q_neg(v[t])
        for u, c in rows[t]:
            if v[u] != _Q_ZERO:
                x = _q_add(x, _q_mul(c, v[u]))
        v[t] = x
    return (s,) + word, True


# ---------------------------------------------------------------------------
# combinatorial (Tits) kernel
# ---------------------------------------------------------------------------

def _tits_class(graph, word):
    rules = graph._rules()
    seen = {word}
    frontier = [word]
    while frontier:
        w = frontier.pop()
        for i, first in enumerate(w):
            for pat, rep in rules.get(first, ()):
                if w[i:i + len(pat)] == pat:
                    w2 = w[:i] + rep + w[i + len(pat):]
                    if w2 not in seen:
                        seen.add(w2)
                        frontier.append(w2)
    return seen


def _tits_reduce(graph, word):
    """Reduce by Tits' algorithm; returns the lex-minimal reduced id-word."""
    word = tuple(word)
    while True:
        cls = _tits_class(graph, word)
        shorter = None
        for w in cls:
            for i in range(len(w) - 1):
                if w[i] == w[i + 1]:
                    shorter = w[:i] + w[i + 2:]
                    break
            if shorter is not None:
                break
        if shorter is None:
            # every member of the class is reduced, so the class is the full
            # set of reduced expressions and min() is the canonical word
            return min(cls) if cls else ()
        word = shorter


def _tits_append_right(graph, word, s):
    new = _tits_reduce(graph, word + (s,))
    return new, len(new) > len(word)


def _tits_append_left(graph, word, s):
    new = _tits_reduce(graph, (s,) + word)
    return new, len(new) > len(word)


# ---------------------------------------------------------------------------
# dispatch helpers (id-words in, id-words out; input words must be reduced)
# ---------------------------------------------------------------------------

def _append_right(graph, word, s):
    kind = graph.root_engine
    if kind == _KIND_INT:
        return _append_right_int(graph, word, s)
    if kind == _KIND_QUAD:
        return _append_right_quad(graph, word, s)
    return _tits_append_right(graph, word, s)


def _append_left(graph, word, s):
    kind = graph.root_engine
    if kind == _KIND_INT:
        return _append_left_int(graph, word, s)
    if kind == _KIND_QUAD:
        return _append_left_quad(graph, word, s)
    return _tits_append_left(graph, word, s)


def _fold(graph, ids):
    word = ()
    for s in ids:
        word, _ = _append_right(graph, word, s)
    return word


def _canonical(graph, word):
    """Canonicalize a reduced id-word by smallest-left-descent extraction."""
    if graph.root_engine is None:
        return _tits_reduce(graph, word)
    out = []
    while word:
        for s in range(len(graph.generators)):
            new, ascended = _append_left(graph, word, s)
            if not ascended:
                out.append(s)
                word = new
                break
        else:  # pragma: no cover - impossible: s_1 is always a left descent
            raise AssertionError("nonempty reduced word without left descent")
    return tuple(out)


def _reduce_ids(graph, ids):
    return _canonical(graph, _fold(graph, ids))


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def reduce(graph: CoxeterGraph, raw_word: Sequence[str]) -> CoxeterElement:
    """Canonical lex-minimal reduced word for the element spelled by raw_word."""
    ids = tuple(graph.index(s) for s in raw_word)
    return CoxeterElement(graph, _reduce_ids(graph, ids), _trusted=True)


def length_increases_right(w: CoxeterElement, s: str, engine: str | None = None) -> bool:
    """True iff lg(w*s) = lg(w) + 1.

    ``engine`` may force "geometric" or "combinatorial"; by default the
    geometric engine is used whenever the graph's labels support it.
    """
    graph = w.graph
    sid = graph.index(s)
    if engine is None:
        _, asc = _append_right(graph, w.ids, sid)
        return asc
    if engine == "geometric":
        if graph.root_engine == _KIND_INT:
            return _append_right_int(graph, w.ids, sid)[1]
        if graph.root_engine == _KIND_QUAD:
            return _append_right_quad(graph, w.ids, sid)[1]
        raise BadLabel("geometric engine unavailable: graph has labels outside {2,3,4,6}")
    if engine == "combinatorial":
        return _tits_append_right(graph, w.ids, sid)[1]
    raise ValueError(f"unknown engine {engine!r}")


def length_increases_left(w: CoxeterElement, s: str, engine: str | None = None) -> bool:
    graph = w.graph
    sid = graph.index(s)
    if engine is None:
        _, asc = _append_left(graph, w.ids, sid)
        return asc
    if engine == "geometric":
        if graph.root_engine == _KIND_INT:
            return _append_left_int(graph, w.ids, sid)[1]
        if graph.root_engine == _KIND_QUAD:
            return _append_left_quad(graph, w.ids, sid)[1]
        raise BadLabel("geometric engine unavailable: graph has labels outside {2,3,4,6}")
    if engine == "combinatorial":
        return _tits_append_left(graph, w.ids, sid)[1]
    raise ValueError(f"unknown engine {engine!r}")


def _check_same_graph(u: CoxeterElement, v: CoxeterElement):
    if u.graph is not v.graph:
        raise GraphMismatch("elements belong to different graphs")


def multiply(u: CoxeterElement, v: CoxeterElement) -> CoxeterElement:
    _check_same_graph(u, v)
    graph = u.graph
    word = u.ids
    for s in v.ids:
        word, _ = _append_right(graph, word, s)
    return CoxeterElement(graph, _canonical(graph, word), _trusted=True)


def inverse(u: CoxeterElement) -> CoxeterElement:
    graph = u.graph
    return CoxeterElement(graph, _canonical(graph, tuple(reversed(u.ids))), _trusted=True)


def left_descents(w: CoxeterElement) -> frozenset:
    graph = w.graph
    return frozenset(
        s for i, s in enumerate(graph.generators) if w.ids and not _append_left(graph, w.ids, i)[1]
    )


def right_descents(w: CoxeterElement) -> frozenset:
    graph = w.graph
    return frozenset(
        s for i, s in enumerate(graph.generators) if w.ids and not _append_right(graph, w.ids, i)[1]
    )


def parabolic_decompose_left(w: CoxeterElement, T: Iterable[str]):
    """Write w = w0*w1 with w0 in W_T, w1 (T,0)-reduced and lengths adding up.

    Greedily strips left descents lying in T.
    """
    graph = w.graph
    tids = sorted(graph.index(s) for s in T)
    word = w.ids
    head = []
    while True:
        for t in tids:
            new, ascended = _append_left(graph, word, t)
            if not ascended:
                head.append(t)
                word = new
                break
        else:
            break
    w0 = CoxeterElement(graph, _canonical(graph, tuple(head)), _trusted=True)
    w1 = CoxeterElement(graph, _canonical(graph, word), _trusted=True)
    return w0, w1


def is_in_parabolic(w: CoxeterElement, T: Iterable[str]) -> bool:
    # the letters used by a reduced expression do not depend on the expression
    return set(w.word) <= set(T)


def is_free_of_infinity(graph: CoxeterGraph, X: Iterable[str]) -> bool:
    return graph.is_free_of_infinity(X)


# ---------------------------------------------------------------------------
# classification of finite types
# ---------------------------------------------------------------------------

def _components(graph: CoxeterGraph, X: frozenset):
    ids = sorted(graph.index(s) for s in X)
    remaining = set(ids)
    comps = []
    while remaining:
        seed = min(remaining)
        comp = {seed}
        frontier = [seed]
        while frontier:
            i = frontier.pop()
            for j in list(remaining - comp):
                if graph._m[i, j] != 2:
                    comp.add(j)
                    frontier.append(j)
        remaining -= comp
        comps.append(sorted(comp))
    return comps


def _classify_component(graph: CoxeterGraph, comp: list):
    """Type string for a connected component, or None if infinite."""
    m = graph._m
    n = len(comp)
    labels = {}
    edges = []
    for a in range(n):
        for b in range(a + 1, n):
            lab = m[comp[a], comp[b]]
            if lab == INFINITY:
                return None
            if lab >= 3:
                edges.append((a, b))
                labels[a, b] = lab
    if n == 1:
        return "A1"
    if n == 2:
        lab = labels[0, 1]
        if lab == 3:
            return "A2"
        if lab == 4:
            return "B2"
        if lab == 6:
            return "G2"
        return f"I2({lab})"
    if len(edges) != n - 1:
        return None  # a connected graph with a cycle is never finite type
    deg = [0] * n
    adj = [[] for _ in range(n)]
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
        adj[a].append(b)
        adj[b].append(a)
    branch = [v for v in range(n) if deg[v] >= 3]
    if any(deg[v] > 3 for v in range(n)) or len(branch) > 1:
        return None
    if not branch:
        # a path: read the labels end to end
        ends = [v for v in range(n) if deg[v] == 1]
        path = [ends[0]]
        prev = None
        while len(path) < n:
            nxt = [u for u in adj[path[-1]] if u != prev]
            prev = path[-1]
            path.append(nxt[0])
        labs = [labels[tuple(sorted((path[i], path[i + 1])))] for i in range(n - 1)]
        if labs[0] > labs[-1]:
            labs.reverse()
        if all(l == 3 for l in labs):
            return f"A{n}"
        if labs[-1] == 4 and all(l == 3 for l in labs[:-1]):
            return f"B{n}"
        if n == 4 and labs == [3, 4, 3]:
            return "F4"
        if n == 3 and labs == [3, 5]:
            return "H3"
        if n == 4 and labs == [3, 3, 5]:
            return "H4"
        return None
    if any(l != 3 for l in labels.values()):
        return None
    v = branch[0]
    arms = []
    for start in adj[v]:
        length = 1
        prev, cur = v, start
        while deg[cur] == 2:
            nxt = [u for u in adj[cur] if u != prev][0]
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}"
    if arms == [1, 2, 2]:
        return "E6"
    if arms == [1, 2, 3]:
        return "E7"
    if arms == [1, 2, 4]:
        return "E8"
    return None


def classify_finite(graph: CoxeterGraph, X: Iterable[str]):
    """Component types of Gamma_X if W_X is finite, else None."""
    X = graph.subset(X)
    types = []
    for comp in _components(graph, X):
        t = _classify_component(graph, comp)
        if t is None:
            return None
        types.append(t)
    return tuple(sorted(types))


def enumerate_parabolic(graph: CoxeterGraph, X: Iterable[str], cap: int = 100000,
                        check_finite: bool = True) -> list[CoxeterElement]:
    """All elements of W_X as canonical words, BFS by length.

    Raises NotFinite when the classification says W_X is infinite and
    CapExceeded when more than ``cap`` elements show up.
    """
    X = graph.subset(X)
    if check_finite and classify_finite(graph, X) is None:
        raise NotFinite(f"W_X is infinite for X={sorted(X)}")
    cached = graph._enum_cache.get(X)
    if cached is not None:
        if len(cached) > cap:
            raise CapExceeded(f"|W_X| = {len(cached)} exceeds cap {cap}")
        return [CoxeterElement(graph, w, _trusted=True) for w in cached]
    xids = sorted(graph.index(s) for s in X)
    seen = {(): True}
    frontier = [()]
    while frontier:
        nxt = []
        for word in frontier:
            for s in xids:
                new, ascended = _append_right(graph, word, s)
                if ascended:
                    new = _canonical(graph, new)
                    if new not in seen:
                        if len(seen) >= cap:
                            raise CapExceeded(f"enumeration of W_X exceeded cap {cap}")
                        seen[new] = True
                        nxt.append(new)
        frontier = nxt
    words = sorted(seen, key=lambda w: (len(w), w))
    graph._enum_cache[X] = words
    return [CoxeterElement(graph, w, _trusted=True) for w in words]


def longest_element(graph: CoxeterGraph, X: Iterable[str], cap: int = 100000) -> CoxeterElement:
    """The longest element of a finite W_X (the unique one with right descents X)."""
    elements = enumerate_parabolic(graph, X, cap)
    w0 = elements[-1]
    assert right_descents(w0) == frozenset(X)
    return w0


# ---------------------------------------------------------------------------
# JSON graph format: {"generators": [...], "edges": [{"s":..,"t":..,"m":3|null}]}
# with null meaning infinity and unlisted pairs defaulting to m = 2
# ---------------------------------------------------------------------------

def graph_from_json(data: dict) -> CoxeterGraph:
    names = list(data["generators"])
    listed = {}
    for edge in data.get("edges", ()):
        s, t, m = edge["s"], edge["t"], edge["m"]
        key = frozenset((s, t))
        if key in listed:
            raise AsymmetricOrMissingEntry(f"edge ({s!r}, {t!r}) listed twice")
        listed[key] = (s, t, m)
    entries = list(listed.values())
    for i, s in enumerate(names):
        for t in names[i + 1:]:
            if frozenset((s, t)) not in listed:
                entries.append((s, t, 2))
    return build_graph(names, entries)


def graph_to_json(graph: CoxeterGraph) -> dict:
    edges = []
    for i, s in enumerate(graph.generators):
        for t in graph.generators[i + 1:]:
            m = graph.label(s, t)
            if m != 2:
                edges.append({"s": s, "t": t, "m": None if m == INFINITY else m})
    return {"generators": list(graph.generators), "edges": edges}
