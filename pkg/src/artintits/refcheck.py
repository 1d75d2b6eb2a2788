"""Independent brute-force oracles used by the test-suite.

Nothing here shares machinery with the production solvers: equality is
semi-decided by breadth-first search over relator rewrites plus free
reduction, finite groups are enumerated through exact reflection matrices,
and all-infinite graphs fall back to plain free reduction.  The BFS proves
only equality; a miss is always reported as Unknown, never as inequality.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Hashable, Iterable

from . import coxeter
from .coxeter import INFINITY, CoxeterGraph
from .errors import CapExceeded
from .words import ArtinWord, braid_halves

Letter = tuple[Hashable, int]
Word = tuple  # tuple[Letter, ...]


class Verdict(enum.Enum):
    EQUAL = "equal"
    UNKNOWN = "unknown"


def free_reduce(word: Iterable[Letter]) -> Word:
    """Cancel adjacent inverse pairs to a fixpoint."""
    out: list[Letter] = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def _invert(word: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple  # freely reduced relator words

    def __post_init__(self):
        object.__setattr__(
            self, "relators", tuple(free_reduce(r) for r in self.relators)
        )

    def rules(self):
        """Substitution rules p -> q with p q^-1 a relator, keyed by first letter."""
        by_first: dict[Letter, list[tuple[Word, Word]]] = {}
        for rel in self.relators:
            for r in (rel, _invert(rel)):
                for cut in range(1, len(r) + 1):
                    p, q = r[:cut], r[cut:]
                    by_first.setdefault(p[0], []).append((p, _invert(q)))
        return by_first


def bfs_ball(pres: Presentation, start: Iterable[Letter], depth: int,
             max_len: int | None = None, max_states: int | None = None,
             target: Word | None = None) -> set[Word]:
    """Words reachable from ``start`` by at most ``depth`` relator substitutions.

    All words are kept freely reduced; ``max_len``/``max_states`` bound the
    search.  Stops early when ``target`` is reached.
    """
    rules = pres.rules()
    start = free_reduce(start)
    seen = {start}
    frontier = [start]
    for _ in range(depth):
        if not frontier or (target is not None and target in seen):
            break
        nxt = []
        for w in frontier:
            for i, letter in enumerate(w):
                for p, q in rules.get(letter, ()):
                    if w[i:i + len(p)] == p:
                        w2 = free_reduce(w[:i] + q + w[i + len(p):])
                        if max_len is not None and len(w2) > max_len:
                            continue
                        if w2 not in seen:
                            if max_states is not None and len(seen) >= max_states:
                                return seen
                            seen.add(w2)
                            nxt.append(w2)
        frontier = nxt
    return seen


def bfs_equal(pres: Presentation, u: Iterable[Letter], v: Iterable[Letter],
              depth: int, max_len: int | None = None,
              max_states: int | None = None) -> Verdict:
    """Equal when the substitution BFS merges u into v within ``depth`` steps."""
    u = free_reduce(u)
    v = free_reduce(v)
    if u == v:
        return Verdict.EQUAL
    if max_len is None:
        max_len = len(u) + len(v) + 2 * max((len(r) for r in pres.relators), default=0)
    ball = bfs_ball(pres, u, depth, max_len, max_states, target=v)
    return Verdict.EQUAL if v in ball else Verdict.UNKNOWN


# ---------------------------------------------------------------------------
# presentations of interest
# ---------------------------------------------------------------------------

def artin_presentation(graph: CoxeterGraph) -> Presentation:
    relators = []
    gens = graph.generators
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            m = graph.label(a, b)
            if m == INFINITY:
                continue
            lhs, rhs = braid_halves(a, b, m)
            relators.append(
                tuple((s, 1) for s in lhs) + _invert(tuple((s, 1) for s in rhs))
            )
    return Presentation(tuple(gens), tuple(relators))


def vb_presentation(n: int) -> Presentation:
    """The virtual braid group on n strands; generators ("s", i) and ("t", i)."""
    s = lambda i, e=1: (("s", i), e)
    t = lambda i, e=1: (("t", i), e)
    relators = [(t(i), t(i)) for i in range(1, n)]
    for i in range(1, n):
        for j in range(i + 1, n):
            if j - i >= 2:
                relators.append((s(i), s(j), s(i, -1), s(j, -1)))
                relators.append((s(i), t(j), s(i, -1), t(j, -1)))
                relators.append((t(i), t(j), t(i, -1), t(j, -1)))
            else:
                relators.append((s(i), s(j), s(i), s(j, -1), s(i, -1), s(j, -1)))
                # sigma_i tau_j tau_i = tau_j tau_i sigma_j
                relators.append((s(i), t(j), t(i), s(j, -1), t(i, -1), t(j, -1)))
                relators.append((t(i), t(j), t(i), t(j, -1), t(i, -1), t(j, -1)))
    gens = tuple(("s", i) for i in range(1, n)) + tuple(("t", i) for i in range(1, n))
    return Presentation(gens, tuple(relators))


def artin_letters(w: ArtinWord) -> Word:
    return tuple(w.letters)


# ---------------------------------------------------------------------------
# finite Coxeter enumeration by exact matrices
# ---------------------------------------------------------------------------

def reflection_group_order(graph: CoxeterGraph, X: Iterable[str], cap: int = 100000) -> int:
    """|W_X| by BFS over exact reflection matrices (independent of word logic)."""
    from .garside import _local_rows, _right_mul_cols

    X = graph.subset(X)
    xids = [graph.index(s) for s in X]
    if graph.root_engine is None:
        raise CapExceeded("matrix enumeration needs labels in {2,3,4,6,inf}")
    quad = graph.root_engine == "quad"
    rows = _local_rows(graph, xids, quad)
    k = len(xids)
    one = coxeter._Q_ONE if quad else 1
    zero = coxeter._Q_ZERO if quad else 0
    ident = tuple(tuple(one if i == j else zero for i in range(k)) for j in range(k))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for cols in frontier:
            for sloc in range(k):
                new = _right_mul_cols(cols, sloc, rows[sloc], quad)
                if new not in seen:
                    if len(seen) >= cap:
                        raise CapExceeded(f"|W_X| exceeds cap {cap}")
                    seen.add(new)
                    nxt.append(new)
        frontier = nxt
    return len(seen)
