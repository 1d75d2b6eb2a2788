"""Word-problem oracles for free-of-infinity parabolic subgroups.

Spherical components get the classical greedy normal form: simples are the
elements of the finite Coxeter group, a group element is written
Delta^p s_1 ... s_k with the left-weighted condition on consecutive simples,
and equality is identity of normal forms.  Cycle components with all labels 3
(affine type A) are decided through an embedding into a spherical type-B
group; the embedding candidate is verified at construction time by checking
every defining relator, and construction fails loudly if the candidate is
wrong.  Disjoint commuting components combine by projection.

Finite-group data (multiplication tables, descents) is computed once per
(graph, subset) by a breadth-first enumeration over exact reflection
matrices, and cached on the graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import coxeter
from .coxeter import INFINITY, CoxeterElement, CoxeterGraph, build_graph
from .errors import (
    CapExceeded,
    EmbeddingSelfCheckFailed,
    InvariantBreach,
    NoOracleAvailable,
    NotCommutingComponents,
    NotFreeOfInfinity,
    NotSpherical,
    SupportViolation,
)
from .words import ArtinWord, WordOracle, braid_halves

_DEFAULT_CAP = 100000


# ---------------------------------------------------------------------------
# exact reflection matrices, restricted to the coordinates of X
# ---------------------------------------------------------------------------

def _local_rows(graph: CoxeterGraph, xids: list[int], quad: bool):
    """Sparse doubled-Cartan rows over local indices: rows[s] = ((u, c), ...)."""
    if quad:
        cart = coxeter._CARTAN_QUAD
        zero = coxeter._Q_ZERO
    else:
        cart = {2: 0, 3: 1, INFINITY: 2}
        zero = 0
    rows = []
    for s in xids:
        row = []
        for u_local, u in enumerate(xids):
            if u == s:
                continue
            c = cart[graph._m[s, u]]
            if c != zero:
                row.append((u_local, c))
        rows.append(tuple(row))
    return rows


def _refl_vec(v: tuple, s: int, row, quad: bool) -> tuple:
    """Apply the reflection of local generator s to a local coordinate vector."""
    if quad:
        x = coxeter._q_neg(v[s])
        for u, c in row:
            if v[u] != coxeter._Q_ZERO:
                x = coxeter._q_add(x, coxeter._q_mul(c, v[u]))
    else:
        x = -v[s]
        for u, c in row:
            if v[u]:
                x += c * v[u]
    return v[:s] + (x,) + v[s + 1:]


def _right_mul_cols(cols: tuple, s: int, row, quad: bool) -> tuple:
    """Columns of M*M_s from the columns of M."""
    col_s = cols[s]
    new = list(cols)
    if quad:
        new[s] = tuple(coxeter._q_neg(x) for x in col_s)
        for u, c in row:
            new[u] = tuple(
                coxeter._q_add(cols[u][i], coxeter._q_mul(c, col_s[i]))
                for i in range(len(cols))
            )
    else:
        new[s] = tuple(-x for x in col_s)
        for u, c in row:
            new[u] = tuple(cols[u][i] + c * col_s[i] for i in range(len(cols)))
    return tuple(new)


def _left_mul_cols(cols: tuple, s: int, row, quad: bool) -> tuple:
    """Columns of M_s*M: the reflection applied to every column."""
    return tuple(_refl_vec(col, s, row, quad) for col in cols)


# ---------------------------------------------------------------------------
# the simple lattice of a spherical parabolic
# ---------------------------------------------------------------------------

class GarsideStructure:
    """All of W_X with multiplication tables, Delta, and the Delta conjugation."""

    def __init__(self, graph: CoxeterGraph, X: Iterable[str], cap: int = _DEFAULT_CAP):
        X = graph.subset(X)
        if coxeter.classify_finite(graph, X) is None:
            raise NotSpherical(f"W_X is infinite for X={sorted(X)}")
        self.graph = graph
        self.X = X
        self.gens = graph.sorted_subset(X)
        xids = [graph.index(s) for s in self.gens]
        k = len(xids)
        quad = graph.root_engine == "quad"
        if graph.root_engine is None:
            # fall back to word arithmetic keyed by canonical words
            self._init_from_words(graph, xids, cap)
        else:
            rows = _local_rows(graph, xids, quad)
            one = coxeter._Q_ONE if quad else 1
            zero = coxeter._Q_ZERO if quad else 0
            ident = tuple(
                tuple(one if i == j else zero for i in range(k)) for j in range(k)
            )
            index = {ident: 0}
            words: list[tuple[int, ...]] = [()]
            lengths = [0]
            rtab: list[list[int]] = [[-1] * k]
            mats = [ident]
            frontier = [0]
            while frontier:
                nxt = []
                for wid in frontier:
                    cols = mats[wid]
                    for s in range(k):
                        new_cols = _right_mul_cols(cols, s, rows[s], quad)
                        tid = index.get(new_cols)
                        if tid is None:
                            tid = len(words)
                            if tid >= cap:
                                raise CapExceeded(
                                    f"|W_X| exceeds cap {cap} for X={sorted(X)}"
                                )
                            index[new_cols] = tid
                            words.append(words[wid] + (s,))
                            lengths.append(lengths[wid] + 1)
                            rtab.append([-1] * k)
                            mats.append(new_cols)
                            nxt.append(tid)
                        rtab[wid][s] = tid
                frontier = nxt
            ltab = [
                [index[_left_mul_cols(mats[wid], s, rows[s], quad)] for wid in range(len(words))]
                for s in range(k)
            ]
            self._finish_init(words, lengths, rtab, ltab)

    def _init_from_words(self, graph, xids, cap):
        """Slow path for graphs without a geometric engine: key by canonical word."""
        k = len(xids)
        index: dict[tuple, int] = {(): 0}
        words: list[tuple[int, ...]] = [()]
        canon = [()]
        lengths = [0]
        rtab: list[list[int]] = [[-1] * k]
        frontier = [0]
        while frontier:
            nxt = []
            for wid in frontier:
                for s in range(k):
                    glob = coxeter._reduce_ids(graph, tuple(
                        xids[c] for c in words[wid]) + (xids[s],))
                    tid = index.get(glob)
                    if tid is None:
                        tid = len(words)
                        if tid >= cap:
                            raise CapExceeded(f"|W_X| exceeds cap {cap}")
                        index[glob] = tid
                        words.append(words[wid] + (s,))
                        canon.append(glob)
                        lengths.append(len(glob))
                        rtab.append([-1] * k)
                        nxt.append(tid)
                    rtab[wid][s] = tid
            frontier = nxt
        ltab = [[0] * len(words) for _ in range(k)]
        for wid in range(len(words)):
            for s in range(k):
                glob = coxeter._reduce_ids(graph, (xids[s],) + canon[wid])
                ltab[s][wid] = index[glob]
        self._finish_init(words, lengths, rtab, ltab)

    def _finish_init(self, words, lengths, rtab, ltab):
        k = len(self.gens)
        self.order = len(words)
        self._words = words
        self.lengths = lengths
        self.rtab = rtab
        self.ltab = ltab
        self.left_desc = [
            tuple(s for s in range(k) if lengths[ltab[s][wid]] < lengths[wid])
            for wid in range(self.order)
        ]
        top = max(lengths)
        candidates = [i for i in range(self.order) if lengths[i] == top]
        if len(candidates) != 1:
            raise InvariantBreach("longest element is not unique")
        self.delta_id = candidates[0]
        self.gen_ids = [rtab[0][s] for s in range(k)]
        self.delta_comp = [rtab[self.delta_id][s] for s in range(k)]  # Delta*s
        delta_word = words[self.delta_id]
        self.phi = [
            self._fold_ids(self.delta_id, words[wid] + delta_word)
            for wid in range(self.order)
        ]
        self.phi_gen = {}
        for s in range(k):
            img = self.phi[self.gen_ids[s]]
            if self.lengths[img] != 1:
                raise InvariantBreach("Delta conjugation does not permute the generators")
            self.phi_gen[self.gens[s]] = self.gens[self._words[img][0]]
        self._canon_cache: dict[int, tuple[str, ...]] = {}

    # -- id arithmetic --------------------------------------------------------

    def _fold_ids(self, start: int, word: Sequence[int]) -> int:
        wid = start
        for s in word:
            wid = self.rtab[wid][s]
        return wid

    def id_of(self, w: CoxeterElement) -> int:
        pos = {g: i for i, g in enumerate(self.gens)}
        return self._fold_ids(0, [pos[s] for s in w.word])

    def inverse_id(self, wid: int) -> int:
        return self._fold_ids(0, tuple(reversed(self._words[wid])))

    def word_of(self, wid: int) -> tuple[str, ...]:
        """Canonical (lex-minimal) reduced word of a simple."""
        cached = self._canon_cache.get(wid)
        if cached is None:
            glob = tuple(self.graph.index(self.gens[s]) for s in self._words[wid])
            cached = tuple(
                self.graph.generators[i] for i in coxeter._canonical(self.graph, glob)
            )
            self._canon_cache[wid] = cached
        return cached

    def element(self, wid: int) -> CoxeterElement:
        return self.graph.element(self.word_of(wid))

    def simples(self) -> list[CoxeterElement]:
        return [self.element(i) for i in range(self.order)]

    @property
    def delta(self) -> CoxeterElement:
        return self.element(self.delta_id)

    # -- lattice operations ---------------------------------------------------

    def meet(self, u: CoxeterElement, v: CoxeterElement) -> CoxeterElement:
        """Largest common left divisor in the weak order, by greedy peeling."""
        a, b = self.id_of(u), self.id_of(v)
        out = 0
        while True:
            common = set(self.left_desc[a]) & set(self.left_desc[b])
            if not common:
                return self.element(out)
            s = min(common)
            out = self.rtab[out][s]
            a = self.ltab[s][a]
            b = self.ltab[s][b]

    def left_complement(self, u: CoxeterElement) -> CoxeterElement:
        """Delta * u^-1; always a simple."""
        return self.element(self._fold_ids(
            self.delta_id, tuple(reversed([
                {g: i for i, g in enumerate(self.gens)}[s] for s in u.word
            ]))
        ))

    # -- normal form -----------------------------------------------------------

    def _rebalance(self, a: int, b: int):
        moved = True
        while moved and b != 0:
            moved = False
            for s in self.left_desc[b]:
                if self.lengths[self.rtab[a][s]] > self.lengths[a]:
                    a = self.rtab[a][s]
                    b = self.ltab[s][b]
                    moved = True
                    break
        return a, b

    def _normalize(self, canon: list[int]):
        while True:
            changed = False
            i = len(canon) - 2
            while i >= 0:
                if i + 1 < len(canon):
                    a, b = canon[i], canon[i + 1]
                    a2, b2 = self._rebalance(a, b)
                    if (a2, b2) != (a, b):
                        changed = True
                        canon[i] = a2
                        if b2 == 0:
                            del canon[i + 1]
                        else:
                            canon[i + 1] = b2
                i -= 1
            if not changed:
                return

    def nf_key(self, letters: Iterable[tuple[str, int]]):
        """(inf, simple ids) of the left-weighted form of a word over X."""
        pos = {g: i for i, g in enumerate(self.gens)}
        p = 0
        canon: list[int] = []
        for s, e in letters:
            si = pos[s]
            if e == 1:
                canon.append(self.gen_ids[si])
            else:
                p -= 1
                if canon:
                    phi = self.phi
                    canon = [phi[c] for c in canon]
                if self.lengths[self.delta_comp[si]]:
                    canon.append(self.delta_comp[si])
        self._normalize(canon)
        canon = [c for c in canon if c != 0]
        while canon and canon[0] == self.delta_id:
            del canon[0]
            p += 1
        return p, tuple(canon)

    def is_left_weighted(self, ids: Sequence[int]) -> bool:
        for a, b in zip(ids, ids[1:]):
            if (a, b) != self._rebalance(a, b):
                return False
        return True

    def nf_word(self, p: int, ids: Sequence[int]) -> ArtinWord:
        delta_letters = tuple((s, 1) for s in self.word_of(self.delta_id))
        letters: list[tuple[str, int]] = []
        if p >= 0:
            letters.extend(delta_letters * p)
        else:
            inv = tuple((s, -1) for s, _ in reversed(delta_letters))
            letters.extend(inv * (-p))
        for wid in ids:
            letters.extend((s, 1) for s in self.word_of(wid))
        return ArtinWord(self.graph, letters)


@dataclass(frozen=True)
class GarsideNF:
    """Delta power plus left-weighted simple sequence (as canonical words)."""

    inf: int
    canon: tuple[tuple[str, ...], ...]


def build_garside(graph: CoxeterGraph, X: Iterable[str], cap: int = _DEFAULT_CAP) -> GarsideStructure:
    # memoized on the graph itself, so the tables die with it
    X = graph.subset(X)
    per_graph = graph._caches.setdefault("garside", {})
    gs = per_graph.get(X)
    if gs is None:
        gs = GarsideStructure(graph, X, cap)
        per_graph[X] = gs
    return gs


def to_normal_form(gs: GarsideStructure, omega: ArtinWord) -> GarsideNF:
    extra = omega.support() - gs.X
    if extra:
        raise SupportViolation(f"word uses generators {sorted(extra)} outside X")
    p, ids = gs.nf_key(omega.letters)
    return GarsideNF(p, tuple(gs.word_of(i) for i in ids))


class GarsideOracle(WordOracle):
    def __init__(self, gs: GarsideStructure):
        self.gs = gs
        self.subset = gs.X

    def equal(self, u: ArtinWord, v: ArtinWord) -> bool:
        self.check_support(u, v)
        return self.gs.nf_key(u.letters) == self.gs.nf_key(v.letters)

    def canonical_word(self, u: ArtinWord) -> ArtinWord:
        self.check_support(u)
        free = u.free_reduce()
        p, ids = self.gs.nf_key(u.letters)
        nf = self.gs.nf_word(p, ids)
        return nf if len(nf) < len(free) else free


def garside_oracle(graph: CoxeterGraph, X: Iterable[str]) -> GarsideOracle:
    return GarsideOracle(build_garside(graph, X))


# ---------------------------------------------------------------------------
# affine type A via the type-B embedding
# ---------------------------------------------------------------------------

def _cycle_relator_positions(k: int):
    """Relators of the (k+1)-cycle as (i, j, m) position pairs."""
    n = k + 1
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            adjacent = (j - i == 1) or (i == 0 and j == n - 1)
            out.append((i, j, 3 if adjacent else 2))
    return out


_affine_cache: dict[int, tuple[CoxeterGraph, GarsideStructure, list]] = {}


def _affine_embedding(k: int):
    """Images of the k+1 affine cycle generators inside the type-B group.

    The candidate map sends the i-th cycle generator to rho^i s1 rho^-i with
    rho = t s1 ... sk (t the label-4 end).  Every cycle relator is verified to
    map to a normal-form-trivial word; a failure raises rather than returning
    a wrong oracle.
    """
    cached = _affine_cache.get(k)
    if cached is not None:
        return cached
    if k < 2:
        raise ValueError("affine type A needs k >= 2")
    names = [f"b{i}" for i in range(k + 1)]
    entries = []
    for i in range(k + 1):
        for j in range(i + 1, k + 1):
            if j - i == 1:
                entries.append((names[i], names[j], 4 if i == 0 else 3))
            else:
                entries.append((names[i], names[j], 2))
    bgraph = build_graph(names, entries)
    gs = build_garside(bgraph, names)
    rho = tuple((s, 1) for s in names)
    rho_inv = tuple((s, -1) for s in reversed(names))
    images = []
    for i in range(k + 1):
        images.append(rho * i + ((names[1], 1),) + rho_inv * i)
    for i, j, m in _cycle_relator_positions(k):
        lhs, rhs = braid_halves(i, j, m)
        letters: list[tuple[str, int]] = []
        for p in lhs:
            letters.extend(images[p])
        for p in reversed(rhs):
            letters.extend((s, -e) for s, e in reversed(images[p]))
        if gs.nf_key(letters) != (0, ()):
            raise EmbeddingSelfCheckFailed(
                f"cycle relator ({i},{j},m={m}) does not map to the identity in "
                f"type B_{k + 1}; the embedding candidate is wrong"
            )
    _affine_cache[k] = (bgraph, gs, images)
    return _affine_cache[k]


class AffineAOracle(WordOracle):
    """Oracle for a cycle of k+1 generators, all labels 3 (affine type A_k).

    ``cycle`` lists the generators in cyclic order.  Words are translated
    letterwise through the self-checked type-B embedding and compared there.
    """

    def __init__(self, graph: CoxeterGraph, cycle: Sequence[str]):
        self.graph = graph
        self.cycle = tuple(cycle)
        self.k = len(cycle) - 1
        _, self._bgs, self._images = _affine_embedding(self.k)
        self.subset = frozenset(cycle)
        self._pos = {s: i for i, s in enumerate(self.cycle)}

    def _translate(self, u: ArtinWord):
        letters: list[tuple[str, int]] = []
        for s, e in u.letters:
            img = self._images[self._pos[s]]
            if e == 1:
                letters.extend(img)
            else:
                letters.extend((b, -be) for b, be in reversed(img))
        return letters

    def equal(self, u: ArtinWord, v: ArtinWord) -> bool:
        self.check_support(u, v)
        return self._bgs.nf_key(self._translate(u)) == self._bgs.nf_key(self._translate(v))


def affine_A_oracle(k: int, names: Sequence[str] | None = None) -> AffineAOracle:
    """Standalone oracle for the affine cycle on k+1 generators (k >= 2)."""
    if names is None:
        names = [f"a{i}" for i in range(1, k + 2)]
    names = list(names)
    entries = []
    for i in range(k + 1):
        for j in range(i + 1, k + 1):
            adjacent = (j - i == 1) or (i == 0 and j == k)
            entries.append((names[i], names[j], 3 if adjacent else 2))
    cycle_graph = build_graph(names, entries)
    return AffineAOracle(cycle_graph, names)


# ---------------------------------------------------------------------------
# products and dispatch
# ---------------------------------------------------------------------------

class TrivialOracle(WordOracle):
    def __init__(self, graph: CoxeterGraph):
        self.graph = graph
        self.subset = frozenset()

    def equal(self, u: ArtinWord, v: ArtinWord) -> bool:
        self.check_support(u, v)
        return True

    def canonical_word(self, u: ArtinWord) -> ArtinWord:
        return ArtinWord(self.graph, ())


class ProductOracle(WordOracle):
    def __init__(self, graph: CoxeterGraph, parts: Sequence[tuple[frozenset, WordOracle]]):
        self.graph = graph
        parts = sorted(parts, key=lambda p: min(graph.index(s) for s in p[0]))
        seen: set[str] = set()
        for X, _ in parts:
            if X & seen:
                raise NotCommutingComponents("component subsets are not disjoint")
            seen |= X
        for i, (Xa, _) in enumerate(parts):
            for Xb, _ in parts[i + 1:]:
                for a in Xa:
                    for b in Xb:
                        if graph.label(a, b) != 2:
                            raise NotCommutingComponents(
                                f"generators {a!r} and {b!r} do not commute"
                            )
        self.parts = tuple(parts)
        self.subset = frozenset(seen)

    def _project(self, u: ArtinWord, X: frozenset) -> ArtinWord:
        return ArtinWord(self.graph, tuple(l for l in u.letters if l[0] in X))

    def equal(self, u: ArtinWord, v: ArtinWord) -> bool:
        self.check_support(u, v)
        return all(
            oracle.equal(self._project(u, X), self._project(v, X))
            for X, oracle in self.parts
        )

    def canonical_word(self, u: ArtinWord) -> ArtinWord:
        self.check_support(u)
        out = ArtinWord(self.graph, ())
        for X, oracle in self.parts:
            out = out * oracle.canonical_word(self._project(u, X))
        return out


def product_oracle(graph: CoxeterGraph,
                   parts: Sequence[tuple[Iterable[str], WordOracle]]) -> ProductOracle:
    return ProductOracle(graph, [(graph.subset(X), o) for X, o in parts])


def _cycle_order(graph: CoxeterGraph, comp: list[int]) -> list[str] | None:
    """Names in cyclic order if the component is a cycle with all labels 3."""
    if len(comp) < 3:
        return None
    adj = {}
    for i in comp:
        nbrs = [j for j in comp if j != i and graph._m[i, j] != 2]
        if len(nbrs) != 2 or any(graph._m[i, j] != 3 for j in nbrs):
            return None
        adj[i] = nbrs
    start = min(comp)
    cur = min(adj[start])
    order = [start, cur]
    prev = start
    while len(order) < len(comp):
        nxt = [j for j in adj[cur] if j != prev][0]
        order.append(nxt)
        prev, cur = cur, nxt
    if order[0] not in adj[order[-1]]:
        return None
    return [graph.generators[i] for i in order]


def oracle_for(graph: CoxeterGraph, X: Iterable[str],
               user_registry: dict | None = None) -> WordOracle:
    """Compose an oracle for A_X from the connected components of Gamma_X.

    Spherical components use the greedy normal form, affine type-A cycles the
    type-B embedding; anything else must be supplied through
    ``user_registry`` (a mapping frozenset -> WordOracle).
    """
    X = graph.subset(X)
    if not graph.is_free_of_infinity(X):
        raise NotFreeOfInfinity(f"X={sorted(X)} has an infinite label")
    comps = coxeter._components(graph, X)
    parts: list[tuple[frozenset, WordOracle]] = []
    for comp in comps:
        names = frozenset(graph.generators[i] for i in comp)
        if user_registry and names in user_registry:
            parts.append((names, user_registry[names]))
            continue
        if coxeter.classify_finite(graph, names) is not None:
            parts.append((names, garside_oracle(graph, names)))
            continue
        cycle = _cycle_order(graph, comp)
        if cycle is not None:
            parts.append((names, AffineAOracle(graph, cycle)))
            continue
        raise NoOracleAvailable(
            f"component {sorted(names)} is neither spherical nor an affine "
            "type-A cycle and no user oracle is registered for it"
        )
    if not parts:
        return TrivialOracle(graph)
    if len(parts) == 1:
        return parts[0][1]
    return ProductOracle(graph, parts)
