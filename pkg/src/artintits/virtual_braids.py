"""The virtual braid groups VB_n through their Artin-Tits kernel.

VB_n splits as K_n x| S_n, where the kernel K_n of the projection killing the
sigma generators is an Artin-Tits group on generators delta_{i,j} (i != j).
A word is rewritten into a kernel word plus a permutation by a left-to-right
scan; the scan's composition convention is certified by checking that every
defining relator of VB_n rewrites to (trivial kernel word, identity), with
kernel triviality decided by the cube-path solver over the Coxeter graph of
K_n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from . import coxeter, cubepath
from .coxeter import CoxeterGraph, build_graph
from .errors import (
    BadN,
    IndexOutOfRange,
    InvariantBreach,
    NotFreeOfInfinity,
    StrandMismatch,
)
from .words import ArtinWord


@dataclass(frozen=True)
class VBWord:
    """A word in the sigma/tau generators of VB_n; tau letters carry no sign."""

    n: int
    letters: tuple  # ((kind, index, sign), ...), kind in {"s", "t"}

    def __post_init__(self):
        if self.n < 2:
            raise BadN("VB_n needs n >= 2")
        norm = []
        for kind, i, e in self.letters:
            if kind not in ("s", "t"):
                raise ValueError(f"letter kind must be 's' or 't', got {kind!r}")
            if not 1 <= i <= self.n - 1:
                raise IndexOutOfRange(f"index {i} out of range for n={self.n}")
            if e not in (1, -1):
                raise ValueError("sign must be +1 or -1")
            norm.append((kind, i, 1 if kind == "t" else e))  # tau is an involution
        object.__setattr__(self, "letters", tuple(norm))

    def __mul__(self, other: "VBWord") -> "VBWord":
        if self.n != other.n:
            raise StrandMismatch(f"strand counts differ: {self.n} vs {other.n}")
        return VBWord(self.n, self.letters + other.letters)

    def inverse(self) -> "VBWord":
        return VBWord(
            self.n, tuple((k, i, -e) for k, i, e in reversed(self.letters))
        )

    def text(self) -> str:
        return " ".join(
            f"{k}{i}" if e == 1 else f"{k}{i}^-1" for k, i, e in self.letters
        )


def parse_vb_word(n: int, text: str) -> VBWord:
    """Parse tokens s1, t2, s1^-1, ... (s = sigma, t = tau)."""
    letters = []
    for tok in text.split():
        body, sign = (tok[:-3], -1) if tok.endswith("^-1") else (tok, 1)
        kind, idx = body[0], body[1:]
        if kind not in ("s", "t") or not idx.isdigit():
            raise ValueError(f"bad virtual braid token {tok!r}")
        letters.append((kind, int(idx), sign))
    return VBWord(n, tuple(letters))


@dataclass(frozen=True)
class KnWord:
    """A word over the kernel generators delta_{i,j}."""

    n: int
    letters: tuple  # (((i, j), sign), ...)

    def __post_init__(self):
        for (i, j), e in self.letters:
            if not (1 <= i <= self.n and 1 <= j <= self.n) or i == j:
                raise IndexOutOfRange(f"delta index ({i},{j}) out of range for n={self.n}")
            if e not in (1, -1):
                raise ValueError("sign must be +1 or -1")

    def inverse(self) -> "KnWord":
        return KnWord(self.n, tuple((ij, -e) for ij, e in reversed(self.letters)))

    def __mul__(self, other: "KnWord") -> "KnWord":
        if self.n != other.n:
            raise StrandMismatch(f"strand counts differ: {self.n} vs {other.n}")
        return KnWord(self.n, self.letters + other.letters)


# ---------------------------------------------------------------------------
# the Coxeter graph of K_n
# ---------------------------------------------------------------------------

def vb_gen_name(i: int, j: int) -> str:
    return f"x{i}_{j}"


def parse_vb_gen(name: str) -> tuple[int, int]:
    i, j = name[1:].split("_")
    return int(i), int(j)


_gamma_cache: dict[int, CoxeterGraph] = {}


def gamma_vb(n: int) -> CoxeterGraph:
    """The Coxeter graph of K_n: vertices x_{i,j}, labels from the index pattern.

    Arcs sharing head-to-tail get label 3, arcs sharing a source, a target,
    or forming a 2-cycle get infinity, disjoint arcs commute.
    """
    if n < 2:
        raise BadN("gamma_vb needs n >= 2")
    cached = _gamma_cache.get(n)
    if cached is not None:
        return cached
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    names = [vb_gen_name(i, j) for i, j in pairs]
    entries = []
    for a in range(len(pairs)):
        for b in range(a + 1, len(pairs)):
            (i, j), (k, l) = pairs[a], pairs[b]
            if {i, j} & {k, l} == set():
                m = 2
            elif (i, j) == (l, k):
                m = None  # the 2-cycle pair x_{i,j}, x_{j,i}
            elif i == k or j == l:
                m = None  # shared source or shared target
            else:
                m = 3  # head-to-tail: x_{i,j}, x_{j,k} or x_{k,i}, x_{i,j}
            entries.append((names[a], names[b], m))
    graph = build_graph(names, entries)
    _gamma_cache[n] = graph
    return graph


def kn_to_artin(kappa: KnWord) -> ArtinWord:
    graph = gamma_vb(kappa.n)
    return ArtinWord(graph, tuple((vb_gen_name(i, j), e) for (i, j), e in kappa.letters))


# ---------------------------------------------------------------------------
# the semidirect rewriting
# ---------------------------------------------------------------------------

def identity_perm(n: int) -> tuple:
    return tuple(range(1, n + 1))


def rewrite_to_semidirect(w: VBWord):
    """Scan left to right into (kernel word, permutation).

    The state invariant is: the processed prefix equals iota(kappa) *
    iota(p) in VB_n.  A sigma letter contributes delta_{p(i), p(i+1)}; a tau
    letter precomposes the permutation with its transposition.
    """
    p = identity_perm(w.n)
    letters = []
    for kind, i, e in w.letters:
        if kind == "s":
            letters.append(((p[i - 1], p[i]), e))
        else:
            p = p[: i - 1] + (p[i], p[i - 1]) + p[i + 1:]
    return KnWord(w.n, tuple(letters)), p


def relabel_kn(p: tuple, kappa: KnWord) -> KnWord:
    """The permutation action w . delta_{i,j} = delta_{w(i), w(j)}, letterwise."""
    return KnWord(
        kappa.n, tuple(((p[i - 1], p[j - 1]), e) for (i, j), e in kappa.letters)
    )


def vb_relators(n: int) -> list[VBWord]:
    """The defining relator words of VB_n (tau inverses written as tau)."""
    s = lambda i, e=1: ("s", i, e)
    t = lambda i: ("t", i, 1)
    rel = []
    for i in range(1, n):
        rel.append(VBWord(n, (t(i), t(i))))
    for i in range(1, n):
        for j in range(i + 1, n):
            if j - i >= 2:
                rel.append(VBWord(n, (s(i), s(j), s(i, -1), s(j, -1))))
                rel.append(VBWord(n, (s(i), t(j), s(i, -1), t(j))))
                rel.append(VBWord(n, (t(i), t(j), t(i), t(j))))
            else:
                rel.append(VBWord(n, (s(i), s(j), s(i), s(j, -1), s(i, -1), s(j, -1))))
                # sigma_i tau_j tau_i = tau_j tau_i sigma_j
                rel.append(VBWord(n, (s(i), t(j), t(i), s(j, -1), t(i), t(j))))
                rel.append(VBWord(n, (t(i), t(j), t(i), t(j), t(i), t(j))))
    return rel


_validated: set[int] = set()


def validate_convention(n: int, reg: cubepath.OracleRegistry | None = None):
    """Certify the scan convention: every relator must rewrite to the identity.

    Runs once per strand count; a failure means the composition convention in
    :func:`rewrite_to_semidirect` is wrong and raises InvariantBreach.
    """
    if n in _validated:
        return
    reg = reg if reg is not None else cubepath.registry_for(gamma_vb(n))
    for r in vb_relators(n):
        kappa, p = rewrite_to_semidirect(r)
        if p != identity_perm(n):
            raise InvariantBreach(
                f"relator {r.text()!r} rewrites to a nontrivial permutation {p}"
            )
        if not cubepath.is_trivial(kn_to_artin(kappa), reg):
            raise InvariantBreach(
                f"relator {r.text()!r} rewrites to a nontrivial kernel word"
            )
    _validated.add(n)


def vb_equal(u: VBWord, v: VBWord, reg: cubepath.OracleRegistry | None = None) -> bool:
    """Equality in VB_n: identical permutation parts and a trivial kernel part."""
    if u.n != v.n:
        raise StrandMismatch(f"strand counts differ: {u.n} vs {v.n}")
    reg = reg if reg is not None else cubepath.registry_for(gamma_vb(u.n))
    validate_convention(u.n, reg)
    kappa, p = rewrite_to_semidirect(u * v.inverse())
    if p != identity_perm(u.n):
        return False
    return cubepath.is_trivial(kn_to_artin(kappa), reg)


# ---------------------------------------------------------------------------
# component combinatorics of free-of-infinity subsets
# ---------------------------------------------------------------------------

def classify_components(n: int, X: Iterable[str]):
    """Components of an arc set as type-A paths and affine type-A cycles.

    Returns a list of ("A", k, names) / ("Atilde", k, names) with the names
    listed along the path or cycle.
    """
    graph = gamma_vb(n)
    X = graph.subset(X)
    if not graph.is_free_of_infinity(X):
        raise NotFreeOfInfinity(f"{sorted(X)} has an infinite label")
    arcs = sorted(parse_vb_gen(s) for s in X)
    arcset = set(arcs)
    if any((j, i) in arcset for i, j in arcs):
        raise InvariantBreach("free-of-infinity arc sets have no 2-cycles")
    succ: dict[int, tuple[int, int]] = {}
    pred: dict[int, tuple[int, int]] = {}
    for i, j in arcs:
        if i in succ or j in pred:
            raise InvariantBreach("free-of-infinity arc sets have in/out degree <= 1")
        succ[i] = (i, j)
        pred[j] = (i, j)
    out = []
    used: set[tuple[int, int]] = set()
    # paths start at an arc whose source has no incoming arc
    for i, j in arcs:
        if (i, j) in used or i in pred:
            continue
        chain = [(i, j)]
        used.add((i, j))
        while chain[-1][1] in succ:
            nxt = succ[chain[-1][1]]
            chain.append(nxt)
            used.add(nxt)
        out.append(("A", len(chain), [vb_gen_name(a, b) for a, b in chain]))
    # what remains are cycles
    for arc in arcs:
        if arc in used:
            continue
        chain = [arc]
        used.add(arc)
        while True:
            nxt = succ[chain[-1][1]]
            if nxt == chain[0]:
                break
            chain.append(nxt)
            used.add(nxt)
        if len(chain) < 3:
            raise InvariantBreach("a 2-cycle slipped past the infinity labels")
        out.append(("Atilde", len(chain) - 1, [vb_gen_name(a, b) for a, b in chain]))
    out.sort(key=lambda c: c[2])
    return out


def _is_path_forest(n: int, arcs: tuple) -> bool:
    succ: dict[int, int] = {}
    pred: dict[int, int] = {}
    for i, j in arcs:
        if i in succ or j in pred or (j, i) in arcs:
            return False
        succ[i] = j
        pred[j] = i
    # no directed cycles: every arc must be reachable from a source node
    reached = 0
    for start in succ:
        if start in pred:
            continue
        cur = start
        while cur in succ:
            reached += 1
            cur = succ[cur]
    return reached == len(arcs)


def spherical_dimension(n: int) -> int:
    """max |X| over spherical X, searched over the path-forest arc subsets."""
    if n < 2:
        raise BadN("spherical_dimension needs n >= 2")
    all_arcs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    # in/out degrees <= 1 cap |X| at n, and n arcs on n vertices force a cycle,
    # so only sizes up to n - 1 can be spherical
    for k in range(n - 1, 0, -1):
        for combo in itertools.combinations(all_arcs, k):
            if _is_path_forest(n, combo):
                names = [vb_gen_name(i, j) for i, j in combo]
                if coxeter.classify_finite(gamma_vb(n), names) is None:
                    raise InvariantBreach("a path forest must be spherical")
                return k
    return 0
