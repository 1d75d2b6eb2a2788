"""Cube prepaths and the normalization-based word problem solver.

A cube of the coset complex is written C(alpha A_R, alpha A_T) with
R <= T free of infinity; a prepath stores a base word for alpha_1 and
connecting words nu_i, together with the subset data (R_i), (T_i) and the
endpoint subsets (X, Y).  Normalization rewrites a prepath into the unique
normal cube path between its endpoints, working entirely on the connecting
words: intersection and span predicates reduce to parabolic membership
(kappa) and coset intersection (iota) over free-of-infinity subsets, which
is where the per-subset word oracles come in.

Deciding triviality of a word is then: build the tautological prepath of
the word, normalize, and test for length zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .coxeter import CoxeterGraph
from .errors import (
    GraphMismatch,
    InvariantBreach,
    NotFreeOfInfinity,
    PrepathLinkViolation,
)
from .garside import oracle_for
from .words import ArtinWord, WordOracle, iota_intersection, kappa


# ---------------------------------------------------------------------------
# data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cube:
    """C(alpha A_R, alpha A_T), with alpha given by a base word."""

    base: ArtinWord
    R: frozenset
    T: frozenset

    def __post_init__(self):
        graph = self.base.graph
        object.__setattr__(self, "R", graph.subset(self.R))
        object.__setattr__(self, "T", graph.subset(self.T))
        if not self.R <= self.T:
            raise PrepathLinkViolation(
                f"R={sorted(self.R)} is not contained in T={sorted(self.T)}"
            )
        if not graph.is_free_of_infinity(self.T):
            raise NotFreeOfInfinity(f"T={sorted(self.T)} has an infinite label")

    @property
    def dim(self) -> int:
        return len(self.T) - len(self.R)

    def is_vertex(self) -> bool:
        return self.R == self.T


@dataclass(frozen=True)
class CubePrepath:
    """((omega_1, nu_2..nu_n), (R_i), (T_i), (X, Y)); length 0 keeps only (omega, X)."""

    omega1: ArtinWord
    nus: tuple
    Rs: tuple
    Ts: tuple
    X: frozenset
    Y: frozenset

    def __post_init__(self):
        graph = self.omega1.graph
        n = len(self.Rs)
        object.__setattr__(self, "nus", tuple(self.nus))
        object.__setattr__(self, "Rs", tuple(graph.subset(R) for R in self.Rs))
        object.__setattr__(self, "Ts", tuple(graph.subset(T) for T in self.Ts))
        object.__setattr__(self, "X", graph.subset(self.X))
        object.__setattr__(self, "Y", graph.subset(self.Y))
        if len(self.Ts) != n or len(self.nus) != max(0, n - 1):
            raise PrepathLinkViolation("inconsistent prepath component lengths")
        for nu in self.nus:
            if nu.graph is not graph:
                raise GraphMismatch("prepath words belong to different graphs")
        for T in self.Ts + (self.X, self.Y):
            if not graph.is_free_of_infinity(T):
                raise NotFreeOfInfinity(f"{sorted(T)} has an infinite label")
        if n == 0:
            if self.X != self.Y:
                raise PrepathLinkViolation("a length-0 prepath needs X == Y")
            return
        for R, T in zip(self.Rs, self.Ts):
            if not R <= T:
                raise PrepathLinkViolation("R_i must be contained in T_i")
        for i in range(1, n):
            link = self.Ts[i - 1] & self.Ts[i]
            if not (self.Rs[i - 1] | self.Rs[i]) <= link:
                raise PrepathLinkViolation(
                    f"R_{i} u R_{i + 1} not contained in T_{i} n T_{i + 1}"
                )
            if not self.nus[i - 1].support() <= link:
                raise PrepathLinkViolation(f"nu_{i + 1} not supported in T_{i} n T_{i + 1}")
        if not (self.Rs[0] <= self.X <= self.Ts[0]):
            raise PrepathLinkViolation("X must satisfy R_1 <= X <= T_1")
        if not (self.Rs[-1] <= self.Y <= self.Ts[-1]):
            raise PrepathLinkViolation("Y must satisfy R_n <= Y <= T_n")

    @property
    def graph(self) -> CoxeterGraph:
        return self.omega1.graph

    @property
    def length(self) -> int:
        return len(self.Rs)

    def base_word(self, i: int) -> ArtinWord:
        """The word omega_1 nu_2 ... nu_i representing alpha_i (1-indexed)."""
        letters = list(self.omega1.letters)
        for nu in self.nus[: i - 1]:
            letters.extend(nu.letters)
        return ArtinWord(self.graph, letters)

    def cube(self, i: int) -> Cube:
        return Cube(self.base_word(i), self.Rs[i - 1], self.Ts[i - 1])

    def to_dict(self) -> dict:
        graph = self.graph
        srt = lambda S: list(graph.sorted_subset(S))
        return {
            "omega1": self.omega1.text(),
            "nus": [nu.text() for nu in self.nus],
            "Rs": [srt(R) for R in self.Rs],
            "Ts": [srt(T) for T in self.Ts],
            "X": srt(self.X),
            "Y": srt(self.Y),
        }

    @classmethod
    def from_dict(cls, graph: CoxeterGraph, data: dict) -> "CubePrepath":
        from .words import parse_word

        return cls(
            parse_word(graph, data["omega1"]),
            tuple(parse_word(graph, t) for t in data["nus"]),
            tuple(frozenset(R) for R in data["Rs"]),
            tuple(frozenset(T) for T in data["Ts"]),
            frozenset(data["X"]),
            frozenset(data["Y"]),
        )


# ---------------------------------------------------------------------------
# oracle registry
# ---------------------------------------------------------------------------

class OracleRegistry:
    """Maps free-of-infinity subsets to word oracles, auto-building when possible.

    User-supplied oracles can be registered for exotic components; a
    registered oracle also answers any subset of its scope.
    """

    def __init__(self, graph: CoxeterGraph):
        self.graph = graph
        self._cache: dict[frozenset, WordOracle] = {}
        self._user: dict[frozenset, WordOracle] = {}

    def register(self, X: Iterable[str], oracle: WordOracle):
        X = self.graph.subset(X)
        self._user[X] = oracle
        self._cache[X] = oracle

    def get(self, X: Iterable[str]) -> WordOracle:
        X = self.graph.subset(X)
        oracle = self._cache.get(X)
        if oracle is None:
            for Z, candidate in self._user.items():
                if X <= Z:
                    oracle = candidate
                    break
            else:
                oracle = oracle_for(self.graph, X, user_registry=self._user)
            self._cache[X] = oracle
        return oracle


def registry_for(graph: CoxeterGraph) -> OracleRegistry:
    """The default registry of a graph, memoized on the graph itself."""
    slot = graph._caches.setdefault("registry", {})
    reg = slot.get("default")
    if reg is None:
        reg = OracleRegistry(graph)
        slot["default"] = reg
    return reg


class GlobalSolverOracle(WordOracle):
    """The full solver packaged as an oracle over the whole generator set.

    This closes the loop: once the cube-path solver exists it can serve as
    the word-problem solution that the membership procedure assumes, which
    lets kappa decide membership in arbitrary standard parabolics.
    """

    def __init__(self, reg: OracleRegistry):
        self.reg = reg
        self.subset = frozenset(reg.graph.generators)

    def equal(self, u: ArtinWord, v: ArtinWord) -> bool:
        self.check_support(u, v)
        return artin_equal(u, v, self.reg)


def global_oracle(reg: OracleRegistry) -> GlobalSolverOracle:
    return GlobalSolverOracle(reg)


# ---------------------------------------------------------------------------
# word plumbing
# ---------------------------------------------------------------------------

def _shrink(reg: OracleRegistry, word: ArtinWord) -> ArtinWord:
    """Cosmetically shorten a word within its (free-of-infinity) support."""
    word = word.free_reduce()
    if not word.letters:
        return word
    return reg.get(word.support()).canonical_word(word)


def _kappa_into(reg: OracleRegistry, word: ArtinWord, target: frozenset,
                domain: frozenset) -> ArtinWord:
    """Rewrite a word over ``target``; membership is guaranteed by the theory.

    ``word`` must be supported in the free-of-infinity ``domain``.  When the
    support already sits inside the target the word is returned as is.
    """
    word = word.free_reduce()
    if word.support() <= target:
        return word
    out = kappa(word, target, reg.get(domain))
    if out is None:
        raise InvariantBreach(
            f"guaranteed membership in A_{sorted(target)} failed for "
            f"{word.text()!r} over domain {sorted(domain)}"
        )
    return _shrink(reg, out)


def _subsets_between(graph: CoxeterGraph, R: frozenset, T: frozenset):
    """All U with R <= U <= T, smallest first, deterministic order."""
    extras = graph.sorted_subset(T - R)
    for r in range(len(extras) + 1):
        for combo in itertools.combinations(extras, r):
            yield R | frozenset(combo)


# ---------------------------------------------------------------------------
# the two cube predicates
# ---------------------------------------------------------------------------

def cubes_intersect(C1: Cube, C2: Cube, nu: ArtinWord, X: Iterable[str],
                    reg: OracleRegistry) -> frozenset | None:
    """Smallest R with C1 n C2 = C(alpha_1 A_R, alpha_1 A_{T1 n T2}), or None.

    ``nu`` must be supported in the free-of-infinity set X and satisfy
    base(C2) = base(C1) * nu in the group.
    """
    graph = C1.base.graph
    X = graph.subset(X)
    if not nu.support() <= X:
        raise PrepathLinkViolation("nu is not supported in X")
    top = C1.T & C2.T
    core = C1.R | C2.R
    if not core <= top:
        return None
    oracle = reg.get(X)
    if not nu.support() <= top and kappa(nu, top, oracle) is None:
        return None
    R = set(top)
    changed = True
    while changed:
        changed = False
        for s in graph.sorted_subset(R - core):
            smaller = frozenset(R - {s})
            if nu.support() <= smaller or kappa(nu, smaller, oracle) is not None:
                R.discard(s)
                changed = True
                break
    return frozenset(R)


def cubes_span(C1: Cube, C2: Cube, nu: ArtinWord, X: Iterable[str],
               reg: OracleRegistry):
    """(mu, R1 n R2, T1 u T2) when C1 and C2 span a cube, else None.

    On success ``base(C1) * mu`` represents an element of the intersection
    of the two base cosets, and the span is C(alpha A_{R1 n R2}, alpha A_{T1 u T2}).
    """
    graph = C1.base.graph
    X = graph.subset(X)
    if not nu.support() <= X:
        raise PrepathLinkViolation("nu is not supported in X")
    T_union = C1.T | C2.T
    if not graph.is_free_of_infinity(T_union):
        return None
    mu = iota_intersection(nu, C2.R, C1.R, X, reg.get(X))
    if mu is None:
        return None
    return _shrink(reg, mu), C1.R & C2.R, frozenset(T_union)


# ---------------------------------------------------------------------------
# normality test
# ---------------------------------------------------------------------------

def is_normal(P: CubePrepath, reg: OracleRegistry) -> bool:
    """Check the four normal-cube-path conditions on the realization of P."""
    n = P.length
    if n == 0:
        return True
    graph = P.graph
    if any(R == T for R, T in zip(P.Rs, P.Ts)):
        return False  # condition (1): every cube has dimension >= 1
    # condition (2): consecutive cubes meet in a single vertex
    for i in range(1, n):
        dom = P.Ts[i - 1] & P.Ts[i]
        r = cubes_intersect(P.cube(i), P.cube(i + 1), P.nus[i - 1], dom, reg)
        if r != dom:
            return False
    # condition (3): each cube is spanned by its two vertices
    Z = [P.X] + [P.Ts[i] & P.Ts[i + 1] for i in range(n - 1)] + [P.Y]
    for i in range(1, n + 1):
        if Z[i - 1] & Z[i] != P.Rs[i - 1] or Z[i - 1] | Z[i] != P.Ts[i - 1]:
            return False
    # condition (4): the only vertex of C_{i+1} spanning with x_{i-1} is x_i
    for i in range(1, n):
        b_i = P.base_word(i)
        b_next = P.base_word(i + 1)
        dom = P.Ts[i - 1] & P.Ts[i]
        v_prev = Cube(b_i, Z[i - 1], Z[i - 1])
        for U in _subsets_between(graph, P.Rs[i], P.Ts[i]):
            spanned = cubes_span(v_prev, Cube(b_next, U, U), P.nus[i - 1], dom, reg)
            if (spanned is not None) != (U == Z[i]):
                return False
    return True


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------

def normalize(P: CubePrepath, reg: OracleRegistry):
    """Normal cube prepath with the same endpoints, plus the tail word.

    Returns ``(P', mu')`` where P' is normal of length <= length(P) and mu'
    is a word supported in Y representing base(P')^-1 * base(P) at the far
    endpoint.
    """
    return _normalize(P, reg, {})


def _normalize(P: CubePrepath, reg: OracleRegistry, memo: dict):
    res = memo.get(P)
    if res is None:
        res = _normalize_impl(P, reg, memo)
        memo[P] = res
    return res


def _normalize_impl(P: CubePrepath, reg: OracleRegistry, memo: dict):
    graph = P.graph
    empty = ArtinWord(graph, ())
    n = P.length
    if n == 0:
        return P, empty
    if n == 1:
        if P.X == P.Y:
            return CubePrepath(P.omega1, (), (), (), P.X, P.X), empty
        return (
            CubePrepath(P.omega1, (), (P.X & P.Y,), (P.X | P.Y,), P.X, P.Y),
            empty,
        )

    Rn, Tn = P.Rs[-1], P.Ts[-1]
    if Rn == Tn:
        # dim C_n = 0: the last cube is the endpoint vertex itself
        if P.Y != Rn:
            raise InvariantBreach("a zero-dimensional last cube forces Y = R_n = T_n")
        prefix = CubePrepath(P.omega1, P.nus[:-1], P.Rs[:-1], P.Ts[:-1], P.X, P.Y)
        P1, mu1 = _normalize(prefix, reg, memo)
        return P1, _shrink(reg, mu1 * P.nus[-1])

    # ---- Step 1: normalize the prefix up to a chosen vertex z of C_{n-1} n C_n
    M = P.Ts[-2] & Tn  # z = x(alpha_{n-1} A_M): the top vertex of the intersection
    Z = M
    prefix = CubePrepath(P.omega1, P.nus[:-1], P.Rs[:-1], P.Ts[:-1], P.X, Z)
    P2, mu2 = _normalize(prefix, reg, memo)
    m = P2.length + 1
    link = (mu2 * P.nus[-1]).free_reduce()  # represents base(P2)^-1 alpha_n, over M
    if m == 1:
        # the prefix collapsed: x = z, and link is supported in X = M
        P3 = CubePrepath(P2.omega1 * link, (), (Rn,), (Tn,), P.X, P.Y)
    else:
        target = P2.Ts[-1] & M
        P3 = CubePrepath(
            P2.omega1,
            P2.nus + (_kappa_into(reg, link, target, M),),
            P2.Rs + (Rn,),
            P2.Ts + (Tn,),
            P.X,
            P.Y,
        )
    if m < n:
        return _normalize(P3, reg, memo)
    P = P3

    # ---- Step 2: shrink C_n to Span(z, y)
    Rn, Tn = P.Rs[-1], P.Ts[-1]
    Tprev = P.Ts[-2]
    R2, T2 = Z & P.Y, Z | P.Y
    if (R2, T2) != (Rn, Tn):
        nu_new = _kappa_into(reg, P.nus[-1], Tprev & T2, Tprev & Tn)
        P = CubePrepath(
            P.omega1,
            P.nus[:-1] + (nu_new,),
            P.Rs[:-1] + (R2,),
            P.Ts[:-1] + (T2,),
            P.X,
            P.Y,
        )
        Rn, Tn = R2, T2
    if Rn == Tn:
        # Span(z, y) is a vertex, so z = y; strip it through the dim-0 case
        return _normalize(P, reg, memo)

    # ---- Step 3: minimize the attachment vertex over the span set
    D = Tprev & Tn
    Zprev = P.X if n == 2 else P.Ts[-3] & Tprev
    b_prev = P.base_word(n - 1)
    b_n = b_prev * P.nus[-1]
    v_prev = Cube(b_prev, Zprev, Zprev)
    candidates = []
    for U in _subsets_between(graph, Rn, Tn):
        res = cubes_span(v_prev, Cube(b_n, U, U), P.nus[-1], D, reg)
        if res is not None:
            candidates.append((U, res[0]))
    if Z not in [U for U, _ in candidates]:
        raise InvariantBreach("the attachment vertex z is missing from the span set")

    def span_dim_key(item):
        U, _ = item
        return (len(U | P.Y) - len(U & P.Y), tuple(graph.sorted_subset(U)))

    Zp, mu1 = min(candidates, key=span_dim_key)
    if Zp == Z:
        # Step 4: minimality forces the span set to be exactly {z}: P is normal
        return P, empty

    # rebuild C_{n-1} = Span(x_{n-2}, z') and C_n = Span(z', y), then recurse on
    # the strictly smaller dim(C_n)
    Rn1, Tn1 = Zprev & Zp, Zprev | Zp
    Rn2, Tn2 = Zp & P.Y, Zp | P.Y
    nu_last = _kappa_into(reg, mu1.inverse() * P.nus[-1], D & Tn1 & Tn2, D)
    if n == 2:
        P = CubePrepath(P.omega1 * mu1, (nu_last,), (Rn1, Rn2), (Tn1, Tn2), P.X, P.Y)
    else:
        Dprev = P.Ts[-3] & Tprev
        nu_prev = _kappa_into(reg, P.nus[-2] * mu1, Dprev & Tn1, Dprev)
        P = CubePrepath(
            P.omega1,
            P.nus[:-2] + (nu_prev, nu_last),
            P.Rs[:-2] + (Rn1, Rn2),
            P.Ts[:-2] + (Tn1, Tn2),
            P.X,
            P.Y,
        )
    return _normalize(P, reg, memo)


# ---------------------------------------------------------------------------
# the solver
# ---------------------------------------------------------------------------

def word_to_prepath(omega: ArtinWord) -> CubePrepath:
    """The tautological prepath of a word: one edge cube per letter."""
    graph = omega.graph
    none = frozenset()
    if not omega.letters:
        return CubePrepath(omega, (), (), (), none, none)
    nus = []
    Ts = []
    for i, (s, e) in enumerate(omega.letters):
        if i > 0:
            nus.append(ArtinWord(graph, ()))
        nus.append(ArtinWord(graph, ((s, e),)))
        Ts.extend((frozenset({s}), frozenset({s})))
    return CubePrepath(
        ArtinWord(graph, ()),
        tuple(nus),
        (none,) * len(Ts),
        tuple(Ts),
        none,
        none,
    )


def is_trivial(omega: ArtinWord, reg: OracleRegistry | None = None) -> bool:
    """Decide whether the word represents the identity of the Artin-Tits group."""
    reg = reg if reg is not None else registry_for(omega.graph)
    P, _ = normalize(word_to_prepath(omega), reg)
    return P.length == 0


def artin_equal(u: ArtinWord, v: ArtinWord, reg: OracleRegistry | None = None) -> bool:
    if u.graph is not v.graph:
        raise GraphMismatch("words belong to different graphs")
    return is_trivial(u * v.inverse(), reg)
