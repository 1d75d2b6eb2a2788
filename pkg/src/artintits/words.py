"""Words over the Artin generators and the colored-subgroup calculus.

The central objects are the generators delta(w, s) = tau(w) sigma_s^2
tau(w)^-1 of the colored subgroup (the kernel of the projection onto the
Coxeter group), the decomposition of an arbitrary word into such generators
times a section word, and three word-level procedures built on them:

* ``pi_tilde``  -- the retraction of a colored word onto a standard subset T,
* ``kappa``     -- membership of a word in the standard parabolic A_T, with a
  rewriting over Sigma_T on success,
* ``iota_intersection`` -- emptiness of a coset intersection alpha*A_X (cap)
  A_Y, with a witness word over Sigma_{Y cap Z} on success.

The last two consume a :class:`WordOracle`, a pluggable equality decision for
words supported in a fixed generator subset.
"""

from __future__ import annotations

from typing import Iterable

from . import coxeter
from .coxeter import CoxeterElement, CoxeterGraph
from .errors import (
    GraphMismatch,
    InvariantBreach,
    NotColored,
    OracleSubsetMismatch,
    SideConditionViolated,
    SupportViolation,
)


class ArtinWord:
    """An immutable word over the signed Artin generators of a graph."""

    __slots__ = ("graph", "letters")

    def __init__(self, graph: CoxeterGraph, letters: Iterable[tuple[str, int]] = ()):
        self.graph = graph
        letters = tuple((s, int(e)) for s, e in letters)
        for s, e in letters:
            graph.index(s)
            if e not in (1, -1):
                raise ValueError(f"letter sign must be +1 or -1, got {e}")
        self.letters = letters

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return (
            isinstance(other, ArtinWord)
            and self.graph is other.graph
            and self.letters == other.letters
        )

    def __hash__(self):
        return hash((id(self.graph), self.letters))

    def __mul__(self, other: "ArtinWord") -> "ArtinWord":
        if self.graph is not other.graph:
            raise GraphMismatch("words belong to different graphs")
        return ArtinWord(self.graph, self.letters + other.letters)

    def inverse(self) -> "ArtinWord":
        return ArtinWord(self.graph, tuple((s, -e) for s, e in reversed(self.letters)))

    def support(self) -> frozenset:
        return frozenset(s for s, _ in self.letters)

    def free_reduce(self) -> "ArtinWord":
        out: list[tuple[str, int]] = []
        for s, e in self.letters:
            if out and out[-1][0] == s and out[-1][1] == -e:
                out.pop()
            else:
                out.append((s, e))
        return ArtinWord(self.graph, tuple(out))

    def text(self) -> str:
        return " ".join(s if e == 1 else f"{s}^-1" for s, e in self.letters)

    def __repr__(self):
        return f"ArtinWord({self.text() or '1'!r})"


def parse_word(graph: CoxeterGraph, text: str) -> ArtinWord:
    """Parse whitespace-separated tokens ``name`` / ``name^-1``."""
    letters = []
    for tok in text.split():
        if tok.endswith("^-1"):
            letters.append((tok[:-3], -1))
        elif tok.endswith("^1"):
            letters.append((tok[:-2], 1))
        else:
            letters.append((tok, 1))
    return ArtinWord(graph, letters)


def sigma(graph: CoxeterGraph, s: str, sign: int = 1) -> ArtinWord:
    return ArtinWord(graph, ((s, sign),))


def empty_word(graph: CoxeterGraph) -> ArtinWord:
    return ArtinWord(graph, ())


# ---------------------------------------------------------------------------
# projections between A and W
# ---------------------------------------------------------------------------

def theta(omega: ArtinWord) -> CoxeterElement:
    """Image of the word in the Coxeter group: drop the signs and reduce."""
    return coxeter.reduce(omega.graph, [s for s, _ in omega.letters])


def tau_tilde(w: CoxeterElement) -> ArtinWord:
    """The positive word spelling the canonical reduced expression of w."""
    return ArtinWord(w.graph, tuple((s, 1) for s in w.word))


class DeltaFactor:
    """A generator delta(w, s)^sign of the colored subgroup; needs lg(ws) > lg(w)."""

    __slots__ = ("w", "s", "sign")

    def __init__(self, w: CoxeterElement, s: str, sign: int = 1):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if not coxeter.length_increases_right(w, s):
            raise SideConditionViolated(
                f"delta({' '.join(w.word) or '1'}, {s}) needs lg(ws) > lg(w)"
            )
        self.w = w
        self.s = s
        self.sign = sign

    def __eq__(self, other):
        return (
            isinstance(other, DeltaFactor)
            and self.w == other.w
            and self.s == other.s
            and self.sign == other.sign
        )

    def __repr__(self):
        e = "" if self.sign == 1 else "^-1"
        return f"delta({' '.join(self.w.word) or '1'}, {self.s}){e}"


def delta_word(f: DeltaFactor) -> ArtinWord:
    """The explicit word tau(w) sigma_s^{2 sign} tau(w)^-1, of length 2 lg(w) + 2."""
    head = tau_tilde(f.w)
    return head * ArtinWord(f.w.graph, ((f.s, f.sign), (f.s, f.sign))) * head.inverse()


def delta_decompose(omega: ArtinWord):
    """Split a word as a product of delta generators times the section word.

    Returns ``(factors, residual)`` with omega representing
    ``delta(w_1,t_1)^{mu_1} ... delta(w_m,t_m)^{mu_m} * tau(residual)`` and
    ``residual = theta(omega)``.  Scans left to right, tracking the Coxeter
    image of the prefix.
    """
    graph = omega.graph
    factors: list[DeltaFactor] = []
    u: tuple[int, ...] = ()  # reduced id-word of the prefix image
    for s, e in omega.letters:
        sid = graph.index(s)
        new, ascended = coxeter._append_right(graph, u, sid)
        if e == 1:
            if not ascended:
                w = CoxeterElement(graph, coxeter._canonical(graph, new), _trusted=True)
                factors.append(DeltaFactor(w, s, 1))
        else:
            if ascended:
                w = CoxeterElement(graph, coxeter._canonical(graph, u), _trusted=True)
                factors.append(DeltaFactor(w, s, -1))
        u = new
    residual = CoxeterElement(graph, coxeter._canonical(graph, u), _trusted=True)
    return factors, residual


# ---------------------------------------------------------------------------
# the word-level retraction
# ---------------------------------------------------------------------------

def _project_factor(f: DeltaFactor, T: frozenset) -> ArtinWord | None:
    """Image of one delta generator under the retraction onto T (None if trivial)."""
    graph = f.w.graph
    w0, w1 = coxeter.parabolic_decompose_left(f.w, T)
    w1s = coxeter.multiply(w1, graph.element([f.s]))
    if all(coxeter.length_increases_left(w1s, t) for t in T):
        return None  # w1*s still (T,0)-reduced: the factor retracts to 1
    conj = coxeter.multiply(w1s, coxeter.inverse(w1))
    if conj.length != 1 or conj.word[0] not in T:
        raise InvariantBreach(
            f"w1*s*w1^-1 = {conj!r} is not a generator of T; this contradicts "
            "the retraction lemma"
        )
    t = conj.word[0]
    if not coxeter.length_increases_right(w0, t):
        raise InvariantBreach("delta(w0, t) side condition failed in retraction")
    return delta_word(DeltaFactor(w0, t, f.sign))


def pi_tilde(omega: ArtinWord, T: Iterable[str], free_reduce: bool = False) -> ArtinWord:
    """Word over Sigma_T representing the retraction of a colored word onto T.

    The input must represent an element of the colored subgroup
    (``theta(omega)`` trivial), otherwise NotColored is raised.  The output is
    the raw concatenation of the projected delta factors; pass
    ``free_reduce=True`` to cancel adjacent inverse pairs in the result.
    """
    graph = omega.graph
    T = graph.subset(T)
    factors, residual = delta_decompose(omega)
    if not residual.is_identity():
        raise NotColored(f"theta(omega) = {residual!r} is not the identity")
    out = empty_word(graph)
    for f in factors:
        piece = _project_factor(f, T)
        if piece is not None:
            out = out * piece
    return out.free_reduce() if free_reduce else out


# ---------------------------------------------------------------------------
# oracles, membership, coset intersection
# ---------------------------------------------------------------------------

class WordOracle:
    """Equality decision for words supported in a fixed free-of-infinity subset."""

    subset: frozenset = frozenset()

    def equal(self, u: ArtinWord, v: ArtinWord) -> bool:
        raise NotImplementedError

    def canonical_word(self, u: ArtinWord) -> ArtinWord:
        """A (possibly shorter) word representing the same element; cosmetic."""
        return u.free_reduce()

    def check_support(self, *words: ArtinWord):
        for w in words:
            extra = w.support() - self.subset
            if extra:
                raise SupportViolation(
                    f"word uses generators {sorted(extra)} outside the oracle subset"
                )


def kappa(omega: ArtinWord, T: Iterable[str], oracle: WordOracle) -> ArtinWord | None:
    """Decide membership of the word's element in A_T; rewrite over T on success.

    The word must be supported in the oracle's subset Z.  Returns a word with
    support in T cap Z representing the same element, or None when the element
    lies outside A_T.
    """
    graph = omega.graph
    oracle.check_support(omega)
    TZ = graph.subset(T) & oracle.subset
    w = theta(omega)
    if not coxeter.is_in_parabolic(w, TZ):
        return None
    beta = (omega * tau_tilde(w).inverse()).free_reduce()
    projected = pi_tilde(beta, TZ, free_reduce=True)
    if not oracle.equal(projected, beta):
        return None
    return (projected * tau_tilde(w)).free_reduce()


def iota_intersection(omega: ArtinWord, X: Iterable[str], Y: Iterable[str],
                      Z: Iterable[str], oracle: WordOracle) -> ArtinWord | None:
    """Witness word for alpha*A_X cap A_Y, or None when the intersection is empty.

    ``omega`` represents alpha and must be supported in Z; the witness is
    supported in Y cap Z.
    """
    graph = omega.graph
    X = graph.subset(X)
    Y = graph.subset(Y)
    Z = graph.subset(Z)
    if not Z <= oracle.subset:
        raise OracleSubsetMismatch(
            f"oracle decides {sorted(oracle.subset)}, need {sorted(Z)}"
        )
    if not omega.support() <= Z:
        raise SupportViolation("omega is not supported in Z")
    w = theta(omega)
    w0, w1 = coxeter.parabolic_decompose_left(w, Y)
    if not coxeter.is_in_parabolic(w1, X):
        return None
    beta = (tau_tilde(w0).inverse() * omega * tau_tilde(w1).inverse()).free_reduce()
    p_y = pi_tilde(beta, Y & Z, free_reduce=True)
    gamma = (beta.inverse() * p_y).free_reduce()
    if not oracle.equal(pi_tilde(gamma, X & Z, free_reduce=True), gamma):
        return None
    return (tau_tilde(w0) * p_y).free_reduce()


# ---------------------------------------------------------------------------
# presentation helpers
# ---------------------------------------------------------------------------

def braid_halves(a: str, b: str, m: int):
    """The two sides prod(a,b:m), prod(b,a:m) of a braid relation."""
    lhs = tuple((a, b)[k % 2] for k in range(m))
    rhs = tuple((b, a)[k % 2] for k in range(m))
    return lhs, rhs


def artin_relators(graph: CoxeterGraph) -> list[ArtinWord]:
    """Defining relator words prod(a,b:m) prod(b,a:m)^-1, one per finite label."""
    out = []
    gens = graph.generators
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            m = graph.label(a, b)
            if m == coxeter.INFINITY:
                continue
            lhs, rhs = braid_halves(a, b, m)
            word = ArtinWord(graph, tuple((s, 1) for s in lhs))
            word = word * ArtinWord(graph, tuple((s, 1) for s in rhs)).inverse()
            out.append(word)
    return out
