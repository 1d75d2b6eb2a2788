"""Shared helpers for the test-suite: random words, hand-rolled finite models."""

from __future__ import annotations

import random

from artintits.words import ArtinWord


def random_artin_word(rng: random.Random, graph, max_len: int) -> ArtinWord:
    k = rng.randrange(0, max_len + 1)
    return ArtinWord(
        graph, [(rng.choice(graph.generators), rng.choice((1, -1))) for _ in range(k)]
    )


def random_coxeter_word(rng: random.Random, graph, max_len: int):
    k = rng.randrange(0, max_len + 1)
    return [rng.choice(graph.generators) for _ in range(k)]


def insert_relators(rng: random.Random, word: ArtinWord, relators, count: int) -> ArtinWord:
    letters = list(word.letters)
    for _ in range(count):
        r = rng.choice(relators)
        if rng.random() < 0.5:
            r = r.inverse()
        pos = rng.randrange(0, len(letters) + 1)
        letters[pos:pos] = list(r.letters)
    return ArtinWord(word.graph, letters)


def colored_random_word(rng: random.Random, graph, support, max_len: int) -> ArtinWord:
    """A random word over the given support with trivial Coxeter image."""
    from artintits.words import tau_tilde, theta

    k = rng.randrange(0, max_len + 1)
    w = ArtinWord(
        graph, [(rng.choice(sorted(support)), rng.choice((1, -1))) for _ in range(k)]
    )
    return w * tau_tilde(theta(w)).inverse()


# -- a permutation model of W(A_2) = S_3, for deriving frozen expectations ----

def s3_of_word(word):
    """Image of a word over {s, t} in S_3, with s = (1 2), t = (2 3)."""
    perm = (0, 1, 2)
    swaps = {"s": (0, 1), "t": (1, 2)}
    for letter in word:
        a, b = swaps[letter]
        # right multiplication: perm followed by the transposition
        perm = tuple(
            perm[b] if i == a else perm[a] if i == b else perm[i] for i in range(3)
        )
    return perm


def s3_min_lengths():
    """Minimal word length for every element of S_3, by breadth-first search."""
    lengths = {(0, 1, 2): 0}
    frontier = [()]
    while frontier:
        nxt = []
        for w in frontier:
            for letter in "st":
                w2 = w + (letter,)
                p = s3_of_word(w2)
                if p not in lengths:
                    lengths[p] = len(w2)
                    nxt.append(w2)
        frontier = nxt
    return lengths


def dihedral_of_word(word, m: int):
    """Image of a word over {s, t} in the dihedral group of order 2m.

    Elements act on Z_m as x -> a x + b with a in {1, -1}: s is x -> -x and
    t is x -> -x + 1, so st is the rotation x -> x - 1.
    """
    a, b = 1, 0
    for letter in word:
        c, d = (-1, 0) if letter == "s" else (-1, 1)
        # (w * g)(x) = w(g(x))
        a, b = a * c, (a * d + b) % m
    return a, b
