import random

import pytest

from artintits import coxeter as cx
from artintits.errors import NotColored, SideConditionViolated, SupportViolation
from artintits.garside import garside_oracle
from artintits.refcheck import free_reduce
from artintits.words import (
    ArtinWord,
    DeltaFactor,
    artin_relators,
    delta_decompose,
    delta_word,
    iota_intersection,
    kappa,
    parse_word,
    pi_tilde,
    tau_tilde,
    theta,
)
from support import colored_random_word, random_artin_word


def W(graph, text):
    return parse_word(graph, text)


class TestWordBasics:
    def test_parse_and_text(self, a2):
        w = W(a2, "s t^-1 s")
        assert w.letters == (("s", 1), ("t", -1), ("s", 1))
        assert w.text() == "s t^-1 s"

    def test_support_and_inverse(self, a2):
        w = W(a2, "s t^-1")
        assert w.support() == {"s", "t"}
        assert w.inverse().letters == (("t", 1), ("s", -1))
        assert (w * w.inverse()).free_reduce().letters == ()

    def test_free_reduce(self, a2):
        assert W(a2, "s s^-1").free_reduce().letters == ()
        assert W(a2, "s t t^-1").free_reduce().text() == "s"
        assert len(W(a2, "s t s^-1 t^-1").free_reduce()) == 4


class TestTheta:
    def test_examples(self, a2):
        assert theta(W(a2, "s s^-1")).is_identity()
        assert theta(W(a2, "s t s t^-1")).word == ("t", "s")
        assert theta(W(a2, "s")).word == ("s",)


class TestTau:
    def test_examples(self, a2):
        assert tau_tilde(a2.identity()).letters == ()
        w0 = cx.longest_element(a2, {"s", "t"})
        assert tau_tilde(w0).text() == "s t s"
        assert tau_tilde(a2.element(["t", "s"])).text() == "t s"

    def test_section(self, a2, gvb3):
        rng = random.Random(5)
        for g in (a2, gvb3):
            for _ in range(30):
                w = g.element(
                    [rng.choice(g.generators) for _ in range(rng.randrange(0, 7))]
                )
                lift = tau_tilde(w)
                assert theta(lift) == w
                assert len(lift) == w.length


class TestDelta:
    def test_words(self, a2):
        e = a2.identity()
        assert delta_word(DeltaFactor(e, "s", 1)).text() == "s s"
        assert delta_word(DeltaFactor(e, "s", -1)).text() == "s^-1 s^-1"
        assert delta_word(DeltaFactor(a2.element(["s"]), "t", 1)).text() == "s t t s^-1"

    def test_side_condition(self, a2):
        with pytest.raises(SideConditionViolated):
            DeltaFactor(a2.element(["s"]), "s", 1)

    def test_decompose_examples(self, a2):
        factors, residual = delta_decompose(W(a2, "s s"))
        assert factors == [DeltaFactor(a2.identity(), "s", 1)]
        assert residual.is_identity()

        factors, residual = delta_decompose(W(a2, "s^-1"))
        assert factors == [DeltaFactor(a2.identity(), "s", -1)]
        assert residual.word == ("s",)

        factors, residual = delta_decompose(W(a2, "s t"))
        assert factors == []
        assert residual.word == ("s", "t")

    def test_factor_images_are_colored(self, a2, gvb3):
        rng = random.Random(6)
        for g in (a2, gvb3):
            for _ in range(40):
                w = random_artin_word(rng, g, 8)
                factors, residual = delta_decompose(w)
                assert residual == theta(w)
                for f in factors:
                    assert theta(delta_word(f)).is_identity()

    def test_round_trip(self, a2, b2, a3, iinf):
        # reassembling the factors and the section word gives the input back
        rng = random.Random(7)
        for g in (a2, b2, a3):
            oracle = garside_oracle(g, g.generators)
            for _ in range(200):
                w = random_artin_word(rng, g, 8)
                factors, residual = delta_decompose(w)
                out = ArtinWord(g, ())
                for f in factors:
                    out = out * delta_word(f)
                out = out * tau_tilde(residual)
                assert oracle.equal(out, w)
        for _ in range(200):
            w = random_artin_word(rng, iinf, 8)
            factors, residual = delta_decompose(w)
            out = ArtinWord(iinf, ())
            for f in factors:
                out = out * delta_word(f)
            out = out * tau_tilde(residual)
            assert free_reduce((out * w.inverse()).letters) == ()


class TestPiTilde:
    def test_fixes_subset_words(self, a2):
        assert pi_tilde(W(a2, "t t"), {"t"}).text() == "t t"

    def test_kills_transverse_squares(self, a2):
        assert pi_tilde(W(a2, "s s"), {"t"}).letters == ()

    def test_conjugated_square(self, a2):
        # delta(st, s) retracts onto {t} as delta(e, t)
        assert pi_tilde(W(a2, "s t s s t^-1 s^-1"), {"t"}).text() == "t t"

    def test_not_colored(self, a2):
        with pytest.raises(NotColored):
            pi_tilde(W(a2, "s"), {"t"})

    def test_retraction_law(self, gvb3, registry):
        # pi_T is the identity on colored words already supported in T
        rng = random.Random(8)
        reg = registry(gvb3)
        for T in ({"x1_2", "x2_3"}, {"x1_2", "x2_3", "x3_1"}, {"x2_3"}):
            T = frozenset(T)
            oracle = reg.get(T)
            for _ in range(15):
                w = colored_random_word(rng, gvb3, T, 8)
                assert oracle.equal(pi_tilde(w, T, free_reduce=True), w)

    def test_homomorphism_law(self, gvb3, registry):
        rng = random.Random(9)
        reg = registry(gvb3)
        Z = frozenset({"x1_2", "x2_3", "x3_1"})
        T = frozenset({"x2_3"})
        oracle = reg.get(T)
        for _ in range(15):
            u = colored_random_word(rng, gvb3, Z, 6)
            v = colored_random_word(rng, gvb3, Z, 6)
            lhs = pi_tilde(u * v, T, free_reduce=True)
            rhs = pi_tilde(u, T, free_reduce=True) * pi_tilde(v, T, free_reduce=True)
            assert oracle.equal(lhs, rhs)

    def test_compatibility_law(self, gvb3, registry):
        # on colored words supported in R, pi_T agrees with pi_{R n T}
        rng = random.Random(10)
        reg = registry(gvb3)
        R = frozenset({"x1_2", "x2_3"})
        T = frozenset({"x2_3", "x3_1"})
        oracle = reg.get(T)
        for _ in range(15):
            w = colored_random_word(rng, gvb3, R, 8)
            assert oracle.equal(
                pi_tilde(w, T, free_reduce=True),
                pi_tilde(w, R & T, free_reduce=True),
            )


class TestKappa:
    def test_member(self, a2):
        oracle = garside_oracle(a2, {"s", "t"})
        out = kappa(W(a2, "s s s"), {"s"}, oracle)
        assert out is not None
        assert out.support() <= {"s"}
        assert oracle.equal(out, W(a2, "s s s"))

    def test_not_member_by_image(self, a2):
        oracle = garside_oracle(a2, {"s", "t"})
        assert kappa(W(a2, "t"), {"s"}, oracle) is None

    def test_not_member_colored(self, a2):
        oracle = garside_oracle(a2, {"s", "t"})
        assert kappa(W(a2, "s t s^-1 t^-1"), {"s"}, oracle) is None

    def test_support_violation(self, a2):
        oracle = garside_oracle(a2, {"s"})
        with pytest.raises(SupportViolation):
            kappa(W(a2, "t"), {"s"}, oracle)

    def test_soundness_random(self, gvb3, registry):
        rng = random.Random(11)
        reg = registry(gvb3)
        Z = frozenset({"x1_2", "x2_3", "x3_1"})
        oracle = reg.get(Z)
        hits = 0
        for _ in range(60):
            w = random_artin_word_over(rng, gvb3, Z, 8)
            T = frozenset(rng.sample(sorted(Z), rng.randrange(0, 3)))
            out = kappa(w, T, oracle)
            if out is not None:
                hits += 1
                assert out.support() <= T & Z
                assert oracle.equal(out, w)
        assert hits  # the sweep must exercise the success path


def random_artin_word_over(rng, graph, support, max_len):
    k = rng.randrange(0, max_len + 1)
    return ArtinWord(
        graph, [(rng.choice(sorted(support)), rng.choice((1, -1))) for _ in range(k)]
    )


class TestIota:
    def test_identity_in_intersection(self, a2):
        oracle = garside_oracle(a2, {"s", "t"})
        out = iota_intersection(W(a2, "s"), {"s"}, {"t"}, {"s", "t"}, oracle)
        assert out is not None and out.letters == ()

    def test_oracle_subset_mismatch(self, a2):
        from artintits.errors import OracleSubsetMismatch

        small = garside_oracle(a2, {"s"})
        with pytest.raises(OracleSubsetMismatch):
            iota_intersection(W(a2, "s"), {"s"}, {"t"}, {"s", "t"}, small)

    def test_empty_intersection(self, a2):
        oracle = garside_oracle(a2, {"s", "t"})
        assert iota_intersection(W(a2, "t"), {"s"}, {"s"}, {"s", "t"}, oracle) is None

    def test_empty_word(self, a2):
        oracle = garside_oracle(a2, {"s", "t"})
        out = iota_intersection(W(a2, ""), {"s"}, {"t"}, {"s", "t"}, oracle)
        assert out is not None and out.letters == ()

    def test_soundness_random(self, gvb3, registry):
        # any witness lies in A_Y (by support) and in alpha A_X (checked by kappa)
        rng = random.Random(12)
        reg = registry(gvb3)
        Z = frozenset({"x1_2", "x2_3", "x3_1"})
        oracle = reg.get(Z)
        hits = 0
        for _ in range(60):
            w = random_artin_word_over(rng, gvb3, Z, 6)
            X = frozenset(rng.sample(sorted(Z), rng.randrange(0, 3)))
            Y = frozenset(rng.sample(sorted(Z), rng.randrange(0, 3)))
            out = iota_intersection(w, X, Y, Z, oracle)
            if out is not None:
                hits += 1
                assert out.support() <= Y & Z
                back = kappa(w.inverse() * out, X, oracle)
                assert back is not None
        assert hits


class TestRelators:
    def test_counts(self, a2, gvb3, gvb4, iinf):
        assert len(artin_relators(a2)) == 1
        assert len(artin_relators(iinf)) == 0
        assert len(artin_relators(gvb3)) == 6
        assert len(artin_relators(gvb4)) == 36

    def test_braid_shape(self, a2):
        (rel,) = artin_relators(a2)
        assert rel.text() == "s t s t^-1 s^-1 t^-1"
