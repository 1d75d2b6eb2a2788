import random
from collections import Counter

import pytest

from artintits import coxeter as cx
from artintits.cubepath import is_trivial, registry_for
from artintits.errors import (
    BadN,
    IndexOutOfRange,
    NotFreeOfInfinity,
    StrandMismatch,
)
from artintits.virtual_braids import (
    KnWord,
    VBWord,
    classify_components,
    gamma_vb,
    identity_perm,
    kn_to_artin,
    parse_vb_word,
    relabel_kn,
    rewrite_to_semidirect,
    spherical_dimension,
    validate_convention,
    vb_equal,
    vb_relators,
)


def V(n, text):
    return parse_vb_word(n, text)


class TestGammaVB:
    def test_n2(self):
        g = gamma_vb(2)
        assert len(g.generators) == 2
        assert g.label("x1_2", "x2_1") == cx.INFINITY

    def test_n3_label_census(self, gvb3):
        counts = Counter()
        gens = gvb3.generators
        for i, a in enumerate(gens):
            for b in gens[i + 1:]:
                counts[gvb3.label(a, b)] += 1
        assert len(gens) == 6
        assert counts == {3: 6, cx.INFINITY: 9}

    def test_n4_disjoint_pairs_commute(self, gvb4):
        assert gvb4.label("x1_2", "x3_4") == 2

    def test_bad_n(self):
        with pytest.raises(BadN):
            gamma_vb(1)


class TestVBWords:
    def test_tau_sign_normalized(self):
        w = VBWord(3, (("t", 1, -1),))
        assert w.letters == (("t", 1, 1),)

    def test_parse_text_round_trip(self):
        w = V(4, "s1 t2 s3^-1")
        assert w.text() == "s1 t2 s3^-1"
        assert V(4, "t1^-1").text() == "t1"

    def test_index_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            V(3, "s3")

    def test_strand_mismatch(self):
        with pytest.raises(StrandMismatch):
            V(3, "s1") * V(4, "s1")

    def test_inverse(self):
        w = V(3, "s1 t1 s2^-1")
        assert w.inverse().text() == "s2 t1 s1^-1"


class TestRewrite:
    def test_prop_61_identity(self):
        kappa, p = rewrite_to_semidirect(V(3, "t1 s2 t1"))
        assert kappa.letters == (((1, 3), 1),)
        assert p == identity_perm(3)

    def test_sigma(self):
        kappa, p = rewrite_to_semidirect(V(3, "s1"))
        assert kappa.letters == (((1, 2), 1),)
        assert p == identity_perm(3)

    def test_tau(self):
        kappa, p = rewrite_to_semidirect(V(3, "t1"))
        assert kappa.letters == ()
        assert p == (2, 1, 3)

    def test_homomorphic_scan(self):
        rng = random.Random(21)
        for _ in range(40):
            n = rng.choice((3, 4))
            mk = lambda: VBWord(n, tuple(
                (rng.choice("st"), rng.randrange(1, n), rng.choice((1, -1)))
                for _ in range(rng.randrange(0, 7))
            ))
            u, v = mk(), mk()
            ku, pu = rewrite_to_semidirect(u)
            kv, pv = rewrite_to_semidirect(v)
            kuv, puv = rewrite_to_semidirect(u * v)
            assert puv == tuple(pu[pv[i] - 1] for i in range(n))
            assert kuv == ku * relabel_kn(pu, kv)

    def test_theta_consistency(self):
        rng = random.Random(22)
        for _ in range(40):
            n = rng.choice((3, 4))
            w = VBWord(n, tuple(
                (rng.choice("st"), rng.randrange(1, n), rng.choice((1, -1)))
                for _ in range(rng.randrange(0, 8))
            ))
            _, p = rewrite_to_semidirect(w)
            q = identity_perm(n)
            for kind, i, _ in w.letters:
                if kind == "t":
                    q = q[: i - 1] + (q[i], q[i - 1]) + q[i + 1:]
            assert p == q


class TestKnToArtin:
    def test_letterwise(self):
        k = KnWord(3, (((1, 3), 1),))
        assert kn_to_artin(k).text() == "x1_3"
        assert kn_to_artin(KnWord(3, ())).letters == ()

    def test_braid_relator_trivial(self, gvb3):
        k = KnWord(
            3,
            (((1, 2), 1), ((2, 3), 1), ((1, 2), 1),
             ((2, 3), -1), ((1, 2), -1), ((2, 3), -1)),
        )
        assert is_trivial(kn_to_artin(k), registry_for(gvb3))

    def test_index_check(self):
        with pytest.raises(IndexOutOfRange):
            KnWord(3, (((1, 4), 1),))


class TestClassify:
    def test_path(self):
        assert classify_components(3, {"x1_2", "x2_3"}) == [("A", 2, ["x1_2", "x2_3"])]

    def test_cycle(self):
        assert classify_components(3, {"x1_2", "x2_3", "x3_1"}) == [
            ("Atilde", 2, ["x1_2", "x2_3", "x3_1"])
        ]

    def test_empty(self):
        assert classify_components(3, frozenset()) == []

    def test_mixed(self):
        got = classify_components(4, {"x1_2", "x3_4"})
        assert sorted(c[0] for c in got) == ["A", "A"]

    def test_rejects_infinite_labels(self):
        with pytest.raises(NotFreeOfInfinity):
            classify_components(3, {"x1_2", "x2_1"})

    def test_agrees_with_graph_classification(self, gvb4):
        rng = random.Random(23)
        gens = gvb4.generators
        seen_finite = 0
        for _ in range(200):
            X = frozenset(rng.sample(gens, rng.randrange(0, 5)))
            if not gvb4.is_free_of_infinity(X):
                continue
            comps = classify_components(4, X)
            types = cx.classify_finite(gvb4, X)
            if all(kind == "A" for kind, _, _ in comps):
                seen_finite += 1
                assert types == tuple(sorted(f"A{k}" for _, k, _ in comps))
            else:
                assert types is None
        assert seen_finite


class TestVBEqual:
    def test_mixed_relation(self):
        assert vb_equal(V(3, "s1 t2 t1"), V(3, "t2 t1 s2"))

    def test_tau_involution(self):
        assert vb_equal(V(3, "t1 t1"), V(3, ""))

    def test_sigma_vs_tau(self):
        assert not vb_equal(V(3, "s1"), V(3, "t1"))

    def test_strand_mismatch(self):
        with pytest.raises(StrandMismatch):
            vb_equal(V(3, "s1"), V(4, "s1"))

    def test_convention_validates(self):
        validate_convention(3)
        validate_convention(4)

    def test_relator_count(self):
        assert len(vb_relators(3)) == 5
        assert len(vb_relators(4)) == 12

    def test_all_relators_trivial_n3(self):
        empty = VBWord(3, ())
        for r in vb_relators(3):
            assert vb_equal(r, empty)

    def test_insertion_stability(self):
        rng = random.Random(24)
        rel = vb_relators(3)
        for _ in range(10):
            letters = tuple(
                (rng.choice("st"), rng.randrange(1, 3), rng.choice((1, -1)))
                for _ in range(rng.randrange(0, 7))
            )
            w = VBWord(3, letters)
            base = vb_equal(w, VBWord(3, ()))
            r = rng.choice(rel)
            pos = rng.randrange(0, len(letters) + 1)
            w2 = VBWord(3, letters[:pos] + r.letters + letters[pos:])
            assert vb_equal(w2, VBWord(3, ())) == base


class TestDimension:
    def test_small(self):
        assert spherical_dimension(2) == 1
        assert spherical_dimension(3) == 2
        assert spherical_dimension(4) == 3

    def test_bad_n(self):
        with pytest.raises(BadN):
            spherical_dimension(1)
