import itertools

import pytest

from eo_strata.weyl import (
    SignedPerm, apply_word, bruhat_leq, covers, enumerate_weyl, format_word, identity,
    longest, make_perm, parse_perm, parse_word, reduced_word, rho_embed, simple, w_empty,
)


def full(g, prefix):
    return list(make_perm(g, prefix).images)


class TestConstruction:
    def test_identity_g2(self):
        assert full(2, [1, 2]) == [1, 2, 3, 4]

    def test_table_row_42(self):
        assert full(2, [4, 2]) == [4, 2, 3, 1]

    def test_w_empty_g3(self):
        assert full(3, [4, 5, 6]) == [4, 5, 6, 1, 2, 3]
        assert w_empty(3) == make_perm(3, [4, 5, 6])

    @pytest.mark.parametrize("prefix", [[1, 1], [1, 5], [1, 4], [0, 2], [2]])
    def test_rejects_bad_prefix(self, prefix):
        with pytest.raises(ValueError):
            make_perm(2, prefix)

    def test_rejects_asymmetric_images(self):
        with pytest.raises(ValueError):
            SignedPerm(2, (1, 2, 4, 3))


class TestRankCounts:
    def test_examples(self):
        assert SignedPerm(2, (2, 4, 1, 3)).r(2, 3) == 1
        assert identity(2).r(3, 3) == 3
        assert SignedPerm(2, (4, 2, 3, 1)).r(2, 2) == 1

    def test_against_definition(self):
        for w in enumerate_weyl(3):
            for i in range(1, 7):
                for j in range(1, 7):
                    assert w.r(i, j) == len([a for a in range(1, i + 1) if w(a) <= j])


class TestLength:
    def test_table_values(self):
        assert make_perm(2, [4, 3]).length == 4
        w = make_perm(2, [3, 4])
        assert (w.length, w.codim) == (3, 1)

    @pytest.mark.parametrize("g", [1, 2, 3, 4])
    def test_identity(self, g):
        assert identity(g).length == 0 and identity(g).codim == g * g

    @pytest.mark.parametrize("g", [1, 2, 3])
    def test_length_is_word_length(self, g):
        # BFS distance in the Cayley graph is an independent length oracle
        dist = {identity(g): 0}
        frontier = [identity(g)]
        while frontier:
            nxt = []
            for w in frontier:
                for i in range(1, g + 1):
                    v = w * simple(i, g)
                    if v not in dist:
                        dist[v] = dist[w] + 1
                        nxt.append(v)
            frontier = nxt
        for w, d in dist.items():
            assert w.length == d
            assert w.length + w.codim == g * g

    def test_longest(self):
        assert longest(3).length == 9


class TestBruhat:
    def test_examples(self):
        a, b, c = make_perm(2, [1, 2]), make_perm(2, [2, 4]), make_perm(2, [3, 1])
        assert bruhat_leq(a, b)
        assert bruhat_leq(b, b)
        assert not bruhat_leq(b, c) and not bruhat_leq(c, b)

    def test_mismatched_g(self):
        with pytest.raises(ValueError):
            bruhat_leq(identity(2), identity(3))

    @pytest.mark.parametrize("g", [2, 3])
    def test_subword_property(self, g):
        els = enumerate_weyl(g)
        below = {}
        for w in els:
            word = reduced_word(w)
            subs = set()
            for mask in itertools.product((0, 1), repeat=len(word)):
                subs.add(apply_word([a for a, m in zip(word, mask) if m], g))
            below[w] = subs
        for u in els:
            for v in els:
                assert bruhat_leq(u, v) == (u in below[v])

    @pytest.mark.parametrize("g", [2, 3])
    def test_inverse_invariance(self, g):
        els = enumerate_weyl(g)
        for u in els:
            for v in els:
                assert bruhat_leq(u, v) == bruhat_leq(u.inverse(), v.inverse())

    def test_covers(self):
        w = make_perm(2, [3, 4])
        assert set(covers(w)) == {make_perm(2, [2, 4]), make_perm(2, [3, 1])}

    @pytest.mark.parametrize("g", [2, 3, 4])
    def test_admissible_two_ways(self, g):
        top = w_empty(g)
        for w in enumerate_weyl(g):
            by_order = bruhat_leq(w, top)
            assert by_order == all(w(i) <= g + i for i in range(1, g + 1))
            assert by_order == all(w.r(i, g + i) == i for i in range(1, g + 1))


class TestWords:
    def test_table_words(self):
        assert apply_word([1, 2, 1, 2], 2) == make_perm(2, [4, 3])
        assert apply_word([3, 2], 3) == make_perm(3, [1, 4, 2])

    def test_inverse(self):
        for w in enumerate_weyl(3):
            assert w * w.inverse() == identity(3)

    def test_reduced_word_examples(self):
        assert reduced_word(identity(3)) == ()
        assert reduced_word(make_perm(2, [2, 4])) == (1, 2)
        assert reduced_word(make_perm(3, [1, 4, 5])) == (3, 2, 3)

    @pytest.mark.parametrize("g", [1, 2, 3, 4])
    def test_reduced_word_round_trip(self, g):
        for w in enumerate_weyl(g):
            word = reduced_word(w)
            assert len(word) == w.length and apply_word(word, g) == w

    def test_word_letters_checked(self):
        with pytest.raises(ValueError):
            apply_word([3], 2)


class TestEnumerate:
    @pytest.mark.parametrize("g,n", [(1, 2), (2, 8), (3, 48), (4, 384)])
    def test_sizes(self, g, n):
        assert len(enumerate_weyl(g)) == n == len(set(enumerate_weyl(g)))
        assert len(enumerate_weyl(g, "final")) == 2 ** g

    def test_admissible_g3(self):
        assert len(enumerate_weyl(3, "admissible")) == 26

    def test_finals_g1(self):
        assert enumerate_weyl(1, "final") == [make_perm(1, [1]), make_perm(1, [2])]

    def test_order_is_total_and_stable(self):
        els = enumerate_weyl(3)
        assert els == sorted(els, key=SignedPerm.sort_key)


class TestRho:
    def test_examples(self):
        assert rho_embed(1, make_perm(2, [2, 4]), 3) == make_perm(3, [3, 5, 6])
        assert rho_embed(1, identity(2), 3) == make_perm(3, [2, 3, 6])

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            rho_embed(1, identity(3), 3)

    @pytest.mark.parametrize("g,i", [(3, 1), (3, 2), (4, 2)])
    def test_order_preserving(self, g, i):
        small = enumerate_weyl(g - i)
        for u in small:
            for v in small:
                if bruhat_leq(u, v):
                    assert bruhat_leq(rho_embed(i, u, g), rho_embed(i, v, g))


class TestText:
    def test_parse_perm(self):
        assert parse_perm("[4,2]", 2) == make_perm(2, [4, 2])
        assert parse_perm("[142]", 3) == make_perm(3, [1, 4, 2])
        assert parse_perm("[4,2,3,1]", 2) == make_perm(2, [4, 2])
        with pytest.raises(ValueError):
            parse_perm("4,2", 2)

    def test_words(self):
        assert parse_word("s3 s2") == (3, 2)
        assert parse_word("s_3s_2") == (3, 2)
        assert parse_word("Id") == ()
        assert format_word((3, 2)) == "s3 s2"
        with pytest.raises(ValueError):
            parse_word("t3")
