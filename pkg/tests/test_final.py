import itertools

import pytest

from eo_strata.final import (
    FinalType, YoungDiagram, a_number, break_points, building_word, canonical_domain,
    check_building, complementary, elementary_reduction, final_of_type, final_of_young,
    final_type_of, fragments_and_orbits, is_final, is_movable, mu_of, parse_type,
    parse_young, s_action, s_action_young, semi_simple_indices, shuffle, shuffle_height,
    staircase, type_of_young, u_f, word_acts_on_young, young_of, young_of_type,
)
from eo_strata.weyl import (
    SignedPerm, apply_word, bruhat_leq, enumerate_weyl, identity, make_perm, w_empty,
)


def perm(*prefix):
    return make_perm(len(prefix), prefix)


class TestTypes:
    def test_final_type_examples(self):
        assert final_type_of(perm(2, 4)).values == (1, 1)
        assert final_type_of(perm(1, 2)).values == (0, 0)
        assert final_type_of(perm(1, 4, 2)).values == (0, 0, 1)

    def test_type_extension(self):
        nu = FinalType(3, (0, 1, 1))
        assert nu.full() == (0, 0, 1, 1, 2, 2, 3)

    def test_type_validation(self):
        with pytest.raises(ValueError):
            FinalType(2, (0, 2))

    def test_mu_examples(self):
        assert mu_of(SignedPerm(2, (3, 1, 4, 2))) == (0, 2)
        assert mu_of(SignedPerm(2, (2, 4, 1, 3))) == (1, 1)
        assert mu_of(identity(3)) == (0, 0, 0)

    @pytest.mark.parametrize("g", [2, 3, 4])
    def test_mu_dominates_nu(self, g):
        for w in enumerate_weyl(g):
            nu = final_type_of(w)
            inv = w.inverse()
            mu = [max(max(inv(a) for a in range(1, i + 1)) - g, 0) for i in range(1, 2 * g + 1)]
            assert tuple(mu[:g]) == mu_of(w)
            assert all(mu[i - 1] >= nu(i) for i in range(1, 2 * g + 1))
            # equality has to be read on all of 1..2g: [2,1] agrees on 1..g
            assert all(mu[i - 1] == nu(i) for i in range(1, 2 * g + 1)) == is_final(w)

    def test_mu_equal_on_lower_half_only(self):
        w = perm(2, 1)
        assert mu_of(w) == final_type_of(w).values and not is_final(w)

    def test_is_final_examples(self):
        assert is_final(perm(2, 4)) and not is_final(perm(4, 2)) and is_final(identity(2))

    @pytest.mark.parametrize("g", [2, 3, 4])
    def test_finals_fulfil_rank_condition(self, g):
        for w in enumerate_weyl(g, "final"):
            nu = final_type_of(w)
            assert all(w.r(g + nu(i), i) == i for i in range(1, g + 1))

    def test_rank_condition_not_sufficient(self):
        w = perm(2, 1)
        nu = final_type_of(w)
        assert all(w.r(2 + nu(i), i) == i for i in (1, 2)) and not is_final(w)

    @pytest.mark.parametrize("g", [2, 3])
    def test_type_invariant_under_sg(self, g):
        sg = [w for w in enumerate_weyl(g) if all(w(i) <= g for i in range(1, g + 1))]
        assert len(sg) == len(list(itertools.permutations(range(g))))
        for w in enumerate_weyl(g):
            for s in sg:
                assert final_type_of(w * s) == final_type_of(w)


class TestBijections:
    def test_examples(self):
        assert final_of_young(YoungDiagram(5, (5, 3, 1))) == perm(1, 3, 5, 7, 9)
        nu = FinalType(2, (1, 1))
        assert young_of_type(nu) == YoungDiagram(2, (1,))
        assert final_of_type(nu) == perm(2, 4)
        assert final_of_young(staircase(3, 3)) == identity(3)

    @pytest.mark.parametrize("g", [1, 2, 3, 4, 5])
    def test_round_trips(self, g):
        finals = enumerate_weyl(g, "final")
        ys = {young_of(w) for w in finals}
        assert len(ys) == 2 ** g
        for w in finals:
            nu = final_type_of(w)
            assert type_of_young(young_of_type(nu)) == nu
            assert final_of_type(nu) == w
            assert final_of_young(young_of(w)) == w

    @pytest.mark.parametrize("g", [2, 3, 4, 5])
    def test_length_formula(self, g):
        for w in enumerate_weyl(g, "final"):
            assert w.length == g * (g + 1) // 2 - young_of(w).area

    @pytest.mark.parametrize("g", [2, 3, 4])
    def test_order_on_finals(self, g):
        finals = enumerate_weyl(g, "final")
        for u in finals:
            for v in finals:
                by_type = all(a <= b for a, b in zip(final_type_of(u).values, final_type_of(v).values))
                su, sv = sorted(u.prefix), sorted(v.prefix)
                by_sets = all(a <= b for a, b in zip(su, sv))
                assert bruhat_leq(u, v) == by_type == by_sets

    def test_text(self):
        assert parse_young("{5,3,1}", 5).parts == (5, 3, 1)
        assert parse_young("∅", 3).parts == ()
        assert str(YoungDiagram(3, (3, 1))) == "{1,3}"
        assert parse_type("{0,0,1}", 3).values == (0, 0, 1)
        with pytest.raises(ValueError):
            parse_young("{1,1}", 3)


class TestBuildingWords:
    def test_five_three_one(self):
        assert building_word(YoungDiagram(5, (5, 3, 1))) == (4, 5, 2, 3, 4, 5)

    def test_staircase(self):
        assert building_word(staircase(3, 3)) == ()

    def test_g2_exhaustive(self):
        y = YoungDiagram(2, (1,))
        target = final_of_young(y)
        hits = [wd for wd in itertools.product((1, 2), repeat=2) if apply_word(wd, 2) == target]
        assert building_word(y) in hits

    @pytest.mark.parametrize("g", [2, 3, 4, 5])
    def test_all_finals(self, g):
        empty = YoungDiagram(g, ())
        for w in enumerate_weyl(g, "final"):
            y = young_of(w)
            t = building_word(y)
            assert apply_word(t, g) == w
            assert len(t) == y.complement().area == w.length
            assert word_acts_on_young(t, empty) == y.complement()
            assert check_building(t, g)

    @pytest.mark.parametrize("g", [3, 4])
    def test_building_words_are_reduced_diagram_words(self, g):
        # every word adding one box per letter multiplies out to a final element
        empty = YoungDiagram(g, ())
        for n in range(0, 5):
            for wd in itertools.product(range(1, g + 1), repeat=n):
                if check_building(wd, g):
                    w = apply_word(wd, g)
                    assert w.length == n and is_final(w)
                    assert young_of(w).complement() == word_acts_on_young(wd, empty)


class TestActions:
    def test_break_points_example(self):
        assert break_points(FinalType(2, (1, 1))) == {1, 2}

    def test_g_always_break_point(self):
        for g in (2, 3, 4):
            for w in enumerate_weyl(g, "final"):
                assert g in break_points(final_type_of(w))

    def test_s_action(self):
        nu = FinalType(2, (0, 0))
        assert s_action(2, nu).values == (0, 1)
        nu = FinalType(3, (0, 0, 0))
        assert 1 not in break_points(nu)
        assert s_action(1, nu) == nu

    def test_young_action(self):
        empty = YoungDiagram(2, ())
        assert s_action_young(2, empty) == YoungDiagram(2, (1,))
        assert s_action_young(1, empty) == empty
        assert s_action_young(1, YoungDiagram(2, (1,))) == YoungDiagram(2, (2,))


class TestComplementary:
    def test_examples(self):
        assert complementary(perm(1, 2)) == perm(3, 4)
        assert complementary(perm(3, 4)) == identity(2)

    def test_rejects_non_final(self):
        with pytest.raises(ValueError):
            complementary(perm(4, 2))

    @pytest.mark.parametrize("g", [2, 3, 4])
    def test_diagram_and_break_points(self, g):
        for w in enumerate_weyl(g, "final"):
            v = complementary(w)
            assert young_of(v) == young_of(w).complement()
            assert break_points(final_type_of(v)) == break_points(final_type_of(w))


class TestCanonical:
    @pytest.mark.parametrize("g", [2, 3, 4, 5])
    def test_p_rank_domain(self, g):
        for f in range(g + 1):
            dom = canonical_domain(final_type_of(u_f(f, g))).domain
            if f == g:
                # ordinary: the run f..2g-f collapses to {0, g, 2g}
                assert dom == (0, g, 2 * g)
            else:
                assert dom == tuple(sorted({0, 2 * g} | set(range(f, 2 * g - f + 1))))

    @pytest.mark.parametrize("g", [1, 2, 3, 4])
    def test_extremes(self, g):
        assert canonical_domain(final_type_of(w_empty(g))).domain == (0, g, 2 * g)
        assert canonical_domain(final_type_of(identity(g))).domain == (0, g, 2 * g)

    @pytest.mark.parametrize("g", [2, 3, 4, 5])
    def test_domain_is_least_closed_set(self, g):
        for w in enumerate_weyl(g, "final"):
            nu = final_type_of(w)
            dom = {0, 2 * g}
            while True:
                grown = dom | {2 * g - i for i in dom} | {nu(i) for i in dom}
                if grown == dom:
                    break
                dom = grown
            assert canonical_domain(nu).domain == tuple(sorted(dom))


class TestFragments:
    def test_superspecial(self):
        for g in (2, 3):
            fo = fragments_and_orbits(final_type_of(identity(g)))
            assert fo.fragments == ((0, g), (g, 2 * g))
            (orb,) = fo.orbits
            assert orb.odd and orb.size == 2 and orb.length == g

    def test_ordinary(self):
        for g in (2, 3):
            fo = fragments_and_orbits(final_type_of(w_empty(g)))
            (orb,) = fo.orbits
            assert not orb.odd and orb.size == 1 and orb.length == g

    def test_g2_13(self):
        fo = fragments_and_orbits(final_type_of(perm(1, 3)))
        assert fo.fragments == ((0, 1), (1, 2), (2, 3), (3, 4))
        (orb,) = fo.orbits
        assert orb.odd and orb.size == 4 and orb.length == 1

    @pytest.mark.parametrize("g", [2, 3, 4, 5])
    def test_partition(self, g):
        for w in enumerate_weyl(g, "final"):
            fo = fragments_and_orbits(final_type_of(w))
            pts = [k for a, b in fo.fragments for k in range(a + 1, b + 1)]
            assert pts == list(range(1, 2 * g + 1))
            for orb in fo.orbits:
                assert not orb.odd or orb.size % 2 == 0


class TestShuffles:
    def test_g2_example(self):
        # the p-rank one element [2,4] shuffles to [3,1] through I = {2}
        w = perm(2, 4)
        assert shuffle(w, {2}, checked=True) == perm(3, 1)
        assert shuffle_height({2}) == 1
        assert shuffle(w, {1}) == w and shuffle_height({1}) == 0

    @pytest.mark.parametrize("g", [2, 3, 4])
    def test_bottom_segment_is_trivial(self, g):
        for f in range(g + 1):
            I = set(range(1, f + 1))
            assert shuffle_height(I) == 0
            for w in enumerate_weyl(g):
                assert shuffle(w, I) == w

    @pytest.mark.parametrize("g", [2, 3])
    def test_semi_simple_indices(self, g):
        for w in enumerate_weyl(g, "admissible"):
            ss = semi_simple_indices(w)
            f = len(ss)
            if ss != frozenset(range(g - f + 1, g + 1)):
                continue
            for I in itertools.combinations(range(1, g + 1), f):
                v = shuffle(w, I, checked=True)
                assert semi_simple_indices(v) == {g + 1 - i for i in I}

    def test_checked_rank(self):
        with pytest.raises(ValueError):
            shuffle(perm(2, 4), {1, 2}, checked=True)

    def test_elementary_reduction(self):
        assert elementary_reduction({2, 3}) == ((1, 3), 2)
        assert elementary_reduction({1, 2}) is None
        # each reduction lowers the height by one
        I = (2, 4, 5)
        h = shuffle_height(I)
        while (step := elementary_reduction(I)) is not None:
            I = step[0]
            h -= 1
            assert shuffle_height(I) == h
        assert h == 0


class TestInvariants:
    def test_a_number(self):
        assert a_number(perm(1, 3)) == 1
        for g in (1, 2, 3):
            assert a_number(identity(g)) == g

    @pytest.mark.parametrize("g", [2, 3, 4])
    def test_a_number_from_diagram(self, g):
        for w in enumerate_weyl(g, "final"):
            parts = young_of(w).parts
            # largest staircase {a,...,1} fitting inside the diagram
            a = max(k for k in range(g + 1)
                    if len(parts) >= k and all(parts[i] >= k - i for i in range(k)))
            assert a_number(w) == a

    def test_semi_simple_example(self):
        assert semi_simple_indices(perm(2, 4)) == {2}

    def test_admissibility_required(self):
        with pytest.raises(ValueError):
            semi_simple_indices(perm(4, 3))
        with pytest.raises(ValueError):
            is_movable(perm(4, 3), 1)

    def test_movable_definition(self):
        g = 3
        for w in enumerate_weyl(g, "admissible"):
            for j in (1, 2):
                i = g - j
                assert is_movable(w, j) == (w.r(g + i - 1, i + 1) >= i + 1)
