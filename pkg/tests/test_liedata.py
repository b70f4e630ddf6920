import random
from fractions import Fraction as F

import pytest

from operpop.liedata import (
    CellError,
    cartan_data,
    degrees_for,
    langlands_dual,
    positive_roots,
    shifted_action,
    weight,
    weyl_elements,
    weyl_length,
    weyl_order,
    words_equal,
)

IMPLEMENTED = [
    ("A", 1), ("A", 2), ("A", 3), ("A", 4),
    ("B", 2), ("B", 3), ("C", 2), ("C", 3),
    ("D", 4), ("E", 6), ("F", 4), ("G", 2),
]


class TestCartanData:
    def test_a2_matrix(self):
        assert cartan_data("A", 2).a == ((2, -1), (-1, 2))

    def test_b2_matrix_short_last_root(self):
        c = cartan_data("B", 2)
        assert c.a == ((2, -1), (-2, 2))
        assert c.bilinear(1, 1) == 4 and c.bilinear(2, 2) == 2
        assert c.bilinear(1, 2) == -2

    def test_a2_inverse(self):
        c = cartan_data("A", 2)
        assert c.b == ((F(2, 3), F(1, 3)), (F(1, 3), F(2, 3)))
        assert c.det_d == 3

    @pytest.mark.parametrize("family,rank", IMPLEMENTED)
    def test_inverse_and_symmetrizer(self, family, rank):
        c = cartan_data(family, rank)
        r = c.rank
        for i in range(r):
            for j in range(r):
                s = sum(F(c.a[i][k]) * c.b[k][j] for k in range(r))
                assert s == (1 if i == j else 0)
                assert c.d_sym[i] * c.a[i][j] == c.d_sym[j] * c.a[j][i]

    def test_invalid_types_rejected(self):
        for family, rank in [("D", 2), ("E", 5), ("F", 3), ("G", 3), ("A", 0), ("X", 2)]:
            with pytest.raises(ValueError):
                cartan_data(family, rank)


class TestLanglandsDual:
    def test_a_self_dual(self):
        c = cartan_data("A", 3)
        assert langlands_dual(c).a == c.a

    def test_b2_to_c2(self):
        dual = langlands_dual(cartan_data("B", 2))
        assert dual.family == "C"
        assert dual.a == cartan_data("C", 2).a
        assert dual.d_sym == cartan_data("C", 2).d_sym

    @pytest.mark.parametrize("family,rank", IMPLEMENTED)
    def test_involution(self, family, rank):
        c = cartan_data(family, rank)
        assert langlands_dual(langlands_dual(c)) == c


class TestShiftedAction:
    def test_empty_word(self):
        c = cartan_data("B", 2)
        lam = weight([F(3, 7), F(-2)])
        assert shifted_action([], lam, c) == lam

    def test_sl2(self):
        c = cartan_data("A", 1)
        assert shifted_action([1], weight([0]), c) == (F(-2),)

    def test_a2(self):
        c = cartan_data("A", 2)
        assert shifted_action([1], weight([0, 0]), c) == (F(-2), F(1))

    def test_involution_and_braid(self):
        c = cartan_data("A", 2)
        rng = random.Random(11)
        for _ in range(50):
            lam = weight([F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(2)])
            for i in (1, 2):
                assert shifted_action([i, i], lam, c) == lam
            assert shifted_action([1, 2, 1], lam, c) == shifted_action([2, 1, 2], lam, c)


class TestWeylLength:
    def test_squares_cancel(self):
        assert weyl_length([1, 1], cartan_data("A", 2)) == 0

    def test_longest_elements(self):
        assert weyl_length([1, 2, 1], cartan_data("A", 2)) == 3
        assert weyl_length([1, 2, 1, 2], cartan_data("B", 2)) == 4

    def test_orders(self):
        assert weyl_order(cartan_data("A", 1)) == 2
        assert weyl_order(cartan_data("A", 2)) == 6
        assert weyl_order(cartan_data("B", 2)) == 8
        assert weyl_order(cartan_data("G", 2)) == 12
        assert weyl_order(cartan_data("A", 3)) == 24

    def test_positive_root_counts(self):
        assert len(positive_roots(cartan_data("A", 2))) == 3
        assert len(positive_roots(cartan_data("B", 2))) == 4
        assert len(positive_roots(cartan_data("G", 2))) == 6

    def test_enumeration_matches_length(self):
        c = cartan_data("B", 2)
        for word in weyl_elements(c):
            assert weyl_length(word, c) == len(word)


class TestDegreesFor:
    def test_identity_word(self):
        c = cartan_data("B", 2)
        weights = [weight([1, 0]), weight([0, 1])]
        assert degrees_for([], weights, (1, 1), c) == (1, 1)

    def test_sl2_two_singlets(self):
        c = cartan_data("A", 1)
        weights = [weight([1]), weight([1])]
        assert degrees_for([1], weights, (1,), c) == (2,)

    def test_a2_longest(self):
        c = cartan_data("A", 2)
        assert degrees_for([1, 2, 1], [], (0, 0), c) == (2, 2)

    def test_invalid_cell(self):
        c = cartan_data("A", 1)
        # l = (5) puts the weight at infinity below the anti-dominant wall,
        # so reflecting solves to a negative degree
        with pytest.raises(CellError):
            degrees_for([1], [weight([1]), weight([1])], (5,), c)

    @pytest.mark.parametrize("family,rank,weights", [("A", 2, [[1, 1]]), ("B", 2, [[2, 1]])])
    def test_left_step_changes_one_coordinate(self, family, rank, weights):
        c = cartan_data(family, rank)
        ws = [weight(w) for w in weights]
        for word in weyl_elements(c):
            base = degrees_for(word, ws, (0,) * rank, c)
            for i in range(1, rank + 1):
                extended = (i,) + tuple(word)
                degs = degrees_for(extended, ws, (0,) * rank, c)
                diffs = [j for j in range(rank) if degs[j] != base[j]]
                assert diffs == [] or diffs == [i - 1]
                if weyl_length(extended, c) == weyl_length(word, c) + 1:
                    assert degs[i - 1] > base[i - 1]


class TestWordEquality:
    def test_braid_words_equal(self):
        c = cartan_data("A", 2)
        assert words_equal([1, 2, 1], [2, 1, 2], c)
        assert not words_equal([1], [2], c)
        assert words_equal([1, 1], [], c)
