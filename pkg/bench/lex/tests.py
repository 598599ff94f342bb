from fractions import Fraction

from django.test import SimpleTestCase

from cube.dyadic import Dyadic
from cube.exceptions import PreconditionError
from cube.family import (
    dictatorship,
    edge_boundary_size,
    empty_family,
    family_from_sets,
    measure,
    slice_family,
    subset_from_index,
    subset_index,
    total_influence,
)
from lex.decomposition import decompose_measure, lex_slice_profile
from lex.influence import lex_boundary, lex_boundary_table, lex_influence, max_lex_influence
from lex.segments import (
    boundary_excess,
    lex_greater,
    lex_order,
    lex_segment,
    lex_segment_of_measure,
    stability_gap,
)


class LexOrderTests(SimpleTestCase):
    def test_comparator(self):
        self.assertTrue(lex_greater({1}, {2, 3}))
        self.assertFalse(lex_greater({2}, {1}))
        self.assertTrue(lex_greater({1, 2}, {1}))
        with self.assertRaises(PreconditionError):
            lex_greater({1}, {1})

    def test_order_of_p3(self):
        expected = [{1, 2, 3}, {1, 2}, {1, 3}, {1}, {2, 3}, {2}, {3}, set()]
        self.assertEqual(lex_order(3), [frozenset(s) for s in expected])

    def test_order_agrees_with_comparator(self):
        order = lex_order(4)
        for first, second in zip(order, order[1:]):
            self.assertTrue(lex_greater(first, second))

    def test_comparator_matches_subset_index(self):
        for n in range(1, 6):
            subsets = [subset_from_index(p, n) for p in range(1 << n)]
            for first in subsets:
                for second in subsets:
                    if first != second:
                        self.assertEqual(lex_greater(first, second), subset_index(first, n) > subset_index(second, n))


class LexSegmentTests(SimpleTestCase):
    def test_segments(self):
        self.assertEqual(lex_segment(3, 3), family_from_sets([{1, 2, 3}, {1, 2}, {1, 3}], 3))
        self.assertEqual(lex_segment(5, 0), empty_family(5))
        for n in range(1, 7):
            self.assertEqual(lex_segment(n, 1 << (n - 1)), dictatorship(n, 1))
        self.assertEqual(lex_segment_of_measure(4, Dyadic(3, 3)), lex_segment(4, 6))

    def test_segment_is_an_initial_segment(self):
        order = lex_order(4)
        for m in range(17):
            self.assertEqual(lex_segment(4, m), family_from_sets(order[:m], 4))

    def test_bad_sizes(self):
        with self.assertRaises(PreconditionError):
            lex_segment(3, 9)
        with self.assertRaises(PreconditionError):
            lex_segment_of_measure(2, Dyadic(1, 3))


class LexInfluenceTests(SimpleTestCase):
    def test_known_values(self):
        self.assertEqual(lex_influence(Dyadic(1, 1)), 1)
        self.assertEqual(lex_influence(Dyadic(3, 3)), Fraction(5, 4))
        self.assertEqual(lex_influence(0), 0)
        self.assertEqual(lex_influence(1), 0)
        self.assertEqual(lex_influence(Dyadic(5, 4)), Fraction(5, 4))
        with self.assertRaises(PreconditionError):
            lex_influence(Dyadic(3, 1))

    def test_recursion_matches_segments(self):
        for n in range(0, 7):
            table = lex_boundary_table(n)
            self.assertEqual(table.shape, ((1 << n) + 1,))
            for m in range((1 << n) + 1):
                segment = lex_segment(n, m)
                self.assertEqual(lex_influence(measure(segment)), total_influence(segment))
                self.assertEqual(lex_boundary(n, m), edge_boundary_size(segment))
                self.assertEqual(int(table[m]), edge_boundary_size(segment))

    def test_lex_boundary_example(self):
        self.assertEqual(lex_boundary(3, 3), 5)
        self.assertEqual(lex_boundary(4, 7), 10)

    def test_maximum_over_a_grid(self):
        value, argmax = max_lex_influence(4)
        self.assertEqual((value, argmax), (Fraction(5, 4), Fraction(5, 16)))
        value, _ = max_lex_influence(20)
        self.assertLessEqual(value, 2)

    def test_table_is_symmetric(self):
        for n in range(1, 7):
            table = lex_boundary_table(n).tolist()
            self.assertEqual(table, table[::-1])

    def test_table_is_read_only(self):
        with self.assertRaises(ValueError):
            lex_boundary_table(3)[0] = 1


class DecompositionTests(SimpleTestCase):
    def test_examples(self):
        for mu, j, r in [
            (Dyadic(3, 3), 2, Dyadic(1, 3)),
            (Dyadic(5, 4), 2, Dyadic(1, 4)),
            (Dyadic(1, 2), 3, Dyadic(1, 3)),
            (Dyadic(1, 1), 2, Dyadic(1, 2)),
        ]:
            split = decompose_measure(mu)
            self.assertEqual((split.j, split.r), (j, r))
            self.assertEqual(split.mu, mu)

    def test_constraints_hold_on_a_grid(self):
        for num in range(1, 129):
            mu = Dyadic(num, 8)
            split = decompose_measure(mu)
            self.assertTrue(split.power < mu <= 2 * split.power)
            self.assertTrue(0 < split.r <= split.power)

    def test_upper_half(self):
        split = decompose_measure(Dyadic(3, 2), allow_upper=True)
        self.assertEqual((split.j, split.r), (1, Dyadic(1, 2)))
        with self.assertRaises(PreconditionError):
            decompose_measure(Dyadic(3, 2))
        with self.assertRaises(PreconditionError):
            decompose_measure(0)

    def test_slice_profile_examples(self):
        mu = Dyadic(5, 4)
        self.assertEqual(lex_slice_profile(mu, 1), 0)
        self.assertEqual(lex_slice_profile(mu, 2), Fraction(1, 8))
        self.assertEqual(lex_slice_profile(mu, 4, n=5), Fraction(1, 4))
        self.assertGreaterEqual(lex_slice_profile(mu, 4, n=5), Fraction(5, 32))

    def test_slice_profile_matches_slices(self):
        for n in range(1, 7):
            for m in range(1, (1 << (n - 1)) + 1):
                mu = Dyadic(m, n)
                segment = lex_segment(n, m)
                j = decompose_measure(mu).j
                for i in range(1, n + 1):
                    expected = measure(slice_family(segment, {i}, ()))
                    profile = lex_slice_profile(mu, i, n)
                    self.assertEqual(profile, expected)
                    if i < j:
                        self.assertEqual(profile, 0)
                    elif i == j:
                        self.assertEqual(profile, 2 * decompose_measure(mu).r)
                    else:
                        self.assertGreaterEqual(profile, mu.halve())


class StabilityGapTests(SimpleTestCase):
    def test_segments_have_no_gap(self):
        for m in range(17):
            self.assertEqual(stability_gap(lex_segment(4, m)), 0)
            self.assertEqual(boundary_excess(lex_segment(4, m)), 0)

    def test_remark_family(self):
        family = family_from_sets([{1, 2, 3}, {1, 2, 4}, {1, 2, 3, 4}, {3, 4}, {1, 3, 4}, {2, 3, 4}], 4)
        self.assertEqual(stability_gap(family), Fraction(1, 4))

    def test_two_extra_edges(self):
        family = family_from_sets([{1, 2}, {1, 2, 3}, {1, 2, 4}, {1, 2, 3, 4}, {3, 4}, {1, 3, 4}, {2, 3, 4}], 4)
        self.assertEqual(boundary_excess(family), 2)
        self.assertEqual(stability_gap(family).double(3), 2)
