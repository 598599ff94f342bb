from itertools import product

from django.test import SimpleTestCase

from cube.batch import all_masks
from cube.exceptions import PreconditionError
from cube.family import (
    SetFamily,
    coordinate_boundary,
    dictatorship,
    edge_boundary_size,
    family_from_sets,
    is_increasing,
    pivotal_family,
)
from shifting.operators import (
    is_shift_stable,
    lower_shifts_stable,
    shift,
    shift_decreases_influence_hypothesis,
    shift_elementwise,
    shift_masks,
)
from shifting.pipelines import (
    cascade_to_dictatorship,
    is_n_stable,
    monotonize_all,
    n_stabilize,
    pivotal_exchange,
)


def disjoint_pairs(n):
    for roles in product(range(3), repeat=n):
        yield (
            frozenset(i + 1 for i, role in enumerate(roles) if role == 1),
            frozenset(i + 1 for i, role in enumerate(roles) if role == 2),
        )


class ShiftTests(SimpleTestCase):
    def test_single_move(self):
        self.assertEqual(shift(family_from_sets([{2}], 2), {2}, {1}), family_from_sets([{1}], 2))

    def test_blocked_move(self):
        family = family_from_sets([{2}, {1}], 2)
        self.assertEqual(shift(family, {2}, {1}), family)
        self.assertTrue(is_shift_stable(family, {2}, {1}))

    def test_matches_the_definition(self):
        masks = all_masks(3)
        for source, target in disjoint_pairs(3):
            batch = shift_masks(masks, 3, source, target)
            for mask in range(256):
                family = SetFamily(3, mask)
                shifted = shift(family, source, target)
                self.assertEqual(shifted, shift_elementwise(family, source, target))
                self.assertEqual(int(batch[mask]), shifted.mask)
                self.assertEqual(shifted.size, family.size)

    def test_overlapping_sets_are_refused(self):
        with self.assertRaises(PreconditionError):
            shift(dictatorship(3, 1), {1, 2}, {2})

    def test_unstable_shift_raises_the_boundary(self):
        family = family_from_sets([{1}, {1, 2}], 3)
        shifted = shift(family, {1, 2}, {3})
        self.assertEqual(shifted, family_from_sets([{1}, {3}], 3))
        self.assertEqual((edge_boundary_size(family), edge_boundary_size(shifted)), (4, 6))
        self.assertFalse(lower_shifts_stable(family, {1, 2}, {3}))
        self.assertFalse(shift_decreases_influence_hypothesis(family, {1, 2}, {3}))

    def test_shifts_under_the_hypothesis_do_not_raise_the_boundary(self):
        for source, target in disjoint_pairs(3):
            for mask in range(256):
                family = SetFamily(3, mask)
                if shift_decreases_influence_hypothesis(family, source, target):
                    self.assertLessEqual(edge_boundary_size(shift(family, source, target)), edge_boundary_size(family))

    def test_lower_shifts_of_the_empty_source(self):
        self.assertTrue(lower_shifts_stable(family_from_sets([{1}], 3), (), {2}))


class MonotonizationTests(SimpleTestCase):
    def test_pushes_everything_up(self):
        self.assertEqual(monotonize_all(family_from_sets([()], 3)), family_from_sets([{1, 2, 3}], 3))
        for mask in range(256):
            family = SetFamily(3, mask)
            result = monotonize_all(family)
            self.assertTrue(is_increasing(result))
            if is_increasing(family):
                self.assertEqual(result, family)

    def test_no_direction_gains_boundary(self):
        for mask in range(256):
            family = SetFamily(3, mask)
            for i in range(1, 4):
                pushed = shift(family, (), {i})
                for k in range(1, 4):
                    self.assertLessEqual(coordinate_boundary(pushed, k), coordinate_boundary(family, k))


class StabilizationTests(SimpleTestCase):
    def test_stable_family_is_unchanged(self):
        self.assertTrue(is_n_stable(dictatorship(3, 1)))
        self.assertEqual(n_stabilize(dictatorship(3, 1)), dictatorship(3, 1))

    def test_result_is_n_stable(self):
        self.assertTrue(is_n_stable(n_stabilize(dictatorship(3, 3))))
        for mask in range(1 << 16):
            family = SetFamily(4, mask)
            if is_increasing(family):
                stabilized = n_stabilize(family)
                self.assertTrue(is_n_stable(stabilized))
                self.assertLessEqual(edge_boundary_size(stabilized), edge_boundary_size(family))

    def test_needs_an_increasing_family(self):
        with self.assertRaises(PreconditionError):
            n_stabilize(family_from_sets([()], 3))


class CascadeTests(SimpleTestCase):
    def test_second_dictatorship_becomes_the_first(self):
        stages = cascade_to_dictatorship(dictatorship(3, 2))
        self.assertEqual(len(stages), 2)
        self.assertEqual(stages[0], dictatorship(3, 1))
        self.assertEqual(stages[-1], dictatorship(3, 1))

    def test_family_inside_the_first_dictatorship_stays(self):
        family = family_from_sets([{1, 2}, {1, 2, 3}, {1, 3}], 3)
        self.assertEqual(cascade_to_dictatorship(family), [family, family])

    def test_preconditions(self):
        with self.assertRaises(PreconditionError):
            cascade_to_dictatorship(family_from_sets([{1}], 3))
        with self.assertRaises(PreconditionError):
            cascade_to_dictatorship(family_from_sets([{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}], 3))


class PivotalExchangeTests(SimpleTestCase):
    def setUp(self):
        # the sets with at least two of three elements
        self.family = family_from_sets([{1, 2}, {1, 3}, {2, 3}, {1, 2, 3}], 3)

    def test_exchange(self):
        self.assertTrue(is_n_stable(self.family))
        self.assertEqual(pivotal_family(self.family, 3), family_from_sets([{1, 3}, {2, 3}], 3))
        first, second = pivotal_exchange(self.family, {1, 3}, {2, 3})
        self.assertEqual(first, dictatorship(3, 2))
        self.assertEqual(second, dictatorship(3, 1))
        self.assertEqual(edge_boundary_size(self.family), 6)
        self.assertEqual(edge_boundary_size(first), 4)
        self.assertEqual(pivotal_family(first, 3).size, 0)

    def test_refusals(self):
        with self.assertRaises(PreconditionError):
            pivotal_exchange(self.family, {1, 3}, {1, 3})
        with self.assertRaises(PreconditionError):
            pivotal_exchange(self.family, {1, 2}, {2, 3})
        with self.assertRaises(PreconditionError):
            pivotal_exchange(family_from_sets([{3}, {1, 2}], 3), {3}, {1, 2})
