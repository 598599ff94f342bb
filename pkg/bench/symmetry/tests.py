from math import comb

import numpy as np
from django.test import SimpleTestCase

from cube.batch import all_masks, sizes
from cube.exceptions import DimensionError, FamilyFormatError, PreconditionError
from cube.family import SetFamily, dictatorship, family_from_sets, subcube, symmetric_difference_size
from lex.segments import lex_segment
from symmetry.canonical import (
    are_weakly_isomorphic,
    burnside_count,
    canonical_form,
    canonical_masks,
    image_masks,
    orbit,
    orbit_sizes,
)
from symmetry.distance import closest_lex_image, dist_to_lex_class, dist_to_lex_class_batch
from symmetry.group import CubeAutomorphism, group_elements, group_tables


def remark_family():
    return family_from_sets([{1, 2, 3}, {1, 2, 4}, {1, 2, 3, 4}, {3, 4}, {1, 3, 4}, {2, 3, 4}], 4)


def tightness_family():
    return family_from_sets([{1, 2}, {1, 2, 3}, {1, 2, 4}, {1, 2, 3, 4}, {3, 4}, {1, 3, 4}, {2, 3, 4}], 4)


class AutomorphismTests(SimpleTestCase):
    def test_actions(self):
        family = remark_family()
        self.assertEqual(CubeAutomorphism.identity(4).apply(family), family)
        flip = CubeAutomorphism((1, 2, 3), frozenset({1}))
        self.assertEqual(flip.apply(dictatorship(3, 1)), subcube(3, {1}, ()))
        swap = CubeAutomorphism((2, 1, 3))
        self.assertEqual(swap.apply(lex_segment(3, 3)), family_from_sets([{1, 2, 3}, {1, 2}, {2, 3}], 3))
        self.assertEqual(swap({1, 3}), frozenset({2, 3}))

    def test_group_order(self):
        for n, order in [(1, 2), (2, 8), (3, 48), (4, 384)]:
            self.assertEqual(group_tables(n).order, order)
        with self.assertRaises(DimensionError):
            group_tables(7)

    def test_element_numbering(self):
        self.assertEqual(CubeAutomorphism.from_element(3, 0), CubeAutomorphism.identity(3))
        for g, automorphism in enumerate(group_elements(3)):
            self.assertEqual(automorphism.element_index, g)

    def test_tables_agree_with_the_definition(self):
        family = remark_family()
        images = image_masks([family.mask], 4)[0]
        for g, automorphism in enumerate(group_elements(4)):
            self.assertEqual(int(images[g]), automorphism.apply(family).mask)

    def test_composition_and_inverse(self):
        family = tightness_family()
        elements = list(group_elements(3))
        small = family_from_sets([{1}, {1, 2}, {3}], 3)
        for first in elements[::5]:
            self.assertEqual(first.compose(first.inverse()), CubeAutomorphism.identity(3))
            for second in elements[::7]:
                self.assertEqual((first * second).apply(small), first.apply(second.apply(small)))
        a = CubeAutomorphism((3, 1, 4, 2), frozenset({2, 3}))
        self.assertEqual(a.inverse().apply(a.apply(family)), family)

    def test_dict_form(self):
        a = CubeAutomorphism((2, 1, 3), frozenset({1}))
        self.assertEqual(a.to_dict(), {"pi": [2, 1, 3], "D": "100"})
        self.assertEqual(CubeAutomorphism.from_dict(a.to_dict()), a)
        with self.assertRaises(FamilyFormatError):
            CubeAutomorphism.from_dict({"pi": [1, 2]})
        with self.assertRaises(PreconditionError):
            CubeAutomorphism((1, 1, 2))


class CanonicalFormTests(SimpleTestCase):
    def test_weak_isomorphism(self):
        family = remark_family()
        same, witness = are_weakly_isomorphic(family, family)
        self.assertTrue(same)
        self.assertEqual(witness, CubeAutomorphism.identity(4))

        target = subcube(3, {2}, ())
        same, witness = are_weakly_isomorphic(dictatorship(3, 1), target)
        self.assertTrue(same)
        self.assertEqual(witness.apply(dictatorship(3, 1)), target)

        self.assertEqual(are_weakly_isomorphic(lex_segment(4, 6), family), (False, None))

    def test_canonical_form_is_an_invariant(self):
        family = tightness_family()
        canonical = canonical_form(family)
        for member in orbit(family):
            self.assertEqual(canonical_form(member), canonical)
        self.assertEqual(canonical, min(orbit(family), key=lambda f: f.mask))

    def test_orbit_sizes(self):
        family = tightness_family()
        self.assertEqual(int(orbit_sizes([family.mask], 4)[0]), len(orbit(family)))
        self.assertEqual(len(orbit(dictatorship(4, 1))), 8)

    def test_burnside_matches_enumeration(self):
        self.assertEqual(burnside_count(2, 1), 1)
        for n in range(1, 4):
            masks = all_masks(n)
            canonical = canonical_masks(masks, n)
            classes = np.unique(canonical)
            weights = orbit_sizes(classes, n)
            class_sizes = sizes(classes)
            for m in range((1 << n) + 1):
                self.assertEqual(int((class_sizes == m).sum()), burnside_count(n, m))
                self.assertEqual(int(weights[class_sizes == m].sum()), comb(1 << n, m))
        self.assertEqual(sum(burnside_count(3, m) for m in range(9)), 22)
        self.assertEqual(burnside_count(3, 4), 6)


class DistanceTests(SimpleTestCase):
    def test_examples(self):
        for m in range(17):
            self.assertEqual(dist_to_lex_class(lex_segment(4, m)), 0)
        self.assertEqual(dist_to_lex_class(tightness_family()), 4)
        self.assertEqual(dist_to_lex_class(dictatorship(4, 3)), 0)

    def test_batch_matches_scalar(self):
        masks = all_masks(3)
        chosen = masks[sizes(masks) == 3]
        batch = dist_to_lex_class_batch(chosen, 3, 3)
        for mask, dist in zip(chosen.tolist(), batch.tolist()):
            self.assertEqual(dist, dist_to_lex_class(SetFamily(3, mask)))

    def test_closest_image(self):
        family = tightness_family()
        dist, automorphism, image = closest_lex_image(family)
        self.assertEqual(dist, 4)
        self.assertEqual(automorphism.apply(lex_segment(4, 7)), image)
        self.assertEqual(symmetric_difference_size(image, family), dist)
