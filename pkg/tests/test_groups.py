"""
Tests for finite group construction and structure.
"""

import unittest

from sk1_lab.algebra.catalog import CATALOG, catalog_groups, catalog_names
from sk1_lab.algebra.groups import (
    abelianization, build_group, central_translation_is_free, commutator_subgroup, is_commutator, named_group,
    normal_abelian_cyclic_quotient_witness, p_parts, p_regular_classes, p_regular_elements, special_set_S,
)
from sk1_lab.errors import InputError, SizeBoundError


def _central_of_order(group, p):
    return next(z for z in group.center.members if group.element_order(z) == p)


class TestNamedGroups(unittest.TestCase):
    """Test cases for named group construction."""

    def test_orders(self):
        """Test that named families have the expected orders."""
        expected = {
            "C6": 6, "D8": 8, "Q8": 8, "S3": 6, "S4": 24, "A4": 12, "Heis3": 27,
            "E2^3": 8, "C2xD8": 16, "SD(4,4,3)": 16, "Q16": 16,
        }
        for name, order in expected.items():
            self.assertEqual(named_group(name).order, order, name)

    def test_exponent(self):
        """Test the exponent as the lcm of element orders."""
        expected = {"C1": 1, "D8": 4, "Q8": 4, "S3": 6, "A4": 6, "Heis3": 3, "C2xS3": 6}
        for name, exponent in expected.items():
            self.assertEqual(named_group(name).exponent, exponent, name)

    def test_identity_is_element_zero(self):
        """Test that element 0 is the identity."""
        group = named_group("S3")
        for g in group.elements:
            self.assertEqual(group.mul(0, g), g)
            self.assertEqual(group.mul(g, 0), g)

    def test_conjugacy_class_counts(self):
        """Test class counts of small nonabelian groups."""
        counts = {"D8": 5, "Q8": 5, "S3": 3, "A4": 4, "S4": 5, "C6": 6}
        for name, count in counts.items():
            group = named_group(name)
            self.assertEqual(group.conjugacy.count, count, name)
            self.assertEqual(sum(group.conjugacy.class_sizes), group.order)

    def test_class_representatives_are_minimal(self):
        """Test that every class is represented by its smallest member."""
        data = named_group("D8").conjugacy
        for rep, members in zip(data.reps, data.members):
            self.assertEqual(rep, min(members))

    def test_centers(self):
        """Test center orders."""
        self.assertEqual(named_group("D8").center.order, 2)
        self.assertEqual(named_group("Q8").center.order, 2)
        self.assertEqual(named_group("S3").center.order, 1)
        self.assertEqual(named_group("Heis3").center.order, 3)

    def test_unknown_name(self):
        """Test that an unknown name is rejected."""
        with self.assertRaises(InputError):
            named_group("Foo7")

    def test_size_bound(self):
        """Test that groups above the table limit are refused."""
        with self.assertRaises(SizeBoundError):
            named_group("C65")


class TestDescriptors(unittest.TestCase):
    """Test cases for group descriptors."""

    def test_table_descriptor(self):
        """Test a multiplication table whose identity is not listed first."""
        group = build_group({"kind": "table", "name": "T", "table": [[1, 0], [0, 1]], "names": ["x", "e"]})
        self.assertEqual(group.order, 2)
        self.assertEqual(group.names[0], "e")
        self.assertEqual(group.mul(1, 1), 0)

    def test_table_not_associative(self):
        """Test that a non-associative table is rejected."""
        table = [
            [0, 1, 2],
            [1, 0, 0],
            [2, 0, 0],
        ]
        with self.assertRaises(InputError):
            build_group({"kind": "table", "table": table})

    def test_table_without_inverses(self):
        """Test that a table without inverses is rejected."""
        with self.assertRaises(InputError):
            build_group({"kind": "table", "table": [[0, 1], [1, 1]]})

    def test_permutation_descriptor(self):
        """Test permutation generators given as 1-based cycles."""
        group = build_group({"kind": "perm", "name": "S3p", "generators": [[[1, 2, 3]], [[1, 2]]]})
        self.assertEqual(group.order, 6)
        self.assertFalse(group.is_abelian)

    def test_semidirect_descriptor(self):
        """Test the semidirect family descriptor."""
        group = build_group({"kind": "named", "family": "semidirect", "n": 7, "m": 3, "r": 2})
        self.assertEqual(group.order, 21)
        self.assertFalse(group.is_abelian)

    def test_bad_descriptor(self):
        """Test that malformed descriptors raise InputError."""
        with self.assertRaises(InputError):
            build_group({"kind": "nonsense"})
        with self.assertRaises(InputError):
            build_group(42)
        with self.assertRaises(InputError):
            build_group({"kind": "perm"})

    def test_fingerprint_is_stable(self):
        """Test that rebuilding a group gives the same fingerprint."""
        self.assertEqual(named_group("Q8").fingerprint, named_group("Q8").fingerprint)
        self.assertNotEqual(named_group("Q8").fingerprint, named_group("D8").fingerprint)


class TestStructure(unittest.TestCase):
    """Test cases for derived group structure."""

    def test_abelianization(self):
        """Test G/[G,G] against known quotients."""
        expected = {"D8": (2, 2), "Q8": (2, 2), "S3": (2,), "A4": (3,), "C6": (6,), "S4": (2,)}
        for name, torsion in expected.items():
            presentation, _ = abelianization(named_group(name))
            self.assertEqual(presentation.torsion, torsion, name)

    def test_abelianization_projection_is_a_homomorphism(self):
        """Test that the projection respects products."""
        group = named_group("D8")
        presentation, projection = abelianization(group)
        for g in group.elements:
            for h in group.elements:
                summed = tuple((a + b) % d for a, b, d in
                               zip(projection(g), projection(h), presentation.torsion))
                self.assertEqual(projection(group.mul(g, h)), summed)

    def test_commutator_subgroup(self):
        """Test derived subgroup orders."""
        self.assertEqual(commutator_subgroup(named_group("S4")).order, 12)
        self.assertEqual(commutator_subgroup(named_group("D8")).order, 2)
        self.assertEqual(commutator_subgroup(named_group("C6")).order, 1)

    def test_p_parts(self):
        """Test the decomposition g = g_r g_p."""
        group = named_group("C6")
        g = next(x for x in group.elements if group.element_order(x) == 6)
        g_r, g_p = p_parts(group, g, 2)
        self.assertEqual(group.element_order(g_r), 3)
        self.assertEqual(group.element_order(g_p), 2)
        self.assertEqual(group.mul(g_r, g_p), g)
        self.assertEqual(group.mul(g_r, g_p), group.mul(g_p, g_r))

    def test_p_regular(self):
        """Test p-regular classes and elements of S3."""
        group = named_group("S3")
        self.assertEqual(len(p_regular_classes(group, 2)), 2)
        self.assertEqual(len(p_regular_elements(group, 2)), 3)
        self.assertEqual(len(p_regular_classes(group, 3)), 2)
        self.assertEqual(len(p_regular_elements(group, 3)), 4)

    def test_special_set_of_q8(self):
        """Test that -1 times each element of order 4 stays in its class."""
        group = named_group("Q8")
        c = _central_of_order(group, 2)
        members, classes = special_set_S(group, c, 2)
        self.assertEqual(len(members), 6)
        self.assertEqual(len(classes), 3)
        self.assertTrue(is_commutator(group, c))

    def test_special_set_requires_central_element(self):
        """Test that a non-central element is rejected."""
        group = named_group("S3")
        transposition = next(x for x in group.elements if group.element_order(x) == 2)
        with self.assertRaises(InputError):
            special_set_S(group, transposition, 2)

    def test_translation_by_non_commutator(self):
        """Test that a central non-commutator moves every class."""
        group = named_group("C2xS3")
        c = _central_of_order(group, 2)
        self.assertFalse(is_commutator(group, c))
        self.assertTrue(central_translation_is_free(group, c))
        members, _ = special_set_S(group, c, 2)
        self.assertEqual(members, ())

    def test_normal_abelian_witness(self):
        """Test witnesses of abelian normal subgroups with cyclic quotient."""
        self.assertEqual(normal_abelian_cyclic_quotient_witness(named_group("Q8")).order, 4)
        self.assertEqual(normal_abelian_cyclic_quotient_witness(named_group("D16")).order, 8)
        self.assertEqual(normal_abelian_cyclic_quotient_witness(named_group("C4xC2")).order, 8)
        self.assertEqual(normal_abelian_cyclic_quotient_witness(named_group("A4")).order, 4)
        self.assertIsNone(normal_abelian_cyclic_quotient_witness(named_group("S4")))


class TestCatalog(unittest.TestCase):
    """Test cases for the named-group catalog."""

    def test_catalog_orders(self):
        """Test that every catalog group up to order 16 has its listed order."""
        names = catalog_names(1, 16)
        groups = list(catalog_groups(1, 16))
        self.assertEqual(len(groups), len(names))

    def test_p_group_filter(self):
        """Test the p-group filter."""
        names = catalog_names(1, 16, p_groups=2)
        self.assertIn("Q8", names)
        self.assertNotIn("S3", names)
        self.assertEqual(names[0], "C1")

    def test_family_filter(self):
        """Test the family prefix filter."""
        self.assertEqual(catalog_names(8, 8, family="Q"), ["Q8"])

    def test_invalid_range(self):
        """Test that ranges outside the catalog are rejected."""
        with self.assertRaises(InputError):
            catalog_names(5, 4)
        with self.assertRaises(InputError):
            catalog_names(1, max(CATALOG) + 1)


if __name__ == '__main__':
    unittest.main()
