"""
Tests for bar-complex homology, the commuting-pair span and the Shapiro check.
"""

import unittest

from sk1_lab.algebra.abelian import AbelianGroupPresentation
from sk1_lab.algebra.groups import abelianization, named_group
from sk1_lab.algebra.homology import (
    BarChain, CoefficientModule, bar_boundary, class_of_cycle, compose_is_zero, h2_ab, h2_bar, homology,
    shapiro_h1,
)
from sk1_lab.errors import InputError, SizeBoundError


def _orders(*orders):
    return AbelianGroupPresentation.from_orders(orders)


class TestBarComplex(unittest.TestCase):
    """Test cases for the normalized bar complex."""

    def test_boundary_squares_to_zero(self):
        """Test d1 d2 = 0 and d2 d3 = 0 with trivial coefficients."""
        group = named_group("S3")
        d1, d2, d3 = (bar_boundary(group, k) for k in (1, 2, 3))
        self.assertTrue(compose_is_zero(d1, d2))
        self.assertTrue(compose_is_zero(d2, d3))

    def test_boundary_squares_to_zero_with_conjugation(self):
        """Test d d = 0 for the conjugation module."""
        group = named_group("D8")
        module = CoefficientModule.conjugation(group.elements)
        d1, d2 = bar_boundary(group, 1, module), bar_boundary(group, 2, module)
        self.assertTrue(compose_is_zero(d1, d2))

    def test_module_validation(self):
        """Test that inconsistent coefficient modules are rejected."""
        with self.assertRaises(InputError):
            CoefficientModule(kind="adjoint")
        with self.assertRaises(InputError):
            CoefficientModule(prime=2)
        with self.assertRaises(InputError):
            homology(named_group("C2"), 3)

    def test_degree_two_size_bound(self):
        """Test that degree-2 homology respects the size bound."""
        with self.assertRaises(SizeBoundError):
            homology(named_group("D16"), 2, max_order=8)


class TestHomologyGroups(unittest.TestCase):
    """Test cases for H1 and H2 with integer coefficients."""

    def test_h1_is_abelianization(self):
        """Test H1(G, Z) = G^ab."""
        for name in ("D8", "Q8", "S3", "C6", "A4"):
            group = named_group(name)
            self.assertEqual(homology(group, 1).group, abelianization(group)[0], name)

    def test_schur_multipliers(self):
        """Test H2(G, Z) for groups with known multipliers."""
        expected = {
            "C2": _orders(),
            "C2xC2": _orders(2),
            "C4xC2": _orders(2),
            "E2^3": _orders(2, 2, 2),
            "D8": _orders(2),
            "Q8": _orders(),
            "S3": _orders(),
            "A4": _orders(2),
            "C3xC3": _orders(3),
        }
        for name, value in expected.items():
            self.assertEqual(homology(named_group(name), 2).group, value, name)

    def test_abelian_h2_is_exterior_square(self):
        """Test H2 of abelian groups against the closed form."""
        for name in ("C4xC2", "C2xC2", "C6xC2"):
            group = named_group(name)
            self.assertEqual(homology(group, 2).group, abelianization(group)[0].exterior_square(), name)

    def test_truncated_coefficients(self):
        """Test H1(C4, Z/2) and H2(C2xC2, Z/2)."""
        self.assertEqual(homology(named_group("C4"), 1, CoefficientModule.trivial_mod(2, 1)).group, _orders(2))
        truncated = homology(named_group("C2xC2"), 2, CoefficientModule.trivial_mod(2, 1))
        self.assertEqual(truncated.group, _orders(2, 2, 2))
        self.assertFalse(truncated.coordinates_available)

    def test_class_of_cycle(self):
        """Test that a commuting pair gives the generator of H2(C2xC2)."""
        group = named_group("C2xC2")
        presentation = homology(group, 2)
        chain = BarChain(2).add((1, 2), 0, 1).add((2, 1), 0, -1)
        self.assertFalse(class_of_cycle(presentation, chain).is_zero())
        symmetric = BarChain(2).add((1, 1), 0, 1)
        with self.assertRaises(InputError):
            class_of_cycle(presentation, symmetric)

    def test_chain_degree_mismatch(self):
        """Test that a chain of the wrong degree is rejected."""
        presentation = homology(named_group("C2"), 1)
        with self.assertRaises(InputError):
            class_of_cycle(presentation, BarChain(2))


class TestCommutingPairs(unittest.TestCase):
    """Test cases for H2^ab and H2-bar."""

    def test_small_groups_have_trivial_quotient(self):
        """Test that commuting pairs span H2 for small groups."""
        for name in ("D8", "Q8", "A4", "C2xC2"):
            result = h2_ab(named_group(name))
            self.assertEqual(result.h2_ab, result.h2.group, name)
            self.assertTrue(result.h2_bar.is_trivial, name)

    def test_h2_bar_shortcuts(self):
        """Test that abelian groups and coprime primes short-circuit."""
        self.assertTrue(h2_bar(named_group("C4xC4")).is_trivial)
        self.assertTrue(h2_bar(named_group("D8"), p=3).is_trivial)
        self.assertTrue(h2_bar(named_group("S3"), p=2).is_trivial)

    def test_to_dict(self):
        """Test the JSON summary of the split."""
        document = h2_ab(named_group("D8")).to_dict()
        self.assertEqual(document["h2"]["torsion"], [2])
        self.assertEqual(document["h2_bar"]["torsion"], [])
        self.assertGreater(document["commuting_pairs"], 0)


class TestShapiro(unittest.TestCase):
    """Test cases for the degree-1 Shapiro decomposition."""

    def test_s3_at_two(self):
        """Test H1(S3, Z/8[G_r]) against the sum over p-regular classes."""
        decomposition = shapiro_h1(named_group("S3"), 2, 3)
        self.assertTrue(decomposition.is_isomorphism)
        self.assertEqual(decomposition.group, _orders(2))
        self.assertEqual(len(decomposition.components), 2)

    def test_q8_at_two(self):
        """Test that the only p-regular class of a p-group gives G^ab."""
        decomposition = shapiro_h1(named_group("Q8"), 2, 2)
        self.assertTrue(decomposition.is_isomorphism)
        self.assertEqual(decomposition.group, _orders(2, 2))
        document = decomposition.to_dict(named_group("Q8"))
        self.assertEqual(document["components"][0]["centralizer_order"], 8)


if __name__ == '__main__':
    unittest.main()
