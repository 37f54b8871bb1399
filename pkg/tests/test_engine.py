"""
Tests for the orbit formula, the direct covariants cross-check and the triviality certificates.
"""

import os
import unittest

from sk1_lab.algebra.catalog import catalog_groups
from sk1_lab.algebra.engine import (
    ASSUMED_HYPOTHESES, certify, covariants_direct, dual_path, effective_precision, psi_orbits,
    ring_comparison_sk1, sk1, theta_target_pgroup, triviality_certificates,
)
from sk1_lab.algebra.groups import named_group
from sk1_lab.algebra.rings import RingDescriptor
from sk1_lab.errors import InputError, SizeBoundError


def _zp(p, n=2):
    return RingDescriptor("Zp", p, n).build()


class TestPsiOrbits(unittest.TestCase):
    """Test cases for orbits of the p-th power map on p-regular classes."""

    def test_cyclic_group(self):
        """Test that squaring swaps the two generators of C3."""
        structure = psi_orbits(named_group("C3"), 2)
        self.assertEqual(sorted(orbit.size for orbit in structure.orbits), [1, 2])

    def test_symmetric_group(self):
        """Test the fixed classes of S3 at p = 2."""
        structure = psi_orbits(named_group("S3"), 2)
        self.assertEqual([orbit.size for orbit in structure.orbits], [1, 1])
        self.assertEqual([orbit.centralizer.order for orbit in structure.orbits], [6, 3])
        document = structure.to_dict()
        self.assertEqual(document["orbits"][0]["representative"], named_group("S3").names[0])

    def test_p_group_has_one_orbit(self):
        """Test that only the identity is p-regular in a p-group."""
        structure = psi_orbits(named_group("Q8"), 2)
        self.assertEqual(len(structure.orbits), 1)
        self.assertEqual(structure.orbits[0].centralizer.order, 8)


class TestSK1(unittest.TestCase):
    """Test cases for SK1 by the orbit formula."""

    def test_small_groups_are_trivial(self):
        """Test SK1 of group rings of small groups."""
        for name, p in (("Q8", 2), ("D8", 2), ("S3", 2), ("S3", 3), ("A4", 2)):
            report = sk1(_zp(p), named_group(name))
            self.assertTrue(report.total.is_trivial, (name, p))

    def test_effective_precision(self):
        """Test that the working precision covers v_p(|G|)."""
        report = sk1(_zp(2, 2), named_group("Q8"))
        self.assertEqual(report.precision_used, 3)
        self.assertEqual(effective_precision(_zp(2, 5), named_group("Q8")), 5)

    def test_report_fields(self):
        """Test the per-orbit records and the assumed hypotheses."""
        document = sk1(_zp(2), named_group("S3")).to_dict()
        self.assertEqual(len(document["orbits"]), 2)
        self.assertEqual(document["assumed_hypotheses"], list(ASSUMED_HYPOTHESES))
        self.assertEqual(document["total"]["torsion"], [])

    def test_laurent_window_adds_hypothesis(self):
        """Test that the Laurent window is recorded as an assumption."""
        model = RingDescriptor("Laurent", 2, 2, 1, 2).build()
        report = sk1(model, named_group("Q8"))
        self.assertTrue(report.total.is_trivial)
        self.assertEqual(len(report.assumed_hypotheses), len(ASSUMED_HYPOTHESES) + 1)

    def test_size_bound_names_the_orbit(self):
        """Test that an oversized centralizer is reported with its orbit."""
        with self.assertRaises(SizeBoundError) as context:
            sk1(_zp(3), named_group("S4"), max_order=8)
        self.assertIn("Orbit of", str(context.exception))

    def test_theta_target(self):
        """Test H2-bar (x) coinvariants for p-groups only."""
        self.assertTrue(theta_target_pgroup(_zp(2), named_group("Q8")).is_trivial)
        with self.assertRaises(InputError):
            theta_target_pgroup(_zp(2), named_group("S3"))


class TestCrossChecks(unittest.TestCase):
    """Test cases for the dual path and the ring comparisons."""

    def test_dual_path_agrees(self):
        """Test the orbit formula against the direct covariants."""
        for name in ("D8", "Q8", "S3"):
            result = dual_path(_zp(2), named_group(name))
            self.assertTrue(result["agree"], name)
            self.assertNotIn("discrepancy", result)

    def test_abelian_covariants(self):
        """Test the abelian shortcut of the direct computation."""
        self.assertTrue(covariants_direct(_zp(2), named_group("C4xC2")).is_trivial)

    def test_ring_comparison(self):
        """Test that the coinvariant verdict lifts to SK1."""
        result = ring_comparison_sk1("Wt-Laurent", 2, 2, named_group("Q8"))
        self.assertEqual(result["expected_verdict"], "injective-torsion-free-cokernel")
        self.assertEqual(result["comparison"]["verdict"], "injective-torsion-free-cokernel")
        self.assertEqual(result["sk1_source"]["torsion"], [])


class TestCertificates(unittest.TestCase):
    """Test cases for triviality certificates."""

    def test_quaternion_group(self):
        """Test the normal abelian subgroup certificate for Q8."""
        result = certify(_zp(2), named_group("Q8"))
        self.assertEqual(result["status"], "forced-trivial")
        kinds = [c["kind"] for c in result["certificates"]]
        self.assertEqual(kinds, ["normal-abelian-cyclic-quotient"])
        self.assertEqual(result["certificates"][0]["index"], 2)

    def test_no_certificate(self):
        """Test S3 at p = 2, where no certificate applies."""
        result = certify(_zp(2), named_group("S3"))
        self.assertEqual(result["status"], "no forced triviality")
        self.assertEqual(result["sk1"]["torsion"], [])

    def test_coprime_order(self):
        """Test the coprime certificate."""
        kinds = [c.kind for c in triviality_certificates(named_group("S3"), 5)]
        self.assertEqual(kinds, ["coprime-order"])

    def test_abelian(self):
        """Test that abelian groups carry both abelian certificates."""
        kinds = [c.kind for c in triviality_certificates(named_group("C6"), 2)]
        self.assertIn("abelian", kinds)
        self.assertIn("abelian-centralizers", kinds)


@unittest.skipUnless(os.environ.get("SK1_LAB_SLOW_TESTS") == "1", "set SK1_LAB_SLOW_TESTS=1 to run the catalog sweep")
class TestCatalogSweep(unittest.TestCase):
    """Slow sweep of the catalog up to order 16."""

    def test_orbit_formula_against_covariants(self):
        """Test that every catalog group has trivial SK1 and the two paths agree."""
        for p in (2, 3):
            for group in catalog_groups(1, 16):
                result = dual_path(_zp(p), group)
                self.assertTrue(result["agree"], (group.name, p))
                self.assertEqual(result["orbit_formula"]["torsion"], [], (group.name, p))


if __name__ == '__main__':
    unittest.main()
