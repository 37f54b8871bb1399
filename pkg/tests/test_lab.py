"""
Tests for the verification suites and the membership helpers.
"""

import os
import random
import unittest

from sk1_lab.algebra.factorization import commutator_refine, group_commutator, multiply_back
from sk1_lab.algebra.group_ring import ClassSum, GroupRing, inverse, is_unit, phi_log
from sk1_lab.algebra.groups import named_group, special_set_S
from sk1_lab.algebra.lab import (
    SUITES, adams_transport, central_elements_of_order, central_translation_check, cyclic_congruence_check,
    h1_regular, j_membership, omega_G, psi_on_h1, run_suite, sk1_generator, xi_G, xi_omega_sides,
)
from sk1_lab.algebra.rings import RingDescriptor, RingElement
from sk1_lab.errors import InputError


def _ring(name, p=2, n=3):
    return GroupRing(named_group(name), RingDescriptor("Zp", p, n).build())


class TestHelpers(unittest.TestCase):
    """Test cases for the standalone checks."""

    def test_cyclic_congruence(self):
        """Test the congruence in Z[C_p] for small primes."""
        for p in (2, 3, 5):
            self.assertTrue(cyclic_congruence_check(p, 6), p)

    def test_adams_transport_composes(self):
        """Test transport(h) o transport(k) = transport(hk)."""
        ring = _ring("D8")
        rng = random.Random(11)
        count = ring.group.conjugacy.count
        s = ClassSum(ring, tuple(ring.model.random_element(rng) for _ in range(count)))
        for h in range(1, 5):
            for k in range(1, 5):
                self.assertEqual(adams_transport(h, adams_transport(k, s)), adams_transport(h * k, s))
        self.assertEqual(adams_transport(1, s), s)

    def test_central_translation(self):
        """Test the central translation check on a commutator and a non-commutator."""
        q8 = named_group("Q8")
        c = central_elements_of_order(q8, 2)[0]
        self.assertIsNone(central_translation_check(q8, c, 2))
        product = named_group("C2xS3")
        results = [central_translation_check(product, z, 2) for z in central_elements_of_order(product, 2)]
        self.assertEqual(results, [True])

    def test_membership_of_identity(self):
        """Test that the identity is trivially in the kernel."""
        ring = _ring("Q8")
        c = central_elements_of_order(ring.group, 2)[0]
        result = j_membership(ring.one(), c)
        self.assertTrue(result.member)
        self.assertEqual(result.reason, "identity")

    def test_membership_rejects_phi_log(self):
        """Test that u = 2 - c, whose log has nonzero class sums, is not in the kernel."""
        ring = _ring("Q8")
        c = ring.group.index_of("x^2")
        result = j_membership(ring.one() * 2 - ring.basis(c), c)
        self.assertFalse(result.member)
        self.assertEqual(result.reason, "phi-log")

    def test_membership_requires_ideal(self):
        """Test that u - 1 outside (1 - c)R[G] mod p is refused."""
        ring = _ring("Q8")
        c, i = ring.group.index_of("x^2"), ring.group.index_of("x")
        with self.assertRaises(InputError):
            j_membership(ring.one() * 2 - ring.basis(i), c)

    def test_sk1_generator(self):
        """Test exp((1-c)(i-j)) in Z_2[Q8]: a unit whose log has vanishing class sums."""
        ring = _ring("Q8", 2, 4)
        group = ring.group
        c, i, j = group.index_of("x^2"), group.index_of("x"), group.index_of("y")
        members, _ = special_set_S(group, c, 2)
        self.assertIn(i, members)
        self.assertIn(j, members)
        one = RingElement(ring.model, ring.model.one())
        u = sk1_generator(one, c, i, j, ring)
        self.assertTrue(is_unit(u))
        self.assertGreaterEqual(phi_log(u).valuation(), 4)
        with self.assertRaises(InputError):
            sk1_generator(one, c, group.identity, j, ring)

    def test_membership_of_generator(self):
        """Test that exp((1-c)(i-j)) is found in the span of S_G."""
        ring = _ring("Q8", 2, 4)
        group = ring.group
        c, i, j = group.index_of("x^2"), group.index_of("x"), group.index_of("y")
        u = sk1_generator(RingElement(ring.model, ring.model.one()), c, i, j, ring)
        result = j_membership(u, c)
        self.assertTrue(result.member, result.to_dict())
        self.assertEqual(result.reason, "span")

    def test_xi_omega_sides(self):
        """Test (1 - Psi) xi(u) = omega(L(u)/p) for units of Z_2[D8]."""
        ring = _ring("D8", 2, 4)
        rng = random.Random(12)
        for _ in range(3):
            left, right = xi_omega_sides(ring.random_unit(rng))
            self.assertEqual(left, right)
        with self.assertRaises(InputError):
            xi_omega_sides(_ring("S3", 2, 4).one())

    def test_xi_is_a_homomorphism(self):
        """Test xi(uv) = xi(u) + xi(v) and that commutators vanish, in Z_2[S3]."""
        ring = _ring("S3", 2, 3)
        presentation = h1_regular(ring)
        rng = random.Random(13)
        for _ in range(3):
            u = ring.random_unit(rng, radical=False)
            v = ring.random_unit(rng, radical=False)
            self.assertEqual(xi_G(u * v, presentation), xi_G(u, presentation) + xi_G(v, presentation))
            self.assertTrue(xi_G(u * v * inverse(u) * inverse(v), presentation).is_zero())

    def test_omega_is_additive(self):
        """Test omega(0) = 0 and omega(s + t) = omega(s) + omega(t)."""
        ring = _ring("D8")
        presentation = h1_regular(ring)
        self.assertTrue(omega_G(ClassSum.zero(ring), presentation).is_zero())
        rng = random.Random(14)
        count = ring.group.conjugacy.count
        s = ClassSum(ring, tuple(ring.model.random_element(rng) for _ in range(count)))
        t = ClassSum(ring, tuple(ring.model.random_element(rng) for _ in range(count)))
        self.assertEqual(omega_G(s + t, presentation), omega_G(s, presentation) + omega_G(t, presentation))

    def test_psi_is_identity_for_p_groups(self):
        """Test that Psi acts trivially on H1(D8, Z/4) when G_r is trivial."""
        ring = _ring("D8", 2, 2)
        matrix = psi_on_h1(ring, h1_regular(ring)).matrix()
        self.assertTrue(matrix)
        self.assertEqual(matrix, [[int(i == j) for j in range(len(matrix))] for i in range(len(matrix))])

    def test_commutator_refine(self):
        """Test that a product of commutators in Z_3[Q8] is refactored and multiplies back."""
        ring = _ring("Q8", 3, 4)
        rng = random.Random(15)
        elements = [g for g in ring.group.elements if g != ring.group.identity]
        for _ in range(2):
            x = ring.one()
            for _ in range(2):
                mu = ring.random_element(rng)
                x = x * group_commutator(ring, rng.choice(elements), ring.one() + mu * 3)
            result = commutator_refine(x, 1, 3)
            self.assertEqual(result.precision, 4)
            self.assertEqual(multiply_back(ring, result), ring.at_precision(4).lift(x))

    def test_commutator_refine_needs_odd_or_deeper(self):
        """Test that p^k = 2 is refused."""
        ring = _ring("D8", 2, 3)
        with self.assertRaises(InputError):
            commutator_refine(ring.one(), 1, 2)


class TestSuites(unittest.TestCase):
    """Test cases for run_suite."""

    def test_unknown_suite(self):
        """Test that an unknown suite name is rejected."""
        with self.assertRaises(InputError):
            run_suite("nonsense", _ring("C2"), 1, 0)

    def test_laurent_is_rejected(self):
        """Test that the Laurent window cannot run group ring checks."""
        ring = GroupRing(named_group("C2"), RingDescriptor("Laurent", 2, 3, 1, 2).build())
        with self.assertRaises(InputError):
            run_suite("adams", ring, 1, 0)

    def test_suite_names(self):
        """Test that the documented suites are registered."""
        for name in ("log-integrality", "augmentation-kernel", "cyclic-congruence", "xi-omega", "adams"):
            self.assertIn(name, SUITES)

    def test_adams_suite(self):
        """Test the transport suite on D8."""
        report = run_suite("adams", _ring("D8"), 5, 1)
        self.assertTrue(report.passed, report.examples)
        self.assertEqual(report.to_dict()["trials"], 5)

    def test_cyclic_congruence_suite(self):
        """Test that the congruence suite runs a single trial."""
        report = run_suite("cyclic-congruence", _ring("C3", 3, 4), 50, 0)
        self.assertTrue(report.passed)
        self.assertEqual(report.trials, 1)

    def test_central_translation_suite(self):
        """Test the translation suite counts central elements of order p."""
        report = run_suite("central-translation", _ring("C2xS3"), 10, 0)
        self.assertTrue(report.passed)
        self.assertEqual(report.trials, 1)

    def test_log_integrality_suite(self):
        """Test that L(u) is divisible by p on a small p-group."""
        report = run_suite("log-integrality", _ring("C4", 2, 3), 3, 2)
        self.assertTrue(report.passed, report.examples)

    def test_log_integrality_nonabelian(self):
        """Test that L(u) is divisible by p with zero augmentation on D8 and Q8."""
        for name in ("D8", "Q8"):
            report = run_suite("log-integrality", _ring(name, 2, 4), 3, 3)
            self.assertTrue(report.passed, (name, report.examples))

    def test_factorization_suite(self):
        """Test commutator refactoring with k = 2 at p = 2 and k = 1 at p = 3."""
        for ring in (_ring("D8", 2, 3), _ring("Q8", 3, 4)):
            report = run_suite("factorization", ring, 2, 4)
            self.assertTrue(report.passed, report.examples)
            self.assertEqual(report.skipped, 0)

    def test_factorization_suite_needs_precision(self):
        """Test that precision k is refused at p = 2."""
        with self.assertRaises(InputError):
            run_suite("factorization", _ring("D8", 2, 2), 1, 0)

    def test_xi_omega_suite(self):
        """Test the xi-omega identity suite on D8."""
        report = run_suite("xi-omega", _ring("D8", 2, 3), 3, 5)
        self.assertTrue(report.passed, report.examples)

    def test_xi_suite(self):
        """Test the xi homomorphism suite on S3 and Q8."""
        for name in ("S3", "Q8"):
            report = run_suite("xi", _ring(name, 2, 3), 3, 6)
            self.assertTrue(report.passed, (name, report.examples))

    def test_remaining_suites(self):
        """Test the suites without dedicated cases on D8 and Q8."""
        names = ("exp-log", "omega", "sk1-generator", "phi-log-commutators", "augmentation-kernel",
                 "commutator-identities")
        for group in ("D8", "Q8"):
            for name in names:
                report = run_suite(name, _ring(group, 2, 4), 3, 7)
                self.assertTrue(report.passed, (group, name, report.examples))


@unittest.skipUnless(os.environ.get("SK1_LAB_SLOW_TESTS") == "1", "set SK1_LAB_SLOW_TESTS=1 to run full-size suites")
class TestFullSizeSuites(unittest.TestCase):
    """Suites at their documented trial counts."""

    def test_log_integrality(self):
        """Test 200 units per group at N = 4."""
        for name in ("C2", "C4", "D8", "Q8"):
            report = run_suite("log-integrality", _ring(name, 2, 4), 200, 0)
            self.assertTrue(report.passed, (name, report.examples))

    def test_cyclic_congruence(self):
        """Test the congruence at N = 6."""
        for p in (2, 3, 5):
            self.assertTrue(run_suite("cyclic-congruence", _ring(f"C{p}", p, 6), 1, 0).passed, p)

    def test_factorization(self):
        """Test 50 products of up to three commutators with k = 2 and two steps at p = 3."""
        rng = random.Random(0)
        for name in ("D8", "Q8"):
            ring = _ring(name, 3, 4)
            elements = [g for g in ring.group.elements if g != ring.group.identity]
            for _ in range(50):
                x = ring.one()
                for _ in range(rng.randint(1, 3)):
                    mu = ring.random_element(rng)
                    x = x * group_commutator(ring, rng.choice(elements), ring.one() + mu * 9)
                result = commutator_refine(x, 2, 2)
                self.assertEqual(multiply_back(ring, result), ring.lift(x), name)

    def test_xi_omega(self):
        """Test 100 units on D8 at p = 2 and Heis3 at p = 3."""
        for name, p in (("D8", 2), ("Heis3", 3)):
            report = run_suite("xi-omega", _ring(name, p, 3), 100, 0)
            self.assertTrue(report.passed, (name, report.examples))

    def test_xi(self):
        """Test 100 pairs in Z_2[S3]."""
        report = run_suite("xi", _ring("S3", 2, 3), 100, 0)
        self.assertTrue(report.passed, report.examples)


if __name__ == '__main__':
    unittest.main()
