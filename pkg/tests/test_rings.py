"""
Tests for coefficient ring models, coinvariants and the scalar logarithm.
"""

import random
import typing
import unittest

from sk1_lab.algebra.abelian import AbelianGroupPresentation
from sk1_lab.algebra.rings import (
    EXPECTED_VERDICTS, PAIRS, RingDescriptor, RingElement, RingModel, coinvariants, compare_pair,
    frobenius_apply, frobenius_fixed_units, log_one_plus_scalar, log_translation_defect, residue_coinvariants,
    scalar_log_L, tensor_with_finite,
)
from sk1_lab.errors import InputError, PrecisionError


def _ring(kind, p, n, f=1, d=0):
    return RingDescriptor(kind, p, n, f, d).build()


def _orders(*orders):
    return AbelianGroupPresentation.from_orders(orders)


class TestRingDescriptor(unittest.TestCase):
    """Test cases for ring descriptors."""

    def test_validation(self):
        """Test that malformed descriptors are rejected."""
        with self.assertRaises(InputError):
            RingDescriptor("Adeles", 2, 4)
        with self.assertRaises(InputError):
            RingDescriptor("Zp", 4, 4)
        with self.assertRaises(InputError):
            RingDescriptor("Zp", 2, 0)
        with self.assertRaises(InputError):
            RingDescriptor("Zp", 2, 4, f=2)
        with self.assertRaises(InputError):
            RingDescriptor("Laurent", 2, 4)

    def test_from_dict(self):
        """Test the JSON form with defaults."""
        descriptor = RingDescriptor.from_dict({"kind": "Witt", "p": 3, "N": 2, "f": 2})
        self.assertEqual(descriptor, RingDescriptor("Witt", 3, 2, 2, 0))
        self.assertEqual(descriptor.to_dict(), {"kind": "Witt", "p": 3, "N": 2, "f": 2, "D": 0})
        with self.assertRaises(InputError):
            RingDescriptor.from_dict({"kind": "Zp", "p": 3})
        with self.assertRaises(InputError):
            RingDescriptor.from_dict({"kind": "Zp", "p": "three", "N": 2})

    def test_str(self):
        """Test the text form."""
        self.assertEqual(str(RingDescriptor("PowerSeries", 2, 4, 1, 8)), "PowerSeries(p=2, N=4, D=8)")
        self.assertEqual(str(RingDescriptor("Witt", 2, 4, 2)), "Witt(p=2, N=4, f=2)")


class TestRingArithmetic(unittest.TestCase):
    """Test cases for arithmetic in the ring models."""

    def test_witt_inverse(self):
        """Test that random units invert in W(F_4) mod 8."""
        model = _ring("Witt", 2, 3, 2)
        rng = random.Random(1)
        for _ in range(10):
            u = RingElement(model, model.random_unit(rng))
            self.assertEqual(u * u.inverse(), RingElement(model, model.one()))

    def test_frobenius_congruence(self):
        """Test F(a) = a^p mod p on exact models."""
        rng = random.Random(2)
        for model in (_ring("Witt", 3, 3, 2), _ring("PowerSeries", 2, 3, 1, 4)):
            for _ in range(5):
                a = RingElement(model, model.random_element(rng))
                frobenius_apply(a)

    def test_random_sampling(self):
        """Test that the rng annotations name the random module and samples stay in range."""
        hints = typing.get_type_hints(RingModel.random_unit)
        self.assertIs(hints["rng"], random.Random)
        self.assertIs(typing.get_type_hints(RingModel.random_element)["rng"], random.Random)
        model = _ring("Witt", 3, 2, 2)
        rng = random.Random(7)
        for _ in range(5):
            a = model.random_element(rng)
            self.assertEqual(len(a), model.dim)
            self.assertTrue(all(0 <= x < model.modulus for x in a))
            self.assertTrue(model.is_unit(model.random_unit(rng)))

    def test_series_window(self):
        """Test truncation of products to the degree window."""
        model = _ring("PowerSeries", 2, 4, 1, 3)
        t = RingElement(model, model.monomial(1))
        self.assertTrue((t ** 4).is_zero)
        self.assertFalse((t ** 3).is_zero)
        with self.assertRaises(InputError):
            model.monomial(-1)

    def test_laurent_has_no_units(self):
        """Test that the Laurent window refuses inversion."""
        model = _ring("Laurent", 2, 4, 1, 3)
        self.assertFalse(model.is_exact)
        with self.assertRaises(InputError):
            model.inverse(model.one())


class TestCoinvariants(unittest.TestCase):
    """Test cases for R/(1-F)R."""

    def test_base_rings(self):
        """Test coinvariants of Zp and an unramified extension."""
        self.assertEqual(coinvariants(_ring("Zp", 3, 2)).group, _orders(9))
        self.assertEqual(coinvariants(_ring("Witt", 2, 3, 2)).group, _orders(8))
        self.assertEqual(residue_coinvariants(_ring("Witt", 2, 3, 2)), 1)

    def test_power_series(self):
        """Test that positive degrees die in W[[t]]."""
        for d in (4, 8):
            self.assertEqual(coinvariants(_ring("PowerSeries", 2, 2, 1, d)).group, _orders(4))

    def test_negative_degrees_survive(self):
        """Test the free summands contributed by Frobenius orbits of negative degrees."""
        self.assertEqual(coinvariants(_ring("InverseVar", 2, 2, 1, 4)).group, _orders(4, 4, 4))
        self.assertEqual(coinvariants(_ring("Laurent", 2, 2, 1, 4)).group, _orders(4, 4, 4))
        self.assertEqual(coinvariants(_ring("Laurent", 2, 2, 1, 8)).group, _orders(4, 4, 4, 4, 4))

    def test_projection_of_boundary(self):
        """Test that (1 - F)a projects to zero."""
        model = _ring("Witt", 3, 2, 2)
        co = coinvariants(model)
        rng = random.Random(3)
        for _ in range(5):
            a = model.random_element(rng)
            image = co.project(model.sub(a, model.frobenius(a)))
            self.assertTrue(all(c % o == 0 for c, o in zip(image, co.orders)))

    def test_tensor_with_finite(self):
        """Test M (x) R/(1-F)R and its precision requirement."""
        model = _ring("Zp", 2, 2)
        self.assertEqual(tensor_with_finite(_orders(2, 4), model), _orders(2, 4))
        self.assertTrue(tensor_with_finite(AbelianGroupPresentation.trivial(), model).is_trivial)
        with self.assertRaises(PrecisionError):
            tensor_with_finite(_orders(8), model)
        with self.assertRaises(InputError):
            tensor_with_finite(_orders(3), model)


class TestRingComparisons(unittest.TestCase):
    """Test cases for the named ring comparisons."""

    def test_expected_verdicts(self):
        """Test every named pair at two windows."""
        for f in (1, 2):
            for pair in PAIRS:
                comparison = compare_pair(pair, 2, 2, f, 4)
                self.assertEqual(comparison.at_window.verdict, EXPECTED_VERDICTS[pair], (pair, f))
                self.assertTrue(comparison.window_stable, (pair, f))

    def test_torsion_free_cokernel(self):
        """Test the cokernel of W[[t]] -> W{{t}}."""
        comparison = compare_pair("Wt-Laurent", 2, 2, 1, 4)
        self.assertEqual(comparison.at_window.cokernel, _orders(4, 4))
        self.assertEqual(comparison.at_window.kernel_order, 1)
        self.assertEqual(comparison.to_dict()["expected"], "injective-torsion-free-cokernel")

    def test_unknown_pair(self):
        """Test that an unknown pair is rejected."""
        with self.assertRaises(InputError):
            compare_pair("W-Qp", 2, 2)


class TestFixedUnitsAndLog(unittest.TestCase):
    """Test cases for M(R,F) and the scalar logarithm."""

    def test_fixed_units(self):
        """Test the Teichmueller roots of unity."""
        model = _ring("Witt", 2, 3, 2)
        units = frobenius_fixed_units(model)
        self.assertEqual(units.order, 3)
        self.assertEqual(len(units.elements), 3)
        self.assertEqual(model.frobenius(units.generator), model.power(units.generator, 2))
        self.assertEqual(frobenius_fixed_units(_ring("Zp", 5, 3)).order, 4)
        self.assertEqual(frobenius_fixed_units(_ring("Zp", 2, 3)).order, 1)
        with self.assertRaises(InputError):
            frobenius_fixed_units(_ring("PowerSeries", 2, 3, 1, 2))

    def test_log_is_additive(self):
        """Test log(4) + log(7) = log(28) = 0 mod 27."""
        model = _ring("Zp", 3, 3)
        total = model.add(log_one_plus_scalar(model, model.from_int(3)), log_one_plus_scalar(model, model.from_int(6)))
        self.assertEqual(total, model.zero())
        with self.assertRaises(InputError):
            log_one_plus_scalar(model, model.from_int(1))

    def test_scalar_log_divisible_by_p(self):
        """Test that L_R(u) lies in pR."""
        model = _ring("Witt", 3, 3, 2)
        rng = random.Random(4)
        for _ in range(5):
            value = scalar_log_L(RingElement(model, model.random_unit(rng)))
            self.assertTrue(all(x % 3 == 0 for x in value.coords))
        with self.assertRaises(InputError):
            scalar_log_L(RingElement(model, model.zero()))

    def test_defect_vanishes_on_fixed_units(self):
        """Test that multiplying by a root of unity does not change (1/p)L_R."""
        model = _ring("Witt", 2, 4, 2)
        m = RingElement(model, frobenius_fixed_units(model).generator)
        rng = random.Random(5)
        for _ in range(5):
            u = RingElement(model, model.random_unit(rng))
            self.assertTrue(log_translation_defect(u, m).is_zero)
        low = _ring("Zp", 2, 1)
        with self.assertRaises(PrecisionError):
            log_translation_defect(RingElement(low, low.one()), RingElement(low, low.one()))

    def test_defect_detects_units_off_fixed_set(self):
        """Test that m = 4 in Z_3, which is not a root of unity, moves (1/p)L_R."""
        model = _ring("Zp", 3, 4)
        one = RingElement(model, model.one())
        m = RingElement(model, model.from_int(4))
        defect = log_translation_defect(one, m)
        self.assertFalse(defect.is_zero)
        self.assertEqual(defect.valuation(), 0)
        self.assertTrue(log_translation_defect(one, one).is_zero)
        other = _ring("Zp", 5, 4)
        with self.assertRaises(InputError):
            log_translation_defect(one, RingElement(other, other.one()))


if __name__ == '__main__':
    unittest.main()
