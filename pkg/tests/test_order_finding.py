"""
Tests for desk-scale order finding and factoring.
"""
import os
import sys
import unittest

import numpy as np

# Add parent directory to sys.path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from pipeline.order_finding import (
    emulate_order_finding,
    evaluate_modexp_table,
    factor,
    factor_via_order,
    minimal_order,
    order_distribution,
    recover_order_from_sample,
)
from utils.error_handler import ValidationError
from utils.number_theory import multiplicative_order


class TestOrderDistribution(unittest.TestCase):
    """Test cases for the classical Fourier step."""

    def test_order_four(self):
        """Test that 7 mod 15 has four equal peaks over 8 exponent bits."""
        f_values = np.array([pow(7, x, 15) for x in range(256)])
        probabilities = order_distribution(f_values)
        self.assertAlmostEqual(probabilities.sum(), 1.0)
        for y in (0, 64, 128, 192):
            self.assertAlmostEqual(probabilities[y], 0.25)

    def test_order_two(self):
        """Test that 14 mod 15 has peaks at 0 and 128 only."""
        run = emulate_order_finding(15, 14, shots=8, seed=3, use_circuit=False)
        self.assertEqual([y for y, _ in run.distribution_support], [0, 128])
        for _, p in run.distribution_support:
            self.assertAlmostEqual(p, 0.5)

    def test_circuit_and_table_agree(self):
        """Test that the circuit-evaluated run matches the classical table."""
        via_circuit = emulate_order_finding(15, 7, shots=32, seed=5)
        via_table = emulate_order_finding(15, 7, shots=32, seed=5, use_circuit=False)
        self.assertEqual(via_circuit.samples, via_table.samples)
        self.assertEqual(via_circuit.recovered_order, multiplicative_order(7, 15))
        self.assertTrue(via_circuit.via_circuit)
        self.assertTrue(set(via_circuit.samples) <= {0, 64, 128, 192})

    def test_shared_factor(self):
        """Test that a base sharing a factor with N is rejected."""
        with self.assertRaises(ValidationError):
            emulate_order_finding(15, 5)


class TestModExpTable(unittest.TestCase):
    """Test cases for circuit-evaluated exponent tables."""

    def test_five_bit_modulus(self):
        """Test 2^x mod 21 over all ten-bit exponents."""
        values = evaluate_modexp_table(21, 2)
        self.assertEqual(values.size, 1024)
        self.assertEqual(list(values[:8]), [1, 2, 4, 8, 16, 11, 1, 2])

    def test_size_limit(self):
        """Test that moduli above five bits are refused."""
        with self.assertRaises(ValidationError):
            evaluate_modexp_table(33, 2)


class TestPostProcessing(unittest.TestCase):
    """Test cases for continued fractions and factor extraction."""

    def test_recover_order(self):
        """Test recovery from samples of the order-four distribution."""
        self.assertEqual(recover_order_from_sample(64, 256, 15, 7), 4)
        self.assertEqual(recover_order_from_sample(192, 256, 15, 7), 4)
        self.assertIsNone(recover_order_from_sample(128, 256, 15, 7))
        self.assertIsNone(recover_order_from_sample(0, 256, 15, 7))

    def test_sample_range(self):
        """Test that samples outside the register are rejected."""
        with self.assertRaises(ValidationError):
            recover_order_from_sample(256, 256, 15, 7)

    def test_minimal_order(self):
        """Test reduction of a period to the order."""
        for N, a in ((7, 2), (15, 7), (21, 5), (31, 3)):
            order = multiplicative_order(a, N)
            self.assertEqual(minimal_order(a, 4 * order, N), order)
        self.assertEqual(minimal_order(2, 12, 7), 3)
        self.assertEqual(minimal_order(7, 8, 15), 4)

    def test_factor_via_order(self):
        """Test factor extraction and its failure cases."""
        self.assertEqual(factor_via_order(15, 7, 4), (3, 5))
        self.assertEqual(factor_via_order(15, 11, 2), (5, 3))
        self.assertIsNone(factor_via_order(15, 14, 2))
        self.assertIsNone(factor_via_order(21, 4, 3))
        with self.assertRaises(ValidationError):
            factor_via_order(15, 7, 3)


class TestFactor(unittest.TestCase):
    """Test cases for the factoring loop."""

    def test_fifteen(self):
        """Test that 15 splits into 3 and 5."""
        run = factor(15, seed=1)
        self.assertEqual(set(run.factors), {3, 5})
        self.assertGreaterEqual(run.attempts, 1)
        self.assertEqual(run.bases_tried[-1], run.a)

    def test_twenty_one(self):
        """Test that 21 splits into 3 and 7."""
        run = factor(21, seed=2)
        self.assertEqual(set(run.factors), {3, 7})

    def test_fifteen_by_order_finding(self):
        """Test that base 7 finds order 4 through the circuit and splits 15."""
        run = emulate_order_finding(15, 7, shots=32, seed=0)
        self.assertTrue(run.via_circuit)
        self.assertEqual(run.recovered_order, 4)
        self.assertEqual(factor_via_order(15, 7, run.recovered_order), (3, 5))

    def test_twenty_one_by_order_finding(self):
        """Test that base 2 finds order 6 through the circuit and splits 21."""
        run = emulate_order_finding(21, 2, shots=64, seed=0)
        self.assertTrue(run.via_circuit)
        self.assertEqual(run.recovered_order, 6)
        self.assertEqual(factor_via_order(21, 2, run.recovered_order), (7, 3))

    def test_explicit_base(self):
        """Test factoring 21 with a given base goes through order finding."""
        run = factor(21, bases=[2], shots=64, seed=0)
        self.assertEqual(run.factors, (7, 3))
        self.assertEqual(run.recovered_order, 6)
        self.assertTrue(run.via_circuit)
        self.assertEqual(run.bases_tried, [2])

    def test_shared_factor_after_circuit_attempt(self):
        """Test that a gcd hit after a circuit attempt still reports circuit use."""
        run = factor(21, bases=[4, 7], shots=8, seed=0)
        self.assertEqual(run.factors, (7, 3))
        self.assertEqual(run.attempts, 2)
        self.assertTrue(run.via_circuit)
        self.assertIsNone(run.recovered_order)
        first = factor(21, bases=[7])
        self.assertFalse(first.via_circuit)

    def test_base_range(self):
        """Test that explicit bases outside [2, N-2] are rejected."""
        with self.assertRaises(ValidationError):
            factor(21, bases=[1])

    def test_classical_shortcuts(self):
        """Test even moduli and perfect powers."""
        self.assertEqual(factor(16).factors, (2, 8))
        self.assertEqual(factor(9).factors, (3, 3))
        self.assertEqual(factor(27).factors, (3, 9))
        self.assertFalse(factor(9).via_circuit)

    def test_limits(self):
        """Test moduli outside the desk-scale range."""
        with self.assertRaises(ValidationError):
            factor(33)
        with self.assertRaises(ValidationError):
            factor(3)


if __name__ == '__main__':
    unittest.main()
