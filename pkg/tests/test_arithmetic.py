"""
Tests for adders, comparators, shifts and modular adders.
"""
import os
import sys
import unittest

# Add parent directory to sys.path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from estimation.cost_model import CostFormulaId, primitive_cnot_count
from models.circuit import RegisterRole
from simulation.verify import exhaustive_verify
from synthesis.arithmetic import (
    ArithmeticParams,
    ShiftDirection,
    build_adder,
    build_comparator,
    build_const_adder,
    build_const_comparator,
    build_modular_adder,
    build_modular_doubler,
    build_shift,
)
from synthesis.builder import CircuitBuilder
from synthesis.catalog import get_spec, resolve
from utils.error_handler import CircuitError, ValidationError
from utils.number_theory import popcount


def odd_moduli(n):
    """Odd N with 2^(n-1) < N < 2^n."""
    return [N for N in range((1 << (n - 1)) + 1, 1 << n) if N % 2 and N >= 3]


class CatalogCase(unittest.TestCase):
    """Shared exhaustive check through the circuit catalog."""

    def assertVerified(self, name, **params):
        spec = get_spec(name)
        resolved = resolve(params)
        report = exhaustive_verify(spec.build(resolved), spec.oracle(resolved), spec.domain(resolved))
        self.assertTrue(report.passed, f"{name} {params}: {report.counterexample}")
        self.assertEqual(report.points_checked, spec.domain_size(resolved))


class TestExactCounts(unittest.TestCase):
    """Test cases for primitives whose measured count equals the model."""

    def test_adders_and_comparators(self):
        """Test adder, comparator and shift counts for n in 2..16."""
        for n in range(2, 17):
            self.assertEqual(build_adder(n).cnot_count, 16 * n + 1)
            self.assertEqual(build_adder(n, controlled=True).cnot_count, 26 * n + 6)
            self.assertEqual(build_comparator(n).cnot_count, 16 * n + 1)
            self.assertEqual(build_comparator(n, controlled=True).cnot_count, 16 * n + 7)
            self.assertEqual(build_shift(n, ShiftDirection.LEFT).cnot_count, 2 * n)
            self.assertEqual(build_shift(n, ShiftDirection.RIGHT).cnot_count, 2 * n)
            self.assertEqual(build_adder(n).cnot_count, primitive_cnot_count(CostFormulaId.ADDER, n))

    def test_uncontrolled_constant_circuits(self):
        """Test that uncontrolled constants cost nothing beyond the model."""
        for n in range(2, 17):
            for constant in (0, 1, (1 << n) - 1, ((1 << n) - 1) // 3):
                self.assertEqual(build_const_adder(n, constant).cnot_count, 13 * n + 1)
                self.assertEqual(build_const_comparator(n, constant).cnot_count, 12 * n + 1)


class TestBindingAdjustedCounts(unittest.TestCase):
    """Test cases for primitives that bind classical constants under control."""

    def test_controlled_const_adder(self):
        """Test raw and adjusted counts of the controlled constant adder."""
        for n in range(2, 17):
            constant = ((1 << n) - 1) // 3
            circuit = build_const_adder(n, constant, controlled=True)
            self.assertEqual(circuit.cnot_count, 16 * n + 1 + 2 * popcount(constant))
            self.assertEqual(circuit.bound_bits, 2 * n)
            self.assertEqual(circuit.adjusted_cnot_count, 17 * n + 1)

    def test_modular_adders(self):
        """Test raw and adjusted counts of the modular adders."""
        for n in range(2, 17):
            N = (1 << n) - 1
            p = popcount(N)
            plain = build_modular_adder(n, N)
            controlled = build_modular_adder(n, N, controlled=True)
            self.assertEqual(plain.cnot_count, 60 * n + 16 + 2 * p)
            self.assertEqual(plain.adjusted_cnot_count, 61 * n + 16)
            self.assertEqual(controlled.cnot_count, 70 * n + 27 + 2 * p)
            self.assertEqual(controlled.adjusted_cnot_count, 71 * n + 27)

    def test_modular_doubler(self):
        """Test raw and adjusted counts of modular doubling."""
        for n in range(2, 17):
            N = (1 << (n - 1)) + 1 if n > 2 else 3
            circuit = build_modular_doubler(n, N)
            self.assertEqual(circuit.cnot_count, 30 * n + 15 + 2 * popcount(N))
            self.assertEqual(circuit.adjusted_cnot_count, 31 * n + 15)
            self.assertEqual(circuit.adjusted_cnot_count, primitive_cnot_count(CostFormulaId.MOD_DOUBLE, n))


class TestAdderFunctions(CatalogCase):
    """Exhaustive checks of the non-modular circuits for n <= 4."""

    def test_adders(self):
        """Test plain and controlled adders over full operand ranges."""
        for n in range(1, 5):
            self.assertVerified("adder", n=n)
            self.assertVerified("ctrl-adder", n=n)

    def test_constant_adders(self):
        """Test constant adders for every constant."""
        for n in range(1, 5):
            for constant in range(1 << n):
                self.assertVerified("const-adder", n=n, constant=constant)
                self.assertVerified("ctrl-const-adder", n=n, constant=constant)

    def test_comparators(self):
        """Test comparators, including the constant comparator for every constant."""
        for n in range(1, 5):
            self.assertVerified("comparator", n=n)
            self.assertVerified("ctrl-comparator", n=n)
            for constant in range(1 << n):
                self.assertVerified("const-comparator", n=n, constant=constant)

    def test_shifts(self):
        """Test left and right shifts."""
        for n in range(1, 5):
            self.assertVerified("shift-left", n=n)
            self.assertVerified("shift-right", n=n)


class TestModularFunctions(CatalogCase):
    """Exhaustive checks of modular addition and doubling."""

    def test_modular_adders(self):
        """Test modular adders for every odd modulus of each width."""
        for n in range(2, 5):
            for N in odd_moduli(n):
                self.assertVerified("mod-add", n=n, modulus=N)
                self.assertVerified("ctrl-mod-add", n=n, modulus=N)

    def test_modular_doubler(self):
        """Test modular doubling for every odd modulus of each width."""
        for n in range(2, 5):
            for N in odd_moduli(n):
                self.assertVerified("mod-double", n=n, modulus=N)

    def test_small_modulus_in_wide_register(self):
        """Test a modulus far below 2^n."""
        self.assertVerified("mod-add", n=4, modulus=5)
        self.assertVerified("mod-double", n=4, modulus=3)


class TestParameterValidation(unittest.TestCase):
    """Test cases for builder preconditions."""

    def test_width(self):
        """Test that widths below one are rejected."""
        with self.assertRaises(ValidationError):
            build_adder(0)

    def test_constant_range(self):
        """Test that constants must fit the register."""
        with self.assertRaises(ValidationError):
            build_const_adder(3, 8)
        with self.assertRaises(ValidationError):
            build_const_comparator(3, -1)

    def test_modulus(self):
        """Test that moduli must be odd, at least 3 and below 2^n."""
        for N in (1, 4, 16, 17):
            with self.assertRaises(ValidationError):
                ArithmeticParams(4, modulus=N).validate()
        with self.assertRaises(ValidationError):
            build_modular_adder(4, 14)

    def test_bind_overflow(self):
        """Test that a constant wider than its register is rejected by the builder."""
        b = CircuitBuilder("bind")
        qubits = b.register("k", 2, RegisterRole.ANCILLA)
        with self.assertRaises(CircuitError):
            b.bind(qubits, 4)

    def test_sections_inside_inverted_block(self):
        """Test that sections cannot open inside an inverted block."""
        b = CircuitBuilder("nested")
        b.register("q", 1, RegisterRole.ANCILLA)
        with self.assertRaises(CircuitError):
            with b.inverted():
                with b.section("inner"):
                    b.x(0)


if __name__ == '__main__':
    unittest.main()
