"""
Tests for the fast and Montgomery modular multipliers.
"""
import os
import sys
import unittest

# Add parent directory to sys.path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from estimation.cost_model import CostFormulaId, documented_delta, primitive_cnot_count
from models.circuit import GateKind
from simulation.basis_simulator import read_register, run_batch, states_from_assignments
from simulation.verify import exhaustive_verify
from synthesis.catalog import get_spec, resolve
from synthesis.modmul import (
    build_ctrl_copy,
    build_fast_modmul,
    build_montgomery_forward,
    build_montgomery_full,
)
from utils.error_handler import ValidationError
from utils.number_theory import popcount


def odd_moduli(n):
    return [N for N in range((1 << (n - 1)) + 1, 1 << n, 2) if N >= 3]


def run_result(circuit, points):
    """Result register after running the circuit on each point."""
    states = run_batch(circuit, states_from_assignments(circuit, points))
    return read_register(states, circuit.layout.qubits("result")).tolist()


class TestMultiplierCounts(unittest.TestCase):
    """Test cases for raw and binding-adjusted multiplier counts."""

    def setUp(self):
        self.widths = range(2, 11)

    def test_ctrl_copy(self):
        """Test that a controlled copy costs one Toffoli per bit."""
        for n in self.widths:
            self.assertEqual(build_ctrl_copy(n).cnot_count, 6 * n)
            self.assertEqual(build_ctrl_copy(n, controlled=False).cnot_count, n)

    def test_fast_modmul(self):
        """Test the fast multiplier against its closed form."""
        for n in self.widths:
            N = (1 << n) - 1
            circuit = build_fast_modmul(n, N)
            self.assertEqual(circuit.cnot_count, 6 * n + (n - 1) * (100 * n + 42 + 4 * popcount(N)))
            self.assertEqual(circuit.adjusted_cnot_count, 102 * n * n - 54 * n - 42)
            self.assertEqual(circuit.adjusted_cnot_count,
                             primitive_cnot_count(CostFormulaId.FAST_MODMUL, n))

    def test_montgomery_forward(self):
        """Test the forward pass: raw count, adjusted count and documented delta."""
        for n in self.widths:
            for N in ((1 << n) - 1, (1 << (n - 1)) + 1 if n > 2 else 3):
                circuit = build_montgomery_forward(n, N)
                raw = 44 * n * n + 20 * n + 1 + 2 * n * popcount((N + 1) // 2) + 2 * popcount(N)
                self.assertEqual(circuit.cnot_count, raw)
                self.assertEqual(circuit.adjusted_cnot_count, 45 * n * n + 21 * n + 1)
                self.assertEqual(
                    circuit.adjusted_cnot_count - primitive_cnot_count(CostFormulaId.MONT_FORWARD, n),
                    documented_delta(CostFormulaId.MONT_FORWARD, n))

    def test_montgomery_full(self):
        """Test the full multiplier is two forward passes plus an n-CNOT copy."""
        for n in self.widths:
            N = (1 << n) - 1
            circuit = build_montgomery_full(n, N)
            self.assertEqual(circuit.adjusted_cnot_count, 90 * n * n + 43 * n + 2)
            self.assertEqual(
                circuit.adjusted_cnot_count - primitive_cnot_count(CostFormulaId.MONT_FULL, n),
                documented_delta(CostFormulaId.MONT_FULL, n))

    def test_montgomery_shift_per_round(self):
        """Test that each later round moves its parity out with the first CNOT of a right shift."""
        n, N = 5, 29
        circuit = build_montgomery_forward(n, N)
        parities = circuit.layout.qubits("parities")
        low = circuit.layout.qubits("result")[0]
        for i, parity in enumerate(parities):
            writes = [g for g in circuit.gates if g.target == parity]
            self.assertEqual(len(writes), 1)
            if i == 0:
                self.assertEqual(writes[0].kind, GateKind.TOFFOLI)
            else:
                self.assertEqual(writes[0].kind, GateKind.CNOT)
                self.assertEqual(writes[0].controls, (low,))

    def test_montgomery_stays_near_model(self):
        """Test that the Montgomery gap stays under 2% at every width."""
        for n in range(2, 257):
            for primitive in (CostFormulaId.MONT_FORWARD, CostFormulaId.MONT_FULL):
                model = primitive_cnot_count(primitive, n)
                self.assertLess(abs(documented_delta(primitive, n)) / model, 0.02)

    def test_measured_montgomery_near_model(self):
        """Test the built circuits against the model up to the widest measured size."""
        for n in (2, 3, 4, 11, 12, 16):
            N = (1 << n) - 1
            for primitive, build in ((CostFormulaId.MONT_FORWARD, build_montgomery_forward),
                                     (CostFormulaId.MONT_FULL, build_montgomery_full)):
                model = primitive_cnot_count(primitive, n)
                measured = build(n, N).adjusted_cnot_count
                self.assertLess(abs(measured - model) / model, 0.02, f"{primitive.value} n={n}")

    def test_other_primitives_have_no_delta(self):
        """Test that only the Montgomery pair carries a documented delta."""
        for primitive in CostFormulaId:
            if primitive in (CostFormulaId.MONT_FORWARD, CostFormulaId.MONT_FULL):
                continue
            self.assertEqual(documented_delta(primitive, 7), 0)


class TestMultiplierFunctions(unittest.TestCase):
    """Exhaustive checks over all residues for n <= 4."""

    def assertVerified(self, name, n, N):
        spec = get_spec(name)
        params = resolve({"n": n, "modulus": N})
        report = exhaustive_verify(spec.build(params), spec.oracle(params), spec.domain(params))
        self.assertTrue(report.passed, f"{name} n={n} N={N}: {report.counterexample}")
        self.assertEqual(report.points_checked, N * N)

    def test_fast_modmul(self):
        """Test x*y mod N for every odd modulus up to 4 bits."""
        for n in range(2, 5):
            for N in odd_moduli(n):
                self.assertVerified("fast-modmul", n, N)

    def test_montgomery_forward(self):
        """Test x*y*2^-n mod N with garbage parities left behind."""
        for n in range(2, 5):
            for N in odd_moduli(n):
                self.assertVerified("montgomery-forward", n, N)

    def test_montgomery_full(self):
        """Test that the full Montgomery multiplier restores every ancilla."""
        for n in range(2, 5):
            for N in odd_moduli(n):
                self.assertVerified("montgomery-full", n, N)

    def test_montgomery_form_operand(self):
        """Test full(x, y*2^n mod N) == x*y mod N == fast(x, y) on every residue pair."""
        for n, N in ((2, 3), (3, 5), (3, 7), (4, 11), (4, 13), (4, 15)):
            pairs = [(x, y) for x in range(N) for y in range(N)]
            scale = pow(2, n, N)
            full = run_result(build_montgomery_full(n, N), [{"x": x, "y": y * scale % N} for x, y in pairs])
            fast = run_result(build_fast_modmul(n, N), [{"x": x, "y": y} for x, y in pairs])
            expected = [x * y % N for x, y in pairs]
            self.assertEqual(full, expected, f"N={N}")
            self.assertEqual(fast, full, f"N={N}")

    def test_ctrl_copy(self):
        """Test the controlled copy for every source value."""
        spec = get_spec("ctrl-copy")
        params = resolve({"n": 3})
        report = exhaustive_verify(spec.build(params), spec.oracle(params), spec.domain(params))
        self.assertTrue(report.passed)
        self.assertEqual(report.points_checked, 16)


class TestMultiplierValidation(unittest.TestCase):
    """Test cases for multiplier preconditions."""

    def test_width(self):
        """Test that single-bit multipliers are rejected."""
        with self.assertRaises(ValidationError):
            build_fast_modmul(1, 1)

    def test_even_modulus(self):
        """Test that even moduli are rejected."""
        with self.assertRaises(ValidationError):
            build_montgomery_full(4, 12)


if __name__ == '__main__':
    unittest.main()
