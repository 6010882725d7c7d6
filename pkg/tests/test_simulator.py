"""
Tests for the basis-state simulator and oracle verification.
"""
import os
import sys
import unittest

import numpy as np

# Add parent directory to sys.path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.circuit import Circuit, Gate, GateKind, RegisterRole, decompose_toffoli, toffoli_network
from simulation.basis_simulator import (
    BasisState,
    inverse_round_trip,
    is_bijection,
    read_register,
    run_basis,
    run_batch,
    states_from_assignments,
    write_register,
)
from simulation.verify import exhaustive_verify
from synthesis.arithmetic import build_adder, build_comparator, build_const_adder, build_modular_adder
from synthesis.builder import CircuitBuilder
from synthesis.catalog import CATALOG, build_named
from synthesis.modmul import build_montgomery_full
from utils.error_handler import CircuitError, ValidationError


def _all_states(num_qubits):
    indices = np.arange(1 << num_qubits)
    return np.array([(indices >> q) & 1 for q in range(num_qubits)], dtype=np.uint8)


class TestBasisSimulator(unittest.TestCase):
    """Test cases for run_basis and run_batch."""

    def setUp(self):
        """Set up test fixtures."""
        self.toffoli = Circuit(3, (Gate(GateKind.TOFFOLI, 2, (0, 1)),))

    def test_toffoli_truth_table(self):
        """Test the Toffoli action on all eight basis states."""
        for index in range(8):
            bits = tuple((index >> q) & 1 for q in range(3))
            expected = (bits[0], bits[1], bits[2] ^ (bits[0] & bits[1]))
            self.assertEqual(run_basis(self.toffoli, BasisState(bits)).bits, expected)

    def test_lowered_block_matches_toffoli(self):
        """Test that the Clifford+T network acts as a Toffoli."""
        lowered = Circuit(3, tuple(toffoli_network(0, 1, 2, block=0)))
        self.assertEqual(lowered.cnot_count, 6)
        for index in range(8):
            state = BasisState(tuple((index >> q) & 1 for q in range(3)))
            self.assertEqual(run_basis(lowered, state), run_basis(self.toffoli, state))

    def test_non_permutation_block(self):
        """Test that a block without a basis action is rejected."""
        c = Circuit(1, (Gate(GateKind.H, 0, block=0),))
        with self.assertRaises(CircuitError):
            run_basis(c, BasisState((0,)))

    def test_bare_phase_gate(self):
        """Test that T outside a block has no basis action."""
        c = Circuit(1, (Gate(GateKind.T, 0),))
        with self.assertRaises(CircuitError):
            run_basis(c, BasisState((0,)))

    def test_shape_checks(self):
        """Test state size validation."""
        with self.assertRaises(ValidationError):
            run_basis(self.toffoli, BasisState((0, 1)))
        with self.assertRaises(ValidationError):
            run_batch(self.toffoli, np.zeros((2, 4), dtype=np.uint8))

    def test_gate_range(self):
        """Test running a slice of the gate list."""
        c = Circuit(2, (Gate(GateKind.X, 0), Gate(GateKind.CNOT, 1, (0,))))
        states = np.zeros((2, 1), dtype=np.uint8)
        self.assertEqual(run_batch(c, states, stop=1)[:, 0].tolist(), [1, 0])
        self.assertEqual(run_batch(c, states, start=1)[:, 0].tolist(), [0, 0])
        self.assertEqual(run_batch(c, states)[:, 0].tolist(), [1, 1])

    def test_registers(self):
        """Test register reads, writes and initial values."""
        b = CircuitBuilder("init")
        b.register("a", 3, RegisterRole.INPUT)
        b.register("b", 2, RegisterRole.OUTPUT, initial=2)
        c = b.build()
        states = states_from_assignments(c, [{"a": 5}, {"a": 6}])
        self.assertEqual(read_register(states, c.layout.qubits("a")).tolist(), [5, 6])
        self.assertEqual(read_register(states, c.layout.qubits("b")).tolist(), [2, 2])
        write_register(states, c.layout.qubits("b"), [1, 3])
        self.assertEqual(read_register(states, c.layout.qubits("b")).tolist(), [1, 3])
        self.assertEqual(BasisState.from_registers(c, {"a": 3}).register(c, "b"), 2)

    def test_wide_register(self):
        """Test registers wider than a machine word."""
        qubits = list(range(70))
        states = np.zeros((70, 2), dtype=np.uint8)
        values = [(1 << 69) + 5, 3]
        write_register(states, qubits, values)
        self.assertEqual([int(v) for v in read_register(states, qubits)], values)


class TestStructuralChecks(unittest.TestCase):
    """Test cases for bijection and inverse checks."""

    def test_bijection(self):
        """Test that built circuits are bijections on all basis states."""
        for circuit in (build_adder(3), build_comparator(2, controlled=True), build_modular_adder(2, 3)):
            self.assertLessEqual(circuit.num_qubits, 12)
            self.assertTrue(is_bijection(circuit))

    def test_bijection_limit(self):
        """Test that large circuits are refused."""
        with self.assertRaises(ValidationError):
            is_bijection(build_montgomery_full(3, 5))

    def test_inverse_round_trip(self):
        """Test inverse round trips on exhaustive and sampled states."""
        self.assertTrue(inverse_round_trip(build_adder(2)))
        self.assertTrue(inverse_round_trip(decompose_toffoli(build_montgomery_full(2, 3)), samples=32, seed=3))

    def test_catalog_small_circuits(self):
        """Test bijection and inverse round trip for every catalog circuit of at most 12 qubits."""
        checked = set()
        for name in sorted(CATALOG):
            for n in (2, 3):
                circuit = build_named(name, {"n": n})
                if circuit.num_qubits > 12:
                    continue
                self.assertTrue(is_bijection(circuit), f"{name} n={n}")
                self.assertTrue(inverse_round_trip(circuit), f"{name} n={n}")
                checked.add(name)
        self.assertGreaterEqual(len(checked), 12)

    def test_lowered_matches_on_all_states(self):
        """Test that lowering Toffolis keeps the action on every basis state."""
        for circuit in (build_adder(3), build_adder(3, controlled=True), build_comparator(3),
                        build_const_adder(3, 5, controlled=True)):
            self.assertLessEqual(circuit.num_qubits, 12)
            states = _all_states(circuit.num_qubits)
            lowered = decompose_toffoli(circuit)
            self.assertTrue(np.array_equal(run_batch(lowered, states), run_batch(circuit, states)),
                            circuit.name)


class TestExhaustiveVerify(unittest.TestCase):
    """Test cases for oracle verification."""

    def setUp(self):
        """Set up test fixtures."""
        self.adder = build_adder(2)
        self.domain = [{"x": x, "y": y} for x in range(4) for y in range(4)]

    def test_pass(self):
        """Test a correct oracle passes every point."""
        report = exhaustive_verify(
            self.adder,
            lambda p: {"y": (p["x"] + p["y"]) % 4, "carry_out": (p["x"] + p["y"]) >> 2},
            self.domain, batch_size=5)
        self.assertTrue(report.passed)
        self.assertEqual(report.points_checked, 16)
        self.assertIsNone(report.counterexample)

    def test_counterexample(self):
        """Test that the first disagreement is reported."""
        report = exhaustive_verify(
            self.adder, lambda p: {"y": (p["x"] + p["y"]) % 4, "carry_out": 0}, self.domain)
        self.assertFalse(report.passed)
        example = report.counterexample
        self.assertEqual(example["register"], "carry_out")
        self.assertEqual(example["inputs"], {"x": 1, "y": 3})
        self.assertEqual(example["reason"], "output differs from oracle")
        self.assertEqual(example["observed"]["carry_out"], 1)

    def test_preserved_input(self):
        """Test that a modified input register is caught."""
        b = CircuitBuilder("clobber")
        xs = b.register("x", 1, RegisterRole.INPUT)
        ys = b.register("y", 1, RegisterRole.OUTPUT)
        b.cx(xs[0], ys[0])
        b.x(xs[0])
        report = exhaustive_verify(b.build(), lambda p: {"y": p["x"]}, [{"x": 0}, {"x": 1}])
        self.assertFalse(report.passed)
        self.assertEqual(report.counterexample["register"], "x")
        self.assertEqual(report.counterexample["reason"], "input register modified")

    def test_sampled(self):
        """Test random sampling from a domain."""
        report = exhaustive_verify(
            self.adder,
            lambda p: {"y": (p["x"] + p["y"]) % 4, "carry_out": (p["x"] + p["y"]) >> 2},
            self.domain, sample=6, seed=1)
        self.assertTrue(report.passed)
        self.assertTrue(report.sampled)
        self.assertEqual(report.points_checked, 6)


if __name__ == '__main__':
    unittest.main()
