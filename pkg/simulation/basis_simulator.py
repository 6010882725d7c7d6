"""
Classical simulation of reversible circuits on computational basis states.

States are held as a (num_qubits, batch) uint8 matrix so every gate is a
row operation over the whole batch.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from models.circuit import Circuit, Gate, GateKind, invert
from utils.error_handler import CircuitError, ValidationError

logger = logging.getLogger(__name__)

_WIDE_REGISTER = 62

_OP_X, _OP_CNOT, _OP_TOFFOLI, _OP_BLOCK = range(4)

_SINGLE_QUBIT = {
    GateKind.H: np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    GateKind.T: np.diag([1, np.exp(1j * np.pi / 4)]),
    GateKind.TDG: np.diag([1, np.exp(-1j * np.pi / 4)]),
}


@dataclass(frozen=True)
class BasisState:
    """One bit per qubit."""
    bits: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) & 1 for b in self.bits))

    def __len__(self) -> int:
        return len(self.bits)

    @classmethod
    def from_registers(cls, c: Circuit, values: Mapping[str, int]) -> "BasisState":
        """Declared initial values, overridden by the given register values."""
        bits = c.layout.initial_bits(c.num_qubits) if c.layout else [0] * c.num_qubits
        for name, value in values.items():
            for i, q in enumerate(c.layout.qubits(name)):
                bits[q] = (value >> i) & 1
        return cls(tuple(bits))

    def register(self, c: Circuit, name: str) -> int:
        return sum(self.bits[q] << i for i, q in enumerate(c.layout.qubits(name)))


def _local_matrix(gate: Gate, local: Dict[int, int], dim: int) -> np.ndarray:
    matrix = np.zeros((dim, dim), dtype=complex)
    if gate.kind in _SINGLE_QUBIT:
        unitary = _SINGLE_QUBIT[gate.kind]
        j = local[gate.target]
        for idx in range(dim):
            bit = (idx >> j) & 1
            for new_bit in (0, 1):
                matrix[(idx & ~(1 << j)) | (new_bit << j), idx] += unitary[new_bit, bit]
        return matrix

    control_mask = sum(1 << local[c] for c in gate.controls)
    flip = 1 << local[gate.target]
    for idx in range(dim):
        image = idx ^ flip if idx & control_mask == control_mask else idx
        matrix[image, idx] = 1
    return matrix


def _block_permutation(gates: Sequence[Gate]) -> Tuple[List[int], np.ndarray]:
    """Exact action of a lowered block on its support; must be a permutation."""
    support = sorted({q for g in gates for q in g.qubits})
    local = {q: i for i, q in enumerate(support)}
    dim = 1 << len(support)

    unitary = np.eye(dim, dtype=complex)
    for gate in gates:
        unitary = _local_matrix(gate, local, dim) @ unitary

    perm = np.argmax(np.abs(unitary), axis=0)
    if not np.allclose(np.abs(unitary[perm, np.arange(dim)]), 1.0, atol=1e-9):
        raise CircuitError(f"block on qubits {support} is not a basis permutation")
    return support, perm


def _compile(gates: Sequence[Gate]) -> List[tuple]:
    program = []
    i = 0
    while i < len(gates):
        gate = gates[i]
        if gate.block is not None:
            j = i
            while j < len(gates) and gates[j].block == gate.block:
                j += 1
            support, perm = _block_permutation(gates[i:j])
            program.append((_OP_BLOCK, support, perm))
            i = j
            continue
        if gate.kind is GateKind.X:
            program.append((_OP_X, gate.target))
        elif gate.kind is GateKind.CNOT:
            program.append((_OP_CNOT, gate.target, gate.controls[0]))
        elif gate.kind is GateKind.TOFFOLI:
            program.append((_OP_TOFFOLI, gate.target, gate.controls[0], gate.controls[1]))
        else:
            raise CircuitError(f"{gate.kind.value} outside a lowered block has no basis action")
        i += 1
    return program


def run_batch(c: Circuit, states: np.ndarray, start: int = 0,
              stop: Optional[int] = None) -> np.ndarray:
    """
    Apply gates [start, stop) of a circuit to a batch of basis states.

    Args:
        c: Circuit to simulate
        states: (num_qubits, batch) array of 0/1 values
        start: First gate index
        stop: One past the last gate index (default: end of circuit)

    Returns:
        New (num_qubits, batch) uint8 array
    """
    if states.ndim != 2 or states.shape[0] != c.num_qubits:
        raise ValidationError(
            f"state batch has shape {states.shape}, circuit has {c.num_qubits} qubits"
        )
    s = np.array(states, dtype=np.uint8, copy=True)
    logger.debug(f"{c.name}: gates [{start}, {len(c.gates) if stop is None else stop}) on {s.shape[1]} states")

    for op in _compile(c.gates[start:stop]):
        code = op[0]
        if code == _OP_CNOT:
            s[op[1]] ^= s[op[2]]
        elif code == _OP_TOFFOLI:
            s[op[1]] ^= s[op[2]] & s[op[3]]
        elif code == _OP_X:
            s[op[1]] ^= 1
        else:
            support, perm = op[1], op[2]
            index = np.zeros(s.shape[1], dtype=np.int64)
            for j, q in enumerate(support):
                index |= s[q].astype(np.int64) << j
            image = perm[index]
            for j, q in enumerate(support):
                s[q] = (image >> j) & 1
    return s


def run_basis(c: Circuit, s: BasisState) -> BasisState:
    """Apply a circuit to one basis state."""
    if len(s) != c.num_qubits:
        raise ValidationError(f"basis state has {len(s)} bits, circuit has {c.num_qubits} qubits")
    column = np.array(s.bits, dtype=np.uint8).reshape(-1, 1)
    return BasisState(tuple(int(b) for b in run_batch(c, column)[:, 0]))


def read_register(states: np.ndarray, qubits: Sequence[int]) -> np.ndarray:
    """Integer value of a register for every state in a batch."""
    if len(qubits) <= _WIDE_REGISTER:
        values = np.zeros(states.shape[1], dtype=np.int64)
        for i, q in enumerate(qubits):
            values |= states[q].astype(np.int64) << i
        return values
    values = np.zeros(states.shape[1], dtype=object)
    for i, q in enumerate(qubits):
        values = values + (states[q].astype(object) << i)
    return values


def write_register(states: np.ndarray, qubits: Sequence[int], values: Sequence[int]) -> None:
    """Set a register across a batch (in place)."""
    if len(qubits) <= _WIDE_REGISTER:
        array = np.asarray(values, dtype=np.int64)
        for i, q in enumerate(qubits):
            states[q] = (array >> i) & 1
        return
    for i, q in enumerate(qubits):
        states[q] = np.array([(int(v) >> i) & 1 for v in values], dtype=np.uint8)


def states_from_assignments(c: Circuit, assignments: Sequence[Mapping[str, int]]) -> np.ndarray:
    """Batch of states: declared initial values, overridden per assignment."""
    base = c.layout.initial_bits(c.num_qubits) if c.layout else [0] * c.num_qubits
    states = np.repeat(np.array(base, dtype=np.uint8).reshape(-1, 1), len(assignments), axis=1)
    if not assignments:
        return states
    for name in assignments[0]:
        write_register(states, c.layout.qubits(name), [a[name] for a in assignments])
    return states


def _all_basis_states(num_qubits: int) -> np.ndarray:
    indices = np.arange(1 << num_qubits, dtype=np.int64)
    return np.array([(indices >> q) & 1 for q in range(num_qubits)], dtype=np.uint8)


def is_bijection(c: Circuit, max_qubits: int = 12) -> bool:
    """True when the circuit's action on all 2^k basis states has no collisions."""
    if c.num_qubits > max_qubits:
        raise ValidationError(f"bijection check limited to {max_qubits} qubits, got {c.num_qubits}")
    images = read_register(run_batch(c, _all_basis_states(c.num_qubits)), range(c.num_qubits))
    return len(np.unique(images)) == 1 << c.num_qubits


def inverse_round_trip(c: Circuit, states: Optional[np.ndarray] = None,
                       samples: int = 64, seed: int = 0) -> bool:
    """True when the inverse circuit undoes the circuit on the given (or random) states."""
    if states is None:
        if c.num_qubits <= 12:
            states = _all_basis_states(c.num_qubits)
        else:
            rng = np.random.default_rng(seed)
            states = rng.integers(0, 2, size=(c.num_qubits, samples), dtype=np.uint8)
    restored = run_batch(invert(c), run_batch(c, states))
    return bool(np.array_equal(restored, states))
