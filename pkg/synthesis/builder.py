"""
Mutable gate accumulator used by every circuit builder.
"""
from contextlib import contextmanager
from typing import Iterator, List, Optional, Sequence

from models.circuit import BIND_TAG, Circuit, Gate, GateKind, Register, RegisterLayout, RegisterRole, Section
from utils.error_handler import CircuitError
from utils.number_theory import bits_of


class CircuitBuilder:
    """
    Allocates registers and appends gates; build() freezes the result.

    Sub-blocks are written by emit_* functions that take the builder and
    plain qubit index lists, so composite circuits share ancillas.
    """

    def __init__(self, name: str):
        self.name = name
        self.gates: List[Gate] = []
        self._registers: List[Register] = []
        self._sections: List[Section] = []
        self._num_qubits = 0
        self._inverted_depth = 0
        self.bound_bits = 0

    @property
    def num_qubits(self) -> int:
        return self._num_qubits

    def register(self, name: str, width: int, role: RegisterRole, initial: int = 0) -> List[int]:
        """Allocate the next width qubits as a named register."""
        register = Register(name, self._num_qubits, width, role, initial)
        self._registers.append(register)
        self._num_qubits += width
        return register.qubits

    def x(self, target: int) -> None:
        self.gates.append(Gate(GateKind.X, target))

    def cx(self, control: int, target: int, tag: Optional[str] = None) -> None:
        self.gates.append(Gate(GateKind.CNOT, target, (control,), tag))

    def ccx(self, control_a: int, control_b: int, target: int) -> None:
        self.gates.append(Gate(GateKind.TOFFOLI, target, (control_a, control_b)))

    def bind(self, qubits: Sequence[int], value: int, control: Optional[int] = None) -> None:
        """
        XOR a classical constant into a register.

        Uncontrolled binding is X gates only. Controlled binding uses one
        tagged CNOT per set bit and records the bound width for the
        average-cost accounting.
        """
        if value >> len(qubits):
            raise CircuitError(f"constant {value} does not fit {len(qubits)} qubits")
        for q, bit in zip(qubits, bits_of(value, len(qubits))):
            if not bit:
                continue
            if control is None:
                self.x(q)
            else:
                self.cx(control, q, tag=BIND_TAG)
        if control is not None:
            self.bound_bits += len(qubits)

    @contextmanager
    def inverted(self) -> Iterator[None]:
        """Gates emitted inside the block are replaced by their inverse sequence."""
        start = len(self.gates)
        self._inverted_depth += 1
        try:
            yield
        finally:
            self._inverted_depth -= 1
        block = self.gates[start:]
        del self.gates[start:]
        self.gates.extend(gate.inverse() for gate in reversed(block))

    @contextmanager
    def section(self, name: str) -> Iterator[None]:
        """Record the gate range emitted inside the block under a name."""
        if self._inverted_depth:
            raise CircuitError("sections cannot be opened inside an inverted block")
        start = len(self.gates)
        yield
        self._sections.append(Section(name, start, len(self.gates)))

    def build(self) -> Circuit:
        return Circuit(
            num_qubits=max(self._num_qubits, 1),
            gates=tuple(self.gates),
            layout=RegisterLayout(tuple(self._registers)),
            name=self.name,
            sections=tuple(self._sections),
            bound_bits=self.bound_bits,
        )
