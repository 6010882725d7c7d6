"""
Gate-level circuit representation: gates, register layouts, circuits.

Qubit i of a register carries weight 2^i (little-endian throughout).
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from config_shor import COST_SETTINGS
from utils.error_handler import CircuitError

TOFFOLI_CNOT_COST = COST_SETTINGS["toffoli_cnot_cost"]
BIND_TAG = "bind"


class GateKind(str, Enum):
    """Gate kinds. H, T and TDG only appear inside lowered Toffoli blocks."""
    X = "x"
    CNOT = "cx"
    TOFFOLI = "ccx"
    H = "h"
    T = "t"
    TDG = "tdg"


CLASSICAL_KINDS = (GateKind.X, GateKind.CNOT, GateKind.TOFFOLI)

_CONTROL_COUNT = {
    GateKind.X: 0,
    GateKind.CNOT: 1,
    GateKind.TOFFOLI: 2,
    GateKind.H: 0,
    GateKind.T: 0,
    GateKind.TDG: 0,
}


@dataclass(frozen=True)
class Gate:
    """
    One primitive acting on a target qubit, optionally controlled.
    """
    kind: GateKind
    target: int
    controls: Tuple[int, ...] = ()
    tag: Optional[str] = None
    block: Optional[int] = None

    def __post_init__(self):
        kind = GateKind(self.kind)
        controls = tuple(int(c) for c in self.controls)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "controls", controls)

        if self.target < 0 or any(c < 0 for c in controls):
            raise CircuitError(f"negative qubit index in {kind.value} gate")
        if len(controls) != _CONTROL_COUNT[kind]:
            raise CircuitError(
                f"{kind.value} takes {_CONTROL_COUNT[kind]} controls, got {len(controls)}"
            )
        if self.target in controls or len(set(controls)) != len(controls):
            raise CircuitError(f"{kind.value} gate qubits must be distinct")

    @property
    def qubits(self) -> Tuple[int, ...]:
        return self.controls + (self.target,)

    @property
    def cnot_cost(self) -> int:
        if self.kind is GateKind.CNOT:
            return 1
        if self.kind is GateKind.TOFFOLI:
            return TOFFOLI_CNOT_COST
        return 0

    @property
    def is_classical(self) -> bool:
        return self.kind in CLASSICAL_KINDS

    def inverse(self) -> "Gate":
        """All kinds are self-inverse except T and T-dagger, which swap."""
        if self.kind is GateKind.T:
            return Gate(GateKind.TDG, self.target, self.controls, self.tag, self.block)
        if self.kind is GateKind.TDG:
            return Gate(GateKind.T, self.target, self.controls, self.tag, self.block)
        return self

    def remapped(self, mapping: Mapping[int, int], block_offset: int = 0) -> "Gate":
        block = None if self.block is None else self.block + block_offset
        return Gate(
            self.kind,
            mapping[self.target],
            tuple(mapping[c] for c in self.controls),
            self.tag,
            block,
        )


class RegisterRole(str, Enum):
    """
    Declared purpose of a register.

    ANCILLA and FLAG registers must return to their initial value; INPUT and
    CONTROL registers must come back unchanged unless an oracle says
    otherwise. GARBAGE registers are left dirty on purpose.
    """
    INPUT = "input"
    OUTPUT = "output"
    ANCILLA = "ancilla"
    FLAG = "flag"
    CONTROL = "control"
    GARBAGE = "garbage"


CLEAN_ROLES = (RegisterRole.ANCILLA, RegisterRole.FLAG)
PRESERVED_ROLES = (RegisterRole.INPUT, RegisterRole.CONTROL)


@dataclass(frozen=True)
class Register:
    """A named, contiguous span of qubits."""
    name: str
    start: int
    width: int
    role: RegisterRole
    initial: int = 0

    def __post_init__(self):
        object.__setattr__(self, "role", RegisterRole(self.role))
        if self.start < 0 or self.width < 1:
            raise CircuitError(f"register {self.name} has an empty or negative span")
        if not 0 <= self.initial < (1 << self.width):
            raise CircuitError(f"initial value of {self.name} does not fit {self.width} qubits")

    @property
    def stop(self) -> int:
        return self.start + self.width

    @property
    def qubits(self) -> List[int]:
        return list(range(self.start, self.stop))

    def to_dict(self) -> Dict[str, Union[str, int]]:
        return {
            "name": self.name,
            "start": self.start,
            "width": self.width,
            "role": self.role.value,
            "initial": self.initial,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Union[str, int]]) -> "Register":
        return cls(
            name=data["name"],
            start=int(data["start"]),
            width=int(data["width"]),
            role=RegisterRole(data["role"]),
            initial=int(data.get("initial", 0)),
        )


@dataclass(frozen=True)
class RegisterLayout:
    """Register entries of a circuit, in qubit order."""
    registers: Tuple[Register, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "registers", tuple(self.registers))
        names = [r.name for r in self.registers]
        if len(set(names)) != len(names):
            raise CircuitError("register names must be unique")

    def __iter__(self) -> Iterator[Register]:
        return iter(self.registers)

    def __contains__(self, name: str) -> bool:
        return any(r.name == name for r in self.registers)

    def __getitem__(self, name: str) -> Register:
        for register in self.registers:
            if register.name == name:
                return register
        raise CircuitError(f"no register named {name}")

    def __bool__(self) -> bool:
        return bool(self.registers)

    @property
    def names(self) -> List[str]:
        return [r.name for r in self.registers]

    def qubits(self, name: str) -> List[int]:
        return self[name].qubits

    def validate(self, num_qubits: int) -> None:
        """Spans must be disjoint and cover [0, num_qubits) exactly."""
        covered = [False] * num_qubits
        for register in self.registers:
            if register.stop > num_qubits:
                raise CircuitError(f"register {register.name} exceeds {num_qubits} qubits")
            for q in register.qubits:
                if covered[q]:
                    raise CircuitError(f"qubit {q} belongs to two registers")
                covered[q] = True
        if not all(covered):
            raise CircuitError("register layout does not cover every qubit")

    def initial_bits(self, num_qubits: int) -> List[int]:
        bits = [0] * num_qubits
        for register in self.registers:
            for i, q in enumerate(register.qubits):
                bits[q] = (register.initial >> i) & 1
        return bits

    def extended(self, name: str, start: int, width: int,
                 role: RegisterRole = RegisterRole.ANCILLA) -> "RegisterLayout":
        return RegisterLayout(self.registers + (Register(name, start, width, role),))

    def with_roles(self, roles: Mapping[str, RegisterRole]) -> "RegisterLayout":
        return RegisterLayout(tuple(
            Register(r.name, r.start, r.width, roles.get(r.name, r.role), r.initial)
            for r in self.registers
        ))

    def to_dict(self) -> List[Dict[str, Union[str, int]]]:
        return [r.to_dict() for r in self.registers]

    @classmethod
    def from_dict(cls, data: Sequence[Dict[str, Union[str, int]]]) -> "RegisterLayout":
        return cls(tuple(Register.from_dict(entry) for entry in data))


@dataclass(frozen=True)
class Section:
    """Named half-open gate index range [start, stop)."""
    name: str
    start: int
    stop: int


@dataclass(frozen=True)
class Circuit:
    """
    Immutable gate sequence over a fixed number of qubits.

    bound_bits counts constant-bit positions bound under a quantum control;
    each such position costs one CNOT per binding when the bit is 1, which
    averages to one half.
    """
    num_qubits: int
    gates: Tuple[Gate, ...] = ()
    layout: RegisterLayout = field(default_factory=RegisterLayout)
    name: str = ""
    sections: Tuple[Section, ...] = ()
    bound_bits: int = 0

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "sections", tuple(self.sections))
        if self.num_qubits < 1:
            raise CircuitError("a circuit needs at least one qubit")
        for gate in self.gates:
            if max(gate.qubits) >= self.num_qubits:
                raise CircuitError(
                    f"gate {gate.kind.value} on {gate.qubits} exceeds {self.num_qubits} qubits"
                )
        if self.layout:
            self.layout.validate(self.num_qubits)
        for section in self.sections:
            if not 0 <= section.start <= section.stop <= len(self.gates):
                raise CircuitError(f"section {section.name} is out of range")

    def __len__(self) -> int:
        return len(self.gates)

    @property
    def cnot_count(self) -> int:
        return cnot_count(self)

    @property
    def binding_cnot_count(self) -> int:
        return sum(1 for g in self.gates if g.tag == BIND_TAG and g.kind is GateKind.CNOT)

    @property
    def adjusted_cnot_count(self) -> int:
        """CNOT count with controlled bindings charged at their average cost."""
        return self.cnot_count - self.binding_cnot_count + self.bound_bits // 2

    def gate_counts(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for gate in self.gates:
            counts[gate.kind.value] = counts.get(gate.kind.value, 0) + 1
        return counts

    def section(self, name: str) -> Section:
        for section in self.sections:
            if section.name == name:
                return section
        raise CircuitError(f"no section named {name}")

    def section_cnot_counts(self) -> Dict[str, int]:
        return {
            s.name: sum(g.cnot_cost for g in self.gates[s.start:s.stop])
            for s in self.sections
        }


def cnot_count(c: Circuit) -> int:
    """Number of CNOTs plus six per Toffoli; X and lowering markers are free."""
    return sum(gate.cnot_cost for gate in c.gates)


def toffoli_network(control_a: int, control_b: int, target: int, block: int) -> List[Gate]:
    """Standard 6-CNOT, 7-T, 2-H realization of one Toffoli."""
    a, b, c = control_a, control_b, target
    steps = [
        (GateKind.H, c, ()),
        (GateKind.CNOT, c, (b,)),
        (GateKind.TDG, c, ()),
        (GateKind.CNOT, c, (a,)),
        (GateKind.T, c, ()),
        (GateKind.CNOT, c, (b,)),
        (GateKind.TDG, c, ()),
        (GateKind.CNOT, c, (a,)),
        (GateKind.T, b, ()),
        (GateKind.T, c, ()),
        (GateKind.H, c, ()),
        (GateKind.CNOT, b, (a,)),
        (GateKind.T, a, ()),
        (GateKind.TDG, b, ()),
        (GateKind.CNOT, b, (a,)),
    ]
    return [Gate(kind, t, controls, block=block) for kind, t, controls in steps]


def decompose_toffoli(c: Circuit) -> Circuit:
    """
    Replace every Toffoli with its Clifford+T network.

    Each network shares a block id so the simulator can evaluate it as one
    basis permutation on its three qubits.
    """
    existing = [g.block for g in c.gates if g.block is not None]
    next_block = max(existing) + 1 if existing else 0

    gates: List[Gate] = []
    positions: List[int] = []
    for gate in c.gates:
        positions.append(len(gates))
        if gate.kind is GateKind.TOFFOLI:
            gates.extend(toffoli_network(gate.controls[0], gate.controls[1], gate.target, next_block))
            next_block += 1
        else:
            gates.append(gate)
    positions.append(len(gates))

    sections = tuple(
        Section(s.name, positions[s.start], positions[s.stop]) for s in c.sections
    )
    return Circuit(c.num_qubits, tuple(gates), c.layout, c.name, sections, c.bound_bits)


def invert(c: Circuit) -> Circuit:
    """Reverse the gate order; T and T-dagger swap, everything else is self-inverse."""
    total = len(c.gates)
    gates = tuple(gate.inverse() for gate in reversed(c.gates))
    sections = tuple(
        Section(s.name, total - s.stop, total - s.start) for s in reversed(c.sections)
    )
    return Circuit(c.num_qubits, gates, c.layout, c.name, sections, c.bound_bits)


def concat(a: Circuit, b: Circuit, remap: Optional[Mapping[int, int]] = None) -> Circuit:
    """
    Gates of a followed by the (remapped) gates of b.

    Unlisted qubits of b keep their index. The qubit space grows to the
    largest mapped index; grown qubits are declared as an ANCILLA register
    named extra<k>, k being the first new index.
    """
    mapping = {q: q for q in range(b.num_qubits)}
    for source, destination in (remap or {}).items():
        if not 0 <= source < b.num_qubits:
            raise CircuitError(f"remap source {source} is not a qubit of {b.name or 'b'}")
        if destination < 0:
            raise CircuitError(f"remap destination {destination} is negative")
        mapping[source] = destination
    if len(set(mapping.values())) != len(mapping):
        raise CircuitError("remap collision: two qubits mapped to one index")

    if not a.gates and not a.layout and not a.sections and not remap:
        return b

    num_qubits = max(a.num_qubits, max(mapping.values()) + 1)
    a_blocks = [g.block for g in a.gates if g.block is not None]
    offset = max(a_blocks) + 1 if a_blocks else 0

    gates = a.gates + tuple(g.remapped(mapping, offset) for g in b.gates)
    shift = len(a.gates)
    sections = a.sections + tuple(
        Section(s.name, s.start + shift, s.stop + shift) for s in b.sections
    )

    layout = a.layout
    if layout and num_qubits > a.num_qubits:
        layout = layout.extended(f"extra{a.num_qubits}", a.num_qubits, num_qubits - a.num_qubits)

    return Circuit(num_qubits, gates, layout, a.name or b.name, sections,
                   a.bound_bits + b.bound_bits)
