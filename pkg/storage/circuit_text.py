"""
Text export and import of circuits in a QASM-subset dialect.

Header comments carry the qubit count, register layout, sections and
binding metadata; gate lines look like ``cx q[0],q[1]``. Gate tags and
lowering block ids ride along as trailing comments.
"""
import logging
import re
from typing import List, Optional

from models.circuit import Circuit, Gate, GateKind, Register, RegisterLayout, RegisterRole, Section
from utils.error_handler import CircuitError

logger = logging.getLogger(__name__)

_GATE_LINE = re.compile(
    r"^(?P<kind>x|cx|ccx|h|t|tdg)\s+(?P<args>q\[\d+\](?:\s*,\s*q\[\d+\])*)\s*;?\s*(?://\s*(?P<note>.*))?$"
)
_QUBIT = re.compile(r"q\[(\d+)\]")


def _gate_line(gate: Gate) -> str:
    args = ",".join(f"q[{q}]" for q in gate.qubits)
    line = f"{gate.kind.value} {args}"
    notes = []
    if gate.tag:
        notes.append(gate.tag)
    if gate.block is not None:
        notes.append(f"block {gate.block}")
    if notes:
        line += "  // " + " ".join(notes)
    return line


def export_text(c: Circuit) -> str:
    """
    Serialize a circuit to text.

    Args:
        c: Circuit to export

    Returns:
        Header comment lines followed by one line per gate
    """
    lines = []
    if c.name:
        lines.append(f"// circuit: {c.name}")
    lines.append(f"// qubits: {c.num_qubits}")
    for register in c.layout:
        lines.append(
            f"// register {register.name} {register.start} {register.width} "
            f"{register.role.value} {register.initial}"
        )
    for section in c.sections:
        lines.append(f"// section {section.name} {section.start} {section.stop}")
    if c.bound_bits:
        lines.append(f"// bound-bits {c.bound_bits}")
    lines.extend(_gate_line(gate) for gate in c.gates)
    return "\n".join(lines) + "\n"


def _parse_note(note: Optional[str], line_no: int):
    tag, block = None, None
    if not note:
        return tag, block
    words = note.split()
    i = 0
    while i < len(words):
        if words[i] == "block" and i + 1 < len(words):
            try:
                block = int(words[i + 1])
            except ValueError:
                raise CircuitError(f"line {line_no}: bad block id {words[i + 1]!r}")
            i += 2
        else:
            tag = words[i]
            i += 1
    return tag, block


def parse_text(text: str) -> Circuit:
    """Inverse of export_text."""
    name = ""
    num_qubits = None
    registers: List[Register] = []
    sections: List[Section] = []
    bound_bits = 0
    gates: List[Gate] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("//"):
            body = line[2:].strip()
            if body.startswith("circuit:"):
                name = body[len("circuit:"):].strip()
            elif body.startswith("qubits:"):
                num_qubits = int(body[len("qubits:"):])
            elif body.startswith("register "):
                parts = body.split()
                if len(parts) != 6:
                    raise CircuitError(f"line {line_no}: malformed register header")
                registers.append(Register(parts[1], int(parts[2]), int(parts[3]),
                                          RegisterRole(parts[4]), int(parts[5])))
            elif body.startswith("section "):
                parts = body.split()
                sections.append(Section(parts[1], int(parts[2]), int(parts[3])))
            elif body.startswith("bound-bits "):
                bound_bits = int(body.split()[1])
            continue

        match = _GATE_LINE.match(line)
        if not match:
            raise CircuitError(f"line {line_no}: cannot parse {line!r}")
        qubits = [int(q) for q in _QUBIT.findall(match.group("args"))]
        tag, block = _parse_note(match.group("note"), line_no)
        gates.append(Gate(GateKind(match.group("kind")), qubits[-1], tuple(qubits[:-1]), tag, block))

    if num_qubits is None:
        num_qubits = max((max(g.qubits) for g in gates), default=0) + 1
        logger.debug(f"no qubit header, inferred {num_qubits} qubits")

    return Circuit(num_qubits, tuple(gates), RegisterLayout(tuple(registers)), name,
                   tuple(sections), bound_bits)
