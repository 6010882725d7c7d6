"""
Quantum-by-quantum modular multiplication: fast (doubling + controlled
modular addition) and Montgomery (forward pass with dirty round qubits,
then copy-out and backward pass).
"""
import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

from models.circuit import Circuit, RegisterRole
from synthesis.arithmetic import (
    ArithmeticParams,
    ShiftDirection,
    emit_const_adder,
    emit_const_comparator,
    emit_ctrl_copy,
    emit_ctrl_maj,
    emit_ctrl_uma,
    emit_modular_adder,
    emit_modular_doubler,
    emit_shift,
)
from synthesis.builder import CircuitBuilder
from utils.error_handler import require

logger = logging.getLogger(__name__)

Qubits = Sequence[int]


@dataclass(frozen=True)
class ModMulParams:
    n: int
    modulus: int

    def validate(self) -> "ModMulParams":
        require(self.n >= 2, f"modular multiplication needs n >= 2, got {self.n}")
        ArithmeticParams(self.n, modulus=self.modulus).validate()
        return self


@dataclass(frozen=True)
class MultiplierWorkspace:
    """
    Ancillas shared by the multipliers.

    accumulator (n+2 qubits) and parities (n qubits) are only used by
    Montgomery; headroom doubles as the fast multiplier's carry and
    Montgomery's overflow helper.
    """
    headroom: int
    flag: int
    const_reg: List[int]
    carry_in: int
    accumulator: Optional[List[int]] = None
    parities: Optional[List[int]] = None


def allocate_workspace(b: CircuitBuilder, n: int, montgomery: bool) -> MultiplierWorkspace:
    accumulator = parities = None
    if montgomery:
        parities = b.register("parities", n, RegisterRole.ANCILLA)
        accumulator = b.register("accumulator", n + 2, RegisterRole.ANCILLA)
    headroom = b.register("headroom", 1, RegisterRole.ANCILLA)[0]
    flag = b.register("flag", 1, RegisterRole.FLAG)[0]
    const_reg = b.register("constant", n + 1, RegisterRole.ANCILLA)
    carry_in = b.register("carry_in", 1, RegisterRole.ANCILLA)[0]
    return MultiplierWorkspace(headroom, flag, const_reg, carry_in, accumulator, parities)


def emit_fast_modmul(b: CircuitBuilder, xs: Qubits, ys: Qubits, result: Qubits,
                     ws: MultiplierWorkspace, modulus: int) -> None:
    """
    result := x*y mod N, Horner order from the top bit of x.

    The top bit's addition into an empty register is a controlled copy.
    """
    n = len(xs)
    emit_ctrl_copy(b, ys, result, control=xs[-1])
    for i in range(n - 2, -1, -1):
        emit_modular_doubler(b, result, ws.headroom, ws.flag, ws.const_reg, ws.carry_in, modulus)
        emit_modular_adder(b, ys, result, ws.headroom, ws.flag, ws.const_reg, ws.carry_in,
                           modulus, control=xs[i])


def emit_round_adder(b: CircuitBuilder, addend: Qubits, target: Qubits, carry_in: int,
                     control: int, on_carry: Callable[[int], None]) -> None:
    """
    Controlled target += addend for a carry-in known to be 0.

    Bit 0 parks its carry in the carry-in qubit: one Toffoli computes it and
    one clears it, in place of the MAJ/UMA pair of the general adder.
    """
    b.ccx(addend[0], target[0], carry_in)
    blocks = list(zip([carry_in] + list(addend[1:-1]), target[1:], addend[1:]))
    for c, y, a in blocks:
        emit_ctrl_maj(b, control, c, y, a)
    on_carry(addend[-1])
    for c, y, a in reversed(blocks):
        emit_ctrl_uma(b, control, c, y, a)
    b.ccx(addend[0], target[0], carry_in)
    b.ccx(control, addend[0], target[0])


def emit_montgomery_forward(b: CircuitBuilder, xs: Qubits, ys: Qubits,
                            ws: MultiplierWorkspace, modulus: int) -> List[int]:
    """
    Leave x*y*2^-n mod N in accumulator[:n]; returns those qubits.

    Each round keeps t < 2N in n+1 accumulator bits over a spare zero qubit.
    It adds x_i*y (the carry runs into the top bit and the spare), shifts the
    parity q_i out into parities[i] while halving, then adds q_i*(N+1)/2,
    which leaves (t + x_i*y + q_i*N) / 2. The spare took bit n+1 and now
    holds bit n, so it swaps roles with the emptied top qubit. Round 0 starts
    from t = 0 and copies y's upper bits straight into their halved places.
    A final conditional subtraction of N brings the value below N and leaves
    the flag dirty.
    """
    n = len(xs)
    half = (modulus + 1) // 2
    const_reg = ws.const_reg[:n]
    parities = ws.parities
    acc = list(ws.accumulator[:n + 1])
    spare = ws.accumulator[n + 1]

    emit_ctrl_copy(b, ys[1:], acc[:n - 1], control=xs[0])
    b.ccx(xs[0], ys[0], parities[0])
    emit_const_adder(b, acc[:n], half, const_reg, ws.carry_in, acc[n], control=parities[0])

    for i in range(1, n):

        def carry_into_top(carry: int, control: int = xs[i], high: int = acc[n],
                           overflow: int = spare) -> None:
            # (high, overflow) += control & carry, with overflow known 0
            b.ccx(control, carry, ws.headroom)
            b.ccx(ws.headroom, high, overflow)
            b.cx(ws.headroom, high)
            b.ccx(control, carry, ws.headroom)

        emit_round_adder(b, ys, acc[:n], ws.carry_in, xs[i], carry_into_top)
        emit_shift(b, [parities[i]] + acc, ShiftDirection.RIGHT)
        acc[n], spare = spare, acc[n]
        emit_const_adder(b, acc[:n], half, const_reg, ws.carry_in, acc[n], control=parities[i])

    result, top = acc[:n], acc[n]
    emit_const_comparator(b, result + [top], modulus, ws.const_reg, ws.carry_in, ws.flag)
    b.x(ws.flag)
    with b.inverted():
        emit_const_adder(b, result, modulus, const_reg, ws.carry_in, top, control=ws.flag)
    return result


def emit_montgomery_full(b: CircuitBuilder, xs: Qubits, ys: Qubits, out: Qubits,
                         ws: MultiplierWorkspace, modulus: int) -> None:
    """out := x*y*2^-n mod N with every workspace qubit restored."""
    result = emit_montgomery_forward(b, xs, ys, ws, modulus)
    emit_ctrl_copy(b, result, out)
    with b.inverted():
        emit_montgomery_forward(b, xs, ys, ws, modulus)


def build_ctrl_copy(n: int, controlled: bool = True) -> Circuit:
    """destination := source when the control is 1 (6n CNOTs), or always (n CNOTs)."""
    ArithmeticParams(n).validate()
    b = CircuitBuilder("ctrl-copy" if controlled else "copy")
    control = b.register("control", 1, RegisterRole.CONTROL)[0] if controlled else None
    source = b.register("source", n, RegisterRole.INPUT)
    destination = b.register("destination", n, RegisterRole.OUTPUT)
    emit_ctrl_copy(b, source, destination, control=control)
    return b.build()


def build_fast_modmul(n: int, modulus: int) -> Circuit:
    """|x>|y>|0> -> |x>|y>|x*y mod N>."""
    ModMulParams(n, modulus).validate()
    b = CircuitBuilder("fast-modmul")
    xs = b.register("x", n, RegisterRole.INPUT)
    ys = b.register("y", n, RegisterRole.INPUT)
    result = b.register("result", n, RegisterRole.OUTPUT)
    ws = allocate_workspace(b, n, montgomery=False)
    emit_fast_modmul(b, xs, ys, result, ws, modulus)
    return b.build()


def build_montgomery_forward(n: int, modulus: int) -> Circuit:
    """
    |x>|y>|0> -> |x>|y>|x*y*2^-n mod N>|junk>.

    The layout splits the accumulator into the result and its two top
    qubits (restored to 0); the round parities are garbage.
    """
    ModMulParams(n, modulus).validate()
    b = CircuitBuilder("montgomery-forward")
    xs = b.register("x", n, RegisterRole.INPUT)
    ys = b.register("y", n, RegisterRole.INPUT)
    parities = b.register("parities", n, RegisterRole.GARBAGE)
    result = b.register("result", n, RegisterRole.OUTPUT)
    top = b.register("top", 2, RegisterRole.ANCILLA)
    headroom = b.register("headroom", 1, RegisterRole.ANCILLA)[0]
    flag = b.register("flag", 1, RegisterRole.GARBAGE)[0]
    const_reg = b.register("constant", n + 1, RegisterRole.ANCILLA)
    carry_in = b.register("carry_in", 1, RegisterRole.ANCILLA)[0]
    ws = MultiplierWorkspace(headroom, flag, const_reg, carry_in, result + top, parities)
    emit_montgomery_forward(b, xs, ys, ws, modulus)
    return b.build()


def build_montgomery_full(n: int, modulus: int) -> Circuit:
    """|x>|y>|0> -> |x>|y>|x*y*2^-n mod N>, all ancillas clean."""
    ModMulParams(n, modulus).validate()
    b = CircuitBuilder("montgomery-full")
    xs = b.register("x", n, RegisterRole.INPUT)
    ys = b.register("y", n, RegisterRole.INPUT)
    out = b.register("result", n, RegisterRole.OUTPUT)
    ws = allocate_workspace(b, n, montgomery=True)
    emit_montgomery_full(b, xs, ys, out, ws, modulus)
    circuit = b.build()
    logger.debug(f"montgomery-full n={n} N={modulus}: {circuit.cnot_count} CNOTs, {circuit.num_qubits} qubits")
    return circuit
