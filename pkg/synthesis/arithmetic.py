"""
Adders, comparators, shifts and modular adders built from MAJ/UMA blocks.

Every public build_* function allocates a register layout and calls the
matching emit_* routine; composite circuits call the emit_* routines
directly on shared ancillas.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence

from models.circuit import Circuit, RegisterRole
from synthesis.builder import CircuitBuilder
from utils.error_handler import require
from utils.number_theory import bits_of

Qubits = Sequence[int]


class ShiftDirection(str, Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class ArithmeticParams:
    """
    Width and optional classical operands of an arithmetic circuit.
    """
    n: int
    constant: Optional[int] = None
    modulus: Optional[int] = None
    controlled: bool = False

    def validate(self) -> "ArithmeticParams":
        require(isinstance(self.n, int) and self.n >= 1, f"register width must be >= 1, got {self.n}")
        if self.constant is not None:
            require(0 <= self.constant < (1 << self.n),
                    f"constant {self.constant} does not fit {self.n} bits")
        if self.modulus is not None:
            require(self.modulus >= 3, f"modulus must be >= 3, got {self.modulus}")
            require(self.modulus % 2 == 1, f"modulus must be odd, got {self.modulus}")
            require(self.modulus < (1 << self.n),
                    f"modulus {self.modulus} does not fit {self.n} bits")
        return self


# MAJ / UMA blocks on (carry, target bit, operand bit)

def emit_maj(b: CircuitBuilder, c: int, y: int, a: int) -> None:
    b.cx(a, y)
    b.cx(a, c)
    b.ccx(c, y, a)


def emit_maj_inverse(b: CircuitBuilder, c: int, y: int, a: int) -> None:
    b.ccx(c, y, a)
    b.cx(a, c)
    b.cx(a, y)


def emit_uma(b: CircuitBuilder, c: int, y: int, a: int) -> None:
    b.ccx(c, y, a)
    b.cx(a, c)
    b.cx(c, y)


def emit_ctrl_maj(b: CircuitBuilder, ctrl: int, c: int, y: int, a: int) -> None:
    b.ccx(ctrl, a, y)
    b.cx(a, c)
    b.ccx(c, y, a)


def emit_ctrl_uma(b: CircuitBuilder, ctrl: int, c: int, y: int, a: int) -> None:
    b.ccx(c, y, a)
    b.cx(a, c)
    b.ccx(ctrl, c, y)


def emit_cdk_adder(b: CircuitBuilder, xs: Qubits, ys: Qubits, carry_in: int,
                   carry_out: Optional[int] = None, control: Optional[int] = None,
                   on_carry: Optional[Callable[[int], None]] = None) -> None:
    """
    ys += xs over len(xs) bits; the carry lands in carry_out.

    The operand register xs holds the running carries between the MAJ and
    UMA passes and is restored. on_carry replaces the carry-out gate and
    receives the qubit holding the final carry.
    """
    carries = [carry_in] + list(xs[:-1])
    for c, y, a in zip(carries, ys, xs):
        if control is None:
            emit_maj(b, c, y, a)
        else:
            emit_ctrl_maj(b, control, c, y, a)

    if on_carry is not None:
        on_carry(xs[-1])
    elif carry_out is not None:
        if control is None:
            b.cx(xs[-1], carry_out)
        else:
            b.ccx(control, xs[-1], carry_out)

    for c, y, a in reversed(list(zip(carries, ys, xs))):
        if control is None:
            emit_uma(b, c, y, a)
        else:
            emit_ctrl_uma(b, control, c, y, a)


def emit_const_adder(b: CircuitBuilder, ys: Qubits, constant: int, const_reg: Qubits,
                     carry_in: int, carry_out: int, control: Optional[int] = None) -> None:
    """
    ys += constant with the carry into carry_out.

    Uncontrolled: the operand bits are classically known, so the CNOTs that
    read them become X gates. Controlled: the constant is bound under the
    control and a full adder runs.
    """
    n = len(ys)
    const_reg = list(const_reg[:n])
    if control is not None:
        b.bind(const_reg, constant, control=control)
        emit_cdk_adder(b, const_reg, ys, carry_in, carry_out)
        b.bind(const_reg, constant, control=control)
        return

    bits = bits_of(constant, n)
    carries = [carry_in] + const_reg[:-1]
    b.bind(const_reg, constant)
    for c, y, a, bit in zip(carries, ys, const_reg, bits):
        if bit:
            b.x(y)
            b.x(c)
        b.ccx(c, y, a)
    b.cx(const_reg[-1], carry_out)
    for c, y, a, bit in reversed(list(zip(carries, ys, const_reg, bits))):
        b.ccx(c, y, a)
        if bit:
            b.x(c)
        b.cx(c, y)
    b.bind(const_reg, constant)


def emit_comparator(b: CircuitBuilder, xs: Qubits, ys: Qubits, flag: int, carry_in: int,
                    control: Optional[int] = None) -> None:
    """
    flag ^= [x < y] (only when control is set, if given).

    The MAJ cascade over x and the complement of y with carry-in 1 yields
    the carry of x - y, i.e. [x >= y]; the cascade is then undone.
    """
    carries = [carry_in] + list(xs[:-1])
    for q in ys:
        b.x(q)
    b.x(carry_in)
    for c, y, a in zip(carries, ys, xs):
        emit_maj(b, c, y, a)
    if control is None:
        b.cx(xs[-1], flag)
    else:
        b.ccx(control, xs[-1], flag)
    for c, y, a in reversed(list(zip(carries, ys, xs))):
        emit_maj_inverse(b, c, y, a)
    b.x(carry_in)
    for q in ys:
        b.x(q)
    if control is None:
        b.x(flag)
    else:
        b.cx(control, flag)


def emit_const_comparator(b: CircuitBuilder, xs: Qubits, constant: int, const_reg: Qubits,
                          carry_in: int, flag: int) -> None:
    """flag ^= [x < constant], using the carry of constant + (2^n - 1 - x)."""
    n = len(xs)
    const_reg = list(const_reg[:n])
    bits = bits_of(constant, n)
    carries = [carry_in] + const_reg[:-1]

    for q in xs:
        b.x(q)
    b.bind(const_reg, constant)
    for c, y, a, bit in zip(carries, xs, const_reg, bits):
        if bit:
            b.x(y)
            b.x(c)
        b.ccx(c, y, a)
    b.cx(const_reg[-1], flag)
    for c, y, a, bit in reversed(list(zip(carries, xs, const_reg, bits))):
        b.ccx(c, y, a)
        if bit:
            b.x(c)
            b.x(y)
    b.bind(const_reg, constant)
    for q in xs:
        b.x(q)


def emit_modular_adder(b: CircuitBuilder, xs: Qubits, ys: Qubits, carry: int, flag: int,
                       const_reg: Qubits, carry_in: int, modulus: int,
                       control: Optional[int] = None) -> None:
    """
    ys := (x + y) mod N for x, y < N.

    Add, compare the n+1-bit sum with N, conditionally subtract N, then
    restore the flag by comparing the result with x (result < x exactly
    when a reduction happened). Only the first addition and the last
    comparison see the control.
    """
    n = len(ys)
    emit_cdk_adder(b, xs, ys, carry_in, carry, control=control)
    emit_const_comparator(b, list(ys) + [carry], modulus, const_reg, carry_in, flag)
    b.x(flag)
    with b.inverted():
        emit_const_adder(b, ys, modulus, const_reg[:n], carry_in, carry, control=flag)
    emit_comparator(b, ys, xs, flag, carry_in, control=control)


def emit_shift(b: CircuitBuilder, qubits: Qubits, direction: ShiftDirection) -> None:
    """
    Double (LEFT) or halve (RIGHT) an n+1-qubit register in place.

    The vacated end must hold 0, so each move is two CNOTs into a known-zero
    qubit rather than a three-CNOT swap.
    """
    qubits = list(qubits)
    if ShiftDirection(direction) is ShiftDirection.LEFT:
        for i in range(len(qubits) - 1, 0, -1):
            b.cx(qubits[i - 1], qubits[i])
            b.cx(qubits[i], qubits[i - 1])
    else:
        for i in range(len(qubits) - 1):
            b.cx(qubits[i + 1], qubits[i])
            b.cx(qubits[i], qubits[i + 1])


def emit_modular_doubler(b: CircuitBuilder, xs: Qubits, headroom: int, flag: int,
                         const_reg: Qubits, carry_in: int, modulus: int) -> None:
    """
    xs := 2x mod N for x < N, N odd.

    After the conditional subtraction the result is odd exactly when N was
    subtracted, so its low bit clears the flag.
    """
    n = len(xs)
    wide = list(xs) + [headroom]
    emit_shift(b, wide, ShiftDirection.LEFT)
    emit_const_comparator(b, wide, modulus, const_reg, carry_in, flag)
    b.x(flag)
    with b.inverted():
        emit_const_adder(b, xs, modulus, const_reg[:n], carry_in, headroom, control=flag)
    b.cx(xs[0], flag)


def emit_ctrl_copy(b: CircuitBuilder, source: Qubits, destination: Qubits,
                   control: Optional[int] = None) -> None:
    for s, d in zip(source, destination):
        if control is None:
            b.cx(s, d)
        else:
            b.ccx(control, s, d)


def _control_register(b: CircuitBuilder, controlled: bool) -> Optional[int]:
    return b.register("control", 1, RegisterRole.CONTROL)[0] if controlled else None


def build_adder(n: int, controlled: bool = False) -> Circuit:
    """
    |x>|y>|0> -> |x>|x+y mod 2^n>|carry>.

    Args:
        n: Operand width
        controlled: Add only when the control qubit is 1

    Returns:
        Circuit with 16n+1 (uncontrolled) or 26n+6 (controlled) CNOTs
    """
    ArithmeticParams(n, controlled=controlled).validate()
    b = CircuitBuilder("ctrl-adder" if controlled else "adder")
    control = _control_register(b, controlled)
    xs = b.register("x", n, RegisterRole.INPUT)
    ys = b.register("y", n, RegisterRole.OUTPUT)
    carry_in = b.register("carry_in", 1, RegisterRole.ANCILLA)[0]
    carry_out = b.register("carry_out", 1, RegisterRole.OUTPUT)[0]
    emit_cdk_adder(b, xs, ys, carry_in, carry_out, control=control)
    return b.build()


def build_const_adder(n: int, constant: int, controlled: bool = False) -> Circuit:
    """|y>|0> -> |y + constant> across y and the carry qubit."""
    ArithmeticParams(n, constant=constant, controlled=controlled).validate()
    b = CircuitBuilder("ctrl-const-adder" if controlled else "const-adder")
    control = _control_register(b, controlled)
    ys = b.register("y", n, RegisterRole.OUTPUT)
    carry_out = b.register("carry_out", 1, RegisterRole.OUTPUT)[0]
    const_reg = b.register("constant", n, RegisterRole.ANCILLA)
    carry_in = b.register("carry_in", 1, RegisterRole.ANCILLA)[0]
    emit_const_adder(b, ys, constant, const_reg, carry_in, carry_out, control=control)
    return b.build()


def build_comparator(n: int, controlled: bool = False) -> Circuit:
    """flag := [x < y]; x and y restored."""
    ArithmeticParams(n, controlled=controlled).validate()
    b = CircuitBuilder("ctrl-comparator" if controlled else "comparator")
    control = _control_register(b, controlled)
    xs = b.register("x", n, RegisterRole.INPUT)
    ys = b.register("y", n, RegisterRole.INPUT)
    flag = b.register("flag", 1, RegisterRole.OUTPUT)[0]
    carry_in = b.register("carry_in", 1, RegisterRole.ANCILLA)[0]
    emit_comparator(b, xs, ys, flag, carry_in, control=control)
    return b.build()


def build_const_comparator(n: int, constant: int) -> Circuit:
    """flag := [x < constant]."""
    ArithmeticParams(n, constant=constant).validate()
    b = CircuitBuilder("const-comparator")
    xs = b.register("x", n, RegisterRole.INPUT)
    flag = b.register("flag", 1, RegisterRole.OUTPUT)[0]
    const_reg = b.register("constant", n, RegisterRole.ANCILLA)
    carry_in = b.register("carry_in", 1, RegisterRole.ANCILLA)[0]
    emit_const_comparator(b, xs, constant, const_reg, carry_in, flag)
    return b.build()


def build_modular_adder(n: int, modulus: int, controlled: bool = False) -> Circuit:
    """|x>|y> -> |x>|(x+y) mod N> for x, y < N."""
    ArithmeticParams(n, modulus=modulus, controlled=controlled).validate()
    b = CircuitBuilder("ctrl-mod-add" if controlled else "mod-add")
    control = _control_register(b, controlled)
    xs = b.register("x", n, RegisterRole.INPUT)
    ys = b.register("y", n, RegisterRole.OUTPUT)
    carry = b.register("carry", 1, RegisterRole.ANCILLA)[0]
    flag = b.register("flag", 1, RegisterRole.FLAG)[0]
    const_reg = b.register("constant", n + 1, RegisterRole.ANCILLA)
    carry_in = b.register("carry_in", 1, RegisterRole.ANCILLA)[0]
    emit_modular_adder(b, xs, ys, carry, flag, const_reg, carry_in, modulus, control=control)
    return b.build()


def build_shift(n: int, direction: ShiftDirection) -> Circuit:
    """
    Shift an n-bit value inside an n+1-qubit register.

    LEFT expects the top qubit to be 0, RIGHT the bottom qubit; otherwise
    the output is garbage.
    """
    ArithmeticParams(n).validate()
    direction = ShiftDirection(direction)
    b = CircuitBuilder(f"shift-{direction.value}")
    xs = b.register("x", n + 1, RegisterRole.OUTPUT)
    emit_shift(b, xs, direction)
    return b.build()


def build_modular_doubler(n: int, modulus: int) -> Circuit:
    """|x> -> |2x mod N> for x < N."""
    ArithmeticParams(n, modulus=modulus).validate()
    b = CircuitBuilder("mod-double")
    xs = b.register("x", n, RegisterRole.OUTPUT)
    headroom = b.register("headroom", 1, RegisterRole.ANCILLA)[0]
    flag = b.register("flag", 1, RegisterRole.FLAG)[0]
    const_reg = b.register("constant", n + 1, RegisterRole.ANCILLA)
    carry_in = b.register("carry_in", 1, RegisterRole.ANCILLA)[0]
    emit_modular_doubler(b, xs, headroom, flag, const_reg, carry_in, modulus)
    return b.build()
