"""
Windowed modular exponentiation with table lookups and accumulated
intermediate products.
"""
import logging
from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Sequence, Union

from models.circuit import Circuit, RegisterRole
from models.reports import WindowTable
from synthesis.arithmetic import ArithmeticParams, emit_modular_adder
from synthesis.builder import CircuitBuilder
from synthesis.modmul import (
    MultiplierWorkspace,
    allocate_workspace,
    emit_fast_modmul,
    emit_montgomery_full,
)
from utils.error_handler import ValidationError, require
from utils.number_theory import bits_of, modinv

logger = logging.getLogger(__name__)

Qubits = Sequence[int]


@dataclass(frozen=True)
class ModExpParams:
    """
    Parameters of |x>|1> -> |x>|a^x mod N> with a 2n-qubit exponent.
    """
    n: int
    modulus: int
    base: int
    window: int

    @property
    def exponent_width(self) -> int:
        return 2 * self.n

    @property
    def window_count(self) -> int:
        return -(-self.exponent_width // self.window)

    def window_widths(self) -> List[int]:
        """Address bits per window; the last one may be short."""
        widths = [self.window] * (self.window_count - 1)
        widths.append(self.exponent_width - self.window * (self.window_count - 1))
        return widths

    def validate(self) -> "ModExpParams":
        require(self.n >= 2, f"modular exponentiation needs n >= 2, got {self.n}")
        ArithmeticParams(self.n, modulus=self.modulus).validate()
        require(1 <= self.base < self.modulus, f"base must lie in [1, {self.modulus}), got {self.base}")
        require(gcd(self.base, self.modulus) == 1,
                f"base {self.base} shares a factor with {self.modulus}")
        require(1 <= self.window <= self.exponent_width,
                f"window must lie in [1, {self.exponent_width}], got {self.window}")
        return self


def precompute_window_tables(a: int, N: int, n: int, m: int,
                             montgomery_form: bool = False) -> List[WindowTable]:
    """
    Multiplier tables for each exponent window.

    Args:
        a: Base, coprime to N
        N: Modulus
        n: Bits of N
        m: Window size

    Returns:
        ceil(2n/m) tables; table k entry j is a^(j * 2^(k*m)) mod N, times
        2^n mod N in Montgomery form
    """
    if gcd(a, N) != 1:
        raise ValidationError(f"base {a} shares a factor with {N}")
    params = ModExpParams(n, N, a % N, m)
    require(1 <= m <= params.exponent_width, f"window must lie in [1, {params.exponent_width}]")

    scale = pow(2, n, N) if montgomery_form else 1
    tables = []
    for k, width in enumerate(params.window_widths()):
        step = pow(a, 1 << (k * m), N)
        entries = []
        value = 1
        for _ in range(1 << width):
            entries.append(value * scale % N)
            value = value * step % N
        tables.append(WindowTable(k, tuple(entries), montgomery_form, N))
    return tables


def emit_decoder(b: CircuitBuilder, address: Qubits, onehot: Qubits) -> None:
    """
    onehot[j] := [address == j] for j < 2^len(address); onehot must be 0.

    Each address bit splits every active indicator in two: a Toffoli writes
    the half with the bit set, a CNOT clears it from the parent.
    """
    b.x(onehot[0])
    b.cx(address[0], onehot[1])
    b.cx(onehot[1], onehot[0])
    for k in range(1, len(address)):
        span = 1 << k
        for j in range(span):
            b.ccx(onehot[j], address[k], onehot[j + span])
            b.cx(onehot[j + span], onehot[j])


def emit_table_write(b: CircuitBuilder, onehot: Qubits, entries: Sequence[int], data: Qubits) -> None:
    """XOR entry j into data when onehot[j] is set."""
    for j, entry in enumerate(entries):
        for q, bit in zip(data, bits_of(entry, len(data))):
            if bit:
                b.cx(onehot[j], q)


def _entries(table: Union[WindowTable, Sequence[int]]) -> List[int]:
    return list(table.entries) if isinstance(table, WindowTable) else [int(e) for e in table]


def build_table_lookup(m: int, table: Union[WindowTable, Sequence[int]], n: int,
                       modulus: Optional[int] = None) -> Circuit:
    """
    |x>|0> -> |x>|T_x>, costing 14*2^m - 24 plus one CNOT per set data bit.

    Entries must be residues below the modulus, taken from the table when
    it is a WindowTable and 2^n otherwise. With a modulus of at most 2^n - 1
    every entry has at most n - 1 set bits, which keeps the lookup inside
    the (n + 13) * 2^m allowance.
    """
    entries = _entries(table)
    if modulus is None:
        modulus = table.modulus if isinstance(table, WindowTable) else 1 << n
    require(m >= 1, f"address width must be >= 1, got {m}")
    require(len(entries) == 1 << m, f"table has {len(entries)} entries, expected {1 << m}")
    require(2 <= modulus <= 1 << n, f"modulus {modulus} does not fit {n} bits")
    require(all(0 <= e < modulus for e in entries), f"table entries must lie in [0, {modulus})")

    b = CircuitBuilder("table-lookup")
    address = b.register("address", m, RegisterRole.INPUT)
    data = b.register("data", n, RegisterRole.OUTPUT)
    onehot = b.register("onehot", 1 << m, RegisterRole.ANCILLA)
    emit_decoder(b, address, onehot)
    emit_table_write(b, onehot, entries, data)
    with b.inverted():
        emit_decoder(b, address, onehot)
    return b.build()


@dataclass(frozen=True)
class _ModExpRegisters:
    exponent: List[int]
    target: List[int]
    lookup: List[int]
    onehot: List[int]
    products: List[List[int]]
    workspace: MultiplierWorkspace


def _emit_window(b: CircuitBuilder, params: ModExpParams, regs: _ModExpRegisters,
                 k: int, table: WindowTable) -> None:
    """Decode, look up, multiply into products[k], unlook up, undecode."""
    m = params.window
    width = table.address_bits
    address = regs.exponent[k * m:k * m + width]
    onehot = regs.onehot[:1 << width]
    source = regs.target if k == 0 else regs.products[k - 1]

    emit_decoder(b, address, onehot)
    emit_table_write(b, onehot, table.entries, regs.lookup)
    if k == 0:
        emit_fast_modmul(b, source, regs.lookup, regs.products[0], regs.workspace, params.modulus)
    else:
        emit_montgomery_full(b, regs.lookup, source, regs.products[k], regs.workspace, params.modulus)
    emit_table_write(b, onehot, table.entries, regs.lookup)
    with b.inverted():
        emit_decoder(b, address, onehot)


def build_windowed_modexp(params: ModExpParams) -> Circuit:
    """
    |x>|1>|0...0> -> |x>|a^x mod N>|0...0>.

    Window 0 multiplies the target (holding 1) by a plain-form table entry
    with the fast multiplier. Later windows use Montgomery multiplication
    against Montgomery-form entries, so every product register holds a
    plain value. Products stay live until the last one is computed, are then
    erased in reverse order, and the target is cleared and swapped with the
    final product.

    Sections: window<k> for the forward pass, uncompute<k> for the erase
    pass, finalize for the swap.
    """
    params.validate()
    n, N, a, m = params.n, params.modulus, params.base, params.window
    plain = precompute_window_tables(a, N, n, m)
    montgomery = precompute_window_tables(a, N, n, m, montgomery_form=True)
    tables = [plain[0]] + montgomery[1:]
    count = params.window_count

    b = CircuitBuilder("modexp")
    exponent = b.register("exponent", params.exponent_width, RegisterRole.INPUT)
    target = b.register("target", n, RegisterRole.OUTPUT, initial=1)
    lookup = b.register("lookup", n, RegisterRole.ANCILLA)
    onehot = b.register("onehot", 1 << max(params.window_widths()), RegisterRole.ANCILLA)
    products = [b.register(f"product{k}", n, RegisterRole.ANCILLA) for k in range(count)]
    workspace = allocate_workspace(b, n, montgomery=count > 1)
    regs = _ModExpRegisters(exponent, target, lookup, onehot, products, workspace)

    for k, table in enumerate(tables):
        with b.section(f"window{k}"):
            _emit_window(b, params, regs, k, table)

    for k in range(count - 2, -1, -1):
        with b.section(f"uncompute{k}"):
            with b.inverted():
                _emit_window(b, params, regs, k, tables[k])

    with b.section("finalize"):
        b.x(target[0])
        for t, p in zip(target, products[-1]):
            b.cx(p, t)
            b.cx(t, p)

    circuit = b.build()
    logger.debug(f"modexp n={n} N={N} a={a} m={m}: {count} windows, {len(circuit)} gates")
    return circuit


def phase_cnot_counts(circuit: Circuit) -> dict:
    """CNOT totals of the forward windows, the erase pass and the final swap."""
    totals = {"forward": 0, "uncompute": 0, "finalize": 0}
    for name, count in circuit.section_cnot_counts().items():
        if name.startswith("window"):
            totals["forward"] += count
        elif name.startswith("uncompute"):
            totals["uncompute"] += count
        else:
            totals["finalize"] += count
    return totals


def emit_ctrl_const_modmul(b: CircuitBuilder, control: int, xs: Qubits, acc: Qubits, constant: int,
                           addend_reg: Qubits, both: int, ws: MultiplierWorkspace, modulus: int) -> None:
    """
    acc := (acc + control * constant * x) mod N, one modular addition per bit of x.

    Each addition binds constant * 2^i mod N into addend_reg under
    control AND x_i, held in the single qubit both.
    """
    for i, q in enumerate(xs):
        addend = constant * pow(2, i, modulus) % modulus
        b.ccx(control, q, both)
        b.bind(addend_reg, addend, control=both)
        emit_modular_adder(b, addend_reg, acc, ws.headroom, ws.flag, ws.const_reg, ws.carry_in, modulus)
        b.bind(addend_reg, addend, control=both)
        b.ccx(control, q, both)


def emit_ctrl_swap(b: CircuitBuilder, control: int, xs: Qubits, ys: Qubits) -> None:
    for x, y in zip(xs, ys):
        b.cx(y, x)
        b.ccx(control, x, y)
        b.cx(y, x)


def build_baseline_modexp(n: int, modulus: int, base: int) -> Circuit:
    """
    |x>|1>|0...0> -> |x>|a^x mod N>|0...0> by in-place multiplications.

    Exponent bit j multiplies the target by c = a^(2^j) mod N: add c*target
    into a scratch register, swap, then subtract c^-1 times the new target
    from the scratch, which clears it. Every step is controlled by bit j.

    Sections: bit<j>, one per exponent bit.
    """
    params = ModExpParams(n, modulus, base, 1).validate()
    b = CircuitBuilder("baseline-modexp")
    exponent = b.register("exponent", params.exponent_width, RegisterRole.INPUT)
    target = b.register("target", n, RegisterRole.OUTPUT, initial=1)
    scratch = b.register("scratch", n, RegisterRole.ANCILLA)
    addend = b.register("addend", n, RegisterRole.ANCILLA)
    both = b.register("both", 1, RegisterRole.ANCILLA)[0]
    ws = allocate_workspace(b, n, montgomery=False)

    for j, control in enumerate(exponent):
        c = pow(base, 1 << j, modulus)
        with b.section(f"bit{j}"):
            emit_ctrl_const_modmul(b, control, target, scratch, c, addend, both, ws, modulus)
            emit_ctrl_swap(b, control, target, scratch)
            with b.inverted():
                emit_ctrl_const_modmul(b, control, target, scratch, modinv(c, modulus),
                                       addend, both, ws, modulus)

    circuit = b.build()
    logger.debug(f"baseline modexp n={n} N={modulus} a={base}: {len(circuit)} gates")
    return circuit
