"""
Named circuits with their verification domains and integer oracles.

A domain is a product of per-register value ranges, so it can be counted,
enumerated or sampled without being materialized.
"""
import itertools
from dataclasses import dataclass
from math import prod
from typing import Any, Callable, Dict, Iterator, List, Mapping, Tuple

import numpy as np

from models.circuit import Circuit
from synthesis.arithmetic import (
    ShiftDirection,
    build_adder,
    build_comparator,
    build_const_adder,
    build_const_comparator,
    build_modular_adder,
    build_modular_doubler,
    build_shift,
)
from synthesis.modexp import (
    ModExpParams,
    build_baseline_modexp,
    build_table_lookup,
    build_windowed_modexp,
    precompute_window_tables,
)
from synthesis.modmul import build_ctrl_copy, build_fast_modmul, build_montgomery_forward, build_montgomery_full
from utils.error_handler import ValidationError, require
from utils.number_theory import modinv

Params = Dict[str, Any]
Axes = List[Tuple[str, range]]
Oracle = Callable[[Mapping[str, int]], Dict[str, int]]


def default_modulus(n: int) -> int:
    """Largest odd modulus that fits n bits."""
    require(n >= 2, f"modular circuits need n >= 2, got {n}")
    return (1 << n) - 1


def default_constant(n: int) -> int:
    """Alternating bit pattern 0b...0101."""
    return ((1 << n) - 1) // 3


def resolve(params: Mapping[str, Any]) -> Params:
    """Fill defaults for modulus, constant, base and window."""
    from estimation.cost_model import optimal_window

    resolved = dict(params)
    require(resolved.get("n") is not None, "parameter n is required")
    n = resolved["n"]
    require(isinstance(n, int) and n >= 1, f"n must be a positive integer, got {n}")
    if resolved.get("modulus") is None and n >= 2:
        resolved["modulus"] = default_modulus(n)
    if resolved.get("constant") is None:
        resolved["constant"] = default_constant(n)
    if resolved.get("base") is None:
        resolved["base"] = 2
    if resolved.get("window") is None and n >= 2:
        resolved["window"] = optimal_window(n).m
    return resolved


@dataclass(frozen=True)
class CircuitSpec:
    """
    How to build, enumerate and check one named circuit.
    """
    name: str
    build: Callable[[Params], Circuit]
    axes: Callable[[Params], Axes]
    oracle: Callable[[Params], Oracle]

    def domain_size(self, params: Params) -> int:
        return prod(len(values) for _, values in self.axes(params))

    def domain(self, params: Params) -> Iterator[Dict[str, int]]:
        """Every point, last register varying fastest."""
        axes = self.axes(params)
        names = [name for name, _ in axes]
        for values in itertools.product(*(values for _, values in axes)):
            yield dict(zip(names, values))

    def sample(self, params: Params, count: int, seed: int = 0) -> List[Dict[str, int]]:
        """count points drawn uniformly, with replacement, from the domain."""
        rng = np.random.default_rng(seed)
        axes = dict(self.axes(params))
        columns = {name: rng.integers(0, len(values), size=count) for name, values in axes.items()}
        return [
            {name: values[int(columns[name][i])] for name, values in axes.items()}
            for i in range(count)
        ]


def _control_axis(controlled: bool) -> Axes:
    return [("control", range(2))] if controlled else []


def _word(n: int) -> range:
    return range(1 << n)


def _operand_axes(p, controlled) -> Axes:
    return _control_axis(controlled) + [("x", _word(p["n"])), ("y", _word(p["n"]))]


def _residue_axes(p, controlled=False) -> Axes:
    return _control_axis(controlled) + [("x", range(p["modulus"])), ("y", range(p["modulus"]))]


def _adder_oracle(p):
    n = p["n"]

    def oracle(point):
        total = point["y"] + (point["x"] if point.get("control", 1) else 0)
        return {"y": total % (1 << n), "carry_out": total >> n}
    return oracle


def _const_adder_oracle(p):
    n, constant = p["n"], p["constant"]

    def oracle(point):
        total = point["y"] + (constant if point.get("control", 1) else 0)
        return {"y": total % (1 << n), "carry_out": total >> n}
    return oracle


def _comparator_oracle(p):
    return lambda point: {"flag": int(bool(point.get("control", 1)) and point["x"] < point["y"])}


def _mod_add_oracle(p):
    N = p["modulus"]

    def oracle(point):
        if not point.get("control", 1):
            return {"y": point["y"]}
        return {"y": (point["x"] + point["y"]) % N}
    return oracle


def _shift_axes(p, direction) -> Axes:
    n = p["n"]
    if direction is ShiftDirection.LEFT:
        return [("x", _word(n))]
    return [("x", range(0, 1 << (n + 1), 2))]


def _shift_oracle(direction):
    if direction is ShiftDirection.LEFT:
        return lambda point: {"x": point["x"] * 2}
    return lambda point: {"x": point["x"] // 2}


def _montgomery_oracle(p):
    N = p["modulus"]
    inverse = modinv(1 << p["n"], N)
    return lambda point: {"result": point["x"] * point["y"] * inverse % N}


def _lookup_table(p):
    return precompute_window_tables(p["base"], p["modulus"], p["n"], p["window"])[0]


def _lookup_oracle(p):
    entries = _lookup_table(p).entries
    return lambda point: {"data": entries[point["address"]]}


def _modexp_params(p) -> ModExpParams:
    return ModExpParams(p["n"], p["modulus"], p["base"], p["window"])


def _specs() -> Dict[str, CircuitSpec]:
    specs = {}

    for controlled in (False, True):
        prefix = "ctrl-" if controlled else ""
        specs[prefix + "adder"] = CircuitSpec(
            prefix + "adder",
            lambda p, c=controlled: build_adder(p["n"], controlled=c),
            lambda p, c=controlled: _operand_axes(p, c),
            _adder_oracle,
        )
        specs[prefix + "const-adder"] = CircuitSpec(
            prefix + "const-adder",
            lambda p, c=controlled: build_const_adder(p["n"], p["constant"], controlled=c),
            lambda p, c=controlled: _control_axis(c) + [("y", _word(p["n"]))],
            _const_adder_oracle,
        )
        specs[prefix + "comparator"] = CircuitSpec(
            prefix + "comparator",
            lambda p, c=controlled: build_comparator(p["n"], controlled=c),
            lambda p, c=controlled: _operand_axes(p, c),
            _comparator_oracle,
        )
        specs[prefix + "mod-add"] = CircuitSpec(
            prefix + "mod-add",
            lambda p, c=controlled: build_modular_adder(p["n"], p["modulus"], controlled=c),
            lambda p, c=controlled: _residue_axes(p, c),
            _mod_add_oracle,
        )

    specs["const-comparator"] = CircuitSpec(
        "const-comparator",
        lambda p: build_const_comparator(p["n"], p["constant"]),
        lambda p: [("x", _word(p["n"]))],
        lambda p: (lambda point: {"flag": int(point["x"] < p["constant"])}),
    )
    for direction in ShiftDirection:
        specs[f"shift-{direction.value}"] = CircuitSpec(
            f"shift-{direction.value}",
            lambda p, d=direction: build_shift(p["n"], d),
            lambda p, d=direction: _shift_axes(p, d),
            lambda p, d=direction: _shift_oracle(d),
        )
    specs["mod-double"] = CircuitSpec(
        "mod-double",
        lambda p: build_modular_doubler(p["n"], p["modulus"]),
        lambda p: [("x", range(p["modulus"]))],
        lambda p: (lambda point: {"x": 2 * point["x"] % p["modulus"]}),
    )
    specs["ctrl-copy"] = CircuitSpec(
        "ctrl-copy",
        lambda p: build_ctrl_copy(p["n"]),
        lambda p: [("control", range(2)), ("source", _word(p["n"]))],
        lambda p: (lambda point: {"destination": point["source"] if point["control"] else 0}),
    )
    specs["fast-modmul"] = CircuitSpec(
        "fast-modmul",
        lambda p: build_fast_modmul(p["n"], p["modulus"]),
        _residue_axes,
        lambda p: (lambda point: {"result": point["x"] * point["y"] % p["modulus"]}),
    )
    specs["montgomery-forward"] = CircuitSpec(
        "montgomery-forward",
        lambda p: build_montgomery_forward(p["n"], p["modulus"]),
        _residue_axes,
        _montgomery_oracle,
    )
    specs["montgomery-full"] = CircuitSpec(
        "montgomery-full",
        lambda p: build_montgomery_full(p["n"], p["modulus"]),
        _residue_axes,
        _montgomery_oracle,
    )
    specs["table-lookup"] = CircuitSpec(
        "table-lookup",
        lambda p: build_table_lookup(_lookup_table(p).address_bits, _lookup_table(p), p["n"]),
        lambda p: [("address", _word(_lookup_table(p).address_bits))],
        _lookup_oracle,
    )
    specs["modexp"] = CircuitSpec(
        "modexp",
        lambda p: build_windowed_modexp(_modexp_params(p)),
        lambda p: [("exponent", _word(2 * p["n"]))],
        lambda p: (lambda point: {"target": pow(p["base"], point["exponent"], p["modulus"])}),
    )
    specs["baseline-modexp"] = CircuitSpec(
        "baseline-modexp",
        lambda p: build_baseline_modexp(p["n"], p["modulus"], p["base"]),
        lambda p: [("exponent", _word(2 * p["n"]))],
        lambda p: (lambda point: {"target": pow(p["base"], point["exponent"], p["modulus"])}),
    )
    return specs


CATALOG: Dict[str, CircuitSpec] = _specs()


def get_spec(name: str) -> CircuitSpec:
    if name not in CATALOG:
        raise ValidationError(f"unknown circuit {name!r}; choose from {', '.join(sorted(CATALOG))}")
    return CATALOG[name]


def build_named(name: str, params: Mapping[str, Any]) -> Circuit:
    """Build a catalog circuit with defaults filled in."""
    return get_spec(name).build(resolve(params))
