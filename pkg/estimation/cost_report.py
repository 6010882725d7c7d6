"""
Model-versus-measured cost reports.
"""
import logging
from typing import Callable, Dict, Optional

from config_shor import MEASURE_SETTINGS
from estimation.cost_model import (
    CostFormulaId,
    baseline_modexp_cnot_count,
    documented_delta,
    lower_bound_count,
    modexp_cnot_count,
    optimal_window,
    primitive_cnot_count,
    runtime_estimate,
    total_shor_count,
)
from models.circuit import Circuit
from models.reports import CostReport
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
from synthesis.catalog import default_constant, default_modulus
from synthesis.modexp import ModExpParams, build_baseline_modexp, build_windowed_modexp, phase_cnot_counts
from synthesis.modmul import build_fast_modmul, build_montgomery_forward, build_montgomery_full
from utils.error_handler import require

logger = logging.getLogger(__name__)

# Builders taking (n, modulus, constant); modular ones need n >= 2
_MEASURED: Dict[CostFormulaId, Callable[[int, int, int], Circuit]] = {
    CostFormulaId.ADDER: lambda n, N, K: build_adder(n),
    CostFormulaId.CONST_ADDER: lambda n, N, K: build_const_adder(n, K),
    CostFormulaId.CTRL_ADDER: lambda n, N, K: build_adder(n, controlled=True),
    CostFormulaId.CTRL_CONST_ADDER: lambda n, N, K: build_const_adder(n, K, controlled=True),
    CostFormulaId.COMPARE: lambda n, N, K: build_comparator(n),
    CostFormulaId.CONST_COMPARE: lambda n, N, K: build_const_comparator(n, K),
    CostFormulaId.CTRL_COMPARE: lambda n, N, K: build_comparator(n, controlled=True),
    CostFormulaId.MOD_ADD: lambda n, N, K: build_modular_adder(n, N),
    CostFormulaId.CTRL_MOD_ADD: lambda n, N, K: build_modular_adder(n, N, controlled=True),
    CostFormulaId.SHIFT: lambda n, N, K: build_shift(n, ShiftDirection.LEFT),
    CostFormulaId.MOD_DOUBLE: lambda n, N, K: build_modular_doubler(n, N),
    CostFormulaId.FAST_MODMUL: lambda n, N, K: build_fast_modmul(n, N),
    CostFormulaId.MONT_FORWARD: lambda n, N, K: build_montgomery_forward(n, N),
    CostFormulaId.MONT_FULL: lambda n, N, K: build_montgomery_full(n, N),
}

_MODULAR = {
    CostFormulaId.MOD_ADD,
    CostFormulaId.CTRL_MOD_ADD,
    CostFormulaId.MOD_DOUBLE,
    CostFormulaId.FAST_MODMUL,
    CostFormulaId.MONT_FORWARD,
    CostFormulaId.MONT_FULL,
}


def measure_primitive(primitive: CostFormulaId, n: int, modulus: Optional[int] = None,
                      constant: Optional[int] = None) -> Optional[Circuit]:
    """Build the circuit behind a formula, or None when there is none to build."""
    builder = _MEASURED.get(primitive)
    if builder is None or (primitive in _MODULAR and n < 2):
        return None
    if modulus is None and primitive in _MODULAR:
        modulus = default_modulus(n)
    if constant is None:
        constant = default_constant(n)
    return builder(n, modulus, constant)


def primitive_entry(primitive: CostFormulaId, n: int, modulus: Optional[int] = None,
                    constant: Optional[int] = None, measure: bool = True) -> Dict[str, Optional[int]]:
    """Model, raw measured, binding-adjusted measured and documented delta."""
    entry = {
        "model": primitive_cnot_count(primitive, n),
        "measured": None,
        "adjusted": None,
        "documented_delta": documented_delta(primitive, n),
    }
    circuit = measure_primitive(primitive, n, modulus, constant) if measure else None
    if circuit is not None:
        entry["measured"] = circuit.cnot_count
        entry["adjusted"] = circuit.adjusted_cnot_count
    return entry


def build_cost_report(n: int, modulus: Optional[int] = None, base: Optional[int] = None,
                      window: Optional[int] = None, t_cnot: Optional[float] = None,
                      coding_factor: Optional[float] = None, measure: bool = True) -> CostReport:
    """
    Assemble per-primitive, windowed and whole-run counts for one size.

    Circuits are only built for n up to the configured measuring limits.
    """
    require(n >= 2, f"cost reports need n >= 2, got {n}")
    modulus = default_modulus(n) if modulus is None else modulus
    base = 2 if base is None else base
    measure_primitives = measure and n <= MEASURE_SETTINGS["primitive_max_bits"]

    report = CostReport(n)
    for primitive in CostFormulaId:
        report.per_primitive[primitive.value] = primitive_entry(
            primitive, n, modulus, measure=measure_primitives)

    plan = optimal_window(n)
    m = plan.m if window is None else window
    report.window_plan = {
        "m": m,
        "optimal_m": plan.m,
        "total_model": modexp_cnot_count(n, m),
        "total_measured": None,
        "forward_measured": None,
        "baseline_model": baseline_modexp_cnot_count(n),
        "baseline_measured": None,
    }
    if measure and n <= MEASURE_SETTINGS["modexp_max_bits"]:
        circuit = build_windowed_modexp(ModExpParams(n, modulus, base, m))
        phases = phase_cnot_counts(circuit)
        report.window_plan["total_measured"] = circuit.cnot_count
        report.window_plan["forward_measured"] = phases["forward"]
        report.window_plan["uncompute_measured"] = phases["uncompute"]
        report.window_plan["finalize_measured"] = phases["finalize"]
        baseline = build_baseline_modexp(n, modulus, base)
        report.window_plan["baseline_measured"] = baseline.adjusted_cnot_count

    qft = primitive_cnot_count(CostFormulaId.QFT_2N, n)
    report.totals = {
        "modexp_plus_qft": plan.cnot_total + qft,
        "total_shor": total_shor_count(n),
        "lower_bound": lower_bound_count(n),
    }
    report.runtime = runtime_estimate(n, t_cnot, coding_factor).to_dict()
    logger.info(f"cost report n={n}: window m={m}, model total {report.window_plan['total_model']}")
    return report
