"""
Closed-form CNOT counts, the window-size optimizer, the asymptotic fit and
runtime estimates. Nothing here builds a circuit.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from math import log2
from typing import Callable, Iterable, Optional

import numpy as np
import pandas as pd

from config_shor import COST_SETTINGS, FIT_N_VALUES
from models.reports import RuntimeEstimate, WindowPlan
from utils.error_handler import ValidationError, require

logger = logging.getLogger(__name__)


class CostFormulaId(str, Enum):
    ADDER = "adder"
    CONST_ADDER = "const-adder"
    CTRL_ADDER = "ctrl-adder"
    CTRL_CONST_ADDER = "ctrl-const-adder"
    COMPARE = "compare"
    CONST_COMPARE = "const-compare"
    CTRL_COMPARE = "ctrl-compare"
    MOD_ADD = "mod-add"
    CTRL_MOD_ADD = "ctrl-mod-add"
    SHIFT = "shift"
    MOD_DOUBLE = "mod-double"
    FAST_MODMUL = "fast-modmul"
    MONT_FORWARD = "mont-forward"
    MONT_FULL = "mont-full"
    QFT_2N = "qft"


# (a, b, c) for a*n^2 + b*n + c
_FORMULAS = {
    CostFormulaId.ADDER: (0, 16, 1),
    CostFormulaId.CONST_ADDER: (0, 13, 1),
    CostFormulaId.CTRL_ADDER: (0, 26, 6),
    CostFormulaId.CTRL_CONST_ADDER: (0, 17, 1),
    CostFormulaId.COMPARE: (0, 16, 1),
    CostFormulaId.CONST_COMPARE: (0, 12, 1),
    CostFormulaId.CTRL_COMPARE: (0, 16, 7),
    CostFormulaId.MOD_ADD: (0, 61, 16),
    CostFormulaId.CTRL_MOD_ADD: (0, 71, 27),
    CostFormulaId.SHIFT: (0, 2, 0),
    CostFormulaId.MOD_DOUBLE: (0, 31, 15),
    CostFormulaId.FAST_MODMUL: (102, -54, -42),
    CostFormulaId.MONT_FORWARD: (45, 17, 8),
    CostFormulaId.MONT_FULL: (90, 35, 16),
    CostFormulaId.QFT_2N: (4, 1, 0),
}

# Binding-adjusted construction minus model; see DEVIATIONS.md
_DELTAS = {
    CostFormulaId.MONT_FORWARD: (0, 4, -7),
    CostFormulaId.MONT_FULL: (0, 8, -14),
}


def formula_id(value) -> CostFormulaId:
    """Accept a CostFormulaId or its CLI name."""
    if isinstance(value, CostFormulaId):
        return value
    try:
        return CostFormulaId(value)
    except ValueError:
        names = ", ".join(f.value for f in CostFormulaId)
        raise ValidationError(f"unknown primitive {value!r}; choose from {names}") from None


def _quadratic(coefficients, n: int) -> int:
    a, b, c = coefficients
    return a * n * n + b * n + c


def primitive_cnot_count(primitive, n: int) -> int:
    """Model CNOT count of one primitive at width n."""
    require(n >= 1, f"n must be >= 1, got {n}")
    return _quadratic(_FORMULAS[formula_id(primitive)], n)


def documented_delta(primitive, n: int) -> int:
    """
    Binding-adjusted measured count of the built circuit minus the model.

    Zero for every primitive except the Montgomery pair, whose rounds pay a
    two-bit carry top and a parity move per round, partly recovered by the
    zero carry-in at bit 0. The gap is linear in n.
    """
    coefficients = _DELTAS.get(formula_id(primitive))
    return _quadratic(coefficients, n) if coefficients else 0


def lookup_cnot_budget(n: int, m: int) -> int:
    """Per-window table lookup allowance (n + 13) * 2^m."""
    return (n + COST_SETTINGS["lookup_overhead"]) * (1 << m)


def _window_count(n: int, m: int) -> int:
    return -(-2 * n // m)


def modexp_cnot_count(n: int, m: int) -> int:
    """
    Windowed modular exponentiation cost for exponent window size m.

    Every window but the last pays a lookup and a Montgomery product; the
    last pays a lookup over its remaining bits and one fast multiplication.
    """
    require(n >= 1, f"n must be >= 1, got {n}")
    require(1 <= m <= 2 * n, f"window size must lie in [1, {2 * n}], got {m}")
    count = _window_count(n, m)
    per_window = lookup_cnot_budget(n, m) + 90 * n * n + 34 * n - 10
    last_width = 2 * n - m * (count - 1)
    return ((count - 1) * per_window
            + lookup_cnot_budget(n, last_width)
            + primitive_cnot_count(CostFormulaId.FAST_MODMUL, n))


def baseline_modexp_cnot_count(n: int) -> int:
    """
    Binding-adjusted cost of exponentiation by 2n controlled in-place
    multiplications: 248 n^3 + 128 n^2.

    Each exponent bit pays two multiplications of n controlled constant
    modular additions (62n + 28 each) and an 8n controlled swap.
    """
    require(n >= 1, f"n must be >= 1, got {n}")
    per_bit = 2 * n * (primitive_cnot_count(CostFormulaId.MOD_ADD, n) + n + 12) + 8 * n
    return 2 * n * per_bit


def optimal_window(n: int) -> WindowPlan:
    """
    Smallest-cost window size, ties toward smaller m.

    Any m' >= m costs at least (n+13)*2^m, so the scan stops once that
    allowance alone exceeds the best total.
    """
    require(n >= 2, f"n must be >= 2, got {n}")
    best: Optional[WindowPlan] = None
    for m in range(1, 2 * n + 1):
        if best is not None and lookup_cnot_budget(n, m) > best.cnot_total:
            break
        total = modexp_cnot_count(n, m)
        if best is None or total < best.cnot_total:
            best = WindowPlan(n, m, _window_count(n, m), total)
    logger.debug(f"optimal window for n={n}: m={best.m}, total={best.cnot_total}")
    return best


def window_scan(n: int) -> pd.DataFrame:
    """Closed-form totals for every window size of an n-bit modulus."""
    require(n >= 1, f"n must be >= 1, got {n}")
    rows = [
        {
            "m": m,
            "window_count": _window_count(n, m),
            "lookup_budget": lookup_cnot_budget(n, m),
            "cnot_total": modexp_cnot_count(n, m),
        }
        for m in range(1, 2 * n + 1)
    ]
    return pd.DataFrame(rows)


def _cubic_over_log(n: int) -> float:
    return n ** 3 / log2(n)


def total_shor_count(n: int) -> int:
    """Fitted CNOT count of one run: 217 n^3/log2 n plus the 2n-qubit QFT."""
    require(n >= 2, f"n must be >= 2, got {n}")
    fitted = COST_SETTINGS["fit_coefficient"] * _cubic_over_log(n)
    return round(fitted + primitive_cnot_count(CostFormulaId.QFT_2N, n))


def lower_bound_count(n: int) -> int:
    """At least 9n CNOTs per addition over ~n^2/log2 n additions."""
    require(n >= 2, f"n must be >= 2, got {n}")
    return round(COST_SETTINGS["lower_bound_coefficient"] * _cubic_over_log(n))


def per_addition_floor(n: int) -> int:
    """One Toffoli and three CNOTs per bit."""
    require(n >= 1, f"n must be >= 1, got {n}")
    return (COST_SETTINGS["toffoli_cnot_cost"] + 3) * n


@dataclass
class FitResult:
    """Least-squares coefficient c of total ~ c * n^3/log2 n, with residuals."""
    coefficient: float
    residuals: pd.DataFrame

    def to_dict(self):
        return {
            "coefficient": self.coefficient,
            "residuals": self.residuals.to_dict(orient="records"),
        }


def fit_leading_coefficient(n_values: Iterable[int] = FIT_N_VALUES,
                            totals: Optional[Callable[[int], float]] = None) -> FitResult:
    """
    Fit c in total(n) = c * n^3 / log2(n) through the origin.

    Args:
        n_values: At least four sizes, each >= 16
        totals: Curve to fit; defaults to the optimal windowed count

    Returns:
        FitResult with the coefficient and one residual row per size
    """
    n_values = [int(n) for n in n_values]
    require(len(n_values) >= 4, f"fit needs at least 4 sizes, got {len(n_values)}")
    require(all(n >= 16 for n in n_values), "fit sizes must all be >= 16")
    if totals is None:
        totals = lambda n: optimal_window(n).cnot_total  # noqa: E731

    x = np.array([_cubic_over_log(n) for n in n_values], dtype=float)
    y = np.array([float(totals(n)) for n in n_values], dtype=float)
    coefficient = float(np.dot(x, y) / np.dot(x, x))
    fitted = coefficient * x

    residuals = pd.DataFrame({
        "n": n_values,
        "n3_over_log2n": x,
        "total": y,
        "fitted": fitted,
        "residual": y - fitted,
        "relative_residual": (y - fitted) / y,
    })
    logger.info(f"fit over {len(n_values)} sizes: coefficient {coefficient:.2f}")
    return FitResult(coefficient, residuals)


_DURATION_UNITS = [
    ("years", 365 * 86400),
    ("days", 86400),
    ("hours", 3600),
    ("minutes", 60),
]


def human_duration(seconds: float) -> str:
    """Largest unit with a value of at least one, one decimal place."""
    for unit, size in _DURATION_UNITS:
        if seconds >= size:
            return f"{seconds / size:.1f} {unit}"
    return f"{seconds:.3g} seconds"


def runtime_estimate(n: int, t_cnot: Optional[float] = None,
                     coding_factor: Optional[float] = None) -> RuntimeEstimate:
    """Wall time of one run at t_cnot seconds per CNOT times the coding factor."""
    t_cnot = COST_SETTINGS["ion_trap_t_cnot"] if t_cnot is None else float(t_cnot)
    coding_factor = COST_SETTINGS["default_coding_factor"] if coding_factor is None else float(coding_factor)
    require(t_cnot > 0, f"t_cnot must be positive, got {t_cnot}")
    require(coding_factor >= 1, f"coding factor must be >= 1, got {coding_factor}")

    cnot_total = total_shor_count(n)
    wall_time = cnot_total * t_cnot * coding_factor
    return RuntimeEstimate(cnot_total, t_cnot, coding_factor, wall_time, human_duration(wall_time))
