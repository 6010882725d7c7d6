"""
Command verbs: each handler takes a parameter dict and returns
{'status': int, 'body': dict or str}.
"""
import logging
from typing import Any, Callable, Dict, Mapping, Optional

from config_shor import FIT_N_VALUES, MEASURE_SETTINGS, VERIFY_SETTINGS
from estimation.cost_model import (
    baseline_modexp_cnot_count,
    fit_leading_coefficient,
    formula_id,
    modexp_cnot_count,
    optimal_window,
    window_scan,
)
from estimation.cost_report import build_cost_report, primitive_entry
from models.circuit import Circuit, decompose_toffoli
from pipeline.order_finding import factor
from simulation.verify import exhaustive_verify
from storage.circuit_text import export_text
from storage.report_sink import ReportSink, get_sink
from synthesis.catalog import get_spec, resolve
from synthesis.modexp import phase_cnot_counts
from utils.error_handler import STATUS_OK, STATUS_VERIFICATION, ErrorHandler, ValidationError, require

logger = logging.getLogger(__name__)

error_handler = ErrorHandler(component="shor_arith.commands")

CIRCUIT_KEYS = {"circuit", "n", "modulus", "constant", "base", "window", "controlled", "direction"}

ALLOWED_KEYS = {
    "build": CIRCUIT_KEYS | {"lowered", "format"},
    "count": CIRCUIT_KEYS | {"primitive", "lowered"},
    "verify": CIRCUIT_KEYS | {"lowered", "sample", "seed"},
    "optimize-window": {"n"},
    "estimate": {"n", "modulus", "base", "window", "t_cnot", "coding_factor"},
    "fit": {"n_values"},
    "factor": {"modulus", "shots", "seed", "max_attempts", "bases"},
    "export": CIRCUIT_KEYS | {"lowered", "format"},
}


def _circuit_name(params: Mapping[str, Any]) -> str:
    """Catalog name from --circuit, --controlled and --direction."""
    name = params.get("circuit")
    require(name is not None, "parameter circuit is required")
    if name == "shift":
        name = f"shift-{params.get('direction') or 'left'}"
    if params.get("controlled") and not name.startswith("ctrl-"):
        name = f"ctrl-{name}"
    return name


def _build(params: Mapping[str, Any]):
    spec = get_spec(_circuit_name(params))
    resolved = resolve({k: v for k, v in params.items() if k in CIRCUIT_KEYS - {"circuit", "controlled", "direction"}})
    circuit = spec.build(resolved)
    if params.get("lowered"):
        circuit = decompose_toffoli(circuit)
    return spec, resolved, circuit


def _summary(circuit: Circuit) -> Dict[str, Any]:
    summary = {
        "circuit": circuit.name,
        "num_qubits": circuit.num_qubits,
        "gates": len(circuit),
        "gate_counts": circuit.gate_counts(),
        "cnot_count": circuit.cnot_count,
        "adjusted_cnot_count": circuit.adjusted_cnot_count,
        "bound_bits": circuit.bound_bits,
        "layout": circuit.layout.to_dict(),
    }
    if circuit.sections:
        summary["sections"] = circuit.section_cnot_counts()
    return summary


def handle_build(params: Mapping[str, Any]) -> Dict[str, Any]:
    """Build a named circuit and report its shape and counts."""
    _, resolved, circuit = _build(params)
    if params.get("format") == "text":
        return {'status': STATUS_OK, 'body': export_text(circuit)}
    body = _summary(circuit)
    body["parameters"] = resolved
    return {'status': STATUS_OK, 'body': body}


def handle_count(params: Mapping[str, Any]) -> Dict[str, Any]:
    """Model count of a primitive, or measured count of a named circuit."""
    if params.get("primitive"):
        primitive = formula_id(params["primitive"])
        require(params.get("n") is not None, "parameter n is required")
        n = params["n"]
        require(n >= 1, f"n must be >= 1, got {n}")
        entry = primitive_entry(primitive, n, params.get("modulus"), params.get("constant"),
                                measure=n <= MEASURE_SETTINGS["primitive_max_bits"])
        return {'status': STATUS_OK, 'body': {"primitive": primitive.value, "n": n, **entry}}

    _, resolved, circuit = _build(params)
    body = _summary(circuit)
    if circuit.name == "modexp":
        body["phases"] = phase_cnot_counts(circuit)
        body["model"] = modexp_cnot_count(resolved["n"], resolved["window"])
        body["baseline_model"] = baseline_modexp_cnot_count(resolved["n"])
    elif circuit.name == "baseline-modexp":
        body["model"] = baseline_modexp_cnot_count(resolved["n"])
        body["windowed_model"] = modexp_cnot_count(resolved["n"], resolved["window"])
    return {'status': STATUS_OK, 'body': body}


def handle_verify(params: Mapping[str, Any]) -> Dict[str, Any]:
    """
    Check a named circuit against its oracle.

    Domains above the exhaustive limit are refused unless a sample size is
    given.
    """
    spec, resolved, circuit = _build(params)
    size = spec.domain_size(resolved)
    sample = params.get("sample")
    limit = VERIFY_SETTINGS["max_exhaustive_points"]
    if sample is None and size > limit:
        raise ValidationError(
            f"{spec.name} at n={resolved['n']} has {size} domain points, more than {limit}; "
            f"pass --sample K to check K random points")

    oracle = spec.oracle(resolved)
    if sample is not None:
        require(sample >= 1, f"sample must be >= 1, got {sample}")
        points = spec.sample(resolved, sample, params.get("seed") or 0)
        report = exhaustive_verify(circuit, oracle, points)
        report.sampled = True
    else:
        report = exhaustive_verify(circuit, oracle, spec.domain(resolved))

    body = report.to_dict()
    body["domain_size"] = size
    return {'status': STATUS_OK if report.passed else STATUS_VERIFICATION, 'body': body}


def handle_optimize_window(params: Mapping[str, Any]) -> Dict[str, Any]:
    """Best window size for n, with the full scan."""
    require(params.get("n") is not None, "parameter n is required")
    plan = optimal_window(params["n"])
    body = plan.to_dict()
    if params["n"] <= 64:
        body["scan"] = window_scan(params["n"]).to_dict(orient="records")
    return {'status': STATUS_OK, 'body': body}


def handle_estimate(params: Mapping[str, Any]) -> Dict[str, Any]:
    """Cost report and runtime estimate for n."""
    require(params.get("n") is not None, "parameter n is required")
    report = build_cost_report(params["n"], params.get("modulus"), params.get("base"), params.get("window"),
                               params.get("t_cnot"), params.get("coding_factor"))
    return {'status': STATUS_OK, 'body': report.to_dict()}


def handle_fit(params: Mapping[str, Any]) -> Dict[str, Any]:
    """Leading coefficient of the optimal windowed count."""
    result = fit_leading_coefficient(params.get("n_values") or FIT_N_VALUES)
    return {'status': STATUS_OK, 'body': result.to_dict()}


def handle_factor(params: Mapping[str, Any]) -> Dict[str, Any]:
    """Factor a desk-scale modulus by emulated order finding."""
    require(params.get("modulus") is not None, "parameter modulus is required")
    run = factor(params["modulus"], seed=params.get("seed"), shots=params.get("shots"),
                 max_attempts=params.get("max_attempts"), bases=params.get("bases"))
    return {'status': STATUS_OK, 'body': run.to_dict()}


def handle_export(params: Mapping[str, Any]) -> Dict[str, Any]:
    """Text form of a named circuit; JSON wraps it with the summary."""
    _, _, circuit = _build(params)
    text = export_text(circuit)
    if params.get("format") == "json":
        return {'status': STATUS_OK, 'body': {**_summary(circuit), "text": text}}
    return {'status': STATUS_OK, 'body': text}


HANDLERS: Dict[str, Callable[[Mapping[str, Any]], Dict[str, Any]]] = {
    "build": handle_build,
    "count": handle_count,
    "verify": handle_verify,
    "optimize-window": handle_optimize_window,
    "estimate": handle_estimate,
    "fit": handle_fit,
    "factor": handle_factor,
    "export": handle_export,
}


def run_command(verb: str, params: Mapping[str, Any], sink: Optional[ReportSink] = None) -> int:
    """
    Validate and dispatch one command, writing its output to the sink.

    Args:
        verb: One of the HANDLERS keys
        params: Verb parameters; None values are treated as absent
        sink: Destination, stdout by default

    Returns:
        Exit status: 0 success, 1 internal, 2 validation, 3 verification
    """
    sink = sink or get_sink()
    params = {k: v for k, v in params.items() if v is not None}
    try:
        if verb not in HANDLERS:
            raise ValidationError(f"unknown command {verb!r}; choose from {', '.join(HANDLERS)}")
        unknown = sorted(set(params) - ALLOWED_KEYS[verb])
        if unknown:
            raise ValidationError(f"{verb} does not accept {', '.join(unknown)}")

        logger.info(f"running {verb} with {params}")
        response = HANDLERS[verb](params)
    except Exception as e:
        response = error_handler.handle_exception(e, command=verb)

    if isinstance(response['body'], str):
        sink.write_text(response['body'])
    else:
        sink.write_json(response['body'])
    return response['status']
