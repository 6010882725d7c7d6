"""
Report data models: verification, cost, window tables and factoring runs.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple


@dataclass
class VerificationReport:
    """
    Outcome of checking a circuit against an integer oracle.
    """
    circuit: str
    passed: bool
    points_checked: int
    counterexample: Optional[Dict[str, Any]] = None
    sampled: bool = False

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON output."""
        return {
            "circuit": self.circuit,
            "passed": self.passed,
            "points_checked": self.points_checked,
            "sampled": self.sampled,
            "counterexample": self.counterexample,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VerificationReport":
        return cls(
            circuit=data["circuit"],
            passed=bool(data["passed"]),
            points_checked=int(data["points_checked"]),
            counterexample=data.get("counterexample"),
            sampled=bool(data.get("sampled", False)),
        )


@dataclass(frozen=True)
class WindowTable:
    """
    Classically precomputed multipliers for one exponent window.

    Entry j of window k is a^(j * 2^(k*m)) mod N, times 2^n mod N when
    montgomery_form is set.
    """
    window_index: int
    entries: Tuple[int, ...]
    montgomery_form: bool
    modulus: int

    @property
    def address_bits(self) -> int:
        return len(self.entries).bit_length() - 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "window_index": self.window_index,
            "address_bits": self.address_bits,
            "montgomery_form": self.montgomery_form,
            "modulus": self.modulus,
            "entries": [hex(e) for e in self.entries],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "WindowTable":
        return cls(
            window_index=int(data["window_index"]),
            entries=tuple(int(e, 16) for e in data["entries"]),
            montgomery_form=bool(data["montgomery_form"]),
            modulus=int(data["modulus"]),
        )


@dataclass(frozen=True)
class WindowPlan:
    """Window size and the closed-form CNOT total it yields."""
    n: int
    m: int
    window_count: int
    cnot_total: int

    def to_dict(self) -> Dict[str, int]:
        return {
            "n": self.n,
            "m": self.m,
            "window_count": self.window_count,
            "cnot_total": self.cnot_total,
        }


@dataclass(frozen=True)
class RuntimeEstimate:
    """
    Wall time of one run: cnot_total * t_cnot * coding_factor.
    """
    cnot_total: int
    t_cnot: float
    coding_factor: float
    wall_time: float
    human: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cnot_total": self.cnot_total,
            "t_cnot": self.t_cnot,
            "coding_factor": self.coding_factor,
            "seconds": self.wall_time,
            "human": self.human,
        }


@dataclass
class CostReport:
    """
    Model and measured CNOT counts for one problem size.
    """
    n: int
    per_primitive: Dict[str, Dict[str, Optional[int]]] = field(default_factory=dict)
    window_plan: Dict[str, Optional[int]] = field(default_factory=dict)
    totals: Dict[str, int] = field(default_factory=dict)
    runtime: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "per_primitive": self.per_primitive,
            "window_plan": self.window_plan,
            "totals": self.totals,
            "runtime": self.runtime,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CostReport":
        return cls(
            n=int(data["n"]),
            per_primitive=dict(data.get("per_primitive", {})),
            window_plan=dict(data.get("window_plan", {})),
            totals=dict(data.get("totals", {})),
            runtime=dict(data.get("runtime", {})),
        )


@dataclass
class OrderFindingRun:
    """
    One emulated order-finding attempt, optionally with extracted factors.
    """
    N: int
    a: int
    n: int
    samples: List[int] = field(default_factory=list)
    recovered_order: Optional[int] = None
    distribution_support: List[Tuple[int, float]] = field(default_factory=list)
    factors: Optional[Tuple[int, int]] = None
    attempts: int = 1
    via_circuit: bool = True
    bases_tried: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "N": self.N,
            "a": self.a,
            "n": self.n,
            "distribution_support": [[y, p] for y, p in self.distribution_support],
            "samples": list(self.samples),
            "recovered_order": self.recovered_order,
            "factors": list(self.factors) if self.factors else None,
            "attempts": self.attempts,
            "via_circuit": self.via_circuit,
            "bases_tried": list(self.bases_tried),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "OrderFindingRun":
        factors = data.get("factors")
        return cls(
            N=int(data["N"]),
            a=int(data["a"]),
            n=int(data["n"]),
            samples=[int(y) for y in data.get("samples", [])],
            recovered_order=data.get("recovered_order"),
            distribution_support=[(int(y), float(p)) for y, p in data.get("distribution_support", [])],
            factors=tuple(factors) if factors else None,
            attempts=int(data.get("attempts", 1)),
            via_circuit=bool(data.get("via_circuit", True)),
            bases_tried=[int(a) for a in data.get("bases_tried", [])],
        )
