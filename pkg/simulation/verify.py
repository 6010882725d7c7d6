"""
Oracle-driven verification of circuits over register-value domains.
"""
import itertools
import logging
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional

import numpy as np

from config_shor import VERIFY_SETTINGS
from models.circuit import CLEAN_ROLES, PRESERVED_ROLES, Circuit
from models.reports import VerificationReport
from simulation.basis_simulator import read_register, run_batch, states_from_assignments

logger = logging.getLogger(__name__)

Oracle = Callable[[Mapping[str, int]], Mapping[str, int]]


def _register_value(states: np.ndarray, qubits: List[int], column: int) -> int:
    return sum(int(states[q, column]) << i for i, q in enumerate(qubits))


def _counterexample(c: Circuit, point: Mapping[str, int], expected: Mapping[str, int],
                    after: np.ndarray, column: int, register: str, reason: str) -> Dict[str, Any]:
    names = list(expected) + ([register] if register not in expected else [])
    return {
        "inputs": dict(point),
        "expected": dict(expected),
        "observed": {name: _register_value(after, c.layout.qubits(name), column) for name in names},
        "register": register,
        "reason": reason,
    }


def _check_batch(c: Circuit, oracle: Oracle, points: List[Mapping[str, int]]) -> Optional[Dict[str, Any]]:
    before = states_from_assignments(c, points)
    after = run_batch(c, before)
    expected = [dict(oracle(point)) for point in points]

    failures = np.zeros(len(points), dtype=bool)
    reasons: Dict[int, tuple] = {}

    checked = set(expected[0]) if expected else set()
    for name in checked:
        observed = read_register(after, c.layout.qubits(name))
        wanted = np.array([e[name] for e in expected], dtype=observed.dtype)
        bad = observed != wanted
        for column in np.flatnonzero(bad & ~failures):
            reasons[int(column)] = (name, "output differs from oracle")
        failures |= bad

    for register in c.layout:
        if register.name in checked:
            continue
        if register.role in CLEAN_ROLES:
            reason = f"{register.role.value} register not restored"
        elif register.role in PRESERVED_ROLES:
            reason = f"{register.role.value} register modified"
        else:
            continue
        qubits = register.qubits
        bad = np.any(after[qubits] != before[qubits], axis=0)
        for column in np.flatnonzero(bad & ~failures):
            reasons[int(column)] = (register.name, reason)
        failures |= bad

    if not failures.any():
        return None
    column = int(np.flatnonzero(failures)[0])
    register, reason = reasons[column]
    return _counterexample(c, points[column], expected[column], after, column, register, reason)


def exhaustive_verify(c: Circuit, oracle: Oracle, domain: Iterable[Mapping[str, int]],
                      batch_size: Optional[int] = None, sample: Optional[int] = None,
                      seed: int = 0) -> VerificationReport:
    """
    Run every domain point through the circuit and compare with the oracle.

    Registers named by the oracle must match it. Other ANCILLA and FLAG
    registers must return to their starting value, and other INPUT and
    CONTROL registers must be unchanged.

    Args:
        c: Circuit under test
        oracle: Maps input register values to expected output register values
        domain: Input assignments (register name -> value)
        batch_size: Points simulated per batch
        sample: When given, check this many points drawn at random from the domain
        seed: Seed for sampling

    Returns:
        VerificationReport with the first counterexample on failure
    """
    batch_size = batch_size or VERIFY_SETTINGS["batch_size"]
    points_iter = iter(domain)
    if sample is not None:
        pool = list(points_iter)
        rng = np.random.default_rng(seed)
        chosen = rng.choice(len(pool), size=min(sample, len(pool)), replace=False)
        points_iter = iter([pool[i] for i in sorted(chosen)])

    checked = 0
    while True:
        chunk = list(itertools.islice(points_iter, batch_size))
        if not chunk:
            break
        failure = _check_batch(c, oracle, chunk)
        if failure is not None:
            logger.info(f"{c.name}: counterexample after {checked} passing points: {failure['reason']}")
            return VerificationReport(c.name, False, checked + len(chunk), failure, sample is not None)
        checked += len(chunk)

    logger.info(f"{c.name}: {checked} points verified")
    return VerificationReport(c.name, True, checked, None, sample is not None)
