"""
Desk-scale order finding: the windowed exponentiation circuit is simulated
over every exponent, the Fourier transform is applied classically, and
sampled outcomes go through continued-fraction post-processing.
"""
import logging
from fractions import Fraction
from math import gcd
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from config_shor import SHOR_SETTINGS
from estimation.cost_model import optimal_window
from models.circuit import CLEAN_ROLES
from models.reports import OrderFindingRun
from simulation.basis_simulator import read_register, run_batch, states_from_assignments
from synthesis.modexp import ModExpParams, build_windowed_modexp
from utils.error_handler import ValidationError, VerificationError, require
from utils.number_theory import prime_factors, width_for

logger = logging.getLogger(__name__)


def _desk_width(N: int) -> int:
    n = width_for(N)
    require(2 <= n <= SHOR_SETTINGS["max_bits"],
            f"order finding is limited to moduli of 2..{SHOR_SETTINGS['max_bits']} bits, got {N}")
    return n


def evaluate_modexp_table(N: int, a: int, m: Optional[int] = None) -> np.ndarray:
    """
    a^x mod N for every 2n-bit exponent x, read off the simulated circuit.

    Raises:
        VerificationError: if any value, the exponent register or an
            ancilla disagrees with the expected result
    """
    n = _desk_width(N)
    m = optimal_window(n).m if m is None else m
    circuit = build_windowed_modexp(ModExpParams(n, N, a, m))
    exponents = np.arange(1 << (2 * n), dtype=np.int64)

    states = states_from_assignments(circuit, [{"exponent": int(x)} for x in exponents])
    states = run_batch(circuit, states)
    values = read_register(states, circuit.layout.qubits("target"))

    expected = np.array([pow(a, int(x), N) for x in exponents], dtype=np.int64)
    mismatches = np.flatnonzero(values != expected)
    if mismatches.size:
        x = int(mismatches[0])
        raise VerificationError(
            f"modexp circuit gave {int(values[x])} for {a}^{x} mod {N}, expected {int(expected[x])}")
    if np.any(read_register(states, circuit.layout.qubits("exponent")) != exponents):
        raise VerificationError("modexp circuit disturbed the exponent register")
    for register in circuit.layout:
        if register.role in CLEAN_ROLES and np.any(states[register.start:register.stop]):
            raise VerificationError(f"modexp circuit left register {register.name!r} dirty")

    logger.debug(f"evaluated {a}^x mod {N} over {exponents.size} exponents (m={m})")
    return values


def order_distribution(f_values: np.ndarray) -> np.ndarray:
    """
    Outcome probabilities of the exponent register after the Fourier transform.

    The state sum_x |x>|f(x)> splits into one branch per value of f; each
    branch contributes the squared inverse DFT of its indicator vector.
    """
    f_values = np.asarray(f_values)
    probabilities = np.zeros(f_values.size, dtype=float)
    for value in np.unique(f_values):
        amplitudes = np.fft.ifft((f_values == value).astype(complex))
        probabilities += np.abs(amplitudes) ** 2
    return probabilities


def _classical_table(N: int, a: int, n: int) -> np.ndarray:
    return np.array([pow(a, x, N) for x in range(1 << (2 * n))], dtype=np.int64)


def emulate_order_finding(N: int, a: int, shots: Optional[int] = None,
                          seed: Optional[int] = None, rng: Optional[np.random.Generator] = None,
                          use_circuit: bool = True, window: Optional[int] = None) -> OrderFindingRun:
    """
    One order-finding run for base a.

    Args:
        N: Modulus, at most five bits
        a: Base coprime to N
        shots: Number of measured samples
        seed: Seed for a fresh generator when rng is not given
        rng: Shared generator, so repeated attempts stay reproducible
        use_circuit: Evaluate a^x through the simulated circuit; the
            classical table is only for callers that already trust it
        window: Exponent window size, optimal by default

    Returns:
        OrderFindingRun with samples, support and the recovered order
    """
    shots = SHOR_SETTINGS["default_shots"] if shots is None else shots
    require(shots >= 0, f"shots must be >= 0, got {shots}")
    if gcd(a, N) != 1:
        raise ValidationError(f"base {a} shares the factor {gcd(a, N)} with {N}")
    n = _desk_width(N)
    rng = np.random.default_rng(seed) if rng is None else rng

    f_values = evaluate_modexp_table(N, a, window) if use_circuit else _classical_table(N, a, n)
    probabilities = order_distribution(f_values)
    support = [
        (int(y), float(p)) for y, p in enumerate(probabilities)
        if p > SHOR_SETTINGS["support_threshold"]
    ]
    samples = [int(y) for y in rng.choice(probabilities.size, size=shots, p=probabilities / probabilities.sum())]

    recovered = None
    for y in samples:
        recovered = recover_order_from_sample(y, probabilities.size, N, a)
        if recovered is not None:
            break
    logger.info(f"order finding N={N} a={a}: samples {samples}, order {recovered}")
    return OrderFindingRun(N, a, n, samples, recovered, support, via_circuit=use_circuit, bases_tried=[a])


def _convergents(value: Fraction) -> Iterator[Fraction]:
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    numerator, denominator = value.numerator, value.denominator
    while denominator:
        term, remainder = divmod(numerator, denominator)
        h_prev, h = h, term * h + h_prev
        k_prev, k = k, term * k + k_prev
        yield Fraction(h, k)
        numerator, denominator = denominator, remainder


def minimal_order(a: int, r: int, N: int) -> int:
    """Shrink a known period r of a mod N to the order by removing prime factors."""
    for p in prime_factors(r):
        while r % p == 0 and pow(a, r // p, N) == 1:
            r //= p
    return r


def recover_order_from_sample(y: int, denominator: int, N: int, a: int) -> Optional[int]:
    """
    Order of a mod N from one measured value, when y/denominator reveals it.

    The convergents of y/denominator are tried in order; the first
    denominator q < N with a^q = 1 mod N wins.
    """
    require(0 <= y < denominator, f"sample {y} outside [0, {denominator})")
    if y == 0:
        return None
    for convergent in _convergents(Fraction(y, denominator)):
        q = convergent.denominator
        if q >= N:
            break
        if pow(a, q, N) == 1:
            return minimal_order(a, q, N)
    return None


def factor_via_order(N: int, a: int, r: int) -> Optional[Tuple[int, int]]:
    """Nontrivial factors from an even order r with a^(r/2) != -1 mod N."""
    if pow(a, r, N) != 1:
        raise ValidationError(f"{r} is not a period of {a} mod {N}")
    if r % 2:
        return None
    half = pow(a, r // 2, N)
    if half == N - 1:
        return None
    first, second = gcd(half - 1, N), gcd(half + 1, N)
    if 1 < first < N and 1 < second < N:
        return first, second
    return None


def _perfect_power(N: int) -> Optional[int]:
    for k in range(2, N.bit_length() + 1):
        root = round(N ** (1 / k))
        for b in (root - 1, root, root + 1):
            if b > 1 and b ** k == N:
                return b
    return None


def factor(N: int, seed: Optional[int] = None, shots: Optional[int] = None,
           max_attempts: Optional[int] = None, use_circuit: bool = True,
           bases: Optional[Sequence[int]] = None) -> OrderFindingRun:
    """
    Factor N by repeated order finding with random bases.

    Even N and perfect powers are split classically. A base sharing a
    factor with N ends the search immediately. Explicit bases replace the
    random draws and are tried in order. via_circuit is set once any
    attempt has evaluated the exponentiation circuit.
    """
    require(N >= 4, f"modulus must be >= 4, got {N}")
    max_attempts = SHOR_SETTINGS["max_attempts"] if max_attempts is None else max_attempts
    n = width_for(N)

    if N % 2 == 0:
        return OrderFindingRun(N, 2, n, factors=(2, N // 2), attempts=0, via_circuit=False)
    root = _perfect_power(N)
    if root is not None:
        return OrderFindingRun(N, root, n, factors=(root, N // root), attempts=0, via_circuit=False)
    _desk_width(N)

    rng = np.random.default_rng(SHOR_SETTINGS["default_seed"] if seed is None else seed)
    if bases is not None:
        require(all(2 <= a <= N - 2 for a in bases), f"bases must lie in [2, {N - 2}]")
        candidates = [int(a) for a in bases]
    else:
        candidates = (int(rng.integers(2, N - 1)) for _ in range(max_attempts))

    tried: List[int] = []
    used_circuit = False
    run = None
    for attempt, a in enumerate(candidates, start=1):
        tried.append(a)
        shared = gcd(a, N)
        if shared > 1:
            logger.info(f"attempt {attempt}: base {a} shares factor {shared} with {N}")
            return OrderFindingRun(N, a, n, factors=(shared, N // shared), attempts=attempt,
                                   via_circuit=used_circuit, bases_tried=tried)

        run = emulate_order_finding(N, a, shots, rng=rng, use_circuit=use_circuit)
        used_circuit = used_circuit or run.via_circuit
        run.attempts = attempt
        run.bases_tried = list(tried)
        if run.recovered_order is not None:
            run.factors = factor_via_order(N, a, run.recovered_order)
        if run.factors:
            logger.info(f"factored {N} = {run.factors[0]} * {run.factors[1]} after {attempt} attempts")
            return run

    logger.warning(f"no factors of {N} found in {len(tried)} attempts")
    return run if run is not None else OrderFindingRun(N, 0, n, attempts=len(tried), bases_tried=tried)
