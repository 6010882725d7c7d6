"""
Integer helpers shared by the builders, the cost model and the pipeline.
"""
from math import gcd
from typing import List, Optional


def bits_of(value: int, width: int) -> List[int]:
    """
    Little-endian bits of a value.

    Args:
        value: Nonnegative integer
        width: Number of bits to return

    Returns:
        List of 0/1 with bit i of value at index i
    """
    return [(value >> i) & 1 for i in range(width)]


def popcount(value: int) -> int:
    return bin(value).count("1")


def modinv(a: int, m: int) -> Optional[int]:
    """Inverse of a modulo m, or None when gcd(a, m) != 1."""
    if gcd(a, m) != 1:
        return None
    return pow(a, -1, m)


def width_for(modulus: int) -> int:
    """Smallest n with modulus <= 2^n (n = ceil(log2 N))."""
    return max(1, (modulus - 1).bit_length())


def prime_factors(value: int) -> List[int]:
    """Distinct prime factors by trial division (small values only)."""
    factors = []
    p = 2
    while p * p <= value:
        if value % p == 0:
            factors.append(p)
            while value % p == 0:
                value //= p
        p += 1
    if value > 1:
        factors.append(value)
    return factors


def multiplicative_order(a: int, modulus: int) -> Optional[int]:
    """Least r >= 1 with a^r = 1 mod modulus, by direct search."""
    if gcd(a, modulus) != 1:
        return None
    value = a % modulus
    r = 1
    while value != 1 % modulus:
        value = value * a % modulus
        r += 1
    return r
