"""Exact arithmetic for roots of unity.

A root of unity e(x) := exp(2*pi*i*x) is stored as its exact rotation
number, a reduced fraction a/d in [0, 1).  The multiplicative order of
e(a/d) is the reduced denominator d, the Galois group acting on the d-th
roots of unity is the unit group (Z/dZ)^x, and complex conjugation pairs
each unit u with d - u.  Everything here is arbitrary-precision integer
arithmetic; no floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "RootOfUnity",
    "UnitClasses",
    "conjugate",
    "euler_phi",
    "galois_apply",
    "normalize",
    "unit_classes",
]


class RootOfUnity(Fraction):
    """The root of unity e(a/d) as the reduced fraction a/d in [0, 1).

    Immutable and hashable; equality is structural equality of reduced
    fractions, so multisets of roots deduplicate exactly.  Serializes as
    the string str(Fraction), e.g. "5/18", with integers rendered bare
    ("0" for the trivial root).
    """

    __slots__ = ()

    def __new__(cls, numerator=0, denominator=None):
        if denominator is None:
            value = Fraction(numerator)
        else:
            value = Fraction(numerator, denominator)
        return super().__new__(cls, value % 1)

    @property
    def order(self) -> int:
        """Multiplicative order of e(a/d): the reduced denominator."""
        return self.denominator


def normalize(a: int, d: int) -> RootOfUnity:
    """Reduce a/d modulo 1 to the canonical representative in [0, 1)."""
    if d < 1:
        raise ValueError(f"denominator must be a positive integer, got {d}")
    return RootOfUnity(a, d)


def galois_apply(k: int, z: RootOfUnity) -> RootOfUnity:
    """Apply the Galois automorphism e(x) -> e(k*x); k must be a unit mod order(z)."""
    d = z.denominator
    if math.gcd(k, d) != 1:
        raise ValueError(f"{k} is not coprime to the order {d}")
    return RootOfUnity(k * z.numerator, d)


def conjugate(z: RootOfUnity) -> RootOfUnity:
    """Complex conjugation e(x) -> e(-x)."""
    return RootOfUnity(-z.numerator, z.denominator)


def euler_phi(d: int) -> int:
    if d < 1:
        raise ValueError(f"phi undefined for {d}")
    result = d
    n = d
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


@dataclass(frozen=True)
class UnitClasses:
    """Units modulo d grouped into complex-conjugation pairs {u, d-u}.

    A self-paired unit (u == d-u, which happens only for d = 2) is stored
    as the 1-tuple (u,).
    """

    modulus: int
    units: tuple[int, ...]
    pairs: tuple[tuple[int, ...], ...]


def unit_classes(d: int) -> UnitClasses:
    """Partition the units mod d into conjugation pairs; requires d >= 2."""
    if d < 2:
        raise ValueError(f"modulus must be at least 2, got {d}")
    units = tuple(u for u in range(1, d) if math.gcd(u, d) == 1)
    pairs = []
    for u in units:
        v = d - u
        if u < v:
            pairs.append((u, v))
        elif u == v:
            pairs.append((u,))
    return UnitClasses(d, units, tuple(pairs))
