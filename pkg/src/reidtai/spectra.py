"""Eigenvalue multisets of finite-order elements.

A finite-order linear map has eigenvalues e(r_1), ..., e(r_n) with
0 <= r_i < 1; its age is the exact rational r_1 + ... + r_n.  An element
is exceptional when 0 < age < 1, and a collection of elements satisfies
the Reid-Tai condition when none of them is exceptional.  Ages, powers
and arc widths are exact; only trace magnitudes go through floating
point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator

from .roots import RootOfUnity

__all__ = [
    "Spectrum",
    "blichfeldt_violating",
    "satisfies_rt",
]

# Shortest-arc bound for non-scalar elements of primitive groups, in turns.
BLICHFELDT_ARC_TURNS = Fraction(1, 6)


class Spectrum:
    """A finite multiset of roots of unity: the eigenvalue data of one element.

    Values are kept as a sorted tuple (multiplicity by repetition), which is
    also the JSON serialization order.
    """

    __slots__ = ("values",)

    def __init__(self, values: Iterable):
        vals = tuple(sorted(v if isinstance(v, RootOfUnity) else RootOfUnity(Fraction(v)) for v in values))
        if not vals:
            raise ValueError("a spectrum needs at least one eigenvalue")
        object.__setattr__(self, "values", vals)

    def __setattr__(self, name, value):
        raise AttributeError("Spectrum is immutable")

    def __eq__(self, other):
        return isinstance(other, Spectrum) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __iter__(self) -> Iterator[RootOfUnity]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __repr__(self):
        return "Spectrum([%s])" % ", ".join(str(v) for v in self.values)

    @property
    def dimension(self) -> int:
        return len(self.values)

    def age(self) -> Fraction:
        """Exact sum of the fractional rotation numbers."""
        return sum(self.values, Fraction(0))

    def is_exceptional(self) -> bool:
        """True iff 0 < age < 1."""
        a = self.age()
        return 0 < a < 1

    def power(self, k: int) -> "Spectrum":
        """Eigenvalues of the k-th power: each r maps to k*r mod 1."""
        return Spectrum(RootOfUnity(k * v.numerator, v.denominator) for v in self.values)

    def conjugate(self) -> "Spectrum":
        return Spectrum(RootOfUnity(-v.numerator, v.denominator) for v in self.values)

    def arc_width_turns(self) -> Fraction:
        """Shortest closed arc containing all eigenvalues, in turns (exact)."""
        distinct = sorted(set(self.values))
        if len(distinct) == 1:
            return Fraction(0)
        gaps = [distinct[i + 1] - distinct[i] for i in range(len(distinct) - 1)]
        gaps.append(1 + distinct[0] - distinct[-1])
        return 1 - max(gaps)

    def arc_width(self) -> float:
        """Shortest closed arc containing all eigenvalues, in radians."""
        return 2 * math.pi * float(self.arc_width_turns())

    def trace_magnitude(self) -> float:
        """|sum of e(r)| in double precision."""
        re = math.fsum(math.cos(2 * math.pi * v.numerator / v.denominator) for v in self.values)
        im = math.fsum(math.sin(2 * math.pi * v.numerator / v.denominator) for v in self.values)
        return math.hypot(re, im)

    def to_json(self) -> list[str]:
        return [str(v) for v in self.values]

    @classmethod
    def from_json(cls, payload: Iterable[str]) -> "Spectrum":
        return cls(Fraction(s) for s in payload)


def satisfies_rt(elements: Iterable[Spectrum]) -> bool:
    """Reid-Tai condition for a set of non-identity element spectra: no member is exceptional."""
    return not any(s.is_exceptional() for s in elements)


def blichfeldt_violating(s: Spectrum) -> bool:
    """Non-constant spectrum squeezed into an arc of width <= pi/3.

    The bound is inclusive: width exactly pi/3 still flags.  A True value
    reports that no primitive group can contain a non-scalar element with
    these eigenvalues; the group-theoretic conclusion is the caller's.
    """
    if len(set(s.values)) < 2:
        return False
    return s.arc_width_turns() <= BLICHFELDT_ARC_TURNS
