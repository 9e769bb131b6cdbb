"""Finite monomial groups: permutations of coordinate lines with exact phases.

An element is a permutation matrix times a diagonal of roots of unity,
stored as (permutation, integer phase numerators, common modulus).  The
modulus is always reduced to the least faithful one, so structural
equality is mathematical equality.  Eigenvalues come from the cycle
decomposition: an l-cycle whose phases multiply to e(s) contributes
e((s + j)/l) for j = 0..l-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .roots import RootOfUnity
from .search import REFERENCE_PAIRS
from .spectra import Spectrum

__all__ = [
    "CaseRecord",
    "ExceptionalClassEntry",
    "MonomialElement",
    "MonomialGroup",
    "PropProdReport",
    "conjugacy_class",
    "g_group",
    "g_group_order",
    "imprimitive_classification",
    "monomial_closure",
    "monomial_identity",
    "normal_closure",
    "prop_prod_check",
    "spectrum_of",
]


class GroupTooLargeError(RuntimeError):
    """Closure exceeded the configured cap: group too large or infinite."""


@dataclass(frozen=True)
class MonomialElement:
    """(permutation) * diag(phases): line j is scaled by e(k_j/m), then sent to line perm[j]."""

    permutation: tuple[int, ...]
    phase_numerators: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        n = len(self.permutation)
        if sorted(self.permutation) != list(range(n)):
            raise ValueError("permutation must be a bijection of 0..n-1")
        if len(self.phase_numerators) != n:
            raise ValueError("phase vector length mismatch")
        m = self.modulus
        if m < 1:
            raise ValueError("modulus must be positive")
        nums = tuple(k % m for k in self.phase_numerators)
        g = m
        for k in nums:
            g = math.gcd(g, k)
        object.__setattr__(self, "modulus", m // g)
        object.__setattr__(self, "phase_numerators", tuple(k // g for k in nums))

    @classmethod
    def from_phases(cls, permutation: Sequence[int], phases: Sequence) -> "MonomialElement":
        fracs = [RootOfUnity(Fraction(p)) for p in phases]
        m = math.lcm(*[f.denominator for f in fracs]) if fracs else 1
        return cls(tuple(permutation), tuple(f.numerator * (m // f.denominator) for f in fracs), m)

    @property
    def degree(self) -> int:
        return len(self.permutation)

    @property
    def phases(self) -> tuple[RootOfUnity, ...]:
        return tuple(RootOfUnity(k, self.modulus) for k in self.phase_numerators)

    def is_identity(self) -> bool:
        return self.modulus == 1 and self.permutation == tuple(range(self.degree))

    def compose(self, other: "MonomialElement") -> "MonomialElement":
        """Matrix product self * other."""
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        m = math.lcm(self.modulus, other.modulus)
        fa = m // self.modulus
        fb = m // other.modulus
        perm = tuple(self.permutation[p] for p in other.permutation)
        nums = tuple(
            self.phase_numerators[other.permutation[j]] * fa + other.phase_numerators[j] * fb
            for j in range(self.degree)
        )
        return MonomialElement(perm, nums, m)

    def inverse(self) -> "MonomialElement":
        n = self.degree
        inv = [0] * n
        for j, img in enumerate(self.permutation):
            inv[img] = j
        nums = tuple(-self.phase_numerators[inv[i]] for i in range(n))
        return MonomialElement(tuple(inv), nums, self.modulus)

    def sort_key(self):
        return (self.permutation, self.phases)

    def cycles(self) -> list[list[int]]:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.permutation[j]
            out.append(cyc)
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def is_transposition(self) -> bool:
        return self.cycle_type() == tuple([2] + [1] * (self.degree - 2))

    def to_json(self) -> dict:
        return {
            "permutation": list(self.permutation),
            "phases": [str(p) for p in self.phases],
        }


def monomial_identity(n: int) -> MonomialElement:
    return MonomialElement(tuple(range(n)), (0,) * n, 1)


def spectrum_of(g: MonomialElement) -> Spectrum:
    """Exact eigenvalue multiset from the cycle decomposition."""
    values = []
    m = g.modulus
    for cyc in g.cycles():
        length = len(cyc)
        s = sum(g.phase_numerators[j] for j in cyc) % m
        for j in range(length):
            values.append(RootOfUnity(s + j * m, m * length))
    return Spectrum(values)


def _age_times_2m(g: MonomialElement) -> tuple[int, int]:
    """age(g) as (numerator, 2m): an l-cycle with phase sum s/m has age s/m + (l-1)/2."""
    m = g.modulus
    num = 0
    for cyc in g.cycles():
        s = sum(g.phase_numerators[j] for j in cyc) % m
        num += 2 * s + m * (len(cyc) - 1)
    return num, 2 * m


@dataclass(frozen=True)
class MonomialGroup:
    degree: int
    elements: tuple[MonomialElement, ...]
    generators: tuple[MonomialElement, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: MonomialElement) -> bool:
        return g in set(self.elements)


def monomial_closure(generators: Iterable[MonomialElement], cap: int = 1_000_000, degree: int | None = None) -> MonomialGroup:
    """Breadth-first product closure with deterministic canonical ordering."""
    gens = tuple(generators)
    if degree is None:
        if not gens:
            raise ValueError("need generators or an explicit degree")
        degree = gens[0].degree
    ident = monomial_identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x.compose(g)
                if y not in seen:
                    if len(seen) >= cap:
                        raise GroupTooLargeError(f"group too large or infinite: cap {cap} exceeded")
                    seen.add(y)
                    new.append(y)
        frontier = new
    elements = tuple(sorted(seen, key=MonomialElement.sort_key))
    return MonomialGroup(degree, elements, gens)


def g_group_order(m: int, p: int, n: int) -> int:
    return m**n * math.factorial(n) // p


def g_group(m: int, p: int, n: int, cap: int = 1_000_000) -> MonomialGroup:
    """The imprimitive monomial group G(m, p, n): phases in mu_m, phase product in mu_{m/p}."""
    if m < 1 or n < 1 or p < 1 or m % p:
        raise ValueError("need m, n >= 1 and p | m")
    expected = g_group_order(m, p, n)
    if expected > cap:
        raise GroupTooLargeError(f"|G({m},{p},{n})| = {expected} exceeds cap {cap}")
    gens = []
    ident_perm = tuple(range(n))
    if p < m:
        gens.append(MonomialElement(ident_perm, (p,) + (0,) * (n - 1), m))
    if p > 1 and n >= 2:
        gens.append(MonomialElement(ident_perm, (1, m - 1) + (0,) * (n - 2), m))
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        gens.append(MonomialElement(tuple(perm), (0,) * n, 1))
    if not gens:  # G(1,1,1) is trivial
        return MonomialGroup(n, (monomial_identity(n),), ())
    group = monomial_closure(gens, cap=cap, degree=n)
    if group.order != expected:
        raise ArithmeticError(f"closure produced {group.order} elements, expected {expected}")
    return group


def conjugacy_class(g: MonomialElement, group: MonomialGroup) -> tuple[MonomialElement, ...]:
    """Orbit of g under conjugation by the group's generators."""
    gens = [(h, h.inverse()) for h in group.generators]
    seen = {g}
    frontier = [g]
    while frontier:
        new = []
        for x in frontier:
            for h, hinv in gens:
                y = h.compose(x).compose(hinv)
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return tuple(sorted(seen, key=MonomialElement.sort_key))


def normal_closure(g: MonomialElement, group: MonomialGroup, cap: int = 1_000_000) -> MonomialGroup:
    """Smallest normal subgroup of the group containing g.

    Generated from a small subset of the conjugacy class, enlarged until
    the subgroup swallows the whole class; that subgroup then equals the
    subgroup generated by the class.
    """
    if g not in group:
        raise ValueError("element does not belong to the group")
    cls = conjugacy_class(g, group)
    gens = [cls[0]]
    while True:
        sub = monomial_closure(gens, cap=cap, degree=group.degree)
        members = set(sub.elements)
        missing = next((c for c in cls if c not in members), None)
        if missing is None:
            return MonomialGroup(group.degree, sub.elements, tuple(gens))
        gens.append(missing)


# ---------------------------------------------------------------------------
# Exceptional-element reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExceptionalClassEntry:
    representative: MonomialElement
    class_size: int
    age: Fraction
    spectrum: Spectrum
    cycle_type: tuple[int, ...]
    closure_order: int
    closure_index: int
    is_transposition: bool

    def to_json(self) -> dict:
        return {
            "representative": self.representative.to_json(),
            "class_size": self.class_size,
            "age": str(self.age),
            "spectrum": self.spectrum.to_json(),
            "cycle_type": list(self.cycle_type),
            "closure_order": self.closure_order,
            "closure_index": self.closure_index,
            "is_transposition": self.is_transposition,
        }


@dataclass(frozen=True)
class PropProdReport:
    degree: int
    group_order: int
    reflection_rep: bool
    entries: tuple[ExceptionalClassEntry, ...]
    violations: tuple[ExceptionalClassEntry, ...]

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "group_order": self.group_order,
            "reflection_rep": self.reflection_rep,
            "exceptional_classes": [e.to_json() for e in self.entries],
            "violations": [e.to_json() for e in self.violations],
        }


def _reported_spectrum(g: MonomialElement, reflection_rep: bool) -> Spectrum:
    spec = spectrum_of(g)
    if not reflection_rep:
        return spec
    values = list(spec.values)
    values.remove(RootOfUnity(0))
    return Spectrum(values)


def prop_prod_check(group: MonomialGroup, reflection_rep: bool = False, cap: int = 1_000_000) -> PropProdReport:
    """Scan a monomial group for exceptional elements, per conjugacy class.

    Entries whose normal closure is the whole group must have transposition
    permutation part; any counterexample lands in ``violations`` and
    signals an implementation bug, not a discovery.
    """
    if reflection_rep:
        if any(g.modulus != 1 for g in group.elements):
            raise ValueError("reflection projection only applies to phase-free (symmetric) groups")
        if group.degree < 2:
            raise ValueError("reflection representation needs degree >= 2")
    exceptional = []
    for g in group.elements:
        num, den = _age_times_2m(g)
        if 0 < num < den:
            exceptional.append(g)
    entries = []
    assigned: set[MonomialElement] = set()
    for g in exceptional:
        if g in assigned:
            continue
        cls = conjugacy_class(g, group)
        assigned.update(cls)
        closure = normal_closure(cls[0], group, cap=cap)
        spec = _reported_spectrum(cls[0], reflection_rep)
        entries.append(
            ExceptionalClassEntry(
                representative=cls[0],
                class_size=len(cls),
                age=spec.age(),
                spectrum=spec,
                cycle_type=cls[0].cycle_type(),
                closure_order=closure.order,
                closure_index=group.order // closure.order,
                is_transposition=cls[0].is_transposition(),
            )
        )
    entries.sort(key=lambda e: (e.age, e.representative.sort_key()))
    # The transposition law presumes a genuine line system (degree >= 2);
    # scalar groups on one line are exempt.
    violations = tuple(
        e for e in entries if group.degree >= 2 and e.closure_index == 1 and not e.is_transposition
    )
    return PropProdReport(group.degree, group.order, reflection_rep, tuple(entries), violations)


# ---------------------------------------------------------------------------
# The imprimitive case analysis
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CaseRecord:
    label: str
    swap_value: RootOfUnity
    extra: RootOfUnity | None
    spectrum: Spectrum
    square_spectrum: Spectrum
    square_age: Fraction
    eliminated: bool
    reason: str

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "swap_value": str(self.swap_value),
            "extra": None if self.extra is None else str(self.extra),
            "spectrum": self.spectrum.to_json(),
            "square_spectrum": self.square_spectrum.to_json(),
            "square_age": str(self.square_age),
            "eliminated": self.eliminated,
            "reason": self.reason,
        }


def imprimitive_case_candidates() -> tuple[tuple[RootOfUnity, RootOfUnity | None], ...]:
    """Candidate (swap eigenvalue r, optional extra diagonal eigenvalue) pairs.

    A line-swapping exceptional element contributes eigenvalues e(r) and
    e(r + 1/2), so {r, r + 1/2} must be a classified pair with sum < 1
    (giving r = 1/6 and r = 1/8) or the pair {1, -1} (r = 0).  For r = 0
    an extra diagonal eigenvalue v is allowed when {1/2, v} is itself a
    classified pair.
    """
    half = Fraction(1, 2)
    swap_rs = [RootOfUnity(0)]
    extras: list[RootOfUnity] = []
    for pair in REFERENCE_PAIRS:
        lo, hi = pair
        if hi - lo == half and lo + hi < 1:
            swap_rs.append(lo)
        if hi == half:
            extras.append(lo)
        if lo == half:
            extras.append(hi)
    candidates: list[tuple[RootOfUnity, RootOfUnity | None]] = [(RootOfUnity(0), None)]
    for v in sorted(extras):
        candidates.append((RootOfUnity(0), v))
    for r in sorted(swap_rs):
        if r != 0:
            candidates.append((r, None))
    return tuple(candidates)


def imprimitive_classification() -> tuple[CaseRecord, ...]:
    """Candidate line-swapping exceptional elements and the square test.

    The square of a line-swapper stabilizes every line; if that square is
    still exceptional it would itself have to swap lines, a contradiction.
    The only candidate surviving the test is the reflection -1, 1, ..., 1.
    """
    records = []
    for idx, (r, extra) in enumerate(imprimitive_case_candidates()):
        values = [r, RootOfUnity(r + Fraction(1, 2))]
        if extra is not None:
            values.append(extra)
        values.append(RootOfUnity(0))  # one representative fixed line
        spec = Spectrum(values)
        square = spec.power(2)
        square_age = square.age()
        eliminated = square.is_exceptional()
        if eliminated:
            reason = "square is exceptional but stabilizes all lines"
        else:
            reason = "survives: reflection with eigenvalues -1, 1, ..., 1"
        records.append(
            CaseRecord(
                label=chr(ord("A") + idx),
                swap_value=r,
                extra=extra,
                spectrum=spec,
                square_spectrum=square,
                square_age=square_age,
                eliminated=eliminated,
                reason=reason,
            )
        )
    return tuple(records)
