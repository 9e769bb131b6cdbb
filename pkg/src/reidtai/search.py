"""Machine searches over Galois orbits of roots of unity.

Four searches, all exact:

* feasible eigenvalue orders: the d for which a choice of one
  representative from each conjugate pair {u, d-u} of units keeps the
  total rotation below 1;
* the pair classification: unordered pairs {e(a/f), e(b/f)} admitting a
  Galois section Sigma (Sigma together with its conjugate covering the
  whole unit group) whose twist values sum below 1;
* the enumeration of exceptional eigenvalue multisets built from those
  pairs;
* the same-order screen: minimal age of a multiset of primitive n-th
  roots that is a disjoint union of half-orbit and full-orbit blocks.

Two pair/multiset feasibility predicates are implemented.  The
``value-union`` mode sums the distinct values of the twist family; the
``orbit-sets`` mode deduplicates Galois twists as multisets, pairs the
survivors by conjugation, and sums the minimum age of each class (the
constraint a rational representation places on eigenvalue data).  Neither
predicate reproduces the published reference sets exactly, so every
search returns a conformance report whose extras carry machine-checkable
witnesses.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .roots import RootOfUnity, unit_classes
from .spectra import Spectrum

__all__ = [
    "AvOrbitResult",
    "ConformanceReport",
    "MultisetEnumeration",
    "OrbitClass",
    "PairClass",
    "PairDecision",
    "SigmaWitness",
    "Table1Row",
    "CONFIRMED_ORDERS",
    "REFERENCE_MULTISETS",
    "REFERENCE_PAIRS",
    "TABLE1_ORDERS",
    "MODE_ORBIT_SETS",
    "MODE_VALUE_UNION",
    "av_orbit_feasibility",
    "classify_pairs",
    "enumerate_exceptional_multisets",
    "feasible_orders",
    "min_age_same_order",
    "min_halforbit_sum",
    "pair_feasible",
    "table1",
    "worker_count",
]

MODE_VALUE_UNION = "value-union"
MODE_ORBIT_SETS = "orbit-sets"
_MODES = (MODE_VALUE_UNION, MODE_ORBIT_SETS)

# Published reference data the searches are diffed against.
CONFIRMED_ORDERS: tuple[int, ...] = (2, 3, 4, 5, 6, 7, 8, 10, 12, 14, 18)
TABLE1_ORDERS: tuple[int, ...] = (3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 18)


def _r(a: int, d: int) -> RootOfUnity:
    return RootOfUnity(a, d)


REFERENCE_PAIRS: tuple[tuple[RootOfUnity, RootOfUnity], ...] = (
    (_r(1, 6), _r(1, 3)),
    (_r(1, 6), _r(1, 2)),
    (_r(1, 6), _r(2, 3)),
    (_r(1, 3), _r(1, 2)),
    (_r(1, 8), _r(3, 8)),
    (_r(1, 8), _r(5, 8)),
    (_r(1, 12), _r(1, 4)),
    (_r(1, 12), _r(5, 12)),
    (_r(1, 4), _r(5, 12)),
)

REFERENCE_TRIPLE: tuple[RootOfUnity, ...] = (_r(1, 12), _r(1, 4), _r(5, 12))

# The fourteen labelled exceptional eigenvalue multisets (non-trivial parts).
REFERENCE_MULTISETS: tuple[tuple[str, tuple[RootOfUnity, ...]], ...] = (
    ("a", (_r(1, 6), _r(1, 3))),
    ("b", (_r(1, 6), _r(1, 6), _r(1, 3))),
    ("c", (_r(1, 6), _r(1, 6), _r(1, 6), _r(1, 3))),
    ("d", (_r(1, 6), _r(1, 3), _r(1, 3))),
    ("e", (_r(1, 6), _r(1, 2))),
    ("f", (_r(1, 6), _r(1, 6), _r(1, 2))),
    ("g", (_r(1, 6), _r(2, 3))),
    ("h", (_r(1, 3), _r(1, 2))),
    ("i", (_r(1, 8), _r(3, 8))),
    ("j", (_r(1, 8), _r(5, 8))),
    ("k", (_r(1, 12), _r(1, 4))),
    ("l", (_r(1, 12), _r(5, 12))),
    ("m", (_r(1, 4), _r(5, 12))),
    ("n", (_r(1, 12), _r(1, 4), _r(5, 12))),
)


def worker_count(requested: int | None = None) -> int:
    """Worker count for partitionable searches; REIDTAI_THREADS overrides."""
    if requested is not None:
        return max(1, int(requested))
    env = os.environ.get("REIDTAI_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ValueError(f"REIDTAI_THREADS must be an integer, got {env!r}") from exc
    return 1


def _parallel_map(fn, items: Sequence, threads: int):
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# Conformance reporting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConformanceReport:
    """Diff of a computed set against its published reference set.

    ``extras`` pairs each surplus item with a witness dict that
    ``verify-witness`` can re-check.
    """

    expected: tuple
    computed: tuple
    missing: tuple
    extras: tuple  # of (item, witness-dict)

    @property
    def conforms(self) -> bool:
        return not self.missing and not self.extras

    def to_json(self, render=lambda x: x) -> dict:
        return {
            "expected": [render(x) for x in self.expected],
            "computed": [render(x) for x in self.computed],
            "missing": [render(x) for x in self.missing],
            "extra": [{"item": render(x), "witness": w} for x, w in self.extras],
        }


def _conformance(expected: Sequence, computed: Sequence, witness_of) -> ConformanceReport:
    expected = tuple(expected)
    computed = tuple(computed)
    expected_set = set(expected)
    missing = tuple(x for x in expected if x not in set(computed))
    extras = tuple((x, witness_of(x)) for x in computed if x not in expected_set)
    return ConformanceReport(expected, computed, missing, extras)


# ---------------------------------------------------------------------------
# Half-orbit sums and the order scan
# ---------------------------------------------------------------------------


def min_halforbit_sum(d: int) -> tuple[Fraction, tuple[int, ...]]:
    """Minimal sum of one representative u/d per conjugate pair {u, d-u}."""
    classes = unit_classes(d)
    reps = tuple(min(pair) for pair in classes.pairs)
    total = sum((Fraction(u, d) for u in reps), Fraction(0))
    return total, reps


@dataclass(frozen=True)
class Table1Row:
    n: int
    half_count: int
    values: tuple[RootOfUnity, ...]
    mean: Fraction

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "half_count": self.half_count,
            "values": [str(v) for v in self.values],
            "mean": str(self.mean),
        }


def table1() -> tuple[Table1Row, ...]:
    """Minimal half-orbit representatives and their means, one row per listed order."""
    rows = []
    for n in TABLE1_ORDERS:
        total, reps = min_halforbit_sum(n)
        values = tuple(_r(u, n) for u in reps)
        rows.append(Table1Row(n, len(reps), values, total / len(reps)))
    return tuple(rows)


def _subset_min_sum(d: int) -> Fraction:
    """Second search path: exhaustive minimum over all representative choices."""
    classes = unit_classes(d)
    best = None
    pairs = classes.pairs
    choices = [[Fraction(u, d) for u in (pair if len(pair) == 2 else pair * 2)] for pair in pairs]

    def rec(i: int, acc: Fraction):
        nonlocal best
        if best is not None and acc >= best:
            return
        if i == len(choices):
            best = acc
            return
        for val in choices[i]:
            rec(i + 1, acc + val)

    rec(0, Fraction(0))
    return best


def feasible_orders(d_max: int = 372, threads: int | None = None) -> tuple[tuple[int, ...], ConformanceReport]:
    """All d <= d_max whose minimal half-orbit sum is below 1, with conformance."""
    if d_max < 2:
        raise ValueError("d_max must be at least 2")
    ds = list(range(2, d_max + 1))
    sums = _parallel_map(lambda d: min_halforbit_sum(d)[0], ds, worker_count(threads))
    computed = tuple(d for d, s in zip(ds, sums) if s < 1)

    def witness(d: int) -> dict:
        total, reps = min_halforbit_sum(d)
        return {"kind": "order", "d": d, "representatives": list(reps), "sum": str(total)}

    expected = tuple(d for d in CONFIRMED_ORDERS if d <= d_max)
    return computed, _conformance(expected, computed, witness)


# ---------------------------------------------------------------------------
# Orbit-sets feasibility (rational-representation constraint)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitClass:
    """A conjugation class of distinct Galois-twist multisets."""

    members: tuple[tuple[RootOfUnity, ...], ...]
    min_age: Fraction
    chosen: tuple[RootOfUnity, ...]

    def to_json(self) -> dict:
        return {
            "members": [[str(v) for v in m] for m in self.members],
            "min_age": str(self.min_age),
            "chosen": [str(v) for v in self.chosen],
        }


@dataclass(frozen=True)
class AvOrbitResult:
    total: Fraction
    feasible: bool
    classes: tuple[OrbitClass, ...]
    modulus: int

    def to_json(self) -> dict:
        return {
            "total": str(self.total),
            "feasible": self.feasible,
            "modulus": self.modulus,
            "classes": [c.to_json() for c in self.classes],
        }


def _twist(k: int, v: RootOfUnity) -> RootOfUnity:
    return RootOfUnity(k * v.numerator, v.denominator)


def av_orbit_feasibility(values: Iterable) -> AvOrbitResult:
    """Sum, over conjugation classes of distinct Galois twists, of the class-minimal age.

    Distinct twist multisets are assumed to sit in distinct conjugate
    subrepresentations unless they are literally equal; conjugate twists
    share one class because only one of each conjugate pair contributes.
    Feasible means 0 < total < 1.
    """
    ms = tuple(sorted(v if isinstance(v, RootOfUnity) else RootOfUnity(Fraction(v)) for v in values))
    if not ms:
        raise ValueError("empty eigenvalue multiset")
    if any(v == 0 for v in ms):
        raise ValueError("multiset entries must be nonzero roots of unity")
    modulus = math.lcm(*[v.order for v in ms])
    twists: dict[tuple, None] = {}
    for k in unit_classes(modulus).units:
        twists.setdefault(tuple(sorted(_twist(k, v) for v in ms)))
    classes = []
    seen = set()
    total = Fraction(0)
    for t in sorted(twists):
        if t in seen:
            continue
        tbar = tuple(sorted(RootOfUnity(-v.numerator, v.denominator) for v in t))
        seen.update((t, tbar))
        members = (t,) if tbar == t else (t, tbar)
        ages = [sum(m, Fraction(0)) for m in members]
        min_age = min(ages)
        chosen = members[ages.index(min_age)]
        classes.append(OrbitClass(members, min_age, chosen))
        total += min_age
    return AvOrbitResult(total, 0 < total < 1, tuple(classes), modulus)


# ---------------------------------------------------------------------------
# Value-union feasibility and the pair search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SigmaWitness:
    """A Galois section: chosen unit residues covering every conjugate pair."""

    modulus: int
    chosen_residues: tuple[int, ...]

    def covers_conjugate_pairs(self) -> bool:
        chosen = set(self.chosen_residues)
        if any(math.gcd(u, self.modulus) != 1 or not 0 < u < self.modulus for u in chosen):
            return False
        return all(any(u in chosen for u in pair) for pair in unit_classes(self.modulus).pairs)

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "chosen_residues": list(self.chosen_residues)}


def _value_union_minimum(alpha: RootOfUnity, beta: RootOfUnity):
    """Exact minimum of sum(distinct twist values) over covering Galois sections.

    Branch-and-bound over one side per conjugate pair of units; the union
    only grows along a branch, so pruning at the current best is sound.
    """
    modulus = math.lcm(alpha.order, beta.order)
    options = []
    for pair in unit_classes(modulus).pairs:
        sides = []
        for u in pair:
            vals = frozenset((_twist(u, alpha), _twist(u, beta)))
            sides.append((sum(vals, Fraction(0)), u, vals))
        if len(sides) == 1:
            sides.append(sides[0])
        sides.sort(key=lambda s: (s[0], s[1]))
        options.append(tuple(sides))
    options.sort(key=lambda sides: (-sides[0][0], sides[0][1]))

    best_sum = None
    best_units: tuple[int, ...] = ()
    best_values: frozenset = frozenset()
    chosen: list[int] = []

    def rec(i: int, acc: frozenset, acc_sum: Fraction):
        nonlocal best_sum, best_units, best_values
        if best_sum is not None and acc_sum >= best_sum:
            return
        if i == len(options):
            best_sum, best_units, best_values = acc_sum, tuple(chosen), acc
            return
        for _, u, vals in options[i]:
            new = vals - acc
            chosen.append(u)
            rec(i + 1, acc | new, acc_sum + sum(new, Fraction(0)))
            chosen.pop()

    rec(0, frozenset(), Fraction(0))
    witness = SigmaWitness(modulus, tuple(sorted(set(best_units))))
    return best_sum, witness, tuple(sorted(best_values))


@dataclass(frozen=True)
class PairDecision:
    pair: tuple[RootOfUnity, RootOfUnity]
    mode: str
    feasible: bool
    minimal_sum: Fraction
    witness: SigmaWitness | None = None
    values: tuple[RootOfUnity, ...] | None = None
    orbit: AvOrbitResult | None = None

    def witness_json(self) -> dict:
        payload = {
            "kind": f"pair-{self.mode}",
            "pair": [str(v) for v in self.pair],
            "feasible": self.feasible,
            "minimal_sum": str(self.minimal_sum),
        }
        if self.witness is not None:
            payload["sigma"] = self.witness.to_json()
            payload["values"] = [str(v) for v in self.values]
        if self.orbit is not None:
            payload["orbit"] = self.orbit.to_json()
        return payload


def _decide_pair(alpha: RootOfUnity, beta: RootOfUnity, mode: str) -> PairDecision:
    pair = tuple(sorted((alpha, beta)))
    if mode == MODE_VALUE_UNION:
        total, witness, values = _value_union_minimum(alpha, beta)
        return PairDecision(pair, mode, total < 1, total, witness=witness, values=values)
    if mode == MODE_ORBIT_SETS:
        orbit = av_orbit_feasibility(pair)
        return PairDecision(pair, mode, orbit.feasible, orbit.total, orbit=orbit)
    raise ValueError(f"unknown mode {mode!r}; expected one of {_MODES}")


def pair_feasible(a: int, b: int, f: int, mode: str = MODE_VALUE_UNION) -> PairDecision:
    """Decide feasibility of the value pair {e(a/f), e(b/f)}; requires 0 < a < b < f."""
    if not 0 < a < b < f:
        raise ValueError("need 0 < a < b < f")
    alpha = RootOfUnity(a, f)
    beta = RootOfUnity(b, f)
    if alpha == 0 or beta == 0:
        raise ValueError("degenerate pair: a value reduces to 1")
    return _decide_pair(alpha, beta, mode)


@dataclass(frozen=True)
class PairClass:
    values: tuple[RootOfUnity, RootOfUnity]
    witness: SigmaWitness | None
    minimal_sum: Fraction
    decision: PairDecision

    def to_json(self) -> dict:
        return self.decision.witness_json()


def _pair_candidates(f_max: int) -> list[tuple[RootOfUnity, RootOfUnity]]:
    # Any covering section's alpha-part already contains one of each
    # conjugate pair of primitive d_alpha-th values, so its sum alone is
    # >= min_halforbit_sum(d_alpha); the orbit-sets total obeys the same
    # bound.  Orders with half-orbit sum >= 1 therefore never occur.
    feasible_d = [d for d in range(2, f_max + 1) if min_halforbit_sum(d)[0] < 1]
    primitive = {d: [_r(k, d) for k in unit_classes(d).units] for d in feasible_d}
    seen = set()
    out = []
    for da in feasible_d:
        for db in feasible_d:
            if math.lcm(da, db) > f_max:
                continue
            for alpha in primitive[da]:
                for beta in primitive[db]:
                    if alpha == beta:
                        continue
                    key = tuple(sorted((alpha, beta)))
                    if key not in seen:
                        seen.add(key)
                        out.append(key)
    out.sort(key=lambda p: (math.lcm(p[0].order, p[1].order), p))
    return out


def classify_pairs(
    f_max: int = 126, mode: str = MODE_VALUE_UNION, threads: int | None = None
) -> tuple[tuple[PairClass, ...], ConformanceReport]:
    """All distinct reduced value pairs with lcm of orders <= f_max passing the mode predicate."""
    if f_max < 2:
        raise ValueError("f_max must be at least 2")
    if mode not in _MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {_MODES}")
    candidates = _pair_candidates(f_max)
    decisions = _parallel_map(lambda p: _decide_pair(p[0], p[1], mode), candidates, worker_count(threads))
    classes = tuple(
        PairClass(d.pair, d.witness, d.minimal_sum, d)
        for d in decisions
        if d.feasible
    )
    computed = tuple(c.values for c in classes)
    by_pair = {c.values: c for c in classes}
    expected = tuple(p for p in REFERENCE_PAIRS if math.lcm(p[0].order, p[1].order) <= f_max)
    report = _conformance(expected, computed, lambda p: by_pair[p].to_json())
    return classes, report


# ---------------------------------------------------------------------------
# Exceptional multiset enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultisetEnumeration:
    mode: str
    multisets: tuple[Spectrum, ...]
    conformance: ConformanceReport
    refutations: tuple[tuple[Spectrum, Fraction], ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "multisets": [s.to_json() for s in self.multisets],
            "conformance": self.conformance.to_json(render=lambda t: [str(v) for v in t]),
            "refutations": [
                {"multiset": s.to_json(), "orbit_total": str(total)} for s, total in self.refutations
            ],
        }


def _multiplicity_variants(values: tuple[RootOfUnity, ...]) -> list[tuple[RootOfUnity, ...]]:
    """All multisets using every listed value at least once with total sum < 1."""
    out = []
    k = len(values)

    def rec(i: int, current: list, acc: Fraction):
        if i == k:
            out.append(tuple(current))
            return
        v = values[i]
        rest = sum(values[i + 1:], Fraction(0))
        mult = 1
        while acc + mult * v + rest < 1:
            rec(i + 1, current + [v] * mult, acc + mult * v)
            mult += 1

    rec(0, [], Fraction(0))
    return out


def enumerate_exceptional_multisets(
    mode: str = MODE_VALUE_UNION, f_max: int = 126, threads: int | None = None
) -> MultisetEnumeration:
    """Eigenvalue multisets with >= 2 distinct non-trivial values consistent with age < 1.

    Values are drawn from the classified pairs (value-union predicate) or
    the reference triple, each value appearing at least once, total sum
    below 1.  In orbit-sets mode the multisets must additionally pass
    av_orbit_feasibility; every candidate it excludes is returned with its
    refutation total (>= 1).
    """
    if mode not in _MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {_MODES}")
    classes, _ = classify_pairs(f_max, MODE_VALUE_UNION, threads=threads)
    bases = {c.values for c in classes}
    bases.add(REFERENCE_TRIPLE)
    candidates = []
    for base in sorted(bases, key=lambda b: (len(b), b)):
        candidates.extend(_multiplicity_variants(base))
    candidates = sorted(set(candidates), key=lambda t: (len(t), t))

    kept: list[tuple[RootOfUnity, ...]] = []
    refuted: list[tuple[Spectrum, Fraction]] = []
    orbit_totals: dict[tuple, Fraction] = {}
    if mode == MODE_VALUE_UNION:
        kept = candidates
    else:
        for ms in candidates:
            result = av_orbit_feasibility(ms)
            orbit_totals[ms] = result.total
            if result.feasible:
                kept.append(ms)
            else:
                refuted.append((Spectrum(ms), result.total))

    expected = tuple(tuple(sorted(vals)) for _, vals in REFERENCE_MULTISETS)

    def witness(ms: tuple) -> dict:
        payload = {
            "kind": "multiset",
            "values": [str(v) for v in ms],
            "sum": str(sum(ms, Fraction(0))),
        }
        if mode == MODE_ORBIT_SETS:
            payload["orbit_total"] = str(orbit_totals[ms])
        return payload

    report = _conformance(expected, tuple(kept), witness)
    return MultisetEnumeration(
        mode,
        tuple(Spectrum(ms) for ms in kept),
        report,
        tuple(refuted),
    )


# ---------------------------------------------------------------------------
# Same-order minimal-age screen
# ---------------------------------------------------------------------------


def min_age_same_order(n: int, dim: int) -> Fraction | None:
    """Minimal age of dim primitive n-th roots forming half-/full-orbit blocks.

    A half-orbit block takes the cheaper representative of every conjugate
    pair; a full-orbit block takes all primitive roots.  Returns None when
    dim is not a non-negative combination of the two block sizes.
    """
    if n < 2:
        raise ValueError("order must be at least 2")
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    classes = unit_classes(n)
    half_size = len(classes.pairs)
    half_sum, _ = min_halforbit_sum(n)
    full_size = len(classes.units)
    full_sum = sum((Fraction(u, n) for u in classes.units), Fraction(0))
    best = None
    for b in range(dim // full_size + 1):
        rem = dim - b * full_size
        if rem % half_size:
            continue
        age = (rem // half_size) * half_sum + b * full_sum
        if best is None or age < best:
            best = age
    return best
