"""Exact integer linear algebra for lattices and finite-order matrices.

Matrices are tuples of tuples of Python ints (row-major), so every value
is hashable and arithmetic never overflows.  Hermite normal form is the
canonical representation of a sublattice of Z^n (row style: positive
pivots, entries above a pivot reduced into [0, pivot)); two sublattices
are equal iff their HNF bases are equal.  Smith normal form solves the
fixed-point congruences of affine torus maps, and finite-order integer
matrices get exact eigenvalue multisets by peeling cyclotomic factors off
the characteristic polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .roots import RootOfUnity, euler_phi
from .spectra import Spectrum

__all__ = [
    "IntMatrix",
    "SmithDecomposition",
    "Sublattice",
    "charpoly",
    "cyclotomic_poly",
    "cyclotomic_spectrum",
    "hnf",
    "identity",
    "mat",
    "mat_mul",
    "mat_vec",
    "matrix_order",
    "saturate",
    "snf",
    "solve_torus_congruence",
    "sublattice_from_rows",
    "sublattice_sum",
    "transpose",
    "unimodular_inverse",
    "zero_sublattice",
]

IntMatrix = tuple[tuple[int, ...], ...]


def mat(rows: Iterable[Iterable[int]]) -> IntMatrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if m and any(len(row) != len(m[0]) for row in m):
        raise ValueError("ragged matrix")
    return m


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m: IntMatrix) -> IntMatrix:
    return tuple(zip(*m)) if m else ()


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: IntMatrix, v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def mat_pow(m: IntMatrix, k: int) -> IntMatrix:
    result = identity(len(m))
    base = m
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def _det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms
# ---------------------------------------------------------------------------


def hnf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form: returns (H, U) with U unimodular, U*m = H."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(row) for row in m]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]

    def rowsub(i, j, q):
        if q:
            a[i] = [x - q * y for x, y in zip(a[i], a[j])]
            u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    r = 0
    for c in range(cols):
        while True:
            nz = [i for i in range(r, rows) if a[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(a[i][c]), i))
            if i0 != r:
                a[r], a[i0] = a[i0], a[r]
                u[r], u[i0] = u[i0], u[r]
            done = True
            for i in range(r + 1, rows):
                if a[i][c] != 0:
                    rowsub(i, r, a[i][c] // a[r][c])
                    if a[i][c] != 0:
                        done = False
            if done:
                break
        if r < rows and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
                u[r] = [-x for x in u[r]]
            for i in range(r):
                rowsub(i, r, a[i][c] // a[r][c])
            r += 1
    h = tuple(tuple(row) for row in a)
    uu = tuple(tuple(row) for row in u)
    assert mat_mul(uu, m) == h
    return h, uu


@dataclass(frozen=True)
class SmithDecomposition:
    """U*M*V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... >= 0."""

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.d[i][i] for i in range(min(len(self.d), len(self.d[0]) if self.d else 0)))


def snf(m: IntMatrix) -> SmithDecomposition:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(row) for row in m]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def rowsub(i, j, q):
        if q:
            a[i] = [x - q * y for x, y in zip(a[i], a[j])]
            u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def colsub(i, j, q):
        if q:
            for row in a:
                row[i] -= q * row[j]
            for row in v:
                row[i] -= q * row[j]

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def move_min_to_pivot(t):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            return False
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        return True

    t = 0
    while t < min(rows, cols):
        # Reselect the globally smallest entry every round; pivots shrink to
        # the block gcd fast, which keeps the transforms from exploding.
        if not move_min_to_pivot(t):
            break
        while True:
            pivot = a[t][t]
            reduced = False
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    rowsub(i, t, a[i][t] // pivot)
                    if a[i][t] != 0:
                        reduced = True
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    colsub(j, t, a[t][j] // pivot)
                    if a[t][j] != 0:
                        reduced = True
            if reduced:
                move_min_to_pivot(t)
                continue
            # Row and column are clear; the pivot must divide the rest.
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % pivot:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[offender])]
            u[t] = [x + y for x, y in zip(u[t], u[offender])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    dec = SmithDecomposition(
        tuple(tuple(row) for row in u),
        tuple(tuple(row) for row in a),
        tuple(tuple(row) for row in v),
    )
    assert mat_mul(mat_mul(dec.u, m), dec.v) == dec.d
    return dec


def unimodular_inverse(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular integer matrix (its HNF is the identity)."""
    h, u = hnf(m)
    if h != identity(len(m)):
        raise ValueError("matrix is not unimodular")
    return u


# ---------------------------------------------------------------------------
# Sublattices of Z^n
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Sublattice:
    """A sublattice of Z^n, canonically represented by its HNF basis rows."""

    ambient_rank: int
    basis: IntMatrix

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_full(self) -> bool:
        return self.basis == identity(self.ambient_rank)

    def to_json(self) -> dict:
        return {"ambient_rank": self.ambient_rank, "basis": [list(r) for r in self.basis]}


def zero_sublattice(n: int) -> Sublattice:
    return Sublattice(n, ())


def sublattice_from_rows(ambient_rank: int, rows: Iterable[Sequence[int]]) -> Sublattice:
    """Sublattice generated by the given row vectors, HNF-canonicalized."""
    rows = mat(rows)
    if not rows:
        return zero_sublattice(ambient_rank)
    if len(rows[0]) != ambient_rank:
        raise ValueError("row length does not match ambient rank")
    h, _ = hnf(rows)
    basis = tuple(row for row in h if any(row))
    return Sublattice(ambient_rank, basis)


def sublattice_sum(a: Sublattice, b: Sublattice) -> Sublattice:
    if a.ambient_rank != b.ambient_rank:
        raise ValueError("ambient ranks differ")
    return sublattice_from_rows(a.ambient_rank, a.basis + b.basis)


def saturate(s: Sublattice) -> Sublattice:
    """The largest sublattice of Z^n with the same rational span (idempotent)."""
    if s.rank == 0:
        return s
    dec = snf(s.basis)
    rank = sum(1 for d in dec.diagonal if d)
    vinv = unimodular_inverse(dec.v)
    # U*B = D*V^{-1}; dropping the elementary divisors leaves primitive rows
    # spanning span_Q(B) intersect Z^n.
    return sublattice_from_rows(s.ambient_rank, vinv[:rank])


def adapted_unimodular(s: Sublattice) -> IntMatrix:
    """Unimodular matrix whose first rank(s) rows are a basis of the saturated s.

    Only meaningful for saturated s; callers that need the quotient
    Z^n / s should saturate first.
    """
    n = s.ambient_rank
    if s.rank == 0:
        return identity(n)
    dec = snf(s.basis)
    return unimodular_inverse(dec.v)


# ---------------------------------------------------------------------------
# Torus fixed-point congruences
# ---------------------------------------------------------------------------


def solve_torus_congruence(m: IntMatrix, t: Sequence[Fraction]) -> tuple[bool, tuple[Fraction, ...] | None]:
    """Decide (M - I) x = -t on R^n/Z^n; return (solvable, one rational solution).

    The affine map x -> Mx + t has a fixed point on the torus iff this
    congruence is solvable.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    if len(t) != n:
        raise ValueError("translation length mismatch")
    a = tuple(tuple(m[i][j] - (1 if i == j else 0) for j in range(n)) for i in range(n))
    b = [-Fraction(x) for x in t]
    dec = snf(a)
    c = [sum(Fraction(dec.u[i][j]) * b[j] for j in range(n)) for i in range(n)]
    y = []
    for i in range(n):
        d = dec.d[i][i]
        if d == 0:
            if c[i].denominator != 1:
                return False, None
            y.append(Fraction(0))
        else:
            y.append(c[i] / d)
    x = tuple(sum(Fraction(dec.v[i][j]) * y[j] for j in range(n)) % 1 for i in range(n))
    return True, x


# ---------------------------------------------------------------------------
# Characteristic polynomials and cyclotomic spectra
# ---------------------------------------------------------------------------


def charpoly(m: IntMatrix) -> tuple[int, ...]:
    """det(xI - M) by Faddeev-LeVerrier; coefficients descending, leading 1."""
    n = len(m)
    coeffs = [1]
    mk = identity(n)
    for k in range(1, n + 1):
        mk = mat_mul(m, mk)
        tr = sum(mk[i][i] for i in range(n))
        if tr % k:
            raise ArithmeticError("non-integral trace in Faddeev-LeVerrier")
        c = -(tr // k)
        coeffs.append(c)
        mk = tuple(tuple(mk[i][j] + (c if i == j else 0) for j in range(n)) for i in range(n))
    return tuple(coeffs)


def _poly_divmod(num: Sequence[int], den: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Division of integer polynomials (descending coefficients); den must be monic."""
    num = list(num)
    q = []
    dn = len(den) - 1
    while len(num) - 1 >= dn:
        lead = num[0]
        q.append(lead)
        for i, c in enumerate(den):
            num[i] -= lead * c
        assert num[0] == 0
        num.pop(0)
    while num and num[0] == 0 and len(num) > 1:
        num.pop(0)
    return tuple(q) if q else (0,), tuple(num) if num else (0,)


@lru_cache(maxsize=None)
def cyclotomic_poly(d: int) -> tuple[int, ...]:
    """Coefficients (descending) of the d-th cyclotomic polynomial."""
    if d < 1:
        raise ValueError("d must be positive")
    # x^d - 1 divided by all proper cyclotomic factors.
    poly = tuple([1] + [0] * (d - 1) + [-1])
    for e in range(1, d):
        if d % e == 0:
            poly, rem = _poly_divmod(poly, cyclotomic_poly(e))
            assert rem == (0,)
    return poly


def _cyclotomic_factorization(coeffs: tuple[int, ...], n: int) -> dict[int, int] | None:
    """Write a monic degree-n integer polynomial as a product of cyclotomics.

    Returns {d: multiplicity} or None if the polynomial has a
    non-cyclotomic factor.  Candidate orders d satisfy phi(d) <= n.
    """
    poly = coeffs
    factors: dict[int, int] = {}
    d = 1
    # phi(d) >= sqrt(d/2) for all d, so phi(d) <= n forces d <= 2n^2.
    while d <= 2 * n * n + 2:
        if euler_phi(d) <= n:
            while len(poly) > 1:
                q, rem = _poly_divmod(poly, cyclotomic_poly(d))
                if rem != (0,):
                    break
                factors[d] = factors.get(d, 0) + 1
                poly = q
        d += 1
    if poly != (1,):
        return None
    return factors


def matrix_order(m: IntMatrix) -> int | None:
    """Least k with M^k = I, or None when M has infinite order.

    The order of any finite-order element of GL_n(Z) divides
    lcm{d : phi(d) <= n}; here it is read off the cyclotomic factorization
    of the characteristic polynomial and confirmed with a single power.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    if abs(_det(m)) != 1:
        return None
    factors = _cyclotomic_factorization(charpoly(m), n)
    if factors is None:
        return None
    order = math.lcm(*factors)
    if mat_pow(m, order) != identity(n):
        return None
    return order


def cyclotomic_spectrum(m: IntMatrix) -> Spectrum:
    """Exact eigenvalue multiset of a finite-order integer matrix.

    Each cyclotomic factor of the characteristic polynomial contributes a
    full packet of primitive roots, so the spectrum is a disjoint union of
    complete Galois orbits.
    """
    n = len(m)
    if matrix_order(m) is None:
        raise ValueError("matrix does not have finite order")
    factors = _cyclotomic_factorization(charpoly(m), n)
    if factors is None:
        raise ArithmeticError("finite-order matrix with non-cyclotomic characteristic polynomial")
    values = []
    for d, mult in factors.items():
        for k in range(d):
            if math.gcd(k, d) == 1:
                values.extend([RootOfUnity(k, d)] * mult)
    return Spectrum(values)
