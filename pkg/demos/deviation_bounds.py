#!/usr/bin/env python3
"""Deviation of unitary operators: chord sums against arc sums.

The deviation of a unitary T with respect to an orthonormal basis B,
d(T, B) = sum ||T(b) - b||, measures distance from the identity.  In the
eigenbasis it is a sum of chord lengths, so it is capped by 2*pi times
the age; products obey d(T_1...T_n) <= n * sum d(T_i); and a trace-free
spectrum forces a deviation at least the dimension.  These inequalities
are what confine large-dimensional group representations away from
Reid-Tai failure.
"""

import math
from fractions import Fraction

import numpy as np

from reidtai.deviation import (
    eigenbasis_deviation,
    extraspecial_scan,
    invariant_dimension,
    product_bound_check,
    tensor_perm_trace_check,
)
from reidtai.monomial import g_group
from reidtai.spectra import Spectrum

F = Fraction

print("Chord sums stay below arc sums (deviation below 2*pi*age):")
for vals in (["1/2"], ["1/4", "3/4"], ["1/6", "1/6", "1/6", "1/3"]):
    s = Spectrum(F(v) for v in vals)
    print(f"  {{{', '.join(vals)}}}: deviation {eigenbasis_deviation(s):.6f} "
          f"vs 2*pi*age {2 * math.pi * float(s.age()):.6f}")
print("  An exceptional spectrum (age < 1) therefore has deviation below 2*pi.")

print("\nProduct bound with an adapted basis (two non-commuting quarter turns):")
t1 = np.diag([1, 1j])
t2 = np.array([[0, 1], [1, 0]]) @ t1 @ np.array([[0, 1], [1, 0]])
rep = product_bound_check([t1, t2])
print(f"  d(T1 T2, adapted) = {rep.product_deviation:.6f} <= "
      f"2 * (d(T1) + d(T2)) = {2 * rep.factor_deviation_sum:.6f}: {rep.ok}")

print("\nInvariant dimension by averaged traces, with a witness when invariant-free:")
rep = invariant_dimension(g_group(2, 1, 2))
print(f"  G(2,1,2) standard representation: {rep.dimension} invariants "
      f"(witness element index {rep.witness_index})")
rep = invariant_dimension(g_group(1, 1, 3))
print(f"  S3 permutation representation:    {rep.dimension} invariant (the diagonal line)")

print("\nCyclic tensor-permutation trace identity (factors composed along the cycle):")
rep = tensor_perm_trace_check([np.diag([1, 1j]), np.diag([1, 1j])])
print(f"  T = diag(1,i) twice on C^2 (x) C^2: cyclic trace {rep.cyclic_trace:.6f}, "
      f"bound dim^(n-1) = {rep.bound}")

print("\nExtraspecial spectrum screen: who survives the 8*pi deviation ceiling?")
print(f"  {'p':>3} {'n':>3} {'m':>3} {'dim':>4}  chord-sum  verdict")
for rec in extraspecial_scan(32):
    verdict = "survives (dim < 16)" if rec.survives else "fails"
    print(f"  {rec.p:>3} {rec.n_exp:>3} {rec.m:>3} {rec.dim:>4}  {rec.eigen_deviation:>9.4f}  {verdict}")
