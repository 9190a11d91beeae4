#!/usr/bin/env python3
"""The non-convexity threshold for the p-ball family.

g(p) = 2^(2/p-2) * vol(p-ball domain) grows like sqrt(pi/p)/4 as
p -> 0, and once g/(1 + log 4 + log g) >= 256 the domain is certified
not symplectomorphic to any convex set.  Everything runs in log space:
raw g overflows floats long before the threshold.
"""

from fractions import Fraction

from capax import (KNOWN_SUFFICIENT_K, condition_holds, dc_lower_bound,
                   g_recursion_check, g_reciprocal_exact, log_g,
                   minimal_threshold_k)

print("== Exact small values ==")
for k in (1, 2, 5, 6):
    print(f"g(1/{k}) = {g_reciprocal_exact(k)}")

print()
print("== Step identity g(1/(k+1)) = (2k+2)/(2k+1) g(1/k) ==")
print("max deviation for k <= 10^5:", f"{g_recursion_check(10 ** 5):.2e}")

print()
print("== The condition g/(1+log4+log g) >= 256 ==")
for k in (6, 100, 10 ** 6, KNOWN_SUFFICIENT_K):
    report = condition_holds(Fraction(1, k))
    print(f"k = {k:>9}: log g = {report.log_g:8.4f}, holds = {report.holds}")

k_star = minimal_threshold_k()
print()
print(f"minimal k with the condition: k* = {k_star}")
print(f"known sufficient value:            {KNOWN_SUFFICIENT_K}")
print("flip check:",
      condition_holds(Fraction(1, k_star)).holds, "at k*, ",
      condition_holds(Fraction(1, k_star - 1)).holds, "at k*-1")

print()
print("== What the condition buys ==")
report = dc_lower_bound(Fraction(1, k_star))
print(f"at p = 1/k*: certified distance to every symplectic ellipsoid")
print(f"  >= {report.lower_bound:.6f} > log 2 = 0.693147...,")
print("so the domain cannot be within log 2 of an ellipsoid, which every")
print("symplectically convex domain is (inscribed-ellipsoid bound):")
print("not symplectically convex =", report.not_symplectically_convex)

print()
print("== Growth of the certified bound ==")
for j in range(1, 9):
    k = 10 ** j
    value = dc_lower_bound(Fraction(1, k)).lower_bound
    print(f"k = 10^{j}: lower bound {value:.4f}")
print("(log g only grows like log sqrt(k): the family diverges, slowly.)")
