#!/usr/bin/env python3
"""Capacity sequences of balls, ellipsoids, unions, and p-ball domains.

The k-th capacity of E(a, b) is the (k+1)-th smallest value m*a + n*b;
disjoint unions combine by max-plus convolution; a concave toric domain
inherits the capacities of the disjoint union of its weight balls.
Capacities are monotone under symplectic embeddings, which makes them
embedding obstructions: this script ends with the volume-filling
packing of a B(99) plus 199 unit balls into B(100), which the
capacities cannot (and do not) obstruct.
"""

from fractions import Fraction

from capax import (ball, ball_sequence, ech_concave_toric, ech_ellipsoid,
                   ech_union, packing_obstruction, pball_region)

print("== Ellipsoid sequences ==")
print("B(1), k <= 10:   ", ech_ellipsoid(1, 1, 10).values)
print("E(1,5), k <= 10: ", ech_ellipsoid(1, 5, 10).values)
print("scaling by 9:    ", ech_ellipsoid(9, 45, 5).values,
      "= 9 *", ech_ellipsoid(1, 5, 5).values)

print()
print("== Disjoint unions (max-plus convolution) ==")
two_balls = ech_union([ball_sequence(1, 6), ball_sequence(1, 6)], 6)
print("B(1) u B(1):     ", two_balls.values)
print("  c_2 = 2: two unit balls fill two capacities at once, while a")
print("  single ball only reaches c_2 = 1.")

print()
print("== Concave toric domains via ball weights ==")
for denom in (1, 2, 3):
    region = pball_region(1.0 / denom)
    result = ech_concave_toric(region, 8)
    print(f"p = 1/{denom}: c_1 = {float(result.sequence[1]):.6f}"
          f"   (2*2^(-1/p) = {2.0 * 2.0 ** (-denom):.6f})")

print()
print("== The 199-ball packing of B(100) ==")
for extra in (198, 199):
    sources = [ball(99)] + [ball(1)] * extra
    report = packing_obstruction(sources, ball(100), 2000)
    volume = 99 ** 2 / 2 + extra / 2
    print(f"B(99) + {extra} x B(1) -> B(100): {report.verdict}"
          f"   (source volume {volume}, target {100 ** 2 / 2})")
print("The 199-ball variant fills the target volume exactly and still")
print("passes every capacity test; the packing witness in the")
print("ball_surgeries demo shows the embedding really exists.")

print()
print("== An actual obstruction ==")
report = packing_obstruction([ball(1), ball(1)], ball(Fraction(19, 10)), 10)
print(f"2 x B(1) -> B(1.9): {report.verdict} at k = {report.obstructed_at}")
