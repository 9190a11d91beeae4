#!/usr/bin/env python3
"""Two surgeries on round balls: strangulation and strain.

Strangulation removes a thin triangle reaching from the hypotenuse
midpoint of the B(1) triangle almost to the origin, pinching the ball
into two lobes; the resulting domain stays within a shrinking distance
of log sqrt(2) of B(1).  Strain glues two thin volume-99/2 tails onto
B(99); the companion packing certificate tiles the B(100)-shell with
exactly 199 unimodular half-unit triangles, realizing the matching ball
packing.
"""

from fractions import Fraction

from capax import (StrangulationParams, strain_domain, strangulated_ball,
                   strangulation_chain_bound, strangulation_limit_table,
                   triangle_packing_witness, weight_decomposition)
from capax.constructions import (strangulation_ball_fits_lobe,
                                 truncated_ellipsoid_data)
from capax.weights import WeightBudget

print("== Strangulation ==")
params = StrangulationParams(Fraction(1, 1000))
region = strangulated_ball(params)
print("vertices:", [(str(x), str(y)) for x, y in region.vertices])
print("area:", region.area(), "(unit ball has 1/2)")

data = truncated_ellipsoid_data(params)
print("truncation slope beta =", data.beta, " distance factor C =",
      float(data.big_c))
print("affine image of the lower lobe matches the truncation polygon:",
      data.affine_image_verified)
print("inner ball fits inside one lobe (exact check):",
      strangulation_ball_fits_lobe(params))

print()
print("distance bound d(B(1), strangulated) over a delta grid:")
for row in strangulation_limit_table([Fraction(1, 10 ** j)
                                      for j in range(1, 7)]):
    print(f"  delta = {row['delta']:.0e}: bound {row['upperBound']:.6f}"
          f"  (gap to log sqrt 2: {row['gapToLimit']:.2e})")
print("The two lobes are congruent half-balls, so log sqrt(2) is the")
print("natural limit: the surgery barely moves the domain while its")
print("boundary dynamics degenerate.")

print()
print("== Strain ==")
for k in (99, 200, 1000):
    region = strain_domain(k)
    print(f"tail extent {k}: area = {region.area()}  vertices: "
          f"{region.vertices}")
weights = weight_decomposition(strain_domain(99), WeightBudget(250))
ones = sum(1 for w in weights.weights if w == 1)
print(f"weights of the base case: ({weights.weights[0]}, 1 x {ones})")

print()
print("== The exact packing certificate ==")
certificate = triangle_packing_witness()
print(f"triangles: {len(certificate.maps)}, total area "
      f"{certificate.total_area} = area of the B(100)-shell")
print("first few placements:")
for amap, image in list(zip(certificate.maps, certificate.images))[:3]:
    print(f"  matrix {amap.matrix}, shift {amap.translation} -> {image}")
print("Every image sits in the shell, interiors are pairwise disjoint,")
print("and the shell is filled exactly: 199 unit balls pack beside")
print("B(99) into B(100) with no room to spare.")

report = strangulation_chain_bound(StrangulationParams(Fraction(1, 10 ** 6)))
print()
print("final strangulation bound at delta = 1e-6:", report.upper_bound)
