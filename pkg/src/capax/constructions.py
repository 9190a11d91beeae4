"""Two surgeries on round balls, as executable exact geometry.

Strangulation: remove from the unit-ball triangle a thin triangle
symmetric about the diagonal, with hypotenuse chord half-width eps and
inner vertex at (delta, delta).  Cutting along the diagonal gives two
congruent convex lobes; the unimodular map [[1,-1],[1,0]] carries the
lower lobe onto the quadrilateral bounded by the diagonal, the image of
the hypotenuse piece, and the line y = beta*x + delta, where

    beta(delta) = (1/2 + eps - delta) / (2*eps)

is exactly the truncation slope.  The known distance bound for such a
truncated ellipsoid (relative to E(1, (1+2eps)/(2-4eps))) is
log C(delta) with C = ((1+beta)/beta)^2, and chaining the embeddings
gives d_c(B(1), B_delta) <= (1/2) log(C^2 (2-4eps)/(1+2eps)), which
tends to log(sqrt 2).

Strain: glue two volume-99/2 tail triangles onto the B(99) triangle
along the diagonal, apex at height 99/k; the base case k = 99 has tails
of height 1 and weight sequence (99, 1 x 198).  The companion packing
witness triangulates the shell between the B(99) and B(100) triangles
into exactly 199 unimodular copies of the half-unit triangle, which is
the geometric content of packing 199 unit balls alongside B(99) into
B(100).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .distance import DistanceBoundReport
from .errors import CertificateInvalidError, ContractError
from .moment import (AffineUnimodular, MomentRegion, PolygonRegion,
                     ToricDomain, apply_affine)
from .polygons import (convex_interiors_disjoint, point_in_polygon,
                       polygon_area)
from .specialfns import LOG2

#: Carries the lower strangulation lobe to truncated-ellipsoid position.
TRANSFER_MAP = AffineUnimodular(((1, -1), (1, 0)))

MODEL_TRIANGLE = ((0, 0), (1, 0), (0, 1))

# Fraction halves mix exactly with Fraction parameters and decay to
# floats against float parameters.
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class StrangulationParams:
    """delta in (0, 1/2) and eps = eps_factor * delta < 1/2 - delta."""

    delta: object
    eps_factor: object = 1

    def __post_init__(self):
        if not 0 < self.delta < HALF:
            raise ContractError(f"delta must lie in (0, 1/2), got {self.delta}")
        if self.eps_factor <= 0:
            raise ContractError("eps_factor must be positive")
        if not self.epsilon < HALF - self.delta:
            raise ContractError(
                f"need eps < 1/2 - delta for a valid cut, "
                f"got eps = {self.epsilon}")

    @property
    def epsilon(self):
        return self.eps_factor * self.delta


def strangulated_ball(params: StrangulationParams) -> PolygonRegion:
    """B_delta: the unit-ball triangle minus the symmetric thin triangle.

    Exact rational vertices for rational parameters; star-shaped, and
    contained in the unit triangle by construction.
    """
    delta, eps = params.delta, params.epsilon
    return PolygonRegion((
        (0, 0),
        (1, 0),
        (HALF + eps, HALF - eps),
        (delta, delta),
        (HALF - eps, HALF + eps),
        (0, 1),
    ))


def strangulated_halves(params: StrangulationParams):
    """Closures of the two diagonal-cut pieces (lower, upper); congruent
    convex quadrilaterals of equal area."""
    delta, eps = params.delta, params.epsilon
    lower = PolygonRegion(((0, 0), (1, 0), (HALF + eps, HALF - eps),
                           (delta, delta)))
    upper = PolygonRegion(((0, 0), (delta, delta), (HALF - eps, HALF + eps),
                           (0, 1)))
    return lower, upper


def truncated_ellipsoid_image(params: StrangulationParams) -> PolygonRegion:
    """The region the lower lobe must map onto: bounded by the diagonal,
    the hypotenuse image through (1,1), and the line y = beta*x + delta."""
    delta, eps = params.delta, params.epsilon
    return PolygonRegion(((0, 0), (1, 1), (2 * eps, HALF + eps), (0, delta)))


@dataclass(frozen=True)
class TruncatedEllipsoidData:
    """Truncation data of the lobe image.

    base_ellipsoid is the reference ellipsoid of the known
    truncated-ellipsoid distance bound; beta is the truncation slope,
    and big_c = ((1+beta)/beta)^2 its distance factor, with big_c -> 1
    as delta -> 0.
    """

    base_ellipsoid: tuple
    delta: object
    beta: object
    big_c: object
    affine_image_verified: bool

    def __post_init__(self):
        if not self.big_c > 1:
            raise ContractError("distance factor must exceed 1")

    def to_json(self) -> dict:
        return {"baseEllipsoid": [float(v) for v in self.base_ellipsoid],
                "delta": float(self.delta),
                "beta": float(self.beta),
                "C": float(self.big_c),
                "affineImageVerified": self.affine_image_verified}


def truncated_ellipsoid_data(params: StrangulationParams) -> TruncatedEllipsoidData:
    """Compute (base ellipsoid, beta, C) and verify the transfer map.

    The verification is exact in rational mode: the affine image of the
    lower lobe must equal the claimed truncation polygon vertex-for-vertex.
    """
    delta, eps = params.delta, params.epsilon
    beta = (HALF + eps - delta) / (2 * eps)
    big_c = ((1 + beta) / beta) ** 2
    base = (1, (1 + 2 * eps) / (2 - 4 * eps))

    lower, _ = strangulated_halves(params)
    image = apply_affine(lower, TRANSFER_MAP)
    expected = truncated_ellipsoid_image(params)
    verified = image == expected
    if not verified:
        raise CertificateInvalidError(
            "affine image of the lower lobe does not match the claimed "
            f"truncation polygon: {image!r} vs {expected!r}")
    return TruncatedEllipsoidData(base_ellipsoid=base, delta=delta,
                                  beta=beta, big_c=big_c,
                                  affine_image_verified=True)


def strangulation_inner_ball(params: StrangulationParams):
    """Size of the ball the embedding chain produces inside B_delta:
    (1/C^2) * (1+2eps)/(2-4eps); exact for rational parameters."""
    data = truncated_ellipsoid_data(params)
    return data.base_ellipsoid[1] / data.big_c ** 2


def strangulation_ball_fits_lobe(params: StrangulationParams) -> bool:
    """Consistency witness (not a proof of the embedding): the moment
    triangle of the inner ball, translated against the x-intercept of
    the lower lobe, fits inside the lobe; checked exactly."""
    t = strangulation_inner_ball(params)
    lower, _ = strangulated_halves(params)
    witness = ((1 - t, 0), (1, 0), (1 - t, t))
    return all(point_in_polygon(v, lower.vertices) for v in witness)


def strangulation_chain_bound(params: StrangulationParams) -> DistanceBoundReport:
    """Upper bound d_c(B(1), B_delta) <= (1/2) log(C^2 (2-4eps)/(1+2eps));
    decreasing in delta and tending to log sqrt(2)."""
    data = truncated_ellipsoid_data(params)
    eps = params.epsilon
    ratio = float(data.big_c) ** 2 * float((2 - 4 * eps)) / float(1 + 2 * eps)
    upper = 0.5 * math.log(ratio)
    return DistanceBoundReport(
        subject=f"ball vs strangulated ball(delta={params.delta})",
        lower_bound=0.0,
        upper_bound=upper,
        provenance=(
            "inner ball through the truncated-ellipsoid distance factor",
            "outer ball by inclusion in the unit triangle",
        ))


def strangulation_limit_table(deltas, eps_factor=1):
    """Tabulate the chain bound and its gap to log sqrt(2) over a grid."""
    rows = []
    for delta in deltas:
        params = StrangulationParams(delta, eps_factor)
        bound = strangulation_chain_bound(params).upper_bound
        rows.append({"delta": float(delta),
                     "upperBound": bound,
                     "gapToLimit": bound - 0.5 * LOG2})
    return rows


# ---------------------------------------------------------------------------
# Strain
# ---------------------------------------------------------------------------

CORE_RADIUS = 99
STRAIN_TAIL_VOLUME = Fraction(99, 2)


def strain_domain(k: int = 99) -> PolygonRegion:
    """The strained ball: B(99)'s triangle plus two tails of area 99/2.

    k is the horizontal extent of the tail beyond the core, so the tail
    apex sits on the diagonal at height 99/k and the furthest vertex at
    (99 + k, 0).  The base case k = 99 has apex (98, 1); the area
    99^2/2 + 99 is independent of k.
    """
    if not isinstance(k, int) or k < CORE_RADIUS:
        raise ContractError(f"tail extent must be an integer >= 99, got {k}")
    h = Fraction(CORE_RADIUS, k)
    return PolygonRegion((
        (0, 0),
        (CORE_RADIUS + k, 0),
        (CORE_RADIUS - h, h),
        (h, CORE_RADIUS - h),
        (0, CORE_RADIUS + k),
    ))


def strain_toric(k: int = 99) -> ToricDomain:
    return ToricDomain(strain_domain(k), label=f"strained B(99), tail {k}")


# ---------------------------------------------------------------------------
# The 199-triangle packing witness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PackingCertificate:
    """199 unimodular copies of the half-unit triangle tiling the shell
    between the B(99) and B(100) triangles; fully machine-checked."""

    maps: tuple
    images: tuple
    total_area: Fraction

    def to_json(self) -> dict:
        return {"maps": [m.to_json() for m in self.maps],
                "imageVertices": [[[int(x), int(y)] for x, y in tri]
                                  for tri in self.images],
                "totalArea": [self.total_area.numerator,
                              self.total_area.denominator],
                "count": len(self.maps)}


def triangle_packing_witness() -> PackingCertificate:
    """Explicit area-exact packing of 199 small triangles into the shell.

    The strip 99 <= x + y <= 100 in the first quadrant triangulates into
    100 "up" triangles conv{(i,99-i),(i+1,99-i),(i,100-i)} and 99 "down"
    triangles conv{(i,99-i),(i+1,98-i),(i+1,99-i)}.  Verifies exactly:
    every image lies in the shell, interiors are pairwise disjoint, and
    the areas sum to 199/2 = area of the shell.
    """
    maps = []
    for i in range(100):
        maps.append(AffineUnimodular(((1, 0), (0, 1)), (i, 99 - i)))
    for i in range(99):
        maps.append(AffineUnimodular(((1, 1), (-1, 0)), (i, 99 - i)))
    images = tuple(m.apply(MODEL_TRIANGLE) for m in maps)

    for idx, triangle in enumerate(images):
        for x, y in triangle:
            if x < 0 or y < 0 or not 99 <= x + y <= 100:
                raise CertificateInvalidError(
                    f"triangle {idx} leaves the shell at ({x}, {y})")
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            if not convex_interiors_disjoint(images[i], images[j]):
                raise CertificateInvalidError(
                    f"triangles {i} and {j} overlap")
    total = sum(polygon_area(tri) for tri in images)
    if total != Fraction(199, 2):
        raise CertificateInvalidError(
            f"total packed area {total} != 199/2")
    return PackingCertificate(maps=tuple(maps), images=images,
                              total_area=total)


# ---------------------------------------------------------------------------
# Ruelle-quotient compositor
# ---------------------------------------------------------------------------

def contact_volume_of(domain) -> float:
    """Contact volume of the boundary: twice the Euclidean 4-volume.

    Convention fixed by Stokes for the radial primitive of the standard
    form; validated by the degree-0 homogeneity of the quotient below.
    """
    region = domain.region if isinstance(domain, ToricDomain) else domain
    if not isinstance(region, MomentRegion):
        raise ContractError("expected a toric domain or moment region")
    return 2 * region.area()


def min_period_ellipsoid(a, b):
    """Shortest closed characteristic period on the boundary of E(a, b)."""
    if a <= 0 or b <= 0:
        raise ContractError("ellipsoid axes must be positive")
    return min(a, b)


def c_ce(ruelle, min_period, contact_volume) -> float:
    """The dimensionless quotient ruelle * min_period / contact_volume.

    The boundary-rotation invariant `ruelle` must be supplied by the
    caller; it is never computed here.
    """
    if ruelle is None:
        raise ContractError("a boundary rotation (Ruelle) value must be "
                            "supplied; it is never computed internally")
    if ruelle <= 0 or min_period <= 0 or contact_volume <= 0:
        raise ContractError("all inputs must be positive")
    return ruelle * min_period / contact_volume
