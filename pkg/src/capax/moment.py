"""Moment-map regions of 4-dimensional toric domains.

A toric domain is the preimage of a region Omega in the closed first
quadrant under the moment map (z1, z2) |-> (pi|z1|^2, pi|z2|^2); its
4-volume equals the Euclidean area of Omega.  This module holds the
region representations (exact rational polygons and the parametric
p-ball family x^p + y^p <= 1 for p in (0, 1]), affine-unimodular maps,
areas, and the specific region constructors used elsewhere: the p-ball,
its tangent-line truncation, and its piecewise-linear approximation.

Two numeric backends: polygon geometry is exact over Fractions; the
transcendental p-curves use floats with a configurable relative
tolerance (default 1e-9) for quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from random import Random

from scipy.integrate import quad

from . import polygons
from .errors import (ContractError, MalformedRegionError, NumericFailureError,
                     UnsupportedKindError)
from .specialfns import LOG2, log_beta_area, log_cosh

DEFAULT_REL_TOL = 1e-9
BOUNDARY_TOL = 1e-12  # float-mode containment slack


def _is_exact(value) -> bool:
    return isinstance(value, (int, Fraction))


def _to_number(value):
    """Normalize ints to Fraction-compatible ints, keep floats as floats."""
    if isinstance(value, bool):
        raise ContractError("boolean is not a coordinate")
    if isinstance(value, (int, Fraction, float)):
        return value
    raise ContractError(f"unsupported numeric type {type(value).__name__}")


@dataclass(frozen=True)
class Point2:
    """A point of the moment plane; both coordinates are >= 0."""

    x: object
    y: object

    def __post_init__(self):
        if self.x < 0 or self.y < 0:
            raise ContractError(f"moment coordinates must be >= 0, got {self}")

    def as_tuple(self):
        return (self.x, self.y)


@dataclass(frozen=True)
class AffineUnimodular:
    """Integer 2x2 matrix with |det| = 1 plus a translation.

    Area-preserving; these act on moment polygons and induce
    symplectomorphisms of the corresponding toric domains.
    """

    matrix: tuple
    translation: tuple = (0, 0)

    def __post_init__(self):
        (a, b), (c, d) = self.matrix
        for entry in (a, b, c, d):
            if not isinstance(entry, int):
                raise ContractError("matrix entries must be integers")
        if abs(a * d - b * c) != 1:
            raise ContractError(f"matrix {self.matrix} has |det| != 1")
        object.__setattr__(self, "matrix", ((a, b), (c, d)))
        tx, ty = self.translation
        object.__setattr__(self, "translation",
                           (_to_number(tx), _to_number(ty)))

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def __call__(self, point):
        (a, b), (c, d) = self.matrix
        x, y = point
        tx, ty = self.translation
        return (a * x + b * y + tx, c * x + d * y + ty)

    def apply(self, vertices):
        return tuple(self(v) for v in vertices)

    def compose(self, other: "AffineUnimodular") -> "AffineUnimodular":
        """self after other: (self.compose(other))(p) = self(other(p))."""
        (a, b), (c, d) = self.matrix
        (e, f), (g, h) = other.matrix
        matrix = ((a * e + b * g, a * f + b * h),
                  (c * e + d * g, c * f + d * h))
        return AffineUnimodular(matrix, self(other.translation))

    def to_json(self):
        return {"matrix": [list(row) for row in self.matrix],
                "translation": [_num_to_json(t) for t in self.translation]}


IDENTITY_MAP = AffineUnimodular(((1, 0), (0, 1)))


class MomentRegion:
    """Base class for first-quadrant moment regions."""

    kind = "abstract"

    def area(self, rel_tol: float = DEFAULT_REL_TOL):
        raise NotImplementedError

    def contains(self, point, tol: float = BOUNDARY_TOL) -> bool:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


class PolygonRegion(MomentRegion):
    """Simple polygon in the first quadrant containing the origin.

    Vertices are stored counterclockwise; exact arithmetic whenever the
    coordinates are ints or Fractions.
    """

    kind = "polygon"

    def __init__(self, vertices):
        vertices = tuple((_to_number(x), _to_number(y)) for x, y in vertices)
        polygons.validate_simple(vertices)
        for x, y in vertices:
            if x < 0 or y < 0:
                raise MalformedRegionError(
                    f"vertex ({x}, {y}) leaves the first quadrant")
        if polygons.signed_area2(vertices) < 0:
            vertices = tuple(reversed(vertices))
        if not polygons.point_in_polygon((0, 0), vertices):
            raise MalformedRegionError("region must contain the origin")
        self.vertices = vertices

    def __eq__(self, other):
        return (isinstance(other, PolygonRegion)
                and _canonical(self.vertices) == _canonical(other.vertices))

    def __hash__(self):
        return hash(_canonical(self.vertices))

    def __repr__(self):
        return f"PolygonRegion({list(self.vertices)!r})"

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(x) and _is_exact(y) for x, y in self.vertices)

    def area(self, rel_tol: float = DEFAULT_REL_TOL):
        return polygons.polygon_area(self.vertices)

    def contains(self, point, tol: float = BOUNDARY_TOL) -> bool:
        return polygons.point_in_polygon(point, self.vertices)

    def concave_chain(self):
        """Upper-boundary chain from the x-intercept to the y-intercept.

        Validates the concave normal form: a vertex at the origin, one
        positive intercept on each axis, and a strictly decreasing convex
        boundary graph in between.  Raises ConcavityViolationError with a
        witness vertex otherwise.
        """
        from .errors import ConcavityViolationError

        verts = list(self.vertices)
        try:
            origin_idx = verts.index((0, 0))
        except ValueError:
            raise ConcavityViolationError(
                "concave normal form needs a vertex at the origin",
                witness=verts[0])
        n = len(verts)
        ordered = [verts[(origin_idx + i) % n] for i in range(n)]
        chain = ordered[1:]
        first, last = chain[0], chain[-1]
        if first[1] != 0 or first[0] <= 0:
            raise ConcavityViolationError(
                "boundary must leave the origin along the x-axis",
                witness=first)
        if last[0] != 0 or last[1] <= 0:
            raise ConcavityViolationError(
                "boundary must return to the origin along the y-axis",
                witness=last)
        prev_slope = None
        for (x0, y0), (x1, y1) in zip(chain, chain[1:]):
            if not (x1 < x0 and y1 > y0):
                raise ConcavityViolationError(
                    "upper boundary is not strictly decreasing",
                    witness=(x1, y1))
            slope = _exact_or_float_div(y1 - y0, x1 - x0)
            if prev_slope is not None and slope >= prev_slope:
                raise ConcavityViolationError(
                    "upper boundary is not convex", witness=(x0, y0))
            prev_slope = slope
        return tuple(chain)

    def to_json(self) -> dict:
        return {"kind": "polygon",
                "vertices": [[_num_to_json(x), _num_to_json(y)]
                             for x, y in self.vertices]}


def _canonical(vertices):
    """Rotation-invariant canonical form for vertex cycles."""
    n = len(vertices)
    rotations = [tuple(vertices[(i + j) % n] for j in range(n))
                 for i in range(n)]
    return min(rotations, key=repr)


def _exact_or_float_div(a, b):
    if isinstance(a, float) or isinstance(b, float):
        return a / b
    return Fraction(a, b)


class PBallRegion(MomentRegion):
    """Region scale * {x^p + y^p <= 1} for p in (0, 1]: concave toric."""

    kind = "pball"

    def __init__(self, p, scale=1):
        p = _to_number(p)
        if not 0 < p <= 1:
            raise ContractError(f"pball exponent must lie in (0, 1], got {p}")
        scale = _to_number(scale)
        if scale <= 0:
            raise ContractError("scale must be positive")
        self.p = p
        self.scale = scale

    def __repr__(self):
        return f"PBallRegion(p={self.p!r}, scale={self.scale!r})"

    def __eq__(self, other):
        return (isinstance(other, PBallRegion)
                and (self.p, self.scale) == (other.p, other.scale))

    def __hash__(self):
        return hash(("pball", self.p, self.scale))

    def boundary_height(self, x: float) -> float:
        """y with x^p + y^p = 1 on the unit-scale curve, evaluated safely."""
        p = float(self.p)
        if x <= 0:
            return 1.0
        if x >= 1:
            return 0.0
        return (1.0 - x ** p) ** (1.0 / p)

    def area(self, rel_tol: float = DEFAULT_REL_TOL):
        p = float(self.p)
        z = 1.0 / p
        # Substituting x = t^(1/p) removes the unbounded-slope endpoint:
        # area = int_0^1 z * t^(z-1) * (1-t)^z dt.
        value, err = quad(lambda t: z * t ** (z - 1.0) * (1.0 - t) ** z,
                          0.0, 1.0, epsabs=0.0, epsrel=min(rel_tol, 1e-11),
                          limit=200)
        if value > 0 and err / value > rel_tol:
            raise NumericFailureError(
                "p-ball area quadrature missed its tolerance",
                achieved=err / value)
        return float(self.scale) ** 2 * value

    def contains(self, point, tol: float = BOUNDARY_TOL) -> bool:
        x, y = float(point[0]) / self.scale, float(point[1]) / self.scale
        if x < 0 or y < 0:
            return False
        p = float(self.p)
        return (max(x, 0.0) ** p + max(y, 0.0) ** p) <= 1.0 + tol

    def to_json(self) -> dict:
        return {"kind": "pball", "p": _num_to_json(self.p),
                "scale": _num_to_json(self.scale)}


class TruncatedPBallRegion(MomentRegion):
    """{x^p + y^p <= 1, max(x, y) <= cap}: the tangent-line truncation.

    Not concave toric (the flat cap breaks boundary convexity); used for
    area bounds only.
    """

    kind = "truncated_pball"

    def __init__(self, p, cap):
        p = _to_number(p)
        if not 0 < p < 1:
            raise ContractError(
                f"truncated pball exponent must lie in (0, 1), got {p}")
        cap = float(cap)
        d = 2.0 ** (-1.0 / float(p))
        if not d <= cap * (1 + 1e-12) or cap > 1 + 1e-12:
            raise ContractError(
                f"cap must lie in [2^(-1/p), 1], got {cap}")
        self.p = p
        self.cap = cap

    def __repr__(self):
        return f"TruncatedPBallRegion(p={self.p!r}, cap={self.cap!r})"

    def area_ratio(self, rel_tol: float = DEFAULT_REL_TOL) -> float:
        """area / 2^(-2/p), stable for small p.

        Equals 1 + 2*int_1^T (2-u^p)^(1/p) du with T = cap * 2^(1/p); the
        integrand is bounded by 1/u, so the ratio stays O(log cap/d).
        """
        p = float(self.p)
        log_t = math.log(self.cap) + LOG2 / p
        t_upper = math.exp(log_t)

        def integrand(u):
            # (2 - u^p)^(1/p) evaluated in log space.
            up = math.exp(p * math.log(u))
            rest = 2.0 - up
            if rest <= 0.0:
                return 0.0
            return math.exp(math.log(rest) / p)

        value, err = quad(integrand, 1.0, t_upper, epsabs=0.0,
                          epsrel=min(rel_tol, 1e-11), limit=200)
        ratio = 1.0 + 2.0 * value
        if err / max(value, 1e-300) > max(rel_tol, 1e-9) and value > 1e-12:
            raise NumericFailureError(
                "truncated-area quadrature missed its tolerance",
                achieved=err / value)
        return ratio

    def area(self, rel_tol: float = DEFAULT_REL_TOL) -> float:
        d_sq = math.exp(-2.0 * LOG2 / float(self.p))
        return d_sq * self.area_ratio(rel_tol)

    def contains(self, point, tol: float = BOUNDARY_TOL) -> bool:
        x, y = point
        if max(x, y) > self.cap + tol:
            return False
        return PBallRegion(self.p).contains(point, tol)

    def to_json(self) -> dict:
        return {"kind": "truncated_pball", "p": _num_to_json(self.p),
                "cap": _num_to_json(self.cap)}


@dataclass(frozen=True)
class ToricDomain:
    """A moment region with a display label; volume = region area."""

    region: MomentRegion
    label: str = ""

    def volume(self, rel_tol: float = DEFAULT_REL_TOL):
        return self.region.area(rel_tol)


# ---------------------------------------------------------------------------
# Region constructors
# ---------------------------------------------------------------------------

def ball_region(a) -> PolygonRegion:
    """Moment triangle of the ball B(a): conv{(0,0), (a,0), (0,a)}."""
    if a <= 0:
        raise ContractError("ball size must be positive")
    return PolygonRegion(((0, 0), (a, 0), (0, a)))


def ellipsoid_region(a, b) -> PolygonRegion:
    """Moment triangle of the ellipsoid E(a, b)."""
    if a <= 0 or b <= 0:
        raise ContractError("ellipsoid axes must be positive")
    return PolygonRegion(((0, 0), (a, 0), (0, b)))


def polydisk_region(a, b) -> PolygonRegion:
    """Moment rectangle of the polydisk P(a, b)."""
    if a <= 0 or b <= 0:
        raise ContractError("polydisk sides must be positive")
    return PolygonRegion(((0, 0), (a, 0), (a, b), (0, b)))


def ball(a, label=None) -> ToricDomain:
    return ToricDomain(ball_region(a), label or f"B({a})")


def ellipsoid(a, b, label=None) -> ToricDomain:
    return ToricDomain(ellipsoid_region(a, b), label or f"E({a},{b})")


def pball_region(p, scale=1) -> PBallRegion:
    """The concave domain {x^p + y^p <= 1} (scaled), p in (0, 1]."""
    return PBallRegion(p, scale)


def tangent_intercept(p, k: int) -> float:
    """x-intercept of the slope -1/k tangent line to x^p + y^p = 1.

    Closed form: (1 + k^(p/(p-1)))^(-1/p) + k*(1 + k^(p/(1-p)))^(-1/p).
    """
    p = float(p)
    if p == 1.0:
        raise ContractError(
            "degenerate parameter p = 1: the boundary is the tangent line")
    if not 0 < p < 1:
        raise ContractError(f"tangent intercept needs p in (0, 1), got {p}")
    if not isinstance(k, int) or k < 1:
        raise ContractError(f"k must be a positive integer, got {k}")
    a = k ** (p / (p - 1.0))
    b = k ** (p / (1.0 - p))
    return (1.0 + a) ** (-1.0 / p) + k * (1.0 + b) ** (-1.0 / p)


def scaled_tangent_intercept(p, k: int) -> float:
    """2^(1/p) * tangent_intercept(p, k), computed in log space.

    Stays finite for arbitrarily small p; increases to 2*sqrt(k) as p -> 0.
    """
    p = float(p)
    if not 0 < p < 1:
        raise ContractError(f"scaled intercept needs p in (0, 1), got {p}")
    if not isinstance(k, int) or k < 1:
        raise ContractError(f"k must be a positive integer, got {k}")
    if k == 1:
        return 2.0
    eps = p * math.log(k) / (1.0 - p)
    correction = log_cosh(eps / 2.0) / p
    half_power = math.log(k) / (2.0 * (1.0 - p))
    return math.exp(half_power - correction) \
        + math.exp(math.log(k) - half_power - correction)


def truncated_region(p, k: int) -> TruncatedPBallRegion:
    """The p-ball truncated at max(x, y) <= tangent_intercept(p, k)."""
    return TruncatedPBallRegion(p, tangent_intercept(p, k))


def linearized_region(p) -> PolygonRegion:
    """Piecewise-linear approximation of the p-ball: the polygon with
    vertices (0,0), (1,0), (d,d), (0,1) where d = 2^(-1/p).

    Exact rational for p = 1/n; p = 1 degenerates to the ball triangle.
    """
    d = _two_pow_neg_inv(p)
    if d is None:
        raise ContractError(f"linearized region needs p in (0, 1], got {p}")
    return PolygonRegion(((0, 0), (1, 0), (d, d), (0, 1)))


def _two_pow_neg_inv(p):
    """2^(-1/p) as a Fraction when p = 1/n (or 1), else float; None if bad."""
    p = _to_number(p)
    if isinstance(p, float):
        if not 0 < p <= 1:
            return None
        return 2.0 ** (-1.0 / p)
    p = Fraction(p)
    if not 0 < p <= 1:
        return None
    if p.numerator == 1:
        return Fraction(1, 2 ** p.denominator)
    return 2.0 ** (-1.0 / float(p))


def pball_area_closed_form(p) -> float:
    """Gamma(1+1/p)^2 / Gamma(1+2/p): the exact p-ball area."""
    p = float(p)
    if not 0 < p <= 1:
        raise ContractError(f"closed-form area needs p in (0, 1], got {p}")
    return math.exp(log_beta_area(1.0 / p))


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def area(region: MomentRegion, rel_tol: float = DEFAULT_REL_TOL):
    """Euclidean area of the region = 4-volume of the toric domain."""
    return region.area(rel_tol)


def apply_affine(region: MomentRegion, amap: AffineUnimodular) -> PolygonRegion:
    """Image of a polygon region under an affine-unimodular map."""
    if not isinstance(region, PolygonRegion):
        raise UnsupportedKindError(
            f"apply_affine supports polygon regions only, got {region.kind}")
    return PolygonRegion(amap.apply(region.vertices))


def is_star_shaped(region: MomentRegion, n_rays: int = 100,
                   seed: int = 0) -> bool:
    """Ray test: every sampled ray from the origin meets the region in a
    single segment containing the origin.  Exact for rational polygons."""
    if isinstance(region, (PBallRegion, TruncatedPBallRegion)):
        # Radial boundary graph: star-shaped by construction.
        return True
    if not isinstance(region, PolygonRegion):
        raise UnsupportedKindError(f"unsupported region kind {region.kind}")
    rng = Random(seed)
    for _ in range(n_rays):
        direction = (rng.randint(0, 1000), rng.randint(0, 1000))
        if direction == (0, 0):
            direction = (1, 1)
        if not polygons.star_shaped_from_origin(region.vertices, direction):
            return False
    return True


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def _num_to_json(value):
    if isinstance(value, Fraction):
        return [value.numerator, value.denominator]
    if isinstance(value, int):
        return [value, 1]
    return float(value)


def _num_from_json(value):
    if isinstance(value, list):
        num, den = value
        return Fraction(int(num), int(den))
    return float(value)


def region_to_json(region: MomentRegion) -> dict:
    return region.to_json()


def region_from_json(data: dict) -> MomentRegion:
    kind = data.get("kind")
    if kind == "polygon":
        return PolygonRegion(tuple((_num_from_json(x), _num_from_json(y))
                                   for x, y in data["vertices"]))
    if kind == "pball":
        return PBallRegion(_num_from_json(data["p"]),
                           _num_from_json(data.get("scale", [1, 1])))
    if kind == "truncated_pball":
        return TruncatedPBallRegion(_num_from_json(data["p"]),
                                    _num_from_json(data["cap"]))
    raise UnsupportedKindError(f"unknown region kind {kind!r}")
