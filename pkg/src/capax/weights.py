"""Weight decompositions of concave toric moment regions.

A concave region (upper boundary = decreasing convex graph joining the
axes) splits recursively into ball weights: the largest inscribed
triangle conv{(0,0),(a,0),(0,a)} contributes a weight a, and the two
leftover pieces beyond the cut line x + y = a are carried back to
concave normal form by the unimodular shears

    x-side: (x, y) |-> (x + y - a, y)      y-side: (x, y) |-> (x, x + y - a)

and decomposed in turn.  Weight squares halve to areas: sum(w_i^2)/2
equals the region area for complete decompositions.

Emission is largest-weight-first.  Every child weight is bounded by its
parent's weight (the child's boundary reaches the y-axis at height
<= a), so a max-heap over pending pieces emits the global weight
sequence in sorted order; truncating at a budget keeps exactly the
largest weights, and extending the budget never changes the emitted
prefix.  Polygon regions run exactly over Fractions; p-ball regions run
in floats with curve pieces represented as (arc, accumulated affine).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from scipy.optimize import minimize_scalar

from .errors import ConcavityViolationError, ContractError
from .moment import (DEFAULT_REL_TOL, MomentRegion, PBallRegion,
                     PolygonRegion, TruncatedPBallRegion)

_EMPTY_BBOX = 1e-15  # float mode: children with smaller bounding box are gone
_XATOL = 1e-13


@dataclass(frozen=True)
class WeightBudget:
    """Stopping rule for the recursion: at most `max_count` weights, and
    no weights below `min_weight`."""

    max_count: int
    min_weight: float = 0.0

    def __post_init__(self):
        if self.max_count <= 0:
            raise ContractError("empty budget: max_count must be positive")
        if self.min_weight < 0:
            raise ContractError("min_weight must be >= 0")


@dataclass(frozen=True)
class WeightSequence:
    """Nonincreasing ball weights; `complete` means the recursion
    terminated rather than hitting the budget."""

    weights: tuple
    complete: bool
    region_area: object = None

    def __post_init__(self):
        ws = tuple(self.weights)
        if any(w <= 0 for w in ws):
            raise ContractError("weights must be positive")
        if any(a < b for a, b in zip(ws, ws[1:])):
            raise ContractError("weights must be nonincreasing")
        object.__setattr__(self, "weights", ws)

    def __len__(self):
        return len(self.weights)

    def first(self, k: int) -> tuple:
        if k > len(self.weights):
            raise ContractError(
                f"only {len(self.weights)} weights available, need {k}")
        return self.weights[:k]

    def square_volume(self, k: int | None = None):
        """sum of w_i^2 / 2 over the first k weights (all by default)."""
        ws = self.weights if k is None else self.first(k)
        total = sum(w * w for w in ws)
        return total / 2 if isinstance(total, float) else Fraction(total, 2)

    def volume_deficit(self):
        """region area minus the covered volume; None if area unknown."""
        if self.region_area is None:
            return None
        return self.region_area - self.square_volume()

    def to_json(self) -> dict:
        deficit = self.volume_deficit()
        return {"weights": [float(w) for w in self.weights],
                "complete": self.complete,
                "volumeDeficit": None if deficit is None else float(deficit)}


# ---------------------------------------------------------------------------
# Pending pieces
# ---------------------------------------------------------------------------

class _PolygonPiece:
    """Exact piece: the upper chain from x-intercept to y-intercept."""

    __slots__ = ("chain",)

    def __init__(self, chain):
        self.chain = chain

    def weight(self):
        return min(x + y for x, y in self.chain)

    def split(self, a):
        sums = [x + y for x, y in self.chain]
        i_x = sums.index(a)
        i_y = len(sums) - 1 - sums[::-1].index(a)
        children = []
        if i_x > 0:
            mapped = tuple((x + y - a, y) for x, y in self.chain[:i_x + 1])
            children.append(_PolygonPiece(_cleanup_chain(mapped)))
        if i_y < len(self.chain) - 1:
            mapped = tuple((x, x + y - a) for x, y in self.chain[i_y:])
            children.append(_PolygonPiece(_cleanup_chain(mapped)))
        return [child for child in children if child.chain is not None]


def _cleanup_chain(chain):
    """Drop collinear interior vertices; None for degenerate chains."""
    pts = [chain[0]]
    for pt in chain[1:]:
        if pt != pts[-1]:
            pts.append(pt)
    cleaned = pts[:2]
    for pt in pts[2:]:
        (x0, y0), (x1, y1) = cleaned[-2], cleaned[-1]
        x2, y2 = pt
        if (x1 - x0) * (y2 - y0) == (y1 - y0) * (x2 - x0):
            cleaned[-1] = pt
        else:
            cleaned.append(pt)
    if len(cleaned) < 2:
        return None
    if cleaned[0][0] <= 0 or cleaned[-1][1] <= 0:
        return None
    return tuple(cleaned)


class _CurvePiece:
    """Float piece: an arc of the scaled p-curve under an affine map.

    Points are M @ (scale*u, scale*(1-u^p)^(1/p)) + v for u in
    [u_lo, u_hi]; u_lo maps to the y-axis, u_hi to the x-axis.  M is a
    product of the two child shears, so its entries are nonnegative
    integers and the coordinate sum along the arc is a positive linear
    functional of a convex curve: unimodal, safe for bounded scalar
    minimization.
    """

    __slots__ = ("p", "scale", "u_lo", "u_hi", "m", "v", "_u_star")

    def __init__(self, p, scale, u_lo, u_hi, m, v):
        self.p = p
        self.scale = scale
        self.u_lo = u_lo
        self.u_hi = u_hi
        self.m = m
        self.v = v
        self._u_star = None

    def point(self, u):
        x = self.scale * u
        y = self.scale * _curve_height(u, self.p)
        (m00, m01), (m10, m11) = self.m
        return (m00 * x + m01 * y + self.v[0],
                m10 * x + m11 * y + self.v[1])

    def _coordinate_sum(self, u):
        x, y = self.point(u)
        return x + y

    def weight(self):
        result = minimize_scalar(self._coordinate_sum,
                                 bounds=(self.u_lo, self.u_hi),
                                 method="bounded",
                                 options={"xatol": _XATOL})
        candidates = [(self._coordinate_sum(self.u_lo), self.u_lo),
                      (float(result.fun), float(result.x)),
                      (self._coordinate_sum(self.u_hi), self.u_hi)]
        value, u_star = min(candidates)
        self._u_star = u_star
        return value

    def split(self, a):
        u_star = self._u_star
        children = []
        x_int = self.point(self.u_hi)[0]
        y_int = self.point(self.u_lo)[1]
        split_y = self.point(u_star)[1]
        split_x = self.point(u_star)[0]
        (m00, m01), (m10, m11) = self.m
        v0, v1 = self.v
        # x-side child: shear (x, y) -> (x + y - a, y).
        if (x_int - a) * split_y > _EMPTY_BBOX and u_star < self.u_hi:
            children.append(_CurvePiece(
                self.p, self.scale, u_star, self.u_hi,
                ((m00 + m10, m01 + m11), (m10, m11)),
                (v0 + v1 - a, v1)))
        # y-side child: shear (x, y) -> (x, x + y - a).
        if (y_int - a) * split_x > _EMPTY_BBOX and self.u_lo < u_star:
            children.append(_CurvePiece(
                self.p, self.scale, self.u_lo, u_star,
                ((m00, m01), (m00 + m10, m01 + m11)),
                (v0, v0 + v1 - a)))
        return children


def _curve_height(u, p):
    if u <= 0.0:
        return 1.0
    if u >= 1.0:
        return 0.0
    return (1.0 - u ** p) ** (1.0 / p)


# ---------------------------------------------------------------------------
# Decomposition driver
# ---------------------------------------------------------------------------

def _root_piece(region: MomentRegion):
    if isinstance(region, PolygonRegion):
        return _PolygonPiece(region.concave_chain())
    if isinstance(region, PBallRegion):
        return _CurvePiece(float(region.p), float(region.scale),
                           0.0, 1.0, ((1, 0), (0, 1)), (0.0, 0.0))
    if isinstance(region, TruncatedPBallRegion):
        p = float(region.p)
        junction = (1.0 - region.cap ** p) ** (1.0 / p)
        raise ConcavityViolationError(
            "truncated p-ball is not concave: flat cap meets the curve",
            witness=(junction, region.cap))
    raise ConcavityViolationError(
        f"region kind {region.kind!r} is not a concave toric region")


def weight_decomposition(region: MomentRegion,
                         budget: WeightBudget) -> WeightSequence:
    """Ball weights of a concave toric region, largest first.

    Deterministic: pieces are processed in decreasing weight order with
    insertion-order tie-breaking, so growing the budget extends the
    output without disturbing the prefix.
    """
    root = _root_piece(region)
    counter = 0
    root_weight = root.weight()
    if root_weight <= 0:
        raise ConcavityViolationError(
            "region has no inscribed triangle", witness=(0, 0))
    heap = [(-root_weight, counter, root)]
    weights = []
    dropped_small = False
    while heap and len(weights) < budget.max_count:
        neg_a, _, piece = heapq.heappop(heap)
        a = -neg_a
        if a < budget.min_weight:
            dropped_small = True
            break
        weights.append(a)
        for child in piece.split(a):
            counter += 1
            # Rounding may nudge a float child weight past its parent;
            # the true value never exceeds it.
            child_weight = min(child.weight(), a)
            if child_weight > 0:
                heapq.heappush(heap, (-child_weight, counter, child))
    complete = not heap and not dropped_small
    area = region.area(DEFAULT_REL_TOL)
    return WeightSequence(tuple(weights), complete=complete,
                          region_area=area)
