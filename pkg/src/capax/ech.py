"""ECH capacity sequences of ellipsoids, unions, and concave domains.

The k-th capacity of the ellipsoid E(a, b) is the (k+1)-th smallest
element, with multiplicity, of {m*a + n*b : m, n >= 0}.  Disjoint unions
combine by max-plus convolution

    c_k(X u Y) = max_{i+j=k} (c_i(X) + c_j(Y)),

and a concave toric domain has the capacities of the disjoint union of
the balls in its weight decomposition.  Capacities are monotone under
symplectic embeddings, which is the obstruction direction used by
`packing_obstruction`: a single k with c_k(source) > c_k(target)
certifies non-embedding, while an empty report proves nothing.

Everything here is arithmetic-generic: int and Fraction inputs give
exact sequences, floats give float sequences.  Integer sequences take a
vectorized convolution path, and identical union summands are combined
by binary powering, so the 199-ball packing checks stay fast.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ContractError, UnsupportedKindError
from .moment import (MomentRegion, PBallRegion, PolygonRegion, ToricDomain)
from .weights import WeightBudget, WeightSequence, weight_decomposition


@dataclass(frozen=True)
class CapacitySequence:
    """(c_0, ..., c_kmax): nonnegative, nondecreasing, c_0 = 0."""

    values: tuple

    def __post_init__(self):
        vals = tuple(self.values)
        if not vals:
            raise ContractError("capacity sequence cannot be empty")
        if vals[0] != 0:
            raise ContractError(f"c_0 must be 0, got {vals[0]}")
        if any(a > b for a, b in zip(vals, vals[1:])):
            raise ContractError("capacities must be nondecreasing")
        object.__setattr__(self, "values", vals)

    @property
    def kmax(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, k: int):
        return self.values[k]

    def __len__(self):
        return len(self.values)

    def scale(self, factor) -> "CapacitySequence":
        """Dilation covariance: scaling the moment region by t scales
        every capacity by t."""
        if factor <= 0:
            raise ContractError("scale factor must be positive")
        return CapacitySequence(tuple(factor * v for v in self.values))

    def truncated(self, kmax: int) -> "CapacitySequence":
        if kmax > self.kmax:
            raise ContractError(
                f"sequence only reaches k = {self.kmax}, need {kmax}")
        return CapacitySequence(self.values[:kmax + 1])


def ech_ellipsoid(a, b, kmax: int) -> CapacitySequence:
    """Capacities of E(a, b) by bounded heap enumeration of {ma + nb}.

    Exact for int/Fraction axes.  Each lattice pair is pushed once:
    popping (m, n) pushes (m+1, n), and (0, n) also pushes (0, n+1).
    """
    if kmax < 0:
        raise ContractError(f"kmax must be >= 0, got {kmax}")
    if a <= 0 or b <= 0:
        raise ContractError("ellipsoid axes must be positive")
    zero = a * 0
    heap = [(zero, 0, 0)]
    out = []
    while len(out) <= kmax:
        value, m, n = heapq.heappop(heap)
        out.append(value)
        heapq.heappush(heap, (value + a, m + 1, n))
        if m == 0:
            heapq.heappush(heap, (value + b, 0, n + 1))
    return CapacitySequence(tuple(out))


# ---------------------------------------------------------------------------
# Max-plus machinery
# ---------------------------------------------------------------------------

def _maxplus_pair(a_vals, b_vals, kmax: int):
    """Max-plus convolution truncated to index kmax."""
    if _int_friendly(a_vals) and _int_friendly(b_vals):
        a = np.asarray(a_vals[:kmax + 1], dtype=np.int64)
        b = np.asarray(b_vals[:kmax + 1], dtype=np.int64)
        out = np.empty(kmax + 1, dtype=np.int64)
        for k in range(kmax + 1):
            out[k] = (a[:k + 1] + b[k::-1]).max()
        return tuple(int(v) for v in out)
    if all(isinstance(v, float) for v in a_vals[:kmax + 1]) \
            and all(isinstance(v, float) for v in b_vals[:kmax + 1]):
        a = np.asarray(a_vals[:kmax + 1], dtype=np.float64)
        b = np.asarray(b_vals[:kmax + 1], dtype=np.float64)
        out = np.empty(kmax + 1, dtype=np.float64)
        for k in range(kmax + 1):
            out[k] = (a[:k + 1] + b[k::-1]).max()
        return tuple(float(v) for v in out)
    out = []
    for k in range(kmax + 1):
        out.append(max(a_vals[i] + b_vals[k - i] for i in range(k + 1)))
    return tuple(out)


def _int_friendly(values) -> bool:
    return all(isinstance(v, int) and abs(v) < 2 ** 31 for v in values)


def _maxplus_power(values, n: int, kmax: int):
    """n-fold max-plus self-convolution by binary powering."""
    result = None  # identity: the all-zero sequence
    base = tuple(values[:kmax + 1])
    while n:
        if n & 1:
            result = base if result is None else _maxplus_pair(result, base,
                                                               kmax)
        n >>= 1
        if n:
            base = _maxplus_pair(base, base, kmax)
    return result


def ech_union(sequences, kmax: int) -> CapacitySequence:
    """Capacities of a disjoint union by iterated max-plus convolution.

    Associative and commutative; summands are grouped (identical
    sequences are powered) and combined largest-first for determinism.
    The empty union is the empty set: c_k = 0.
    """
    if kmax < 0:
        raise ContractError(f"kmax must be >= 0, got {kmax}")
    seqs = list(sequences)
    if not seqs:
        return CapacitySequence((0,) * (kmax + 1))
    groups: dict[tuple, int] = {}
    for seq in seqs:
        values = seq.values if isinstance(seq, CapacitySequence) else tuple(seq)
        if len(values) < kmax + 1:
            raise ContractError(
                f"input sequence reaches k = {len(values) - 1}, need {kmax}")
        key = tuple(values[:kmax + 1])
        groups[key] = groups.get(key, 0) + 1
    result = None
    for key in sorted(groups, reverse=True):
        powered = _maxplus_power(key, groups[key], kmax)
        result = powered if result is None else _maxplus_pair(result, powered,
                                                              kmax)
    return CapacitySequence(result)


@lru_cache(maxsize=8)
def _unit_ball_values(kmax: int) -> tuple:
    return ech_ellipsoid(1, 1, kmax).values


def ball_sequence(w, kmax: int) -> CapacitySequence:
    """Capacities of the ball B(w) = E(w, w)."""
    if w <= 0:
        raise ContractError("ball size must be positive")
    return CapacitySequence(tuple(w * t for t in _unit_ball_values(kmax)))


# ---------------------------------------------------------------------------
# Concave toric domains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConcaveCapacities:
    """Capacities from a weight decomposition, with a one-sided error bar.

    If the weight sequence was truncated, the computed values are lower
    estimates; the true c_k exceeds the computed one by at most
    2*sqrt(k * dropped volume) (the square-root bound applied to the
    dropped tail), recorded in `truncation_bound` at k = kmax.
    """

    sequence: CapacitySequence
    complete: bool
    truncation_bound: float
    weights: WeightSequence = field(repr=False, default=None)

    def to_json(self) -> dict:
        return {"capacities": [float(v) for v in self.sequence.values],
                "kmax": self.sequence.kmax,
                "truncationBound": self.truncation_bound}


def ech_concave_toric(region: MomentRegion, kmax: int,
                      budget: WeightBudget | None = None) -> ConcaveCapacities:
    """Capacities of a concave toric domain via its ball weights.

    Only the k largest weights can contribute to c_k, so the default
    budget asks for kmax weights.
    """
    if kmax < 0:
        raise ContractError(f"kmax must be >= 0, got {kmax}")
    if budget is None:
        budget = WeightBudget(max_count=max(kmax, 1))
    ws = weight_decomposition(region, budget)
    sequences = [ball_sequence(w, kmax) for w in ws.weights]
    union = ech_union(sequences, kmax)
    if ws.complete:
        bound = 0.0
    else:
        deficit = max(float(ws.volume_deficit()), 0.0)
        bound = 2.0 * math.sqrt(kmax * deficit)
    return ConcaveCapacities(sequence=union, complete=ws.complete,
                             truncation_bound=bound, weights=ws)


@dataclass(frozen=True)
class HutchingsBoundCheck:
    """The square-root volume bound for a union of weight balls:
    c_k(u B(w_i)) <= 2*sqrt(k * sum w_i^2 / 2) over the first k weights."""

    k: int
    lhs: float
    rhs: float
    holds: bool

    def to_json(self) -> dict:
        return {"k": self.k, "lhs": self.lhs, "rhs": self.rhs,
                "holds": self.holds}


def hutchings_bound(weights: WeightSequence, k: int) -> HutchingsBoundCheck:
    if k < 1:
        raise ContractError("k must be >= 1")
    if k > len(weights):
        raise ContractError(
            f"only {len(weights)} weights available, need {k}")
    first = weights.first(k)
    union = ech_union([ball_sequence(w, k) for w in first], k)
    lhs = float(union[k])
    rhs = 2.0 * math.sqrt(k * float(weights.square_volume(k)))
    return HutchingsBoundCheck(k=k, lhs=lhs, rhs=rhs, holds=lhs <= rhs)


# ---------------------------------------------------------------------------
# Embedding obstructions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ObstructionReport:
    """Capacity-monotonicity verdict for source -> target embeddings.

    Every listed k certifies non-embedding; an empty list only means no
    obstruction was found up to kmax, never that an embedding exists.
    """

    obstructed_at: tuple
    kmax_checked: int

    @property
    def obstructed(self) -> bool:
        return bool(self.obstructed_at)

    @property
    def verdict(self) -> str:
        return "obstructed" if self.obstructed else "no-obstruction-up-to-kmax"

    def to_json(self) -> dict:
        return {"obstructedAt": list(self.obstructed_at),
                "kmaxChecked": self.kmax_checked,
                "verdict": self.verdict}


def _as_region(domain) -> MomentRegion:
    if isinstance(domain, ToricDomain):
        return domain.region
    if isinstance(domain, MomentRegion):
        return domain
    raise ContractError(f"expected a toric domain, got {type(domain).__name__}")


def _triangle_legs(region: MomentRegion):
    """(a, b) if the region is the moment triangle of E(a, b), else None."""
    if not isinstance(region, PolygonRegion) or len(region.vertices) != 3:
        return None
    verts = set(region.vertices)
    if (0, 0) not in verts:
        return None
    a = b = None
    for x, y in verts - {(0, 0)}:
        if y == 0 and x > 0:
            a = x
        elif x == 0 and y > 0:
            b = y
    if a is None or b is None:
        return None
    return a, b


def domain_capacities(domain, kmax: int):
    """(values, upper_slack): capacities and a one-sided overshoot bound.

    Ellipsoid triangles go through exact lattice enumeration
    (slack 0); other concave regions go through their weights, where a
    truncated weight sequence may undershoot by at most the recorded
    truncation bound.
    """
    region = _as_region(domain)
    legs = _triangle_legs(region)
    if legs is not None:
        return ech_ellipsoid(legs[0], legs[1], kmax).values, 0.0
    if isinstance(region, (PolygonRegion, PBallRegion)):
        result = ech_concave_toric(region, kmax)
        return result.sequence.values, result.truncation_bound
    raise UnsupportedKindError(
        f"capacities unavailable for region kind {region.kind!r}")


def packing_obstruction(sources, target, kmax: int) -> ObstructionReport:
    """Check c_k(disjoint union of sources) <= c_k(target) for k <= kmax.

    Sound against truncation: a possibly-undershot target is inflated by
    its truncation bound before comparison, so every reported k is a
    certified witness.
    """
    if kmax < 0:
        raise ContractError(f"kmax must be >= 0, got {kmax}")
    source_values = [domain_capacities(d, kmax)[0] for d in sources]
    union = ech_union([CapacitySequence(v) for v in source_values], kmax)
    target_values, target_slack = domain_capacities(target, kmax)
    bad = tuple(k for k in range(kmax + 1)
                if union[k] > target_values[k] + target_slack)
    return ObstructionReport(obstructed_at=bad, kmax_checked=kmax)
