"""Log-space evaluation of the volume-normalized invariant g.

For the p-ball domain {x^p + y^p <= 1} put

    g(p) = 2^(2/p - 2) * area(p-ball)
         = 2^(2/p - 2) * Gamma(1+1/p)^2 / Gamma(1+2/p),

so g(1) = 1/2, g(1/2) = 2/3, g(1/5) = 64/63, and g grows like
sqrt(pi/p)/4 as p -> 0.  Raw g overflows floats long before the
interesting parameter range (p ~ 1e-8), so everything here works with
natural logarithms; the large-argument path uses an analytically
cancelled Stirling form accurate to ~1e-14 absolute, which is what the
consistency check against the step identity

    g(1/(k+1)) = (2k+2)/(2k+1) * g(1/k)

relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ContractError, NumericFailureError
from .specialfns import LOG2, log_gamma, stirling_correction

LOG4 = 2.0 * LOG2
LOG256 = 8.0 * LOG2

#: A value of k for which the capacity-ratio condition is known to hold
#: (so the p-ball with p <= 1/k is certified non-convex); the minimal k
#: is smaller and is computed, not assumed.
KNOWN_SUFFICIENT_K = 62460059

_EXACT_MAX_K = 32


@dataclass(frozen=True, order=True)
class LogMagnitude:
    """A positive quantity stored as its natural logarithm.

    Multiplication, division and powers are exact in log space; addition
    goes through log-sum-exp (relative error ~1e-15 per operation).
    """

    log_value: float
    origin: str = ""

    @property
    def value(self) -> float:
        """exp(log_value); may overflow to inf for huge magnitudes."""
        return math.exp(self.log_value)

    def __mul__(self, other):
        return LogMagnitude(self.log_value + _as_log(other), self.origin)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return LogMagnitude(self.log_value - _as_log(other), self.origin)

    def __pow__(self, exponent):
        return LogMagnitude(self.log_value * exponent, self.origin)

    def __add__(self, other):
        return LogMagnitude(float(np.logaddexp(self.log_value,
                                               _as_log(other))), self.origin)


def _as_log(other) -> float:
    if isinstance(other, LogMagnitude):
        return other.log_value
    if other <= 0:
        raise ContractError("LogMagnitude arithmetic needs positive operands")
    return math.log(other)


def g_reciprocal_exact(k: int) -> Fraction:
    """g(1/k) as an exact rational: 2^(2k-2) * k!^2 / (2k)!."""
    if not isinstance(k, int) or k < 1:
        raise ContractError(f"k must be a positive integer, got {k}")
    return Fraction(2 ** (2 * k - 2) * math.factorial(k) ** 2,
                    math.factorial(2 * k))


def _log_g_large(z: float) -> float:
    # Cancelled Stirling form of (2z-2)log2 + 2*lgamma(z+1) - lgamma(2z+1):
    # the z*log z sized terms are removed symbolically.
    return (0.5 * math.log(math.pi * z) - LOG4
            + 2.0 * stirling_correction(z) - stirling_correction(2.0 * z))


def log_g_reciprocal(k: int) -> LogMagnitude:
    """log g(1/k); exact-fraction route for small k, Stirling beyond."""
    if not isinstance(k, int) or k < 1:
        raise ContractError(f"k must be a positive integer, got {k}")
    if k <= _EXACT_MAX_K:
        value = g_reciprocal_exact(k)
        return LogMagnitude(math.log(value.numerator / value.denominator),
                            origin=f"g(1/{k})")
    return LogMagnitude(_log_g_large(float(k)), origin=f"g(1/{k})")


def log_g(p) -> LogMagnitude:
    """log g(p) for p in (0, 1]; accepts Fraction (exact 1/k fast path)
    or float."""
    if isinstance(p, Fraction) and p.numerator == 1:
        return log_g_reciprocal(p.denominator)
    p = float(p)
    if not 0 < p <= 1:
        raise ContractError(f"g is defined for p in (0, 1], got {p}")
    z = 1.0 / p
    if z >= 2 * _EXACT_MAX_K:
        return LogMagnitude(_log_g_large(z), origin=f"g({p})")
    value = ((2.0 * z - 2.0) * LOG2 + 2.0 * log_gamma(z + 1.0)
             - log_gamma(2.0 * z + 1.0))
    return LogMagnitude(value, origin=f"g({p})")


def g_recursion_check(kmax: int) -> float:
    """Max over k < kmax of |log g(1/(k+1)) - log g(1/k) - log((2k+2)/(2k+1))|.

    A pure consistency check of the evaluation paths against the exact
    step identity; should come out far below 1e-10.
    """
    if kmax < 2:
        raise ContractError("kmax must be at least 2")
    worst = 0.0
    prev = log_g_reciprocal(1).log_value
    for k in range(1, kmax):
        current = log_g_reciprocal(k + 1).log_value
        step = math.log1p(1.0 / (2 * k + 1))
        deviation = abs(current - prev - step)
        if deviation > worst:
            worst = deviation
        prev = current
    return worst


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of the capacity-ratio condition g/(1+log4+log g) >= 256."""

    p: float
    log_g: float
    ratio_log: float
    holds: bool


def _ratio_log(log_g_value: float) -> float:
    denominator = 1.0 + LOG4 + log_g_value
    if denominator <= 0.0:
        raise NumericFailureError(
            "capacity-ratio denominator is not positive",
            achieved=denominator)
    return log_g_value - math.log(denominator)


def condition_holds(p) -> ConditionReport:
    """Check g(p)/(1 + log4 + log g(p)) >= 256; requires p < 1/5."""
    p_value = float(p)
    if not 0 < p_value < 0.2:
        raise ContractError(f"requires p < 1/5, got p = {p}")
    lg = log_g(p if isinstance(p, Fraction) else p_value).log_value
    ratio = _ratio_log(lg)
    return ConditionReport(p=p_value, log_g=lg, ratio_log=ratio,
                           holds=ratio >= LOG256)


def minimal_threshold_k(lo: int = 2, hi: int = 10 ** 9) -> int:
    """Smallest integer k with condition_holds(1/k).

    The ratio g/(1+log4+log g) is increasing in g once g > 1/4 and
    g(1/k) is increasing in k, so the predicate flips false -> true
    exactly once; binary search is justified.
    """
    def predicate(k: int) -> bool:
        return _ratio_log(log_g_reciprocal(k).log_value) >= LOG256

    if predicate(lo):
        return lo
    if not predicate(hi):
        raise NumericFailureError(
            f"condition still fails at k = {hi}; search bracket exhausted")
    low, high = lo, hi
    while low + 1 < high:
        mid = (low + high) // 2
        if predicate(mid):
            high = mid
        else:
            low = mid
    return high
