"""The library's acceptance checks, runnable from pytest and the CLI.

Each criterion function returns a CriterionResult; `run_all` executes
the full battery and prints one pass/fail line per criterion.  The
criteria pin the quantitative claims the library is built around:
closed-form invariant values, the recursion consistency of the
log-space evaluation, the non-convexity threshold, oracle equivalence
of the capacity routines, the exact packing witness, and the three
distance-bound pipelines.

Criterion 13's growth milestone is implemented exactly as specified and
is known to be unattainable on the stated grid (the certified lower
bound reaches ~0.752 at k = 1e8; crossing 1.0 needs k ~ 9.4e9).  It is
reported as an expected failure rather than silently weakened; see the
project notes for the analysis.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from random import Random

import numpy as np

from .constructions import (StrangulationParams, strangulation_chain_bound,
                            triangle_packing_witness)
from .distance import (dc_lower_bound, john_certificate, linearized_upper_bound,
                       williamson)
from .ech import (ball_sequence, ech_ellipsoid, ech_union, hutchings_bound,
                  packing_obstruction, ech_concave_toric)
from .moment import ball, pball_region
from .scalars import (KNOWN_SUFFICIENT_K, condition_holds, g_recursion_check,
                      g_reciprocal_exact, log_g_reciprocal, minimal_threshold_k)
from .specialfns import LOG2
from .weights import WeightBudget, weight_decomposition


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    runtime: float
    expected_failure: bool = False

    def line(self) -> str:
        if self.passed:
            status = "PASS"
        elif self.expected_failure:
            status = "FAIL (known-unattainable, see notes)"
        else:
            status = "FAIL"
        return (f"criterion {self.number:2d} [{status}] {self.name}"
                f" ({self.runtime:.2f}s): {self.detail}")


def _result(number, name, passed, detail, started, expected_failure=False):
    return CriterionResult(number=number, name=name, passed=passed,
                           detail=detail, runtime=time.perf_counter() - started,
                           expected_failure=expected_failure)


def criterion_01_g_values() -> CriterionResult:
    """g(1/5) = 64/63 to 1e-12 relative; g(1) = 1/2 exactly; < 1 ms."""
    started = time.perf_counter()
    log_g_reciprocal(5)  # warm-up
    tick = time.perf_counter()
    lg5 = log_g_reciprocal(5).log_value
    lg1 = log_g_reciprocal(1).log_value
    elapsed = time.perf_counter() - tick
    rel = abs(math.exp(lg5) * 63.0 / 64.0 - 1.0)
    exact_ok = g_reciprocal_exact(1) == Fraction(1, 2)
    passed = rel < 1e-12 and exact_ok and elapsed < 1e-3
    detail = (f"rel error at 1/5: {rel:.2e}; g(1) exact: {exact_ok}; "
              f"runtime {elapsed * 1e6:.1f} us; log g(1) = {lg1:.12f}")
    return _result(1, "closed-form g values", passed, detail, started)


def criterion_02_recursion(kmax: int = 10 ** 6) -> CriterionResult:
    """Step-identity deviation < 1e-10 for all k <= 1e6, under 10 s."""
    started = time.perf_counter()
    deviation = g_recursion_check(kmax)
    elapsed = time.perf_counter() - started
    passed = deviation < 1e-10 and elapsed < 10.0
    detail = f"max deviation {deviation:.2e} over k <= {kmax} in {elapsed:.2f}s"
    return _result(2, "g recursion consistency", passed, detail, started)


def criterion_03_threshold() -> CriterionResult:
    """Known sufficient k satisfies the condition; the minimal k is below
    it and flips false -> true; search under 1 s."""
    started = time.perf_counter()
    holds_known = condition_holds(Fraction(1, KNOWN_SUFFICIENT_K)).holds
    k_star = minimal_threshold_k()
    flip_ok = (condition_holds(Fraction(1, k_star)).holds
               and not condition_holds(Fraction(1, k_star - 1)).holds)
    elapsed = time.perf_counter() - started
    passed = holds_known and flip_ok and k_star <= KNOWN_SUFFICIENT_K \
        and elapsed < 1.0
    detail = (f"k* = {k_star} <= {KNOWN_SUFFICIENT_K}; flip verified; "
              f"{elapsed:.3f}s")
    return _result(3, "non-convexity threshold", passed, detail, started)


def criterion_04_lower_bound_flag() -> CriterionResult:
    """Lower bound at the sufficient k strictly exceeds log 2."""
    started = time.perf_counter()
    report = dc_lower_bound(Fraction(1, KNOWN_SUFFICIENT_K))
    margin = report.lower_bound - LOG2
    passed = report.lower_bound > LOG2 and report.not_symplectically_convex
    detail = (f"lower bound {report.lower_bound:.10f} vs log 2 "
              f"{LOG2:.10f} (margin {margin:.3e}); flagged: "
              f"{report.not_symplectically_convex}")
    return _result(4, "non-convexity flag", passed, detail, started)


def _brute_ellipsoid(a, b, kmax):
    grid = sorted(m * a + n * b
                  for m in range(kmax + 1) for n in range(kmax + 1))
    return tuple(grid[:kmax + 1])


def _brute_union(value_rows, kmax):
    out = []
    n = len(value_rows)
    for k in range(kmax + 1):
        best = None
        for split in itertools.product(range(k + 1), repeat=n):
            if sum(split) != k:
                continue
            total = sum(row[piece] for row, piece in zip(value_rows, split))
            best = total if best is None else max(best, total)
        out.append(best)
    return tuple(out)


def criterion_05_ech_oracles() -> CriterionResult:
    """Ellipsoid sequences match brute-force sorting for 50 random
    rational axes (exact); unions match exhaustive composition search."""
    started = time.perf_counter()
    rng = Random(20260810)
    failures = []
    for trial in range(50):
        a = Fraction(rng.randint(1, 24), rng.randint(1, 24))
        b = Fraction(rng.randint(1, 24), rng.randint(1, 24))
        got = ech_ellipsoid(a, b, 50).values
        want = _brute_ellipsoid(a, b, 50)
        if got != want:
            failures.append(("ellipsoid", trial, a, b))
    for trial in range(10):
        count = rng.randint(1, 4)
        rows = []
        for _ in range(count):
            w = Fraction(rng.randint(1, 9), rng.randint(1, 3))
            rows.append(ball_sequence(w, 12).values)
        got = ech_union([_seq(row) for row in rows], 12).values
        want = _brute_union(rows, 12)
        if got != want:
            failures.append(("union", trial, count))
    passed = not failures
    detail = "all exact" if passed else f"failures: {failures[:3]}"
    return _result(5, "capacity oracle equivalence", passed, detail, started)


def _seq(values):
    from .ech import CapacitySequence
    return CapacitySequence(values)


def criterion_06_first_capacity() -> CriterionResult:
    """c_1 of the p-ball equals 2*2^(-1/p) to 1e-9 for p = 1, 1/2, 1/3, 1/4."""
    started = time.perf_counter()
    worst = 0.0
    for denom in (1, 2, 3, 4):
        p = 1.0 / denom
        got = float(ech_concave_toric(pball_region(p), 1).sequence[1])
        want = 2.0 * 2.0 ** (-denom)
        worst = max(worst, abs(got - want))
    passed = worst < 1e-9
    detail = f"max |c_1 - 2^(1-1/p)| = {worst:.2e}"
    return _result(6, "first capacity of the p-ball", passed, detail, started)


def criterion_07_hutchings() -> CriterionResult:
    """Square-root bound strict for p-ball weights (p = 1/2, 1/3), k <= 50."""
    started = time.perf_counter()
    slack = math.inf
    for denom in (2, 3):
        ws = weight_decomposition(pball_region(1.0 / denom), WeightBudget(50))
        for k in range(1, 51):
            check = hutchings_bound(ws, k)
            slack = min(slack, check.rhs - check.lhs)
            if not check.holds or check.lhs >= check.rhs:
                detail = f"violated at p=1/{denom}, k={k}"
                return _result(7, "square-root capacity bound", False,
                               detail, started)
    detail = f"strict for all k <= 50; min slack {slack:.3e}"
    return _result(7, "square-root capacity bound", True, detail, started)


def criterion_08_packing(kmax: int = 5000) -> CriterionResult:
    """Exact 199-triangle witness plus no capacity obstruction for
    {B(99)} u 198 x {B(1)} vs B(100) up to k = 5000, under 60 s."""
    started = time.perf_counter()
    certificate = triangle_packing_witness()
    witness_ok = (len(certificate.maps) == 199
                  and certificate.total_area == Fraction(199, 2)
                  and all(abs(m.det) == 1 for m in certificate.maps))
    report = packing_obstruction([ball(99)] + [ball(1)] * 198, ball(100),
                                 kmax)
    elapsed = time.perf_counter() - started
    passed = witness_ok and not report.obstructed and elapsed < 60.0
    detail = (f"witness: {len(certificate.maps)} triangles, area "
              f"{certificate.total_area}; obstruction verdict: "
              f"{report.verdict}; {elapsed:.1f}s")
    return _result(8, "ball packing", passed, detail, started)


def random_polytope(seed: int, facets: int = 24):
    """Seeded bounded polytope around the origin: random unit normals,
    offsets in [0.5, 1.5]."""
    rng = np.random.default_rng(seed)
    normals = rng.normal(size=(facets, 4))
    normals /= np.linalg.norm(normals, axis=1, keepdims=True)
    offsets = rng.uniform(0.5, 1.5, size=facets)
    return normals, offsets


def criterion_09_john_pipeline(count: int = 20) -> CriterionResult:
    """20 random polytopes: certificate bound <= log 2 + 1e-5 with both
    containments re-verified geometrically."""
    started = time.perf_counter()
    worst = -math.inf
    for seed in range(count):
        normals, offsets = random_polytope(1000 + seed)
        certificate, diagnostics = john_certificate(normals, offsets)
        worst = max(worst, certificate.dc_upper_bound)
        if certificate.dc_upper_bound > LOG2 + 1e-5:
            detail = (f"seed {seed}: bound {certificate.dc_upper_bound:.8f} "
                      f"exceeds log 2 + 1e-5 (mu = "
                      f"{diagnostics['coveringFactor']:.6f})")
            return _result(9, "inscribed-ellipsoid pipeline", False, detail,
                           started)
        if diagnostics["innerSlack"] > 1e-7:
            return _result(9, "inscribed-ellipsoid pipeline", False,
                           f"seed {seed}: inner containment slack "
                           f"{diagnostics['innerSlack']:.2e}", started)
    detail = f"worst bound {worst:.8f} <= log 2 + 1e-5 = {LOG2 + 1e-5:.8f}"
    return _result(9, "inscribed-ellipsoid pipeline", True, detail, started)


def random_symplectic_matrix(rng: np.random.Generator) -> np.ndarray:
    """exp(J R) with R symmetric is a linear symplectomorphism."""
    from scipy.linalg import expm

    from .distance import standard_symplectic_matrix

    r = rng.normal(size=(4, 4), scale=0.4)
    r = (r + r.T) / 2.0
    return expm(standard_symplectic_matrix() @ r)


def criterion_10_williamson(count: int = 100) -> CriterionResult:
    """Spectral invariance under 100 random symplectic conjugations to
    1e-8; normal-form examples exact."""
    started = time.perf_counter()
    identity_spectrum = williamson(np.eye(4))
    base_ok = (abs(identity_spectrum.a - math.pi) < 1e-12
               and abs(identity_spectrum.b - math.pi) < 1e-12)
    diag_spectrum = williamson(np.diag([3.0, 3.0, 0.5, 0.5]))
    base_ok &= (abs(diag_spectrum.a - math.pi / 3.0) < 1e-12
                and abs(diag_spectrum.b - math.pi / 0.5) < 1e-12)
    rng = np.random.default_rng(20260810)
    worst = 0.0
    for _ in range(count):
        basis = rng.normal(size=(4, 4))
        form = basis @ basis.T + 0.5 * np.eye(4)
        reference = williamson(form)
        transform = random_symplectic_matrix(rng)
        conjugated = williamson(transform.T @ form @ transform)
        worst = max(worst, abs(conjugated.a - reference.a),
                    abs(conjugated.b - reference.b))
    passed = base_ok and worst < 1e-8
    detail = f"normal forms exact: {base_ok}; worst conjugation drift {worst:.2e}"
    return _result(10, "symplectic spectrum invariance", passed, detail,
                   started)


def criterion_11_linearized() -> CriterionResult:
    """Certified factor-3 sandwich (bound log(3)/2) with exact polygon
    legs for p = 1/2, ..., 1/10."""
    started = time.perf_counter()
    expected = 0.5 * math.log(3.0)
    for denom in range(2, 11):
        certificate = linearized_upper_bound(Fraction(1, denom))
        if certificate.dc_upper_bound != expected:
            detail = f"p=1/{denom}: bound {certificate.dc_upper_bound}"
            return _result(11, "linearized-domain bound", False, detail,
                           started)
    detail = f"bound log(3)/2 = {expected:.10f} certified for p=1/2..1/10"
    return _result(11, "linearized-domain bound", True, detail, started)


def criterion_12_strangulation() -> CriterionResult:
    """Chain bound decreasing along delta = 1e-1..1e-6 with gap to
    log sqrt 2 below 1e-3 at the end."""
    started = time.perf_counter()
    bounds = []
    for exponent in range(1, 7):
        params = StrangulationParams(Fraction(1, 10 ** exponent))
        bounds.append(strangulation_chain_bound(params).upper_bound)
    monotone = all(a > b for a, b in zip(bounds, bounds[1:]))
    gap = bounds[-1] - 0.5 * LOG2
    passed = monotone and 0 <= gap < 1e-3
    detail = f"monotone: {monotone}; final gap to log sqrt(2): {gap:.2e}"
    return _result(12, "strangulation limit", passed, detail, started)


def criterion_13_unboundedness() -> CriterionResult:
    """Lower-bound family nondecreasing along k = 10..1e8 and crossing
    the 1.0 milestone within that range.

    The crossing clause cannot hold: the bound is 0.752 at k = 1e8 and
    reaches 1.0 only near k = 9.4e9.  Reported as an expected failure.
    """
    started = time.perf_counter()
    grid = [10 ** j for j in range(1, 9)]
    values = [dc_lower_bound(Fraction(1, k)).lower_bound for k in grid]
    monotone = all(a <= b for a, b in zip(values, values[1:]))
    crossing = any(v > 1.0 for v in values)
    passed = monotone and crossing
    detail = (f"values {[round(v, 4) for v in values]}; monotone: {monotone}; "
              f"crosses 1.0: {crossing}")
    return _result(13, "lower-bound growth milestone", passed, detail,
                   started, expected_failure=monotone and not crossing)


ALL_CRITERIA = (
    criterion_01_g_values,
    criterion_02_recursion,
    criterion_03_threshold,
    criterion_04_lower_bound_flag,
    criterion_05_ech_oracles,
    criterion_06_first_capacity,
    criterion_07_hutchings,
    criterion_08_packing,
    criterion_09_john_pipeline,
    criterion_10_williamson,
    criterion_11_linearized,
    criterion_12_strangulation,
    criterion_13_unboundedness,
)


def run_all(numbers=None, verbose: bool = True):
    """Run the acceptance battery; returns the list of results."""
    results = []
    for index, func in enumerate(ALL_CRITERIA, start=1):
        if numbers is not None and index not in numbers:
            continue
        result = func()
        results.append(result)
        if verbose:
            print(result.line())
    return results
