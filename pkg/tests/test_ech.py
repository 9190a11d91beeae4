import itertools
import math
from fractions import Fraction
from random import Random

import pytest

from capax.ech import (CapacitySequence, ball_sequence, domain_capacities,
                       ech_concave_toric, ech_ellipsoid, ech_union,
                       hutchings_bound, packing_obstruction)
from capax.errors import ConcavityViolationError, ContractError
from capax.moment import (ball, ellipsoid, ellipsoid_region, pball_region,
                          polydisk_region, truncated_region)
from capax.weights import WeightBudget, weight_decomposition


def brute_ellipsoid(a, b, kmax):
    values = sorted(m * a + n * b
                    for m in range(kmax + 1) for n in range(kmax + 1))
    return tuple(values[:kmax + 1])


def brute_union(rows, kmax):
    out = []
    for k in range(kmax + 1):
        best = None
        for split in itertools.product(range(k + 1), repeat=len(rows)):
            if sum(split) == k:
                value = sum(row[i] for row, i in zip(rows, split))
                best = value if best is None else max(best, value)
        out.append(best)
    return tuple(out)


# ---------------------------------------------------------------------------
# Ellipsoid sequences
# ---------------------------------------------------------------------------

def test_round_ball_sequence():
    assert ech_ellipsoid(1, 1, 6).values == (0, 1, 1, 2, 2, 2, 3)
    assert ech_ellipsoid(1, 1, 6).values == brute_ellipsoid(1, 1, 6)


def test_skinny_ellipsoid_multiples():
    # c_k(E(1, 5)) = k for k <= 5 = floor(b/a).
    assert ech_ellipsoid(1, 5, 6).values == (0, 1, 2, 3, 4, 5, 5)


def test_ellipsoid_symmetry_and_brute_force():
    rng = Random(2)
    for _ in range(10):
        a = Fraction(rng.randint(1, 12), rng.randint(1, 12))
        b = Fraction(rng.randint(1, 12), rng.randint(1, 12))
        seq = ech_ellipsoid(a, b, 50)
        assert seq.values == brute_ellipsoid(a, b, 50)
        assert seq.values == ech_ellipsoid(b, a, 50).values


def test_ellipsoid_scaling_covariance():
    base = ech_ellipsoid(1, 2, 20)
    scaled = ech_ellipsoid(9, 18, 20)
    assert scaled.values == base.scale(9).values


def test_ellipsoid_contract_errors():
    with pytest.raises(ContractError):
        ech_ellipsoid(1, 1, -1)
    with pytest.raises(ContractError):
        ech_ellipsoid(0, 1, 5)


# ---------------------------------------------------------------------------
# Unions
# ---------------------------------------------------------------------------

def test_union_of_one_is_identity():
    seq = ech_ellipsoid(1, 3, 12)
    assert ech_union([seq], 12).values == seq.values


def test_two_unit_balls():
    union = ech_union([ball_sequence(1, 4), ball_sequence(1, 4)], 4)
    assert union[2] == 2  # c_1 + c_1 beats c_2 of a single ball
    assert union.values == brute_union([ball_sequence(1, 4).values] * 2, 4)


def test_union_matches_exhaustive_compositions():
    rng = Random(9)
    for _ in range(15):
        rows = []
        for _ in range(rng.randint(1, 4)):
            w = Fraction(rng.randint(1, 8), rng.randint(1, 4))
            rows.append(ball_sequence(w, 12).values)
        got = ech_union([CapacitySequence(r) for r in rows], 12).values
        assert got == brute_union(rows, 12)


def test_union_associative_commutative():
    rng = Random(13)
    seqs = [ball_sequence(Fraction(rng.randint(1, 9), 2), 15)
            for _ in range(3)]
    forward = ech_union(seqs, 15).values
    backward = ech_union(list(reversed(seqs)), 15).values
    nested = ech_union([ech_union(seqs[:2], 15), seqs[2]], 15).values
    assert forward == backward == nested


def test_empty_union_is_empty_set():
    assert ech_union([], 5).values == (0,) * 6


def test_union_insufficient_kmax():
    with pytest.raises(ContractError):
        ech_union([ech_ellipsoid(1, 1, 3)], 5)


# ---------------------------------------------------------------------------
# Concave toric domains
# ---------------------------------------------------------------------------

def test_unit_ball_region_matches_ellipsoid():
    result = ech_concave_toric(ellipsoid_region(1, 1), 10)
    assert result.complete
    assert result.sequence.values == ech_ellipsoid(1, 1, 10).values


def test_one_two_triangle_matches_enumeration():
    result = ech_concave_toric(ellipsoid_region(1, 2), 20)
    assert result.sequence.values == ech_ellipsoid(1, 2, 20).values
    assert result.truncation_bound == 0.0


@pytest.mark.parametrize("denom", [1, 2, 3, 4])
def test_pball_first_capacity(denom):
    result = ech_concave_toric(pball_region(1.0 / denom), 1)
    assert float(result.sequence[1]) == pytest.approx(2.0 ** (1 - denom),
                                                      abs=1e-10)


def test_pball_truncation_bound_is_one_sided():
    region = pball_region(0.5)
    short = ech_concave_toric(region, 12, WeightBudget(12))
    long = ech_concave_toric(region, 12, WeightBudget(600))
    assert not short.complete
    assert short.truncation_bound > 0
    for k in range(13):
        assert short.sequence[k] <= long.sequence[k] + 1e-12
        assert long.sequence[k] <= short.sequence[k] + short.truncation_bound


def test_capacity_monotone_under_region_inclusion():
    # Smaller exponent gives the smaller p-ball region.
    small = ech_concave_toric(pball_region(1.0 / 3), 15).sequence
    large = ech_concave_toric(pball_region(1.0 / 2), 15).sequence
    hull = ech_concave_toric(pball_region(1.0), 15).sequence
    for k in range(16):
        assert small[k] <= large[k] + 1e-12
        assert large[k] <= hull[k] + 1e-12


def test_truncated_region_rejected_as_nonconcave():
    with pytest.raises(ConcavityViolationError):
        ech_concave_toric(truncated_region(0.5, 3), 5)


def test_weight_union_respects_truncated_volume_bound():
    # c_k of the first k weight balls <= 2 sqrt(k * area of the
    # tangent-truncated region) for the p-ball family.
    for denom, k in ((2, 4), (3, 6), (5, 10)):
        p = 1.0 / denom
        ws = weight_decomposition(pball_region(p), WeightBudget(k))
        union = ech_union([ball_sequence(w, k) for w in ws.first(k)], k)
        bound = 2.0 * math.sqrt(k * truncated_region(p, k).area())
        assert float(union[k]) <= bound + 1e-9


# ---------------------------------------------------------------------------
# Square-root bound
# ---------------------------------------------------------------------------

def test_hutchings_bound_single_ball():
    ws = weight_decomposition(ellipsoid_region(1, 1), WeightBudget(5))
    check = hutchings_bound(ws, 1)
    assert check.lhs == pytest.approx(1.0)
    assert check.rhs == pytest.approx(math.sqrt(2.0))
    assert check.holds


def test_hutchings_bound_three_equal_balls():
    ws = weight_decomposition(ellipsoid_region(3, 1), WeightBudget(5))
    assert ws.weights == (1, 1, 1)
    check = hutchings_bound(ws, 3)
    assert check.lhs == 3.0
    assert check.rhs == pytest.approx(2.0 * math.sqrt(4.5))
    assert check.holds


def test_hutchings_bound_pball_grid():
    ws = weight_decomposition(pball_region(1.0 / 3), WeightBudget(50))
    for k in range(1, 51):
        assert hutchings_bound(ws, k).holds


def test_hutchings_bound_contract():
    ws = weight_decomposition(ellipsoid_region(1, 2), WeightBudget(5))
    with pytest.raises(ContractError):
        hutchings_bound(ws, 3)


# ---------------------------------------------------------------------------
# Obstructions
# ---------------------------------------------------------------------------

def test_oversized_ball_obstructed_at_one():
    report = packing_obstruction([ball(Fraction(101, 100))], ball(1), 5)
    assert report.obstructed
    assert report.obstructed_at[0] == 1
    assert report.verdict == "obstructed"


def test_two_balls_obstructed_at_two():
    report = packing_obstruction([ball(1), ball(1)], ball(Fraction(19, 10)),
                                 5)
    assert 2 in report.obstructed_at
    assert 1 not in report.obstructed_at


def test_volume_filling_packing_unobstructed():
    # The 199-ball variant fills the target volume exactly; the 198-ball
    # variant is its subset (and is scanned to k = 5000 in acceptance).
    report = packing_obstruction([ball(99)] + [ball(1)] * 199, ball(100),
                                 5000)
    assert not report.obstructed
    assert report.verdict == "no-obstruction-up-to-kmax"


def test_domain_capacities_dispatch():
    values, slack = domain_capacities(ellipsoid(2, 3), 8)
    assert values == ech_ellipsoid(2, 3, 8).values
    assert slack == 0.0
    # Non-concave polygons propagate the concavity error from the
    # weight decomposition.
    with pytest.raises(ConcavityViolationError):
        domain_capacities(polydisk_region(1, 1), 4)


def test_capacity_sequence_validation():
    with pytest.raises(ContractError):
        CapacitySequence((1, 2))
    with pytest.raises(ContractError):
        CapacitySequence((0, 2, 1))
    seq = CapacitySequence((0, 1, 2))
    assert seq.kmax == 2
    assert seq.truncated(1).values == (0, 1)
    with pytest.raises(ContractError):
        seq.truncated(5)


def test_weights_route_matches_enumeration_on_random_triangles():
    # Independent cross-validation of the weight recursion: on every
    # rational ellipsoid triangle the weight route must reproduce the
    # lattice enumeration.
    rng = Random(21)
    for _ in range(12):
        a = Fraction(rng.randint(1, 9), rng.randint(1, 6))
        b = Fraction(rng.randint(1, 9), rng.randint(1, 6))
        region = ellipsoid_region(a, b)
        ws = weight_decomposition(region, WeightBudget(600))
        assert ws.complete
        union = ech_union([ball_sequence(w, 15) for w in ws.weights], 15)
        assert union.values == ech_ellipsoid(a, b, 15).values
