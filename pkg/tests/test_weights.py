from fractions import Fraction

import pytest

from capax.errors import ConcavityViolationError, ContractError
from capax.moment import (AffineUnimodular, PolygonRegion, apply_affine,
                          ball_region, ellipsoid_region, pball_region,
                          polydisk_region, truncated_region)
from capax.weights import WeightBudget, WeightSequence, weight_decomposition

BUDGET = WeightBudget(max_count=100)


def test_ball_is_its_own_weight():
    ws = weight_decomposition(ball_region(1), BUDGET)
    assert ws.weights == (Fraction(1),)
    assert ws.complete
    assert ws.volume_deficit() == 0


def test_ellipsoid_one_two_hand_run():
    # Hand-run recursion: cut at a=1, remainder maps onto the unit triangle.
    ws = weight_decomposition(ellipsoid_region(1, 2), BUDGET)
    assert ws.weights == (1, 1)
    assert ws.complete
    assert ws.square_volume() == ellipsoid_region(1, 2).area() == 1


def test_ellipsoid_euclid_expansion():
    # Hand Euclid run for E(1, 5/2): (1, 1, 1/2, 1/2).
    ws = weight_decomposition(ellipsoid_region(1, Fraction(5, 2)), BUDGET)
    assert ws.weights == (1, 1, Fraction(1, 2), Fraction(1, 2))
    assert ws.square_volume() == Fraction(5, 4)


def test_elongated_ellipsoid_unit_weights():
    ws = weight_decomposition(ellipsoid_region(5, 1), BUDGET)
    assert ws.weights == (1,) * 5


def test_strain_domain_weight_sequence():
    from capax.constructions import strain_domain
    ws = weight_decomposition(strain_domain(99), WeightBudget(300))
    assert ws.weights[0] == 99
    assert ws.weights[1:] == (1,) * 198
    assert ws.complete
    assert ws.square_volume() == strain_domain(99).area()


@pytest.mark.parametrize("denom", [1, 2, 3])
def test_pball_largest_weight(denom):
    ws = weight_decomposition(pball_region(1.0 / denom), WeightBudget(1))
    assert ws.weights[0] == pytest.approx(2.0 * 2.0 ** (-denom), abs=1e-11)


def test_pball_partial_sums_increase_to_area():
    for denom in (2, 3, 4):
        region = pball_region(1.0 / denom)
        ws = weight_decomposition(region, WeightBudget(400))
        partials = []
        total = 0.0
        for w in ws.weights:
            total += w * w / 2.0
            partials.append(total)
        assert all(a < b for a, b in zip(partials, partials[1:]))
        assert partials[-1] < region.area() + 1e-12


def test_pball_deficit_shrinks_with_budget():
    region = pball_region(0.5)
    deficits = [float(weight_decomposition(region,
                                           WeightBudget(n)).volume_deficit())
                for n in (10, 100, 1000)]
    assert deficits[0] > deficits[1] > deficits[2] > 0


@pytest.mark.parametrize("denom", [2, 3, 4])
def test_pball_deficit_below_tolerance_at_ten_thousand(denom):
    ws = weight_decomposition(pball_region(1.0 / denom),
                              WeightBudget(10 ** 4))
    assert float(ws.volume_deficit()) < 1e-3


def test_truncation_prefix_stability():
    region = pball_region(1.0 / 3)
    short = weight_decomposition(region, WeightBudget(20))
    long = weight_decomposition(region, WeightBudget(50))
    assert not short.complete
    assert long.weights[:20] == short.weights


def test_min_weight_budget():
    ws = weight_decomposition(ellipsoid_region(1, Fraction(5, 2)),
                              WeightBudget(max_count=100, min_weight=0.75))
    assert ws.weights == (1, 1)
    assert not ws.complete


def test_affine_invariance_of_weights():
    base = ellipsoid_region(1, 2)
    swapped = apply_affine(base, AffineUnimodular(((0, 1), (1, 0))))
    assert weight_decomposition(swapped, BUDGET).weights == \
        weight_decomposition(base, BUDGET).weights


def test_float_mode_volume_conservation():
    ws = weight_decomposition(ellipsoid_region(1.0, 2.0), BUDGET)
    assert ws.complete
    assert abs(float(ws.square_volume()) - 1.0) < 1e-9


def test_empty_budget_rejected():
    with pytest.raises(ContractError):
        WeightBudget(max_count=0)


def test_non_concave_regions_rejected_with_witness():
    with pytest.raises(ConcavityViolationError) as excinfo:
        weight_decomposition(polydisk_region(1, 1), BUDGET)
    assert excinfo.value.witness is not None
    with pytest.raises(ConcavityViolationError):
        weight_decomposition(truncated_region(0.5, 2), BUDGET)
    # Concave-violating polygon: boundary bulges outward.
    bulge = PolygonRegion(((0, 0), (2, 0), (Fraction(3, 2), Fraction(3, 2)),
                           (0, 2)))
    with pytest.raises(ConcavityViolationError) as excinfo:
        weight_decomposition(bulge, BUDGET)
    assert excinfo.value.witness is not None


def test_weight_sequence_validation():
    with pytest.raises(ContractError):
        WeightSequence((1, 2), complete=True)
    with pytest.raises(ContractError):
        WeightSequence((1, 0), complete=True)
    ws = WeightSequence((3, 1), complete=False, region_area=Fraction(11, 2))
    assert ws.square_volume() == 5
    assert ws.volume_deficit() == Fraction(1, 2)
    with pytest.raises(ContractError):
        ws.first(3)


def test_weight_sequence_json():
    ws = WeightSequence((Fraction(3, 2), 1), complete=True,
                        region_area=Fraction(13, 8))
    data = ws.to_json()
    assert data["weights"] == [1.5, 1.0]
    assert data["complete"] is True
    assert data["volumeDeficit"] == 0.0
