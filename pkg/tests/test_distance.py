import math
from fractions import Fraction

import numpy as np
import pytest

from capax.acceptance import random_polytope, random_symplectic_matrix
from capax.distance import (covering_factor, dc_lower_bound, envelope_bound,
                            inscribed_ball_upper_bound, john_certificate,
                            linearized_upper_bound,
                            max_volume_inscribed_ellipsoid, polytope_vertices,
                            rescale_ellipsoid, standard_symplectic_matrix,
                            volume_ratio, williamson)
from capax.errors import ContractError, InfeasibilityError
from capax.scalars import KNOWN_SUFFICIENT_K, LOG4, log_g
from capax.specialfns import LOG2


def test_rescale_identity():
    assert rescale_ellipsoid(0.5, 4.0, 8.0) == (1.0, 2.0)
    assert rescale_ellipsoid(2.0, 1.0, 3.0) == (4.0, 12.0)


# ---------------------------------------------------------------------------
# Lower bound
# ---------------------------------------------------------------------------

def test_lower_bound_flags_non_convexity_at_sufficient_k():
    report = dc_lower_bound(Fraction(1, KNOWN_SUFFICIENT_K))
    assert report.lower_bound > LOG2
    assert report.not_symplectically_convex


def test_lower_bound_clamped_at_one_sixth():
    report = dc_lower_bound(Fraction(1, 6))
    assert report.lower_bound == 0.0
    assert not report.not_symplectically_convex


def test_lower_bound_monotone_family():
    values = [dc_lower_bound(Fraction(1, 10 ** j)).lower_bound
              for j in range(1, 7)]
    assert all(a <= b for a, b in zip(values, values[1:]))


def test_lower_bound_range_gate():
    with pytest.raises(ContractError):
        dc_lower_bound(Fraction(1, 4))


def test_lower_bound_never_exceeds_sandwich_upper_bound():
    from capax.distance import inscribed_ball_log_upper_bound
    for denom in (6, 10, 100, 10 ** 4, 10 ** 6):
        p = Fraction(1, denom)
        lower = dc_lower_bound(p).lower_bound
        upper = inscribed_ball_log_upper_bound(float(p))
        assert lower <= upper
    # Certificate form agrees with the log form where both exist.
    assert inscribed_ball_upper_bound(0.01).dc_upper_bound == pytest.approx(
        inscribed_ball_log_upper_bound(0.01), rel=1e-12)


# ---------------------------------------------------------------------------
# Envelope
# ---------------------------------------------------------------------------

def test_envelope_two_point_minimum():
    p = Fraction(1, 100)
    lg = log_g(p).log_value
    g = math.exp(lg)
    floor_g = int(g)
    two_point = min(envelope_bound(p, floor_g), envelope_bound(p, floor_g + 1))
    # Exhaustive scan over k <= 1e6 (vectorized replica of the envelope).
    ks = np.arange(1, 10 ** 6 + 1, dtype=float)
    envelope = np.maximum(lg, np.log(ks)) - np.log(1.0 + LOG4 + np.log(ks))
    exhaustive = float(envelope.min())
    assert two_point == pytest.approx(exhaustive, abs=1e-12)
    probe = np.argmin(envelope) + 1
    assert envelope_bound(p, int(probe)) == pytest.approx(exhaustive,
                                                          abs=1e-12)
    ratio = lg - math.log(1 + LOG4 + lg)
    assert exhaustive >= ratio - 1e-12
    assert envelope_bound(p, 1) >= exhaustive


# ---------------------------------------------------------------------------
# Williamson normal form
# ---------------------------------------------------------------------------

def test_williamson_unit_ball():
    spectrum = williamson(np.eye(4))
    assert spectrum.a == pytest.approx(math.pi, abs=1e-12)
    assert spectrum.b == pytest.approx(math.pi, abs=1e-12)


def test_williamson_block_diagonal():
    spectrum = williamson(np.diag([2.0, 2.0, 0.5, 0.5]))
    assert spectrum.a == pytest.approx(math.pi / 2.0, abs=1e-12)
    assert spectrum.b == pytest.approx(math.pi / 0.5, abs=1e-12)


def test_williamson_conjugation_invariance():
    rng = np.random.default_rng(4)
    j_matrix = standard_symplectic_matrix()
    for _ in range(25):
        basis = rng.normal(size=(4, 4))
        form = basis @ basis.T + 0.3 * np.eye(4)
        transform = random_symplectic_matrix(rng)
        assert np.allclose(transform.T @ j_matrix @ transform, j_matrix,
                           atol=1e-9)
        original = williamson(form)
        conjugated = williamson(transform.T @ form @ transform)
        assert conjugated.a == pytest.approx(original.a, abs=1e-8)
        assert conjugated.b == pytest.approx(original.b, abs=1e-8)


def test_williamson_rejects_bad_forms():
    with pytest.raises(ContractError):
        williamson(np.diag([1.0, 1.0, 1.0, -1.0]))
    with pytest.raises(ContractError):
        williamson(np.triu(np.ones((4, 4))))


# ---------------------------------------------------------------------------
# Inscribed ellipsoid and the certificate pipeline
# ---------------------------------------------------------------------------

def _cube(half_sides):
    normals = np.vstack([np.eye(4), -np.eye(4)])
    offsets = np.concatenate([half_sides, half_sides]).astype(float)
    return normals, offsets


def test_inscribed_ellipsoid_cube_is_unit_ball():
    normals, offsets = _cube(np.ones(4))
    ellipsoid = max_volume_inscribed_ellipsoid(normals, offsets)
    assert np.allclose(ellipsoid.center, 0.0, atol=1e-6)
    assert np.allclose(ellipsoid.form, np.eye(4), atol=1e-5)


def test_inscribed_ellipsoid_box_semiaxes():
    normals, offsets = _cube(np.array([1.0, 1.0, 2.0, 2.0]))
    ellipsoid = max_volume_inscribed_ellipsoid(normals, offsets)
    semiaxes = np.sort(1.0 / np.sqrt(np.linalg.eigvalsh(ellipsoid.form)))
    assert np.allclose(semiaxes, [1.0, 1.0, 2.0, 2.0], atol=1e-4)


def test_inscribed_ellipsoid_simplex_four_fold_containment():
    normals = np.vstack([-np.eye(4), np.ones((1, 4)) / 2.0])
    offsets = np.array([0.0, 0.0, 0.0, 0.0, 0.5])
    ellipsoid = max_volume_inscribed_ellipsoid(normals, offsets)
    assert ellipsoid.feasibility_margin < 1e-7
    vertices = polytope_vertices(normals, offsets,
                                 ellipsoid.center)
    mu = covering_factor(vertices, ellipsoid.center, ellipsoid.form)
    assert mu == pytest.approx(4.0, rel=1e-4)  # simplex saturates John


def test_unbounded_polytope_rejected():
    # Half-spaces all facing one way leave the polytope unbounded.
    normals = np.vstack([np.eye(4), np.eye(4) * 0.5])
    offsets = np.ones(8)
    with pytest.raises(InfeasibilityError):
        polytope_vertices(normals, offsets, np.zeros(4))


def test_john_certificate_cube():
    normals, offsets = _cube(np.ones(4))
    certificate, diagnostics = john_certificate(normals, offsets)
    # The cube is centrally symmetric: covering factor 2, bound well
    # below the worst case log 2.
    assert certificate.lam == pytest.approx(2.0, rel=1e-6)
    assert certificate.dc_upper_bound <= LOG2 + 1e-5
    assert diagnostics["innerSlack"] <= 1e-8
    assert certificate.inner[0] == pytest.approx(math.pi, rel=1e-5)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_john_certificate_random_polytopes(seed):
    normals, offsets = random_polytope(500 + seed)
    certificate, diagnostics = john_certificate(normals, offsets)
    assert certificate.dc_upper_bound <= LOG2 + 1e-5
    assert diagnostics["coveringFactor"] >= 1.0
    assert diagnostics["innerSlack"] <= 1e-7


def test_john_certificate_ellipsoid_facets_nearly_tight():
    # A fine half-space shell of an ellipsoid is its own maximal
    # ellipsoid up to discretization; the certificate bound collapses.
    rng = np.random.default_rng(12)
    axes = np.array([1.0, 1.5, 0.8, 1.2])
    normals = rng.normal(size=(1000, 4))
    normals /= np.linalg.norm(normals, axis=1, keepdims=True)
    # Tangent planes of the axis-aligned ellipsoid sum (x_i/a_i)^2 = 1.
    offsets = np.sqrt(np.einsum("ij,j->i", normals ** 2, axes ** 2))
    certificate, _ = john_certificate(normals, offsets)
    assert certificate.dc_upper_bound < 0.05


# ---------------------------------------------------------------------------
# Linearized bound and volume ratio
# ---------------------------------------------------------------------------

def test_linearized_certificate_values():
    certificate = linearized_upper_bound(Fraction(1, 2))
    assert certificate.inner == (1.0, pytest.approx(1.0 / 3.0))
    assert certificate.lam == 3.0
    assert certificate.dc_upper_bound == 0.5 * math.log(3.0)
    assert certificate.cited_legs  # middle leg recorded, not verified


@pytest.mark.parametrize("denom", range(2, 11))
def test_linearized_certificate_constant_bound(denom):
    certificate = linearized_upper_bound(Fraction(1, denom))
    assert certificate.dc_upper_bound == 0.5 * math.log(3.0)


def test_linearized_outer_leg_sanity():
    for denom in range(2, 11):
        d = Fraction(1, 2 ** denom)
        assert 3 - 2 * d < 3


def test_linearized_range_gate():
    with pytest.raises(ContractError):
        linearized_upper_bound(Fraction(3, 2))


def test_volume_ratio_values():
    assert volume_ratio(1.0) == 1.0
    assert volume_ratio(Fraction(1, 5)) == pytest.approx(252 / 32, rel=1e-9)
    ratios = [volume_ratio(Fraction(1, d)) for d in (5, 8, 10)]
    assert ratios[0] < ratios[1] < ratios[2]
    assert ratios[2] > 10.0


def test_williamson_recovers_explicit_ellipsoid_form():
    # The moment-model form of E(a, b) is diag(pi/a, pi/a, pi/b, pi/b).
    rng = np.random.default_rng(31)
    for _ in range(20):
        a, b = np.sort(rng.uniform(0.2, 5.0, size=2))
        form = np.diag([math.pi / a, math.pi / a, math.pi / b, math.pi / b])
        spectrum = williamson(form)
        assert spectrum.a == pytest.approx(a, rel=1e-12)
        assert spectrum.b == pytest.approx(b, rel=1e-12)


def test_john_pipeline_symplectically_covariant():
    # A linear symplectic image of the cube must give the same Williamson
    # data and covering factor (up to solver tolerance on the skewed
    # geometry): the certificate is a symplectic invariant of the body.
    from capax.acceptance import random_symplectic_matrix
    rng = np.random.default_rng(77)
    normals = np.vstack([np.eye(4), -np.eye(4)])
    offsets = np.ones(8)
    base_cert, base_diag = john_certificate(normals, offsets)
    transform = random_symplectic_matrix(rng)
    image_cert, image_diag = john_certificate(
        normals @ np.linalg.inv(transform), offsets)
    assert image_cert.inner[0] == pytest.approx(base_cert.inner[0], rel=1e-4)
    assert image_cert.inner[1] == pytest.approx(base_cert.inner[1], rel=1e-4)
    assert image_diag["coveringFactor"] == pytest.approx(
        base_diag["coveringFactor"], rel=1e-4)
