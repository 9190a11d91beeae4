"""Coarse-distance bounds between toric domains and symplectic ellipsoids.

Distance convention: d_c(U, V) = inf { log L >= 0 : (1/L)U -> V -> LU }
with symplectic embeddings and L-dilation of sets.  A sandwich
E(a,b) -> X -> lam*E(a,b) (lam a set-dilation factor, so
lam*E(a,b) = E(lam^2 a, lam^2 b)) rebalances around sqrt(lam)*E and
certifies d_c(X, ellipsoids) <= log(lam)/2; that constant is what
`SandwichCertificate` stores.

Lower bounds for the p-ball domains come from the capacity-ratio
estimate: d_c >= (1/8) log(g / (1 + log 4 + log g)) for p < 1/5.
Combined with the inscribed-ellipsoid (John) upper bound log 2 for
symplectically convex domains, a lower bound above log 2 certifies that
the domain is not symplectomorphic to any convex domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.linalg import eigh
from scipy.spatial import HalfspaceIntersection, QhullError

from .errors import (ContractError, InfeasibilityError, IterationLimitError,
                     NumericFailureError)
from .moment import (PolygonRegion, _two_pow_neg_inv, linearized_region,
                     pball_region)
from .scalars import LOG4, log_g
from .specialfns import LOG2

JOHN_DIMENSION_FACTOR = 4.0  # inscribed-ellipsoid covering factor in R^4


def rescale_ellipsoid(alpha: float, a, b):
    """Set-dilation identity alpha*E(a, b) = E(alpha^2 a, alpha^2 b)."""
    if alpha <= 0:
        raise ContractError("dilation factor must be positive")
    return (alpha * alpha * a, alpha * alpha * b)


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Williamson data (a, b), a <= b: the ellipsoid E(a, b) linearly
    symplectomorphic to {x^T S x <= 1}."""

    a: float
    b: float

    def __post_init__(self):
        if not 0 < self.a <= self.b:
            raise ContractError(
                f"spectrum must satisfy 0 < a <= b, got ({self.a}, {self.b})")


@dataclass(frozen=True)
class SandwichCertificate:
    """Witnessed chain E(a,b) -> X -> lam*E(a,b) (set dilation)."""

    subject: str
    inner: tuple
    lam: float
    provenance: tuple = ()
    cited_legs: tuple = ()

    def __post_init__(self):
        if self.lam < 1:
            raise ContractError(f"outer scale must be >= 1, got {self.lam}")

    @property
    def dc_upper_bound(self) -> float:
        return 0.5 * math.log(self.lam)

    def to_json(self) -> dict:
        return {"subject": self.subject,
                "inner": [float(self.inner[0]), float(self.inner[1])],
                "outerScale": float(self.lam),
                "dcUpperBound": self.dc_upper_bound,
                "provenance": list(self.provenance),
                "citedLegs": list(self.cited_legs)}


@dataclass(frozen=True)
class DistanceBoundReport:
    """Certified coarse-distance bounds for one subject."""

    subject: str
    lower_bound: float = 0.0
    upper_bound: float | None = None
    not_symplectically_convex: bool = False
    provenance: tuple = ()

    def __post_init__(self):
        if self.lower_bound < 0:
            raise ContractError("lower bound must be >= 0")
        if self.upper_bound is not None and self.lower_bound > self.upper_bound:
            raise ContractError("lower bound exceeds upper bound")

    def to_json(self) -> dict:
        return {"subject": self.subject,
                "lowerBound": self.lower_bound,
                "upperBound": self.upper_bound,
                "notSymplecticallyConvex": self.not_symplectically_convex,
                "provenance": list(self.provenance)}


# ---------------------------------------------------------------------------
# Capacity-ratio lower bound
# ---------------------------------------------------------------------------

def dc_lower_bound(p) -> DistanceBoundReport:
    """Distance from the p-ball domain to all symplectic ellipsoids:
    lower bound (1/8) log(g/(1+log4+log g)), clamped at 0; requires
    p < 1/5.

    A value above log 2 additionally certifies that the domain is not
    symplectically convex (convex domains sit within log 2 of an
    ellipsoid by the inscribed-ellipsoid bound).
    """
    if not 0 < float(p) < 0.2:
        raise ContractError(f"requires p < 1/5, got p = {p}")
    lg = log_g(p).log_value
    denominator = 1.0 + LOG4 + lg
    raw = (lg - math.log(denominator)) / 8.0
    lower = max(0.0, raw)
    return DistanceBoundReport(
        subject=f"pball(p={p})",
        lower_bound=lower,
        not_symplectically_convex=lower > LOG2,
        provenance=(
            "eighth-log of the capacity ratio g/(1+log4+log g)",
            "non-convexity flag: exceeds the log 2 inscribed-ellipsoid bound",
        ))


def envelope_bound(p, k: int) -> float:
    """log of max(g(p), k) / (1 + log4 + log k): the per-k envelope whose
    minimum over k >= 1 is (at least) the capacity ratio at g."""
    if not 0 < float(p) < 0.2:
        raise ContractError(f"requires p < 1/5, got p = {p}")
    if not isinstance(k, int) or k < 1:
        raise ContractError(f"k must be a positive integer, got {k}")
    lg = log_g(p).log_value
    return max(lg, math.log(k)) - math.log(1.0 + LOG4 + math.log(k))


# ---------------------------------------------------------------------------
# Maximum-volume inscribed ellipsoid (convex-program subroutine)
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class InscribedEllipsoid:
    """{x : (x-center)^T form (x-center) <= 1} inside {N x <= c}."""

    center: np.ndarray
    form: np.ndarray
    shape_matrix: np.ndarray = field(repr=False)  # B with E = {Bu + d}
    feasibility_margin: float = 0.0
    solver_status: str = ""


def max_volume_inscribed_ellipsoid(normals, offsets,
                                   tol: float = 1e-6) -> InscribedEllipsoid:
    """Solve max log det B s.t. |B n_i| + n_i . d <= c_i over PSD B.

    The ellipsoid {Bu + d : |u| <= 1} is the largest-volume ellipsoid in
    the polytope {x : n_i . x <= c_i}; at the optimum the polytope lies
    in the 4-fold dilation about the center.  Reports the measured
    constraint margin so downstream certificates never have to trust the
    solver.
    """
    import cvxpy as cp

    normals = np.asarray(normals, dtype=float)
    offsets = np.asarray(offsets, dtype=float)
    if normals.ndim != 2 or normals.shape[1] != 4:
        raise ContractError("normals must be an (m, 4) array")
    if offsets.shape != (normals.shape[0],):
        raise ContractError("offsets must match the number of normals")
    if normals.shape[0] < 5:
        raise InfeasibilityError("a bounded 4-polytope needs >= 5 facets")

    b_var = cp.Variable((4, 4), PSD=True)
    d_var = cp.Variable(4)
    constraints = [cp.norm(normals @ b_var, axis=1)
                   + normals @ d_var <= offsets]
    problem = cp.Problem(cp.Maximize(cp.log_det(b_var)), constraints)
    status = None
    fallback = None
    eps = max(min(tol * 1e-3, 1e-11), 1e-12)
    attempts = (
        ("CLARABEL", {"tol_gap_abs": eps, "tol_gap_rel": eps,
                      "tol_feas": eps}),
        ("CLARABEL", {"tol_gap_abs": 1e-9, "tol_gap_rel": 1e-9,
                      "tol_feas": 1e-9}),
        ("SCS", {"eps": 1e-9, "max_iters": 200000}),
    )
    import warnings
    for solver, options in attempts:
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                problem.solve(solver=solver, **options)
        except (cp.SolverError, Exception) as exc:  # noqa: BLE001
            status = f"{solver}: {exc}"
            continue
        status = problem.status
        if status == "optimal":
            break
        if status == "optimal_inaccurate" and fallback is None:
            fallback = (np.array(b_var.value), np.array(d_var.value))
    if status == "infeasible":
        raise InfeasibilityError("polytope has empty interior")
    if status != "optimal":
        if fallback is None:
            raise IterationLimitError(
                f"inscribed-ellipsoid solver failed: {status}")
        # Accept the inaccurate solve; the geometric checks downstream
        # are the authority on soundness.
        b_var.value, d_var.value = fallback
        status = "optimal_inaccurate"

    shape = np.asarray(b_var.value, dtype=float)
    shape = (shape + shape.T) / 2.0
    center = np.asarray(d_var.value, dtype=float)
    eigenvalues, basis = eigh(shape)
    if eigenvalues.min() <= 0:
        raise InfeasibilityError(
            "degenerate inscribed ellipsoid: polytope may be unbounded")
    form = basis @ np.diag(1.0 / eigenvalues ** 2) @ basis.T
    margin = float(np.max(np.linalg.norm(normals @ shape, axis=1)
                          + normals @ center - offsets))
    return InscribedEllipsoid(center=center, form=(form + form.T) / 2.0,
                              shape_matrix=shape,
                              feasibility_margin=margin,
                              solver_status=status)


def polytope_vertices(normals, offsets, interior_point) -> np.ndarray:
    """Vertex enumeration of {x : n_i . x <= c_i} via qhull."""
    normals = np.asarray(normals, dtype=float)
    offsets = np.asarray(offsets, dtype=float)
    halfspaces = np.hstack([normals, -offsets[:, None]])
    try:
        with np.errstate(divide="ignore", invalid="ignore"):
            intersection = HalfspaceIntersection(
                halfspaces, np.asarray(interior_point, dtype=float))
            vertices = intersection.intersections
    except QhullError as exc:
        raise InfeasibilityError(
            f"vertex enumeration failed (unbounded or empty): {exc}")
    if not np.isfinite(vertices).all():
        raise InfeasibilityError("polytope is unbounded")
    return vertices


def covering_factor(vertices, center, form) -> float:
    """Smallest mu with all vertices in center + mu*(E - center)."""
    diff = np.asarray(vertices, dtype=float) - np.asarray(center)
    quad = np.einsum("ij,jk,ik->i", diff, form, diff)
    return float(np.sqrt(max(quad.max(), 0.0)))


# ---------------------------------------------------------------------------
# Williamson normal form
# ---------------------------------------------------------------------------

_J4 = np.array([[0.0, 1.0, 0.0, 0.0],
                [-1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 1.0],
                [0.0, 0.0, -1.0, 0.0]])


def standard_symplectic_matrix() -> np.ndarray:
    """The pairing matrix in coordinates (x1, y1, x2, y2)."""
    return _J4.copy()


def williamson(form) -> SymplecticSpectrum:
    """Symplectic spectrum of an SPD 4x4 form.

    The eigenvalues of S^(1/2) J S^(1/2) come in pairs +-i*d with
    d1 >= d2 > 0; the ellipsoid {x^T S x <= 1} is linearly
    symplectomorphic to E(pi/d1, pi/d2).
    """
    s_matrix = np.asarray(form, dtype=float)
    if s_matrix.shape != (4, 4):
        raise ContractError("form must be 4x4")
    if not np.allclose(s_matrix, s_matrix.T, atol=1e-10):
        raise ContractError("form must be symmetric")
    eigenvalues, basis = eigh((s_matrix + s_matrix.T) / 2.0)
    if eigenvalues.min() <= 0:
        raise ContractError("form must be positive definite")
    root = basis @ np.diag(np.sqrt(eigenvalues)) @ basis.T
    skew = root @ _J4 @ root
    skew = (skew - skew.T) / 2.0
    spectrum = np.linalg.eigvals(skew)
    positive = np.sort(spectrum.imag[spectrum.imag > 1e-10])[::-1]
    if positive.size != 2:
        raise ContractError(
            "could not extract two positive symplectic eigenvalues")
    d1, d2 = positive
    return SymplecticSpectrum(a=float(math.pi / d1), b=float(math.pi / d2))


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

def john_certificate(normals, offsets, tol: float = 1e-6):
    """Sandwich a convex polytope between an inscribed ellipsoid and its
    measured dilation.

    Pipeline: inscribed-ellipsoid solve -> independent geometric
    re-verification (facet support values and vertex covering factor)
    -> Williamson normal form.  Returns (certificate, diagnostics); for
    a true maximal ellipsoid the covering factor is at most 4, giving
    dc_upper_bound <= log 2 up to solver slack.
    """
    ellipsoid = max_volume_inscribed_ellipsoid(normals, offsets, tol)
    normals_arr = np.asarray(normals, dtype=float)
    offsets_arr = np.asarray(offsets, dtype=float)

    # Independent inner-containment check: support function of E per facet.
    inv_form = np.linalg.inv(ellipsoid.form)
    support = (normals_arr @ ellipsoid.center
               + np.sqrt(np.einsum("ij,jk,ik->i", normals_arr, inv_form,
                                   normals_arr)))
    inner_slack = float(np.max(support - offsets_arr))
    scale = float(np.max(np.abs(offsets_arr))) or 1.0
    if inner_slack > 1e-7 * scale:
        raise IterationLimitError(
            "inscribed ellipsoid leaks through a facet",
            achieved=inner_slack)

    vertices = polytope_vertices(normals, offsets, ellipsoid.center)
    mu = covering_factor(vertices, ellipsoid.center, ellipsoid.form)
    mu = max(mu, 1.0)
    spectrum = williamson(ellipsoid.form)
    certificate = SandwichCertificate(
        subject="polytope",
        inner=(spectrum.a, spectrum.b),
        lam=mu,
        provenance=(
            "inner: inscribed ellipsoid in Williamson normal form",
            "outer: measured vertex covering factor about the center",
            "set dilation alpha*E(a,b) = E(alpha^2 a, alpha^2 b)",
        ))
    diagnostics = {
        "coveringFactor": mu,
        "innerSlack": inner_slack,
        "feasibilityMargin": ellipsoid.feasibility_margin,
        "solverStatus": ellipsoid.solver_status,
        "vertexCount": int(len(vertices)),
    }
    return certificate, diagnostics


def linearized_upper_bound(p) -> SandwichCertificate:
    """Distance bound for the piecewise-linear p-ball approximation.

    Chain: E(1, d/(1-d)) includes by inscription (d = 2^(-1/p)); the
    domain embeds in the polydisk P(1, 2d) (known embedding, recorded as
    cited); and P(1, 2d) sits inside the (3-2d)-dilate of the inner
    ellipsoid, hence inside the 3-dilate.  Certified factor 3 for every
    p, so the bound is log(3)/2.

    The two polygon-inclusion legs are checked exactly (rationally for
    p = 1/n).
    """
    d = _two_pow_neg_inv(p)
    if d is None or not 0 < float(d) < 0.5:
        raise ContractError(f"linearized bound needs p in (0, 1), got {p}")
    polygon = linearized_region(p)
    inner_b = d / (1 - d)

    _check_inner_triangle(polygon, d, inner_b)
    _check_polydisk_in_dilate(d, inner_b)

    return SandwichCertificate(
        subject=f"linearized pball(p={p})",
        inner=(1.0, float(inner_b)),
        lam=3.0,
        provenance=(
            "inner: inscribed ellipsoid triangle, exact polygon check",
            "outer: polydisk inside the 3-dilate, exact corner check",
        ),
        cited_legs=(
            "domain embeds in the polydisk P(1, 2^(1-1/p)):"
            " known result, not re-verified here",
        ))


def _check_inner_triangle(polygon: PolygonRegion, d, inner_b):
    """conv{(0,0),(1,0),(0,b)} inside the linearized polygon, exactly."""
    from .polygons import convex_interiors_disjoint, point_in_polygon

    triangle = ((0, 0), (1, 0), (0, inner_b))
    unit = ((0, 0), (1, 0), (0, 1))
    for vertex in triangle:
        if not point_in_polygon(vertex, unit):
            raise ContractError("inner triangle leaves the unit simplex")
    # The polygon is the unit simplex minus the notch conv{(1,0),(d,d),(0,1)};
    # containment in the polygon = disjointness from the notch interior.
    notch = ((1, 0), (d, d), (0, 1))
    if not convex_interiors_disjoint(triangle, notch):
        raise ContractError("inner triangle overlaps the cut corner")


def _check_polydisk_in_dilate(d, inner_b):
    """P(1, 2d) inside the (3-2d)-set-dilate of E(1, d/(1-d)), exactly.

    The dilate's moment triangle has intercepts scaled by (3-2d)^2; the
    far rectangle corner (1, 2d) satisfies the edge inequality with
    value 1/(3-2d) <= 1.
    """
    mu = 3 - 2 * d
    mu_sq = mu * mu
    corner_value = Fraction(1) if isinstance(d, Fraction) else 1.0
    # Edge of E(mu^2, mu^2 b): x/mu^2 + y/(mu^2 b) <= 1 at (1, 2d).
    lhs = corner_value / mu_sq + (2 * d) / (mu_sq * inner_b)
    if lhs > 1:
        raise ContractError("polydisk corner escapes the dilated ellipsoid")
    if not mu_sq <= 9:
        raise ContractError("dilate exceeds factor 3")


def inscribed_ball_log_upper_bound(p) -> float:
    """Distance upper bound from the crude sandwich B(2d) -> X -> B(1)
    with d = 2^(-1/p): the value (1/4)(1/p - 1) log 2, computed in log
    space so it exists for arbitrarily small p.

    Pairs with dc_lower_bound in the consistency check lower <= upper.
    """
    p = float(p)
    if not 0 < p < 1:
        raise ContractError(f"requires p in (0, 1), got {p}")
    return 0.25 * (1.0 / p - 1.0) * LOG2


def inscribed_ball_upper_bound(p) -> SandwichCertificate:
    """Certificate form of the crude sandwich B(2d) -> X -> B(1):
    lam = (2d)^(-1/2); requires a float-representable lam (p above
    ~1/2000), use the log variant beyond."""
    p = float(p)
    if not 0 < p < 1:
        raise ContractError(f"requires p in (0, 1), got {p}")
    d = 2.0 ** (-1.0 / p)
    if d == 0.0:
        raise NumericFailureError(
            "2^(-1/p) underflows; use inscribed_ball_log_upper_bound")
    lam = (2.0 * d) ** -0.5
    return SandwichCertificate(
        subject=f"pball(p={p})",
        inner=(2.0 * d, 2.0 * d),
        lam=max(lam, 1.0),
        provenance=(
            "inner: largest inscribed ball triangle (side 2*2^(-1/p))",
            "outer: unit ball triangle by inclusion",
        ))


def volume_ratio(p) -> float:
    """area(linearized polygon) / area(p-ball region); diverges as p -> 0."""
    p_num = float(p)
    if not 0 < p_num <= 1:
        raise ContractError(f"requires p in (0, 1], got {p}")
    if p_num == 1.0:
        return 1.0
    polygon = linearized_region(p)
    curved = pball_region(p if not isinstance(p, Fraction) else float(p))
    return float(polygon.area()) / curved.area()
