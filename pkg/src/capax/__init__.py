"""capax: symplectic-capacity data for 4-dimensional toric domains.

Subpackages by topic: `moment` (regions, areas, affine maps), `weights`
(ball weights of concave domains), `ech` (capacity sequences and
embedding obstructions), `scalars` (log-space invariants and the
non-convexity threshold), `distance` (coarse-distance bounds,
Williamson normal form, inscribed ellipsoids), `constructions` (ball
surgeries and the exact 199-triangle packing witness).
"""

from .constructions import (PackingCertificate, StrangulationParams,
                            TruncatedEllipsoidData, c_ce, contact_volume_of,
                            min_period_ellipsoid, strain_domain, strain_toric,
                            strangulated_ball, strangulated_halves,
                            strangulation_chain_bound, strangulation_limit_table,
                            triangle_packing_witness)
from .distance import (DistanceBoundReport, SandwichCertificate,
                       SymplecticSpectrum, covering_factor, dc_lower_bound,
                       envelope_bound, inscribed_ball_log_upper_bound,
                       inscribed_ball_upper_bound, john_certificate,
                       linearized_upper_bound, max_volume_inscribed_ellipsoid,
                       polytope_vertices, rescale_ellipsoid, volume_ratio,
                       williamson)
from .ech import (CapacitySequence, ConcaveCapacities, HutchingsBoundCheck,
                  ObstructionReport, ball_sequence, domain_capacities,
                  ech_concave_toric, ech_ellipsoid, ech_union, hutchings_bound,
                  packing_obstruction)
from .errors import (CapaxError, CertificateInvalidError,
                     ConcavityViolationError, ContractError,
                     InfeasibilityError, IterationLimitError,
                     MalformedRegionError, NumericFailureError,
                     UnsupportedKindError)
from .moment import (AffineUnimodular, MomentRegion, PBallRegion, Point2,
                     PolygonRegion, ToricDomain, TruncatedPBallRegion, area,
                     apply_affine, ball, ball_region, ellipsoid,
                     ellipsoid_region, is_star_shaped, linearized_region,
                     pball_area_closed_form, pball_region, polydisk_region,
                     region_from_json, region_to_json,
                     scaled_tangent_intercept, tangent_intercept,
                     truncated_region)
from .scalars import (KNOWN_SUFFICIENT_K, ConditionReport, LogMagnitude,
                      condition_holds, g_recursion_check, g_reciprocal_exact,
                      log_g, log_g_reciprocal, minimal_threshold_k)
from .weights import WeightBudget, WeightSequence, weight_decomposition

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
