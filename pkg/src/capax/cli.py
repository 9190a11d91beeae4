"""Command-line front end.

Deterministic reports: JSON with sorted keys (or CSV for sweeps),
byte-identical across repeated invocations of the same command.  Exit
codes: 0 success, 2 contract violation, 3 numeric failure, 4
verification failure.  Rational parameters are passed as "num/den"
strings (decimals are also parsed exactly).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import acceptance
from .constructions import (StrangulationParams, strain_domain,
                            strangulated_ball, strangulation_ball_fits_lobe,
                            strangulation_chain_bound, triangle_packing_witness,
                            truncated_ellipsoid_data)
from .distance import dc_lower_bound, john_certificate, linearized_upper_bound
from .ech import ech_concave_toric, ech_ellipsoid
from .errors import (CapaxError, CertificateInvalidError, ContractError,
                     InfeasibilityError, IterationLimitError,
                     MalformedRegionError, NumericFailureError,
                     UnsupportedKindError)
from .moment import (PolygonRegion, pball_region, region_from_json,
                     region_to_json)
from .scalars import (KNOWN_SUFFICIENT_K, condition_holds, g_reciprocal_exact,
                      log_g, minimal_threshold_k)
from .weights import WeightBudget, weight_decomposition

_CONTRACT_ERRORS = (ContractError, MalformedRegionError, UnsupportedKindError,
                    InfeasibilityError)
_NUMERIC_ERRORS = (NumericFailureError, IterationLimitError)
_VERIFICATION_ERRORS = (CertificateInvalidError,)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ContractError(f"cannot parse rational {text!r}: {exc}")


def _emit(args, payload: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w") as handle:
            handle.write(payload)
    else:
        sys.stdout.write(payload)


def _emit_json(args, obj) -> None:
    _emit(args, json.dumps(obj, sort_keys=True) + "\n")


def _load_region(args):
    given = [name for name in ("region", "pball", "ellipsoid", "ball")
             if getattr(args, name, None) is not None]
    if len(given) != 1:
        raise ContractError(
            "exactly one of --region/--pball/--ellipsoid/--ball is required")
    if args.region is not None:
        with open(args.region) as handle:
            return region_from_json(json.load(handle))
    if args.pball is not None:
        return pball_region(_rational(args.pball))
    if args.ellipsoid is not None:
        parts = args.ellipsoid.split(",")
        if len(parts) != 2:
            raise ContractError("--ellipsoid wants 'a,b'")
        from .moment import ellipsoid_region
        return ellipsoid_region(_rational(parts[0]), _rational(parts[1]))
    from .moment import ball_region
    return ball_region(_rational(args.ball))


# ---------------------------------------------------------------------------
# Command handlers
# ---------------------------------------------------------------------------

def _cmd_g(args) -> int:
    p = _rational(args.p)
    magnitude = log_g(p)
    out = {"p": str(p), "logG": magnitude.log_value}
    value = None
    try:
        value = magnitude.value
    except OverflowError:
        pass
    out["g"] = value
    if p.numerator == 1 and p.denominator <= 32:
        exact = g_reciprocal_exact(p.denominator)
        out["gExact"] = f"{exact.numerator}/{exact.denominator}"
    _emit_json(args, out)
    return 0


def _cmd_threshold(args) -> int:
    k_star = minimal_threshold_k()
    _emit_json(args, {"kStar": k_star,
                      "knownSufficientK": KNOWN_SUFFICIENT_K,
                      "kStarLeqKnown": k_star <= KNOWN_SUFFICIENT_K})
    return 0


def _cmd_capacity(args) -> int:
    region = _load_region(args)
    from .ech import _triangle_legs
    legs = _triangle_legs(region) if isinstance(region, PolygonRegion) else None
    if legs is not None:
        seq = ech_ellipsoid(legs[0], legs[1], args.kmax)
        out = {"capacities": [float(v) for v in seq.values],
               "kmax": seq.kmax, "truncationBound": 0.0}
    else:
        budget = WeightBudget(max_count=args.budget or max(args.kmax, 1))
        result = ech_concave_toric(region, args.kmax, budget)
        out = result.to_json()
    _emit_json(args, out)
    return 0


def _cmd_weights(args) -> int:
    region = _load_region(args)
    budget = WeightBudget(max_count=args.max_count,
                          min_weight=args.min_weight)
    _emit_json(args, weight_decomposition(region, budget).to_json())
    return 0


def _cmd_dc_bound(args) -> int:
    p = _rational(args.p)
    report = dc_lower_bound(p)
    out = report.to_json()
    out["p"] = str(p)
    out["logG"] = log_g(p).log_value
    _emit_json(args, out)
    return 0


def _cmd_john(args) -> int:
    with open(args.polytope) as handle:
        data = json.load(handle)
    certificate, diagnostics = john_certificate(
        data["normals"], data["offsets"], tol=args.tolerance)
    _emit_json(args, {"certificate": certificate.to_json(),
                      "diagnostics": diagnostics})
    return 0


def _cmd_linearized(args) -> int:
    certificate = linearized_upper_bound(_rational(args.p))
    _emit_json(args, certificate.to_json())
    return 0


def _cmd_construct(args) -> int:
    if args.what == "strangulation":
        params = StrangulationParams(_rational(args.delta),
                                     _rational(args.eps_factor))
        region = strangulated_ball(params)
        data = truncated_ellipsoid_data(params)
        bound = strangulation_chain_bound(params)
        _emit_json(args, {"region": region_to_json(region),
                          "truncation": data.to_json(),
                          "chainBound": bound.to_json(),
                          "innerBallFitsLobe":
                              strangulation_ball_fits_lobe(params)})
        return 0
    if args.what == "strain":
        region = strain_domain(args.k)
        ws = weight_decomposition(region, WeightBudget(max_count=500))
        area = region.area()
        _emit_json(args, {"region": region_to_json(region),
                          "area": [area.numerator, area.denominator],
                          "weights": ws.to_json()})
        return 0
    certificate = triangle_packing_witness()
    _emit_json(args, certificate.to_json())
    return 0


def _sweep_row(p: Fraction) -> dict:
    row = {"p": str(p), "logG": log_g(p).log_value,
           "conditionRatioLog": None, "conditionHolds": None,
           "dcLowerBound": None, "notSymplecticallyConvex": None}
    if 0 < p < Fraction(1, 5):
        report = condition_holds(p)
        bound = dc_lower_bound(p)
        row.update({"conditionRatioLog": report.ratio_log,
                    "conditionHolds": report.holds,
                    "dcLowerBound": bound.lower_bound,
                    "notSymplecticallyConvex":
                        bound.not_symplectically_convex})
    return row


_SWEEP_COLUMNS = ("p", "logG", "conditionRatioLog", "conditionHolds",
                  "dcLowerBound", "notSymplecticallyConvex")


def _cmd_sweep(args) -> int:
    values = [_rational(part) for part in args.p_list.split(",") if part]
    if not values:
        raise ContractError("--p-list is empty")
    threads = args.threads or int(os.environ.get("CAPAX_THREADS", 0)) \
        or (os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        rows = list(pool.map(_sweep_row, values))
    if args.format == "csv":
        lines = [",".join(_SWEEP_COLUMNS)]
        for row in rows:
            lines.append(",".join("" if row[c] is None else str(row[c])
                                  for c in _SWEEP_COLUMNS))
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit_json(args, {"rows": rows})
    return 0


def _cmd_verify_all(args) -> int:
    numbers = None
    if args.only:
        numbers = {int(part) for part in args.only.split(",") if part}
    results = acceptance.run_all(numbers=numbers, verbose=True)
    if args.output:
        payload = [{"number": r.number, "name": r.name, "passed": r.passed,
                    "expectedFailure": r.expected_failure} for r in results]
        with open(args.output, "w") as handle:
            json.dump(payload, handle, sort_keys=True)
            handle.write("\n")
    hard_failures = [r for r in results if not r.passed
                     and not r.expected_failure]
    soft_failures = [r for r in results if not r.passed and r.expected_failure]
    if hard_failures:
        return 4
    if soft_failures and args.strict:
        return 4
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="capax",
        description="Symplectic-capacity data for 4-dimensional toric "
                    "domains: capacities, weights, distance bounds, and "
                    "the verification battery.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p):
        p.add_argument("--output", help="write the report to this file "
                                        "instead of stdout")

    p_g = sub.add_parser("g", help="log-space invariant g(p)")
    p_g.add_argument("--p", required=True, help="rational like 1/5")
    add_output(p_g)
    p_g.set_defaults(func=_cmd_g)

    p_thr = sub.add_parser("threshold",
                           help="smallest k with the capacity-ratio "
                                "condition at p = 1/k")
    add_output(p_thr)
    p_thr.set_defaults(func=_cmd_threshold)

    def add_region_options(p):
        p.add_argument("--region", help="JSON region file")
        p.add_argument("--pball", help="p exponent (rational) for the p-ball")
        p.add_argument("--ellipsoid", help="'a,b' rational ellipsoid axes")
        p.add_argument("--ball", help="rational ball size")

    p_cap = sub.add_parser("capacity", help="ECH capacity sequence")
    add_region_options(p_cap)
    p_cap.add_argument("--kmax", type=int, default=20,
                       help="largest capacity index (default 20)")
    p_cap.add_argument("--budget", type=int, default=None,
                       help="weight budget for concave regions "
                            "(default: kmax)")
    add_output(p_cap)
    p_cap.set_defaults(func=_cmd_capacity)

    p_w = sub.add_parser("weights", help="ball-weight decomposition")
    add_region_options(p_w)
    p_w.add_argument("--max-count", type=int, default=100,
                     help="maximum number of weights (default 100)")
    p_w.add_argument("--min-weight", type=float, default=0.0,
                     help="drop weights below this size (default 0)")
    add_output(p_w)
    p_w.set_defaults(func=_cmd_weights)

    p_dc = sub.add_parser("dc-bound",
                          help="certified distance lower bound for the "
                               "p-ball domain (p < 1/5)")
    p_dc.add_argument("--p", required=True)
    add_output(p_dc)
    p_dc.set_defaults(func=_cmd_dc_bound)

    p_john = sub.add_parser("john",
                            help="inscribed-ellipsoid distance certificate "
                                 "for a polytope")
    p_john.add_argument("--polytope", required=True,
                        help="JSON file with 'normals' (m x 4) and 'offsets'")
    p_john.add_argument("--tolerance", type=float, default=1e-6,
                        help="solver tolerance (default 1e-6)")
    add_output(p_john)
    p_john.set_defaults(func=_cmd_john)

    p_lin = sub.add_parser("linearized",
                           help="factor-3 sandwich for the linearized p-ball")
    p_lin.add_argument("--p", required=True)
    add_output(p_lin)
    p_lin.set_defaults(func=_cmd_linearized)

    p_con = sub.add_parser("construct",
                           help="ball surgeries and the packing witness")
    p_con.add_argument("what", choices=("strangulation", "strain", "packing"))
    p_con.add_argument("--delta", default="1/1000",
                       help="strangulation depth (default 1/1000)")
    p_con.add_argument("--eps-factor", default="1",
                       help="eps(delta)/delta proportionality (default 1)")
    p_con.add_argument("--k", type=int, default=99,
                       help="strain tail extent (default 99)")
    add_output(p_con)
    p_con.set_defaults(func=_cmd_construct)

    p_sw = sub.add_parser("sweep", help="tabulate invariants over a p grid")
    p_sw.add_argument("--p-list", required=True,
                      help="comma-separated rationals, e.g. 1/5,1/6,1/8")
    p_sw.add_argument("--format", choices=("json", "csv"), default="json")
    p_sw.add_argument("--threads", type=int, default=None,
                      help="parallelism (default: CAPAX_THREADS or cores)")
    add_output(p_sw)
    p_sw.set_defaults(func=_cmd_sweep)

    p_va = sub.add_parser("verify-all", help="run the acceptance battery")
    p_va.add_argument("--only", help="comma-separated criterion numbers")
    p_va.add_argument("--strict", action="store_true",
                      help="count the known-unattainable criterion as a "
                           "failure")
    add_output(p_va)
    p_va.set_defaults(func=_cmd_verify_all)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _VERIFICATION_ERRORS as exc:
        _error_json(exc)
        return 4
    except _NUMERIC_ERRORS as exc:
        _error_json(exc)
        return 3
    except _CONTRACT_ERRORS as exc:
        _error_json(exc)
        return 2
    except CapaxError as exc:
        _error_json(exc)
        return 2
    except FileNotFoundError as exc:
        _error_json(exc)
        return 2


def _error_json(exc) -> None:
    sys.stderr.write(json.dumps(
        {"error": type(exc).__name__, "message": str(exc)},
        sort_keys=True) + "\n")


if __name__ == "__main__":
    sys.exit(main())
