"""Exact planar polygon primitives.

All functions are arithmetic-agnostic: vertices may carry ``int``,
``fractions.Fraction`` or ``float`` coordinates, and every operation uses
only ring operations plus comparisons, so rational inputs give exact
results.  Polygons are vertex tuples in counterclockwise order.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import MalformedRegionError

Point = tuple  # (x, y)


def cross(o, a, b):
    """Twice the signed area of the triangle (o, a, b)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def signed_area2(vertices):
    """Twice the signed area (positive for counterclockwise order)."""
    total = 0
    n = len(vertices)
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        total += x0 * y1 - x1 * y0
    return total


def polygon_area(vertices):
    s = abs(signed_area2(vertices))
    return s / 2 if isinstance(s, float) else Fraction(s, 2)


def _on_segment(a, b, p):
    """p collinear with a-b and within the bounding box."""
    if cross(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segments_cross(p0, p1, q0, q1):
    """Closed-segment intersection test."""
    d1 = cross(q0, q1, p0)
    d2 = cross(q0, q1, p1)
    d3 = cross(p0, p1, q0)
    d4 = cross(p0, p1, q1)
    if ((d1 > 0) != (d2 > 0) and d1 != 0 and d2 != 0
            and (d3 > 0) != (d4 > 0) and d3 != 0 and d4 != 0):
        return True
    return (_on_segment(q0, q1, p0) or _on_segment(q0, q1, p1)
            or _on_segment(p0, p1, q0) or _on_segment(p0, p1, q1))


def validate_simple(vertices):
    """Raise MalformedRegionError if the closed chain self-intersects.

    Non-adjacent edges must be disjoint; adjacent edges may share only
    their common vertex.  O(n^2), fine at the polygon sizes used here.
    """
    n = len(vertices)
    if n < 3:
        raise MalformedRegionError("polygon needs at least 3 vertices")
    if signed_area2(vertices) == 0:
        raise MalformedRegionError("polygon has zero area")
    edges = [(vertices[i], vertices[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        a0, a1 = edges[i]
        if a0 == a1:
            raise MalformedRegionError(f"repeated vertex {a0}")
        for j in range(i + 1, n):
            b0, b1 = edges[j]
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            if adjacent:
                shared = a1 if j == i + 1 else a0
                other_a = a0 if j == i + 1 else a1
                other_b = b1 if j == i + 1 else b0
                # The edges may only meet at the shared vertex.
                if _on_segment(b0, b1, other_a) and other_a != shared:
                    raise MalformedRegionError("adjacent edges overlap")
                if _on_segment(a0, a1, other_b) and other_b != shared:
                    raise MalformedRegionError("adjacent edges overlap")
            elif segments_cross(a0, a1, b0, b1):
                raise MalformedRegionError(
                    f"edges {i} and {j} intersect: non-simple polygon")


def point_in_polygon(point, vertices):
    """Closed containment test (boundary counts as inside); exact.

    Winding-style crossing count with explicit handling of vertices and
    horizontal edges, robust for rational coordinates.
    """
    n = len(vertices)
    px, py = point
    for i in range(n):
        if _on_segment(vertices[i], vertices[(i + 1) % n], point):
            return True
    inside = False
    for i in range(n):
        (x0, y0), (x1, y1) = vertices[i], vertices[(i + 1) % n]
        if (y0 > py) != (y1 > py):
            # x-coordinate of the edge at height py, compared exactly:
            # px < x0 + (py-y0)(x1-x0)/(y1-y0), sign-safe cross-multiplied.
            t = (px - x0) * (y1 - y0) - (py - y0) * (x1 - x0)
            if y1 > y0:
                if t < 0:
                    inside = not inside
            else:
                if t > 0:
                    inside = not inside
    return inside


def apply_affine_to_vertices(vertices, matrix, translation=(0, 0)):
    (m00, m01), (m10, m11) = matrix
    tx, ty = translation
    return tuple((m00 * x + m01 * y + tx, m10 * x + m11 * y + ty)
                 for x, y in vertices)


def _projection_range(vertices, axis):
    values = [axis[0] * x + axis[1] * y for x, y in vertices]
    return min(values), max(values)


def convex_interiors_disjoint(poly_a, poly_b):
    """Separating-axis test: True iff the convex polygons have disjoint
    interiors (touching along boundaries allowed).  Exact."""
    for poly in (poly_a, poly_b):
        n = len(poly)
        for i in range(n):
            x0, y0 = poly[i]
            x1, y1 = poly[(i + 1) % n]
            axis = (y1 - y0, x0 - x1)  # outward/inward normal, either is fine
            lo_a, hi_a = _projection_range(poly_a, axis)
            lo_b, hi_b = _projection_range(poly_b, axis)
            if hi_a <= lo_b or hi_b <= lo_a:
                return True
    return False


def is_convex(vertices):
    n = len(vertices)
    sign = 0
    for i in range(n):
        c = cross(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n])
        if c != 0:
            if sign == 0:
                sign = 1 if c > 0 else -1
            elif (c > 0) != (sign > 0):
                return False
    return True


def convex_contains_polygon(outer, inner):
    """True iff convex `outer` contains `inner` (any simple polygon)."""
    return all(point_in_polygon(v, outer) for v in inner)


def ray_intersection_parameters(vertices, direction):
    """Parameters t >= 0 where the ray t*direction meets the boundary.

    Returns a sorted list of exact parameters (Fractions for rational
    input).  Used by the star-shapedness check.
    """
    dx, dy = direction
    params = set()
    n = len(vertices)
    for i in range(n):
        (x0, y0), (x1, y1) = vertices[i], vertices[(i + 1) % n]
        ex, ey = x1 - x0, y1 - y0
        denom = dx * ey - dy * ex
        if denom == 0:
            # Parallel: collinear edges contribute their endpoints.
            if x0 * dy - y0 * dx == 0:
                for (vx, vy) in ((x0, y0), (x1, y1)):
                    t = _param_on_ray(vx, vy, dx, dy)
                    if t is not None:
                        params.add(t)
            continue
        # Solve t*d = v0 + u*e with u in [0, 1]: cross with d gives
        # u*(d x e) = v0 x d.
        u = _exact_div(x0 * dy - y0 * dx, denom)
        if not (0 <= u <= 1):
            continue
        px = x0 + u * ex
        py = y0 + u * ey
        t = _param_on_ray(px, py, dx, dy)
        if t is not None:
            params.add(t)
    return sorted(params)


def _exact_div(a, b):
    if isinstance(a, float) or isinstance(b, float):
        return a / b
    return Fraction(a, b)


def _param_on_ray(px, py, dx, dy):
    if dx != 0:
        t = _exact_div(px, dx)
    elif dy != 0:
        t = _exact_div(py, dy)
    else:
        return None
    if t < 0:
        return None
    # Reject points not actually on the ray (anti-parallel solutions).
    if px * dy - py * dx != 0 or (px * dx + py * dy) < 0:
        return None
    return t


def star_shaped_from_origin(vertices, direction):
    """True iff the polygon meets the ray {t*direction : t >= 0} in a
    single segment containing the origin."""
    if not point_in_polygon((0, 0), vertices):
        return False
    params = ray_intersection_parameters(vertices, direction)
    if not params:
        return True
    checkpoints = [params[0] / 2] if params[0] > 0 else []
    for lo, hi in zip(params, params[1:]):
        checkpoints.append(lo + (hi - lo) / 2)
    dx, dy = direction
    seen_outside = False
    for t in checkpoints:
        inside = point_in_polygon((t * dx, t * dy), vertices)
        if seen_outside and inside:
            return False
        if not inside:
            seen_outside = True
    return True
