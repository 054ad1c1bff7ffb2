"""Primitives for the three constant-curvature planes on one embedding.

Points live in R^3: the Euclidean plane is the slice z = 1, the sphere is
the unit sphere, and the hyperbolic plane is the upper hyperboloid sheet
z^2 - x^2 - y^2 = 1.  Geodesics, circles, angles and the law of cosines
share a single code path switched on the curvature sign; the curvature
magnitude is fixed to |kappa| = 1 (other curvatures are length rescalings).

Conventions used throughout the package:

* a Tangent is a unit tangent vector at the base point it is used with
  (Euclidean: z = 0; sphere: euclidean-orthogonal to the point;
  hyperboloid: Minkowski-orthogonal to the point);
* `orient(a, b, z) > 0` means z lies on the left of the oriented geodesic
  a -> b, in every geometry (it is the 3x3 determinant of the embeddings);
* `perp` rotates a tangent by +90 degrees, counterclockwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

NORM_EPS = 1e-12    # normalization residual bound for embedded points
GEOM_EPS = 1e-10    # tolerance for geometric predicates
ANGLE_EPS = 1e-9    # angular tolerance for cone / arc-span tests
MERGE_EPS = 10 * GEOM_EPS  # boundary vertices closer than this are merged


class SpindleError(ValueError):
    """Domain error carrying a stable machine-readable code."""

    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(f"{code}: {message}")


class Point(NamedTuple):
    """Embedded point of the model surface."""

    x: float
    y: float
    z: float


class Tangent(NamedTuple):
    """Unit tangent vector; valid only at the base point it was built at."""

    x: float
    y: float
    z: float


@dataclass(frozen=True)
class Geometry:
    """One of the three model planes, identified by curvature sign."""

    kappa: int
    name: str

    @property
    def radius_limit(self) -> float:
        # Spherical disks must stay inside an open hemisphere to be convex.
        return math.pi / 2 if self.kappa > 0 else math.inf

    def check_radius(self, r: float, what: str = "r") -> None:
        if not (r > 0.0) or not math.isfinite(r):
            raise SpindleError("BAD_RANGE", f"{what} must be positive, got {r}")
        if r >= self.radius_limit:
            raise SpindleError(
                "BAD_RANGE", f"{what} must be below pi/2 on the sphere, got {r}"
            )

    def __repr__(self) -> str:  # keeps records and error text short
        return f"Geometry({self.name})"


EUCLIDEAN = Geometry(0, "euclidean")
HYPERBOLIC = Geometry(-1, "hyperbolic")
SPHERICAL = Geometry(+1, "spherical")
GEOMETRIES = {g.name: g for g in (EUCLIDEAN, HYPERBOLIC, SPHERICAL)}


class Circle(NamedTuple):
    """Geodesic circle: points at geodesic distance `radius` from `center`."""

    center: Point
    radius: float


# --------------------------------------------------------------------------
# basic vector helpers (plain floats; the kernel avoids numpy on purpose,
# 3-vectors are too small for array overhead to pay off)

def _dot3(a, b) -> float:
    return a.x * b.x + a.y * b.y + a.z * b.z


def _mdot(a, b) -> float:
    # Minkowski form with signature (+, +, -)
    return a.x * b.x + a.y * b.y - a.z * b.z


def det3(a, b, c) -> float:
    """Determinant of the 3x3 matrix with rows a, b, c."""
    return (
        a.x * (b.y * c.z - b.z * c.y)
        - a.y * (b.x * c.z - b.z * c.x)
        + a.z * (b.x * c.y - b.y * c.x)
    )


def orient(a: Point, b: Point, z: Point) -> float:
    """Positive when z is on the left of the oriented geodesic a -> b."""
    return det3(a, b, z)


def _normalize_point(g: Geometry, x: float, y: float, z: float) -> Point:
    if g.kappa == 0:
        if abs(z - 1.0) > 1e-9:
            raise SpindleError("BAD_RANGE", f"euclidean points need z = 1, got {z}")
        return Point(x, y, 1.0)
    if g.kappa > 0:
        n = math.sqrt(x * x + y * y + z * z)
        if n < 1e-14:
            raise SpindleError("BAD_RANGE", "cannot normalize the zero vector")
        return Point(x / n, y / n, z / n)
    q = z * z - x * x - y * y
    if q <= 0.0 or z <= 0.0:
        raise SpindleError("BAD_RANGE", "not a point of the upper hyperboloid sheet")
    n = math.sqrt(q)
    return Point(x / n, y / n, z / n)


def origin(g: Geometry) -> Point:
    """Base point of the chart: (0, 0, 1) in every model."""
    return Point(0.0, 0.0, 1.0)


def embed(g: Geometry, x: float, y: float) -> Point:
    """Lift chart coordinates onto the model surface.

    Euclidean: (x, y, 1).  Hyperbolic: z = sqrt(1 + x^2 + y^2).
    Spherical: z = sqrt(1 - x^2 - y^2), so x^2 + y^2 must stay below 1.
    """
    if g.kappa == 0:
        return Point(x, y, 1.0)
    if g.kappa < 0:
        return Point(x, y, math.sqrt(1.0 + x * x + y * y))
    s = 1.0 - x * x - y * y
    if s <= 0.0:
        raise SpindleError("BAD_RANGE", "spherical chart needs x^2 + y^2 < 1")
    return Point(x, y, math.sqrt(s))


def surface_residual(p: Point, g: Geometry) -> float:
    """How far p sits from the model surface (relative for curved models)."""
    if g.kappa == 0:
        return abs(p.z - 1.0)
    if g.kappa > 0:
        return abs(_dot3(p, p) - 1.0)
    scale = max(1.0, p.x * p.x + p.y * p.y + p.z * p.z)
    return abs(p.z * p.z - p.x * p.x - p.y * p.y - 1.0) / scale


# --------------------------------------------------------------------------
# metric

def distance(p: Point, q: Point, g: Geometry) -> float:
    """Geodesic distance.  Raises ANTIPODAL for opposite spherical points."""
    if g.kappa == 0:
        return math.hypot(q.x - p.x, q.y - p.y)
    if g.kappa > 0:
        dot = _dot3(p, q)
        if dot <= -1.0 + 1e-12:
            raise SpindleError("ANTIPODAL", "antipodal points have no unique geodesic")
        # chordal forms are stable near 0 and near pi
        if dot >= 0.0:
            dx, dy, dz = q.x - p.x, q.y - p.y, q.z - p.z
            h = 0.5 * math.sqrt(dx * dx + dy * dy + dz * dz)
            return 2.0 * math.asin(min(1.0, h))
        sx, sy, sz = q.x + p.x, q.y + p.y, q.z + p.z
        h = 0.5 * math.sqrt(sx * sx + sy * sy + sz * sz)
        return math.pi - 2.0 * math.asin(min(1.0, h))
    dx, dy, dz = q.x - p.x, q.y - p.y, q.z - p.z
    q2 = dx * dx + dy * dy - dz * dz  # equals 4 sinh^2(d/2)
    return 2.0 * math.asinh(0.5 * math.sqrt(max(q2, 0.0)))


def _check_tangent(p: Point, u: Tangent, g: Geometry) -> None:
    if g.kappa == 0:
        unit = u.x * u.x + u.y * u.y
        ortho = abs(u.z)
    elif g.kappa > 0:
        unit = _dot3(u, u)
        ortho = abs(_dot3(p, u))
    else:
        unit = _mdot(u, u)
        ortho = abs(_mdot(p, u))
    if abs(unit - 1.0) > 1e-9 or ortho > 1e-9:
        raise SpindleError("BAD_TANGENT", "direction is not a unit tangent at p")


def _normalize_tangent(p: Point, ux: float, uy: float, uz: float, g: Geometry) -> Tangent:
    # project defensively onto the tangent plane, then rescale to unit length
    if g.kappa == 0:
        n = math.hypot(ux, uy)
        if n < 1e-14:
            raise SpindleError("DEGENERATE", "zero tangent vector")
        return Tangent(ux / n, uy / n, 0.0)
    if g.kappa > 0:
        d = ux * p.x + uy * p.y + uz * p.z
        ux, uy, uz = ux - d * p.x, uy - d * p.y, uz - d * p.z
        n = math.sqrt(ux * ux + uy * uy + uz * uz)
    else:
        d = ux * p.x + uy * p.y - uz * p.z
        ux, uy, uz = ux + d * p.x, uy + d * p.y, uz + d * p.z
        n = math.sqrt(max(ux * ux + uy * uy - uz * uz, 0.0))
    if n < 1e-14:
        raise SpindleError("DEGENERATE", "zero tangent vector")
    return Tangent(ux / n, uy / n, uz / n)


def exp_map(p: Point, u: Tangent, t: float, g: Geometry) -> Point:
    """Walk distance t from p along the geodesic with initial direction u."""
    _check_tangent(p, u, g)
    if t < 0.0 or not math.isfinite(t):
        raise SpindleError("BAD_RANGE", f"exp_map needs t >= 0, got {t}")
    if g.kappa == 0:
        return Point(p.x + t * u.x, p.y + t * u.y, 1.0)
    if g.kappa > 0:
        if t >= math.pi:
            raise SpindleError("BAD_RANGE", "spherical exp_map needs t < pi")
        c, s = math.cos(t), math.sin(t)
    else:
        c, s = math.cosh(t), math.sinh(t)
    return _normalize_point(g, c * p.x + s * u.x, c * p.y + s * u.y, c * p.z + s * u.z)


def log_dir(p: Point, q: Point, g: Geometry) -> Tangent:
    """Initial unit direction of the geodesic from p to q."""
    d = distance(p, q, g)
    if d < 1e-12:
        raise SpindleError("DEGENERATE", "no direction between coincident points")
    if g.kappa == 0:
        return Tangent((q.x - p.x) / d, (q.y - p.y) / d, 0.0)
    c = math.cos(d) if g.kappa > 0 else math.cosh(d)
    return _normalize_tangent(p, q.x - c * p.x, q.y - c * p.y, q.z - c * p.z, g)


def perp(p: Point, u: Tangent, g: Geometry) -> Tangent:
    """Tangent u rotated by +90 degrees (counterclockwise) at p."""
    if g.kappa == 0:
        return Tangent(-u.y, u.x, 0.0)
    if g.kappa > 0:
        return Tangent(
            p.y * u.z - p.z * u.y,
            p.z * u.x - p.x * u.z,
            p.x * u.y - p.y * u.x,
        )
    # Lorentz cross product: <p x u, w> = det(p, u, w) for the (+,+,-) form
    return Tangent(
        p.y * u.z - p.z * u.y,
        p.z * u.x - p.x * u.z,
        p.y * u.x - p.x * u.y,
    )


def rotate_tangent(p: Point, u: Tangent, alpha: float, g: Geometry) -> Tangent:
    c, s = math.cos(alpha), math.sin(alpha)
    v = perp(p, u, g)
    return _normalize_tangent(
        p, c * u.x + s * v.x, c * u.y + s * v.y, c * u.z + s * v.z, g
    )


def tangent_dot(u: Tangent, v: Tangent, g: Geometry) -> float:
    return _mdot(u, v) if g.kappa < 0 else _dot3(u, v)


def tangent_basis(p: Point, g: Geometry) -> tuple[Tangent, Tangent]:
    """Deterministic orthonormal tangent frame at p (t2 = perp of t1)."""
    if g.kappa == 0:
        return Tangent(1.0, 0.0, 0.0), Tangent(0.0, 1.0, 0.0)
    seed = Point(0.0, 0.0, 1.0) if abs(p.z) < 0.9 or g.kappa < 0 else Point(1.0, 0.0, 0.0)
    if g.kappa < 0 and abs(p.x) < 1e-9 and abs(p.y) < 1e-9:
        seed = Point(1.0, 0.0, 0.0)
    t1 = _normalize_tangent(p, seed.x, seed.y, seed.z, g)
    return t1, perp(p, t1, g)


def tangent_from_angle(p: Point, theta: float, g: Geometry) -> Tangent:
    t1, t2 = tangent_basis(p, g)
    c, s = math.cos(theta), math.sin(theta)
    return _normalize_tangent(
        p, c * t1.x + s * t2.x, c * t1.y + s * t2.y, c * t1.z + s * t2.z, g
    )


def from_polar(g: Geometry, theta: float, t: float) -> Point:
    """Point at distance t from the chart origin, direction angle theta."""
    if t == 0.0:
        return origin(g)
    return exp_map(origin(g), tangent_from_angle(origin(g), theta, g), t, g)


def angle_coord(o: Point, x: Point, g: Geometry) -> float:
    """Angle of the direction o -> x in the frame at o, in [0, 2*pi)."""
    u = log_dir(o, x, g)
    t1, t2 = tangent_basis(o, g)
    a = math.atan2(tangent_dot(u, t2, g), tangent_dot(u, t1, g))
    return a % (2.0 * math.pi)


def angle_at(a: Point, b: Point, c: Point, g: Geometry) -> float:
    """Interior angle at b of the geodesic wedge a-b-c, in [0, pi]."""
    u = log_dir(b, a, g)
    v = log_dir(b, c, g)
    return math.atan2(abs(det3(b, u, v)), tangent_dot(u, v, g))


def midpoint(p: Point, q: Point, g: Geometry) -> Point:
    d = distance(p, q, g)
    if d < 1e-12:
        return p
    return exp_map(p, log_dir(p, q, g), 0.5 * d, g)


# --------------------------------------------------------------------------
# law of cosines and circles

def side_from_cosine_law(b: float, c: float, alpha: float, g: Geometry) -> float:
    """Side opposite the angle alpha enclosed by sides b and c.

    Uses half-angle forms, so tiny sides lose no precision
    (hyperbolic b = c = 1e-4, alpha = pi/3 comes out to 1e-4 within 1e-10).
    """
    if b <= 0.0 or c <= 0.0:
        raise SpindleError("BAD_RANGE", "sides must be positive")
    if not (0.0 < alpha < math.pi):
        raise SpindleError("BAD_RANGE", "angle must lie strictly between 0 and pi")
    if g.kappa > 0 and (b >= math.pi / 2 or c >= math.pi / 2):
        raise SpindleError("BAD_RANGE", "spherical sides must stay below pi/2")
    sh = math.sin(0.5 * alpha)
    if g.kappa == 0:
        return math.sqrt((b - c) ** 2 + 4.0 * b * c * sh * sh)
    if g.kappa < 0:
        half = math.sinh(0.5 * (b - c))
        d2 = 2.0 * half * half + 2.0 * math.sinh(b) * math.sinh(c) * sh * sh
        return 2.0 * math.asinh(math.sqrt(0.5 * d2))
    half = math.sin(0.5 * (b - c))
    s2 = half * half + math.sin(b) * math.sin(c) * sh * sh
    if s2 > 1.0 + 1e-12:
        raise SpindleError("OUT_OF_RANGE", "no spherical triangle with these data")
    s2 = min(s2, 1.0)
    if s2 <= 0.5:
        return 2.0 * math.asin(math.sqrt(s2))
    return math.acos(max(-1.0, 1.0 - 2.0 * s2))


def circle_circle_intersection(
    c1: Circle, c2: Circle, g: Geometry
) -> tuple[Point, ...]:
    """Intersection points of two geodesic circles.

    Returns (), a single tangency point, or two points ordered (left, right)
    of the oriented geodesic c1.center -> c2.center.  COINCIDENT circles are
    an error; concentric distinct circles return ().
    """
    r1, r2 = c1.radius, c2.radius
    g.check_radius(r1)
    g.check_radius(r2)
    d = distance(c1.center, c2.center, g)
    if d <= 1e-12:
        if abs(r1 - r2) <= 1e-12:
            raise SpindleError("COINCIDENT", "the circles coincide")
        return ()
    if g.kappa == 0:
        num = d * d + r1 * r1 - r2 * r2
        den = 2.0 * d * r1
    elif g.kappa > 0:
        num = (math.cos(r2) - math.cos(r1)) + math.cos(r1) * 2.0 * math.sin(0.5 * d) ** 2
        den = math.sin(r1) * math.sin(d)
    else:
        num = (math.cosh(r1) - math.cosh(r2)) + math.cosh(r1) * 2.0 * math.sinh(0.5 * d) ** 2
        den = math.sinh(r1) * math.sinh(d)
    cosb = num / den
    if abs(cosb) > 1.0 + 1e-9:
        return ()
    cosb = max(-1.0, min(1.0, cosb))
    u = log_dir(c1.center, c2.center, g)
    if 1.0 - abs(cosb) <= 1e-12:
        beta = 0.0 if cosb > 0 else math.pi
        return (exp_map(c1.center, rotate_tangent(c1.center, u, beta, g), r1, g),)
    beta = math.acos(cosb)
    left = exp_map(c1.center, rotate_tangent(c1.center, u, beta, g), r1, g)
    right = exp_map(c1.center, rotate_tangent(c1.center, u, -beta, g), r1, g)
    return (left, right)


def circumcenter(a: Point, b: Point, c: Point, g: Geometry) -> Optional[tuple[Point, float]]:
    """Center and radius of the circle through three points, or None.

    None means the points are too close to geodesically collinear (in the
    hyperbolic plane that includes triples whose equidistant locus is not
    a proper circle).
    """
    if g.kappa == 0:
        d = 2.0 * (
            a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y)
        )
        if abs(d) < 1e-13:
            return None
        aa = a.x * a.x + a.y * a.y
        bb = b.x * b.x + b.y * b.y
        cc = c.x * c.x + c.y * c.y
        ux = (aa * (b.y - c.y) + bb * (c.y - a.y) + cc * (a.y - b.y)) / d
        uy = (aa * (c.x - b.x) + bb * (a.x - c.x) + cc * (b.x - a.x)) / d
        center = Point(ux, uy, 1.0)
        return center, distance(center, a, g)
    u = Point(a.x - b.x, a.y - b.y, a.z - b.z)
    v = Point(b.x - c.x, b.y - c.y, b.z - c.z)
    if g.kappa > 0:
        n = Point(
            u.y * v.z - u.z * v.y,
            u.z * v.x - u.x * v.z,
            u.x * v.y - u.y * v.x,
        )
        nn = math.sqrt(_dot3(n, n))
        if nn < 1e-13:
            return None
        center = Point(n.x / nn, n.y / nn, n.z / nn)
        if _dot3(center, a) < 0.0:
            center = Point(-center.x, -center.y, -center.z)
        return center, distance(center, a, g)
    n = Point(
        u.y * v.z - u.z * v.y,
        u.z * v.x - u.x * v.z,
        u.y * v.x - u.x * v.y,
    )
    q = n.z * n.z - n.x * n.x - n.y * n.y
    if q < 1e-13 * (n.x * n.x + n.y * n.y + n.z * n.z):
        return None  # equidistant locus is not a compact circle
    s = math.sqrt(q)
    center = Point(n.x / s, n.y / s, n.z / s)
    if center.z < 0.0:
        center = Point(-center.x, -center.y, -center.z)
    return center, distance(center, a, g)


def smallest_enclosing_disk(
    points: Sequence[Point], g: Geometry
) -> tuple[Point, float, tuple[int, ...]]:
    """Smallest geodesic disk containing the points.

    Combinatorial search over support sets of size <= 3; exact at the input
    sizes this package works with (a few dozen points at most).  Returns
    (center, radius, support indices).
    """
    if not points:
        raise SpindleError("BAD_RANGE", "need at least one point")
    if len(points) == 1:
        return points[0], 0.0, (0,)
    best: Optional[tuple[float, Point, tuple[int, ...]]] = None
    n = len(points)

    def consider(center: Point, radius: float, support: tuple[int, ...]) -> None:
        nonlocal best
        if best is not None and radius >= best[0]:
            return
        for p in points:
            if distance(center, p, g) > radius + 1e-9:
                return
        best = (radius, center, support)

    for i in range(n):
        for j in range(i + 1, n):
            d = distance(points[i], points[j], g)
            if d < 1e-15:
                continue
            c = midpoint(points[i], points[j], g)
            consider(c, max(distance(c, points[i], g), distance(c, points[j], g)), (i, j))
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                cc = circumcenter(points[i], points[j], points[k], g)
                if cc is None:
                    continue
                center, _ = cc
                radius = max(
                    distance(center, points[i], g),
                    distance(center, points[j], g),
                    distance(center, points[k], g),
                )
                consider(center, radius, (i, j, k))
    if best is None:
        # all points coincide within tolerance
        return points[0], 0.0, (0,)
    radius, center, support = best
    return center, radius, support


def signed_distance_to_geodesic(x: Point, base: Point, u: Tangent, g: Geometry) -> float:
    """Signed distance from x to the geodesic through base with direction u.

    Positive on the left of the oriented geodesic.
    """
    _check_tangent(base, u, g)
    if g.kappa == 0:
        return u.x * (x.y - base.y) - u.y * (x.x - base.x)
    pole = perp(base, u, g)  # unit normal of the geodesic's plane
    if g.kappa > 0:
        return math.asin(max(-1.0, min(1.0, _dot3(x, pole))))
    return math.asinh(_mdot(x, pole))
