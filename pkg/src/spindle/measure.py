"""Width, inradius and area of arc-bounded regions.

Area is exact: a signed geodesic-polygon part over the boundary vertices
plus closed-form circular-segment corrections, one per arc.  Width
(minimal double-normal length) enumerates the three families of double
normals a disk polygon admits: vertex to arc, arc to arc, and vertex to
vertex.  The inradius comes from a minimax reduction: the largest inscribed
disk of an intersection of radius-r disks is centered at the center of the
smallest disk enclosing their centers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .geometry import (
    ANGLE_EPS,
    GEOM_EPS,
    MERGE_EPS,
    Geometry,
    Point,
    SpindleError,
    Tangent,
    _normalize_point,
    det3,
    distance,
    exp_map,
    log_dir,
    smallest_enclosing_disk,
    tangent_basis,
    tangent_dot,
    tangent_from_angle,
)
from .regions import Arc, CapDomain, DiskPolygon, TWO_PI


def disk_area(g: Geometry, rho: float) -> float:
    if g.kappa == 0:
        return math.pi * rho * rho
    if g.kappa > 0:
        return TWO_PI * (1.0 - math.cos(rho))
    return TWO_PI * (math.cosh(rho) - 1.0)


def _segment_minor(phi: float, rho: float, g: Geometry) -> float:
    # area between a chord and its arc, central angle phi <= pi
    if g.kappa == 0:
        if phi < 1e-2:
            # phi - sin(phi) loses everything below ~1e-2; series instead
            p2 = phi * phi
            return 0.5 * rho * rho * (phi * p2 / 6.0) * (1.0 - p2 / 20.0 * (1.0 - p2 / 42.0))
        return 0.5 * rho * rho * (phi - math.sin(phi))
    if g.kappa > 0:
        c = math.cos(rho)
        return 2.0 * math.atan(c * math.tan(0.5 * phi)) - phi * c
    c = math.cosh(rho)
    return phi * c - 2.0 * math.atan(c * math.tan(0.5 * phi))


def segment_area(phi: float, rho: float, g: Geometry) -> float:
    """Area between an arc of central angle phi and its chord, on the arc
    side; for phi > pi this is the major segment (contains the center)."""
    if phi < 0.0 or phi > TWO_PI + ANGLE_EPS:
        raise SpindleError("BAD_RANGE", f"segment angle out of range: {phi}")
    if phi >= TWO_PI - ANGLE_EPS:
        return disk_area(g, rho)
    if abs(phi - math.pi) <= 1e-9:
        return 0.5 * disk_area(g, rho)
    if phi > math.pi:
        return disk_area(g, rho) - _segment_minor(TWO_PI - phi, rho, g)
    return _segment_minor(phi, rho, g)


def _negate(u: Tangent) -> Tangent:
    return Tangent(-u.x, -u.y, -u.z)


def _polygon_area(verts: Sequence[Point], g: Geometry) -> float:
    """Signed area of the geodesic polygon with the given CCW vertex cycle.

    Uses the total turning: interior angles may be reflex (the cap-domain
    vertex cycles are star-shaped but not convex), so the angle at each
    vertex is pi minus the signed exterior turn there.
    """
    n = len(verts)
    if n <= 2:
        return 0.0
    if g.kappa == 0:
        s = 0.0
        for i in range(n):
            a, b = verts[i], verts[(i + 1) % n]
            s += a.x * b.y - b.x * a.y
        return 0.5 * s
    turn_sum = 0.0
    for i in range(n):
        v = verts[i]
        prev_v = verts[i - 1]
        next_v = verts[(i + 1) % n]
        w_in = _negate(log_dir(v, prev_v, g))  # arrival direction, continuing forward
        w_out = log_dir(v, next_v, g)
        turn_sum += math.atan2(det3(v, w_in, w_out), tangent_dot(w_in, w_out, g))
    if g.kappa > 0:
        return TWO_PI - turn_sum
    return turn_sum - TWO_PI


def area(region) -> float:
    """Exact area of a DiskPolygon or CapDomain."""
    g = region.geometry
    arcs: Sequence[Arc] = region.arcs
    if len(arcs) == 1 and arcs[0].extent >= TWO_PI - ANGLE_EPS:
        return disk_area(g, arcs[0].radius)
    verts = [a.start for a in arcs]
    total = _polygon_area(verts, g)
    for a in arcs:
        total += segment_area(a.extent, a.radius, g)
    return total


# --------------------------------------------------------------------------
# width

@dataclass(frozen=True)
class ThicknessWitness:
    """Minimal double normal: its length and the chord realizing it."""

    value: float
    kind: str  # "vertex-arc" | "arc-arc" | "vertex-vertex"
    a: Point
    b: Point


def _vertex_cones(poly: DiskPolygon) -> list[tuple[Tangent, Tangent]]:
    # outward normal cone at vertex i, spanned CCW from the normal of the
    # incoming arc to the normal of the outgoing arc
    cones = []
    arcs = poly.arcs
    g = poly.geometry
    for i, arc in enumerate(arcs):
        v = arc.start
        n1 = _negate(log_dir(v, arcs[i - 1].center, g))
        n2 = _negate(log_dir(v, arc.center, g))
        cones.append((n1, n2))
    return cones


def _in_cone(v: Point, w: Tangent, n1: Tangent, n2: Tangent, g: Geometry) -> bool:
    # det3 against unit tangents at a surface point is the plain sine of the
    # turning angle in every model, so the tolerance is scale-free
    if det3(v, n1, w) < -ANGLE_EPS or det3(v, w, n2) < -ANGLE_EPS:
        return False
    return tangent_dot(w, n1, g) + tangent_dot(w, n2, g) > 0.0


def _frame_angle(p: Point, u: Tangent, g: Geometry) -> float:
    t1, t2 = tangent_basis(p, g)
    return math.atan2(tangent_dot(u, t2, g), tangent_dot(u, t1, g)) % TWO_PI


def _intervals_overlap(lo1: float, w1: float, lo2: float, w2: float) -> Optional[float]:
    """A point common to two circular intervals [lo, lo+w], or None."""
    d = (lo2 - lo1) % TWO_PI
    if d <= w1 + ANGLE_EPS:
        return lo2
    d2 = (lo1 - lo2) % TWO_PI
    if d2 <= w2 + ANGLE_EPS:
        return lo1
    return None


def thickness(poly: DiskPolygon) -> ThicknessWitness:
    """Width of a disk polygon: the shortest double normal.

    A double normal is a chord meeting the boundary perpendicularly at both
    ends (at a vertex, "perpendicular" means the chord direction reversed
    falls in the outward normal cone).
    """
    if not isinstance(poly, DiskPolygon):
        raise SpindleError("BAD_RANGE", "width is defined for disk polygons")
    g = poly.geometry
    r = poly.r
    arcs = poly.arcs
    centers = poly.centers
    if poly.is_full_disk or all(
        distance(c, centers[0], g) <= MERGE_EPS for c in centers
    ):
        c = centers[0]
        u = tangent_basis(c, g)[0]
        return ThicknessWitness(
            2.0 * r, "arc-arc", exp_map(c, u, r, g), exp_map(c, _negate(u), r, g)
        )

    verts = poly.vertices
    cones = _vertex_cones(poly)
    best: Optional[ThicknessWitness] = None

    def consider(value: float, kind: str, a: Point, b: Point) -> None:
        nonlocal best
        if best is None or value < best.value:
            best = ThicknessWitness(value, kind, a, b)

    n = len(arcs)
    # vertex to arc
    for k, v in enumerate(verts):
        for j, arc in enumerate(arcs):
            if (
                distance(v, arc.start, g) <= MERGE_EPS
                or distance(v, arc.end, g) <= MERGE_EPS
            ):
                continue  # incident arcs give zero-length chords, not normals
            c = arc.center
            d_cv = distance(c, v, g)
            if d_cv <= ANGLE_EPS:
                # vertex sits at the arc's center: every chord to the arc is
                # normal there and has length r; need one whose reverse lies
                # in the vertex cone
                a0 = _frame_angle(v, log_dir(c, arc.start, g), g)
                n1, n2 = cones[k]
                th1 = _frame_angle(v, n1, g)
                width_cone = (_frame_angle(v, n2, g) - th1) % TWO_PI
                psi = _intervals_overlap(a0, arc.extent, (th1 + math.pi) % TWO_PI, width_cone)
                if psi is not None:
                    y = exp_map(v, tangent_from_angle(v, psi, g), r, g)
                    consider(r, "vertex-arc", v, y)
                continue
            if not arc.contains_ray_angle(v):
                continue
            w_out = log_dir(v, c, g)
            if not _in_cone(v, w_out, *cones[k], g):
                continue
            y = exp_map(c, log_dir(c, v, g), r, g)
            consider(r - d_cv, "vertex-arc", v, y)

    # arc to arc
    for i in range(n):
        for j in range(i + 1, n):
            ci, cj = centers[i], centers[j]
            dij = distance(ci, cj, g)
            if dij <= MERGE_EPS:
                # same supporting circle on both sides: a diameter
                m = arcs[i].midpoint()
                anti = exp_map(ci, _negate(log_dir(ci, m, g)), r, g)
                if arcs[j].contains_ray_angle(anti):
                    consider(2.0 * r, "arc-arc", m, anti)
                continue
            xi = exp_map(ci, log_dir(ci, cj, g), r, g)
            xj = exp_map(cj, log_dir(cj, ci, g), r, g)
            if arcs[i].contains_ray_angle(xi) and arcs[j].contains_ray_angle(xj):
                consider(2.0 * r - dij, "arc-arc", xj, xi)

    # vertex to vertex
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            vi, vj = verts[i], verts[j]
            if distance(vi, vj, g) <= MERGE_EPS:
                continue
            out_i = _negate(log_dir(vi, vj, g))
            out_j = _negate(log_dir(vj, vi, g))
            if _in_cone(vi, out_i, *cones[i], g) and _in_cone(vj, out_j, *cones[j], g):
                consider(distance(vi, vj, g), "vertex-vertex", vi, vj)

    if best is None:
        raise SpindleError("MALFORMED_BOUNDARY", "no double normal found")
    return best


# --------------------------------------------------------------------------
# inradius

@dataclass(frozen=True)
class Incircle:
    """Largest inscribed disk; contacts are its touching points on the
    boundary, support the indices of the arcs it touches."""

    center: Point
    radius: float
    contacts: tuple[Point, ...]
    support: tuple[int, ...]


def incircle(poly: DiskPolygon) -> Incircle:
    if not isinstance(poly, DiskPolygon):
        raise SpindleError("BAD_RANGE", "inradius is defined for disk polygons")
    g = poly.geometry
    r = poly.r
    centers = poly.centers
    distinct: list[Point] = []
    for c in centers:
        if all(distance(c, d, g) > MERGE_EPS for d in distinct):
            distinct.append(c)
    if len(distinct) == 1:
        return Incircle(distinct[0], r, (), (0,))
    x, big_r, _ = smallest_enclosing_disk(distinct, g)
    rho = r - big_r
    support = tuple(
        i for i, c in enumerate(centers) if abs(distance(c, x, g) - big_r) <= 1e-9
    )
    contacts: list[Point] = []
    for i in support:
        t = exp_map(centers[i], log_dir(centers[i], x, g), r, g)
        if all(distance(t, s, g) > MERGE_EPS for s in contacts):
            contacts.append(t)
    return Incircle(x, rho, tuple(contacts), support)


# --------------------------------------------------------------------------
# Monte Carlo area

def bounding_disk(region) -> tuple[Point, float]:
    """A geodesic disk certified to contain the region (not minimal)."""
    g = region.geometry
    arcs: Sequence[Arc] = region.arcs
    if len(arcs) == 1 and arcs[0].extent >= TWO_PI - ANGLE_EPS:
        return arcs[0].center, arcs[0].radius + 1e-9
    if g.kappa == 0:
        xs = [a.start for a in arcs]
        o = Point(
            sum(p.x for p in xs) / len(xs), sum(p.y for p in xs) / len(xs), 1.0
        )
    else:
        sx = sum(a.start.x for a in arcs)
        sy = sum(a.start.y for a in arcs)
        sz = sum(a.start.z for a in arcs)
        o = _normalize_point(g, sx, sy, sz)
    radius = 0.0
    for a in arcs:
        radius = max(radius, distance(o, a.start, g), distance(o, a.end, g))
        d_oc = distance(o, a.center, g)
        if d_oc <= 1e-12:
            radius = max(radius, a.radius)
            continue
        far = exp_map(a.center, _negate(log_dir(a.center, o, g)), a.radius, g)
        if a.contains_ray_angle(far):
            radius = max(radius, distance(o, far, g))
    return o, radius + 1e-9


def _sample_radii(u: np.ndarray, big_r: float, g: Geometry) -> np.ndarray:
    # inverse CDF of the radial part of the uniform measure on a disk
    if g.kappa == 0:
        return big_r * np.sqrt(u)
    if g.kappa > 0:
        return np.arccos(1.0 - u * (1.0 - math.cos(big_r)))
    return np.arccosh(1.0 + u * (math.cosh(big_r) - 1.0))


def sample_in_disk(
    o: Point, big_r: float, count: int, rng: np.random.Generator, g: Geometry
) -> np.ndarray:
    """Area-uniform samples in the disk B(o, big_r), as an (n, 3) array of
    embedded points."""
    theta = rng.uniform(0.0, TWO_PI, count)
    s = _sample_radii(rng.uniform(0.0, 1.0, count), big_r, g)
    t1, t2 = tangent_basis(o, g)
    dx = np.cos(theta)
    dy = np.sin(theta)
    ux = dx * t1.x + dy * t2.x
    uy = dx * t1.y + dy * t2.y
    uz = dx * t1.z + dy * t2.z
    ov = np.array([o.x, o.y, o.z])
    if g.kappa == 0:
        return np.stack([ov[0] + s * ux, ov[1] + s * uy, np.ones(count)], axis=1)
    if g.kappa > 0:
        c, sn = np.cos(s), np.sin(s)
    else:
        c, sn = np.cosh(s), np.sinh(s)
    return np.stack(
        [c * ov[0] + sn * ux, c * ov[1] + sn * uy, c * ov[2] + sn * uz], axis=1
    )


def _inside_disks(pts: np.ndarray, centers: Sequence[Point], radius: float, g: Geometry) -> np.ndarray:
    inside = np.ones(len(pts), dtype=bool)
    for c in centers:
        if g.kappa == 0:
            d2 = (pts[:, 0] - c.x) ** 2 + (pts[:, 1] - c.y) ** 2
            inside &= d2 <= (radius + GEOM_EPS) ** 2
        elif g.kappa > 0:
            dot = pts[:, 0] * c.x + pts[:, 1] * c.y + pts[:, 2] * c.z
            inside &= dot >= math.cos(radius + GEOM_EPS)
        else:
            mdot = pts[:, 0] * c.x + pts[:, 1] * c.y - pts[:, 2] * c.z
            inside &= -mdot <= math.cosh(radius + GEOM_EPS)
    return inside


def _inside_cap_domain(pts: np.ndarray, dom, g: Geometry) -> np.ndarray:
    # same predicate as CapDomain.contains, over a point batch
    p = dom.center
    inside = _inside_disks(pts, [p], dom.rho, g)
    e1, e2 = tangent_basis(p, g)
    if g.kappa == 0:
        a = (pts[:, 0] - p.x) * e1.x + (pts[:, 1] - p.y) * e1.y
        b = (pts[:, 0] - p.x) * e2.x + (pts[:, 1] - p.y) * e2.y
    elif g.kappa > 0:
        a = pts[:, 0] * e1.x + pts[:, 1] * e1.y + pts[:, 2] * e1.z
        b = pts[:, 0] * e2.x + pts[:, 1] * e2.y + pts[:, 2] * e2.z
    else:
        a = pts[:, 0] * e1.x + pts[:, 1] * e1.y - pts[:, 2] * e1.z
        b = pts[:, 0] * e2.x + pts[:, 1] * e2.y - pts[:, 2] * e2.z
    theta = np.arctan2(b, a)
    for (cl, cr), (lo, hi) in zip(dom.cap_disks, dom.cap_wedges):
        width = (hi - lo) % TWO_PI
        wedge = (theta - lo) % TWO_PI <= width + ANGLE_EPS
        if not wedge.any():
            continue
        in_cap = wedge & _inside_disks(pts, [cl.center, cr.center], dom.r, g)
        inside |= in_cap
    return inside


def area_monte_carlo(
    region, samples: int, rng: np.random.Generator
) -> tuple[float, float]:
    """Monte Carlo area estimate and its standard error.

    Samples area-uniformly in a bounding disk and counts hits; membership
    is vectorized for disk polygons and cap domains alike.
    """
    if samples <= 0:
        raise SpindleError("BAD_RANGE", "need a positive sample count")
    g = region.geometry
    o, big_r = bounding_disk(region)
    pts = sample_in_disk(o, big_r, samples, rng, g)
    if isinstance(region, DiskPolygon):
        hits = int(_inside_disks(pts, region.centers, region.r, g).sum())
    else:
        hits = int(_inside_cap_domain(pts, region, g).sum())
    p_hat = hits / samples
    a_bound = disk_area(g, big_r)
    estimate = a_bound * p_hat
    se = a_bound * math.sqrt(max(p_hat * (1.0 - p_hat), 0.0) / samples)
    return estimate, se
