"""Regions bounded by circular arcs of one fixed radius r.

Two region kinds are provided:

* DiskPolygon: intersection of all radius-r disks containing a given point
  set (equivalently, of the disks centered at its boundary arc centers).
  The boundary is a counterclockwise cycle of arcs of radius exactly r,
  each bulging away from the region.
* CapDomain: a smaller disk with "caps" attached at apex points outside
  it, each cap bounded by two radius-r arcs internally tangent to the disk.

Both serialize to plain JSON records that round-trip exactly (floats are
written by repr, the shortest form parsing back to the same double).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .geometry import (
    ANGLE_EPS,
    GEOM_EPS,
    MERGE_EPS,
    Circle,
    Geometry,
    GEOMETRIES,
    Point,
    SpindleError,
    Tangent,
    angle_coord,
    circle_circle_intersection,
    det3,
    distance,
    exp_map,
    log_dir,
    midpoint,
    rotate_tangent,
    smallest_enclosing_disk,
    tangent_basis,
    tangent_dot,
)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Arc:
    """Circular arc traversed counterclockwise about its center.

    The region an arc bounds lies on the center side, so the center stays
    on the left while walking the boundary.  `extent` is the central angle
    of the traversal, in (0, 2*pi]; start == end with extent 2*pi encodes
    a full circle.
    """

    center: Point
    radius: float
    start: Point
    end: Point
    extent: float
    geometry: Geometry

    def point_at(self, s: float) -> Point:
        """Point reached after central angle s of counterclockwise travel."""
        g = self.geometry
        u = log_dir(self.center, self.start, g)
        return exp_map(self.center, rotate_tangent(self.center, u, s, g), self.radius, g)

    def midpoint(self) -> Point:
        return self.point_at(0.5 * self.extent)

    def contains_ray_angle(self, x: Point, tol: float = ANGLE_EPS) -> bool:
        """Whether the ray center -> x falls inside the arc's angular span."""
        g = self.geometry
        if self.extent >= TWO_PI - tol:
            return True
        u0 = log_dir(self.center, self.start, g)
        ux = log_dir(self.center, x, g)
        a = math.atan2(det3(self.center, u0, ux), tangent_dot(u0, ux, g)) % TWO_PI
        return a <= self.extent + tol or a >= TWO_PI - tol


def _arc_extent_from_chord(chord: float, radius: float, g: Geometry) -> float:
    # central angle subtended by a chord; chordal form, no acos cancellation
    if g.kappa == 0:
        q = 0.5 * chord / radius
    elif g.kappa > 0:
        q = math.sin(0.5 * chord) / math.sin(radius)
    else:
        q = math.sinh(0.5 * chord) / math.sinh(radius)
    if q > 1.0 + 1e-9:
        raise SpindleError("OUT_OF_RANGE", "chord longer than the circle diameter")
    return 2.0 * math.asin(min(1.0, q))


def make_arc(center: Point, radius: float, start: Point, end: Point, g: Geometry) -> Arc:
    """Arc from start to end counterclockwise about center, extent <= pi.

    Endpoints must lie on the circle.  The traversal takes whichever way
    around matches the counterclockwise direction; every arc built by this
    package subtends at most pi (+ rounding), so the chordal extent is it.
    """
    for p in (start, end):
        if abs(distance(center, p, g) - radius) > 1e-7:
            raise SpindleError("MALFORMED_BOUNDARY", "arc endpoint off its circle")
    chord = distance(start, end, g)
    if chord < 1e-15:
        raise SpindleError("MALFORMED_BOUNDARY", "zero-extent arc")
    extent = _arc_extent_from_chord(chord, radius, g)
    u0 = log_dir(center, start, g)
    u1 = log_dir(center, end, g)
    ccw = math.atan2(det3(center, u0, u1), tangent_dot(u0, u1, g)) % TWO_PI
    # the chord determines extent or 2*pi - extent; pick the CCW-consistent one
    if abs(ccw - extent) > abs(ccw - (TWO_PI - extent)):
        extent = TWO_PI - extent
    return Arc(center, radius, start, end, extent, g)


def full_circle_arc(center: Point, radius: float, g: Geometry) -> Arc:
    start = exp_map(center, tangent_basis(center, g)[0], radius, g)
    return Arc(center, radius, start, start, TWO_PI, g)


# --------------------------------------------------------------------------
# disk polygon

@dataclass(frozen=True)
class DiskPolygon:
    """Intersection of radius-r disks, boundary stored as CCW arcs.

    arcs[i] runs from vertex i to vertex i+1 (cyclically); one arc of
    extent 2*pi encodes a full disk.  `boundary_degenerate` marks inputs
    whose smallest enclosing disk radius sits within tolerance of r, where
    the region can pinch down to a lens tip or a single point.
    """

    geometry: Geometry
    r: float
    arcs: tuple[Arc, ...]
    boundary_degenerate: bool = False

    @property
    def is_full_disk(self) -> bool:
        return len(self.arcs) == 1 and self.arcs[0].extent >= TWO_PI - ANGLE_EPS

    @property
    def vertices(self) -> tuple[Point, ...]:
        if self.is_full_disk:
            return ()
        return tuple(a.start for a in self.arcs)

    @property
    def centers(self) -> tuple[Point, ...]:
        return tuple(a.center for a in self.arcs)

    def contains(self, x: Point, tol: float = GEOM_EPS) -> bool:
        return all(distance(c, x, self.geometry) <= self.r + tol for c in self.centers)

    def to_record(self) -> dict:
        return {
            "type": "disk_polygon",
            "geometry": self.geometry.name,
            "r": self.r,
            "centers": [[a.center.x, a.center.y, a.center.z] for a in self.arcs],
            "vertices": [[v.x, v.y, v.z] for v in self.vertices],
        }

    @staticmethod
    def from_record(rec: dict) -> "DiskPolygon":
        try:
            g = GEOMETRIES[rec["geometry"]]
            r = float(rec["r"])
            centers = [Point(*map(float, c)) for c in rec["centers"]]
            verts = [Point(*map(float, v)) for v in rec["vertices"]]
        except (KeyError, TypeError, ValueError) as e:
            raise SpindleError("MALFORMED_BOUNDARY", f"bad disk_polygon record: {e}")
        g.check_radius(r)
        if not centers:
            raise SpindleError("MALFORMED_BOUNDARY", "record has no arc centers")
        if not verts:
            if len(centers) != 1:
                raise SpindleError(
                    "MALFORMED_BOUNDARY", "vertex-free record must be a single disk"
                )
            return DiskPolygon(g, r, (full_circle_arc(centers[0], r, g),))
        if len(verts) != len(centers):
            raise SpindleError("MALFORMED_BOUNDARY", "need one center per vertex")
        n = len(verts)
        arcs = tuple(
            make_arc(centers[i], r, verts[i], verts[(i + 1) % n], g) for i in range(n)
        )
        return DiskPolygon(g, r, arcs)


def save_region(region, path: str) -> None:
    with open(path, "w") as f:
        json.dump(region.to_record(), f, indent=2, sort_keys=True)
        f.write("\n")


def load_region(path: str):
    with open(path) as f:
        rec = json.load(f)
    kind = rec.get("type")
    if kind == "disk_polygon":
        return DiskPolygon.from_record(rec)
    if kind == "cap_domain":
        return CapDomain.from_record(rec)
    raise SpindleError("MALFORMED_BOUNDARY", f"unknown region type {kind!r}")


# --------------------------------------------------------------------------
# two-point hull (lens)

def r_segment(x: Point, y: Point, r: float, g: Geometry) -> DiskPolygon:
    """Intersection of the two radius-r disks whose boundary circles pass
    through both x and y: the smallest r-convex set containing the pair."""
    g.check_radius(r)
    d = distance(x, y, g)
    if d < 1e-12:
        raise SpindleError("DEGENERATE_POINT", "the two points coincide")
    if d > 2.0 * r + 1e-12:
        raise SpindleError("TOO_FAR", "points farther apart than 2r")
    if d >= 2.0 * r - 1e-12:
        # tangent circles: both arcs are half circles about the midpoint
        c = midpoint(x, y, g)
        arcs = (make_arc(c, r, x, y, g), make_arc(c, r, y, x, g))
        return DiskPolygon(g, r, arcs, boundary_degenerate=True)
    c_left, c_right = circle_circle_intersection(Circle(x, r), Circle(y, r), g)
    arcs = (make_arc(c_left, r, x, y, g), make_arc(c_right, r, y, x, g))
    return DiskPolygon(g, r, arcs)


# --------------------------------------------------------------------------
# hull of many points

def _enclosing_state(points: Sequence[Point], r: float, g: Geometry) -> tuple[bool, bool]:
    """(fits in a radius-r disk, smallest such disk is critically tight)."""
    far = max(distance(points[0], p, g) for p in points)
    if far <= r - 1e-9:
        # disk centered beyond the farthest point from points[0] covers all:
        # cheap certificate, skips the smallest-disk search
        return True, False
    _, radius, _ = smallest_enclosing_disk(points, g)
    if radius > r + 1e-9:
        return False, False
    return True, radius > r - 1e-9


def ball_hull(points: Sequence[Point], r: float, g: Geometry) -> DiskPolygon:
    """Smallest r-convex region containing the points.

    Gift-wraps the boundary: at each vertex the successor is the input
    point whose left supporting-circle center makes the least
    counterclockwise turn from the reference direction, ties going to the
    farthest point so collinear-on-circle interior points drop out.
    Raises NOT_ENCLOSABLE when no radius-r disk covers the input.
    """
    g.check_radius(r)
    pts = list(points)
    if not pts:
        raise SpindleError("EMPTY", "need at least one point")
    kept: list[Point] = []
    for p in pts:
        if all(distance(p, q, g) > MERGE_EPS for q in kept):
            kept.append(p)
    if len(kept) == 1:
        raise SpindleError("DEGENERATE_POINT", "all points coincide")
    ok, degenerate = _enclosing_state(kept, r, g)
    if not ok:
        raise SpindleError("NOT_ENCLOSABLE", "points do not fit in any radius-r disk")
    if len(kept) == 2:
        seg = r_segment(kept[0], kept[1], r, g)
        if degenerate and not seg.boundary_degenerate:
            seg = DiskPolygon(g, r, seg.arcs, boundary_degenerate=True)
        return seg

    def wrap_step(a: Point, ref: Tangent) -> tuple[Point, Point]:
        # successor of vertex a, given the inward reference direction there
        best: Optional[tuple[float, float, Point, Point]] = None
        for x in kept:
            d_ax = distance(a, x, g)
            if d_ax <= MERGE_EPS:
                continue
            hits = circle_circle_intersection(Circle(a, r), Circle(x, r), g)
            if not hits:
                continue
            c = hits[0]  # left supporting-circle center for the edge a -> x
            v = log_dir(a, c, g)
            ang = math.atan2(det3(a, ref, v), tangent_dot(ref, v, g)) % TWO_PI
            if best is None or ang < best[0] - 1e-12:
                best = (ang, d_ax, x, c)
            elif ang <= best[0] + 1e-12 and d_ax > best[1]:
                best = (min(ang, best[0]), d_ax, x, c)
        if best is None:
            raise SpindleError("MALFORMED_BOUNDARY", "hull wrap found no successor")
        return best[2], best[3]

    # start point: farthest from kept[0]; its supporting disk center sits
    # beyond it on the geodesic toward kept[0], so it is on the hull
    z0 = kept[0]
    start = max(kept, key=lambda p: distance(z0, p, g))
    c0 = exp_map(start, log_dir(start, z0, g), r, g)
    first, c_first = wrap_step(start, log_dir(start, c0, g))

    verts: list[Point] = [first]
    arc_centers: list[Point] = []
    current, ref = first, log_dir(first, c_first, g)
    for _ in range(len(kept) + 2):
        nxt, c = wrap_step(current, ref)
        arc_centers.append(c)
        if distance(nxt, first, g) <= MERGE_EPS:
            break
        verts.append(nxt)
        current, ref = nxt, log_dir(nxt, c, g)
    else:
        raise SpindleError("MALFORMED_BOUNDARY", "hull wrap failed to close")

    n = len(verts)
    if n == 1:
        raise SpindleError("MALFORMED_BOUNDARY", "hull wrap degenerated")
    arcs = tuple(
        make_arc(arc_centers[i], r, verts[i], verts[(i + 1) % n], g) for i in range(n)
    )
    poly = DiskPolygon(g, r, arcs, boundary_degenerate=degenerate)
    for p in kept:
        if not poly.contains(p, tol=1e-7):
            raise SpindleError("MALFORMED_BOUNDARY", "hull does not cover its input")
    return poly


# --------------------------------------------------------------------------
# cap domain

@dataclass(frozen=True)
class CapDomain:
    """Disk B(center, rho) with radius-r caps attached at apex points.

    A cap at apex q is bounded by the two radius-r arcs through q whose
    circles are internally tangent to the disk; the domain is the union of
    the disk and its caps, r-convex whenever the caps do not overlap.
    """

    geometry: Geometry
    r: float
    center: Point
    rho: float
    apexes: tuple[Point, ...]
    arcs: tuple[Arc, ...] = field(repr=False)
    cap_disks: tuple[tuple[Circle, Circle], ...] = field(repr=False)
    cap_wedges: tuple[tuple[float, float], ...] = field(repr=False)

    def contains(self, x: Point, tol: float = GEOM_EPS) -> bool:
        g = self.geometry
        if distance(self.center, x, g) <= self.rho + tol:
            return True
        theta = angle_coord(self.center, x, g)
        for (cl, cr), (lo, hi) in zip(self.cap_disks, self.cap_wedges):
            if not _angle_in(theta, lo, hi):
                continue
            if (
                distance(cl.center, x, g) <= self.r + tol
                and distance(cr.center, x, g) <= self.r + tol
            ):
                return True
        return False

    def to_record(self) -> dict:
        return {
            "type": "cap_domain",
            "geometry": self.geometry.name,
            "r": self.r,
            "center": [self.center.x, self.center.y, self.center.z],
            "rho": self.rho,
            "apexes": [[q.x, q.y, q.z] for q in self.apexes],
        }

    @staticmethod
    def from_record(rec: dict) -> "CapDomain":
        try:
            g = GEOMETRIES[rec["geometry"]]
            r = float(rec["r"])
            center = Point(*map(float, rec["center"]))
            rho = float(rec["rho"])
            apexes = [Point(*map(float, q)) for q in rec["apexes"]]
        except (KeyError, TypeError, ValueError) as e:
            raise SpindleError("MALFORMED_BOUNDARY", f"bad cap_domain record: {e}")
        return cap_domain(Circle(center, rho), apexes, r, g)


def _angle_in(theta: float, lo: float, hi: float, tol: float = ANGLE_EPS) -> bool:
    # membership in an angular interval that may wrap past 2*pi
    width = (hi - lo) % TWO_PI
    return (theta - lo) % TWO_PI <= width + tol


def cap_domain(disk: Circle, apexes: Iterable[Point], r: float, g: Geometry) -> CapDomain:
    """Attach radius-r caps to `disk` at the given apex points.

    Apexes must lie outside the disk (DEGENERATE otherwise) and within
    reach of the tangent arcs, distance at most 2r - rho from the disk
    center (APEX_TOO_FAR).  Caps whose angular footprints on the disk
    overlap raise CAP_OVERLAP.
    """
    g.check_radius(r)
    p, rho = disk.center, disk.radius
    if not (0.0 < rho < r):
        raise SpindleError("BAD_RANGE", "cap domain needs 0 < rho < r")
    if g.kappa > 0:
        g.check_radius(rho)

    caps = []  # (theta, apex, c_left, c_right, t_in, t_out, half_width)
    for q in apexes:
        d = distance(p, q, g)
        if d <= rho + 1e-12:
            raise SpindleError("DEGENERATE", "apex inside the disk")
        if d > 2.0 * r - rho + 1e-12:
            raise SpindleError("APEX_TOO_FAR", "apex beyond reach of tangent arcs")
        hits = circle_circle_intersection(Circle(p, r - rho), Circle(q, r), g)
        if not hits:
            raise SpindleError("APEX_TOO_FAR", "no tangent arc pair for this apex")
        c_left = hits[0]
        c_right = hits[-1]
        # tangency points sit diametrically opposite the arc centers through
        # the disk center; the left center touches at the clockwise end
        t_in = exp_map(c_left, log_dir(c_left, p, g), r, g)
        t_out = exp_map(c_right, log_dir(c_right, p, g), r, g)
        theta = angle_coord(p, q, g)
        caps.append((theta, q, c_left, c_right, t_in, t_out, _cap_half_width(d, rho, r, g)))
    caps.sort(key=lambda cap: cap[0])

    m = len(caps)
    for i in range(m):
        th_i, half_i = caps[i][0], caps[i][6]
        th_j, half_j = caps[(i + 1) % m][0], caps[(i + 1) % m][6]
        gap = (th_j - th_i) % TWO_PI if m > 1 else TWO_PI
        if gap < half_i + half_j - 1e-9:
            raise SpindleError("CAP_OVERLAP", "cap footprints overlap on the disk")

    if m == 0:
        return CapDomain(g, r, p, rho, (), (full_circle_arc(p, rho, g),), (), ())

    arcs: list[Arc] = []
    pairs: list[tuple[Circle, Circle]] = []
    wedges: list[tuple[float, float]] = []
    for i, (th, q, c_left, c_right, t_in, t_out, half) in enumerate(caps):
        arcs.append(make_arc(c_left, r, t_in, q, g))
        arcs.append(make_arc(c_right, r, q, t_out, g))
        pairs.append((Circle(c_left, r), Circle(c_right, r)))
        wedges.append(((th - half) % TWO_PI, (th + half) % TWO_PI))
        th_next, half_next = caps[(i + 1) % m][0], caps[(i + 1) % m][6]
        t_in_next = caps[(i + 1) % m][4]
        span = (th_next - half_next - th - half) % TWO_PI if m > 1 else TWO_PI - 2.0 * half
        if span > ANGLE_EPS:
            arcs.append(Arc(p, rho, t_out, t_in_next, span, g))
    return CapDomain(g, r, p, rho, tuple(c[1] for c in caps), tuple(arcs), tuple(pairs), tuple(wedges))


def _cap_half_width(d: float, rho: float, r: float, g: Geometry) -> float:
    """Half the cap's angular footprint on the disk, seen from its center.

    The arc centers sit at distance r - rho from the disk center at angle
    +-beta off the apex direction; the tangency points are diametrically
    opposite them, so the footprint half width is pi - beta.
    """
    if g.kappa == 0:
        num = d * d + (r - rho) ** 2 - r * r
        den = 2.0 * d * (r - rho)
    elif g.kappa > 0:
        num = (math.cos(r) - math.cos(r - rho)) + math.cos(r - rho) * 2.0 * math.sin(0.5 * d) ** 2
        den = math.sin(r - rho) * math.sin(d)
    else:
        num = (math.cosh(r - rho) - math.cosh(r)) + math.cosh(r - rho) * 2.0 * math.sinh(0.5 * d) ** 2
        den = math.sinh(r - rho) * math.sinh(d)
    beta = math.acos(max(-1.0, min(1.0, num / den)))
    return math.pi - beta
