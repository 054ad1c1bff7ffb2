"""Extremal bodies of given width among r-convex sets.

The regular disk triangle T(w, r) is the intersection of three radius-r
disks arranged with threefold symmetry so that the body has width w; it
minimizes both inradius and area among r-convex bodies of that width.  Its
inradius has a closed form in each geometry, differentiable in (w, r); the
six-arc family built by `regular_disk_hexagon` interpolates between the
triangle and the single disk while keeping the width fixed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .geometry import (
    Geometry,
    Point,
    SpindleError,
    exp_map,
    origin,
    tangent_from_angle,
)
from .regions import DiskPolygon, ball_hull, make_arc

# beyond this the hyperbolic closed form would square numbers near the
# double-precision overflow line, so log-space variants take over
_LOG_FORM_R = 350.0

TWO_THIRDS_PI = 2.0 * math.pi / 3.0


def _check_width_radius(w: float, r: float, g: Geometry) -> None:
    g.check_radius(r)
    if not (0.0 < w <= r) or not math.isfinite(w):
        raise SpindleError("BAD_RANGE", f"width must satisfy 0 < w <= r, got w={w} r={r}")


def triangle_inradius(w: float, r: float, g: Geometry) -> float:
    """Inradius of the regular disk triangle of width w and arc radius r."""
    _check_width_radius(w, r, g)
    if g.kappa == 0:
        return 0.5 * (r + w - math.sqrt((4.0 * r * r - (r - w) ** 2) / 3.0))
    if g.kappa > 0:
        arg = (4.0 * math.cos(r) - math.cos(r - w)) / 3.0
        arg = max(-1.0, min(1.0, arg))
        return 0.5 * (r + w - math.acos(arg))
    if r <= _LOG_FORM_R:
        return 0.5 * (r + w - math.acosh((4.0 * math.cosh(r) - math.cosh(r - w)) / 3.0))
    # y = (4 cosh r - cosh(r-w)) / 3 = e^r * q / 3 with q of order one;
    # acosh(y) = log(y) + log(1 + sqrt(1 - 1/y^2)) and 1/y^2 underflows to 0
    q = 2.0 + 2.0 * math.exp(-2.0 * r) - 0.5 * (math.exp(-w) + math.exp(w - 2.0 * r))
    big_l = r + math.log(q) - math.log(3.0)
    inner = -math.expm1(-2.0 * big_l)
    acosh_y = big_l + math.log1p(math.sqrt(max(inner, 0.0)))
    return 0.5 * (r + w - acosh_y)


def triangle_inradius_partials(w: float, r: float, g: Geometry) -> tuple[float, float]:
    """(d/dw, d/dr) of triangle_inradius; the w-partial is positive and the
    r-partial negative on the open domain, and the w-partial is exactly 1/2
    on the Reuleaux edge w = r."""
    _check_width_radius(w, r, g)
    if g.kappa == 0:
        root = math.sqrt(9.0 * r * r + 6.0 * r * w - 3.0 * w * w)
        return 0.5 * (1.0 - (r - w) / root), 0.5 * (1.0 - (3.0 * r + w) / root)
    if g.kappa > 0:
        y3 = 4.0 * math.cos(r) - math.cos(r - w)
        root = math.sqrt(max(9.0 - y3 * y3, 0.0))
        if root == 0.0:
            raise SpindleError("OUT_OF_RANGE", "derivative is singular here")
        return (
            0.5 * (1.0 - math.sin(r - w) / root),
            0.5 * (1.0 - (4.0 * math.sin(r) - math.sin(r - w)) / root),
        )
    if r <= _LOG_FORM_R:
        y3 = 4.0 * math.cosh(r) - math.cosh(r - w)
        root = math.sqrt(y3 * y3 - 9.0)
        return (
            0.5 * (1.0 - math.sinh(r - w) / root),
            0.5 * (1.0 - (4.0 * math.sinh(r) - math.sinh(r - w)) / root),
        )
    # factor e^r out of numerators and denominator; the -9 under the root
    # is smaller than everything else by e^{-2r}
    em2r = math.exp(-2.0 * r)
    den = 2.0 + 2.0 * em2r - 0.5 * (math.exp(-w) + math.exp(w - 2.0 * r))
    num_w = 0.5 * (math.exp(-w) - math.exp(w - 2.0 * r))
    num_r = 2.0 - 2.0 * em2r - 0.5 * (math.exp(-w) - math.exp(w - 2.0 * r))
    return 0.5 * (1.0 - num_w / den), 0.5 * (1.0 - num_r / den)


@dataclass(frozen=True)
class DiskTriangle:
    """Regular disk triangle with its construction data."""

    geometry: Geometry
    w: float
    r: float
    rho0: float
    incenter: Point
    region: DiskPolygon


def regular_disk_triangle(
    w: float, r: float, g: Geometry, center: Optional[Point] = None, angle: float = 0.0
) -> DiskTriangle:
    """Build the regular disk triangle of width w from radius-r arcs.

    The three vertices sit at distance w - rho0 from the incenter and the
    three arc centers at distance r - rho0, each center aligned with one
    vertex; the arc around center i joins the other two vertices.
    """
    _check_width_radius(w, r, g)
    rho0 = triangle_inradius(w, r, g)
    p = center if center is not None else origin(g)
    if g.kappa > 0:
        g.check_radius(max(w - rho0, r - rho0), "triangle reach")
    thetas = [angle + i * TWO_THIRDS_PI for i in range(3)]
    verts = [exp_map(p, tangent_from_angle(p, th, g), w - rho0, g) for th in thetas]
    cents = [exp_map(p, tangent_from_angle(p, th, g), r - rho0, g) for th in thetas]
    # arc from vertex i to vertex i+1 is the one opposite vertex i+2,
    # centered there
    arcs = tuple(
        make_arc(cents[(i + 2) % 3], r, verts[i], verts[(i + 1) % 3], g)
        for i in range(3)
    )
    region = DiskPolygon(g, r, arcs)
    return DiskTriangle(g, w, r, rho0, p, region)


@dataclass(frozen=True)
class DiskHexagon:
    """Six-arc constant-width body between the triangle and the disk."""

    geometry: Geometry
    w: float
    r: float
    rho: float
    apexes: tuple[Point, ...]
    anchors: tuple[Point, ...]
    region: DiskPolygon


def regular_disk_hexagon(w: float, r: float, rho: float, g: Geometry) -> DiskHexagon:
    """Width-w body of the threefold-symmetric six-arc family.

    Three apex points at distance w - rho from the center alternate with
    three anchor points at distance rho on the opposite rays; the region is
    the r-hull of the six.  rho = triangle inradius collapses it to the
    triangle; rho = w/2 makes it most disk-like.
    """
    _check_width_radius(w, r, g)
    rho0 = triangle_inradius(w, r, g)
    if not (rho0 - 1e-9 <= rho <= w - rho0 + 1e-9):
        raise SpindleError(
            "BAD_RANGE", "rho must lie between the triangle inradius and w minus it"
        )
    p = origin(g)
    if g.kappa > 0:
        g.check_radius(max(w - rho, rho), "hexagon reach")
    apexes = tuple(
        exp_map(p, tangent_from_angle(p, i * TWO_THIRDS_PI, g), w - rho, g)
        for i in range(3)
    )
    anchors = tuple(
        exp_map(p, tangent_from_angle(p, i * TWO_THIRDS_PI + math.pi, g), rho, g)
        for i in range(3)
    )
    region = ball_hull(list(apexes) + list(anchors), r, g)
    return DiskHexagon(g, w, r, rho, apexes, anchors, region)
