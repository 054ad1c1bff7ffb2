"""Randomized verification of the extremal inequalities.

Each trial draws a few points area-uniformly in a disk of radius r/2,
takes their r-hull, measures width, inradius and area, and checks the two
lower bounds: inradius and area are both minimized, at fixed width, by the
regular disk triangle.  On top of that the harness rebuilds the inscribed
cap domain certificate: a disk-with-caps region sitting inside the hull
whose area separates the hull from the triangle bound.

All randomness is driven by numpy generators seeded per (seed, geometry,
trial), so runs are reproducible across machines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .geometry import (
    Circle,
    Geometry,
    GEOMETRIES,
    Point,
    SpindleError,
    Tangent,
    _normalize_tangent,
    angle_coord,
    circle_circle_intersection,
    distance,
    exp_map,
    log_dir,
    origin,
    perp,
    signed_distance_to_geodesic,
    tangent_from_angle,
)
from .measure import area, incircle, sample_in_disk, thickness
from .regions import CapDomain, DiskPolygon, ball_hull, cap_domain
from .extremal import (
    regular_disk_hexagon,
    regular_disk_triangle,
    triangle_inradius,
    triangle_inradius_partials,
)

DEFAULT_RADII = {
    "euclidean": (0.7, 1.0, 1.6),
    "hyperbolic": (0.7, 1.0, 1.6),
    "spherical": (0.6, 1.0, 1.4),
}

MARGIN_SLACK = 1e-7   # inequalities may dip this far below zero numerically
NEAR_EQUALITY = 1e-6  # treat margins under this as equality cases


@dataclass(frozen=True)
class VerifyConfig:
    geometries: tuple[str, ...] = ("euclidean", "hyperbolic", "spherical")
    trials: int = 200
    seed: int = 0
    point_counts: tuple[int, ...] = tuple(range(2, 13))
    radii: Optional[dict] = None

    def radii_for(self, name: str) -> tuple[float, ...]:
        if self.radii and name in self.radii:
            return tuple(self.radii[name])
        return DEFAULT_RADII[name]


@dataclass
class TrialReport:
    geometry: str
    trial: int
    n_points: int
    r: float
    width: float
    inradius: float
    inradius_bound: float
    area: float
    area_bound: float
    margin_inradius: float
    margin_area: float
    near_equality: bool
    triangle_match: Optional[float]
    cap_status: str
    cap_area_margin: Optional[float]
    violations: tuple[str, ...]


def sample_disk_polygon(
    g: Geometry, n: int, r: float, rng: np.random.Generator
) -> DiskPolygon:
    """r-hull of n points drawn area-uniformly from B(origin, r/2).

    The r/2 sampling radius keeps the diameter, hence the width, at or
    below r, which is the regime the extremal bounds speak about.
    """
    pts = sample_in_disk(origin(g), 0.5 * r, n, rng, g)
    return ball_hull([Point(*row) for row in pts], r, g)


def check_extremal_bounds(poly: DiskPolygon) -> dict:
    """Width, inradius and area of the hull against the triangle bounds."""
    g = poly.geometry
    r = poly.r
    wit = thickness(poly)
    w = wit.value
    if w > r + 1e-9:
        raise SpindleError("OUT_OF_RANGE", "width exceeds the arc radius")
    w_eff = min(w, r)
    inc = incircle(poly)
    rho_bound = triangle_inradius(w_eff, r, g)
    tri = regular_disk_triangle(w_eff, r, g)
    a = area(poly)
    a_bound = area(tri.region)
    margin_rho = inc.radius - rho_bound
    margin_area = a - a_bound
    violations = []
    if margin_rho < -MARGIN_SLACK:
        violations.append("inradius-bound")
    if margin_area < -MARGIN_SLACK:
        violations.append("area-bound")
    near = margin_rho < NEAR_EQUALITY and margin_area < NEAR_EQUALITY
    match = triangle_match_distance(poly, tri) if near else None
    return {
        "width": w,
        "incircle": inc,
        "inradius_bound": rho_bound,
        "area": a,
        "area_bound": a_bound,
        "margin_inradius": margin_rho,
        "margin_area": margin_area,
        "near_equality": near,
        "triangle_match": match,
        "violations": violations,
    }


def triangle_match_distance(poly: DiskPolygon, tri) -> float:
    """Congruence mismatch between the hull and the regular triangle:
    the sorted side lengths compared entrywise (inf when vertex counts
    differ)."""
    g = poly.geometry
    verts = poly.vertices
    if len(verts) != 3:
        return math.inf
    tv = tri.region.vertices
    sides = sorted(
        distance(verts[i], verts[(i + 1) % 3], g) for i in range(3)
    )
    ref = sorted(distance(tv[i], tv[(i + 1) % 3], g) for i in range(3))
    return max(abs(s - t) for s, t in zip(sides, ref))


# --------------------------------------------------------------------------
# inscribed cap domain

def _farthest_from_support_line(
    poly: DiskPolygon, base: Point, u: Tangent
) -> tuple[Point, float]:
    """Region point with the largest signed distance from the geodesic
    through base with direction u (region on the positive side)."""
    g = poly.geometry
    pole = perp(base, u, g)
    best_x: Optional[Point] = None
    best_d = -math.inf
    for v in poly.vertices:
        d = signed_distance_to_geodesic(v, base, u, g)
        if d > best_d:
            best_x, best_d = v, d
    for arc in poly.arcs:
        # interior critical points of the distance lie on the geodesic
        # through the arc center normal to the line: walk the gradient
        try:
            grad = _normalize_tangent(arc.center, pole.x, pole.y, pole.z, g)
        except SpindleError:
            continue
        for sign in (1.0, -1.0):
            direction = Tangent(sign * grad.x, sign * grad.y, sign * grad.z)
            y = exp_map(arc.center, direction, arc.radius, g)
            if not arc.contains_ray_angle(y):
                continue
            d = signed_distance_to_geodesic(y, base, u, g)
            if d > best_d:
                best_x, best_d = y, d
    assert best_x is not None
    return best_x, best_d


def _negate(u: Tangent) -> Tangent:
    return Tangent(-u.x, -u.y, -u.z)


def inscribed_cap_domain(
    poly: DiskPolygon,
) -> tuple[Optional[CapDomain], str, dict]:
    """Rebuild the cap-domain certificate inside a hull.

    Takes the incircle, and at three of its contact points erects the
    supporting geodesic; the farthest hull point from each line yields an
    apex direction, and the apexes sit at distance width - inradius from
    the incenter.  Returns (domain or None, status, details); the domain
    must land inside the hull with area at most the hull's.
    """
    g = poly.geometry
    r = poly.r
    inc = incircle(poly)
    wit = thickness(poly)
    w, rho = wit.value, inc.radius
    if len(inc.contacts) < 3:
        return None, "contacts<3", {}
    if w - rho <= rho + 1e-9:
        return None, "apex-inside-disk", {}
    p = inc.center

    # pair each contact with its supporting arc; keep three spread contacts
    pairs = []
    for i in inc.support:
        c = poly.centers[i]
        t = exp_map(c, log_dir(c, p, g), r, g)
        if all(distance(t, q[0], g) > 1e-9 for q in pairs):
            pairs.append((t, c))
    if len(pairs) < 3:
        return None, "contacts<3", {}
    pairs = pairs[:3]

    apexes = []
    for t, c in pairs:
        nu_in = log_dir(t, c, g)
        u = _negate(perp(t, nu_in, g))  # region side is the positive side
        x_star, h = _farthest_from_support_line(poly, t, u)
        if h < w - 1e-6:
            return None, "strip-under-width", {}
        reach = min(w - rho, distance(p, x_star, g))
        apexes.append(exp_map(p, log_dir(p, x_star, g), reach, g))

    try:
        dom = cap_domain(Circle(p, rho), apexes, r, g)
    except SpindleError as e:
        return None, e.code, {}

    battery = list(dom.apexes)
    for arc in dom.arcs:
        battery.extend((arc.start, arc.midpoint()))
    contained = all(poly.contains(x, tol=1e-6) for x in battery)
    a_poly = area(poly)
    a_dom = area(dom)
    details = {
        "containment": contained,
        "area_margin": a_poly - a_dom,
        "apex_count": len(apexes),
    }
    return dom, "ok", details


# --------------------------------------------------------------------------
# the randomized run

def run_trial(g: Geometry, trial: int, config: VerifyConfig) -> TrialReport:
    gi = list(GEOMETRIES).index(g.name)
    rng = np.random.default_rng((config.seed, gi, trial))
    counts = config.point_counts
    radii = config.radii_for(g.name)
    n = counts[trial % len(counts)]
    r = radii[trial % len(radii)]
    poly = sample_disk_polygon(g, n, r, rng)
    bounds = check_extremal_bounds(poly)
    violations = list(bounds["violations"])
    dom, status, details = inscribed_cap_domain(poly)
    cap_margin = None
    if dom is not None:
        cap_margin = details["area_margin"]
        if not details["containment"]:
            violations.append("cap-not-contained")
        if cap_margin < -1e-9:
            violations.append("cap-area")
    return TrialReport(
        geometry=g.name,
        trial=trial,
        n_points=n,
        r=r,
        width=bounds["width"],
        inradius=bounds["incircle"].radius,
        inradius_bound=bounds["inradius_bound"],
        area=bounds["area"],
        area_bound=bounds["area_bound"],
        margin_inradius=bounds["margin_inradius"],
        margin_area=bounds["margin_area"],
        near_equality=bounds["near_equality"],
        triangle_match=bounds["triangle_match"],
        cap_status=status,
        cap_area_margin=cap_margin,
        violations=tuple(violations),
    )


def run_verification(config: VerifyConfig) -> dict:
    """Run the full battery; the summary dict is JSON-ready and stable
    under re-runs with the same config."""
    summary: dict = {
        "config": {
            "geometries": list(config.geometries),
            "trials": config.trials,
            "seed": config.seed,
        },
        "geometries": {},
        "violations_total": 0,
    }
    for name in config.geometries:
        if name not in GEOMETRIES:
            raise SpindleError("BAD_RANGE", f"unknown geometry {name!r}")
        g = GEOMETRIES[name]
        violations = []
        near = 0
        cap_counts: dict = {}
        min_mr = math.inf
        min_ma = math.inf
        min_cap = math.inf
        for t in range(config.trials):
            rep = run_trial(g, t, config)
            for v in rep.violations:
                violations.append(
                    {
                        "trial": t,
                        "kind": v,
                        "margin_inradius": rep.margin_inradius,
                        "margin_area": rep.margin_area,
                    }
                )
            if rep.near_equality:
                near += 1
            cap_counts[rep.cap_status] = cap_counts.get(rep.cap_status, 0) + 1
            min_mr = min(min_mr, rep.margin_inradius)
            min_ma = min(min_ma, rep.margin_area)
            if rep.cap_area_margin is not None:
                min_cap = min(min_cap, rep.cap_area_margin)
        summary["geometries"][name] = {
            "trials": config.trials,
            "violations": violations,
            "near_equality": near,
            "cap_status_counts": cap_counts,
            "min_margin_inradius": min_mr,
            "min_margin_area": min_ma,
            "min_cap_area_margin": None if math.isinf(min_cap) else min_cap,
        }
        summary["violations_total"] += len(violations)
    return summary


# --------------------------------------------------------------------------
# deterministic sweep

def hexagon_margins(
    g: Geometry, w: float, r: float, fractions: Sequence[float]
) -> list[tuple[float, float]]:
    """Area gap between the six-point hull and the triangle, sampled at
    inradius values rho0 + f*(w/2 - rho0).

    The hull of three apexes plus the three antipodal incircle points is
    the interpolating family between the triangle (f=0) and the disk of
    radius w/2 (f=1); its area must stay above the triangle's everywhere
    in between.  Note the family does not keep minimal width w away from
    f=0: its arcs cut slightly inside the disk B(p, rho), so only the
    area comparison is meaningful.  Returns [(rho, margin), ...].
    """
    rho0 = triangle_inradius(w, r, g)
    a_tri = area(regular_disk_triangle(w, r, g).region)
    out = []
    for f in fractions:
        rho = rho0 + f * (0.5 * w - rho0)
        hexa = regular_disk_hexagon(w, r, rho, g)
        out.append((rho, area(hexa.region) - a_tri))
    return out


HEX_FRACTIONS = tuple(k / 10.0 for k in range(1, 10))


def monotonicity_sweep(
    g: Geometry,
    w_values: Sequence[float],
    r_values: Sequence[float],
    check_hexagon: bool = True,
) -> dict:
    """Tabulate the triangle across a (w, r) grid and check the calculus.

    Rows carry (geometry, w, r, rho0, area, thickness); violations list
    any break of monotonicity (inradius bound must increase in w and
    decrease in r), any analytic partial that disagrees with a central
    difference, a triangle thickness off its nominal width, or a hexagon
    area margin that is not strictly positive on the inradius grid.
    """
    rows = []
    violations = []
    h = 1e-6
    grid: dict = {}
    for w in w_values:
        for r in r_values:
            if not (0.0 < w <= r) or (g.kappa > 0 and r >= math.pi / 2):
                continue
            rho0 = triangle_inradius(w, r, g)
            tri = regular_disk_triangle(w, r, g)
            a = area(tri.region)
            wid = thickness(tri.region).value
            grid[(w, r)] = rho0
            row = {
                "geometry": g.name,
                "w": w,
                "r": r,
                "rho0": rho0,
                "area": a,
                "thickness": wid,
            }
            if abs(wid - w) > 1e-6:
                violations.append(f"triangle width off at w={w} r={r}: {wid}")
            dw, dr = triangle_inradius_partials_checked(w, r, g, h, violations)
            if dw is not None and dw <= 0:
                violations.append(f"w-partial not positive at w={w} r={r}")
            if dr is not None and dr >= 0 and w < r:
                violations.append(f"r-partial not negative at w={w} r={r}")
            if check_hexagon:
                margins = hexagon_margins(g, w, r, HEX_FRACTIONS)
                row["hexagon_min_margin"] = min(m for _, m in margins)
                row["hexagon_margins_increasing"] = all(
                    m2 > m1
                    for (_, m1), (_, m2) in zip(margins, margins[1:])
                )
                for rho, m in margins:
                    if m <= 1e-9:
                        violations.append(
                            f"hexagon margin not positive at w={w} r={r} "
                            f"rho={rho}: {m}"
                        )
            rows.append(row)
    for (w, r), rho0 in grid.items():
        for (w2, r2), rho2 in grid.items():
            if r2 == r and w2 > w and rho2 <= rho0:
                violations.append(f"bound not increasing in w at r={r}")
            if w2 == w and r2 > r and rho2 >= rho0:
                violations.append(f"bound not decreasing in r at w={w}")
    return {"rows": rows, "violations": violations}


def triangle_inradius_partials_checked(
    w: float, r: float, g: Geometry, h: float, violations: list
) -> tuple[Optional[float], Optional[float]]:
    """Analytic partials, cross-checked against central differences when
    the stencil stays inside the domain."""
    dw, dr = triangle_inradius_partials(w, r, g)
    if h < w and w + h < r - 10.0 * h:
        num_w = (triangle_inradius(w + h, r, g) - triangle_inradius(w - h, r, g)) / (2 * h)
        if abs(num_w - dw) > 1e-5:
            violations.append(
                f"w-partial mismatch at w={w} r={r}: {dw} vs {num_w}"
            )
    if w < r - 10.0 * h and (g.kappa <= 0 or r + h < math.pi / 2):
        num_r = (triangle_inradius(w, r + h, g) - triangle_inradius(w, r - h, g)) / (2 * h)
        if abs(num_r - dr) > 1e-5:
            violations.append(
                f"r-partial mismatch at w={w} r={r}: {dr} vs {num_r}"
            )
    return dw, dr


# --------------------------------------------------------------------------
# proof-step reproductions

def symmetric_cap_domain(dom: CapDomain) -> Optional[CapDomain]:
    """Rebuild a three-cap domain with its caps rotated to directions
    2pi/3 apart (the first apex keeps its direction, all apex distances
    are preserved).  Returns None when the rotated caps would overlap,
    which cannot happen for three congruent caps that fit disjointly."""
    if len(dom.apexes) != 3:
        return None
    g = dom.geometry
    p = dom.center
    base = angle_coord(p, dom.apexes[0], g)
    apexes = []
    for k, q in enumerate(dom.apexes):
        d = distance(p, q, g)
        u = tangent_from_angle(p, base + 2.0 * math.pi * k / 3.0, g)
        apexes.append(exp_map(p, u, d, g))
    try:
        return cap_domain(Circle(p, dom.rho), apexes, dom.r, g)
    except SpindleError:
        return None


def cap_rotation_check(
    g: Geometry, trials: int, seed: int = 0, r: float = 1.0
) -> dict:
    """Random admissible three-cap domains, rotated to the symmetric
    position: the area must not move.

    The caps sit over disjoint stretches of the disk boundary in both
    configurations, so each contributes its area independently of where
    around the disk it sits.  Returns max |area difference| and any
    violations beyond 1e-9.
    """
    gi = list(GEOMETRIES).index(g.name)
    violations = []
    worst = 0.0
    built = 0
    attempt = 0
    while built < trials and attempt < 50 * trials:
        rng = np.random.default_rng((seed, gi, attempt))
        attempt += 1
        rho = r * rng.uniform(0.15, 0.4)
        # keep each cap footprint under ~pi/4 so three caps have room:
        # beyond d_slim the tangent points spread too far around the disk
        # (Euclidean bound, a serviceable proxy at these curvatures)
        m = r - rho
        d_slim = 0.5 * (math.sqrt(max(4 * r * r - 2 * m * m, 0.0)) - math.sqrt(2) * m)
        if d_slim <= rho:
            continue
        dists = rho + (d_slim - rho) * rng.uniform(0.1, 0.9, 3)
        angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, 3))
        gaps = np.diff(np.concatenate([angles, [angles[0] + 2 * math.pi]]))
        if np.min(gaps) < 1.65:
            continue  # crowded directions rarely admit disjoint caps
        p = origin(g)
        apexes = [
            exp_map(p, tangent_from_angle(p, float(t), g), float(d), g)
            for t, d in zip(angles, dists)
        ]
        try:
            dom = cap_domain(Circle(p, rho), apexes, r, g)
        except SpindleError:
            continue
        sym = symmetric_cap_domain(dom)
        if sym is None:
            continue
        built += 1
        diff = abs(area(dom) - area(sym))
        worst = max(worst, diff)
        if diff > 1e-9:
            violations.append(f"attempt {attempt - 1}: area moved by {diff}")
    return {"built": built, "max_diff": worst, "violations": violations}


def distance_monotonicity_check(
    g: Geometry, pairs: int, seed: int = 0, steps: int = 8
) -> dict:
    """Two overlapping circles of equal radius: walking the boundary of
    the first from an intersection point toward the point diametrically
    away from the second center, the gap to the second disk must grow
    strictly.

    Checks the gap d(c2, x) - r at `steps` stations along that quarter
    of boundary for `pairs` random configurations.  Any non-increasing
    consecutive pair is a violation.
    """
    gi = list(GEOMETRIES).index(g.name)
    violations = []
    for k in range(pairs):
        rng = np.random.default_rng((seed, gi, k))
        r = float(rng.uniform(0.5, 1.2))
        c1 = origin(g)
        sep = r * float(rng.uniform(0.1, 0.9))
        direction = tangent_from_angle(c1, float(rng.uniform(0, 2 * math.pi)), g)
        c2 = exp_map(c1, direction, sep, g)
        hits = circle_circle_intersection(Circle(c1, r), Circle(c2, r), g)
        if len(hits) != 2:
            continue
        f = hits[0]
        v = exp_map(c1, _negate(log_dir(c1, c2, g)), r, g)
        phi_f = angle_coord(c1, f, g)
        phi_v = angle_coord(c1, v, g)
        delta = (phi_v - phi_f) % (2.0 * math.pi)
        if delta > math.pi:
            delta -= 2.0 * math.pi
        gaps = []
        for s in np.linspace(0.0, 1.0, steps):
            x = exp_map(
                c1, tangent_from_angle(c1, phi_f + float(s) * delta, g), r, g
            )
            gaps.append(distance(c2, x, g) - r)
        for a, b in zip(gaps, gaps[1:]):
            if not b > a:
                violations.append(f"pair {k}: gap step {a} -> {b}")
                break
    return {"pairs": pairs, "violations": violations}
