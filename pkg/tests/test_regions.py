"""Region construction: lenses, ball hulls, cap domains, serialization."""

import json
import math
import os

import numpy as np
import pytest

from spindle.geometry import (
    EUCLIDEAN,
    GEOMETRIES,
    HYPERBOLIC,
    SPHERICAL,
    Circle,
    Point,
    SpindleError,
    distance,
    embed,
    exp_map,
    from_polar,
    log_dir,
    midpoint,
    origin,
    tangent_from_angle,
)
from spindle.regions import (
    Arc,
    CapDomain,
    DiskPolygon,
    ball_hull,
    cap_domain,
    load_region,
    r_segment,
    save_region,
)

ALL = tuple(GEOMETRIES.values())
TWO_PI = 2.0 * math.pi


def random_point(g, rng, scale=1.0):
    return from_polar(g, rng.uniform(0.0, TWO_PI), scale * rng.uniform(0.0, 1.0))


# --------------------------------------------------------------------------
# lens

def test_r_segment_shape():
    for g in ALL:
        x = from_polar(g, 0.2, 0.4)
        y = from_polar(g, 2.9, 0.55)
        lens = r_segment(x, y, 1.0, g)
        assert len(lens.arcs) == 2
        assert lens.vertices in ((x, y), (y, x))
        for a in lens.arcs:
            assert a.radius == 1.0
            # every supporting circle passes through both endpoints
            assert distance(a.center, x, g) == pytest.approx(1.0, abs=1e-9)
            assert distance(a.center, y, g) == pytest.approx(1.0, abs=1e-9)
        assert lens.contains(midpoint(x, y, g))
        assert lens.contains(x) and lens.contains(y)
        # a point clearly past x on the line through y stays outside
        far = exp_map(y, log_dir(y, x, g), distance(x, y, g) + 0.3, g)
        assert not lens.contains(far, tol=1e-9)


def test_r_segment_tangent_pair_is_full_disk_slice():
    # points exactly 2r apart: the lens is the intersection of two tangent
    # disks, both arcs are half circles around the midpoint
    for g in ALL:
        r = 0.5
        x = from_polar(g, 1.0, 0.1)
        u = tangent_from_angle(x, 0.8, g)
        y = exp_map(x, u, 2.0 * r, g)
        lens = r_segment(x, y, r, g)
        m = midpoint(x, y, g)
        for a in lens.arcs:
            assert distance(a.center, m, g) < 1e-9
            assert a.extent == pytest.approx(math.pi, abs=1e-6)


def test_r_segment_errors():
    g = EUCLIDEAN
    p = origin(g)
    with pytest.raises(SpindleError) as err:
        r_segment(p, p, 1.0, g)
    assert err.value.code == "DEGENERATE_POINT"
    with pytest.raises(SpindleError) as err:
        r_segment(p, embed(g, 3.0, 0.0), 1.0, g)
    assert err.value.code == "TOO_FAR"


# --------------------------------------------------------------------------
# ball hull

def test_ball_hull_contains_inputs():
    rng = np.random.default_rng(201)
    for g in ALL:
        for _ in range(60):
            n = int(rng.integers(2, 10))
            pts = [random_point(g, rng, scale=0.7) for _ in range(n)]
            try:
                hull = ball_hull(pts, 1.0, g)
            except SpindleError as e:
                assert e.code in ("DEGENERATE_POINT", "NOT_ENCLOSABLE")
                continue
            for p in pts:
                assert hull.contains(p, tol=1e-9)
            # boundary arcs all carry the hull radius
            assert all(a.radius == pytest.approx(1.0) for a in hull.arcs)


def test_ball_hull_supporting_disks_cover_everything():
    # each arc's disk is a supporting disk: it contains every input point
    rng = np.random.default_rng(202)
    for g in ALL:
        pts = [random_point(g, rng, scale=0.6) for _ in range(9)]
        hull = ball_hull(pts, 1.0, g)
        for a in hull.arcs:
            assert all(distance(a.center, p, g) <= 1.0 + 1e-9 for p in pts)


def test_ball_hull_vertices_are_input_points():
    rng = np.random.default_rng(203)
    for g in ALL:
        pts = [random_point(g, rng, scale=0.5) for _ in range(8)]
        hull = ball_hull(pts, 1.0, g)
        for v in hull.vertices:
            assert min(distance(v, p, g) for p in pts) < 1e-9


def test_ball_hull_idempotent():
    rng = np.random.default_rng(204)
    for g in ALL:
        pts = [random_point(g, rng, scale=0.6) for _ in range(10)]
        hull = ball_hull(pts, 1.0, g)
        again = ball_hull(list(hull.vertices), 1.0, g)
        assert len(again.arcs) == len(hull.arcs)
        va = sorted((round(v.x, 9), round(v.y, 9)) for v in hull.vertices)
        vb = sorted((round(v.x, 9), round(v.y, 9)) for v in again.vertices)
        assert va == vb


def test_ball_hull_order_independent():
    rng = np.random.default_rng(205)
    for g in ALL:
        pts = [random_point(g, rng, scale=0.6) for _ in range(7)]
        hull = ball_hull(pts, 1.0, g)
        for _ in range(5):
            perm = [pts[i] for i in rng.permutation(len(pts))]
            other = ball_hull(perm, 1.0, g)
            va = sorted((round(v.x, 9), round(v.y, 9)) for v in hull.vertices)
            vb = sorted((round(v.x, 9), round(v.y, 9)) for v in other.vertices)
            assert va == vb


def test_ball_hull_interior_points_dropped():
    g = EUCLIDEAN
    corners = [embed(g, x, y) for x, y in [(0, 0), (0.8, 0), (0.8, 0.6), (0, 0.6)]]
    inside = [embed(g, 0.4, 0.3), embed(g, 0.2, 0.2), embed(g, 0.6, 0.45)]
    hull = ball_hull(corners + inside, 1.0, g)
    assert len(hull.vertices) == 4
    for v in hull.vertices:
        assert min(distance(v, c, g) for c in corners) < 1e-9


def test_ball_hull_two_points_is_lens():
    for g in ALL:
        x = from_polar(g, 0.5, 0.3)
        y = from_polar(g, 3.5, 0.4)
        hull = ball_hull([x, y], 0.9, g)
        lens = r_segment(x, y, 0.9, g)
        assert len(hull.arcs) == 2
        ha = sorted(round(a.extent, 9) for a in hull.arcs)
        la = sorted(round(a.extent, 9) for a in lens.arcs)
        assert ha == la


def test_ball_hull_collinear_input():
    # three points on one geodesic hull to the lens of the extremes
    for g in ALL:
        p = from_polar(g, 0.7, 0.5)
        u = tangent_from_angle(p, 1.3, g)
        a = exp_map(p, u, 0.3, g)
        b = exp_map(p, u, 0.9, g)
        hull = ball_hull([p, a, b], 1.0, g)
        assert len(hull.vertices) == 2
        got = sorted(round(distance(p, v, g), 9) for v in hull.vertices)
        assert got == [0.0, pytest.approx(0.9, abs=1e-9)]


def test_ball_hull_cocircular_points_keep_everything():
    rng = np.random.default_rng(206)
    for g in ALL:
        # n points on a circle of radius well below r: all are vertices
        angles = np.sort(rng.uniform(0.0, TWO_PI, size=8))
        pts = [from_polar(g, float(t), 0.45) for t in angles]
        hull = ball_hull(pts, 1.0, g)
        assert len(hull.vertices) == 8


def test_ball_hull_near_circumradius_marks_degenerate():
    # enclosing radius within tolerance of r: hull pinches to a point/lens tip
    g = EUCLIDEAN
    pts = [embed(g, math.cos(t), math.sin(t)) for t in (0.0, 2.1, 4.2)]
    hull = ball_hull(pts, 1.0 + 1e-13, g)
    assert hull.boundary_degenerate


def test_ball_hull_errors():
    g = EUCLIDEAN
    with pytest.raises(SpindleError) as err:
        ball_hull([], 1.0, g)
    assert err.value.code == "EMPTY"
    p = embed(g, 0.1, 0.2)
    with pytest.raises(SpindleError) as err:
        ball_hull([p, Point(p.x, p.y, 1.0)], 1.0, g)
    assert err.value.code == "DEGENERATE_POINT"
    with pytest.raises(SpindleError) as err:
        ball_hull([origin(g), embed(g, 3.0, 0.0), embed(g, 0.0, 3.0)], 1.0, g)
    assert err.value.code == "NOT_ENCLOSABLE"


def test_arc_point_at_endpoints_and_midpoint():
    rng = np.random.default_rng(207)
    for g in ALL:
        pts = [random_point(g, rng, scale=0.6) for _ in range(6)]
        hull = ball_hull(pts, 1.0, g)
        for a in hull.arcs:
            assert distance(a.point_at(0.0), a.start, g) < 1e-12
            assert distance(a.point_at(a.extent), a.end, g) < 1e-9
            mid = a.point_at(0.5 * a.extent)
            assert distance(a.center, mid, g) == pytest.approx(a.radius, abs=1e-12)
            assert a.contains_ray_angle(mid)


# --------------------------------------------------------------------------
# cap domains

def build_cap_domain(g, rho=0.3, r=1.0, dists=(0.35, 0.38, 0.42),
                     angles=(0.0, 2.268928027592628, 4.1887902047863905)):
    o = origin(g)
    apexes = [exp_map(o, tangent_from_angle(o, th, g), d, g)
              for th, d in zip(angles, dists)]
    return cap_domain(Circle(o, rho), apexes, r, g)


def test_cap_domain_structure():
    for g in ALL:
        dom = build_cap_domain(g)
        assert len(dom.apexes) == 3
        assert len(dom.cap_disks) == 3
        assert len(dom.cap_wedges) == 3
        # 2 cap arcs per apex + a disk arc between consecutive caps
        assert len(dom.arcs) == 9
        o = origin(g)
        for (cl, cr), apex in zip(dom.cap_disks, dom.apexes):
            for c in (cl, cr):
                # tangent circles: touch the core disk internally, pass
                # through the apex
                assert distance(o, c.center, g) == pytest.approx(dom.r - dom.rho, abs=1e-9)
                assert distance(c.center, apex, g) == pytest.approx(dom.r, abs=1e-9)


def test_cap_domain_membership():
    rng = np.random.default_rng(208)
    for g in ALL:
        dom = build_cap_domain(g)
        o = origin(g)
        assert dom.contains(o)
        for apex in dom.apexes:
            assert dom.contains(apex)
            # just beyond an apex is outside
            beyond = exp_map(o, log_dir(o, apex, g), distance(o, apex, g) + 0.05, g)
            assert not dom.contains(beyond, tol=1e-9)
        # points of the core disk are all inside
        for _ in range(50):
            x = from_polar(g, rng.uniform(0, TWO_PI), rng.uniform(0, dom.rho))
            assert dom.contains(x)
        # boundary arcs lie on the boundary: on arc points, containment holds
        for a in dom.arcs:
            assert dom.contains(a.point_at(0.5 * a.extent), tol=1e-9)


def test_cap_domain_no_apexes_is_disk():
    for g in ALL:
        dom = cap_domain(Circle(origin(g), 0.4), [], 1.0, g)
        assert dom.apexes == ()
        assert len(dom.arcs) == 1
        assert dom.arcs[0].extent == pytest.approx(TWO_PI)


def test_cap_domain_errors():
    g = HYPERBOLIC
    o = origin(g)
    with pytest.raises(SpindleError) as err:
        cap_domain(Circle(o, 1.2), [], 1.0, g)
    assert err.value.code == "BAD_RANGE"
    with pytest.raises(SpindleError) as err:
        cap_domain(Circle(o, 0.3), [from_polar(g, 0.0, 0.2)], 1.0, g)
    assert err.value.code == "DEGENERATE"
    with pytest.raises(SpindleError) as err:
        cap_domain(Circle(o, 0.3), [from_polar(g, 0.0, 1.9)], 1.0, g)
    assert err.value.code == "APEX_TOO_FAR"
    near = [from_polar(g, 0.0, 0.8), from_polar(g, 0.1, 0.8)]
    with pytest.raises(SpindleError) as err:
        cap_domain(Circle(o, 0.3), near, 1.0, g)
    assert err.value.code == "CAP_OVERLAP"


# --------------------------------------------------------------------------
# serialization

def test_disk_polygon_round_trip(tmp_path):
    rng = np.random.default_rng(209)
    for g in ALL:
        pts = [random_point(g, rng, scale=0.6) for _ in range(6)]
        hull = ball_hull(pts, 1.0, g)
        path = os.fspath(tmp_path / f"hull_{g.name}.json")
        save_region(hull, path)
        back = load_region(path)
        assert isinstance(back, DiskPolygon)
        assert back.geometry is g
        assert back.r == hull.r
        assert len(back.arcs) == len(hull.arcs)
        for a, b in zip(hull.arcs, back.arcs):
            assert distance(a.start, b.start, g) < 1e-12
            assert a.extent == pytest.approx(b.extent, abs=1e-9)


def test_cap_domain_round_trip(tmp_path):
    for g in ALL:
        dom = build_cap_domain(g)
        path = os.fspath(tmp_path / f"dom_{g.name}.json")
        save_region(dom, path)
        back = load_region(path)
        assert isinstance(back, CapDomain)
        assert back.rho == pytest.approx(dom.rho)
        assert len(back.arcs) == len(dom.arcs)
        assert len(back.cap_wedges) == len(dom.cap_wedges)
        for (lo, hi), (lo2, hi2) in zip(dom.cap_wedges, back.cap_wedges):
            assert lo == pytest.approx(lo2, abs=1e-12)
            assert hi == pytest.approx(hi2, abs=1e-12)


def test_load_region_rejects_malformed(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"type": "mystery"}))
    with pytest.raises(SpindleError) as err:
        load_region(os.fspath(bad))
    assert err.value.code == "MALFORMED_BOUNDARY"
    bad.write_text(json.dumps({"type": "disk_polygon", "geometry": "euclidean", "r": 1.0}))
    with pytest.raises(SpindleError) as err:
        load_region(os.fspath(bad))
    assert err.value.code == "MALFORMED_BOUNDARY"
    bad.write_text(json.dumps({
        "type": "disk_polygon", "geometry": "euclidean", "r": 1.0,
        "centers": [[0.0, 0.0, 1.0]], "vertices": [[0.2, 0.0, 1.0], [0.0, 0.2, 1.0]],
    }))
    with pytest.raises(SpindleError):
        load_region(os.fspath(bad))
