"""Randomized verification harness: sampling, bounds, sweeps, proof probes."""

import math

import numpy as np
import pytest

from spindle.extremal import regular_disk_triangle, triangle_inradius
from spindle.geometry import GEOMETRIES, EUCLIDEAN, SpindleError, distance
from spindle.harness import (
    HEX_FRACTIONS,
    VerifyConfig,
    cap_rotation_check,
    check_extremal_bounds,
    distance_monotonicity_check,
    hexagon_margins,
    inscribed_cap_domain,
    monotonicity_sweep,
    run_verification,
    sample_disk_polygon,
    symmetric_cap_domain,
)
from spindle.measure import area, incircle, thickness
from spindle.regions import CapDomain

ALL = tuple(GEOMETRIES.values())


def test_sample_disk_polygon_deterministic():
    for g in ALL:
        a = sample_disk_polygon(g, 7, 1.0, np.random.default_rng(42))
        b = sample_disk_polygon(g, 7, 1.0, np.random.default_rng(42))
        assert len(a.arcs) == len(b.arcs)
        for x, y in zip(a.vertices, b.vertices):
            assert distance(x, y, g) == 0.0
        c = sample_disk_polygon(g, 7, 1.0, np.random.default_rng(43))
        va = sorted(round(v.x, 12) for v in a.vertices)
        vc = sorted(round(v.x, 12) for v in c.vertices)
        assert va != vc


def test_sample_disk_polygon_respects_radius():
    rng = np.random.default_rng(401)
    for g in ALL:
        for _ in range(20):
            poly = sample_disk_polygon(g, int(rng.integers(2, 13)), 1.0, rng)
            assert poly.r == 1.0
            assert all(a.radius == 1.0 for a in poly.arcs)
            assert 2 <= len(poly.vertices) <= 12


def test_check_extremal_bounds_fields_consistent():
    rng = np.random.default_rng(402)
    for g in ALL:
        poly = sample_disk_polygon(g, 8, 1.0, rng)
        rep = check_extremal_bounds(poly)
        w = thickness(poly).value
        assert rep["width"] == pytest.approx(w, abs=1e-12)
        assert rep["inradius_bound"] == pytest.approx(
            triangle_inradius(min(w, poly.r), poly.r, g), abs=1e-12
        )
        tri = regular_disk_triangle(min(w, poly.r), poly.r, g)
        assert rep["area_bound"] == pytest.approx(area(tri.region), rel=1e-12)
        assert rep["margin_inradius"] == pytest.approx(
            rep["incircle"].radius - rep["inradius_bound"], abs=1e-12
        )
        assert rep["margin_area"] == pytest.approx(
            rep["area"] - rep["area_bound"], abs=1e-12
        )
        assert rep["violations"] == []


def test_triangle_itself_sits_on_both_bounds():
    # the extremal body: both margins vanish and the report flags it
    for g in ALL:
        tri = regular_disk_triangle(0.8, 1.2, g)
        rep = check_extremal_bounds(tri.region)
        assert abs(rep["margin_inradius"]) < 1e-9
        assert abs(rep["margin_area"]) < 1e-9
        assert rep["near_equality"]
        assert rep["violations"] == []


def test_near_disk_hull_has_comfortable_margins():
    # a hull of many cocircular points is close to a disk: far from extremal
    from spindle.geometry import from_polar
    from spindle.regions import ball_hull

    for g in ALL:
        pts = [from_polar(g, 2.0 * math.pi * k / 24.0, 0.35) for k in range(24)]
        poly = ball_hull(pts, 1.0, g)
        rep = check_extremal_bounds(poly)
        assert rep["margin_inradius"] > 0.01
        assert rep["margin_area"] > 0.01
        assert not rep["near_equality"]


def test_lens_corpus_runs_clean():
    # two-point hulls exercise the degenerate end of the sampler
    cfg = VerifyConfig(geometries=("euclidean", "hyperbolic", "spherical"),
                       trials=30, seed=7, point_counts=(2,))
    rep = run_verification(cfg)
    assert rep["violations_total"] == 0
    for name in cfg.geometries:
        assert rep["geometries"][name]["trials"] == 30


def test_run_verification_deterministic():
    cfg = VerifyConfig(geometries=("hyperbolic",), trials=25, seed=11)
    a = run_verification(cfg)
    b = run_verification(cfg)
    assert a == b
    ga = a["geometries"]["hyperbolic"]
    assert ga["violations"] == []
    assert ga["min_margin_inradius"] > 0.0
    assert ga["min_margin_area"] > 0.0


def test_run_verification_small_batch_all_geometries():
    cfg = VerifyConfig(trials=50, seed=3)
    rep = run_verification(cfg)
    assert rep["violations_total"] == 0
    for name in ("euclidean", "hyperbolic", "spherical"):
        body = rep["geometries"][name]
        assert body["trials"] == 50
        counts = body["cap_status_counts"]
        assert sum(counts.values()) == 50
        assert counts.get("ok", 0) > 0


def test_run_verification_rejects_unknown_geometry():
    with pytest.raises(SpindleError) as err:
        run_verification(VerifyConfig(geometries=("flatland",), trials=1))
    assert err.value.code == "BAD_RANGE"


def test_inscribed_cap_domain_battery():
    rng = np.random.default_rng(403)
    oks = 0
    for g in ALL:
        for _ in range(40):
            poly = sample_disk_polygon(g, int(rng.integers(3, 13)), 1.0, rng)
            dom, status, details = inscribed_cap_domain(poly)
            if status != "ok":
                assert dom is None
                continue
            oks += 1
            assert isinstance(dom, CapDomain)
            inc = incircle(poly)
            assert dom.rho == pytest.approx(inc.radius, abs=1e-12)
            assert dom.r == poly.r
            assert details["containment"]
            assert details["area_margin"] >= -1e-9
            assert area(dom) <= area(poly) + 1e-9
    assert oks > 30


def test_cap_rotation_preserves_area():
    for g in ALL:
        out = cap_rotation_check(g, trials=25, seed=5)
        assert out["built"] == 25
        assert out["violations"] == []
        assert out["max_diff"] < 1e-9


def test_symmetric_cap_domain_area_direct():
    from spindle.geometry import Circle, exp_map, origin, tangent_from_angle
    from spindle.regions import cap_domain

    for g in ALL:
        o = origin(g)
        apexes = [
            exp_map(o, tangent_from_angle(o, th, g), d, g)
            for th, d in zip((0.2, 2.4, 4.3), (0.36, 0.40, 0.38))
        ]
        dom = cap_domain(Circle(o, 0.3), apexes, 1.0, g)
        sym = symmetric_cap_domain(dom)
        assert sym is not None
        assert area(sym) == pytest.approx(area(dom), abs=1e-9)
        # the symmetrized apexes really are a third of a turn apart
        from spindle.geometry import angle_coord

        angles = sorted(angle_coord(o, q, g) for q in sym.apexes)
        gap1 = angles[1] - angles[0]
        gap2 = angles[2] - angles[1]
        assert gap1 == pytest.approx(2.0 * math.pi / 3.0, abs=1e-9)
        assert gap2 == pytest.approx(2.0 * math.pi / 3.0, abs=1e-9)


def test_distance_monotonicity_along_far_arc():
    for g in ALL:
        out = distance_monotonicity_check(g, pairs=200, seed=2)
        assert out["pairs"] == 200
        assert out["violations"] == []


def test_hexagon_margins_positive_and_increasing():
    for g in ALL:
        for w, r in ((0.8, 1.2), (0.6, 0.9)):
            rows = hexagon_margins(g, w, r, HEX_FRACTIONS)
            assert len(rows) == len(HEX_FRACTIONS)
            margins = [m for _, m in rows]
            assert all(m > 1e-9 for m in margins)
            assert all(a < b for a, b in zip(margins, margins[1:]))
            rho0 = triangle_inradius(w, r, g)
            for (rho, _), f in zip(rows, HEX_FRACTIONS):
                assert rho == pytest.approx(rho0 + f * (0.5 * w - rho0), abs=1e-12)


def test_hexagon_family_loses_width_away_from_rho0():
    # regression pin: the six-arc family is only width-w at rho = rho0.
    # the plateau between opposite arcs dips once rho grows, so the sweep
    # checks area margins, never width preservation
    from spindle.extremal import regular_disk_hexagon

    hexa = regular_disk_hexagon(1.0, 2.0, 0.45, EUCLIDEAN)
    assert thickness(hexa.region).value == pytest.approx(0.9508448173783606, abs=1e-9)


def test_monotonicity_sweep_clean_and_structured():
    for g in ALL:
        out = monotonicity_sweep(g, (0.5, 0.7, 0.9), (1.1, 1.3), check_hexagon=True)
        assert out["violations"] == []
        assert len(out["rows"]) == 6
        for row in out["rows"]:
            assert row["geometry"] == g.name
            assert row["thickness"] == pytest.approx(row["w"], abs=1e-6)
            assert row["hexagon_min_margin"] > 1e-9
            assert row["hexagon_margins_increasing"]
        # rho0 grows along w at fixed r
        by_r: dict = {}
        for row in out["rows"]:
            by_r.setdefault(row["r"], []).append((row["w"], row["rho0"]))
        for rows in by_r.values():
            rows.sort()
            assert all(a[1] < b[1] for a, b in zip(rows, rows[1:]))


def test_monotonicity_sweep_without_hexagons():
    out = monotonicity_sweep(EUCLIDEAN, (0.6,), (1.2,), check_hexagon=False)
    assert out["violations"] == []
    assert "hexagon_min_margin" not in out["rows"][0]
