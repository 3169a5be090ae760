import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate, stats

from hetnet.exceptions import DomainError
from hetnet.geometry import (
    CellGeometry,
    Point2D,
    f1_cdf,
    f1_pdf,
    nearest_macro_distance,
    nearest_macro_distances,
    point_from_uniforms,
    sample_user_position,
    sample_user_positions,
    sector_union_area,
)
from hetnet.stochastic import derive_stream

SQRT3 = math.sqrt(3.0)


def test_triangle_is_equilateral():
    g = CellGeometry(3.7)
    v = g.as_array()
    for i, j in [(0, 1), (1, 2), (0, 2)]:
        assert math.isclose(np.linalg.norm(v[i] - v[j]), 3.7, rel_tol=1e-12)
    a, b = v[1] - v[0], v[2] - v[0]
    shoelace = 0.5 * abs(a[0] * b[1] - a[1] * b[0])
    assert math.isclose(shoelace, SQRT3 * 3.7**2 / 4, rel_tol=1e-12)
    assert math.isclose(g.area, shoelace, rel_tol=1e-12)


@pytest.mark.parametrize("d", [0.0, -1.0, math.inf])
def test_bad_radius(d):
    with pytest.raises(DomainError):
        CellGeometry(d)


def test_sector_union_area_examples():
    assert sector_union_area(0.2, 1.0) == pytest.approx(math.pi * 0.04 / 2, rel=1e-14)
    assert sector_union_area(0.5, 1.0) == pytest.approx(math.pi / 8, rel=1e-14)
    assert sector_union_area(1 / SQRT3, 1.0) == pytest.approx(SQRT3 / 4, rel=1e-12)


def test_sector_union_area_branch_continuity():
    below = sector_union_area(0.5 - 1e-12, 1.0)
    above = sector_union_area(0.5 + 1e-12, 1.0)
    assert above == pytest.approx(below, rel=1e-9)


@pytest.mark.parametrize("r", [-0.1, 0.6])
def test_sector_union_area_domain(r):
    with pytest.raises(DomainError):
        sector_union_area(r, 1.0)


def test_f1_cdf_examples():
    d = 7.0
    assert f1_cdf(d / SQRT3, d) == pytest.approx(1.0, abs=1e-14)
    assert f1_cdf(0.25 * d, d) == pytest.approx(0.22672492052927723, rel=1e-14)
    assert f1_cdf(0.5 * d, d) == pytest.approx(0.9068996821171089, rel=1e-14)
    assert f1_cdf(-1.0, d) == 0.0
    assert f1_cdf(d, d) == 1.0


def test_f1_cdf_branches_agree_at_half():
    d = 1.0
    near = 2 * math.pi / SQRT3 * 0.25
    # outer branch evaluated by hand at r = d/2: arccos(1) = 0, sqrt term 0
    far = near - (4 * SQRT3 * 0.25 * math.acos(1.0) - math.sqrt(12 * 0.25 - 3) / d)
    assert far == pytest.approx(near, rel=1e-12)
    assert f1_cdf(0.5 + 1e-13, d) == pytest.approx(near, rel=1e-12)


def test_cdf_times_area_is_sector_area():
    d = 2.5
    for r in np.linspace(0.0, d / SQRT3, 57):
        assert f1_cdf(r, d) * SQRT3 * d * d / 4 == pytest.approx(sector_union_area(r, d), rel=1e-12, abs=1e-15)


def test_f1_cdf_monotone_and_continuous():
    d = 1.0
    r = np.linspace(0, d / SQRT3, 20001)
    F = f1_cdf(r, d)
    assert np.all(np.diff(F) >= -1e-15)
    assert np.max(np.abs(np.diff(F))) < 1e-3


@given(
    r=st.floats(0.0, 1 / SQRT3),
    c=st.floats(1e-3, 1e3),
)
def test_f1_cdf_scale_invariance(r, c):
    assert f1_cdf(c * r, c * 1.0) == pytest.approx(f1_cdf(r, 1.0), rel=1e-10, abs=1e-14)


def test_f1_pdf_small_r_slope():
    d = 3.0
    r = 1e-6
    assert f1_pdf(r, d) == pytest.approx(4 * math.pi * r / (SQRT3 * d * d), rel=1e-12)


def test_f1_pdf_integrates_to_one():
    d = 1.0
    lo = integrate.quad(f1_pdf, 0, d / 2, args=(d,), epsabs=1e-13, epsrel=1e-13)[0]
    hi = integrate.quad(f1_pdf, d / 2, d / SQRT3, args=(d,), epsabs=1e-13, epsrel=1e-13)[0]
    assert lo + hi == pytest.approx(1.0, abs=1e-9)


def test_f1_pdf_matches_finite_differences():
    d = 1.0
    h = 1e-6
    r = 0.55 * d
    fd = (f1_cdf(r + h, d) - f1_cdf(r - h, d)) / (2 * h)
    assert f1_pdf(r, d) == pytest.approx(fd, rel=1e-6)
    for r in np.linspace(0.01, d / SQRT3 - 0.01, 100):
        fd = (f1_cdf(r + h, d) - f1_cdf(r - h, d)) / (2 * h)
        assert abs(f1_pdf(r, d) - fd) <= 1e-6


@pytest.mark.parametrize("r", [0.0, 1 / SQRT3, 1.0])
def test_f1_pdf_domain(r):
    with pytest.raises(DomainError):
        f1_pdf(r, 1.0)


def test_point_from_uniforms_corners(unit_geom):
    v1, v2, v3 = unit_geom.vertices
    assert point_from_uniforms(unit_geom, 0.0, 0.37) == v1
    assert point_from_uniforms(unit_geom, 1.0, 0.0) == v2
    got = point_from_uniforms(unit_geom, 1.0, 1.0)
    assert got.x == pytest.approx(v3.x) and got.y == pytest.approx(v3.y)


def test_sample_user_position_is_deterministic(unit_geom):
    a = sample_user_position(unit_geom, derive_stream(1, 2))
    b = sample_user_position(unit_geom, derive_stream(1, 2))
    assert a == b and isinstance(a, Point2D)


def test_sample_mean_is_centroid(unit_geom):
    n = 1_000_000
    pts = sample_user_positions(unit_geom, derive_stream(99, 0), n)
    se = pts.std(axis=0, ddof=1) / math.sqrt(n)
    c = unit_geom.centroid
    assert abs(pts[:, 0].mean() - c.x) < 3 * se[0]
    assert abs(pts[:, 1].mean() - c.y) < 3 * se[1]


def test_nearest_macro_distance_examples(unit_geom):
    assert nearest_macro_distance(unit_geom.vertices[0], unit_geom) == 0.0
    assert nearest_macro_distance(unit_geom.centroid, unit_geom) == pytest.approx(1 / SQRT3, rel=1e-12)


@pytest.mark.parametrize("p", [(0.5, -0.01), (2.0, 0.1), (0.0, 0.5)])
def test_nearest_macro_distance_rejects_outside(unit_geom, p):
    with pytest.raises(DomainError):
        nearest_macro_distance(p, unit_geom)


def test_nearest_macro_distance_tolerates_edge_rounding(unit_geom):
    assert nearest_macro_distance((0.5, -1e-12), unit_geom) == pytest.approx(0.5)


def test_sampled_distances_follow_f1(unit_geom):
    n = 100_000
    pts = sample_user_positions(unit_geom, derive_stream(5, 0), n)
    r = nearest_macro_distances(pts, unit_geom)
    assert r.max() <= 1 / SQRT3 + 1e-12
    ks = stats.kstest(r, lambda x: f1_cdf(x, 1.0)).statistic
    assert ks < 1.63 / math.sqrt(n)


def test_vectorised_distance_matches_scalar(unit_geom):
    pts = sample_user_positions(unit_geom, derive_stream(6, 0), 50)
    vec = nearest_macro_distances(pts, unit_geom)
    for p, r in zip(pts, vec):
        assert nearest_macro_distance(tuple(p), unit_geom) == pytest.approx(r, rel=1e-14)
