import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import quaternion_matrix, unit_quaternions
from pdw_tiling.sphere import (DegenerateTriangle, GeodesicArc, OrthogonalTransform,
                               RankDeficient, SphericalPoint, angle_from_sides, arcs_cross,
                               corner_angle, cos_side, fit_transform, geodesic_distance,
                               triangle_area, triangle_exists)

PROPS = settings(max_examples=1000, deadline=None)

A = math.acos(1 / 3)
B = math.acos(-5 / 9)
ALPHA = math.acos(-1 / (2 * math.sqrt(7)))
PHI = math.acos(13 / 14)

colat = st.floats(0.0, math.pi, allow_nan=False)
lon = st.floats(-10.0, 10.0, allow_nan=False)
points = st.builds(SphericalPoint, colat, lon)


def test_point_normalisation():
    assert SphericalPoint(0.3, -0.5).longitude == pytest.approx(2 * math.pi - 0.5)
    assert SphericalPoint(0.0, 1.2).longitude == 0.0
    assert SphericalPoint(math.pi, 1.2).longitude == 0.0
    with pytest.raises(ValueError):
        SphericalPoint(-0.1, 0.0)


@PROPS
@given(points)
def test_xyz_round_trip(p):
    q = SphericalPoint.from_xyz(p.xyz)
    assert float(np.dot(p.xyz, q.xyz)) >= 1 - 1e-12


def test_distance_examples():
    N, S = SphericalPoint(0, 0), SphericalPoint(math.pi, 0)
    assert geodesic_distance(N, S) == pytest.approx(math.pi)
    assert geodesic_distance(SphericalPoint(B, 0), N) == pytest.approx(B, abs=1e-15)
    v1, v2 = SphericalPoint(math.pi - B, PHI), SphericalPoint(A, ALPHA)
    assert geodesic_distance(v1, v2) == pytest.approx(A, abs=1e-12)


@PROPS
@given(points, points, unit_quaternions())
def test_distance_invariant_under_rotation(p, q, quat):
    t = OrthogonalTransform(quaternion_matrix(quat))
    d = geodesic_distance(p, q)
    assert 0 <= d <= math.pi
    assert geodesic_distance(t.apply(p), t.apply(q)) == pytest.approx(d, abs=1e-12)


@PROPS
@given(points, points)
def test_distance_zero_iff_equal(p, q):
    assert geodesic_distance(p, p) <= 1e-12
    close = np.linalg.norm(p.xyz - q.xyz) < 1e-12
    assert (geodesic_distance(p, q) <= 1e-9) == close or \
        np.linalg.norm(p.xyz - q.xyz) < 1e-8


def test_cos_side_examples():
    assert cos_side(A, A, 8 * math.pi / 12) == pytest.approx(-1 / 3, abs=1e-15)
    assert cos_side(A, A, math.pi / 3) == pytest.approx(5 / 9, abs=1e-15)
    assert cos_side(0.7, 0.7, 0.0) == pytest.approx(1.0)


def test_angle_from_sides_examples():
    assert angle_from_sides(B, A, math.pi - B) == pytest.approx(
        math.acos(-5 / (2 * math.sqrt(7))), abs=1e-12)
    assert angle_from_sides(B, A, math.pi - B) == pytest.approx(2.80812, abs=1e-5)
    assert angle_from_sides(A, B, math.pi - B) == pytest.approx(PHI, abs=1e-12)
    assert angle_from_sides(A, B, math.pi - B) == pytest.approx(0.380251, abs=1e-6)
    h = math.pi / 2
    assert angle_from_sides(h, h, h) == pytest.approx(h)
    with pytest.raises(DegenerateTriangle):
        angle_from_sides(3.0, 0.5, 0.5)


@PROPS
@given(st.floats(0.1, math.pi - 0.1), st.floats(0.1, math.pi - 0.1),
       st.floats(0.1, math.pi - 0.1))
def test_cosine_law_round_trip(a, b, C):
    c = math.acos(cos_side(a, b, C))
    assume(0.05 < c < math.pi - 0.05)
    assert angle_from_sides(c, a, b) == pytest.approx(C, abs=1e-9)


def test_triangle_exists_examples():
    assert triangle_exists(0.380251, 2.80812, 0.3334373)
    assert triangle_exists(1.38067, 1.0472, 1.38067)
    assert not triangle_exists(math.pi / 3, math.pi / 3, math.pi / 3)


angles3 = st.floats(-0.5, 4.0, allow_nan=False)


@PROPS
@given(angles3, angles3, angles3)
def test_triangle_exists_permutation_symmetric(a, b, c):
    import itertools
    verdicts = {triangle_exists(*p) for p in itertools.permutations((a, b, c))}
    assert len(verdicts) == 1


def test_triangle_area():
    h = math.pi / 2
    assert triangle_area(h, h, h) == pytest.approx(math.pi / 2)
    t1 = (PHI, math.acos(-5 / (2 * math.sqrt(7))), math.acos(5 / (2 * math.sqrt(7))))
    t2 = (4 * math.pi / 3 - t1[1], math.pi / 3, ALPHA - PHI)
    assert triangle_area(*t2) == pytest.approx(0.666, abs=1e-3)
    # the two triangles of one tile cover its area pi/3
    assert triangle_area(*t1) + triangle_area(*t2) == pytest.approx(math.pi / 3, abs=1e-12)
    with pytest.raises(DegenerateTriangle):
        triangle_area(1, 1, 1)


def test_corner_angle_orientation():
    N = SphericalPoint(0, 0)
    u, w = SphericalPoint(1, 0), SphericalPoint(1, math.pi / 2)
    assert corner_angle(N.xyz, u.xyz, w.xyz) == pytest.approx(math.pi / 2)
    assert corner_angle(N.xyz, w.xyz, u.xyz) == pytest.approx(3 * math.pi / 2)


def test_fit_identity_and_rank():
    pts = [SphericalPoint(0.3, 0.1), SphericalPoint(1.2, 2.0), SphericalPoint(2.0, 4.0)]
    t = fit_transform(pts, pts, det=1)
    assert t == OrthogonalTransform(np.eye(3))
    eq = [SphericalPoint(math.pi / 2, x) for x in (0.0, 1.0, 2.0)]
    with pytest.raises(RankDeficient):
        fit_transform(eq, eq)
    assert fit_transform(pts, pts, det=-1) is None


@PROPS
@given(st.lists(points, min_size=3, max_size=6), unit_quaternions(), st.booleans())
def test_fit_transform_recovers_orthogonal_maps(pts, quat, flip):
    S = np.array([p.xyz for p in pts])
    assume(np.linalg.matrix_rank(S, tol=1e-3) == 3)
    m = quaternion_matrix(quat) @ np.diag([1, 1, -1 if flip else 1])
    dst = [SphericalPoint.from_xyz(m @ p.xyz) for p in pts]
    t = fit_transform(pts, dst, det=None)
    assert t is not None
    assert np.allclose(t.matrix.T @ t.matrix, np.eye(3), atol=1e-12)
    assert t.determinant == (-1 if flip else 1)
    for p, q in zip(pts, dst):
        assert geodesic_distance(t.apply(p), q) < 1e-9
    assert fit_transform(pts, dst, det=1 if flip else -1) is None


def test_orthogonal_transform_validation():
    with pytest.raises(ValueError):
        OrthogonalTransform(np.ones((3, 3)))
    r = OrthogonalTransform(np.diag([1.0, -1.0, -1.0]))
    assert r.determinant == 1
    assert (r @ r) == OrthogonalTransform(np.eye(3))


def test_arc_validation_and_sampling():
    with pytest.raises(ValueError):
        GeodesicArc(SphericalPoint(0, 0), SphericalPoint(math.pi, 0))
    with pytest.raises(ValueError):
        GeodesicArc(SphericalPoint(1, 1), SphericalPoint(1, 1))
    arc = GeodesicArc(SphericalPoint(0.5, 0), SphericalPoint(1.5, 1))
    pts = arc.sample(10)
    assert np.allclose(np.linalg.norm(pts, axis=1), 1)
    assert np.allclose(pts[0], arc.start.xyz) and np.allclose(pts[-1], arc.end.xyz)


def test_arcs_cross_examples(tiling):
    N = SphericalPoint(0, 0)
    m1 = GeodesicArc(N, SphericalPoint(1.0, 0.2))
    m2 = GeodesicArc(N, SphericalPoint(1.0, 1.7))
    assert not arcs_cross(m1, m2)
    eq = GeodesicArc(SphericalPoint(math.pi / 2, 0), SphericalPoint(math.pi / 2, math.pi / 2))
    mer = GeodesicArc(SphericalPoint(math.pi / 4, math.pi / 4),
                      SphericalPoint(3 * math.pi / 4, math.pi / 4))
    assert arcs_cross(eq, mer)
    c = tiling.coordinates
    assert not arcs_cross(GeodesicArc(c["N"], c["v0"]), GeodesicArc(c["v1"], c["v2"]))


def test_arcs_cross_on_one_circle():
    e = lambda x: SphericalPoint(math.pi / 2, x)  # noqa: E731
    assert arcs_cross(GeodesicArc(e(0), e(1)), GeodesicArc(e(0.5), e(1.5)))
    assert not arcs_cross(GeodesicArc(e(0), e(1)), GeodesicArc(e(1), e(2)))
    assert not arcs_cross(GeodesicArc(e(0), e(1)), GeodesicArc(e(1.5), e(2.5)))
