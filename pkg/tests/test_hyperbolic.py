import cmath
import math

import numpy as np
import pytest

from hypdomain.exceptions import (
    CenterAtInfinity,
    Collinear,
    Disjoint,
    EllipticOrParabolic,
    Identical,
    OutsideDisk,
    RenormalizationError,
    SelfIntersecting,
)
from hypdomain.hyperbolic import (
    RENORMALIZE_EVERY,
    DiskPoint,
    Geodesic,
    HyperbolicPolygon,
    Isometry,
    Sign,
    apply,
    axis,
    axis_by_iteration,
    check_normalized,
    circumcenter,
    dist,
    distance_to_geodesic,
    geodesic_arc,
    geodesic_intersection,
    in_circle,
    interior_angles,
    midpoint,
    norm_drift,
    normalize,
    orientation,
    point_at,
    polygon_area,
    segments_cross,
    tangent_direction,
)

TRANSLATION = Isometry(math.cosh(1.0) + 0j, math.sinh(1.0) + 0j)
VERTICAL = Isometry(math.cosh(1.0) + 0j, 1j * math.sinh(1.0))


def random_isometry(rng):
    p = 0.8 * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform())
    return Isometry.moving_to_origin(p) @ Isometry.rotation(2 * math.pi * rng.uniform())


def random_point(rng, radius=0.9):
    return radius * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform())


def ccw(p, q, r):
    return ((q - p).conjugate() * (r - p)).imag > 0


def test_distance_from_origin():
    assert dist(0j, 0.5) == pytest.approx(math.log(3.0), abs=1e-14)
    assert dist(0.5, 0j) == pytest.approx(math.log(3.0), abs=1e-14)
    assert dist(0.3 + 0.2j, 0.3 + 0.2j) == 0.0


def test_disk_point_rejects_boundary():
    with pytest.raises(OutsideDisk):
        DiskPoint(1.0, 0.0)
    with pytest.raises(OutsideDisk):
        DiskPoint(float('nan'), 0.0)
    with pytest.raises(OutsideDisk):
        dist(0j, 1.0)


def test_translation_moves_origin():
    assert apply(TRANSLATION, 0j) == pytest.approx(math.tanh(1.0), abs=1e-15)
    assert dist(0j, TRANSLATION(0j)) == pytest.approx(2.0, abs=1e-12)
    assert TRANSLATION.det == pytest.approx(1.0, abs=1e-15)


def test_moving_to_origin_and_point_at():
    p = 0.4 - 0.3j
    assert abs(Isometry.moving_to_origin(p)(p)) < 1e-15
    q = point_at(p, 1.2, 0.7)
    assert dist(p, q) == pytest.approx(0.7, abs=1e-12)
    assert tangent_direction(p, q) == pytest.approx(1.2, abs=1e-12)


def test_midpoint_is_halfway():
    p, q = 0.5 + 0.1j, -0.2 - 0.6j
    m = midpoint(p, q)
    assert dist(p, m) == pytest.approx(dist(p, q) / 2, abs=1e-12)
    assert dist(m, q) == pytest.approx(dist(p, q) / 2, abs=1e-12)


def test_isometries_preserve_distance():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        g = random_isometry(rng)
        x, y = random_point(rng), random_point(rng)
        assert dist(g(x), g(y)) == pytest.approx(dist(x, y), abs=1e-10)


def test_composition_acts_as_product():
    rng = np.random.default_rng(1)
    for _ in range(50):
        g, h = random_isometry(rng), random_isometry(rng)
        z = random_point(rng)
        assert abs((g @ h)(z) - g(h(z))) < 1e-12
        assert (g @ g.inverse()).is_identity()


def test_long_products_stay_normalized():
    g = Isometry.identity()
    for _ in range(100):
        g = g @ TRANSLATION @ VERTICAL @ TRANSLATION.inverse() @ VERTICAL.inverse()
        g = g @ VERTICAL @ TRANSLATION @ VERTICAL.inverse() @ TRANSLATION.inverse()
    assert g.pending < RENORMALIZE_EVERY
    assert g.is_identity(1e-9)
    assert norm_drift(g) < 1e-12
    assert check_normalized(g).det == pytest.approx(1.0, abs=1e-12)


def test_bounded_rotation_product_returns_to_identity():
    conjugated = TRANSLATION @ Isometry.rotation(2 * math.pi / 7) @ TRANSLATION.inverse()
    g = Isometry.identity()
    for _ in range(7 * 30):
        g = g @ conjugated
    assert g.is_identity(1e-9)
    assert abs(g.det - 1.0) < 1e-12


def test_normalize_rejects_negative_determinant():
    with pytest.raises(RenormalizationError, match='cancels'):
        normalize(Isometry(0.5 + 0j, 1.0 + 0j))


def test_drifted_determinant_is_rejected():
    drifted = Isometry(TRANSLATION.a * (1 + 1e-9), TRANSLATION.b)
    assert norm_drift(drifted) > 1e-12
    with pytest.raises(RenormalizationError, match='drifted'):
        check_normalized(drifted)
    assert check_normalized(drifted, tol=1e-6).det == pytest.approx(1.0, abs=1e-12)


def test_segment_map_sends_segment_onto_segment():
    p1, p2 = 0.1 + 0.2j, 0.4 - 0.1j
    q1 = -0.3 + 0.1j
    q2 = point_at(q1, 2.0, dist(p1, p2))
    g = Isometry.segment_map(p1, p2, q1, q2)
    assert abs(g(p1) - q1) < 1e-12
    assert abs(g(p2) - q2) < 1e-12


def test_axis_of_translation():
    geodesic = axis(TRANSLATION)
    assert abs(geodesic.p + 1.0) < 1e-12
    assert abs(geodesic.q - 1.0) < 1e-12
    vertical = axis(VERTICAL)
    assert abs(vertical.p + 1j) < 1e-12
    assert abs(vertical.q - 1j) < 1e-12


def test_axis_is_shared_by_powers_and_moves_with_conjugation():
    rng = np.random.default_rng(2)
    g = VERTICAL @ TRANSLATION
    squared = axis(g @ g)
    assert abs(squared.p - axis(g).p) < 1e-9
    assert abs(squared.q - axis(g).q) < 1e-9
    h = random_isometry(rng)
    conjugated = axis(h @ g @ h.inverse())
    image = axis(g).image(h)
    assert abs(conjugated.p - image.p) < 1e-9
    assert abs(conjugated.q - image.q) < 1e-9


def test_axis_by_iteration_agrees():
    g = VERTICAL @ TRANSLATION
    exact = axis(g)
    approximate = axis_by_iteration(g)
    assert abs(exact.p - approximate.p) < 1e-9
    assert abs(exact.q - approximate.q) < 1e-9


def test_axis_rejects_rotations():
    with pytest.raises(EllipticOrParabolic):
        axis(Isometry.rotation(1.0))


def test_geodesic_intersection():
    real = Geodesic(-1 + 0j, 1 + 0j)
    imaginary = Geodesic(-1j, 1j)
    assert abs(geodesic_intersection(real, imaginary).z) < 1e-15
    assert abs(geodesic_intersection(imaginary, real).z) < 1e-15
    tilted = Geodesic.from_endpoints(cmath.exp(1j * math.pi / 3), -cmath.exp(1j * math.pi / 3))
    assert abs(geodesic_intersection(real, tilted).z) < 1e-12
    with pytest.raises(Disjoint):
        geodesic_intersection(Geodesic(1 + 0j, 1j), Geodesic(-1 + 0j, -1j))
    with pytest.raises(Identical):
        geodesic_intersection(real, real.reversed())


def test_geodesic_through_points():
    x, y = 0.2 + 0.3j, -0.4 + 0.1j
    geodesic = Geodesic.through(x, y)
    assert distance_to_geodesic(x, geodesic) < 1e-9
    assert distance_to_geodesic(y, geodesic) < 1e-9
    assert distance_to_geodesic(0j, Geodesic(-1 + 0j, 1 + 0j)) < 1e-9
    assert distance_to_geodesic(math.tanh(0.5) * 1j, Geodesic(-1 + 0j, 1 + 0j)) == \
        pytest.approx(1.0, abs=1e-9)


def test_circumcenter_of_equilateral_triangle():
    points = [0.5 * cmath.exp(2j * math.pi * k / 3) for k in range(3)]
    assert abs(circumcenter(*points).z) < 1e-10


def test_circumcenter_is_equidistant():
    rng = np.random.default_rng(3)
    for _ in range(200):
        p, q, r = (random_point(rng, 0.7) for _ in range(3))
        if abs(orientation(p, q, r)) < 1e-3:
            continue
        try:
            c = circumcenter(p, q, r)
        except CenterAtInfinity:
            continue
        assert dist(c, p) == pytest.approx(dist(c, q), abs=1e-8)
        assert dist(c, p) == pytest.approx(dist(c, r), abs=1e-8)


def test_circumcenter_degenerate_triples():
    with pytest.raises(Collinear):
        circumcenter(-0.5 + 0j, 0j, 0.5 + 0j)
    # on the hypercycle through -1, 0.5 i and 1
    centre, radius = -0.75j, 1.25
    points = [centre + radius * cmath.exp(1j * (math.pi / 2 + t)) for t in (0.5, 0.0, -0.5)]
    with pytest.raises(CenterAtInfinity):
        circumcenter(*points)


def test_in_circle_signs():
    p, q, r = (0.5 * cmath.exp(2j * math.pi * k / 3) for k in range(3))
    assert in_circle(p, q, r, 0j) == Sign.INSIDE
    assert in_circle(q, p, r, 0j) == Sign.OUTSIDE
    assert in_circle(p, q, r, 0.9 + 0j) == Sign.OUTSIDE
    assert in_circle(p, q, r, p) == Sign.COCIRCULAR


def test_in_circle_symmetric_quad_is_cocircular():
    u, a, v, s = 0.4 + 0j, 0.4j, -0.4 + 0j, -0.4j
    assert in_circle(u, a, v, s) == Sign.COCIRCULAR
    assert in_circle(u, a, v, -0.39j) == Sign.INSIDE
    assert in_circle(u, a, v, -0.41j) == Sign.OUTSIDE


def test_in_circle_matches_circumcircle_distance():
    rng = np.random.default_rng(4)
    for _ in range(300):
        p, q, r, s = (random_point(rng, 0.8) for _ in range(4))
        if not ccw(p, q, r):
            q, r = r, q
        if abs(orientation(p, q, r)) < 1e-3:
            continue
        try:
            c = circumcenter(p, q, r)
        except CenterAtInfinity:
            continue
        gap = dist(c, p) - dist(c, s)
        if abs(gap) < 1e-6:
            continue
        expected = Sign.INSIDE if gap > 0 else Sign.OUTSIDE
        assert in_circle(p, q, r, s) == expected


def test_orientation_and_crossing():
    assert orientation(0j, 0.5 + 0j, 0.5j) > 0
    assert orientation(0j, 0.5j, 0.5 + 0j) < 0
    assert segments_cross(-0.5 + 0j, 0.5 + 0j, -0.5j, 0.5j)
    assert not segments_cross(-0.5 + 0j, -0.1 + 0j, -0.5j, 0.5j)


def test_regular_octagon_angles_and_area(octagon):
    polygon = octagon.polygon
    for angle in interior_angles(polygon):
        assert angle == pytest.approx(math.pi / 4, abs=1e-9)
    assert polygon_area(polygon) == pytest.approx(4 * math.pi, abs=1e-9)


def test_area_is_additive():
    vertices = [0.5 + 0j, 0.3 + 0.4j, -0.4 + 0.3j, -0.3 - 0.4j]
    whole = polygon_area(HyperbolicPolygon(tuple(vertices)))
    first = polygon_area(HyperbolicPolygon((vertices[0], vertices[1], vertices[2])))
    second = polygon_area(HyperbolicPolygon((vertices[0], vertices[2], vertices[3])))
    assert whole == pytest.approx(first + second, abs=1e-12)


def test_small_triangle_is_nearly_euclidean():
    eps = 1e-4
    angles = interior_angles(HyperbolicPolygon((0j, eps + 0j, eps * 1j)))
    assert sum(angles) == pytest.approx(math.pi, abs=1e-7)


def test_self_intersecting_polygon_is_rejected():
    bow_tie = HyperbolicPolygon((0.5 + 0.5j, -0.5 - 0.5j, 0.5 - 0.5j, -0.5 + 0.5j))
    with pytest.raises(SelfIntersecting):
        interior_angles(bow_tie)


def test_geodesic_arc_passes_through_endpoints():
    p, q = 0.5 + 0.1j, -0.2 + 0.6j
    kind, centre, radius, _ = geodesic_arc(p, q)
    assert kind == 'arc'
    assert abs(p - centre) == pytest.approx(radius, abs=1e-12)
    assert abs(q - centre) == pytest.approx(radius, abs=1e-12)
    # orthogonal to the unit circle
    assert abs(centre) ** 2 == pytest.approx(1.0 + radius ** 2, abs=1e-12)
    assert geodesic_arc(0.3 + 0j, -0.6 + 0j)[0] == 'line'
