import cmath
import math

import pytest

from hypdomain.combinatorial_map import Word
from hypdomain.exceptions import BoundViolation
from hypdomain.hyperbolic import (
    DiskPoint,
    Isometry,
    axis,
    dist,
    distance_to_geodesic,
    polygon_area,
)
from hypdomain.loop_embedding import (
    CrossingPair,
    choose_crossing_pair,
    interleaves,
    rebase_at_origin,
    relocate_basepoint,
)
from hypdomain.loop_reduction import build_topological_polygon, spanning_tree

ALONG_REAL = Isometry(math.cosh(1.0) + 0j, math.sinh(1.0) + 0j)
ALONG_IMAGINARY = Isometry(math.cosh(1.0) + 0j, 1j * math.sinh(1.0))


def synthetic_pair(base):
    words = [ALONG_REAL, ALONG_IMAGINARY]
    return CrossingPair((0, 1), (0, 1), base, Word.generator(0, words), Word.generator(1, words), ())


@pytest.fixture(scope='module')
def octagon_top(octagon):
    return build_topological_polygon(octagon, spanning_tree(octagon))


def test_interleaves():
    assert interleaves('xyxy', 'x', 'y')
    assert not interleaves('xxyy', 'x', 'y')
    assert not interleaves('xyyx', 'x', 'y')
    assert interleaves([0, 3, 2, 1, 0, 3, 2, 1], 0, 1)
    with pytest.raises(ValueError):
        interleaves('xyx', 'x', 'y')


def test_octagon_crossing_pair(octagon_top):
    pair = choose_crossing_pair(octagon_top)
    assert pair.star_labels == (0, 3, 2, 1, 0, 3, 2, 1)
    assert pair.loops == (0, 1)
    assert pair.sides == (0, 1)
    assert abs(pair.g0.apply(pair.base).z - octagon_top.vertex(1).z) < 1e-9


def test_relocation_for_perpendicular_axes():
    relocation = relocate_basepoint(synthetic_pair(DiskPoint(0.0, 0.0)))
    assert abs(relocation.point.z) < 1e-12
    assert relocation.c_len == pytest.approx(0.0, abs=1e-12)
    assert relocation.l0 == pytest.approx(2.0, abs=1e-12)


def test_relocation_distance_from_an_offset_base():
    base = DiskPoint(0.1, 0.2)
    relocation = relocate_basepoint(synthetic_pair(base))
    assert abs(relocation.point.z) < 1e-12
    assert relocation.c_len < 2 * relocation.l0
    assert relocation.ratio == pytest.approx(relocation.c_len / relocation.l0)


def test_relocation_bound_is_enforced():
    # short translations whose axes meet far from the base point
    words = [Isometry(math.cosh(0.01) + 0j, math.sinh(0.01) + 0j),
             Isometry(math.cosh(0.01) + 0j, 1j * math.sinh(0.01))]
    base = DiskPoint.from_complex(math.tanh(0.5) * cmath.exp(0.25j * math.pi))
    pair = CrossingPair((0, 1), (0, 1), base, Word.generator(0, words), Word.generator(1, words), ())
    with pytest.raises(BoundViolation):
        relocate_basepoint(pair)


def test_octagon_relocation_lies_on_both_axes(octagon_top):
    pair = choose_crossing_pair(octagon_top)
    relocation = relocate_basepoint(pair)
    assert distance_to_geodesic(relocation.point, axis(pair.g0.resolved)) < 1e-9
    assert distance_to_geodesic(relocation.point, axis(pair.g1.resolved)) < 1e-9
    assert relocation.c_len < 2 * relocation.l0


@pytest.mark.parametrize('result_name', ['octagon_result', 'symmetric_result', 'subdivided_result'])
def test_convex_polygon(request, result_name):
    result = request.getfixturevalue(result_name)
    convex = result.convex
    genus = convex.genus
    assert convex.n_sides == 4 * genus
    assert convex.polygon.is_simple()
    for angle in convex.angles:
        assert 0.0 < angle < math.pi
    assert convex.area == pytest.approx(4 * math.pi * (genus - 1), abs=1e-8)
    assert polygon_area(convex.polygon) == pytest.approx(convex.area, abs=1e-9)
    for i in range(convex.n_sides):
        assert convex.side_length(i) <= convex.loop_lengths[i] + 2 * convex.c_len + 1e-9
    assert convex.perimeter <= 5 * convex.n_sides * max(convex.loop_lengths)


@pytest.mark.parametrize('result_name', ['octagon_result', 'symmetric_result'])
def test_convex_pairings_match_sides(request, result_name):
    convex = request.getfixturevalue(result_name).convex
    n = convex.n_sides
    for i in range(n):
        g = convex.pairing_word(i).resolved
        partner = convex.pair[i]
        assert abs(g(convex.vertices[partner].z) - convex.vertices[(i + 1) % n].z) < 1e-9
        assert abs(g(convex.vertices[(partner + 1) % n].z) - convex.vertices[i].z) < 1e-9
        assert convex.side_length(i) == pytest.approx(convex.side_length(partner), abs=1e-9)


def test_convex_vertices_come_from_the_table(octagon_result):
    convex = octagon_result.convex
    for word, vertex in zip(convex.table, convex.vertices):
        assert abs(word.apply(convex.base).z - vertex.z) < 1e-12


def test_rebased_side_words_are_conjugates(surface_result):
    top, convex = surface_result.topological, surface_result.convex
    centered = surface_result.centered
    move = Isometry.moving_to_origin(convex.base)
    assert centered.base.z == 0j
    assert centered.frame.same_element(move, 1e-12)
    for before, after in zip(top.side_pairings, centered.side_pairings):
        assert after == before
        expected = move @ before.resolved @ move.inverse()
        assert after.resolved.same_element(expected, 1e-7)
        assert abs(after.resolved.trace) == pytest.approx(abs(before.resolved.trace), rel=1e-7)


def test_rebasing_keeps_the_polygon(surface_result):
    convex, centered = surface_result.convex, surface_result.centered
    n = centered.n_sides
    assert centered.angles == convex.angles
    for k in range(n):
        assert dist(0j, centered.vertices[k]) == pytest.approx(
            dist(convex.base, convex.vertices[k]), abs=1e-7)
        assert centered.side_length(k) == pytest.approx(convex.side_length(k), abs=1e-7)
        assert abs(centered.table[k].apply(centered.base).z - centered.vertices[k].z) < 1e-8
    for i in range(n):
        g = centered.pairing_word(i).resolved
        partner = centered.pair[i]
        assert abs(g(centered.vertices[partner].z) - centered.vertices[(i + 1) % n].z) < 1e-8
        assert abs(g(centered.vertices[(partner + 1) % n].z) - centered.vertices[i].z) < 1e-8


def test_rebasing_twice_composes_frames(octagon_result):
    centered = octagon_result.centered
    again = rebase_at_origin(centered)
    assert abs(again.base.z) == 0.0
    assert again.frame.same_element(centered.frame, 1e-12)
    for before, after in zip(centered.vertices, again.vertices):
        assert abs(before.z - after.z) < 1e-12
