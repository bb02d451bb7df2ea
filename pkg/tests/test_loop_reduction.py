import itertools

import networkx as nx
import pytest
from networkx.utils import UnionFind

from hypdomain import generators
from hypdomain.combinatorial_map import build
from hypdomain.loop_reduction import (
    PathStep,
    build_topological_polygon,
    contraction_path,
    projected_graph,
    spanning_tree,
)


@pytest.fixture(scope='module')
def twice_subdivided(subdivided_raw):
    return build(generators.subdivide_pair(subdivided_raw, 2))


@pytest.fixture(scope='module')
def three_times_subdivided(subdivided_raw):
    raw = generators.subdivide_pair(subdivided_raw, 2)
    return build(generators.subdivide_pair(raw, 0))


def brute_force_weight(polygon):
    graph = projected_graph(polygon)
    edges = [(u, v, data['weight']) for u, v, data in graph.edges(data=True) if u != v]
    best = None
    for chosen in itertools.combinations(edges, polygon.n_orbits - 1):
        tree = nx.Graph()
        tree.add_nodes_from(graph.nodes)
        tree.add_edges_from((u, v) for u, v, _ in chosen)
        if tree.number_of_edges() == polygon.n_orbits - 1 and nx.is_tree(tree):
            weight = sum(w for _, _, w in chosen)
            best = weight if best is None else min(best, weight)
    return best


def test_projected_graph_of_octagon(octagon):
    graph = projected_graph(octagon)
    assert graph.number_of_nodes() == 1
    assert graph.number_of_edges() == 4


def test_octagon_needs_no_tree(octagon):
    tree = spanning_tree(octagon)
    assert tree.edges == ()
    assert tree.root == 0
    assert tree.root_side == 0
    assert contraction_path(octagon, tree, 3) == [PathStep(3, True)]
    assert contraction_path(octagon, tree, 7) == [PathStep(3, False)]


def test_subdivided_tree(subdivided):
    tree = spanning_tree(subdivided)
    assert len(tree.edges) == 1
    assert subdivided.orbit_of(tree.root_side) == tree.root
    assert subdivided.generator_of(tree.root_side) not in tree


@pytest.mark.parametrize('name, orbits', [('twice_subdivided', 3), ('three_times_subdivided', 4)])
def test_tree_is_minimal(request, name, orbits):
    polygon = request.getfixturevalue(name)
    assert polygon.n_orbits == orbits
    tree = spanning_tree(polygon)
    assert len(tree.edges) == orbits - 1
    assert nx.is_tree(tree.graph)
    assert tree.weight <= brute_force_weight(polygon) + 1e-12


def test_tree_takes_lower_generator_on_ties(three_times_subdivided):
    graph = projected_graph(three_times_subdivided)
    ordered = sorted(graph.edges(keys=True, data='weight'), key=lambda e: (e[3], e[2]))
    components = UnionFind(graph.nodes)
    expected = []
    for u, v, generator, _ in ordered:
        if components[u] != components[v]:
            components.union(u, v)
            expected.append(generator)
    assert spanning_tree(three_times_subdivided).edges == tuple(sorted(expected))


def test_contraction_path_returns_to_root(twice_subdivided):
    tree = spanning_tree(twice_subdivided)
    for side in range(twice_subdivided.n_sides):
        if twice_subdivided.generator_of(side) in tree:
            with pytest.raises(ValueError):
                contraction_path(twice_subdivided, tree, side)
            continue
        path = contraction_path(twice_subdivided, tree, side)
        middle = [step for step in path if step.generator not in tree]
        assert middle == [PathStep(twice_subdivided.generator_of(side),
                                   twice_subdivided.is_representative(side))]


def test_octagon_topological_polygon(octagon):
    top = build_topological_polygon(octagon, spanning_tree(octagon))
    assert top.n_sides == 8
    assert len(top.loops) == 4
    assert top.polygon_sides == tuple(range(8))
    for i in range(8):
        assert top.chains[i] == ((octagon.position(i), octagon.position(i + 1)),)
        assert abs(top.vertex(i).z - octagon.position(i).z) < 1e-9
        assert top.chord_length(i) == pytest.approx(top.chain_length(i), abs=1e-9)


@pytest.mark.parametrize('name', ['subdivided', 'twice_subdivided', 'three_times_subdivided'])
def test_topological_polygon_of_subdivisions(request, name):
    polygon = request.getfixturevalue(name)
    tree = spanning_tree(polygon)
    top = build_topological_polygon(polygon, tree)
    n = top.n_sides
    assert n == 4 * polygon.genus
    assert top.table[0].resolved.is_identity()
    assert abs(top.vertex(0).z - top.base.z) < 1e-12
    used = [polygon.generator_of(s) for s in top.polygon_sides]
    assert all(used.count(g) == 2 for g in used)
    assert not set(used) & set(tree.edges)
    for i, chain in enumerate(top.chains):
        assert abs(chain[0][0].z - top.vertex(i).z) < 1e-9
        assert abs(chain[-1][1].z - top.vertex(i + 1).z) < 1e-9
        for (_, end), (start, _) in zip(chain, chain[1:]):
            assert abs(end.z - start.z) < 1e-9
        assert top.chord_length(i) <= top.chain_length(i) + 1e-9
    for i in range(n):
        partner = top.pair[i]
        g = top.pairing_word(i).resolved
        p, q = top.chord(partner)
        assert abs(g(p.z) - top.vertex(i + 1).z) < 1e-9
        assert abs(g(q.z) - top.vertex(i).z) < 1e-9


def test_lift_words_place_tree_lifts(subdivided):
    tree = spanning_tree(subdivided)
    top = build_topological_polygon(subdivided, tree)
    root_lift = subdivided.position(tree.root_side)
    for k in range(subdivided.n_sides):
        if subdivided.orbit_of(k) == tree.root:
            assert abs(top.lift_words[k].apply(root_lift).z - subdivided.position(k).z) < 1e-9


def test_star_steps_are_counted(three_times_subdivided):
    tree = spanning_tree(three_times_subdivided)
    top = build_topological_polygon(three_times_subdivided, tree)
    n_sides = three_times_subdivided.n_sides
    assert 0 < top.access_count <= n_sides * len(tree.edges)
