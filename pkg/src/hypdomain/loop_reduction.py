"""
Reduce a fundamental polygon to a one vertex polygon.

A minimum spanning tree of the projected polygon graph is contracted:
every side outside the tree closes up, through tree paths, into a loop
at the root vertex. Lifting those loops side by side gives a polygon
with 4g sides whose vertices are all translates of one root lift, and
whose side pairings are the pairings of the original sides.

"""
import logging
from collections import deque
from dataclasses import dataclass

import networkx as nx

from hypdomain.combinatorial_map import Word, incident_edges, walk_star
from hypdomain.exceptions import LiftNotFound, WordMismatch
from hypdomain.hyperbolic import TOL, DiskPoint, dist


def projected_graph(polygon):
    """
    The graph of vertex orbits and side pairs on the surface.

    Parameters
    ----------
    polygon : FundamentalPolygon

    Returns
    -------
    graph : networkx.MultiGraph
        Nodes are orbit ids, edges are keyed by generator index and
        weighted by hyperbolic side length.

    """
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(polygon.n_orbits))
    for index, side in enumerate(polygon.rep_sides):
        graph.add_edge(polygon.orbit_of(side), polygon.orbit_of(side + 1), key=index,
                       weight=polygon.side_length(side), side=side)
    return graph


@dataclass(frozen=True)
class SpanningTree:
    edges: tuple
    root: int
    root_side: int
    graph: nx.Graph

    @property
    def weight(self):
        return sum(w for _, _, w in self.graph.edges(data='weight'))

    def __contains__(self, generator):
        return generator in self.edges


def spanning_tree(polygon):
    """
    Minimum spanning tree of the projected graph and the starting side.

    Ties in length go to the lower generator index. The root is the
    orbit of vertex 0 unless no side outside the tree starts there, in
    which case the tree is rerooted at the source of the lowest such side.

    Parameters
    ----------
    polygon : FundamentalPolygon

    Returns
    -------
    SpanningTree

    """
    graph = projected_graph(polygon)
    # kruskal only sees the order of the edges, so rank them with ties on the generator
    ordered = sorted(graph.edges(keys=True, data='weight'), key=lambda e: (e[3], e[2]))
    for rank, (u, v, generator, _) in enumerate(ordered):
        graph[u][v][generator]['rank'] = rank
    tree = nx.Graph()
    tree.add_nodes_from(graph.nodes)
    for u, v, generator, data in nx.minimum_spanning_edges(graph, algorithm='kruskal',
                                                           weight='rank', keys=True, data=True):
        tree.add_edge(u, v, generator=generator, weight=data['weight'])

    generators = tuple(sorted(g for _, _, g in tree.edges(data='generator')))
    outside = [k for k in range(polygon.n_sides) if polygon.generator_of(k) not in generators]
    root = polygon.orbit_of(0)
    at_root = [k for k in outside if polygon.orbit_of(k) == root]
    root_side = at_root[0] if at_root else outside[0]
    root = polygon.orbit_of(root_side)
    logging.info(f"Spanning tree with {len(generators)} edges rooted at orbit {root}, "
                 f"starting side {root_side}")
    return SpanningTree(generators, root, root_side, tree)


@dataclass(frozen=True)
class PathStep:
    """
    One side pair traversed along (forward) or against the direction of
    its representative side.

    """
    generator: int
    forward: bool


def _tree_steps(polygon, tree, nodes):
    steps = []
    for u, w in zip(nodes, nodes[1:]):
        generator = tree.graph[u][w]['generator']
        side = polygon.rep_sides[generator]
        steps.append(PathStep(generator, polygon.orbit_of(side) == u))
    return steps


def contraction_path(polygon, tree, side):
    """
    The loop at the root obtained from a side outside the tree: the tree
    path to its source, the side, and the tree path back.

    Returns
    -------
    list of PathStep

    """
    generator = polygon.generator_of(side)
    if generator in tree:
        raise ValueError(f"side {side} belongs to the spanning tree")
    to_source = nx.shortest_path(tree.graph, tree.root, polygon.orbit_of(side))
    from_target = nx.shortest_path(tree.graph, polygon.orbit_of(side + 1), tree.root)
    return (_tree_steps(polygon, tree, to_source)
            + [PathStep(generator, polygon.is_representative(side))]
            + _tree_steps(polygon, tree, from_target))


@dataclass(frozen=True)
class TreeLift:
    corner: int
    word: Word


@dataclass(frozen=True)
class TopologicalPolygon:
    """
    One vertex polygon built from lifted loops.

    Attributes
    ----------
    base : DiskPoint
        The root lift b.
    polygon_sides : tuple of int
        Side of the input polygon each side comes from.
    chains : tuple
        Per side the lifted path as (start, end) segments.
    table : tuple of Word
        Vertex i is table[i] applied to the base.
    pair : tuple of int
    side_pairings : tuple of Word
        Per side, the word mapping its partner onto it reversed.
    lift_words : tuple of Word
        Per input polygon vertex, the element carrying the tree lift onto
        the tree component through that vertex.

    """
    base: DiskPoint
    polygon_sides: tuple
    chains: tuple
    paths: tuple
    table: tuple
    pair: tuple
    side_pairings: tuple
    lift_words: tuple
    tree: SpanningTree
    genus: int
    access_count: int

    @property
    def n_sides(self):
        return len(self.table)

    @property
    def loops(self):
        return tuple((i, j) for i, j in enumerate(self.pair) if i < j)

    @property
    def pairings(self):
        return tuple(self.side_pairings[i] for i, _ in self.loops)

    def loop_of(self, side):
        return self.loops.index((min(side, self.pair[side]), max(side, self.pair[side])))

    def pairing_word(self, side):
        return self.side_pairings[side]

    def vertex(self, i):
        return self.table[i % self.n_sides].apply(self.base)

    def chord(self, i):
        return self.vertex(i), self.vertex(i + 1)

    def chord_length(self, i):
        return dist(*self.chord(i))

    def chain_length(self, i):
        return sum(dist(p, q) for p, q in self.chains[i])

    def star(self):
        return walk_star(self.n_sides, self.pair, self.pairing_word, 0, 'source')


def _lift_tree(polygon, tree):
    lifts = {tree.root: TreeLift(tree.root_side, Word.identity())}
    parents = {}
    accesses = 0
    queue = deque([tree.root])
    while queue:
        u = queue.popleft()
        lift = lifts[u]
        for w in sorted(tree.graph.neighbors(u)):
            if w in lifts:
                continue
            generator = tree.graph[u][w]['generator']
            star = incident_edges(polygon, lift.corner, 'source')
            accesses += star.steps
            entry = next((e for e in star.entries if polygon.generator_of(e.edge) == generator), None)
            if entry is None:
                raise LiftNotFound(f"no lift of tree edge {generator} around vertex {lift.corner}")
            lifts[w] = TreeLift((entry.edge + 1) % polygon.n_sides, lift.word * entry.word)
            parents[w] = u
            queue.append(w)
    return lifts, parents, accesses


def _root_path(polygon, lifts, parents, orbit):
    segments = []
    while orbit in parents:
        parent = parents[orbit]
        start = lifts[parent].word.apply(polygon.position(lifts[parent].corner))
        end = lifts[orbit].word.apply(polygon.position(lifts[orbit].corner))
        segments.append((start, end))
        orbit = parent
    return segments[::-1]


def build_topological_polygon(polygon, tree, tol=TOL['geom']):
    """
    Lift every loop of the contracted tree next to the input polygon.

    Parameters
    ----------
    polygon : FundamentalPolygon
    tree : SpanningTree
    tol : float

    Returns
    -------
    TopologicalPolygon

    """
    n_sides = polygon.n_sides
    lifts, parents, accesses = _lift_tree(polygon, tree)
    base = polygon.position(tree.root_side)

    lift_words = []
    for k in range(n_sides):
        lift = lifts[polygon.orbit_of(k)]
        word = polygon.vertices[k].word * polygon.vertices[lift.corner].word.inverse() * lift.word.inverse()
        lift_words.append(word)

    sides = [(tree.root_side + i) % n_sides for i in range(n_sides)]
    sides = [s for s in sides if polygon.generator_of(s) not in tree]
    if len(sides) != 4 * polygon.genus:
        raise WordMismatch(f"{len(sides)} loops left for genus {polygon.genus}")
    index_of = {s: i for i, s in enumerate(sides)}
    table = [lift_words[s] for s in sides]

    chains = []
    for i, s in enumerate(sides):
        following = table[(i + 1) % len(sides)]
        if not lift_words[(s + 1) % n_sides].same_element(following, tol):
            raise WordMismatch(f"loop {i} does not end where loop {i + 1} starts")
        head = [tuple(lift_words[s].apply(p) for p in seg)
                for seg in _root_path(polygon, lifts, parents, polygon.orbit_of(s))]
        tail = [tuple(lift_words[(s + 1) % n_sides].apply(p) for p in seg[::-1])
                for seg in _root_path(polygon, lifts, parents, polygon.orbit_of(s + 1))[::-1]]
        chains.append(tuple(head + [(polygon.position(s), polygon.position(s + 1))] + tail))

    pair = []
    side_pairings = []
    for i, s in enumerate(sides):
        partner = index_of[polygon.edges[s].pair]
        word = polygon.pairing_word(s)
        n = len(sides)
        if not ((word * table[partner]).same_element(table[(i + 1) % n], tol)
                and (word * table[(partner + 1) % n]).same_element(table[i], tol)):
            raise WordMismatch(f"pairing of loops {i} and {partner} is inconsistent")
        pair.append(partner)
        side_pairings.append(word)

    paths = tuple(tuple(contraction_path(polygon, tree, s)) for s in sides)
    logging.info(f"Topological polygon with {len(sides)} sides after {accesses} star steps")
    return TopologicalPolygon(base, tuple(sides), tuple(chains), paths, tuple(table), tuple(pair),
                              tuple(side_pairings), tuple(lift_words), tree, polygon.genus,
                              accesses)
