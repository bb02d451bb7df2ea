"""
Move the base point of a one vertex loop system onto the crossing of two
closed geodesics, which turns the topological polygon into a convex
polygon with the same side pairings.

"""
import logging
import math
from dataclasses import dataclass, field, replace

from hypdomain.combinatorial_map import Word
from hypdomain.exceptions import (
    AreaMismatch,
    BoundViolation,
    NoCrossingLoop,
    NotConvex,
    WordMismatch,
)
from hypdomain.hyperbolic import (
    TOL,
    DiskPoint,
    HyperbolicPolygon,
    Isometry,
    apply,
    axis,
    compose,
    dist,
    geodesic_intersection,
    interior_angles,
)


def interleaves(sequence, x, y):
    """
    True when the two occurrences of y separate the two occurrences of x
    in the cyclic sequence.

    """
    xs = [k for k, label in enumerate(sequence) if label == x]
    ys = [k for k, label in enumerate(sequence) if label == y]
    if len(xs) != 2 or len(ys) != 2:
        raise ValueError("each label must occur exactly twice")
    inside = [xs[0] < k < xs[1] for k in ys]
    return inside[0] != inside[1]


@dataclass(frozen=True)
class CrossingPair:
    """
    Two loops whose lifts through the base cross once.

    Attributes
    ----------
    loops : (int, int)
    sides : (int, int)
        Sides of the topological polygon carrying the chosen lifts.
    g0, g1 : Word
        Translations along the two lifts, starting at the base.

    """
    loops: tuple
    sides: tuple
    base: DiskPoint
    g0: Word
    g1: Word
    star_labels: tuple

    @property
    def l0(self):
        return max(dist(self.base, self.g0.apply(self.base)),
                   dist(self.base, self.g1.apply(self.base)))


def choose_crossing_pair(top, tol=TOL['geom']):
    """
    Pick loop 0 and the lowest loop whose ends alternate with it around
    the base point.

    Parameters
    ----------
    top : TopologicalPolygon

    Returns
    -------
    CrossingPair

    """
    star = top.star()
    labels = tuple(top.loop_of(entry.edge) for entry in star.entries)
    first = labels[0]
    for loop in range(len(top.loops)):
        if loop == first or not interleaves(labels, first, loop):
            continue
        entry = star.entries[labels.index(loop)]
        start = entry.word * top.table[entry.edge]
        if not start.resolved.is_identity(tol):
            raise WordMismatch(f"star entry on side {entry.edge} is not at the base point")
        g0 = top.table[1]
        g1 = entry.word * top.table[(entry.edge + 1) % top.n_sides]
        logging.info(f"Loops {first} and {loop} cross at the base point")
        return CrossingPair((first, loop), (0, entry.edge), top.base, g0, g1, labels)
    raise NoCrossingLoop(f"no loop alternates with loop {first} in {labels}")


@dataclass(frozen=True)
class BasepointRelocation:
    point: DiskPoint
    c_len: float
    l0: float

    @property
    def ratio(self):
        return self.c_len / self.l0


def relocate_basepoint(pair, tol=TOL['geom']):
    """
    Intersect the axes of the two translations.

    Returns
    -------
    BasepointRelocation
        The new base point and its distance to the old one.

    Raises
    ------
    BoundViolation
        When the displacement is not below twice the longer loop.

    """
    point = geodesic_intersection(axis(pair.g0.resolved, tol), axis(pair.g1.resolved, tol), tol)
    c_len = dist(pair.base, point)
    l0 = pair.l0
    if not c_len < 2 * l0:
        raise BoundViolation(f"base point moved by {c_len!r}, not below 2 * {l0!r}")
    logging.info(f"Base point moved by {c_len:.6f}, ratio to longer loop {c_len / l0:.4f}")
    return BasepointRelocation(point, c_len, l0)


@dataclass(frozen=True)
class ConvexPolygon:
    vertices: tuple
    table: tuple
    pair: tuple
    side_pairings: tuple
    base: DiskPoint
    l0: float
    c_len: float
    genus: int
    angles: tuple
    area: float
    loop_lengths: tuple
    # carries input frame coordinates to the coordinates of this polygon
    frame: Isometry = field(default_factory=Isometry.identity)

    @property
    def n_sides(self):
        return len(self.vertices)

    @property
    def loops(self):
        return tuple((i, j) for i, j in enumerate(self.pair) if i < j)

    @property
    def pairings(self):
        return tuple(self.side_pairings[i] for i, _ in self.loops)

    @property
    def polygon(self):
        return HyperbolicPolygon(self.vertices)

    def pairing_word(self, side):
        return self.side_pairings[side]

    def side_length(self, i):
        return dist(self.vertices[i], self.vertices[(i + 1) % self.n_sides])

    @property
    def perimeter(self):
        return sum(self.side_length(i) for i in range(self.n_sides))


def build_convex_polygon(top, relocation, tol=TOL['geom'], tol_angle=TOL['angle'],
                         tol_area=TOL['area']):
    """
    Place every vertex of the topological polygon's table at the new base
    point and check the result is a convex fundamental polygon.

    Parameters
    ----------
    top : TopologicalPolygon
    relocation : BasepointRelocation

    Returns
    -------
    ConvexPolygon

    """
    n_sides = top.n_sides
    vertices = tuple(word.apply(relocation.point) for word in top.table)
    loop_lengths = tuple(top.chord_length(i) for i in range(n_sides))
    for i in range(n_sides):
        length = dist(vertices[i], vertices[(i + 1) % n_sides])
        if length > loop_lengths[i] + 2 * relocation.c_len + tol:
            raise BoundViolation(f"side {i} of length {length!r} exceeds its loop bound")

    polygon = HyperbolicPolygon(vertices)
    if polygon.klein_area() <= 0.0:
        raise NotConvex("relocated polygon is not counterclockwise")
    angles = interior_angles(polygon)
    for i, angle in enumerate(angles):
        if angle >= math.pi - tol_angle:
            raise NotConvex(f"interior angle {angle!r} at vertex {i}")
    area = (n_sides - 2) * math.pi - sum(angles)
    expected = 4 * math.pi * (top.genus - 1)
    if abs(area - expected) > tol_area:
        raise AreaMismatch(f"area {area!r} differs from {expected!r}")

    for i in range(n_sides):
        word = top.side_pairings[i]
        partner = top.pair[i]
        start = word.apply(vertices[partner]).z
        end = word.apply(vertices[(partner + 1) % n_sides]).z
        error = max(abs(start - vertices[(i + 1) % n_sides].z), abs(end - vertices[i].z))
        if error > 10 * tol:
            raise WordMismatch(f"pairing of sides {partner} and {i} misses by {error:.3e}")

    logging.info(f"Convex polygon with {n_sides} sides, area {area:.12f}")
    return ConvexPolygon(vertices, top.table, top.pair, top.side_pairings, relocation.point,
                         relocation.l0, relocation.c_len, top.genus, tuple(angles), area,
                         loop_lengths)


def rebase_at_origin(convex):
    """
    Conjugate the convex polygon by the isometry moving its base point to
    the origin.

    Every word keeps its letters, so the side pairings stay the same
    group elements; only their matrices are read in the new frame.

    Parameters
    ----------
    convex : ConvexPolygon

    Returns
    -------
    ConvexPolygon
        With base point 0 and `frame` recording the conjugating isometry.

    """
    move = Isometry.moving_to_origin(convex.base)
    vertices = tuple(apply(move, v) for v in convex.vertices)
    table = tuple(word.conjugated(move) for word in convex.table)
    side_pairings = tuple(word.conjugated(move) for word in convex.side_pairings)
    logging.info(f"Rebased the convex polygon from {convex.base!r} to the origin")
    return replace(convex, vertices=vertices, table=table, side_pairings=side_pairings,
                   base=DiskPoint(0.0, 0.0), frame=compose(move, convex.frame))
