"""
One vertex triangulations of a surface and the Delaunay flip algorithm.

Triangle t has corners 0, 1, 2 in counterclockwise order and half-edge
(t, k) runs from corner k to corner k + 1. Each half-edge stores its
twin and the holonomy carrying the twin triangle's lift into the frame
of this triangle's lift, so the two lifts share the edge.

"""
import logging
import math
from collections import deque

from hypdomain.combinatorial_map import Word
from hypdomain.exceptions import DegenerateQuad, IterationLimit, WordMismatch
from hypdomain.hyperbolic import (
    TOL,
    HyperbolicPolygon,
    Isometry,
    Sign,
    apply,
    dist,
    in_circle,
    interior_angles,
    midpoint,
    orientation,
)
from hypdomain.inputs import parameters


class FlipStats:
    """
    A class constructor for the work done by one run of the flip
    algorithm.

    """
    def __init__(self, flips, checks, max_queue):
        self.flips = flips
        self.checks = checks
        self.max_queue = max_queue


class SurfaceTriangulation:
    """
    A class constructor for one vertex surface triangulations.

    Parameters
    ----------
    corners : list of lists of DiskPoint
        Lift of every triangle.
    corner_words : list of lists of Word
        Each corner equals its word applied to the base point.
    twins : list of lists of (int, int)
    holonomies : list of lists of Word
    base : DiskPoint
    genus : int
    frame : Isometry
        Carries input polygon coordinates to the coordinates of the lifts.

    """
    def __init__(self, corners, corner_words, twins, holonomies, base, genus, frame=None):
        self.corners = corners
        self.corner_words = corner_words
        self.twins = twins
        self.holonomies = holonomies
        self.base = base
        self.genus = genus
        self.frame = frame if frame is not None else Isometry.identity()
        self.flips = 0

    @property
    def n_triangles(self):
        return len(self.corners)

    @property
    def n_edges(self):
        return len(self.edges())

    @property
    def n_vertices(self):
        return 1

    def half_edges(self):
        return [(t, k) for t in range(self.n_triangles) for k in range(3)]

    def twin(self, he):
        t, k = he
        return self.twins[t][k]

    def holonomy(self, he):
        t, k = he
        return self.holonomies[t][k]

    def edge_key(self, he):
        return min(he, self.twin(he))

    def edges(self):
        return sorted({self.edge_key(he) for he in self.half_edges()})

    def quad(self, he):
        """
        The four points u, v, a, s of the lifted quadrilateral around the
        edge u -> v, in the frame of the triangle of `he`.

        """
        t, k = he
        t2, k2 = self.twin(he)
        corners = self.corners[t]
        far = self.corners[t2][(k2 + 2) % 3]
        s = apply(self.holonomy(he).resolved, far)
        return corners[k], corners[(k + 1) % 3], corners[(k + 2) % 3], s

    def in_circle_sign(self, he, tol=TOL['pred']):
        u, v, a, s = self.quad(he)
        # move the edge midpoint to the origin so the edge lies on a diameter
        centre = Isometry.moving_to_origin(midpoint(u.z, v.z))
        return in_circle(*(centre(p.z) for p in (u, v, a, s)), tol=tol)

    def is_locally_delaunay(self, he, tol=TOL['pred']):
        return self.in_circle_sign(he, tol) != Sign.INSIDE

    def is_flippable(self, he):
        if self.twin(he)[0] == he[0]:
            return False
        u, v, a, s = self.quad(he)
        return orientation(u, s, a) > 0.0 and orientation(s, v, a) > 0.0

    def flip(self, he):
        """
        Replace the edge of `he` by the other diagonal of its quad.

        The two new triangles keep the ids of the old ones and are lifted
        into the frame of the lower id, then moved by the deck
        transformation bringing their corner nearest the base point onto
        it.

        """
        t, k = he
        t2, k2 = self.twin(he)
        h = self.holonomy(he)
        if t == t2:
            raise DegenerateQuad(f"half-edge {he} is glued to its own triangle")
        u, v, a, s = self.quad(he)
        if not self.is_flippable(he):
            raise DegenerateQuad(f"quad around half-edge {he} is not strictly convex")
        wu, wv, wa = (self.corner_words[t][(k + i) % 3] for i in range(3))
        ws = h * self.corner_words[t2][(k2 + 2) % 3]

        if t < t2:
            frames = {t: Word.identity(), t2: h}
        else:
            h_inv = h.inverse()
            frames = {t: h_inv, t2: Word.identity()}
        lower = frames[t]
        points = [apply(lower.resolved, p) for p in (u, v, a, s)]
        words = [lower * w for w in (wu, wv, wa, ws)]
        nearest = min(range(4), key=lambda i: dist(self.base, points[i]))
        anchor = words[nearest].inverse()
        frames = {key: anchor * frame for key, frame in frames.items()}
        u, v, a, s = (apply(anchor.resolved, p) for p in points)
        wu, wv, wa, ws = (anchor * w for w in words)

        # new A = (u, s, a), new B = (s, v, a)
        remap = {
            (t, (k + 1) % 3): (t2, 1),
            (t, (k + 2) % 3): (t, 2),
            (t2, (k2 + 1) % 3): (t, 0),
            (t2, (k2 + 2) % 3): (t2, 0),
        }
        updates = []
        for old, new in remap.items():
            other = self.twin(old)
            hol = frames[old[0]] * self.holonomy(old)
            if other in remap:
                hol = hol * frames[other[0]].inverse()
                updates.append((new, remap[other], hol, None))
            else:
                updates.append((new, other, hol, hol.inverse()))

        self.corners[t] = [u, s, a]
        self.corners[t2] = [s, v, a]
        self.corner_words[t] = [wu, ws, wa]
        self.corner_words[t2] = [ws, wv, wa]
        for new, other, hol, back in updates:
            self.twins[new[0]][new[1]] = other
            self.holonomies[new[0]][new[1]] = hol
            if back is not None:
                self.twins[other[0]][other[1]] = new
                self.holonomies[other[0]][other[1]] = back
        self.twins[t][1] = (t2, 2)
        self.twins[t2][2] = (t, 1)
        self.holonomies[t][1] = Word.identity()
        self.holonomies[t2][2] = Word.identity()
        self.flips += 1
        return [(t, 0), (t, 2), (t2, 0), (t2, 1)]

    def run_flips(self, cap=parameters['pipeline']['flip_cap'], tol=TOL['pred']):
        """
        Flip until every edge is locally Delaunay.

        Parameters
        ----------
        cap : int
            Maximum number of flips.
        tol : float
            In-circle margin a violation has to exceed.

        Returns
        -------
        FlipStats

        """
        queue = deque(self.edges())
        queued = set(queue)
        flips = 0
        checks = 0
        max_queue = len(queue)
        while queue:
            he = queue.popleft()
            queued.discard(he)
            checks += 1
            if self.is_locally_delaunay(he, tol):
                continue
            if flips >= cap:
                raise IterationLimit(f"flip cap {cap} reached; try a looser predicate tolerance")
            for outer in self.flip(he):
                key = self.edge_key(outer)
                if key not in queued:
                    queued.add(key)
                    queue.append(key)
            flips += 1
            max_queue = max(max_queue, len(queue))
        logging.info(f"Flip algorithm finished: {flips} flips, {checks} edge checks, "
                     f"longest queue {max_queue}")
        return FlipStats(flips, checks, max_queue)

    def triangle(self, t):
        return HyperbolicPolygon(tuple(self.corners[t]))

    def corner_angles(self, t):
        return interior_angles(self.triangle(t), check_simple=False)

    def total_area(self):
        return sum(math.pi - sum(self.corner_angles(t)) for t in range(self.n_triangles))

    def vertex_angle_sum(self):
        return sum(sum(self.corner_angles(t)) for t in range(self.n_triangles))

    def check(self, tol=TOL['geom']):
        """
        Check orientation, corner words and gluing of every half-edge.

        Returns
        -------
        error : float
            Largest endpoint mismatch found.

        """
        worst = 0.0
        for t in range(self.n_triangles):
            p, q, r = self.corners[t]
            if orientation(p, q, r) <= 0.0:
                raise DegenerateQuad(f"triangle {t} is not positively oriented")
            for corner, word in zip(self.corners[t], self.corner_words[t]):
                worst = max(worst, abs(word.apply(self.base).z - corner.z))
        for he in self.half_edges():
            t, k = he
            t2, k2 = self.twin(he)
            if self.twin((t2, k2)) != he:
                raise WordMismatch(f"twin of {he} does not point back")
            h = self.holonomy(he).resolved
            start = h(self.corners[t2][k2].z)
            end = h(self.corners[t2][(k2 + 1) % 3].z)
            worst = max(worst, abs(start - self.corners[t][(k + 1) % 3].z),
                        abs(end - self.corners[t][k].z))
            if not (self.holonomy(he) * self.holonomy((t2, k2))).resolved.is_identity(tol):
                raise WordMismatch(f"holonomies of {he} and its twin are not inverse")
        if worst > tol:
            raise WordMismatch(f"gluing mismatch {worst:.3e}")
        return worst


def fan_triangulate(convex):
    """
    Fan triangulation of a convex polygon from vertex 0, glued into a
    closed surface by the polygon's side pairings.

    Parameters
    ----------
    convex : ConvexPolygon

    Returns
    -------
    SurfaceTriangulation

    """
    n = convex.n_sides
    q = convex.vertices
    corners = [[q[0], q[k + 1], q[k + 2]] for k in range(n - 2)]
    corner_words = [[convex.table[0], convex.table[k + 1], convex.table[k + 2]]
                    for k in range(n - 2)]
    twins = [[None] * 3 for _ in range(n - 2)]
    holonomies = [[Word.identity()] * 3 for _ in range(n - 2)]

    def boundary(side):
        if side == 0:
            return 0, 0
        if side == n - 1:
            return n - 3, 2
        return side - 1, 1

    for k in range(n - 3):
        twins[k][2] = (k + 1, 0)
        twins[k + 1][0] = (k, 2)
    for side in range(n):
        t, e = boundary(side)
        twins[t][e] = boundary(convex.pair[side])
        holonomies[t][e] = convex.pairing_word(side)
    triangulation = SurfaceTriangulation(corners, corner_words, twins, holonomies,
                                         convex.base, convex.genus, convex.frame)
    logging.info(f"Fan triangulation with {triangulation.n_triangles} triangles")
    return triangulation
