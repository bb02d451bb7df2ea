"""
Dirichlet domain as the Voronoi cell dual to the Delaunay star of the
base point.

"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from hypdomain.combinatorial_map import PolygonInput, Word
from hypdomain.exceptions import DegenerateCell, NonClosingStar, WordMismatch
from hypdomain.hyperbolic import (
    TOL,
    DiskPoint,
    HyperbolicPolygon,
    Isometry,
    apply,
    check_normalized,
    circumcenter,
    dist,
    from_klein,
    interior_angles,
    inverse,
    to_klein,
)
from hypdomain.inputs import parameters


@dataclass(frozen=True)
class StarCorner:
    """
    A triangle corner at the base point lifted into the common frame.

    points[0] is the base point, points[1] and points[2] its two
    neighbours in counterclockwise order; words place each of them.

    """
    triangle: int
    corner: int
    frame: Word
    points: tuple
    words: tuple
    angle: float


class Star:
    """
    A class constructor for the triangle corners around one lift of the
    surface vertex.

    Parameters
    ----------
    center : DiskPoint
    center_word : Word
        Places the center relative to the base point.
    corners : list of StarCorner
    relator : Word
        Product of the holonomies crossed on the way around.
    frame : Isometry
        Carries input polygon coordinates to the coordinates of the star.

    """
    def __init__(self, center, center_word, corners, relator, frame=None):
        self.center = center
        self.center_word = center_word
        self.corners = corners
        self.relator = relator
        self.frame = frame if frame is not None else Isometry.identity()

    def __len__(self):
        return len(self.corners)

    @property
    def angle_sum(self):
        return sum(c.angle for c in self.corners)


def star_of_basepoint(triangulation, tol=TOL['geom']):
    """
    Walk around the lift of the vertex at corner 0 of triangle 0, moved
    onto the base point.

    Parameters
    ----------
    triangulation : SurfaceTriangulation

    Returns
    -------
    Star
        Corners in counterclockwise order.

    """
    max_steps = 2 * triangulation.n_edges
    start = triangulation.corner_words[0][0].inverse()
    corners = []
    turn = Word.identity()
    t, c = 0, 0
    while True:
        frame = start * turn
        lifted = [apply(frame.resolved, triangulation.corners[t][(c + i) % 3]) for i in range(3)]
        words = [frame * triangulation.corner_words[t][(c + i) % 3] for i in range(3)]
        angle = interior_angles(HyperbolicPolygon(tuple(lifted)), check_simple=False)[0]
        corners.append(StarCorner(t, c, frame, tuple(lifted), tuple(words), angle))
        incoming = (t, (c + 2) % 3)
        turn = turn * triangulation.holonomy(incoming)
        t, c = triangulation.twin(incoming)
        if (t, c) == (0, 0):
            break
        if len(corners) >= max_steps:
            raise NonClosingStar(f"star of the base point did not close after {len(corners)} corners")
    if not turn.resolved.is_identity(tol):
        raise NonClosingStar(f"star closes with a non trivial element {turn}")
    logging.info(f"Star of the base point with {len(corners)} corners")
    return Star(corners[0].points[0], corners[0].words[0], corners, turn, triangulation.frame)


@dataclass(frozen=True)
class DirichletDomain:
    """
    Voronoi cell of the center for its orbit.

    Side k runs from vertices[k] to vertices[k + 1] and lies on the
    bisector of the center and words[k] applied to the center; the word
    of side partner[k] is the inverse of words[k]. Coordinates are those
    of `frame` applied to the input polygon.

    """
    center: DiskPoint
    vertices: tuple
    words: tuple
    partner: tuple
    genus: int
    frame: Isometry = field(default_factory=Isometry.identity)

    @property
    def n_sides(self):
        return len(self.vertices)

    @property
    def polygon(self):
        return HyperbolicPolygon(self.vertices)

    @property
    def angles(self):
        return interior_angles(self.polygon)

    @property
    def area(self):
        return (self.n_sides - 2) * math.pi - sum(self.angles)

    @property
    def perimeter(self):
        return sum(dist(self.vertices[k], self.vertices[(k + 1) % self.n_sides])
                   for k in range(self.n_sides))

    def site(self, k):
        return self.words[k].apply(self.center)

    def in_input_frame(self):
        """
        The same domain in the coordinates of the input polygon.

        """
        back = inverse(self.frame)
        return DirichletDomain(apply(back, self.center),
                               tuple(apply(back, v) for v in self.vertices),
                               tuple(w.conjugated(back) for w in self.words),
                               self.partner, self.genus)

    def to_polygon_input(self):
        pairings = [(k, j) for k, j in enumerate(self.partner) if k < j]
        return PolygonInput([v.z for v in self.vertices], pairings,
                            [self.words[k].resolved for k, _ in pairings])

    def to_json_dict(self):
        """
        Output record in input polygon coordinates; area and perimeter
        are measured in the working frame.

        """
        output = self.in_input_frame()
        return {
            'genus': self.genus,
            'center': [output.center.re, output.center.im],
            'vertices': [[v.re, v.im] for v in output.vertices],
            'pairings': [{'side': k,
                          'partner': self.partner[k],
                          'word': str(output.words[k]),
                          'matrix': output.words[k].resolved.as_list()}
                         for k in range(self.n_sides)],
            'area': self.area,
            'perimeter': self.perimeter,
        }


def dualize(star, genus, tol=TOL['geom'], tol_merge=TOL['merge'], tol_norm=TOL['norm']):
    """
    Join the circumcenters of consecutive star triangles.

    Parameters
    ----------
    star : Star
    genus : int
    tol : float
    tol_merge : float
        Consecutive circumcenters closer than this are one vertex.
    tol_norm : float
        Allowed relative drift of |a|^2 - |b|^2 in the side words.

    Returns
    -------
    DirichletDomain

    """
    inverse_center = star.center_word.inverse()
    centers = [circumcenter(*corner.points, tol=tol) for corner in star.corners]
    # the side after circumcenter i crosses the edge shared by corners i and i + 1
    words = [corner.words[2] * inverse_center for corner in star.corners]
    count = len(centers)
    keep = [i for i in range(count) if dist(centers[i], centers[(i + 1) % count]) >= tol_merge]
    if len(keep) < 4 * genus:
        raise DegenerateCell(f"{len(keep)} sides survive merging, fewer than {4 * genus}")
    if count - len(keep):
        logging.info(f"Merged {count - len(keep)} cocircular Voronoi vertices")
    vertices = [centers[(keep[k - 1] + 1) % count] for k in range(len(keep))]
    side_words = [Word(words[i].letters, check_normalized(words[i].resolved, tol_norm))
                  for i in keep]

    labels = [str(w) for w in side_words]
    first = min(range(len(keep)), key=lambda k: labels[k])
    vertices = vertices[first:] + vertices[:first]
    side_words = side_words[first:] + side_words[:first]

    partner = []
    for k, word in enumerate(side_words):
        matches = [j for j, other in enumerate(side_words)
                   if j != k and (word * other).resolved.is_identity(tol)]
        if len(matches) != 1:
            raise WordMismatch(f"side {k} with word {word} has {len(matches)} partners")
        partner.append(matches[0])

    logging.info(f"Dirichlet domain with {len(keep)} sides")
    return DirichletDomain(star.center, tuple(vertices), tuple(side_words), tuple(partner), genus,
                           star.frame)


class VerificationReport:
    """
    A class constructor for the outcome of sampling a domain.

    """
    def __init__(self, samples, words, max_violation, violations, center_margin):
        self.samples = samples
        self.words = words
        self.max_violation = max_violation
        self.violations = violations
        self.center_margin = center_margin

    @property
    def passed(self):
        return self.violations == 0

    def to_text(self):
        return (f"checked {self.samples} points against {self.words} translates: "
                f"{self.violations} violations, max violation {self.max_violation:.3e}, "
                f"center margin {self.center_margin:.6f}")


def neighbour_words(domain, tol=TOL['geom']):
    """
    Side words and their products of length two, without the identity.

    """
    words = list(domain.words)
    for first in domain.words:
        for second in domain.words:
            product = first * second
            if not product.resolved.is_identity(tol):
                words.append(product)
    return words


def _distances(points, sites):
    """
    Matrix of hyperbolic distances between two arrays of disk points.

    """
    x = points[:, None]
    y = sites[None, :]
    ratio = np.abs(x - y) / np.abs(1.0 - np.conj(x) * y)
    return 2.0 * np.arctanh(ratio)


def verify_fundamental(domain, samples=parameters['pipeline']['samples'],
                       seed=parameters['pipeline']['seed'], tol=TOL['geom']):
    """
    Sample points of the domain and check none is closer to a neighbouring
    translate of the center than to the center.

    Parameters
    ----------
    domain : DirichletDomain
    samples : int
    seed : int
    tol : float

    Returns
    -------
    VerificationReport

    """
    rng = np.random.default_rng(seed)
    words = neighbour_words(domain, tol)
    sites = np.array([w.apply(domain.center).z for w in words])
    klein = np.array([to_klein(v) for v in domain.vertices])
    weights = rng.dirichlet(np.ones(len(klein)), size=samples)
    points = np.array([from_klein(k) for k in weights @ klein], dtype=complex)
    center = np.array([domain.center.z])
    margin = float(_distances(center, sites).min()) / 2.0
    if samples == 0:
        return VerificationReport(0, len(words), 0.0, 0, margin)
    excess = (_distances(points, center)[:, 0][:, None] - _distances(points, sites)).max(axis=1)
    max_violation = float(excess.max())
    violations = int((excess > tol).sum())
    logging.info(f"Verified {samples} samples, max violation {max_violation:.3e}")
    return VerificationReport(samples, len(words), max_violation, violations, margin)
