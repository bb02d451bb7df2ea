"""
Numerical kernel for the Poincare disk model.

Points are kept as complex numbers inside the unit disk, orientation
preserving isometries as normalized pairs (a, b) acting by

    z -> (a z + b) / (conj(b) z + conj(a)),     |a|^2 - |b|^2 = 1.

The predicates used by the triangulation stages work on Klein model
coordinates (orientation, crossings) and on Euclidean disk coordinates
(in-circle), both of which agree in sign with the hyperbolic notions.

"""
import cmath
import math
from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np
from scipy.optimize import minimize

from hypdomain.exceptions import (
    CenterAtInfinity,
    Collinear,
    Disjoint,
    EllipticOrParabolic,
    Identical,
    InvalidPolygon,
    OutsideDisk,
    RenormalizationError,
    SelfIntersecting,
)
from hypdomain.inputs import parameters

TOL = parameters['tolerances']
RENORMALIZE_EVERY = parameters['pipeline']['renormalize_every']


@dataclass(frozen=True)
class DiskPoint:
    """
    A point of the open unit disk.

    """
    re: float
    im: float

    def __post_init__(self):
        if not (self.re * self.re + self.im * self.im < 1.0):
            raise OutsideDisk(f"point ({self.re}, {self.im}) is not inside the unit disk")

    @classmethod
    def from_complex(cls, z):
        return cls(float(z.real), float(z.imag))

    @property
    def z(self):
        return complex(self.re, self.im)

    def __repr__(self):
        return f"DiskPoint({self.re!r}, {self.im!r})"


def as_complex(p):
    if isinstance(p, DiskPoint):
        return p.z
    return complex(p)


@dataclass(frozen=True)
class Isometry:
    """
    Orientation preserving isometry of the disk stored as (a, b).

    Compositions count towards a renormalization: every
    `RENORMALIZE_EVERY` products the pair is rescaled back onto
    |a|^2 - |b|^2 = 1.

    """
    a: complex = 1 + 0j
    b: complex = 0j
    pending: int = field(default=0, compare=False, repr=False)

    @classmethod
    def identity(cls):
        return cls(1 + 0j, 0j)

    @classmethod
    def from_pair(cls, a, b):
        return normalize(cls(complex(a), complex(b)))

    @classmethod
    def moving_to_origin(cls, p):
        """
        The isometry z -> (z - p) / (1 - conj(p) z).

        Its derivative at p is real and positive, so directions at p
        are carried to the same directions at the origin.

        """
        p = as_complex(p)
        s = math.sqrt(1.0 - abs(p) ** 2)
        return cls(1.0 / s + 0j, -p / s)

    @classmethod
    def rotation(cls, theta):
        return cls(cmath.exp(0.5j * theta), 0j)

    @classmethod
    def segment_map(cls, p1, p2, q1, q2):
        """
        The isometry sending p1 to q1 and the ray p1 -> p2 onto the
        ray q1 -> q2.

        Parameters
        ----------
        p1, p2, q1, q2 : complex or DiskPoint
            Endpoints of the source and target segments.

        Returns
        -------
        Isometry

        """
        source = cls.rotation(-tangent_direction(p1, p2)) @ cls.moving_to_origin(p1)
        target = cls.rotation(-tangent_direction(q1, q2)) @ cls.moving_to_origin(q1)
        return normalize(target.inverse() @ source)

    def __call__(self, z):
        return (self.a * z + self.b) / (self.b.conjugate() * z + self.a.conjugate())

    def __matmul__(self, other):
        return compose(self, other)

    def inverse(self):
        return inverse(self)

    @property
    def det(self):
        return abs(self.a) ** 2 - abs(self.b) ** 2

    @property
    def trace(self):
        return 2.0 * self.a.real

    def distance_to_identity(self):
        """
        Distance of the matrix to the nearest of +I and -I.

        """
        plus = abs(self.a - 1.0) + abs(self.b)
        minus = abs(self.a + 1.0) + abs(self.b)
        return min(plus, minus)

    def is_identity(self, tol=TOL['geom']):
        return self.distance_to_identity() <= tol * max(1.0, abs(self.a))

    def same_element(self, other, tol=TOL['geom']):
        return (self @ other.inverse()).is_identity(tol)

    def as_list(self):
        return [self.a.real, self.a.imag, self.b.real, self.b.imag]


def normalize(g):
    det = abs(g.a) ** 2 - abs(g.b) ** 2
    if not math.isfinite(det) or det <= 0.0:
        raise RenormalizationError(
            f"isometry ({g.a}, {g.b}) has determinant {det}; with |a|^2 = {abs(g.a) ** 2:.3e} "
            f"the difference |a|^2 - |b|^2 cancels below double precision")
    s = math.sqrt(det)
    return Isometry(g.a / s, g.b / s, 0)


def norm_drift(g):
    """
    Drift of |a|^2 - |b|^2 from 1, relative to the size of the pair.

    """
    size = abs(g.a) ** 2 + abs(g.b) ** 2
    return abs(abs(g.a) ** 2 - abs(g.b) ** 2 - 1.0) / size


def check_normalized(g, tol=TOL['norm']):
    """
    Renormalize g after checking its pending products kept the determinant
    within `tol` of 1.

    Raises
    ------
    RenormalizationError

    """
    drift = norm_drift(g)
    if not drift <= tol:
        raise RenormalizationError(f"|a|^2 - |b|^2 drifted from 1 by {drift:.3e} relative, "
                                   f"beyond {tol:.1e}")
    return normalize(g)


def compose(g1, g2):
    """
    The product g1 g2, i.e. g2 applied first.

    """
    a = g1.a * g2.a + g1.b * g2.b.conjugate()
    b = g1.a * g2.b + g1.b * g2.a.conjugate()
    pending = max(g1.pending, g2.pending) + 1
    if pending >= RENORMALIZE_EVERY:
        return normalize(Isometry(a, b))
    return Isometry(a, b, pending)


def inverse(g):
    return Isometry(g.a.conjugate(), -g.b, g.pending)


def apply(g, p):
    """
    Apply an isometry to a disk point.

    Parameters
    ----------
    g : Isometry
    p : DiskPoint or complex

    Returns
    -------
    DiskPoint, or complex when a complex number was given.

    """
    if isinstance(p, DiskPoint):
        return DiskPoint.from_complex(g(p.z))
    return g(complex(p))


def dist(x, y):
    """
    Hyperbolic distance in the Poincare disk.

    """
    x = as_complex(x)
    y = as_complex(y)
    ratio = abs(x - y) / abs(1.0 - x.conjugate() * y)
    if ratio >= 1.0:
        raise OutsideDisk(f"distance between {x} and {y} is not finite")
    return 2.0 * math.atanh(ratio)


def tangent_direction(p, q):
    """
    Argument of the initial direction of the geodesic from p to q.

    """
    p = as_complex(p)
    q = as_complex(q)
    return cmath.phase((q - p) / (1.0 - p.conjugate() * q))


def point_at(p, theta, d):
    """
    The point at distance d from p in direction theta.

    """
    p = as_complex(p)
    w = math.tanh(d / 2.0) * cmath.exp(1j * theta)
    return Isometry.moving_to_origin(p).inverse()(w)


def midpoint(p, q):
    p = as_complex(p)
    q = as_complex(q)
    w = Isometry.moving_to_origin(p)(q)
    if abs(w) == 0.0:
        return p
    r = math.tanh(math.atanh(abs(w)) / 2.0)
    return Isometry.moving_to_origin(p).inverse()(r * w / abs(w))


def to_klein(z):
    z = as_complex(z)
    return 2.0 * z / (1.0 + abs(z) ** 2)


def from_klein(k):
    return k / (1.0 + math.sqrt(max(0.0, 1.0 - abs(k) ** 2)))


def _cross(u, v):
    return u.real * v.imag - u.imag * v.real


def orientation(p, q, r):
    """
    Signed orientation of the hyperbolic triangle (p, q, r).

    Geodesics are straight chords in the Klein model, so the sign of the
    Euclidean determinant there is the hyperbolic orientation.

    """
    kp, kq, kr = to_klein(p), to_klein(q), to_klein(r)
    return _cross(kq - kp, kr - kp)


def segments_cross(p1, p2, q1, q2):
    """
    True when the geodesic segments p1p2 and q1q2 cross at an interior
    point of both.

    """
    a, b, c, d = to_klein(p1), to_klein(p2), to_klein(q1), to_klein(q2)
    d1 = _cross(b - a, c - a)
    d2 = _cross(b - a, d - a)
    d3 = _cross(d - c, a - c)
    d4 = _cross(d - c, b - c)
    return d1 * d2 < 0.0 and d3 * d4 < 0.0


@dataclass(frozen=True)
class Geodesic:
    """
    Complete geodesic given by its two ideal endpoints.

    The order carries a direction: for a translation axis `p` is the
    repelling and `q` the attracting fixed point.

    """
    p: complex
    q: complex

    def __post_init__(self):
        for end in (self.p, self.q):
            if abs(abs(end) - 1.0) > TOL['norm']:
                raise OutsideDisk(f"geodesic endpoint {end} is not on the unit circle")

    @classmethod
    def from_endpoints(cls, p, q):
        p = complex(p)
        q = complex(q)
        return cls(p / abs(p), q / abs(q))

    @classmethod
    def through(cls, x, y):
        """
        The geodesic through two interior points, oriented from x to y.

        """
        x = as_complex(x)
        y = as_complex(y)
        m = Isometry.moving_to_origin(x)
        w = m(y)
        if abs(w) == 0.0:
            raise Identical(f"points {x} and {y} coincide")
        u = w / abs(w)
        back = m.inverse()
        return cls.from_endpoints(back(-u), back(u))

    def image(self, g):
        return Geodesic.from_endpoints(g(self.p), g(self.q))

    def reversed(self):
        return Geodesic(self.q, self.p)


def distance_to_geodesic(x, geodesic):
    """
    Hyperbolic distance from a point to a complete geodesic.

    """
    m = Isometry.moving_to_origin(x)
    p, q = m(geodesic.p), m(geodesic.q)
    half = abs(cmath.phase(q / p)) / 2.0
    r = math.tan(math.pi / 4.0 - half / 2.0)
    return 2.0 * math.atanh(min(abs(r), 1.0 - 1e-16))


def axis(g, tol=TOL['geom']):
    """
    Translation axis of a hyperbolic isometry.

    Parameters
    ----------
    g : Isometry
    tol : float
        Margin on |trace| / 2 below which g is not treated as hyperbolic.

    Returns
    -------
    Geodesic
        From the repelling to the attracting fixed point.

    """
    g = normalize(g)
    re_a = g.a.real
    if abs(re_a) <= 1.0 + tol:
        raise EllipticOrParabolic(f"isometry with half trace {re_a} has no axis")
    root = math.sqrt(re_a * re_a - 1.0)
    denominator = g.b.conjugate()
    z1 = (1j * g.a.imag + root) / denominator
    z2 = (1j * g.a.imag - root) / denominator
    # the derivative at a fixed point is 1 / (conj(b) z + conj(a))^2
    if abs(denominator * z1 + g.a.conjugate()) > 1.0:
        return Geodesic.from_endpoints(z2, z1)
    return Geodesic.from_endpoints(z1, z2)


def axis_by_iteration(g, z=0j, n=64):
    """
    Approximate the axis endpoints as the limits of g^-n(z) and g^n(z).

    """
    forward = complex(z)
    backward = complex(z)
    g_inv = inverse(g)
    for _ in range(n):
        forward = g(forward)
        backward = g_inv(backward)
    return Geodesic.from_endpoints(backward, forward)


def _on_arc(x, start, end):
    """
    True when x lies strictly inside the counterclockwise arc start -> end.

    """
    span = cmath.phase(end / start) % (2 * math.pi)
    offset = cmath.phase(x / start) % (2 * math.pi)
    return 0.0 < offset < span


def geodesic_intersection(first, second, tol=TOL['geom']):
    """
    The unique crossing point of two geodesics.

    Raises
    ------
    Identical
        When the two geodesics share both endpoints.
    Disjoint
        When the endpoint pairs do not interleave on the circle.

    """
    same = abs(first.p - second.p) + abs(first.q - second.q)
    swapped = abs(first.p - second.q) + abs(first.q - second.p)
    if min(same, swapped) <= tol:
        raise Identical("geodesics coincide")
    if _on_arc(second.p, first.p, first.q) == _on_arc(second.q, first.p, first.q):
        raise Disjoint("geodesic endpoints do not interleave")
    a, b, c, d = first.p, first.q, second.p, second.q
    denominator = _cross(b - a, d - c)
    if abs(denominator) <= tol:
        raise Disjoint("geodesics are asymptotically parallel")
    t = _cross(c - a, d - c) / denominator
    return DiskPoint.from_complex(from_klein(a + t * (b - a)))


def _hyperboloid(z):
    r2 = abs(z) ** 2
    return np.array([2.0 * z.real, 2.0 * z.imag, 1.0 + r2]) / (1.0 - r2)


def circumcenter(p, q, r, tol=TOL['geom']):
    """
    Point equidistant from the three vertices of a triangle.

    The vertices are lifted to the hyperboloid; the circumcenter is the
    unit timelike normal of the plane through the three lifts.

    Raises
    ------
    Collinear
        When the vertices lie on one geodesic.
    CenterAtInfinity
        When the three vertices lie on a horocycle or hypercycle.

    """
    zp, zq, zr = as_complex(p), as_complex(q), as_complex(r)
    if abs(orientation(zp, zq, zr)) <= tol:
        raise Collinear(f"points {zp}, {zq}, {zr} are collinear")
    xp, xq, xr = _hyperboloid(zp), _hyperboloid(zq), _hyperboloid(zr)
    normal = np.cross(xp - xq, xp - xr)
    c = np.array([normal[0], normal[1], -normal[2]])
    norm = c[0] ** 2 + c[1] ** 2 - c[2] ** 2
    scale = float(np.dot(c, c))
    if -norm > tol * scale:
        if c[2] < 0:
            c = -c
        c = c / math.sqrt(-norm)
        return DiskPoint.from_complex(complex(c[0], c[1]) / (1.0 + c[2]))
    if norm > tol * scale:
        raise CenterAtInfinity("vertices lie on a hypercycle")
    return _circumcenter_by_search(zp, zq, zr, tol)


def _circumcenter_by_search(zp, zq, zr, tol):
    def spread(xy):
        z = complex(xy[0], xy[1])
        if abs(z) >= 1.0:
            return 1e6
        d = [dist(z, w) for w in (zp, zq, zr)]
        return (d[0] - d[1]) ** 2 + (d[1] - d[2]) ** 2

    start = (zp + zq + zr) / 3.0
    result = minimize(spread, [start.real, start.imag], method='Nelder-Mead',
                      options={'xatol': 1e-14, 'fatol': 1e-20, 'maxiter': 4000})
    z = complex(result.x[0], result.x[1])
    if abs(z) >= 1.0 - math.sqrt(tol) or math.sqrt(result.fun) > math.sqrt(tol):
        raise CenterAtInfinity("vertices lie on a horocycle")
    return DiskPoint.from_complex(z)


class Sign(IntEnum):
    OUTSIDE = -1
    COCIRCULAR = 0
    INSIDE = 1


def in_circle_det(p, q, r, s):
    """
    Euclidean in-circle determinant of s against the circle through
    p, q, r.

    Hyperbolic circles are Euclidean circles in the disk, so for a
    counterclockwise triangle the sign says whether s lies inside the
    hyperbolic circumcircle.

    """
    zp, zq, zr, zs = (as_complex(x) for x in (p, q, r, s))
    ax, ay = zp.real - zs.real, zp.imag - zs.imag
    bx, by = zq.real - zs.real, zq.imag - zs.imag
    cx, cy = zr.real - zs.real, zr.imag - zs.imag
    a2 = ax * ax + ay * ay
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    return (ax * (by * c2 - b2 * cy)
            - ay * (bx * c2 - b2 * cx)
            + a2 * (bx * cy - by * cx))


def in_circle(p, q, r, s, tol=TOL['pred']):
    det = in_circle_det(p, q, r, s)
    if det > tol:
        return Sign.INSIDE
    if det < -tol:
        return Sign.OUTSIDE
    return Sign.COCIRCULAR


@dataclass(frozen=True)
class HyperbolicPolygon:
    """
    Counterclockwise geodesic polygon given by its vertices.

    """
    vertices: tuple

    def __post_init__(self):
        vertices = tuple(v if isinstance(v, DiskPoint) else DiskPoint.from_complex(v)
                         for v in self.vertices)
        object.__setattr__(self, 'vertices', vertices)
        if len(vertices) < 3:
            raise InvalidPolygon("a polygon needs at least three vertices")
        for k, v in enumerate(vertices):
            if v == vertices[(k + 1) % len(vertices)]:
                raise InvalidPolygon(f"vertices {k} and {k + 1} coincide")

    def __len__(self):
        return len(self.vertices)

    @property
    def points(self):
        return [v.z for v in self.vertices]

    def side(self, k):
        n = len(self.vertices)
        return self.vertices[k % n], self.vertices[(k + 1) % n]

    def side_lengths(self):
        return [dist(*self.side(k)) for k in range(len(self))]

    def klein_area(self):
        """
        Signed Euclidean area of the Klein model image; positive for a
        counterclockwise polygon.

        """
        ks = [to_klein(z) for z in self.points]
        return 0.5 * sum(_cross(ks[k], ks[(k + 1) % len(ks)]) for k in range(len(ks)))

    def is_simple(self):
        pts = self.points
        n = len(pts)
        for i in range(n):
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue
                if segments_cross(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]):
                    return False
        return True


def interior_angles(polygon, check_simple=True):
    """
    Interior angle at each vertex of a counterclockwise polygon.

    Parameters
    ----------
    polygon : HyperbolicPolygon
    check_simple : bool
        Run the pairwise side crossing sweep first.

    Returns
    -------
    angles : list of floats in (0, 2 pi)

    """
    if check_simple and not polygon.is_simple():
        raise SelfIntersecting("polygon sides cross")
    pts = polygon.points
    n = len(pts)
    angles = []
    for k in range(n):
        before = tangent_direction(pts[k], pts[k - 1])
        after = tangent_direction(pts[k], pts[(k + 1) % n])
        angle = (before - after) % (2 * math.pi)
        angles.append(min(max(angle, TOL['geom']), 2 * math.pi - TOL['geom']))
    return angles


def polygon_area(polygon):
    """
    Area from the angle defect, (n - 2) pi minus the angle sum.

    """
    if polygon.klein_area() <= 0.0:
        raise InvalidPolygon("polygon is not counterclockwise")
    angles = interior_angles(polygon)
    return (len(polygon) - 2) * math.pi - sum(angles)


def geodesic_arc(p, q):
    """
    Euclidean description of the geodesic segment from p to q.

    Returns
    -------
    ('line', None, None, None) for segments on a diameter, otherwise
    ('arc', center, radius, (theta1, theta2)) with the counterclockwise
    sweep from theta1 to theta2 covering the segment.

    """
    zp, zq = as_complex(p), as_complex(q)
    cross = _cross(zp, zq)
    if abs(cross) < 1e-12:
        return 'line', None, None, None
    # center c solves Re(conj(c) z) = (1 + |z|^2) / 2 for z = p, q
    rp = (1.0 + abs(zp) ** 2) / 2.0
    rq = (1.0 + abs(zq) ** 2) / 2.0
    cx = (rp * zq.imag - rq * zp.imag) / cross
    cy = (zp.real * rq - zq.real * rp) / cross
    center = complex(cx, cy)
    radius = math.sqrt(abs(center) ** 2 - 1.0)
    t1 = math.degrees(cmath.phase(zp - center))
    t2 = math.degrees(cmath.phase(zq - center))
    if (t2 - t1) % 360.0 > 180.0:
        t1, t2 = t2, t1
    return 'arc', center, radius, (t1, t2)
