"""
Fixture surfaces: regular and centrally symmetric 4g-gons with opposite
sides identified, and operations producing other fundamental polygons
of a given surface.

"""
import cmath
import logging
import math

import numpy as np
from scipy.optimize import bisect

from hypdomain.combinatorial_map import PolygonInput, build
from hypdomain.exceptions import BisectionFailure
from hypdomain.hyperbolic import HyperbolicPolygon, Isometry, interior_angles, midpoint
from hypdomain.inputs import generators as settings


def opposite_pairings(n_sides):
    half = n_sides // 2
    return [(k, k + half) for k in range(half)]


def derive_generators(vertices, pairings):
    """
    For each pair [i, j], the isometry mapping side j onto side i with
    reversed endpoints.

    """
    n = len(vertices)
    return [Isometry.segment_map(vertices[j], vertices[(j + 1) % n],
                                 vertices[(i + 1) % n], vertices[i])
            for i, j in pairings]


def solve_angle_sum(directions, spreads=None, target=2 * math.pi):
    """
    Push a star shaped vertex configuration towards the boundary until
    the interior angles sum to `target`.

    Vertex k sits at hyperbolic distance radius * spreads[k] from the
    origin in direction directions[k].

    Parameters
    ----------
    directions : list of float
        Vertex arguments in increasing order, consecutive gaps below pi.
    spreads : list of float
        Relative distances, all ones by default.
    target : float

    Returns
    -------
    radius : float

    """
    conf = settings['bisection']
    units = np.exp(1j * np.asarray(directions, dtype=float))
    spreads = np.ones(len(units)) if spreads is None else np.asarray(spreads, dtype=float)

    def excess(radius):
        polygon = HyperbolicPolygon(tuple(place_vertices(units, spreads, radius)))
        return sum(interior_angles(polygon, check_simple=False)) - target

    lower, upper = conf['lower'], conf['upper']
    if excess(lower) * excess(upper) > 0:
        raise BisectionFailure(f"angle sum does not cross {target} between radii {lower} and {upper}")
    return bisect(excess, lower, upper, xtol=conf['xtol'], maxiter=conf['maxiter'])


def place_vertices(units, spreads, radius):
    return [complex(math.tanh(radius * s / 2.0) * u) for u, s in zip(units, spreads)]


def regular_polygon(genus):
    """
    Regular 4g-gon with all interior angles pi / (2g).

    Parameters
    ----------
    genus : int

    Returns
    -------
    PolygonInput

    """
    if genus < 2:
        raise ValueError(f"genus must be at least 2, got {genus}")
    n = 4 * genus
    directions = [2 * math.pi * k / n for k in range(n)]
    radius = solve_angle_sum(directions)
    vertices = place_vertices(np.exp(1j * np.asarray(directions)), np.ones(n), radius)
    pairings = opposite_pairings(n)
    logging.info(f"Regular {n}-gon with circumradius {radius!r}")
    return PolygonInput(vertices, pairings, derive_generators(vertices, pairings))


def symmetric_polygon(genus, seed=0):
    """
    Random centrally symmetric 4g-gon with opposite sides identified.

    Vertex directions and distances are jittered on one half and
    mirrored through the origin on the other, so opposite sides have
    equal length; a common radius then fixes the angle sum at 2 pi.

    """
    if genus < 2:
        raise ValueError(f"genus must be at least 2, got {genus}")
    conf = settings['symmetric']
    rng = np.random.default_rng(seed)
    n = 4 * genus
    step = 2 * math.pi / n
    half = step * (np.arange(2 * genus) + conf['angle_jitter'] * rng.uniform(-1, 1, 2 * genus))
    spreads = 1 + conf['radius_jitter'] * rng.uniform(-1, 1, 2 * genus)
    directions = np.concatenate([half, half + math.pi])
    spreads = np.concatenate([spreads, spreads])
    radius = solve_angle_sum(directions, spreads)
    vertices = place_vertices(np.exp(1j * directions), spreads, radius)
    pairings = opposite_pairings(n)
    return PolygonInput(vertices, pairings, derive_generators(vertices, pairings))


def perturb_polygon(raw, rng, size=0.02):
    """
    Move the vertices of orbit 0 to nearby points of the same orbit.

    The new vertex positions are the positioning words applied to a
    displaced representative, so the side pairings are unchanged.

    Parameters
    ----------
    raw : PolygonInput
    rng : numpy.random.Generator
    size : float
        Euclidean size of the displacement at the origin.

    Returns
    -------
    PolygonInput

    """
    polygon = build(raw)
    rep = polygon.orbit_reps[0].z
    shift = size * cmath.exp(2j * math.pi * rng.uniform())
    moved = Isometry.moving_to_origin(rep).inverse()(shift)
    vertices = list(raw.vertices)
    for k, vertex in enumerate(polygon.vertices):
        if vertex.orbit == 0:
            vertices[k] = vertex.word.resolved(moved)
    return PolygonInput(vertices, list(raw.pairings), list(raw.generators or []) or None)


def subdivide_pair(raw, side):
    """
    Insert the midpoint of `side` and its image on the partner side as
    new vertices, adding one vertex orbit and one side pair.

    Returns
    -------
    PolygonInput
        Without generators; they are derived again on build.

    """
    polygon = build(raw)
    n = polygon.n_sides
    partner = polygon.edges[side].pair
    x = midpoint(polygon.position(side).z, polygon.position(side + 1).z)
    x_partner = polygon.pairing_word(partner).resolved(x)

    vertices = []
    new_index = {}
    for k in range(n):
        new_index[k] = len(vertices)
        vertices.append(raw.vertices[k])
        if k == side:
            vertices.append(x)
        elif k == partner:
            vertices.append(x_partner)

    pairings = []
    for i, j in raw.pairings:
        if {i, j} == {side, partner}:
            continue
        pairings.append((new_index[i], new_index[j]))
    # side -> x pairs with x' -> end of partner; x -> end of side with partner -> x'
    s, p = new_index[side], new_index[partner]
    pairings.append((s, p + 1))
    pairings.append((s + 1, p))
    pairings.sort(key=min)
    return PolygonInput(vertices, pairings)
