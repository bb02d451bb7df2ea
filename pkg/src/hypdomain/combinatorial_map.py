"""
Combinatorial map of a fundamental polygon.

Side k of a polygon with 2m sides runs from vertex k to vertex k + 1.
Of each pair of sides the lower index is the representative; generator
i maps the partner of its representative side onto that side with the
endpoints reversed.

"""
import json
import logging
import math
from collections import deque
from dataclasses import dataclass, field

from networkx.utils import UnionFind

from hypdomain.exceptions import (
    EulerMismatch,
    LengthMismatch,
    NonClosingStar,
    NotCounterclockwise,
    NotMatching,
    OpenPolygon,
    PairingMismatch,
    SchemaError,
    SelfIntersecting,
    TooFewSides,
)
from hypdomain.hyperbolic import (
    TOL,
    DiskPoint,
    HyperbolicPolygon,
    Isometry,
    apply,
    compose,
    dist,
    interior_angles,
    inverse,
    normalize,
)


@dataclass(frozen=True)
class Letter:
    """
    A generator, its inverse, or the identity letter (index None).

    """
    index: int = None
    inverse: bool = False

    @classmethod
    def identity(cls):
        return cls(None, False)

    @property
    def is_identity(self):
        return self.index is None

    def inverted(self):
        if self.index is None:
            return self
        return Letter(self.index, not self.inverse)

    def __str__(self):
        if self.index is None:
            return 'id'
        return f"{'G' if self.inverse else 'g'}{self.index}"

    @classmethod
    def parse(cls, text):
        if text == 'id':
            return cls.identity()
        if len(text) < 2 or text[0] not in 'gG' or not text[1:].isdigit():
            raise SchemaError(f"'{text}' is not a letter")
        return cls(int(text[1:]), text[0] == 'G')


def _reduce(letters):
    stack = []
    for letter in letters:
        if letter.is_identity:
            continue
        if stack and stack[-1] == letter.inverted():
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


@dataclass(frozen=True, eq=False)
class Word:
    """
    Freely reduced word over the generators together with the isometry
    it resolves to.

    """
    letters: tuple = ()
    resolved: Isometry = field(default_factory=Isometry.identity)

    @classmethod
    def identity(cls):
        return cls((), Isometry.identity())

    @classmethod
    def generator(cls, index, generators, inverse_=False):
        g = generators[index]
        return cls((Letter(index, inverse_),), inverse(g) if inverse_ else g)

    @classmethod
    def from_string(cls, text, generators):
        word = cls.identity()
        if text == 'id':
            return word
        for part in text.split('.'):
            letter = Letter.parse(part)
            if letter.index >= len(generators):
                raise SchemaError(f"letter '{part}' refers to a missing generator")
            word = word * cls.generator(letter.index, generators, letter.inverse)
        return word

    def __mul__(self, other):
        return Word(_reduce(self.letters + other.letters),
                    compose(self.resolved, other.resolved))

    def inverse(self):
        return Word(tuple(letter.inverted() for letter in reversed(self.letters)),
                    inverse(self.resolved))

    def apply(self, p):
        return apply(self.resolved, p)

    def conjugated(self, g):
        """
        The same word read in the frame moved by g, resolving to g w g^-1.

        """
        return Word(self.letters, normalize(compose(compose(g, self.resolved), inverse(g))))

    def same_element(self, other, tol=TOL['geom']):
        return self.resolved.same_element(other.resolved, tol)

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __str__(self):
        if not self.letters:
            return 'id'
        return '.'.join(str(letter) for letter in self.letters)

    def __repr__(self):
        return f"Word('{self}')"


class PolygonInput:
    """
    Raw polygon as read from a file: vertices in the disk, the side
    matching and optionally one generator per pair mapping side j onto
    side i for a pair [i, j].

    """
    def __init__(self, vertices, pairings, generators=None):
        self.vertices = vertices
        self.pairings = pairings
        self.generators = generators

    def to_json_dict(self):
        data = {
            'vertices': [[z.real, z.imag] for z in self.vertices],
            'pairings': [[i, j] for i, j in self.pairings],
        }
        if self.generators is not None:
            data['generators'] = [g.as_list() for g in self.generators]
        return data

    @classmethod
    def from_json_dict(cls, data):
        if not isinstance(data, dict):
            raise SchemaError("top level: expected an object")
        for key in data:
            if key not in ('vertices', 'pairings', 'generators'):
                raise SchemaError(f"{key}: unknown field")
        vertices = _read_vertices(data)
        pairings = _read_pairings(data, len(vertices))
        generators = None
        if data.get('generators') is not None:
            raw = data['generators']
            if not isinstance(raw, list) or len(raw) != len(pairings):
                raise SchemaError("generators: expected one entry per pairing")
            generators = []
            for k, entry in enumerate(raw):
                if not _is_number_list(entry, 4):
                    raise SchemaError(f"generators[{k}]: expected [a_re, a_im, b_re, b_im]")
                a = complex(entry[0], entry[1])
                b = complex(entry[2], entry[3])
                det = abs(a) ** 2 - abs(b) ** 2
                if not det > 0.0:
                    raise SchemaError(f"generators[{k}]: |a|^2 - |b|^2 must be positive")
                generators.append(Isometry.from_pair(a, b))
        return cls(vertices, pairings, generators)


def _is_number_list(entry, length):
    return (isinstance(entry, list) and len(entry) == length
            and all(isinstance(x, (int, float)) and not isinstance(x, bool)
                    and math.isfinite(x) for x in entry))


def _read_vertices(data):
    if 'vertices' not in data:
        raise SchemaError("vertices: missing field")
    raw = data['vertices']
    if not isinstance(raw, list):
        raise SchemaError("vertices: expected a list")
    vertices = []
    for k, entry in enumerate(raw):
        if not _is_number_list(entry, 2):
            raise SchemaError(f"vertices[{k}]: expected [re, im]")
        z = complex(entry[0], entry[1])
        if not abs(z) < 1.0:
            raise SchemaError(f"vertices[{k}]: point is not inside the unit disk")
        vertices.append(z)
    return vertices


def _read_pairings(data, n_sides):
    if 'pairings' not in data:
        raise SchemaError("pairings: missing field")
    raw = data['pairings']
    if not isinstance(raw, list):
        raise SchemaError("pairings: expected a list")
    pairings = []
    for k, entry in enumerate(raw):
        if (not isinstance(entry, list) or len(entry) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in entry)):
            raise SchemaError(f"pairings[{k}]: expected [i, j] side indices")
        if not all(0 <= x < n_sides for x in entry):
            raise SchemaError(f"pairings[{k}]: side index out of range 0..{n_sides - 1}")
        pairings.append((entry[0], entry[1]))
    return pairings


def load_polygon_input(path):
    """
    Read and check a polygon file.

    Parameters
    ----------
    path : string
        Path to a JSON file.

    Returns
    -------
    PolygonInput

    """
    with open(path, 'r') as source:
        text = source.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as error:
        raise SchemaError(f"{path}:{error.lineno}:{error.colno}: {error.msg}") from error
    try:
        return PolygonInput.from_json_dict(data)
    except SchemaError as error:
        raise SchemaError(f"{path}: {error}") from error


@dataclass(frozen=True)
class EdgeRecord:
    prev: int
    next: int
    source: int
    target: int
    pair: int
    alpha: Letter


@dataclass(frozen=True)
class VertexRecord:
    """
    Polygon vertex with its orbit, the orbit representative's index and
    the word positioning it relative to the representative.

    """
    orbit: int
    representative: int
    word: Word
    position: DiskPoint


@dataclass(frozen=True)
class FundamentalPolygon:
    edges: tuple
    vertices: tuple
    generators: tuple
    orbit_reps: tuple
    rep_sides: tuple
    genus: int

    @property
    def n_sides(self):
        return len(self.edges)

    @property
    def n_orbits(self):
        return len(self.orbit_reps)

    @property
    def n_pairs(self):
        return len(self.generators)

    def position(self, k):
        return self.vertices[k % self.n_sides].position

    def orbit_of(self, k):
        return self.vertices[k % self.n_sides].orbit

    def generator_of(self, side):
        """
        Index of the generator attached to the pair containing `side`.

        """
        return self.rep_sides.index(min(side, self.edges[side].pair))

    def is_representative(self, side):
        return self.edges[side].alpha.is_identity

    def pairing_word(self, side):
        """
        The word mapping pair(side) onto side with endpoints reversed.

        """
        i = self.generator_of(side)
        return Word.generator(i, self.generators, inverse_=not self.is_representative(side))

    def side_length(self, side):
        return dist(self.position(side), self.position(side + 1))

    @property
    def perimeter(self):
        return sum(self.side_length(k) for k in range(self.n_sides))

    @property
    def polygon(self):
        return HyperbolicPolygon(tuple(v.position for v in self.vertices))

    @property
    def pair(self):
        return [e.pair for e in self.edges]

    def orbit_members(self, orbit):
        return [k for k, v in enumerate(self.vertices) if v.orbit == orbit]


def _check_matching(n_sides, pairings):
    pair = [None] * n_sides
    for i, j in pairings:
        if i == j:
            raise NotMatching(f"side {i} is paired with itself")
        for side, partner in ((i, j), (j, i)):
            if pair[side] is not None:
                raise NotMatching(f"side {side} appears in more than one pairing")
            pair[side] = partner
    missing = [k for k, p in enumerate(pair) if p is None]
    if missing:
        raise NotMatching(f"sides {missing} are not paired")
    return pair


def _vertex_orbits(n_sides, pair):
    components = UnionFind(range(n_sides))
    for i in range(n_sides):
        j = pair[i]
        components.union(j, (i + 1) % n_sides)
        components.union((j + 1) % n_sides, i)
    # orbits are numbered by their lowest vertex
    roots = sorted(min(members) for members in components.to_sets())
    orbit_ids = {components[root]: index for index, root in enumerate(roots)}
    return [orbit_ids[components[k]] for k in range(n_sides)], roots


def genus_from_euler(n_orbits, n_pairs):
    """
    Genus of the closed surface glued from a polygon with `n_pairs` side
    pairs and `n_orbits` vertex orbits, from 2 - 2g = n - m + 1.

    """
    twice_genus = n_pairs - n_orbits + 1
    if twice_genus % 2 or twice_genus < 4:
        raise EulerMismatch(f"n = {n_orbits}, m = {n_pairs} gives no genus >= 2")
    genus = twice_genus // 2
    n_sides = 2 * n_pairs
    if not 4 * genus <= n_sides <= 12 * genus - 6:
        raise EulerMismatch(f"{n_sides} sides is outside [{4 * genus}, {12 * genus - 6}]")
    return genus


def build(raw, tol=TOL['geom']):
    """
    Link a raw polygon into a combinatorial map.

    Parameters
    ----------
    raw : PolygonInput
    tol : float
        Tolerance on paired side lengths and endpoint matching.

    Returns
    -------
    FundamentalPolygon

    """
    n_sides = len(raw.vertices)
    if n_sides < 8 or n_sides % 2:
        raise TooFewSides(f"a closed surface polygon needs an even number >= 8 of sides, got {n_sides}")
    pair = _check_matching(n_sides, raw.pairings)
    points = [DiskPoint.from_complex(z) for z in raw.vertices]
    for k in range(n_sides):
        if dist(points[k], points[(k + 1) % n_sides]) <= tol:
            raise OpenPolygon(f"side {k} has zero length")
    if HyperbolicPolygon(tuple(points)).klein_area() <= 0.0:
        raise NotCounterclockwise("vertices are not in counterclockwise order")

    rep_sides = tuple(sorted(min(i, j) for i, j in raw.pairings))
    generators = []
    for i in rep_sides:
        j = pair[i]
        vi, vi1 = points[i], points[(i + 1) % n_sides]
        vj, vj1 = points[j], points[(j + 1) % n_sides]
        difference = abs(dist(vi, vi1) - dist(vj, vj1))
        if difference > tol:
            raise LengthMismatch(f"sides {i} and {j} differ in length by {difference:.3e}")
        if raw.generators is not None:
            index = next(k for k, (a, b) in enumerate(raw.pairings) if min(a, b) == i)
            g = raw.generators[index]
            if raw.pairings[index][0] != i:
                g = inverse(g)
        else:
            g = Isometry.segment_map(vj, vj1, vi1, vi)
        error = max(abs(g(vj.z) - vi1.z), abs(g(vj1.z) - vi.z))
        if error > 10 * tol:
            raise PairingMismatch(f"generator for sides {i} and {j} misses the endpoints by {error:.3e}")
        generators.append(g)
    generators = tuple(generators)
    generator_index = {side: k for k, side in enumerate(rep_sides)}

    orbit_of, roots = _vertex_orbits(n_sides, pair)
    n_orbits = len(roots)
    genus = genus_from_euler(n_orbits, n_sides // 2)

    # positioning words from v_j ~ v_{i+1} and v_{j+1} ~ v_i
    links = [[] for _ in range(n_sides)]
    for i in rep_sides:
        j = pair[i]
        gamma = Word.generator(generator_index[i], generators)
        gamma_inv = gamma.inverse()
        links[j].append(((i + 1) % n_sides, gamma))
        links[(i + 1) % n_sides].append((j, gamma_inv))
        links[(j + 1) % n_sides].append((i, gamma))
        links[i].append(((j + 1) % n_sides, gamma_inv))
    words = [None] * n_sides
    for root in roots:
        words[root] = Word.identity()
        queue = deque([root])
        while queue:
            k = queue.popleft()
            for other, gamma in links[k]:
                if words[other] is None:
                    words[other] = gamma * words[k]
                    queue.append(other)

    vertices = []
    for k in range(n_sides):
        rep = roots[orbit_of[k]]
        position = words[k].apply(points[rep])
        if abs(position.z - points[k].z) > 10 * tol:
            raise PairingMismatch(f"vertex {k} is not placed by its positioning word")
        vertices.append(VertexRecord(orbit_of[k], rep, words[k], points[k]))

    edges = []
    for k in range(n_sides):
        alpha = Letter.identity() if k < pair[k] else Letter(generator_index[pair[k]], False)
        edges.append(EdgeRecord((k - 1) % n_sides, (k + 1) % n_sides, k, (k + 1) % n_sides,
                                pair[k], alpha))

    logging.info(f"Built polygon with {n_sides} sides, {n_orbits} vertex orbits, genus {genus}")
    return FundamentalPolygon(tuple(edges), tuple(vertices), generators,
                              tuple(points[r] for r in roots), rep_sides, genus)


class ValidationReport:
    """
    A class constructor for the outcome of checking a polygon; failures
    are collected as messages.

    """
    def __init__(self, n, m, genus, orbit_angle_sums, length_discrepancies, perimeter, failures):
        self.n = n
        self.m = m
        self.genus = genus
        self.orbit_angle_sums = orbit_angle_sums
        self.length_discrepancies = length_discrepancies
        self.perimeter = perimeter
        self.failures = failures

    @property
    def passed(self):
        return not self.failures

    def to_text(self):
        lines = [f"n = {self.n}, m = {self.m}, g = {self.genus}",
                 f"perimeter = {self.perimeter!r}"]
        for orbit, total in enumerate(self.orbit_angle_sums):
            lines.append(f"orbit {orbit}: angle sum {total!r} (2 pi {total - 2 * math.pi:+.3e})")
        if self.length_discrepancies:
            lines.append(f"max paired length discrepancy {max(self.length_discrepancies):.3e}")
        lines.extend(f"FAIL: {failure}" for failure in self.failures)
        lines.append('PASS' if self.passed else 'FAILED')
        return '\n'.join(lines)


def validate(polygon, tol_angle=TOL['angle']):
    """
    Check the angle condition on every vertex orbit.

    Parameters
    ----------
    polygon : FundamentalPolygon
    tol_angle : float

    Returns
    -------
    ValidationReport
        Failures are reported, never raised.

    """
    failures = []
    sums = [0.0] * polygon.n_orbits
    try:
        angles = interior_angles(polygon.polygon)
        for k, angle in enumerate(angles):
            sums[polygon.orbit_of(k)] += angle
        for orbit, total in enumerate(sums):
            if abs(total - 2 * math.pi) > tol_angle:
                failures.append(f"orbit {orbit} angle sum {total!r} differs from 2 pi")
    except SelfIntersecting as error:
        failures.append(str(error))
    discrepancies = [abs(polygon.side_length(i) - polygon.side_length(polygon.edges[i].pair))
                     for i in polygon.rep_sides]
    return ValidationReport(polygon.n_orbits, polygon.n_pairs, polygon.genus, sums,
                            discrepancies, polygon.perimeter, failures)


@dataclass(frozen=True)
class StarEntry:
    edge: int
    word: Word


class VertexStar:
    """
    Edges around one lift of a vertex in counterclockwise order.

    For a star around the source of the starting edge the lift equals
    entry.word applied to the source of entry.edge, for a target star to
    the target.

    """
    def __init__(self, entries, relator, steps):
        self.entries = entries
        self.relator = relator
        self.steps = steps

    def __len__(self):
        return len(self.entries)

    @property
    def edge_ends(self):
        return 2 * len(self.entries)


def walk_star(n_sides, pair, pairing_word, start, end='source', max_steps=None,
              tol=TOL['geom']):
    """
    Turn around a vertex of the tiling by the polygon translates.

    Parameters
    ----------
    n_sides : int
    pair : sequence of int
        Side pairing.
    pairing_word : callable
        Side index to the Word mapping its partner onto it.
    start : int
        Starting side.
    end : string
        'source' or 'target' of the starting side.
    max_steps : int
        Defaults to the number of sides.

    Returns
    -------
    VertexStar

    """
    if end not in ('source', 'target'):
        raise ValueError(f"end must be 'source' or 'target', not {end!r}")
    if max_steps is None:
        max_steps = n_sides
    shift = -1 if end == 'source' else 1
    entries = [StarEntry(start, Word.identity())]
    frame = Word.identity()
    current = start
    steps = 0
    while True:
        crossed = (current + shift) % n_sides
        frame = frame * pairing_word(crossed)
        current = pair[crossed]
        steps += 1
        if current == start:
            break
        if steps >= max_steps:
            raise NonClosingStar(f"star of side {start} did not close after {steps} steps")
        entries.append(StarEntry(current, frame))
    if not frame.resolved.is_identity(tol):
        raise NonClosingStar(f"star of side {start} closes with a non trivial element {frame}")
    if end == 'target':
        entries = entries[:1] + entries[:0:-1]
    return VertexStar(entries, frame, steps)


def incident_edges(polygon, edge, end='source'):
    """
    Edges of the tiling incident to the lift of one endpoint of `edge`,
    each with the word placing the tile it is a side of.

    """
    return walk_star(polygon.n_sides, polygon.pair, polygon.pairing_word, edge, end)


def vertex_relations(polygon):
    """
    The relator read off the full star of each vertex orbit.

    Returns
    -------
    relators : list of Word, one per orbit

    """
    relators = []
    for orbit in range(polygon.n_orbits):
        first = polygon.orbit_members(orbit)[0]
        relators.append(incident_edges(polygon, first, 'source').relator)
    return relators
