"""
Run the stages in order and serialize their results.

"""
import configparser
import json
import logging
import os
from dataclasses import dataclass, field, replace

from hypdomain import combinatorial_map, delaunay, dirichlet, loop_embedding, loop_reduction
from hypdomain.exceptions import ConfigError, PoincareConditionError
from hypdomain.inputs import parameters

CONFIG = configparser.ConfigParser()
CONFIG.read(os.path.join(os.path.dirname(__file__), 'script_config.ini'))

TOLERANCE_KEYS = ('geom', 'pred', 'norm', 'angle', 'area', 'merge')


@dataclass(frozen=True)
class PipelineConfig:
    """
    Tolerances and run options for one pipeline run.

    """
    tolerances: dict = field(default_factory=lambda: dict(parameters['tolerances']))
    flip_cap: int = parameters['pipeline']['flip_cap']
    samples: int = parameters['pipeline']['samples']
    seed: int = parameters['pipeline']['seed']
    dump_stages: str = None
    out: str = None
    svg: str = None

    def __post_init__(self):
        for key in TOLERANCE_KEYS:
            value = self.tolerances.get(key)
            if value is None or not value > 0:
                raise ConfigError(f"tolerance '{key}' must be positive, got {value}")
        if self.flip_cap < 1:
            raise ConfigError(f"flip cap must be at least 1, got {self.flip_cap}")
        if self.samples < 0:
            raise ConfigError(f"sample count must not be negative, got {self.samples}")

    @property
    def tol(self):
        return self.tolerances

    @classmethod
    def from_ini(cls, config=CONFIG):
        """
        Defaults overridden by the [tolerances] section of the ini file.

        """
        tolerances = dict(parameters['tolerances'])
        if config.has_section('tolerances'):
            for key, value in config['tolerances'].items():
                if key not in TOLERANCE_KEYS:
                    raise ConfigError(f"unknown tolerance '{key}' in script_config.ini")
                try:
                    tolerances[key] = float(value)
                except ValueError as error:
                    raise ConfigError(f"tolerance '{key}' is not a number: {value}") from error
        return cls(tolerances=tolerances)

    def with_geom_tolerance(self, tol):
        """
        Set the geometric tolerance and keep the others in proportion.

        """
        factor = tol / self.tolerances['geom']
        return replace(self, tolerances={k: v * factor for k, v in self.tolerances.items()})


class PipelineResult:
    """
    A class constructor holding the result of every stage of one run.

    `convex` is in input polygon coordinates, `centered` is the same
    polygon with the new base point at the origin; the triangulation,
    star and domain use the coordinates of `centered`.

    """
    def __init__(self, polygon, report, tree, topological, crossing, relocation, convex,
                 centered, triangulation, flip_stats, star, domain, verification):
        self.polygon = polygon
        self.report = report
        self.tree = tree
        self.topological = topological
        self.crossing = crossing
        self.relocation = relocation
        self.convex = convex
        self.centered = centered
        self.triangulation = triangulation
        self.flip_stats = flip_stats
        self.star = star
        self.domain = domain
        self.verification = verification


def run_pipeline(raw, config=None):
    """
    Compute a Dirichlet domain from a raw polygon.

    Parameters
    ----------
    raw : PolygonInput
    config : PipelineConfig

    Returns
    -------
    PipelineResult

    Raises
    ------
    PoincareConditionError
        When the input fails the angle condition.

    """
    if config is None:
        config = PipelineConfig.from_ini()
    tol = config.tol
    polygon = combinatorial_map.build(raw, tol['geom'])
    report = combinatorial_map.validate(polygon, tol['angle'])
    if not report.passed:
        raise PoincareConditionError(report.to_text())

    tree = loop_reduction.spanning_tree(polygon)
    topological = loop_reduction.build_topological_polygon(polygon, tree, tol['geom'])
    crossing = loop_embedding.choose_crossing_pair(topological, tol['geom'])
    relocation = loop_embedding.relocate_basepoint(crossing, tol['geom'])
    convex = loop_embedding.build_convex_polygon(topological, relocation, tol['geom'],
                                                 tol['angle'], tol['area'])

    # the remaining stages run with the new base point at the origin
    centered = loop_embedding.rebase_at_origin(convex)
    triangulation = delaunay.fan_triangulate(centered)
    flip_stats = triangulation.run_flips(config.flip_cap, tol['pred'])

    star = dirichlet.star_of_basepoint(triangulation, tol['geom'])
    domain = dirichlet.dualize(star, polygon.genus, tol['geom'], tol['merge'], tol['norm'])
    verification = dirichlet.verify_fundamental(domain, config.samples, config.seed, tol['geom'])
    return PipelineResult(polygon, report, tree, topological, crossing, relocation, convex,
                          centered, triangulation, flip_stats, star, domain, verification)


def _point(p):
    return [p.re, p.im]


def topological_json(top):
    return {
        'base': _point(top.base),
        'sides': [{'source_side': s,
                   'chain': [[_point(p), _point(q)] for p, q in chain],
                   'chord': [_point(p) for p in top.chord(i)],
                   'partner': top.pair[i],
                   'pairing': str(top.side_pairings[i])}
                  for i, (s, chain) in enumerate(zip(top.polygon_sides, top.chains))],
        'table': [str(w) for w in top.table],
        'vertex_table': [str(w) for w in top.lift_words],
        'tree': list(top.tree.edges),
        'star_steps': top.access_count,
    }


def convex_json(convex, relocation):
    return {
        'base': _point(convex.base),
        'vertices': [_point(v) for v in convex.vertices],
        'pairings': [{'side': i, 'partner': convex.pair[i], 'word': str(convex.side_pairings[i])}
                     for i in range(convex.n_sides)],
        'side_lengths': [convex.side_length(i) for i in range(convex.n_sides)],
        'angles': list(convex.angles),
        'area': convex.area,
        'c_len': relocation.c_len,
        'l0': relocation.l0,
        'ratio': relocation.ratio,
    }


def triangulation_json(triangulation, stats):
    return {
        'triangles': [[_point(p) for p in corners] for corners in triangulation.corners],
        'edges': [{'half_edge': list(he),
                   'twin': list(triangulation.twin(he)),
                   'holonomy': str(triangulation.holonomy(he))}
                  for he in triangulation.half_edges()],
        'flips': stats.flips,
        'checks': stats.checks,
        'max_queue': stats.max_queue,
        'frame': triangulation.frame.as_list(),
    }


def dumps(data):
    return json.dumps(data, indent=2) + '\n'


def write_json(data, path):
    with open(path, 'w') as sink:
        sink.write(dumps(data))


def write_stages(result, directory):
    os.makedirs(directory, exist_ok=True)
    write_json(topological_json(result.topological), os.path.join(directory, 'topological.json'))
    write_json(convex_json(result.convex, result.relocation), os.path.join(directory, 'convex.json'))
    write_json(triangulation_json(result.triangulation, result.flip_stats),
               os.path.join(directory, 'triangulation.json'))
    logging.info(f"Stage files written to {directory}")
