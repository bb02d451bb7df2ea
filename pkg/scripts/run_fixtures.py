import configparser
import os
import sys
import warnings
import numpy as np
import pandas as pd
from tqdm import tqdm
from hypdomain.generators import (regular_polygon, symmetric_polygon,
                                  perturb_polygon, subdivide_pair)
from hypdomain.pipeline import PipelineConfig, run_pipeline, write_json
from hypdomain.exceptions import HypDomainError

pd.options.mode.chained_assignment = None
warnings.filterwarnings('ignore')

CONFIG = configparser.ConfigParser()
CONFIG.read(os.path.join(os.path.dirname(__file__), 'script_config.ini'))
BASE_PATH = CONFIG['file_locations']['base_path']
SEEDS = CONFIG.getint('fixtures', 'seeds', fallback = 5)
PERTURBATIONS = CONFIG.getint('fixtures', 'perturbations', fallback = 20)

DATA_FIXTURES = os.path.join(BASE_PATH, 'fixtures')
DATA_RESULTS = os.path.join(BASE_PATH, '..', 'results')


def fixtures(seeds = SEEDS, perturbations = PERTURBATIONS):
    """
    This function yields the named fixture
    polygons used for the batch run.
    """
    for genus in range(2, 6):

        yield 'regular_g{}'.format(genus), genus, regular_polygon(genus)

        for seed in range(seeds):

            yield 'symmetric_g{}_s{}'.format(genus, seed), genus, symmetric_polygon(genus, seed)

    rng = np.random.default_rng(0)
    octagon = regular_polygon(2)
    for idx in range(perturbations):

        yield 'perturbed_g2_{}'.format(idx), 2, perturb_polygon(octagon, rng)

    yield 'subdivided_g2', 2, subdivide_pair(octagon, 0)


def run_fixture(name, genus, raw, config):
    """
    This function runs the pipeline on one fixture
    and returns a row of statistics.
    """
    result = run_pipeline(raw, config)
    domain = result.domain
    convex = result.convex
    slack = min(convex.loop_lengths[i] + 2 * convex.c_len - convex.side_length(i)
                for i in range(convex.n_sides))

    write_json(domain.to_json_dict(), os.path.join(DATA_RESULTS, 'domains', name + '.json'))

    return {
        'fixture': name,
        'genus': genus,
        'input_sides': result.polygon.n_sides,
        'vertex_orbits': result.polygon.n_orbits,
        'star_steps': result.topological.access_count,
        'c_len': result.relocation.c_len,
        'l0': result.relocation.l0,
        'ratio': result.relocation.ratio,
        'length_slack': slack,
        'convex_perimeter': convex.perimeter,
        'flips': result.flip_stats.flips,
        'max_queue': result.flip_stats.max_queue,
        'dirichlet_sides': domain.n_sides,
        'dirichlet_area': domain.area,
        'dirichlet_perimeter': domain.perimeter,
        'max_violation': result.verification.max_violation,
        'violations': result.verification.violations,
    }


if __name__ == '__main__':

    os.makedirs(DATA_FIXTURES, exist_ok = True)
    os.makedirs(os.path.join(DATA_RESULTS, 'domains'), exist_ok = True)

    config = PipelineConfig.from_ini()
    rows = []
    failures = []

    for name, genus, raw in tqdm(list(fixtures()), desc = 'fixtures'):

        write_json(raw.to_json_dict(), os.path.join(DATA_FIXTURES, name + '.json'))

        try:

            row = run_fixture(name, genus, raw, config)
            rows.append(row)

            if row['violations']:

                failures.append({'fixture': name, 'error': 'VerificationFailure',
                                 'message': '{} sampled points closer to a translate'.format(
                                     row['violations'])})

        except HypDomainError as error:

            failures.append({'fixture': name, 'error': type(error).__name__,
                             'message': str(error)})

    df = pd.DataFrame(rows)
    fullpath = os.path.join(DATA_RESULTS, 'fixture_statistics.csv')
    df.to_csv(fullpath, index = False)
    print('Statistics for {} fixtures written to {}'.format(len(df), fullpath))

    if failures:

        pd.DataFrame(failures).to_csv(os.path.join(DATA_RESULTS, 'fixture_failures.csv'),
                                      index = False)
        print('{} fixtures failed'.format(len(failures)))

    sys.exit(1 if failures else 0)
