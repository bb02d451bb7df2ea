parameters = {
    'tolerances': {
        'geom': 1e-9,
        'pred': 1e-12,
        'norm': 1e-12,
        'angle': 1e-8,
        'area': 1e-8,
        'merge': 1e-7,
    },
    'pipeline': {
        'flip_cap': 10 ** 7,
        'samples': 10 ** 4,
        'seed': 0,
        'renormalize_every': 16,
    },
}

generators = {
    'bisection': {
        'lower': 1e-3,
        'upper': 25.0,
        'xtol': 1e-16,
        'maxiter': 200,
    },
    'symmetric': {
        'angle_jitter': 0.25,
        'radius_jitter': 0.15,
    },
}

render = {
    'viewport_px': 1000,
    'colors': {
        'input': 'black',
        'chains': 'tab:blue',
        'chords': 'tab:orange',
        'convex': 'tab:green',
        'triangulation': 'lightgrey',
        'dirichlet': 'tab:red',
    },
}
