#  Copyright (c) 2024-2025. Affects AI LLC
#
#  Licensed under the Creative Common CC BY-NC-SA 4.0 International License (the "License");
#  you may not use this file except in compliance with the License. The full text of the License is
#  provided in the included LICENSE file. If this file is not available, you may obtain a copy of the
#  License at
#
#       https://creativecommons.org/licenses/by-nc-sa/4.0/deed.en
#
#  Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either
#  express or implied. See the License for the specific language governing permissions and limitations
#  under the License.

import copy
import math
import os.path

import yaml

default_config = {
    'working_dir': './aart_runs',
    'detector': {
        'n_layers': 20,
        'z_extent': 700.0,          # mm, layers equally spaced up to this z
        'r_inner': 8.0,             # mm
        'r_outer': 42.0,            # mm
    },
    'simulation': {
        'n_tracks': 50,
        'eta_range': [1.0, 6.0],
        'p_hit': 0.5,
        'n_min': 2,
        'smear_sigma': 0.01,        # mm, standard deviation
        'noise_mean': 250.0,
        'phi_window': None,         # radians, full acceptance when None
        'rng_seed': 0,
    },
    'retina': {
        'sigma': 0.05,
        'far_hit_cutoff': 8.0,      # in units of sigma, None disables
        'cost_C': 3.0,
    },
    'grid': {
        'theta_range': [-0.73, 0.73],
        'phi_range': [-math.pi, math.pi],
        'epsilon': 1e-3,
        'R_0': 1.5,
    },
    'optimizer': {
        'method': 'truncated_newton',
        'q': 3,
        'sigma_schedule': [0.3, 0.175, 0.05],
        'cost_C0': {                # response-units per update step, by method
            'truncated_newton': 30.0,
            'gradient_ascent': 10.0,
        },
        'cluster_radius': 5e-4,
        'R_0': 1.5,
        'prior': 'physical',
        'cg_max_iters': 5,
        'cg_tolerance': 1e-6,
        'c_armijo': 1e-4,
        'backtrack_factor': 0.5,
        'max_backtracking_iter': 8,
        'max_step': 0.05,           # radians, cap on the length of a trial step
        'learning_rate': 1e-5,      # gradient ascent only
    },
    'evaluation': {
        'epsilon': 1e-3,
        'multiplicities': [50, 150, 250, 350],
        'alphas': [1.0 / 3.0, 0.1],
        'events_per_point': 20,
    },
    'toy': {
        'n_planes': 10,
        'plane_spacing': 0.1,
        'fig1': {
            'tracks': [[0.25, 0.20], [-0.35, 0.70]],    # (angle, offset)
            'n_noise': 20,
            'x_noise': 0.0,
            'sigma': 2e-2,
            'angle_range': [-0.6, 0.6],
            'offset_range': [0.0, 1.0],
            'step': 0.01,
            'selection': 'maxima',          # strict local maxima
            'relative_threshold': 0.5,
        },
        'fig2': {
            'n_planes': 20,
            'plane_spacing': 0.05,
            'tracks': [[0.05, 0.50], [0.05, 0.60]],
            'n_noise': 0,
            'x_noise': 5e-3,
            'angle_range': [-0.05, 0.15],
            'offset_range': [0.35, 0.80],
            'step': 1e-3,
            'sigmas': {'small': 1e-3, 'mid': 1e-2, 'big': 1e-1},
            'selection': 'clusters',        # connected regions above the threshold
            'relative_threshold': 0.6,
        },
        'relative_threshold': 0.5,
    },
}


def _merge(base, override):
    result = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(result.get(key), dict):
            result[key] = _merge(result[key], value)
        else:
            result[key] = value
    return result


def load_config(path=None):
    """
    Returns the default configuration with the YAML file at `path` merged over it. Nested dicts are merged key by key,
    every other value in the file replaces the default.

    :param path: path to a YAML configuration file, or None for the defaults only.
    :return: the merged configuration dict
    """
    if path is None:
        return copy.deepcopy(default_config)

    with open(path, 'r') as f:
        user_config = yaml.safe_load(f)

    if user_config is None:
        return copy.deepcopy(default_config)
    if not isinstance(user_config, dict):
        raise ValueError('Configuration file {} must contain a mapping'.format(path))

    return _merge(default_config, user_config)


def method_cost_C0(method=None):
    """
    :param method: update method, defaults to config['optimizer']['method']
    :return: the configured cost C0 of one update step of `method`. A single number in the configuration applies to
    every method.
    """
    optimizer = config['optimizer']
    method = optimizer['method'] if method is None else method
    costs = optimizer['cost_C0']
    if not isinstance(costs, dict):
        return float(costs)
    if method not in costs:
        raise ValueError('No cost_C0 configured for update method {}'.format(method))
    return float(costs[method])


config = load_config('aart_config.yaml' if os.path.exists('aart_config.yaml') else None)
