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

"""
Data behind the response-map and efficiency figures. Plotting is left to external tools; every fixture produces CSV
rows.
"""
import dataclasses
import logging
from typing import List, Tuple

from aart import config
from aart.grid import ParamGrid, ResponseGrid, evaluate_grid, relative_clusters, relative_maxima
from aart.retina import DistanceModelKind, RetinaConfig
from aart.simulation import ToyEvent, close_tracks_event, two_track_event

logger = logging.getLogger('Figures')

TOY_AXES = ('angle', 'offset')
RESPONSE_MAP_FIXTURES = ('fig1', 'fig2-small', 'fig2-mid', 'fig2-big')
EFFICIENCY_FIXTURES = {'fig3a': 0, 'fig3b': 1}
FIXTURES = RESPONSE_MAP_FIXTURES + tuple(EFFICIENCY_FIXTURES)


@dataclasses.dataclass(frozen=True)
class ResponseMap:
    event: ToyEvent
    response_grid: ResponseGrid
    maxima: List[Tuple[Tuple[int, int], float]]
    sigma: float


def toy_response_map(event: ToyEvent, sigma, angle_range, offset_range, step, relative_threshold=None,
                     selection='maxima'):
    """
    Evaluates the exact toy-model response of `event` on a grid over (angle, offset) and selects the cells above
    relative_threshold times the largest response.

    :param selection: 'maxima' for strict local maxima, 'clusters' for the peak of each connected region
    """
    relative_threshold = config['toy']['relative_threshold'] if relative_threshold is None else relative_threshold
    grid = ParamGrid.from_step(angle_range, offset_range, step)
    cfg = RetinaConfig(sigma, DistanceModelKind.TOY_2D, None)
    rg = evaluate_grid(event.hits, grid, cfg)
    if selection == 'clusters':
        maxima = relative_clusters(rg, relative_threshold)
    elif selection == 'maxima':
        maxima = relative_maxima(rg, relative_threshold)
    else:
        raise ValueError('Unknown selection {}'.format(selection))
    logger.debug(f'sigma={sigma}: {len(maxima)} {selection} on a {grid.n_theta} x {grid.n_phi} grid')
    return ResponseMap(event, rg, maxima, sigma)


def response_map_fixture(name, rng_seed=0):
    """
    :param name: one of RESPONSE_MAP_FIXTURES. fig1 is the two-track event with noise hits, fig2-small/mid/big the two
    close tracks at the small, comparable and large bandwidth.
    :return: ResponseMap
    """
    if name == 'fig1':
        fig = config['toy']['fig1']
        event = two_track_event(rng_seed)
        sigma = fig['sigma']
    elif name in RESPONSE_MAP_FIXTURES:
        fig = config['toy']['fig2']
        event = close_tracks_event(rng_seed)
        sigma = fig['sigmas'][name.split('-')[1]]
    else:
        raise ValueError('Unknown response map fixture {}'.format(name))

    return toy_response_map(event, sigma, fig['angle_range'], fig['offset_range'], fig['step'],
                            fig.get('relative_threshold'), fig.get('selection', 'maxima'))
