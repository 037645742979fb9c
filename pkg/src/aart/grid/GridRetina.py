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

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.ndimage import label, maximum_filter, maximum_position

from aart import config
from aart.geometry import Line2D, TrackParams
from aart.retina import Candidate, NO_SEED, RetinaConfig, response_many
from .ParamGrid import ParamGrid
from .ResponseGrid import ResponseGrid

logger = logging.getLogger('GridRetina')

# Upper bound on the number of (point, hit) pairs evaluated in one vectorised chunk
CHUNK_ELEMENTS = 1 << 22

NEIGHBOURS = np.array([[1, 1, 1],
                       [1, 0, 1],
                       [1, 1, 1]], dtype=bool)


def evaluate_grid(hits, grid: ParamGrid, cfg: RetinaConfig, counter=None, jobs=1):
    """
    Computes the response of every unit of the grid.

    :param hits: hit array (no truth information)
    :param grid: the parameter lattice
    :param cfg: retina configuration
    :param counter: optional ResponseCounter, charged one unit per cell
    :param jobs: number of threads the point chunks are spread over
    :return: ResponseGrid
    """
    hits = cfg.distance.check_hits(hits)
    if counter is not None:
        counter.record_cells(grid.n_cells)

    if hits.shape[0] == 0:
        return ResponseGrid(grid, np.zeros((grid.n_theta, grid.n_phi)))

    points = grid.points()
    chunk = max(1, CHUNK_ELEMENTS // hits.shape[0])
    chunks = [points[start:start + chunk] for start in range(0, len(points), chunk)]

    if jobs > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            values = list(executor.map(lambda c: response_many(hits, c, cfg), chunks))
    else:
        values = [response_many(hits, c, cfg) for c in chunks]

    logger.debug(f'Evaluated {grid.n_cells} cells over {hits.shape[0]} hits in {len(chunks)} chunks')
    return ResponseGrid(grid, np.concatenate(values).reshape(grid.n_theta, grid.n_phi))


def find_local_maxima(rg: ResponseGrid, R_0=None):
    """
    Selects the activated units: cells strictly greater than all of their 8 neighbours (cells on the border compare
    only to the neighbours that exist) and not below the threshold R_0.

    :param rg: evaluated response grid
    :param R_0: activation threshold, defaults to config['grid']['R_0']
    :return: list of ((i, j), value), sorted by descending value, ties by ascending (i, j)
    """
    R_0 = config['grid']['R_0'] if R_0 is None else R_0
    values = rg.values
    neighbour_max = maximum_filter(values, footprint=NEIGHBOURS, mode='constant', cval=-np.inf)
    peaks = np.argwhere((values > neighbour_max) & (values >= R_0))

    result = [((int(i), int(j)), float(values[i, j])) for i, j in peaks]
    result.sort(key=lambda item: (-item[1], item[0]))
    return result


def _vertex_offset(below, centre, above):
    """
    Offset, in cells, of the vertex of the parabola through three equally spaced samples. 0 when the samples do not
    bend downwards or the vertex falls outside the centre cell.
    """
    curvature = below - 2.0 * centre + above
    if not curvature < 0:
        return 0.0
    offset = 0.5 * (below - above) / curvature
    return offset if abs(offset) <= 0.5 else 0.0


def estimate_peak(rg: ResponseGrid, cell):
    """
    Refines the position of a local maximum by fitting a parabola through the cell and its two neighbours along each
    axis. An axis without two neighbours, or whose parabola peaks outside the cell, keeps the cell centre.

    :return: 2-vector of estimated parameters
    """
    i, j = cell
    values = rg.values
    grid = rg.grid

    d_i = 0.0
    if 0 < i < grid.n_theta - 1:
        d_i = _vertex_offset(values[i - 1, j], values[i, j], values[i + 1, j])

    d_j = 0.0
    if 0 < j < grid.n_phi - 1:
        d_j = _vertex_offset(values[i, j - 1], values[i, j], values[i, j + 1])

    centre = grid.cell_params(cell)
    return np.array([centre[0] + d_i * grid.d_theta, centre[1] + d_j * grid.d_phi])


def estimate_track(rg: ResponseGrid, cell):
    """
    :return: the TrackParams of the sub-cell interpolated peak at `cell`
    """
    return TrackParams.from_array(estimate_peak(rg, cell))


def estimate_line(rg: ResponseGrid, cell):
    """
    Same as estimate_track, for grids over the 2D toy model's (angle, offset).
    """
    angle, offset = estimate_peak(rg, cell)
    return Line2D(float(angle), float(offset))


class GridRetina:
    def __init__(self, grid: ParamGrid, retina_config: RetinaConfig, R_0=None, jobs=1):
        """
        The baseline Artificial Retina: evaluate the response on every unit of the grid, select the activated units
        and estimate one track per selected unit.

        :param grid: the parameter lattice
        :param retina_config: sigma and distance model
        :param R_0: activation threshold, defaults to config['grid']['R_0']
        :param jobs: threads used for grid evaluation
        """
        self._grid = grid
        self._retina_config = retina_config
        self._R_0 = config['grid']['R_0'] if R_0 is None else R_0
        self._jobs = jobs

    @property
    def grid(self):
        return self._grid

    @property
    def R_0(self):
        return self._R_0

    def reconstruct(self, hits, counter=None):
        """
        :return: (list of Candidate, ResponseGrid)
        """
        rg = evaluate_grid(hits, self._grid, self._retina_config, counter=counter, jobs=self._jobs)
        distance = self._retina_config.distance
        candidates = [Candidate(distance.to_params(estimate_peak(rg, cell)), value, 1, NO_SEED, cell)
                      for cell, value in find_local_maxima(rg, self._R_0)]
        logger.debug(f'{len(candidates)} activated clusters above R_0={self._R_0}')
        return candidates, rg


def relative_maxima(rg: ResponseGrid, fraction):
    """
    Local maxima whose response is at least `fraction` of the grid's largest response, for comparing grids whose
    absolute scale differs.
    """
    peak = float(np.max(rg.values)) if rg.values.size else 0.0
    if peak <= 0:
        return []
    return find_local_maxima(rg, fraction * peak)


def activated_clusters(rg: ResponseGrid, R_0):
    """
    Groups the cells with response >= R_0 into 8-connected clusters and reports the highest cell of each. Unlike
    find_local_maxima, a plateau or a ridge with several bumps counts once.

    :return: list of ((i, j), value), sorted by descending value, ties by ascending (i, j)
    """
    values = rg.values
    labels, n_clusters = label(values >= R_0, structure=np.ones((3, 3), dtype=bool))

    if n_clusters == 0:
        return []
    positions = maximum_position(values, labels, index=np.arange(1, n_clusters + 1))
    result = [((int(i), int(j)), float(values[i, j])) for i, j in positions]
    result.sort(key=lambda item: (-item[1], item[0]))
    return result


def relative_clusters(rg: ResponseGrid, fraction):
    """
    activated_clusters with the threshold taken as `fraction` of the grid's largest response.
    """
    peak = float(np.max(rg.values)) if rg.values.size else 0.0
    if peak <= 0:
        return []
    return activated_clusters(rg, fraction * peak)
