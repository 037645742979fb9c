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

import math
import unittest

import numpy as np

from aart.evaluation import response_map_fixture
from aart.geometry import DetectorGeometry, TrackParams
from aart.grid import GridRetina, ParamGrid, ResponseGrid, activated_clusters, estimate_peak, estimate_track, \
    evaluate_grid, find_local_maxima, grid_cell_count_for_resolution, relative_clusters
from aart.retina import ResponseCounter, RetinaConfig, response
from aart.simulation import SimConfig, generate_event

N_NOISE_SEEDS = 100


def synthetic_grid(values, step=0.1):
    n_theta, n_phi = values.shape
    grid = ParamGrid((0.0, step * (n_theta - 1)), (0.0, step * (n_phi - 1)), n_theta, n_phi)
    return ResponseGrid(grid, np.asarray(values, dtype=float))


class GridRetinaTest(unittest.TestCase):
    def test_cell_count(self):
        self.assertEqual(10 ** 6, grid_cell_count_for_resolution(((0.0, 1.0), (0.0, 1.0)), 1e-3))
        self.assertEqual(1, grid_cell_count_for_resolution(((0.0, 0.5), (1.0, 1.5)), 0.5))
        self.assertEqual(1460 * 6284, grid_cell_count_for_resolution(((-0.73, 0.73), (-math.pi, math.pi)), 1e-3))
        self.assertEqual(9174640, grid_cell_count_for_resolution(((-0.73, 0.73), (-math.pi, math.pi)), 1e-3))

    def test_empty_hits(self):
        grid = ParamGrid((-0.1, 0.1), (-0.1, 0.1), 5, 7)
        counter = ResponseCounter()
        rg = evaluate_grid(np.empty((0, 3)), grid, RetinaConfig(), counter)
        np.testing.assert_array_equal(np.zeros((5, 7)), rg.values)
        self.assertEqual(35, counter.units)

    def test_grid_matches_pointwise_response(self):
        event = generate_event(SimConfig(n_tracks=5, rng_seed=1))
        grid = ParamGrid((-0.2, 0.2), (-0.3, 0.3), 9, 11)
        cfg = RetinaConfig(sigma=0.5)
        rg = evaluate_grid(event.coordinates, grid, cfg, jobs=2)
        for i, j in [(0, 0), (4, 5), (8, 10)]:
            self.assertAlmostEqual(response(event.coordinates, grid.cell_params((i, j)), cfg), rg.values[i, j],
                                   places=10)

    def test_constant_grid_has_no_maxima(self):
        self.assertEqual([], find_local_maxima(synthetic_grid(np.ones((5, 5))), R_0=0.0))

    def test_single_peak(self):
        x, y = np.meshgrid(np.arange(7), np.arange(9), indexing='ij')
        values = 10.0 - (x - 2) ** 2 - 0.5 * (y - 6) ** 2
        maxima = find_local_maxima(synthetic_grid(values), R_0=0.0)
        self.assertEqual([((2, 6), 10.0)], maxima)
        self.assertEqual([], find_local_maxima(synthetic_grid(values), R_0=11.0))

    def test_border_maximum(self):
        values = np.zeros((4, 4))
        values[0, 3] = 1.0
        self.assertEqual([((0, 3), 1.0)], find_local_maxima(synthetic_grid(values), R_0=0.5))

    def test_maxima_sorted(self):
        values = np.zeros((5, 9))
        values[1, 1] = 2.0
        values[3, 7] = 5.0
        values[1, 5] = 3.0
        cells = [cell for cell, _ in find_local_maxima(synthetic_grid(values), R_0=0.0)]
        self.assertEqual([(3, 7), (1, 5), (1, 1)], cells)

    def test_clusters(self):
        values = np.zeros((6, 10))
        values[1:3, 1:4] = 2.0
        values[2, 2] = 2.5
        values[4, 6] = 3.0
        values[4, 8] = 3.0
        values[3:6, 7] = 1.0

        # the plateau counts once, the ridge joining the two bumps makes them one cluster
        self.assertEqual([((4, 6), 3.0), ((2, 2), 2.5)], activated_clusters(synthetic_grid(values), R_0=1.0))
        self.assertEqual(2, len(find_local_maxima(synthetic_grid(values), R_0=2.8)))
        self.assertEqual([((4, 6), 3.0), ((4, 8), 3.0)], activated_clusters(synthetic_grid(values), R_0=2.8))
        rg = synthetic_grid(values)
        self.assertEqual(activated_clusters(rg, R_0=2.7), relative_clusters(rg, 0.9))
        self.assertEqual([], relative_clusters(synthetic_grid(np.zeros((3, 3))), 0.5))

    def test_estimate_centred_peak(self):
        x, y = np.meshgrid(np.arange(5), np.arange(5), indexing='ij')
        rg = synthetic_grid(5.0 - (x - 2) ** 2 - (y - 2) ** 2)
        np.testing.assert_allclose(rg.grid.cell_params((2, 2)), estimate_peak(rg, (2, 2)), atol=1e-15)

    def test_estimate_between_cells(self):
        step = 0.1
        x, y = np.meshgrid(np.arange(6) * step, np.arange(6) * step, indexing='ij')
        peak = (0.24, 0.16)
        rg = synthetic_grid(1.0 - (x - peak[0]) ** 2 - 3 * (y - peak[1]) ** 2, step)
        cell, _ = find_local_maxima(rg, R_0=0.0)[0]
        estimate = estimate_peak(rg, cell)
        self.assertLessEqual(abs(estimate[0] - peak[0]), 0.1 * step)
        self.assertLessEqual(abs(estimate[1] - peak[1]), 0.1 * step)

    def test_single_track(self):
        """
        The strongest cell of a noiseless single-track event is the one nearest the truth, and the interpolated
        estimate lies within half a cell of it.
        """
        geometry = DetectorGeometry.equally_spaced(r_inner=0.0, r_outer=1000.0)
        event = generate_event(SimConfig(n_tracks=1, geometry=geometry, p_hit=1.0, noise_mean=0.0, rng_seed=12))
        truth = event.true_tracks[0].params

        step = 2e-4
        grid = ParamGrid((truth.theta - 40.3 * step, truth.theta + 39.7 * step),
                         (truth.phi - 40.4 * step, truth.phi + 39.6 * step), 81, 81)
        retina = GridRetina(grid, RetinaConfig(sigma=0.1), R_0=5.0)
        candidates, rg = retina.reconstruct(event.coordinates)

        self.assertEqual(1, len(candidates))
        self.assertEqual(grid.nearest_cell(truth.as_array()), candidates[0].cell)
        self.assertEqual(np.unravel_index(np.argmax(rg.values), rg.values.shape), candidates[0].cell)
        estimate = estimate_track(rg, candidates[0].cell)
        self.assertIsInstance(estimate, TrackParams)
        self.assertLessEqual(abs(estimate.theta - truth.theta), grid.d_theta / 2)
        self.assertLessEqual(abs(estimate.phi - truth.phi), grid.d_phi / 2)

    def test_two_track_toy_event(self):
        """
        The response map of two 10-hit tracks with 20 noise hits has two maxima, each at most two steps from a track.
        """
        response_map = response_map_fixture('fig1', 0)
        grid = response_map.response_grid.grid
        self.assertEqual(2, len(response_map.maxima))

        for line in response_map.event.lines:
            distances = [max(abs(grid.cell_params(cell)[0] - line.angle) / grid.d_theta,
                             abs(grid.cell_params(cell)[1] - line.offset) / grid.d_phi)
                         for cell, _ in response_map.maxima]
            self.assertLessEqual(min(distances), 2.0)

    def test_bandwidth_phenomenology(self):
        """
        Two close tracks merge into one maximum at the large bandwidth, separate at the comparable one and fragment
        at the small one, for at least 95 of 100 noise seeds.
        """
        seeds = range(N_NOISE_SEEDS)
        expected = {'fig2-big': lambda n: n == 1, 'fig2-mid': lambda n: n == 2, 'fig2-small': lambda n: n > 2}
        for name, check in expected.items():
            passed = sum(1 for seed in seeds if check(len(response_map_fixture(name, seed).maxima)))
            self.assertGreaterEqual(passed, math.ceil(0.95 * len(seeds)), name)


if __name__ == '__main__':
    unittest.main()
