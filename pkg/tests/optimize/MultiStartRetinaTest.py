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

import os
import unittest

import numpy as np

from aart.evaluation import response_map_fixture
from aart.geometry import DetectorGeometry, Line2D, TrackParams, angular_distance, intersect_layer
from aart.grid import ParamGrid, evaluate_grid, find_local_maxima, estimate_track
from aart.optimize import MultiStartRetina, OptimizerConfig, PhysicalPrior, UniformBoxPrior, cluster_solutions, \
    run_multistart
from aart.retina import DistanceModelKind, ResponseCounter, RetinaConfig
from aart.simulation import SimConfig, SVeloSimulator, two_track_event

SLOW = bool(os.environ.get('AART_SLOW_TESTS'))


def clean_track_hits(truth, seed=0):
    rng = np.random.default_rng(seed)
    geometry = DetectorGeometry.equally_spaced()
    hits = np.array([[*intersect_layer(truth, z), z] for z in geometry.layer_z])
    hits[:, :2] += rng.normal(0.0, 0.01, size=(len(hits), 2))
    return hits


class MultiStartRetinaTest(unittest.TestCase):
    def setUp(self):
        self.truth = TrackParams(0.05, 0.3)
        self.hits = clean_track_hits(self.truth)
        self.cfg = OptimizerConfig(n_seeds=50, prior=UniformBoxPrior((0.04, 0.06), (0.29, 0.31)))

    def test_clean_track_gives_one_candidate(self):
        candidates = run_multistart(self.hits, self.cfg, rng=1)
        self.assertEqual(1, len(candidates))
        self.assertLess(angular_distance(candidates[0].params, self.truth), 1e-3)
        self.assertGreater(candidates[0].cluster_size, 1)
        self.assertGreaterEqual(candidates[0].response, self.cfg.R_0)

    def test_no_hits_no_candidates(self):
        self.assertEqual([], run_multistart(np.empty((0, 3)), self.cfg, rng=1))

    def test_budget_identity(self):
        counter = ResponseCounter(C0=30.0)
        result = MultiStartRetina(self.cfg).reconstruct(self.hits, 1, counter)
        self.assertEqual(50 * 3 * 30.0, counter.units)
        self.assertEqual(150, counter.optimizer_steps)
        # one full evaluation per seed and step, at least one line search trial for moving seeds, final responses
        self.assertEqual(150, result.evaluations.full_calls)
        self.assertGreaterEqual(result.evaluations.response_calls, 50)

    def test_deterministic(self):
        first = MultiStartRetina(self.cfg).reconstruct(self.hits, 7)
        second = MultiStartRetina(self.cfg).reconstruct(self.hits, 7)
        np.testing.assert_array_equal(first.history, second.history)
        self.assertEqual(first.candidates, second.candidates)

    def test_parallel_blocks_match_sequential(self):
        sequential = MultiStartRetina(self.cfg).reconstruct(self.hits, 3)
        parallel = MultiStartRetina(self.cfg, jobs=4).reconstruct(self.hits, 3)
        np.testing.assert_allclose(sequential.history, parallel.history, rtol=0, atol=1e-12)
        self.assertEqual(len(sequential.candidates), len(parallel.candidates))
        self.assertEqual(sequential.evaluations.full_calls, parallel.evaluations.full_calls)

    def test_trajectories(self):
        result = MultiStartRetina(self.cfg).reconstruct(self.hits, 2)
        self.assertEqual((4, 50, 2), result.history.shape)
        trajectory = result.trajectory(0)
        self.assertEqual(4, len(trajectory))
        self.assertIsInstance(trajectory.final, TrackParams)
        np.testing.assert_allclose(trajectory.initial.as_array(), result.history[0, 0])
        self.assertAlmostEqual(result.final_responses[0], trajectory.final_response)

        leader = result.candidates[0]
        self.assertEqual(leader.params, result.trajectory(leader.seed_id).final)

    def test_toy_event_matches_grid_maxima(self):
        fig = response_map_fixture('fig1')
        # a 10-hit line peaks near 10, lines through a few track and noise hits stay below 7
        cfg = OptimizerConfig(n_seeds=300, sigma_schedule=(0.1, 0.05, 0.02), R_0=9.0, cluster_radius=0.1,
                              prior=UniformBoxPrior((-0.6, 0.6), (0.0, 1.0)), distance_model=DistanceModelKind.TOY_2D)
        candidates = run_multistart(two_track_event().hits, cfg, rng=0)

        self.assertEqual(2, len(candidates))
        grid = fig.response_grid.grid
        maxima = [grid.cell_params(cell) for cell, _ in fig.maxima]
        for candidate in candidates:
            self.assertIsInstance(candidate.params, Line2D)
            nearest = min(np.linalg.norm(candidate.as_array() - m) for m in maxima)
            self.assertLess(nearest, 0.02)

    def test_cluster_solutions(self):
        p = TrackParams(0.1, 0.2)
        merged = cluster_solutions([(p, 5.0), (p, 5.0), (p, 5.0)], cluster_radius=1e-3, R_0=2.5)
        self.assertEqual(1, len(merged))
        self.assertEqual(3, merged[0].cluster_size)
        self.assertEqual(p, merged[0].params)

        far = TrackParams(0.1, 0.21)
        separate = cluster_solutions([(p, 5.0), (far, 4.0)], cluster_radius=1e-3, R_0=2.5)
        self.assertEqual([p, far], [c.params for c in separate])

        self.assertEqual([], cluster_solutions([(p, 1.0), (far, 2.0)], cluster_radius=1e-3, R_0=2.5))
        self.assertEqual([], cluster_solutions([], cluster_radius=1e-3, R_0=2.5))

    def test_cluster_members_below_threshold_are_counted(self):
        p = TrackParams(0.1, 0.2)
        near = TrackParams(0.1, 0.2005)
        candidates = cluster_solutions([(near, 1.0), (p, 3.0)], cluster_radius=1e-3, R_0=2.5)
        self.assertEqual(1, len(candidates))
        self.assertEqual(p, candidates[0].params)
        self.assertEqual(2, candidates[0].cluster_size)

    def test_cluster_order_independence(self):
        rng = np.random.default_rng(0)
        finals = [(TrackParams(*(rng.normal(centre, 1e-4, size=2))), float(rng.uniform(2, 10)))
                  for centre in ([0.1, 0.2], [-0.3, 1.0], [0.5, -0.4]) for _ in range(10)]
        expected = [(c.params, c.response, c.cluster_size) for c in cluster_solutions(finals, 2e-3, 2.5)]
        for _ in range(5):
            shuffled = [finals[i] for i in rng.permutation(len(finals))]
            result = [(c.params, c.response, c.cluster_size) for c in cluster_solutions(shuffled, 2e-3, 2.5)]
            self.assertEqual(expected, result)
        self.assertEqual(3, len(expected))

    @unittest.skipUnless(SLOW, 'set AART_SLOW_TESTS to run')
    def test_fine_grid_maxima_are_recovered(self):
        """
        On low-multiplicity events every maximum of a fine local grid around a true track has an optimizer candidate
        within 1e-3, in at least 95 of 100 events.
        """
        geometry = DetectorGeometry.equally_spaced(r_inner=0.0, r_outer=1000.0)
        simulator = SVeloSimulator(SimConfig(n_tracks=5, geometry=geometry, noise_mean=20.0, p_hit=1.0,
                                             eta_range=(2.0, 4.0)))
        retina_config = RetinaConfig(sigma=0.05)

        complete = 0
        for seed in range(100):
            event = simulator.generate_event(seed)
            cfg = OptimizerConfig(n_seeds=400 * max(1, len(event.true_tracks)),
                                  prior=PhysicalPrior(eta_range=(2.0, 4.0)))
            candidates = run_multistart(event.coordinates, cfg, rng=seed)

            maxima = []
            for track in event.true_tracks:
                theta, phi = track.params.theta, track.params.phi
                grid = ParamGrid.from_step((theta - 0.02, theta + 0.02), (phi - 0.02, phi + 0.02), 2e-4)
                rg = evaluate_grid(event.coordinates, grid, retina_config)
                # border cells may be the flank of a peak outside the window
                maxima.extend(estimate_track(rg, (i, j)) for (i, j), _ in find_local_maxima(rg, cfg.R_0)
                              if 0 < i < grid.n_theta - 1 and 0 < j < grid.n_phi - 1)

            missed = [m for m in maxima if not any(angular_distance(c.params, m) < 1e-3 for c in candidates)]
            complete += not missed

        self.assertGreaterEqual(complete, 95)


if __name__ == '__main__':
    unittest.main()
