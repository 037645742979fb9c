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

import dataclasses
import math
import unittest

import numpy as np
from scipy import stats

from aart.geometry import DetectorGeometry
from aart.simulation import SimConfig, SVeloSimulator, generate_event, noise_hit_sampler, sample_physical_params, \
    sample_physical_track

# a detector without a beam hole or outer edge, every forward track crosses every layer
OPEN_GEOMETRY = DetectorGeometry.equally_spaced(r_inner=0.0, r_outer=1000.0)
N_SAMPLES = 100000


class SVeloSimulatorTest(unittest.TestCase):
    def test_single_track_full_acceptance(self):
        cfg = SimConfig(n_tracks=1, geometry=OPEN_GEOMETRY, p_hit=1.0, noise_mean=0.0, rng_seed=5)
        event = generate_event(cfg)

        self.assertEqual(20, len(event.hits))
        self.assertTrue(all(h.truth == 0 for h in event.hits))
        self.assertEqual([0], [t.track_id for t in event.true_tracks])
        self.assertEqual(20, event.true_tracks[0].n_hits)
        self.assertEqual(list(range(20)), sorted(h.layer_index for h in event.hits))

    def test_no_hit_probability(self):
        event = generate_event(SimConfig(n_tracks=30, p_hit=0.0, rng_seed=2))
        self.assertEqual((), event.true_tracks)
        self.assertTrue(all(h.is_noise for h in event.hits))
        self.assertEqual(len(event.hits), event.n_noise_hits)

    def test_n_min_rule(self):
        event = generate_event(SimConfig(n_tracks=200, rng_seed=9))
        hits_per_track = {}
        for h in event.hits:
            if h.truth is not None:
                hits_per_track[h.truth] = hits_per_track.get(h.truth, 0) + 1

        self.assertEqual({t.track_id for t in event.true_tracks}, set(hits_per_track))
        for t in event.true_tracks:
            self.assertGreaterEqual(t.n_hits, 2)
            self.assertEqual(t.n_hits, hits_per_track[t.track_id])
        self.assertEqual(event.reconstructible_ids, frozenset(hits_per_track))

    def test_hits_in_acceptance(self):
        event = generate_event(SimConfig(n_tracks=100, rng_seed=4))
        geometry = event.config_snapshot.geometry
        for h in event.hits:
            self.assertAlmostEqual(geometry.layer_z[h.layer_index], h.z)
            # smearing may push a hit at most a few sigma past the annulus edges
            self.assertTrue(geometry.r_inner - 0.1 <= math.hypot(h.x, h.y) <= geometry.r_outer + 0.1)

    def test_determinism(self):
        simulator = SVeloSimulator(SimConfig(n_tracks=40))
        self.assertEqual(simulator.generate_event(17), simulator.generate_event(17))
        self.assertNotEqual(simulator.generate_event(17).hits, simulator.generate_event(18).hits)

    def test_noise_statistics(self):
        simulator = SVeloSimulator(SimConfig(n_tracks=0))
        counts = [len(e.hits) for e in simulator.generate_events(range(1000))]
        self.assertLess(abs(np.mean(counts) - 250.0), 3 * math.sqrt(250.0 / 1000))

    def test_hits_per_track(self):
        """
        A track crossing the whole open detector leaves p_hit * n_layers hits on average.
        """
        cfg = SimConfig(n_tracks=50, geometry=OPEN_GEOMETRY, noise_mean=0.0, n_min=1)
        hits = []
        for event in SVeloSimulator(cfg).generate_events(range(40)):
            hits.extend(t.n_hits for t in event.true_tracks)
        # tracks that leave zero hits are not counted, which shifts the mean by a negligible 20 * 0.5^20
        self.assertLess(abs(np.mean(hits) - 10.0), 3 * math.sqrt(5.0 / len(hits)))

    def test_physical_tracks(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            p = sample_physical_track(rng, (1.0, 6.0))
            self.assertTrue(p.is_forward)
            self.assertLessEqual(abs(p.theta), 0.73)

    def test_phi_window(self):
        rng = np.random.default_rng(1)
        params = sample_physical_params(rng, 5000, (1.0, 6.0), math.pi / 4)
        self.assertEqual((5000, 2), params.shape)
        self.assertTrue(np.all(np.abs(params[:, 1]) <= math.pi / 8))

        event = generate_event(SimConfig(n_tracks=50, phi_window=math.pi / 4, rng_seed=3))
        self.assertTrue(all(abs(t.params.phi) <= math.pi / 8 for t in event.true_tracks))

    def test_noise_hit_radii(self):
        geometry = DetectorGeometry.equally_spaced()
        rng = np.random.default_rng(21)
        hits = [noise_hit_sampler(geometry, rng) for _ in range(N_SAMPLES)]
        r = np.array([math.hypot(h.x, h.y) for h in hits])
        self.assertTrue(np.all((r >= 8.0) & (r <= 42.0)))

        # uniform by area: the CDF of r is (r^2 - r_in^2) / (r_out^2 - r_in^2)
        edges = np.linspace(8.0, 42.0, 21)
        observed, _ = np.histogram(r, bins=edges)
        cdf = (edges ** 2 - 64.0) / (42.0 ** 2 - 64.0)
        expected = np.diff(cdf) * N_SAMPLES
        _, p_value = stats.chisquare(observed, expected)
        self.assertGreater(p_value, 0.01)

        angles = np.array([math.atan2(h.y, h.x) for h in hits])
        self.assertLess(abs(np.mean(np.exp(1j * angles))), 0.02)

    def test_config_snapshot(self):
        cfg = SimConfig(n_tracks=3, rng_seed=8)
        event = SVeloSimulator(dataclasses.replace(cfg, rng_seed=0)).generate_event(8)
        self.assertEqual(cfg, event.config_snapshot)
        self.assertEqual(8, event.seed)


if __name__ == '__main__':
    unittest.main()
