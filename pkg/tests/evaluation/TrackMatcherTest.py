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

from aart.evaluation import MatchSummary, binomial_error, match_candidates
from aart.geometry import Line2D, TrackParams
from aart.retina import Candidate
from aart.simulation import TrueTrack


class TrackMatcherTest(unittest.TestCase):
    def setUp(self):
        self.truths = [TrueTrack(3, TrackParams(0.1, 0.2), 12),
                       TrueTrack(7, TrackParams(-0.2, 1.5), 9),
                       TrueTrack(9, TrackParams(0.05, -2.8), 15)]

    def test_perfect_candidates(self):
        candidates = [Candidate(t.params, 10.0) for t in self.truths]
        report = match_candidates(candidates, self.truths, 1e-3)
        self.assertEqual(1.0, report.efficiency)
        self.assertEqual((), report.ghosts)
        self.assertEqual((), report.missed)
        self.assertEqual({3, 7, 9}, {truth_id for _, truth_id, _ in report.matched})

    def test_no_candidates(self):
        report = match_candidates([], self.truths, 1e-3)
        self.assertEqual(0.0, report.efficiency)
        self.assertEqual((3, 7, 9), report.missed)
        self.assertEqual(0.0, report.ghost_rate)

    def test_no_truths(self):
        report = match_candidates([TrackParams(0.1, 0.2)], [], 1e-3)
        self.assertEqual(1.0, report.efficiency)
        self.assertEqual((0,), report.ghosts)
        self.assertEqual(1.0, report.ghost_rate)

    def test_one_to_one(self):
        truth = TrackParams(0.1, 0.2)
        report = match_candidates([TrackParams(0.1, 0.2004), TrackParams(0.1, 0.2001)], [truth], 1e-3)
        self.assertEqual(1, report.n_matched)
        self.assertEqual(1, report.matched[0][0])
        self.assertEqual((0,), report.ghosts)

    def test_tolerance(self):
        truth = TrackParams(0.0, 0.3)
        self.assertEqual(1, match_candidates([TrackParams(0.0, 0.3009)], [truth], 1e-3).n_matched)
        self.assertEqual(0, match_candidates([TrackParams(0.0, 0.3011)], [truth], 1e-3).n_matched)

    def test_tie_goes_to_lowest_truth_id(self):
        truths = [TrueTrack(5, TrackParams(0.0, 5e-4), 10), TrueTrack(2, TrackParams(0.0, -5e-4), 10)]
        report = match_candidates([TrackParams(0.0, 0.0)], truths, 1e-3)
        self.assertEqual(2, report.matched[0][1])
        self.assertEqual((5,), report.missed)

    def test_phi_wraps_around(self):
        truth = TrackParams(0.0, math.pi - 1e-4)
        candidate = TrackParams(0.0, -math.pi + 1e-4)
        self.assertEqual(1, match_candidates([candidate], [truth], 1e-3).n_matched)
        self.assertEqual(1, match_candidates([candidate], [truth], 1e-3, strict_params=True).n_matched)

    def test_strict_params(self):
        truth = TrackParams(0.0, 0.0)
        # 0.8e-3 in both parameters: per-parameter match, but the angle is about 1.13e-3
        candidate = TrackParams(8e-4, 8e-4)
        self.assertEqual(0, match_candidates([candidate], [truth], 1e-3).n_matched)
        self.assertEqual(1, match_candidates([candidate], [truth], 1e-3, strict_params=True).n_matched)

    def test_invalid_input(self):
        with self.assertRaises(TypeError):
            match_candidates([Line2D(0.1, 0.2)], [TrackParams(0.1, 0.2)])
        with self.assertRaises(ValueError):
            match_candidates([], [], epsilon=0.0)

    def test_summary_pools_events(self):
        first = match_candidates([TrackParams(0.1, 0.2)], [TrackParams(0.1, 0.2), TrackParams(0.3, 0.2)], 1e-3)
        second = match_candidates([TrackParams(0.5, 0.5), TrackParams(0.3, 0.3)], [TrackParams(0.5, 0.5)], 1e-3)
        summary = MatchSummary.of([first, second])

        self.assertEqual(2, summary.n_events)
        self.assertEqual(3, summary.n_truths)
        self.assertAlmostEqual(2 / 3, summary.efficiency)
        self.assertAlmostEqual(math.sqrt(2 / 3 * 1 / 3 / 3), summary.efficiency_error)
        self.assertAlmostEqual(1 / 3, summary.ghost_rate)
        self.assertAlmostEqual(1.5, summary.mean_truths)

    def test_binomial_error(self):
        self.assertEqual(0.0, binomial_error(0, 0))
        self.assertEqual(0.0, binomial_error(10, 10))
        self.assertAlmostEqual(0.05, binomial_error(50, 100))


if __name__ == '__main__':
    unittest.main()
