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

import unittest

import numpy as np

from aart.geometry import Line2D, line2d_distance
from aart.simulation import NOISE, ToyEventFactory, close_tracks_event, two_track_event


class ToyEventFactoryTest(unittest.TestCase):
    def test_noiseless_hits_lie_on_lines(self):
        lines = [Line2D(0.2, 0.3), Line2D(-0.1, 0.6)]
        event = ToyEventFactory(n_planes=8, plane_spacing=0.1).make_event(lines)

        self.assertEqual((16, 2), event.hits.shape)
        for (x, y), truth in zip(event.hits, event.truth):
            self.assertAlmostEqual(0.0, line2d_distance((x, y), lines[truth]), places=12)

    def test_two_track_event(self):
        event = two_track_event(0)
        self.assertEqual(2 * 10 + 20, len(event.hits))
        self.assertEqual(20, int(np.sum(event.truth == NOISE)))
        self.assertTrue(np.all((event.hits[:, 0] >= 0) & (event.hits[:, 0] <= 1)))

    def test_close_tracks_event(self):
        event = close_tracks_event(4)
        self.assertEqual(40, len(event.hits))
        self.assertEqual(0, int(np.sum(event.truth == NOISE)))

        residuals = [event.hits[k, 0] - event.lines[t].x_at(event.hits[k, 1]) for k, t in enumerate(event.truth)]
        self.assertLess(abs(np.std(residuals) - 5e-3), 2e-3)

    def test_seeded(self):
        self.assertEqual(two_track_event(7).hits.tolist(), two_track_event(7).hits.tolist())
        self.assertNotEqual(two_track_event(7).hits.tolist(), two_track_event(8).hits.tolist())


if __name__ == '__main__':
    unittest.main()
