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

from aart.exceptions import ConfigError, NoIntersectionError
from aart.geometry import DetectorGeometry, Hit, Line2D, TrackParams, hit_track_distance, intersect_layer, \
    line2d_distance


class DetectorGeometryTest(unittest.TestCase):
    def setUp(self):
        self.geometry = DetectorGeometry.equally_spaced()

    def test_default_layout(self):
        self.assertEqual(20, self.geometry.n_layers)
        self.assertAlmostEqual(35.0, self.geometry.layer_z[0])
        self.assertAlmostEqual(700.0, self.geometry.layer_z[-1])
        self.assertEqual((8.0, 42.0), (self.geometry.r_inner, self.geometry.r_outer))

    def test_invalid_geometry(self):
        with self.assertRaises(ConfigError):
            DetectorGeometry(2, (10.0, 5.0), 8.0, 42.0)
        with self.assertRaises(ConfigError):
            DetectorGeometry(1, (10.0,), 42.0, 8.0)

    def test_intersect_layer(self):
        self.assertEqual((0.0, 0.0), intersect_layer(TrackParams(0.0, 0.0), 35.0))

        x, y = intersect_layer(TrackParams(0.1, 0.0), 100.0)
        self.assertAlmostEqual(10.0335, x, delta=1e-4)
        self.assertAlmostEqual(0.0, y, places=12)

        with self.assertRaises(NoIntersectionError):
            intersect_layer(TrackParams(0.0, 2.0), 100.0)

    def test_axial_track_outside_acceptance(self):
        p = TrackParams(0.0, 0.0)
        self.assertFalse(any(self.geometry.in_acceptance(*intersect_layer(p, z)) for z in self.geometry.layer_z))

    def test_hit_track_distance(self):
        p = TrackParams(0.02, -0.03)
        x, y = intersect_layer(p, 350.0)
        self.assertAlmostEqual(0.0, hit_track_distance(Hit(x, y, 350.0, 9), p), places=12)
        self.assertAlmostEqual(5.0, hit_track_distance(Hit(x + 3.0, y + 4.0, 350.0, 9), p), places=9)

    def test_distance_rotation_invariance(self):
        """
        Rotating hit and track by a common azimuth about the beam axis keeps their distance.
        """
        rng = np.random.default_rng(3)
        for _ in range(200):
            d = np.array([rng.uniform(-0.05, 0.05), rng.uniform(-0.05, 0.05), 1.0])
            d /= np.linalg.norm(d)
            z = float(rng.choice(self.geometry.layer_z))
            hit = np.array([rng.uniform(-40, 40), rng.uniform(-40, 40)])
            psi = rng.uniform(0, 2 * math.pi)
            rotation = np.array([[math.cos(psi), -math.sin(psi)], [math.sin(psi), math.cos(psi)]])

            def distance(direction, xy):
                p = TrackParams(math.asin(direction[0]), math.atan2(direction[1], direction[2]))
                return hit_track_distance(Hit(xy[0], xy[1], z, 0), p)

            rotated = np.concatenate([rotation @ d[:2], d[2:]])
            self.assertAlmostEqual(distance(d, hit), distance(rotated, rotation @ hit), delta=1e-9)

    def test_line2d_distance(self):
        line = Line2D(0.0, 2.0)
        self.assertEqual(0.0, line2d_distance((2.0, 7.0), line))
        self.assertEqual(3.0, line2d_distance((5.0, 1.0), line))

        tilted = Line2D(0.3, 0.1)
        x = tilted.x_at(0.6)
        self.assertAlmostEqual(0.0, line2d_distance((x, 0.6), tilted), places=14)
        self.assertAlmostEqual(0.25, line2d_distance((x + 0.25, 0.6), tilted), places=14)
        self.assertAlmostEqual(0.5, line2d_distance((x + 0.5, 0.6), tilted), places=14)


if __name__ == '__main__':
    unittest.main()
