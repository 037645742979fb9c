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
from scipy import stats

from aart.geometry import TrackParams
from aart.optimize import PhysicalPrior, UniformBoxPrior, draw_seeds, make_prior


class SeedPriorTest(unittest.TestCase):
    def test_uniform_box_is_uniform(self):
        prior = UniformBoxPrior((-0.5, 0.5), (1.0, 3.0))
        seeds = prior.draw(100000, np.random.default_rng(0))
        self.assertEqual((100000, 2), seeds.shape)
        self.assertGreater(stats.kstest(seeds[:, 0], stats.uniform(loc=-0.5, scale=1.0).cdf).pvalue, 1e-3)
        self.assertGreater(stats.kstest(seeds[:, 1], stats.uniform(loc=1.0, scale=2.0).cdf).pvalue, 1e-3)

    def test_deterministic(self):
        first = draw_seeds(20, PhysicalPrior(), 42)
        second = draw_seeds(20, PhysicalPrior(), 42)
        self.assertEqual(first, second)
        self.assertNotEqual(first, draw_seeds(20, PhysicalPrior(), 43))

    def test_physical_seeds_are_valid(self):
        seeds = draw_seeds(1000, PhysicalPrior((1.0, 6.0)), 0)
        polar_max = 2 * math.atan(math.exp(-1.0))
        for p in seeds:
            self.assertIsInstance(p, TrackParams)
            self.assertTrue(p.is_forward)
            self.assertLessEqual(math.acos(p.direction[2]), polar_max + 1e-12)

    def test_phi_window(self):
        seeds = PhysicalPrior(phi_window=math.pi / 4).draw(1000, np.random.default_rng(0))
        self.assertTrue(np.all(np.abs(seeds[:, 1]) <= math.pi / 8 + 1e-12))

        uniform = make_prior('uniform', math.pi / 4).draw(1000, np.random.default_rng(0))
        self.assertTrue(np.all(np.abs(uniform[:, 1]) <= math.pi / 8))

    def test_invalid(self):
        with self.assertRaises(ValueError):
            draw_seeds(0, PhysicalPrior(), 0)
        with self.assertRaises(ValueError):
            make_prior('gaussian')


if __name__ == '__main__':
    unittest.main()
