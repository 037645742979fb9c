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

from aart.retina import CostModel, ResponseCounter, RetinaConfig, response_cost_model


class ResponseCounterTest(unittest.TestCase):
    def test_default_cost_constant(self):
        self.assertEqual(3.0, response_cost_model())
        self.assertEqual(30.0, CostModel().C0)

    def test_units(self):
        counter = ResponseCounter(C=3.0, C0=30.0)
        counter.record_response(5)
        counter.record_full(2)
        counter.record_cells(100)
        counter.record_steps(3)
        self.assertEqual(5 + 6 + 100 + 90, counter.units)
        self.assertEqual(counter.units, counter.to_dict()['units'])

    def test_merge(self):
        a = ResponseCounter(C=3.0, C0=30.0, response_calls=1, optimizer_steps=2)
        b = ResponseCounter(C=3.0, C0=30.0, grid_cells=10)
        self.assertEqual(a.units + b.units, a.merge(b).units)

        with self.assertRaises(ValueError):
            a.merge(ResponseCounter(C=2.0, C0=30.0))

    def test_measure(self):
        rng = np.random.default_rng(0)
        hits = np.column_stack([rng.uniform(-40, 40, 500), rng.uniform(-40, 40, 500), rng.uniform(35, 700, 500)])
        report = CostModel().measure(hits, [[0.01, 0.02], [0.0, -0.1]], RetinaConfig(), repeats=5)
        self.assertEqual(3.0, report.C_configured)
        self.assertGreater(report.C_measured, 0.0)
        self.assertTrue(np.isnan(report.C0_measured))


if __name__ == '__main__':
    unittest.main()
