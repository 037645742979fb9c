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

from aart import method_cost_C0
from aart.evaluation import Budget, compute_budget, count_response_units, default_n_grid, measure_costs
from aart.optimize import OptimizerConfig, TruncatedNewtonUpdate
from aart.retina import ResponseCounter, RetinaConfig


class BudgetTest(unittest.TestCase):
    def test_seed_counts(self):
        self.assertEqual(333, compute_budget(1 / 3, 90000, 3, 30).n_seeds)
        self.assertEqual(100, compute_budget(0.1, 90000, 3, 30).n_seeds)
        self.assertEqual(1, compute_budget(1e-6, 90000, 3, 30).n_seeds)

    def test_default_grid(self):
        self.assertEqual(9174640, default_n_grid())
        self.assertEqual(33980, compute_budget(1 / 3, default_n_grid()).n_seeds)
        self.assertEqual(1460 * math.ceil(math.pi / 4 / 1e-3), default_n_grid(phi_window=math.pi / 4))

    def test_budget_within_one_seed(self):
        for alpha in (1 / 3, 0.1, 0.05):
            budget = compute_budget(alpha, 9174640, 3, 30)
            self.assertLessEqual(budget.optimizer_units, budget.allowed_units + 0.5 * budget.q * budget.C0)

    def test_invalid(self):
        with self.assertRaises(ValueError):
            Budget(0.0, 1000, 3, 30)
        with self.assertRaises(ValueError):
            Budget(0.5, 1000, 0, 30)

    def test_accounting(self):
        counter = ResponseCounter(C=3.0, C0=30.0)
        counter.record_steps(10 * 3)
        accounting = count_response_units(counter)
        self.assertEqual(900.0, accounting.units)
        self.assertEqual(900.0, accounting.optimizer_units)
        self.assertIsNone(accounting.allowed_units)
        self.assertFalse(accounting.budget_exceeded)

    def test_budget_exceeded_is_flagged(self):
        budget = Budget(0.1, 1000, 3, 30)
        within = ResponseCounter(C=3.0, C0=30.0)
        within.record_steps(budget.n_seeds * 3)
        self.assertFalse(count_response_units(within, budget).budget_exceeded)

        over = ResponseCounter(C=3.0, C0=30.0)
        over.record_steps(10 * 3)
        with self.assertLogs('Accounting', level='WARNING'):
            accounting = count_response_units(over, budget)
        self.assertTrue(accounting.budget_exceeded)
        self.assertEqual(100.0, accounting.allowed_units)

    def test_evaluation_units(self):
        counter = ResponseCounter(C=3.0, C0=30.0)
        counter.record_response(4)
        counter.record_full(2)
        counter.record_cells(100)
        accounting = count_response_units(counter)
        self.assertEqual(10.0, accounting.evaluation_units)
        self.assertEqual(100, accounting.grid_units)
        self.assertEqual(110.0, accounting.units)

    def test_cost_C0_per_method(self):
        self.assertEqual(30.0, method_cost_C0('truncated_newton'))
        self.assertEqual(10.0, method_cost_C0('gradient_ascent'))
        self.assertEqual(30.0, OptimizerConfig().cost_C0)
        self.assertEqual(10.0, OptimizerConfig(method='gradient_ascent').cost_C0)
        self.assertEqual(12.0, OptimizerConfig(method='gradient_ascent', cost_C0=12.0).cost_C0)
        self.assertEqual(30.0, ResponseCounter().C0)
        self.assertEqual(300, compute_budget(0.1, 90000, 3, 10.0).n_seeds)

    def test_measured_costs(self):
        rng = np.random.default_rng(0)
        hits = np.column_stack([rng.uniform(-40, 40, 300), rng.uniform(-40, 40, 300), rng.uniform(35, 700, 300)])
        points = [[0.01, 0.02], [0.0, -0.1]]
        cfg = RetinaConfig()

        report = measure_costs(hits, cfg, points, TruncatedNewtonUpdate(max_step=0.05), C0=30.0, repeats=4)
        self.assertEqual(30.0, report.C0_configured)
        self.assertGreater(report.C_measured, 0.0)
        self.assertGreater(report.C0_measured, 0.0)

        without_step = measure_costs(hits, cfg, points, repeats=4).to_dict()
        self.assertIsNone(without_step['C0_measured'])
        self.assertEqual(3.0, without_step['C_configured'])


if __name__ == '__main__':
    unittest.main()
