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

from aart import config, method_cost_C0
from aart.grid import grid_cell_count_for_resolution


@dataclasses.dataclass(frozen=True)
class Budget:
    """
    A seed budget worth the fraction alpha of a grid search: every seed costs q optimizer steps of C0 response-units,
    every grid cell one unit, so

        n_seeds = round(alpha * n_grid / (C0 * q)), at least 1
    """
    alpha: float
    n_grid: int
    q: int
    C0: float

    def __post_init__(self):
        if not (self.alpha > 0 and self.n_grid > 0 and self.q > 0 and self.C0 > 0):
            raise ValueError('Budget parameters must be positive, got alpha={}, n_grid={}, q={}, C0={}'.format(
                self.alpha, self.n_grid, self.q, self.C0))

    @property
    def n_seeds(self):
        return max(1, int(round(self.alpha * self.n_grid / (self.C0 * self.q))))

    @property
    def grid_units(self):
        return self.n_grid

    @property
    def allowed_units(self):
        return self.alpha * self.n_grid

    @property
    def optimizer_units(self):
        return self.n_seeds * self.q * self.C0


def compute_budget(alpha, n_grid, q=None, C0=None):
    """
    :param q: defaults to config['optimizer']['q']
    :param C0: defaults to the configured update method's cost_C0
    :return: Budget
    """
    q = config['optimizer']['q'] if q is None else q
    C0 = method_cost_C0() if C0 is None else C0
    return Budget(alpha, n_grid, q, C0)


def default_n_grid(epsilon=None, phi_window=None, theta_range=None, phi_range=None):
    """
    The cell count of the grid search the optimizer is compared against: epsilon resolution over the configured
    (theta, phi) ranges. With phi_window set, phi spans [-phi_window / 2, phi_window / 2] instead.
    """
    grid = config['grid']
    epsilon = config['evaluation']['epsilon'] if epsilon is None else epsilon
    theta_range = grid['theta_range'] if theta_range is None else theta_range
    if phi_window is not None:
        phi_range = (-phi_window / 2, phi_window / 2)
    elif phi_range is None:
        phi_range = grid['phi_range']
    return grid_cell_count_for_resolution((theta_range, phi_range), epsilon)
