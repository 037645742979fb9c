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
from typing import Tuple

import numpy as np

from aart.exceptions import ConfigError


@dataclasses.dataclass(frozen=True)
class ParamGrid:
    """
    A lattice of retina units over two track parameters, endpoints included: theta_i = theta_lo + i * d_theta for
    i = 0..n_theta-1, and likewise for phi. For the 2D toy model the axes hold (angle, offset).
    """
    theta_range: Tuple[float, float]
    phi_range: Tuple[float, float]
    n_theta: int
    n_phi: int

    def __post_init__(self):
        object.__setattr__(self, 'theta_range', tuple(float(v) for v in self.theta_range))
        object.__setattr__(self, 'phi_range', tuple(float(v) for v in self.phi_range))
        if self.n_theta < 2 or self.n_phi < 2:
            raise ConfigError(f'A grid needs at least 2 cells per axis, got {self.n_theta} x {self.n_phi}')
        if not (self.theta_range[0] < self.theta_range[1] and self.phi_range[0] < self.phi_range[1]):
            raise ConfigError(f'Degenerate grid ranges {self.theta_range} x {self.phi_range}')

    @classmethod
    def from_step(cls, theta_range, phi_range, step):
        """
        Builds the grid whose spacing is as close as possible to `step` on both axes.
        """
        if not step > 0:
            raise ConfigError(f'Grid step must be positive, got {step}')
        n_theta = max(2, int(round((theta_range[1] - theta_range[0]) / step)) + 1)
        n_phi = max(2, int(round((phi_range[1] - phi_range[0]) / step)) + 1)
        return cls(tuple(theta_range), tuple(phi_range), n_theta, n_phi)

    @property
    def d_theta(self):
        return (self.theta_range[1] - self.theta_range[0]) / (self.n_theta - 1)

    @property
    def d_phi(self):
        return (self.phi_range[1] - self.phi_range[0]) / (self.n_phi - 1)

    @property
    def thetas(self):
        return np.linspace(self.theta_range[0], self.theta_range[1], self.n_theta)

    @property
    def phis(self):
        return np.linspace(self.phi_range[0], self.phi_range[1], self.n_phi)

    @property
    def n_cells(self):
        return self.n_theta * self.n_phi

    def cell_params(self, cell):
        i, j = cell
        return np.array([self.thetas[i], self.phis[j]])

    def points(self):
        """
        :return: n_cells x 2 array of (theta, phi), row-major (phi varies fastest)
        """
        theta, phi = np.meshgrid(self.thetas, self.phis, indexing='ij')
        return np.column_stack([theta.ravel(), phi.ravel()])

    def nearest_cell(self, params):
        i = int(round((params[0] - self.theta_range[0]) / self.d_theta))
        j = int(round((params[1] - self.phi_range[0]) / self.d_phi))
        return min(max(i, 0), self.n_theta - 1), min(max(j, 0), self.n_phi - 1)


def grid_cell_count_for_resolution(ranges, epsilon):
    """
    The number of cells a plain grid search needs for epsilon resolution, with one cell per epsilon on each axis:
    ceil(range_theta / epsilon) * ceil(range_phi / epsilon).

    :param ranges: ((theta_lo, theta_hi), (phi_lo, phi_hi))
    :param epsilon: resolution in radians
    :return: the cell count
    """
    if not epsilon > 0:
        raise ConfigError(f'epsilon must be positive, got {epsilon}')

    count = 1
    for lo, hi in ranges:
        # ratios like 1.46 / 1e-3 land a rounding error above the integer they represent
        count *= max(1, math.ceil((hi - lo) / epsilon - 1e-9))
    return count
