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

from abc import ABCMeta, abstractmethod

import numpy as np

from aart import config
from aart.geometry import TrackParams
from aart.simulation import sample_physical_params


class SeedPrior(metaclass=ABCMeta):
    """
    The distribution initial guesses of the multi-start search are drawn from.
    """

    @abstractmethod
    def draw(self, n, rng):
        """
        :param n: number of seeds
        :param rng: numpy Generator
        :return: n x 2 array of parameter points
        """
        pass


class PhysicalPrior(SeedPrior):
    def __init__(self, eta_range=None, phi_window=None):
        """
        The simulator's track distribution: eta uniform in eta_range, azimuth uniform, mapped to (theta, phi).

        :param eta_range: defaults to config['simulation']['eta_range']
        :param phi_window: restricts seeds to |phi| <= phi_window / 2, defaults to config['simulation']['phi_window']
        """
        self._eta_range = tuple(config['simulation']['eta_range'] if eta_range is None else eta_range)
        self._phi_window = config['simulation']['phi_window'] if phi_window is None else phi_window

    def draw(self, n, rng):
        return sample_physical_params(rng, n, self._eta_range, self._phi_window)

    def __repr__(self):
        return f'PhysicalPrior(eta_range={self._eta_range}, phi_window={self._phi_window})'


class UniformBoxPrior(SeedPrior):
    def __init__(self, first_range=None, second_range=None):
        """
        Independent uniform draws of both parameters over a box. For sVELO the ranges are (theta, phi) and default to
        the grid ranges in config['grid']. For the toy model pass the (angle, offset) ranges.
        """
        self._first_range = tuple(config['grid']['theta_range'] if first_range is None else first_range)
        self._second_range = tuple(config['grid']['phi_range'] if second_range is None else second_range)

    def draw(self, n, rng):
        first = rng.uniform(self._first_range[0], self._first_range[1], size=n)
        second = rng.uniform(self._second_range[0], self._second_range[1], size=n)
        return np.column_stack([first, second])

    def __repr__(self):
        return f'UniformBoxPrior({self._first_range}, {self._second_range})'


def make_prior(name, phi_window=None):
    """
    :param name: 'physical' or 'uniform'
    """
    if name == 'physical':
        return PhysicalPrior(phi_window=phi_window)
    if name == 'uniform':
        if phi_window is not None:
            return UniformBoxPrior(second_range=(-phi_window / 2, phi_window / 2))
        return UniformBoxPrior()
    raise ValueError('Unknown seed prior {}'.format(name))


def draw_seeds(n, prior: SeedPrior, rng):
    """
    Draws n independent seeds.

    :param n: number of seeds, at least 1
    :param prior: the seed distribution
    :param rng: numpy Generator or integer seed
    :return: list of TrackParams
    """
    if n < 1:
        raise ValueError('At least one seed is required, got {}'.format(n))
    rng = np.random.default_rng(rng)
    return [TrackParams.from_array(row) for row in prior.draw(n, rng)]
