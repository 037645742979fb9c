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

import csv
import dataclasses

import numpy as np

from .ParamGrid import ParamGrid


@dataclasses.dataclass(frozen=True)
class ResponseGrid:
    """
    Responses of every unit of a ParamGrid: values[i, j] is the response at (thetas[i], phis[j]).
    """
    grid: ParamGrid
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.grid.n_theta, self.grid.n_phi):
            raise ValueError(f'Grid values have shape {self.values.shape}, expected '
                             f'{(self.grid.n_theta, self.grid.n_phi)}')

    def to_csv(self, path, axis_names=('theta', 'phi')):
        """
        Writes one (theta, phi, response) row per cell, for heat-map plots.
        """
        with open(path, 'w', newline='') as f:
            writer = csv.DictWriter(f, fieldnames=[axis_names[0], axis_names[1], 'response'])
            writer.writeheader()
            for (theta, phi), value in zip(self.grid.points(), self.values.ravel()):
                writer.writerow({axis_names[0]: repr(float(theta)), axis_names[1]: repr(float(phi)),
                                 'response': repr(float(value))})
