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


@dataclasses.dataclass
class ResponseCounter:
    """
    Accounts computational cost in response-units, one unit being one plain evaluation of the response. A response
    call costs 1, a response+gradient+Hessian call costs C, a grid cell costs 1 and a full optimizer step costs C0.

    Counters are owned by a single worker. Parallel runs keep one counter per worker and combine them with `merge`.
    """
    C: float = dataclasses.field(default_factory=lambda: config['retina']['cost_C'])
    C0: float = dataclasses.field(default_factory=method_cost_C0)
    response_calls: int = 0
    full_calls: int = 0
    grid_cells: int = 0
    optimizer_steps: int = 0

    def record_response(self, n=1):
        self.response_calls += n

    def record_full(self, n=1):
        self.full_calls += n

    def record_cells(self, n):
        self.grid_cells += n

    def record_steps(self, n=1):
        self.optimizer_steps += n

    @property
    def units(self):
        return self.response_calls + self.C * self.full_calls + self.grid_cells + self.C0 * self.optimizer_steps

    def merge(self, other):
        if (self.C, self.C0) != (other.C, other.C0):
            raise ValueError('Cannot merge counters with different cost constants')
        return ResponseCounter(self.C, self.C0,
                               self.response_calls + other.response_calls,
                               self.full_calls + other.full_calls,
                               self.grid_cells + other.grid_cells,
                               self.optimizer_steps + other.optimizer_steps)

    def to_dict(self):
        result = dataclasses.asdict(self)
        result['units'] = self.units
        return result
