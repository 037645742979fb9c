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
from typing import Tuple, Union

from aart.geometry import Line2D, TrackParams
from aart.retina import ResponseEval

Params = Union[TrackParams, Line2D]


@dataclasses.dataclass(frozen=True)
class SeedTrajectory:
    """
    The path of one seed through the q update steps.

    :ivar steps: q pairs (params, ResponseEval): the point each step started from and the response, gradient and
    Hessian evaluated there at that step's bandwidth
    :ivar final: the point after the last step
    :ivar final_response: the response at `final` at the last bandwidth
    """
    steps: Tuple[Tuple[Params, ResponseEval], ...]
    final: Params
    final_response: float

    @property
    def initial(self):
        return self.steps[0][0] if self.steps else self.final

    @property
    def points(self):
        return tuple(params for params, _ in self.steps) + (self.final,)

    def __len__(self):
        return len(self.steps) + 1
