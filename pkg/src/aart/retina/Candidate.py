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
from typing import Optional, Tuple, Union

from aart.geometry import Line2D, TrackParams

NO_SEED = -1


@dataclasses.dataclass(frozen=True)
class Candidate:
    """
    A reconstructed track hypothesis.

    :ivar params: estimated track parameters, TrackParams for sVELO events and Line2D for toy events
    :ivar response: response at params (for the optimizer, at the last bandwidth of the schedule)
    :ivar cluster_size: number of solutions merged into this candidate, 1 for grid candidates
    :ivar seed_id: index of the seed whose solution led the cluster, NO_SEED for grid candidates
    :ivar cell: the grid cell it was estimated from, None for optimizer candidates
    """
    params: Union[TrackParams, Line2D]
    response: float
    cluster_size: int = 1
    seed_id: int = NO_SEED
    cell: Optional[Tuple[int, int]] = None

    def as_array(self):
        if isinstance(self.params, Line2D):
            return [self.params.angle, self.params.offset]
        return [self.params.theta, self.params.phi]

    def to_record(self):
        return [float(v) for v in self.as_array()] + [float(self.response), int(self.cluster_size), int(self.seed_id)]

    @classmethod
    def from_record(cls, record, toy=False):
        """
        Rebuilds a candidate from `to_record` output.

        :param toy: read the parameters as a Line2D instead of TrackParams
        """
        first, second, response, cluster_size, seed_id = record
        params = Line2D(float(first), float(second)) if toy else TrackParams(float(first), float(second))
        return cls(params, float(response), int(cluster_size), int(seed_id))
