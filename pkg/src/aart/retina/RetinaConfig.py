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
import enum
import math
from typing import Optional

from aart import config
from aart.exceptions import ConfigError
from .DistanceModel import DistanceModel
from .SVeloDistance import SVeloDistance
from .Toy2DDistance import Toy2DDistance


class DistanceModelKind(str, enum.Enum):
    SVELO_3D = 'svelo3d'
    TOY_2D = 'toy2d'

    def create(self) -> DistanceModel:
        if self is DistanceModelKind.SVELO_3D:
            return SVeloDistance()
        return Toy2DDistance()


@dataclasses.dataclass(frozen=True)
class RetinaConfig:
    """
    :ivar sigma: bandwidth, in the units of the distance function (mm for sVELO, model units for the toy model)
    :ivar distance_model: which distance function s(x, theta) to use
    :ivar far_hit_cutoff: hits further than far_hit_cutoff * sigma from the track are dropped from the sum. Their terms
    are below exp(-cutoff^2), so this is an approximation knob; set None for exact evaluation.
    """
    sigma: float = dataclasses.field(default_factory=lambda: config['retina']['sigma'])
    distance_model: DistanceModelKind = DistanceModelKind.SVELO_3D
    far_hit_cutoff: Optional[float] = dataclasses.field(default_factory=lambda: config['retina']['far_hit_cutoff'])

    def __post_init__(self):
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise ConfigError(f'sigma must be positive, got {self.sigma}')
        if self.far_hit_cutoff is not None and self.far_hit_cutoff <= 0:
            raise ConfigError(f'far_hit_cutoff must be positive or None, got {self.far_hit_cutoff}')
        object.__setattr__(self, 'distance_model', DistanceModelKind(self.distance_model))

    @property
    def distance(self) -> DistanceModel:
        return self.distance_model.create()

    def with_sigma(self, sigma):
        return dataclasses.replace(self, sigma=sigma)

    def exact(self):
        return dataclasses.replace(self, far_hit_cutoff=None)
