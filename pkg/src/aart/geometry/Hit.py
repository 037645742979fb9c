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
from typing import Optional

import numpy as np


@dataclasses.dataclass(frozen=True)
class Hit:
    """
    A measured hit on detector layer `layer_index`. z is exactly the layer position, only x and y carry measurement
    error. `truth` is the id of the true track that produced the hit, or None for noise. Reconstruction code never
    receives Hit objects, only the coordinate array built by `hit_coordinates`, so the truth label cannot leak into it.
    """
    x: float
    y: float
    z: float
    layer_index: int
    truth: Optional[int] = None

    @property
    def is_noise(self):
        return self.truth is None

    def as_noise(self):
        return dataclasses.replace(self, truth=None)


def hit_coordinates(hits):
    """
    :param hits: a sequence of Hit
    :return: an Nx3 float array of (x, y, z), the only hit representation the reconstruction code accepts
    """
    if len(hits) == 0:
        return np.empty((0, 3))
    return np.array([[h.x, h.y, h.z] for h in hits], dtype=float)
