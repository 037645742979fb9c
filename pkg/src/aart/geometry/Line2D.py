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

from aart.exceptions import InvalidTrackError


@dataclasses.dataclass(frozen=True)
class Line2D:
    """
    A line of the 2D toy model, crossing horizontal detector planes y = const. A hit on plane y is expected at
    x = offset + y * tan(angle).
    """
    angle: float
    offset: float

    def __post_init__(self):
        if not abs(self.angle) < math.pi / 2:
            raise InvalidTrackError(f'Line angle {self.angle} is outside (-pi/2, pi/2)')

    def x_at(self, y):
        return self.offset + y * math.tan(self.angle)


def line2d_distance(hit2d, line: Line2D):
    """
    The distance in x, within the hit's detector plane, between a 2D hit (x, y) and the line.
    """
    x, y = hit2d
    return abs(x - line.x_at(y))
