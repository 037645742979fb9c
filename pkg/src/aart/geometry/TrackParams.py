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

import numpy as np

from aart.exceptions import InvalidTrackError

UNIT_NORM_TOLERANCE = 1e-9


def _wrap_phi(phi):
    """Maps phi into (-pi, pi]."""
    wrapped = math.remainder(phi, 2 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2 * math.pi
    return wrapped


@dataclasses.dataclass(frozen=True)
class TrackParams:
    """
    A straight-line track from the primary vertex at the origin, parametrized by two angles:

        x(t) = t sin(theta)
        y(t) = t cos(theta) sin(phi)
        z(t) = t cos(theta) cos(phi)

    theta is the signed tilt of the x-component and lies in [-pi/2, pi/2]. phi mixes y and z and is normalized to
    (-pi, pi] on construction.
    """
    theta: float
    phi: float

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise InvalidTrackError(f'Track parameters must be finite, got ({self.theta}, {self.phi})')
        if abs(self.theta) > math.pi / 2:
            raise InvalidTrackError(f'theta={self.theta} is outside [-pi/2, pi/2]')
        object.__setattr__(self, 'theta', float(self.theta))
        object.__setattr__(self, 'phi', _wrap_phi(float(self.phi)))

    @property
    def direction(self):
        return params_to_direction(self)

    @property
    def is_forward(self):
        return math.cos(self.theta) * math.cos(self.phi) > 0

    def as_array(self):
        return np.array([self.theta, self.phi])

    @classmethod
    def from_array(cls, values):
        """
        Builds TrackParams from a 2-vector, clamping theta into [-pi/2, pi/2]. Used by the optimizers, whose raw steps
        may leave the valid domain.
        """
        theta = min(max(float(values[0]), -math.pi / 2), math.pi / 2)
        return cls(theta, float(values[1]))


def eta_to_polar(eta):
    """
    Converts pseudo-rapidity to the polar angle from the beam axis, inverting eta = -ln(tan(polar / 2)).

    :param eta: pseudo-rapidity
    :return: polar angle in radians
    """
    return 2.0 * math.atan(math.exp(-eta))


def params_to_direction(p: TrackParams):
    """
    :return: the unit direction vector (sin theta, cos theta sin phi, cos theta cos phi)
    """
    cos_theta = math.cos(p.theta)
    return np.array([math.sin(p.theta), cos_theta * math.sin(p.phi), cos_theta * math.cos(p.phi)])


def direction_to_params(unit_direction):
    """
    Inverse of params_to_direction for forward-going unit vectors: theta = asin(d_x), phi = atan2(d_y, d_z).

    :param unit_direction: 3-vector with unit norm and positive z-component
    :return: TrackParams
    :raises InvalidTrackError: if the vector is not unit-norm or does not point forward
    """
    d = np.asarray(unit_direction, dtype=float)
    if d.shape != (3,):
        raise InvalidTrackError(f'Direction must be a 3-vector, got shape {d.shape}')
    if abs(np.linalg.norm(d) - 1.0) > UNIT_NORM_TOLERANCE:
        raise InvalidTrackError(f'Direction {d} is not unit-norm')
    if d[2] <= 0:
        raise InvalidTrackError(f'Direction {d} is not forward-going')

    return TrackParams(math.asin(min(max(d[0], -1.0), 1.0)), math.atan2(d[1], d[2]))


def angular_distance(p: TrackParams, other: TrackParams):
    """
    The angle in radians between the direction vectors of two tracks. Independent of the parametrization, so it does not
    distort near theta = +/-pi/2 the way a Euclidean distance in (theta, phi) does.
    """
    a = params_to_direction(p)
    b = params_to_direction(other)
    return math.atan2(np.linalg.norm(np.cross(a, b)), float(np.dot(a, b)))


def directions(params):
    """
    Stacks the direction vectors of a sequence of TrackParams into an Nx3 array.
    """
    if len(params) == 0:
        return np.empty((0, 3))
    values = np.array([[p.theta, p.phi] for p in params])
    cos_theta = np.cos(values[:, 0])
    return np.column_stack([np.sin(values[:, 0]),
                            cos_theta * np.sin(values[:, 1]),
                            cos_theta * np.cos(values[:, 1])])
