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

from aart import config
from aart.exceptions import ConfigError, NoIntersectionError
from .Hit import Hit
from .TrackParams import TrackParams


@dataclasses.dataclass(frozen=True)
class DetectorGeometry:
    """
    The simplified VELO: `n_layers` annular layers perpendicular to the beam (z) axis, each a disk between r_inner and
    r_outer. Positions are in mm and the primary vertex sits at the origin.
    """
    n_layers: int
    layer_z: Tuple[float, ...]
    r_inner: float
    r_outer: float

    def __post_init__(self):
        object.__setattr__(self, 'layer_z', tuple(float(z) for z in self.layer_z))
        if self.n_layers < 1 or len(self.layer_z) != self.n_layers:
            raise ConfigError(f'Expected {self.n_layers} layer positions, got {len(self.layer_z)}')
        if self.layer_z[0] <= 0 or any(b <= a for a, b in zip(self.layer_z, self.layer_z[1:])):
            raise ConfigError('Layer z-positions must be positive and strictly increasing')
        if not 0 <= self.r_inner < self.r_outer:
            raise ConfigError(f'Invalid annulus radii: r_inner={self.r_inner}, r_outer={self.r_outer}')

    @classmethod
    def equally_spaced(cls, n_layers=None, z_extent=None, r_inner=None, r_outer=None):
        """
        Layers at z_k = (k + 1) * z_extent / n_layers for k = 0..n_layers-1, so the first layer sits one spacing away
        from the primary vertex and the last one at z_extent. Missing arguments come from config['detector'].
        """
        defaults = config['detector']
        n_layers = defaults['n_layers'] if n_layers is None else n_layers
        z_extent = defaults['z_extent'] if z_extent is None else z_extent
        r_inner = defaults['r_inner'] if r_inner is None else r_inner
        r_outer = defaults['r_outer'] if r_outer is None else r_outer

        spacing = z_extent / n_layers
        return cls(n_layers, tuple((k + 1) * spacing for k in range(n_layers)), r_inner, r_outer)

    def in_acceptance(self, x, y):
        r = math.hypot(x, y)
        return self.r_inner <= r <= self.r_outer

    def to_dict(self):
        return {'n_layers': self.n_layers, 'layer_z': list(self.layer_z),
                'r_inner': self.r_inner, 'r_outer': self.r_outer}

    @classmethod
    def from_dict(cls, values):
        return cls(int(values['n_layers']), tuple(values['layer_z']), float(values['r_inner']),
                   float(values['r_outer']))


def intersect_layer(p: TrackParams, layer_z):
    """
    Intersects the track with the plane z = layer_z.

    :return: (x, y) in mm
    :raises NoIntersectionError: if the track does not travel towards positive z
    """
    z_component = math.cos(p.theta) * math.cos(p.phi)
    if z_component <= 0:
        raise NoIntersectionError(f'Track ({p.theta}, {p.phi}) does not reach positive-z layers')

    t = layer_z / z_component
    return t * math.sin(p.theta), t * math.cos(p.theta) * math.sin(p.phi)


def hit_track_distance(hit: Hit, p: TrackParams):
    """
    The Euclidean distance, within the hit's layer plane, between the hit and the track's intersection with that plane.
    """
    x, y = intersect_layer(p, hit.z)
    return math.hypot(hit.x - x, hit.y - y)


def layer_intersections(p: TrackParams, geometry: DetectorGeometry):
    """
    :return: an n_layers x 2 array of the track's (x, y) on every layer
    """
    z = np.asarray(geometry.layer_z)
    x0, y0 = intersect_layer(p, 1.0)
    return np.column_stack([z * x0, z * y0])
