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
from typing import Tuple

import numpy as np

from aart import config
from aart.geometry import Line2D

NOISE = -1


@dataclasses.dataclass(frozen=True)
class ToyEvent:
    """
    An event of the 2D toy model. `hits` is the N x 2 (x, y) array handed to reconstruction, `truth` holds the index of
    the producing line for every hit or NOISE. `seed` is the rng seed the event was made with.
    """
    hits: np.ndarray
    truth: np.ndarray
    lines: Tuple[Line2D, ...]
    plane_y: Tuple[float, ...]
    seed: int = 0


class ToyEventFactory:
    def __init__(self, n_planes=None, plane_spacing=None, x_range=(0.0, 1.0)):
        """
        Builds toy events on equally spaced horizontal detector planes y_k = (k + 1) * plane_spacing.

        :param n_planes: number of planes, defaults to config['toy']['n_planes']
        :param plane_spacing: distance between planes, defaults to config['toy']['plane_spacing']
        :param x_range: interval noise hits are drawn from
        """
        toy = config['toy']
        self._n_planes = toy['n_planes'] if n_planes is None else n_planes
        self._plane_spacing = toy['plane_spacing'] if plane_spacing is None else plane_spacing
        self._x_range = x_range

    @property
    def plane_y(self):
        return tuple((k + 1) * self._plane_spacing for k in range(self._n_planes))

    def make_event(self, lines, n_noise=0, x_noise=0.0, rng_seed=0):
        """
        Every line leaves one hit per plane, its x smeared by N(0, x_noise) when x_noise > 0. n_noise extra hits are
        placed on uniformly chosen planes with x uniform over x_range.
        """
        rng = np.random.default_rng(rng_seed)
        plane_y = np.asarray(self.plane_y)

        hits = []
        truth = []
        for index, line in enumerate(lines):
            x = line.offset + plane_y * np.tan(line.angle)
            if x_noise > 0:
                x = x + rng.normal(0.0, x_noise, size=plane_y.shape)
            hits.append(np.column_stack([x, plane_y]))
            truth.extend([index] * len(plane_y))

        if n_noise > 0:
            noise_y = plane_y[rng.integers(len(plane_y), size=n_noise)]
            noise_x = rng.uniform(self._x_range[0], self._x_range[1], size=n_noise)
            hits.append(np.column_stack([noise_x, noise_y]))
            truth.extend([NOISE] * n_noise)

        hits = np.concatenate(hits) if hits else np.empty((0, 2))
        return ToyEvent(hits, np.asarray(truth, dtype=int), tuple(lines), tuple(float(y) for y in plane_y), rng_seed)


def two_track_event(rng_seed=0):
    """
    Two tracks with one hit per plane plus uniformly distributed noise hits, the 2D response-map example.
    """
    fig = config['toy']['fig1']
    factory = ToyEventFactory(fig.get('n_planes'), fig.get('plane_spacing'))
    lines = [Line2D(angle, offset) for angle, offset in fig['tracks']]
    return factory.make_event(lines, n_noise=fig['n_noise'], x_noise=fig['x_noise'], rng_seed=rng_seed)


def close_tracks_event(rng_seed=0):
    """
    Two nearby tracks with Gaussian noise on the x-coordinate of every hit, the bandwidth example.
    """
    fig = config['toy']['fig2']
    factory = ToyEventFactory(fig.get('n_planes'), fig.get('plane_spacing'))
    lines = [Line2D(angle, offset) for angle, offset in fig['tracks']]
    return factory.make_event(lines, n_noise=fig['n_noise'], x_noise=fig['x_noise'], rng_seed=rng_seed)
