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
from typing import FrozenSet, Tuple

from aart.geometry import Hit, TrackParams, hit_coordinates
from .SimConfig import SimConfig


@dataclasses.dataclass(frozen=True)
class TrueTrack:
    track_id: int
    params: TrackParams
    n_hits: int


@dataclasses.dataclass(frozen=True)
class Event:
    """
    One generated event: the hits, the reconstructible true tracks and the configuration that produced them. Only
    tracks that left at least n_min hits appear in true_tracks; hits of the others are labeled as noise.
    """
    hits: Tuple[Hit, ...]
    true_tracks: Tuple[TrueTrack, ...]
    config_snapshot: SimConfig

    @property
    def seed(self):
        return self.config_snapshot.rng_seed

    @property
    def reconstructible_ids(self) -> FrozenSet[int]:
        n_min = self.config_snapshot.n_min
        return frozenset(t.track_id for t in self.true_tracks if t.n_hits >= n_min)

    @property
    def coordinates(self):
        """
        The Nx3 hit array handed to reconstruction. Truth labels are not part of it.
        """
        return hit_coordinates(self.hits)

    @property
    def n_noise_hits(self):
        return sum(1 for h in self.hits if h.is_noise)

    def true_params(self):
        return [t.params for t in self.true_tracks]
