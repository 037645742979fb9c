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
from typing import Sequence, Tuple


@dataclasses.dataclass(frozen=True)
class MatchReport:
    """
    The outcome of matching one event's candidates to its reconstructible true tracks.

    :ivar matched: (candidate_index, truth_id, angular_distance) per matched pair
    :ivar missed: ids of the true tracks no candidate matched
    :ivar ghosts: indices of the candidates that matched no true track
    """
    matched: Tuple[Tuple[int, int, float], ...]
    missed: Tuple[int, ...]
    ghosts: Tuple[int, ...]
    n_truths: int
    n_candidates: int

    @property
    def n_matched(self):
        return len(self.matched)

    @property
    def efficiency(self):
        return self.n_matched / self.n_truths if self.n_truths else 1.0

    @property
    def ghost_rate(self):
        return len(self.ghosts) / self.n_candidates if self.n_candidates else 0.0

    def to_dict(self):
        return {
            'n_truths': self.n_truths,
            'n_candidates': self.n_candidates,
            'matched': self.n_matched,
            'missed': len(self.missed),
            'ghosts': len(self.ghosts),
            'efficiency': self.efficiency,
            'ghost_rate': self.ghost_rate,
        }


def binomial_error(k, n):
    """
    Standard error of the efficiency k / n, sqrt(e (1 - e) / n).
    """
    if n == 0:
        return 0.0
    e = k / n
    return math.sqrt(e * (1.0 - e) / n)


@dataclasses.dataclass(frozen=True)
class MatchSummary:
    """
    Pooled match statistics over several events: efficiency is the total number of matched tracks over the total number
    of reconstructible tracks.
    """
    n_events: int
    n_truths: int
    n_matched: int
    n_candidates: int
    n_ghosts: int

    @classmethod
    def of(cls, reports: Sequence[MatchReport]):
        return cls(len(reports),
                   sum(r.n_truths for r in reports),
                   sum(r.n_matched for r in reports),
                   sum(r.n_candidates for r in reports),
                   sum(len(r.ghosts) for r in reports))

    @property
    def efficiency(self):
        return self.n_matched / self.n_truths if self.n_truths else 1.0

    @property
    def efficiency_error(self):
        return binomial_error(self.n_matched, self.n_truths)

    @property
    def ghost_rate(self):
        return self.n_ghosts / self.n_candidates if self.n_candidates else 0.0

    @property
    def mean_truths(self):
        return self.n_truths / self.n_events if self.n_events else 0.0
