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
from typing import Optional, Tuple, Union

from aart import config, method_cost_C0
from aart.exceptions import ConfigError
from aart.retina import DistanceModelKind, RetinaConfig
from .GradientAscentUpdate import GradientAscentUpdate
from .SeedPrior import SeedPrior, make_prior
from .TruncatedNewton import TruncatedNewtonUpdate
from .UpdateProcedure import UpdateProcedure

METHODS = ('truncated_newton', 'gradient_ascent')


def _opt(key):
    return dataclasses.field(default_factory=lambda: config['optimizer'][key])


@dataclasses.dataclass(frozen=True)
class OptimizerConfig:
    """
    Settings of the multi-start search. Every field not given is taken from config['optimizer'].

    :ivar n_seeds: number of initial guesses
    :ivar q: number of update steps per seed
    :ivar sigma_schedule: bandwidth of each step, len(sigma_schedule) == q. A single value is repeated q times.
    :ivar R_0: response threshold a cluster leader has to reach, evaluated at the last bandwidth
    :ivar cluster_radius: solutions closer than this join the same cluster, in radians between direction vectors for
    sVELO and in parameter units for the toy model
    :ivar prior: 'physical', 'uniform' or a SeedPrior instance
    :ivar method: 'truncated_newton' or 'gradient_ascent'
    :ivar cost_C0: response-units billed per update step, defaults to the cost configured for `method`
    """
    n_seeds: int = 100
    q: int = _opt('q')
    sigma_schedule: Tuple[float, ...] = _opt('sigma_schedule')
    R_0: float = _opt('R_0')
    cluster_radius: float = _opt('cluster_radius')
    prior: Union[str, SeedPrior] = _opt('prior')
    method: str = _opt('method')
    cost_C0: Optional[float] = None
    cg_max_iters: int = _opt('cg_max_iters')
    cg_tolerance: float = _opt('cg_tolerance')
    c_armijo: float = _opt('c_armijo')
    backtrack_factor: float = _opt('backtrack_factor')
    max_backtracking_iter: int = _opt('max_backtracking_iter')
    max_step: Optional[float] = _opt('max_step')
    learning_rate: float = _opt('learning_rate')
    distance_model: DistanceModelKind = DistanceModelKind.SVELO_3D
    far_hit_cutoff: Optional[float] = dataclasses.field(default_factory=lambda: config['retina']['far_hit_cutoff'])
    phi_window: Optional[float] = dataclasses.field(default_factory=lambda: config['simulation']['phi_window'])

    def __post_init__(self):
        schedule = tuple(float(s) for s in self.sigma_schedule)
        if len(schedule) == 1 and self.q > 1:
            schedule = schedule * self.q
        object.__setattr__(self, 'sigma_schedule', schedule)
        object.__setattr__(self, 'distance_model', DistanceModelKind(self.distance_model))

        if self.n_seeds < 1:
            raise ConfigError(f'n_seeds must be at least 1, got {self.n_seeds}')
        if self.q < 1:
            raise ConfigError(f'q must be at least 1, got {self.q}')
        if len(schedule) != self.q:
            raise ConfigError(f'sigma_schedule has {len(schedule)} entries, expected q={self.q}')
        if not all(math.isfinite(s) and s > 0 for s in schedule):
            raise ConfigError(f'All bandwidths must be positive, got {schedule}')
        if self.cluster_radius < 0:
            raise ConfigError(f'cluster_radius must not be negative, got {self.cluster_radius}')
        if self.method not in METHODS:
            raise ConfigError(f'Unknown update method {self.method}, expected one of {METHODS}')
        if self.cost_C0 is None:
            object.__setattr__(self, 'cost_C0', method_cost_C0(self.method))
        if not self.cost_C0 > 0:
            raise ConfigError(f'cost_C0 must be positive, got {self.cost_C0}')
        if self.cg_max_iters < 1:
            raise ConfigError(f'cg_max_iters must be at least 1, got {self.cg_max_iters}')
        if not 0 < self.backtrack_factor < 1:
            raise ConfigError(f'backtrack_factor must lie in (0, 1), got {self.backtrack_factor}')
        if self.max_step is not None and self.max_step <= 0:
            raise ConfigError(f'max_step must be positive or None, got {self.max_step}')
        if isinstance(self.prior, str) and self.prior not in ('physical', 'uniform'):
            raise ConfigError(f'Unknown seed prior {self.prior}')

    def retina_config(self, step):
        """
        :return: the RetinaConfig used by update step `step` (0-based)
        """
        return RetinaConfig(self.sigma_schedule[step], self.distance_model, self.far_hit_cutoff)

    @property
    def final_retina_config(self):
        return self.retina_config(self.q - 1)

    def seed_prior(self) -> SeedPrior:
        if isinstance(self.prior, SeedPrior):
            return self.prior
        return make_prior(self.prior, self.phi_window)

    def make_update(self) -> UpdateProcedure:
        if self.method == 'gradient_ascent':
            return GradientAscentUpdate(self.learning_rate, self.c_armijo, self.backtrack_factor,
                                        self.max_backtracking_iter, self.max_step)
        return TruncatedNewtonUpdate(self.cg_max_iters, self.cg_tolerance, self.c_armijo, self.backtrack_factor,
                                     self.max_backtracking_iter, self.max_step)

    def with_n_seeds(self, n_seeds):
        return dataclasses.replace(self, n_seeds=n_seeds)

    def to_dict(self):
        result = dataclasses.asdict(self)
        result['sigma_schedule'] = list(self.sigma_schedule)
        result['distance_model'] = self.distance_model.value
        result['prior'] = self.prior if isinstance(self.prior, str) else repr(self.prior)
        return result
