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
from typing import Optional, Tuple

from aart import config
from aart.exceptions import ConfigError
from aart.geometry import DetectorGeometry


def _sim_default(key):
    return dataclasses.field(default_factory=lambda: config['simulation'][key])


@dataclasses.dataclass(frozen=True)
class SimConfig:
    """
    Parameters of the simplified VELO event generator.

    :ivar n_tracks: number of generated particles per event (before the n_min rule)
    :ivar geometry: the detector
    :ivar eta_range: pseudo-rapidity interval, sampled uniformly
    :ivar p_hit: probability that a particle crossing a layer in acceptance leaves a hit
    :ivar n_min: particles with fewer hits are undetectable and their hits become noise
    :ivar smear_sigma: standard deviation of the x and y measurement error, mm
    :ivar noise_mean: mean of the Poisson-distributed number of noise hits
    :ivar rng_seed: seed of the event's random streams
    :ivar phi_window: when set, only tracks with |phi| <= phi_window / 2 are generated (reduced acceptance)
    """
    n_tracks: int = _sim_default('n_tracks')
    geometry: DetectorGeometry = dataclasses.field(default_factory=DetectorGeometry.equally_spaced)
    eta_range: Tuple[float, float] = _sim_default('eta_range')
    p_hit: float = _sim_default('p_hit')
    n_min: int = _sim_default('n_min')
    smear_sigma: float = _sim_default('smear_sigma')
    noise_mean: float = _sim_default('noise_mean')
    rng_seed: int = _sim_default('rng_seed')
    phi_window: Optional[float] = _sim_default('phi_window')

    def __post_init__(self):
        object.__setattr__(self, 'eta_range', tuple(float(e) for e in self.eta_range))
        if self.n_tracks < 0:
            raise ConfigError(f'n_tracks must be non-negative, got {self.n_tracks}')
        if not 0.0 <= self.p_hit <= 1.0:
            raise ConfigError(f'p_hit must be a probability, got {self.p_hit}')
        if not self.smear_sigma > 0:
            raise ConfigError(f'smear_sigma must be positive, got {self.smear_sigma}')
        if not self.noise_mean >= 0:
            raise ConfigError(f'noise_mean must be non-negative, got {self.noise_mean}')
        if len(self.eta_range) != 2 or not self.eta_range[0] < self.eta_range[1]:
            raise ConfigError(f'eta_range must be an increasing interval, got {self.eta_range}')
        if self.n_min < 1:
            raise ConfigError(f'n_min must be at least 1, got {self.n_min}')
        if self.phi_window is not None and not 0 < self.phi_window <= 2 * math.pi:
            raise ConfigError(f'phi_window must be in (0, 2pi], got {self.phi_window}')
        if not 0 <= self.rng_seed < 2 ** 64:
            raise ConfigError(f'rng_seed must be a 64-bit unsigned integer, got {self.rng_seed}')

    def with_seed(self, rng_seed):
        return dataclasses.replace(self, rng_seed=rng_seed)

    def to_dict(self):
        return {
            'n_tracks': self.n_tracks,
            'geometry': self.geometry.to_dict(),
            'eta_range': list(self.eta_range),
            'p_hit': self.p_hit,
            'n_min': self.n_min,
            'smear_sigma': self.smear_sigma,
            'noise_mean': self.noise_mean,
            'rng_seed': self.rng_seed,
            'phi_window': self.phi_window,
        }

    @classmethod
    def from_dict(cls, values):
        return cls(n_tracks=int(values['n_tracks']),
                   geometry=DetectorGeometry.from_dict(values['geometry']),
                   eta_range=tuple(values['eta_range']),
                   p_hit=float(values['p_hit']),
                   n_min=int(values['n_min']),
                   smear_sigma=float(values['smear_sigma']),
                   noise_mean=float(values['noise_mean']),
                   rng_seed=int(values['rng_seed']),
                   phi_window=None if values.get('phi_window') is None else float(values['phi_window']))
