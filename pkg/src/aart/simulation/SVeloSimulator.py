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

import logging
import math

import numpy as np

from aart.geometry import DetectorGeometry, Hit, direction_to_params, eta_to_polar
from .Event import Event, TrueTrack
from .SimConfig import SimConfig

logger = logging.getLogger('SVeloSimulator')

MAX_WINDOW_ATTEMPTS = 10000


def sample_physical_track(rng, eta_range, phi_window=None):
    """
    Draws a track from the physical distribution: eta uniform in eta_range, azimuth about the beam axis uniform in
    [0, 2pi). The direction is converted to (theta, phi), which keeps every track forward-going. With phi_window set,
    draws are repeated until |phi| <= phi_window / 2.

    Each attempt consumes exactly two uniforms from `rng`.

    :return: TrackParams
    """
    for _ in range(MAX_WINDOW_ATTEMPTS):
        eta = rng.uniform(eta_range[0], eta_range[1])
        azimuth = rng.uniform(0.0, 2.0 * math.pi)
        polar = eta_to_polar(eta)
        direction = np.array([math.sin(polar) * math.cos(azimuth),
                              math.sin(polar) * math.sin(azimuth),
                              math.cos(polar)])
        direction /= np.linalg.norm(direction)
        params = direction_to_params(direction)
        if phi_window is None or abs(params.phi) <= phi_window / 2:
            return params

    raise ValueError(f'No track with |phi| <= {phi_window / 2} found in {MAX_WINDOW_ATTEMPTS} draws')


def sample_physical_params(rng, n, eta_range, phi_window=None):
    """
    Vectorised form of sample_physical_track drawing n tracks at once, used for seeding the optimizer.

    :return: n x 2 array of (theta, phi)
    """
    result = np.empty((0, 2))
    if n <= 0:
        return result
    for _ in range(MAX_WINDOW_ATTEMPTS):
        missing = n - result.shape[0]
        eta = rng.uniform(eta_range[0], eta_range[1], size=missing)
        azimuth = rng.uniform(0.0, 2.0 * math.pi, size=missing)
        polar = 2.0 * np.arctan(np.exp(-eta))
        params = np.column_stack([np.arcsin(np.clip(np.sin(polar) * np.cos(azimuth), -1.0, 1.0)),
                                  np.arctan2(np.sin(polar) * np.sin(azimuth), np.cos(polar))])
        if phi_window is not None:
            params = params[np.abs(params[:, 1]) <= phi_window / 2]
        result = np.concatenate([result, params])
        if result.shape[0] >= n:
            return result[:n]

    raise ValueError(f'Could not draw {n} tracks with |phi| <= {phi_window / 2}')


def noise_hit_sampler(geometry: DetectorGeometry, rng):
    """
    Draws one noise hit: a uniformly chosen layer and a point uniform by area over that layer's annulus.

    :return: a Hit labeled as noise
    """
    layer = int(rng.integers(geometry.n_layers))
    r2_in, r2_out = geometry.r_inner ** 2, geometry.r_outer ** 2
    r = math.sqrt(rng.uniform() * (r2_out - r2_in) + r2_in)
    angle = rng.uniform(0.0, 2.0 * math.pi)
    return Hit(r * math.cos(angle), r * math.sin(angle), geometry.layer_z[layer], layer)


class SVeloSimulator:
    def __init__(self, sim_config: SimConfig = None):
        """
        Generates events of the simplified VELO model. An event is a deterministic function of the configuration and
        its rng_seed. Random numbers are drawn from independent PCG64 streams spawned from
        SeedSequence(rng_seed): stream 0 is split into one child per track (used for the track direction, then one
        uniform and one x/y smear pair per layer, whether or not the layer is crossed), stream 1 drives the noise
        block (Poisson count, then one noise_hit_sampler call per hit). Results therefore do not depend on the order in
        which tracks are processed.

        :param sim_config: the generator configuration, defaults to SimConfig()
        """
        self._config = sim_config if sim_config is not None else SimConfig()

    @property
    def config(self):
        return self._config

    def generate_event(self, rng_seed=None):
        cfg = self._config if rng_seed is None else self._config.with_seed(rng_seed)
        geometry = cfg.geometry
        layer_z = np.asarray(geometry.layer_z)

        track_streams, noise_stream = np.random.SeedSequence(cfg.rng_seed).spawn(2)

        hits = []
        true_tracks = []
        for track_id, stream in enumerate(track_streams.spawn(cfg.n_tracks)):
            rng = np.random.default_rng(stream)
            params = sample_physical_track(rng, cfg.eta_range, cfg.phi_window)
            fires = rng.uniform(size=geometry.n_layers) < cfg.p_hit
            smear = rng.normal(0.0, cfg.smear_sigma, size=(geometry.n_layers, 2))

            direction = params.direction
            t = layer_z / direction[2]
            x = t * direction[0]
            y = t * direction[1]
            r = np.hypot(x, y)
            recorded = fires & (r >= geometry.r_inner) & (r <= geometry.r_outer)

            # plain ints keep the hits JSON serialisable
            track_hits = [Hit(float(x[k] + smear[k, 0]), float(y[k] + smear[k, 1]), geometry.layer_z[k], k, track_id)
                          for k in np.flatnonzero(recorded).tolist()]

            if len(track_hits) >= cfg.n_min:
                true_tracks.append(TrueTrack(track_id, params, len(track_hits)))
                hits.extend(track_hits)
            else:
                hits.extend(h.as_noise() for h in track_hits)

        rng = np.random.default_rng(noise_stream)
        n_noise = int(rng.poisson(cfg.noise_mean))
        hits.extend(noise_hit_sampler(geometry, rng) for _ in range(n_noise))

        logger.debug(f'Event seed={cfg.rng_seed}: {len(true_tracks)}/{cfg.n_tracks} reconstructible tracks, '
                     f'{len(hits)} hits ({n_noise} noise)')
        return Event(tuple(hits), tuple(true_tracks), cfg)

    def generate_events(self, seeds):
        for seed in seeds:
            yield self.generate_event(seed)


def generate_event(sim_config: SimConfig):
    return SVeloSimulator(sim_config).generate_event()
