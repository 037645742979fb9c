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

import numpy as np

from aart.geometry import TrackParams
from .DistanceModel import DistanceModel, _symmetric


class SVeloDistance(DistanceModel):
    """
    Distance in the layer plane between a hit (x, y, z) and the track's intersection with the plane z.

    Solving z(t) = z for the (theta, phi) track gives the intersection (z u, z v) with

        u = tan(theta) / cos(phi),    v = tan(phi)

    so the residual (rx, ry) = (x - z u, y - z v) is linear in u and v, and

        d s2 / d a     = -2 z (rx u_a + ry v_a)
        d2 s2 / d a db = 2 z^2 (u_a u_b + v_a v_b) - 2 z (rx u_ab + ry v_ab)

    where, writing T = tan(theta), S = sec(theta), t = tan(phi), s = sec(phi):

        u_theta = S^2 s             v_theta = 0
        u_phi   = T s t             v_phi   = s^2
        u_theta_theta = 2 S^2 T s   v_theta_theta = 0
        u_theta_phi   = S^2 s t     v_theta_phi   = 0
        u_phi_phi     = T s (t^2 + s^2)
        v_phi_phi     = 2 s^2 t

    Tracks with cos(theta) cos(phi) <= 0 never reach the layers.
    """
    n_coordinates = 3

    def _residuals(self, hits, params):
        params = np.asarray(params, dtype=float)
        theta = params[..., 0, np.newaxis]
        phi = params[..., 1, np.newaxis]
        forward = np.cos(theta) * np.cos(phi) > 0

        big_t = np.tan(theta)
        s = 1.0 / np.cos(phi)
        t = np.tan(phi)
        rx = hits[:, 0] - hits[:, 2] * (big_t * s)
        ry = hits[:, 1] - hits[:, 2] * t
        return theta, phi, forward, rx, ry

    def squared_distance(self, hits, params):
        hits = self.check_hits(hits)
        with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
            _, _, forward, rx, ry = self._residuals(hits, params)
            s2 = rx * rx + ry * ry
        return np.where(forward, s2, np.inf)

    def squared_distance_derivatives(self, hits, params):
        hits = self.check_hits(hits)
        z = hits[:, 2]

        with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
            theta, phi, forward, rx, ry = self._residuals(hits, params)
            big_t = np.tan(theta)
            big_s2 = 1.0 / np.cos(theta) ** 2
            t = np.tan(phi)
            s = 1.0 / np.cos(phi)

            u_theta = big_s2 * s
            u_phi = big_t * s * t
            v_phi = s * s
            u_theta_theta = 2.0 * big_s2 * big_t * s
            u_theta_phi = big_s2 * s * t
            u_phi_phi = big_t * s * (t * t + s * s)
            v_phi_phi = 2.0 * s * s * t

            two_z = 2.0 * z
            two_z2 = 2.0 * z * z
            g_theta = -two_z * rx * u_theta
            g_phi = -two_z * (rx * u_phi + ry * v_phi)
            h_theta_theta = two_z2 * u_theta * u_theta - two_z * rx * u_theta_theta
            h_theta_phi = two_z2 * u_theta * u_phi - two_z * rx * u_theta_phi
            h_phi_phi = two_z2 * (u_phi * u_phi + v_phi * v_phi) - two_z * (rx * u_phi_phi + ry * v_phi_phi)

            s2 = np.where(forward, rx * rx + ry * ry, np.inf)

        grad = np.where(forward[..., np.newaxis], np.stack([g_theta, g_phi], axis=-1), 0.0)
        hess = np.where(forward[..., np.newaxis, np.newaxis],
                        _symmetric(h_theta_theta, h_theta_phi, h_phi_phi), 0.0)
        return s2, grad, hess

    def project(self, params):
        params = np.array(params, dtype=float).reshape(-1, 2)
        params[:, 0] = np.clip(params[:, 0], -np.pi / 2, np.pi / 2)
        params[:, 1] = np.pi - np.mod(np.pi - params[:, 1], 2 * np.pi)
        return params

    def to_params(self, vector):
        return TrackParams.from_array(vector)

    def embed(self, params):
        params = np.asarray(params, dtype=float).reshape(-1, 2)
        cos_theta = np.cos(params[:, 0])
        return np.column_stack([np.sin(params[:, 0]),
                                cos_theta * np.sin(params[:, 1]),
                                cos_theta * np.cos(params[:, 1])])

    def embedding_radius(self, radius):
        # the chord between two unit vectors an angle `radius` apart
        return 2.0 * np.sin(radius / 2.0)
