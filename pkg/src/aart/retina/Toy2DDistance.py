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

from aart.geometry import Line2D
from .DistanceModel import DistanceModel, _symmetric

ANGLE_LIMIT = np.pi / 2 - 1e-9


class Toy2DDistance(DistanceModel):
    """
    Distance of the 2D toy model: hits (x, y) are measured in x on horizontal planes y = const, and a line with
    parameters (angle, offset) is expected at x = offset + y tan(angle).
    The residual r = x - offset - y tan(angle) gives

        s2 = r^2,   d s2 / d a = 2 r r_a,   d2 s2 / d a d b = 2 (r_a r_b + r r_ab)

    with r_angle = -y sec^2(angle), r_offset = -1 and r_angle_angle = -2 y sec^2(angle) tan(angle) the only non-zero
    second derivative.
    """
    n_coordinates = 2

    def squared_distance(self, hits, params):
        hits = self.check_hits(hits)
        params = np.asarray(params, dtype=float)
        angle = params[..., 0, np.newaxis]
        offset = params[..., 1, np.newaxis]

        valid = np.abs(angle) < np.pi / 2
        with np.errstate(invalid='ignore', over='ignore'):
            r = hits[:, 0] - offset - hits[:, 1] * np.tan(angle)
            s2 = r * r
        return np.where(valid, s2, np.inf)

    def squared_distance_derivatives(self, hits, params):
        hits = self.check_hits(hits)
        params = np.asarray(params, dtype=float)
        angle = params[..., 0, np.newaxis]
        offset = params[..., 1, np.newaxis]
        x, y = hits[:, 0], hits[:, 1]

        valid = np.abs(angle) < np.pi / 2
        with np.errstate(invalid='ignore', over='ignore'):
            tan_a = np.tan(angle)
            sec2_a = 1.0 + tan_a * tan_a
            r = x - offset - y * tan_a
            r_angle = -y * sec2_a
            r_angle_angle = -2.0 * y * sec2_a * tan_a

            g_angle = 2.0 * r * r_angle
            g_offset = -2.0 * r
            h_angle_angle = 2.0 * (r_angle * r_angle + r * r_angle_angle)
            h_angle_offset = -2.0 * r_angle
            h_offset_offset = np.full_like(r, 2.0)

            s2 = np.where(valid, r * r, np.inf)

        grad = np.where(valid[..., np.newaxis], np.stack([g_angle, g_offset], axis=-1), 0.0)
        hess = np.where(valid[..., np.newaxis, np.newaxis],
                        _symmetric(h_angle_angle, h_angle_offset, h_offset_offset), 0.0)
        return s2, grad, hess

    def project(self, params):
        params = np.array(params, dtype=float).reshape(-1, 2)
        params[:, 0] = np.clip(params[:, 0], -ANGLE_LIMIT, ANGLE_LIMIT)
        return params

    def to_params(self, vector):
        return Line2D(float(vector[0]), float(vector[1]))
