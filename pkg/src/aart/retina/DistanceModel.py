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

from abc import ABCMeta, abstractmethod

import numpy as np


class DistanceModel(metaclass=ABCMeta):
    """
    The hit-to-track distance s(x, p) entering the retina response, together with everything the reconstruction needs
    to know about the model's two track parameters p.

    Implementations work on the squared distance, which is smooth everywhere (the plain norm is not differentiable
    where a hit lies exactly on the track). Hits are passed as an N x n_coordinates float array. Parameters are passed
    either as a 2-vector or as an M x 2 array of parameter points, in which case results gain a leading M axis.
    Parameter points for which the model is undefined (e.g. backward-going tracks) get an infinite squared distance and
    zero derivatives, so they contribute nothing to the response.
    """
    n_coordinates = None

    @abstractmethod
    def squared_distance(self, hits, params):
        """
        :param hits: N x n_coordinates array
        :param params: 2-vector, or M x 2 array of parameter points
        :return: array of shape (N,) or (M, N)
        """
        pass

    @abstractmethod
    def squared_distance_derivatives(self, hits, params):
        """
        :param hits: N x n_coordinates array
        :param params: 2-vector, or M x 2 array of parameter points
        :return: (s2, grad, hess) of shapes (..., N), (..., N, 2) and (..., N, 2, 2): the squared distance and its first
        and second derivatives with respect to the two track parameters, one row per hit.
        """
        pass

    @abstractmethod
    def project(self, params):
        """
        Maps an M x 2 array of raw parameter points (e.g. optimizer trial steps) into the valid parameter domain.
        """
        pass

    @abstractmethod
    def to_params(self, vector):
        """
        Converts a parameter 2-vector into the model's parameter object (TrackParams or Line2D).
        """
        pass

    def embed(self, params):
        """
        Maps an M x 2 array of parameter points into a space where Euclidean distance measures how different two
        tracks are. Used for clustering solutions. The default is the parameter space itself.
        """
        return np.asarray(params, dtype=float).reshape(-1, 2)

    def embedding_radius(self, radius):
        """
        Converts a clustering radius in the model's track metric into a Euclidean radius in the embedding space.
        """
        return radius

    def check_hits(self, hits):
        hits = np.asarray(hits, dtype=float)
        if hits.ndim != 2 or hits.shape[1] != self.n_coordinates:
            if hits.size == 0:
                return np.empty((0, self.n_coordinates))
            raise ValueError('{} expects an N x {} hit array, got shape {}'.format(
                self.__class__.__name__, self.n_coordinates, hits.shape))
        return hits


def _symmetric(h00, h01, h11):
    """Stacks the three distinct Hessian entries into (..., 2, 2) matrices."""
    return np.stack([np.stack([h00, h01], axis=-1), np.stack([h01, h11], axis=-1)], axis=-2)
