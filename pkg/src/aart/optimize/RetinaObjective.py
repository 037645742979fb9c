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

from aart.retina import RetinaConfig, response_full_many, response_many

# Upper bounds on the number of (point, hit) pairs per vectorised chunk
VALUE_CHUNK_ELEMENTS = 1 << 22
FULL_CHUNK_ELEMENTS = 1 << 19


class RetinaObjective:
    def __init__(self, hits, retina_config: RetinaConfig, counter=None):
        """
        The response of one event at one bandwidth, as seen by an UpdateProcedure: batched evaluation at M x 2 arrays of
        parameter points, and projection onto the valid parameter domain.

        :param hits: hit array
        :param retina_config: bandwidth and distance model
        :param counter: optional ResponseCounter recording every evaluation made
        """
        self._cfg = retina_config
        self._distance = retina_config.distance
        self._hits = self._distance.check_hits(hits)
        self._counter = counter

    @property
    def retina_config(self):
        return self._cfg

    def _chunks(self, params, elements):
        size = max(1, elements // max(1, self._hits.shape[0]))
        return [params[start:start + size] for start in range(0, params.shape[0], size)]

    def value_many(self, params):
        params = np.asarray(params, dtype=float).reshape(-1, 2)
        if self._counter is not None:
            self._counter.record_response(params.shape[0])
        if params.shape[0] == 0:
            return np.zeros(0)
        return np.concatenate([response_many(self._hits, c, self._cfg)
                               for c in self._chunks(params, VALUE_CHUNK_ELEMENTS)])

    def full_many(self, params):
        """
        :return: (values (M,), gradients (M, 2), hessians (M, 2, 2), curvature metrics (M, 2, 2))
        """
        params = np.asarray(params, dtype=float).reshape(-1, 2)
        if self._counter is not None:
            self._counter.record_full(params.shape[0])
        if params.shape[0] == 0:
            return np.zeros(0), np.zeros((0, 2)), np.zeros((0, 2, 2)), np.zeros((0, 2, 2))

        parts = [response_full_many(self._hits, c, self._cfg, with_metric=True)
                 for c in self._chunks(params, FULL_CHUNK_ELEMENTS)]
        return tuple(np.concatenate(arrays) for arrays in zip(*parts))

    def project(self, params):
        return self._distance.project(params)
