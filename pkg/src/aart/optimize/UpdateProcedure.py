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
from abc import ABCMeta, abstractmethod

import numpy as np

logger = logging.getLogger('UpdateProcedure')


class UpdateProcedure(metaclass=ABCMeta):
    """
    One local-ascent step of the multi-start search, applied to a batch of parameter points at once.

    An objective is any object providing
        value_many(P) -> (M,) values
        full_many(P) -> (values (M,), gradients (M, 2), hessians (M, 2, 2)[, metrics (M, 2, 2)])
        project(P) -> P mapped onto the valid parameter domain
    for M x 2 arrays P. The optional metrics are positive semi-definite curvature estimates an update may fall back on
    where the Hessian is indefinite. RetinaObjective is the one used for reconstruction.

    Subclasses choose an ascent direction per point; the shared Armijo backtracking line search then guarantees that the
    objective never decreases.
    """

    def __init__(self, c_armijo=1e-4, backtrack_factor=0.5, max_backtracking_iter=8, max_step=None):
        """
        :param c_armijo: sufficient-increase constant of the Armijo condition
        :param backtrack_factor: step length multiplier after a rejected trial
        :param max_backtracking_iter: number of reductions before a point is left unchanged
        :param max_step: directions longer than this are shortened to it, None for no cap
        """
        self._c_armijo = c_armijo
        self._backtrack_factor = backtrack_factor
        self._max_backtracking_iter = max_backtracking_iter
        self._max_step = max_step

    @abstractmethod
    def directions(self, values, gradients, hessians, metrics=None):
        """
        :param metrics: M x 2 x 2 curvature metrics, None when the objective provides none
        :return: M x 2 array of ascent directions, zero rows for points that should not move
        """
        pass

    def step_many(self, objective, params):
        """
        Performs one step from every row of `params`.

        :return: (new_params, new_values, (values, gradients, hessians) at the starting points)
        """
        params = np.asarray(params, dtype=float).reshape(-1, 2)
        evaluation = objective.full_many(params)
        values, gradients, hessians = evaluation[:3]
        metrics = evaluation[3] if len(evaluation) > 3 else None

        directions = self._cap(self.directions(values, gradients, hessians, metrics))
        new_params, new_values = self._line_search(objective, params, values, gradients, directions)
        return new_params, new_values, (values, gradients, hessians)

    def step(self, objective, p):
        """
        Single-point form of step_many.

        :return: the new 2-vector
        """
        new_params, _, _ = self.step_many(objective, np.asarray(p, dtype=float).reshape(1, 2))
        return new_params[0]

    def _cap(self, directions):
        if self._max_step is None:
            return directions
        lengths = np.linalg.norm(directions, axis=1)
        scale = np.where(lengths > self._max_step, self._max_step / np.maximum(lengths, 1e-300), 1.0)
        return directions * scale[:, np.newaxis]

    def _line_search(self, objective, params, values, gradients, directions):
        new_params = params.copy()
        new_values = values.copy()

        slopes = np.einsum('ma,ma->m', gradients, directions)
        pending = np.linalg.norm(directions, axis=1) > 0
        step_length = np.ones(params.shape[0])

        for _ in range(self._max_backtracking_iter + 1):
            index = np.flatnonzero(pending)
            if index.size == 0:
                break

            trial = objective.project(params[index] + step_length[index, np.newaxis] * directions[index])
            trial_values = objective.value_many(trial)

            required = values[index] + self._c_armijo * step_length[index] * slopes[index]
            accepted = (trial_values >= required) & ((trial_values > values[index]) | (slopes[index] > 0))

            new_params[index[accepted]] = trial[accepted]
            new_values[index[accepted]] = trial_values[accepted]
            pending[index[accepted]] = False
            step_length[index[~accepted]] *= self._backtrack_factor

        if np.any(pending):
            logger.debug(f'{np.count_nonzero(pending)} points kept in place after {self._max_backtracking_iter} '
                         f'step reductions')
        return new_params, new_values
