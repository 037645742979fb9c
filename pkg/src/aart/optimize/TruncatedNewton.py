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

from aart import config
from aart.retina import RetinaConfig, as_param_vector
from .RetinaObjective import RetinaObjective
from .UpdateProcedure import UpdateProcedure


def metric_directions(gradients, metrics):
    """
    Solves M d = grad for every row whose metric M is positive definite, other rows keep d = grad.

    :param gradients: M x 2
    :param metrics: M x 2 x 2, or None
    """
    result = np.array(gradients, dtype=float)
    if metrics is None:
        return result

    det = metrics[:, 0, 0] * metrics[:, 1, 1] - metrics[:, 0, 1] * metrics[:, 1, 0]
    definite = (metrics[:, 0, 0] > 0) & (det > 0)
    if np.any(definite):
        result[definite] = np.linalg.solve(metrics[definite], result[definite][..., np.newaxis])[..., 0]
    return result


class TruncatedNewtonUpdate(UpdateProcedure):
    def __init__(self, cg_max_iters=5, cg_tolerance=1e-6, c_armijo=1e-4, backtrack_factor=0.5,
                 max_backtracking_iter=8, max_step=None):
        """
        Newton ascent whose system H d = -grad is solved by conjugate gradients on the negated (minimisation) problem
        -H d = grad, stopped after cg_max_iters iterations, once the residual drops below cg_tolerance relative to the
        gradient, or on the first direction of non-negative curvature of R. On negative curvature the last CG iterate is
        used. If that happens on the first iteration the direction is M^-1 grad for the objective's curvature metric M
        where M is positive definite, and the gradient itself otherwise.

        At a point with zero gradient the step follows the eigenvector of the largest positive Hessian eigenvalue, so
        saddle points and minima are left. With a negative semi-definite Hessian the point is a maximum (or flat) and
        stays where it is.
        """
        super().__init__(c_armijo, backtrack_factor, max_backtracking_iter, max_step)
        self._cg_max_iters = cg_max_iters
        self._cg_tolerance = cg_tolerance

    def directions(self, values, gradients, hessians, metrics=None):
        m = gradients.shape[0]
        a = -hessians
        b = gradients

        x = np.zeros((m, 2))
        r = b.copy()
        p = r.copy()
        rr = np.einsum('ma,ma->m', r, r)
        b_norm = np.sqrt(rr)

        result = np.zeros((m, 2))
        done = b_norm == 0

        for iteration in range(self._cg_max_iters):
            active = ~done
            if not np.any(active):
                break

            ap = np.einsum('mab,mb->ma', a, p)
            curvature = np.einsum('ma,ma->m', p, ap)

            negative = active & (curvature <= 0)
            if iteration > 0:
                result[negative] = x[negative]
            elif np.any(negative):
                result[negative] = metric_directions(b[negative], None if metrics is None else metrics[negative])
            done |= negative
            active &= ~negative

            with np.errstate(divide='ignore', invalid='ignore'):
                alpha = np.where(active, rr / curvature, 0.0)
            x = x + alpha[:, np.newaxis] * p
            r = r - alpha[:, np.newaxis] * ap
            rr_new = np.einsum('ma,ma->m', r, r)

            converged = active & (np.sqrt(rr_new) <= self._cg_tolerance * b_norm)
            result[converged] = x[converged]
            done |= converged

            with np.errstate(divide='ignore', invalid='ignore'):
                beta = np.where(active, rr_new / rr, 0.0)
            p = np.where(active[:, np.newaxis], r + beta[:, np.newaxis] * p, p)
            rr = np.where(active, rr_new, rr)

        unfinished = ~done
        result[unfinished] = x[unfinished]

        stationary = np.flatnonzero(b_norm == 0)
        if stationary.size:
            eigenvalues, eigenvectors = np.linalg.eigh(hessians[stationary])
            rising = eigenvalues[:, -1] > 0
            result[stationary[rising]] = eigenvectors[rising, :, -1]
        return result


def truncated_newton_step(hits, p, sigma, retina_config: RetinaConfig = None, update: UpdateProcedure = None,
                          counter=None):
    """
    One Truncated Newton step on the response of `hits` at bandwidth `sigma`, starting from p.

    :param p: TrackParams, Line2D or 2-vector
    :param retina_config: distance model and cutoff, sigma is replaced by `sigma`
    :param update: defaults to a TruncatedNewtonUpdate with the configured settings
    :return: the new parameters, of the distance model's parameter type
    """
    cfg = (retina_config if retina_config is not None else RetinaConfig()).with_sigma(sigma)
    if update is None:
        opt = config['optimizer']
        update = TruncatedNewtonUpdate(opt['cg_max_iters'], opt['cg_tolerance'], opt['c_armijo'],
                                       opt['backtrack_factor'], opt['max_backtracking_iter'], opt['max_step'])

    objective = RetinaObjective(hits, cfg, counter)
    return cfg.distance.to_params(update.step(objective, as_param_vector(p)))
