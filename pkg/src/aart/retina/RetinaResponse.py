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

"""
The Artificial Retina response

    R(p) = sum_k exp(-s(x_k, p)^2 / sigma^2)

and its analytic gradient and Hessian with respect to the two track parameters p. The derivatives follow from the chain
rule on the squared distance s2 = s^2, with w_k = exp(-s2_k / sigma^2):

    dR/da      = -1/sigma^2 sum_k w_k ds2_k/da
    d2R/da db  = sum_k w_k (ds2_k/da ds2_k/db / sigma^4 - d2s2_k/da db / sigma^2)
"""
import numpy as np

from aart.geometry import Line2D, TrackParams
from .ResponseEval import ResponseEval
from .RetinaConfig import RetinaConfig


def as_param_vector(p):
    """
    Converts TrackParams, Line2D or any 2-sequence into a float 2-vector.
    """
    if isinstance(p, TrackParams):
        return np.array([p.theta, p.phi])
    if isinstance(p, Line2D):
        return np.array([p.angle, p.offset])
    return np.asarray(p, dtype=float)


def _weights(s2, cfg: RetinaConfig):
    sigma2 = cfg.sigma * cfg.sigma
    with np.errstate(invalid='ignore'):
        w = np.exp(-s2 / sigma2)
    if cfg.far_hit_cutoff is not None:
        w = np.where(s2 > (cfg.far_hit_cutoff * cfg.sigma) ** 2, 0.0, w)
    return w


def response(hits, p, cfg: RetinaConfig, counter=None):
    """
    Evaluates the response at a single parameter point.

    :param hits: N x n_coordinates hit array (no truth information)
    :param p: TrackParams, Line2D or 2-vector
    :param cfg: the RetinaConfig providing sigma and the distance model
    :param counter: optional ResponseCounter, charged one unit
    :return: the response, between 0 and N
    """
    if counter is not None:
        counter.record_response()

    hits = cfg.distance.check_hits(hits)
    if hits.shape[0] == 0:
        return 0.0

    s2 = cfg.distance.squared_distance(hits, as_param_vector(p))
    return float(np.sum(_weights(s2, cfg)))


def response_many(hits, params, cfg: RetinaConfig):
    """
    Evaluates the response at an M x 2 array of parameter points in one vectorised pass. Memory grows as M x N, so
    callers chunk large point sets. Does not touch any counter.

    :return: array of M responses
    """
    params = np.asarray(params, dtype=float).reshape(-1, 2)
    hits = cfg.distance.check_hits(hits)
    if hits.shape[0] == 0:
        return np.zeros(params.shape[0])

    s2 = cfg.distance.squared_distance(hits, params)
    return np.sum(_weights(s2, cfg), axis=1)


def response_full(hits, p, cfg: RetinaConfig, counter=None):
    """
    Evaluates the response, its gradient and its Hessian at a single parameter point in one pass over the hits.
    The value is computed exactly as in `response`; derivatives are only computed for hits inside the far-hit cutoff.

    :param counter: optional ResponseCounter, charged C units
    :return: ResponseEval
    """
    if counter is not None:
        counter.record_full()

    hits = cfg.distance.check_hits(hits)
    if hits.shape[0] == 0:
        return ResponseEval(0.0, np.zeros(2), np.zeros((2, 2)))

    params = as_param_vector(p)
    s2 = cfg.distance.squared_distance(hits, params)
    w = _weights(s2, cfg)
    value = float(np.sum(w))

    near = w > 0
    if not np.any(near):
        return ResponseEval(value, np.zeros(2), np.zeros((2, 2)))

    _, ds2, d2s2 = cfg.distance.squared_distance_derivatives(hits[near], params)
    w = w[near]
    inv_sigma2 = 1.0 / (cfg.sigma * cfg.sigma)

    gradient = -inv_sigma2 * np.einsum('k,ka->a', w, ds2)
    hessian = (inv_sigma2 ** 2 * np.einsum('k,ka,kb->ab', w, ds2, ds2)
               - inv_sigma2 * np.einsum('k,kab->ab', w, d2s2))
    hessian = 0.5 * (hessian + hessian.T)
    return ResponseEval(value, gradient, hessian)


def response_full_many(hits, params, cfg: RetinaConfig, with_metric=False):
    """
    Batched `response_full` over an M x 2 array of parameter points. Memory grows as M x N, so callers chunk large point
    sets. Does not touch any counter.

    With with_metric, also returns the curvature metric

        M = 1/sigma^2 sum_k w_k d2s2_k

    the part of -H that comes from the curvature of the distances. Near a track candidate supported by two or more
    hits it is positive definite even where the Hessian is not, and M^-1 grad is a weighted least-squares step towards
    the close hits.

    :return: (values (M,), gradients (M, 2), hessians (M, 2, 2)), plus metrics (M, 2, 2) when with_metric is set
    """
    params = np.asarray(params, dtype=float).reshape(-1, 2)
    m = params.shape[0]
    hits = cfg.distance.check_hits(hits)
    if hits.shape[0] == 0:
        empty = (np.zeros(m), np.zeros((m, 2)), np.zeros((m, 2, 2)))
        return empty + (np.zeros((m, 2, 2)),) if with_metric else empty

    s2, ds2, d2s2 = cfg.distance.squared_distance_derivatives(hits, params)
    w = _weights(s2, cfg)
    inv_sigma2 = 1.0 / (cfg.sigma * cfg.sigma)

    values = np.sum(w, axis=1)
    gradients = -inv_sigma2 * np.einsum('mk,mka->ma', w, ds2)
    metrics = inv_sigma2 * np.einsum('mk,mkab->mab', w, d2s2)
    metrics = 0.5 * (metrics + np.swapaxes(metrics, 1, 2))
    hessians = inv_sigma2 ** 2 * np.einsum('mk,mka,mkb->mab', w, ds2, ds2) - metrics
    hessians = 0.5 * (hessians + np.swapaxes(hessians, 1, 2))
    if with_metric:
        return values, gradients, hessians, metrics
    return values, gradients, hessians
