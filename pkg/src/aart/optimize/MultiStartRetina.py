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
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

import numpy as np
from sklearn.neighbors import NearestNeighbors

from aart.retina import Candidate, ResponseCounter, ResponseEval, SVeloDistance, as_param_vector
from .OptimizerConfig import OptimizerConfig
from .RetinaObjective import RetinaObjective
from .SeedTrajectory import SeedTrajectory

logger = logging.getLogger('MultiStartRetina')


def _cluster_order(params, responses):
    # descending response, ties broken by ascending first then second parameter
    return np.lexsort((params[:, 1], params[:, 0], -responses))


def cluster_points(params, responses, cluster_radius, R_0, distance=None, seed_ids=None):
    """
    Array form of cluster_solutions.

    :param params: M x 2 array of solutions
    :param responses: M responses
    :param distance: DistanceModel defining the cluster metric, SVeloDistance by default
    :param seed_ids: identifier reported for each solution, defaults to its row index
    :return: list of Candidate sorted by descending response
    """
    distance = distance if distance is not None else SVeloDistance()
    params = np.asarray(params, dtype=float).reshape(-1, 2)
    responses = np.asarray(responses, dtype=float)
    seed_ids = np.arange(params.shape[0]) if seed_ids is None else np.asarray(seed_ids)
    if params.shape[0] == 0:
        return []

    order = _cluster_order(params, responses)
    points = distance.embed(params)
    radius = distance.embedding_radius(cluster_radius)
    index = NearestNeighbors(radius=radius).fit(points)

    # Clusters led by a solution below R_0 emit nothing, and every solution above R_0 is processed before them, so
    # only those need to be visited as potential leaders. Members are still counted over all solutions.
    owner = np.full(params.shape[0], -1)
    candidates = []
    for leader in order:
        if responses[leader] < R_0:
            break
        if owner[leader] >= 0:
            continue

        neighbours = index.radius_neighbors(points[leader:leader + 1], return_distance=False)[0]
        members = neighbours[owner[neighbours] < 0]
        owner[members] = leader
        owner[leader] = leader

        candidates.append(Candidate(distance.to_params(params[leader]), float(responses[leader]),
                                    int(max(members.size, 1)), int(seed_ids[leader])))
    return candidates


def cluster_solutions(finals, cluster_radius, R_0, distance=None):
    """
    Greedy leader clustering of optimizer solutions. Solutions are processed by descending response (ties broken
    lexicographically on the parameters); each joins the first existing cluster whose leader lies within cluster_radius,
    otherwise it founds a new cluster. Every cluster whose leader reaches R_0 yields that leader as a Candidate.

    :param finals: list of (params, response), params being TrackParams, Line2D or 2-vectors
    :param cluster_radius: for sVELO, the angle between direction vectors in radians
    :param R_0: response threshold
    :param distance: DistanceModel defining the cluster metric, SVeloDistance by default
    :return: list of Candidate sorted by descending response
    """
    if len(finals) == 0:
        return []
    params = np.array([as_param_vector(p) for p, _ in finals])
    responses = np.array([r for _, r in finals], dtype=float)
    return cluster_points(params, responses, cluster_radius, R_0, distance)


@dataclasses.dataclass
class MultiStartResult:
    """
    Everything a multi-start run produced. Arrays are indexed by seed.

    :ivar history: (q + 1) x n_seeds x 2 parameter points, starting with the seeds
    :ivar values: q x n_seeds responses at the start of each step, at that step's bandwidth
    :ivar gradients: q x n_seeds x 2
    :ivar hessians: q x n_seeds x 2 x 2
    :ivar final_responses: responses of the final points at the last bandwidth
    :ivar counter: budget counter, billed C0 per update step
    :ivar evaluations: raw count of every response and full evaluation actually made
    """
    candidates: List[Candidate]
    history: np.ndarray
    values: np.ndarray
    gradients: np.ndarray
    hessians: np.ndarray
    final_responses: np.ndarray
    counter: ResponseCounter
    evaluations: ResponseCounter
    distance: object = None

    @property
    def n_seeds(self):
        return self.history.shape[1]

    def trajectory(self, seed_id) -> SeedTrajectory:
        to_params = self.distance.to_params
        steps = tuple((to_params(self.history[j, seed_id]),
                       ResponseEval(float(self.values[j, seed_id]), self.gradients[j, seed_id].copy(),
                                    self.hessians[j, seed_id].copy()))
                      for j in range(self.values.shape[0]))
        return SeedTrajectory(steps, to_params(self.history[-1, seed_id]), float(self.final_responses[seed_id]))


class MultiStartRetina:
    def __init__(self, optimizer_config: OptimizerConfig, jobs=1):
        """
        The accelerated retina: draw n_seeds initial guesses from the prior, move each through q update steps, step j
        maximising the response at sigma_schedule[j], then cluster the solutions and keep the leaders above R_0.

        :param optimizer_config: search settings
        :param jobs: number of threads the seeds are spread over
        """
        self._config = optimizer_config
        self._update = optimizer_config.make_update()
        self._jobs = jobs

    @property
    def config(self):
        return self._config

    def _run_block(self, hits, seeds):
        cfg = self._config
        evaluations = ResponseCounter(C0=cfg.cost_C0)
        n = seeds.shape[0]

        history = np.empty((cfg.q + 1, n, 2))
        values = np.empty((cfg.q, n))
        gradients = np.empty((cfg.q, n, 2))
        hessians = np.empty((cfg.q, n, 2, 2))

        points = seeds
        history[0] = points
        for step in range(cfg.q):
            objective = RetinaObjective(hits, cfg.retina_config(step), evaluations)
            points, _, (values[step], gradients[step], hessians[step]) = self._update.step_many(objective, points)
            history[step + 1] = points

        final_responses = RetinaObjective(hits, cfg.final_retina_config, evaluations).value_many(points)
        return history, values, gradients, hessians, final_responses, evaluations

    def reconstruct(self, hits, rng, counter: Optional[ResponseCounter] = None) -> MultiStartResult:
        """
        :param hits: hit array (no truth information)
        :param rng: numpy Generator or integer seed, drives the seed draw
        :param counter: budget counter, billed n_seeds * q update steps
        :return: MultiStartResult
        """
        cfg = self._config
        distance = cfg.distance_model.create()
        hits = distance.check_hits(hits)
        counter = counter if counter is not None else ResponseCounter(C0=cfg.cost_C0)

        seeds = distance.project(cfg.seed_prior().draw(cfg.n_seeds, np.random.default_rng(rng)))

        blocks = np.array_split(seeds, min(max(self._jobs, 1), cfg.n_seeds))
        if len(blocks) > 1:
            with ThreadPoolExecutor(max_workers=len(blocks)) as executor:
                parts = list(executor.map(lambda block: self._run_block(hits, block), blocks))
        else:
            parts = [self._run_block(hits, seeds)]

        history, values, gradients, hessians, final_responses = (
            np.concatenate([part[k] for part in parts], axis=0 if k == 4 else 1) for k in range(5))
        evaluations = parts[0][5]
        for part in parts[1:]:
            evaluations = evaluations.merge(part[5])

        counter.record_steps(cfg.n_seeds * cfg.q)

        candidates = cluster_points(history[-1], final_responses, cfg.cluster_radius, cfg.R_0, distance)
        logger.debug(f'{cfg.n_seeds} seeds x {cfg.q} steps on {hits.shape[0]} hits: {len(candidates)} candidates, '
                     f'{evaluations.response_calls} response and {evaluations.full_calls} full evaluations')

        return MultiStartResult(candidates, history, values, gradients, hessians, final_responses, counter,
                                evaluations, distance)


def run_multistart(hits, cfg: OptimizerConfig, rng, counter=None, jobs=1):
    """
    Runs the multi-start search on one event.

    :return: list of Candidate sorted by descending response
    """
    return MultiStartRetina(cfg, jobs).reconstruct(hits, rng, counter).candidates
