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

import numpy as np
from sklearn.neighbors import NearestNeighbors

from aart import config
from aart.geometry import TrackParams
from aart.retina import Candidate
from aart.simulation import TrueTrack
from .MatchReport import MatchReport

logger = logging.getLogger('TrackMatcher')


def _param_array(items):
    rows = []
    for item in items:
        params = item.params if isinstance(item, (Candidate, TrueTrack)) else item
        if not isinstance(params, TrackParams):
            raise TypeError('Matching needs TrackParams, got {}'.format(type(params).__name__))
        rows.append([params.theta, params.phi])
    return np.array(rows, dtype=float).reshape(-1, 2)


def _directions(params):
    cos_theta = np.cos(params[:, 0])
    return np.column_stack([np.sin(params[:, 0]), cos_theta * np.sin(params[:, 1]), cos_theta * np.cos(params[:, 1])])


def _wrapped(delta):
    return np.abs(np.pi - np.mod(np.pi - delta, 2 * np.pi))


def match_candidates(candidates, truths, epsilon=None, strict_params=False):
    """
    Matches candidates to true tracks one-to-one. All pairs closer than epsilon (angle between direction vectors) are
    sorted by ascending distance, ties going to the lowest truth id and then the lowest candidate index, and accepted
    greedily while neither member is already used.

    :param candidates: sequence of Candidate or TrackParams
    :param truths: sequence of TrueTrack (matched by track_id) or TrackParams (ids are the positions)
    :param epsilon: matching tolerance in radians, defaults to config['evaluation']['epsilon']
    :param strict_params: if set, a pair qualifies only when |d theta| <= epsilon and |d phi| <= epsilon
    :return: MatchReport
    """
    epsilon = config['evaluation']['epsilon'] if epsilon is None else epsilon
    if not epsilon > 0:
        raise ValueError('Matching tolerance must be positive, got {}'.format(epsilon))

    truth_ids = [t.track_id if isinstance(t, TrueTrack) else i for i, t in enumerate(truths)]
    cand = _param_array(candidates)
    true = _param_array(truths)

    pairs = []
    if cand.shape[0] and true.shape[0]:
        cand_dirs = _directions(cand)
        true_dirs = _directions(true)

        # candidate pairs by chord length; per-parameter matches lie within an angle of sqrt(2) epsilon
        search = 2.0 * epsilon if strict_params else epsilon
        index = NearestNeighbors(radius=2.0 * np.sin(min(search, np.pi) / 2.0) * (1 + 1e-9)).fit(cand_dirs)
        neighbours = index.radius_neighbors(true_dirs, return_distance=False)

        for t, cs in enumerate(neighbours):
            if cs.size == 0:
                continue
            a = true_dirs[t]
            b = cand_dirs[cs]
            angles = np.arctan2(np.linalg.norm(np.cross(b, a), axis=1), b @ a)
            if strict_params:
                ok = (np.abs(cand[cs, 0] - true[t, 0]) <= epsilon) & (_wrapped(cand[cs, 1] - true[t, 1]) <= epsilon)
            else:
                ok = angles <= epsilon
            pairs.extend((float(d), truth_ids[t], int(c)) for c, d in zip(cs[ok], angles[ok]))

    pairs.sort()
    used_truths = set()
    used_candidates = set()
    matched = []
    for distance, truth_id, c in pairs:
        if truth_id in used_truths or c in used_candidates:
            continue
        used_truths.add(truth_id)
        used_candidates.add(c)
        matched.append((c, truth_id, distance))

    missed = tuple(i for i in truth_ids if i not in used_truths)
    ghosts = tuple(c for c in range(cand.shape[0]) if c not in used_candidates)
    logger.debug(f'Matched {len(matched)}/{len(truth_ids)} tracks, {len(ghosts)} ghosts')
    return MatchReport(tuple(sorted(matched)), missed, ghosts, len(truth_ids), cand.shape[0])
