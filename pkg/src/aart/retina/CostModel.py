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
import math
import time

import numpy as np

from aart import config, method_cost_C0
from .RetinaConfig import RetinaConfig
from .RetinaResponse import response, response_full

logger = logging.getLogger('CostModel')


@dataclasses.dataclass(frozen=True)
class CostReport:
    C_configured: float
    C_measured: float
    C0_configured: float
    C0_measured: float = float('nan')

    def to_dict(self):
        # unmeasured constants are NaN, which JSON cannot hold
        return {k: None if math.isnan(v) else v for k, v in dataclasses.asdict(self).items()}


class CostModel:
    def __init__(self, C=None, C0=None):
        """
        The cost constants used for budget accounting: C, the cost of a response+gradient+Hessian evaluation, and C0,
        the cost of a full optimizer step, both in units of one plain response evaluation. Accounting always uses these
        configured values. `measure` times the actual routines so they can be reported next to them.

        :param C: defaults to config['retina']['cost_C']
        :param C0: defaults to the configured update method's cost_C0
        """
        self._C = config['retina']['cost_C'] if C is None else C
        self._C0 = method_cost_C0() if C0 is None else C0

    @property
    def C(self):
        return self._C

    @property
    def C0(self):
        return self._C0

    def measure(self, hits, params, cfg: RetinaConfig, repeats=200, step=None):
        """
        Micro-benchmarks response and response_full on the given hits and parameter points.

        :param hits: hit array of a representative event
        :param params: sequence of parameter points to evaluate at
        :param cfg: retina configuration
        :param repeats: number of passes over `params`
        :param step: optional callable step(p) performing one optimizer step; when given, C0 is measured as well
        :return: CostReport with the configured and measured constants
        """
        params = [np.asarray(p, dtype=float) for p in params]

        start = time.perf_counter()
        for _ in range(repeats):
            for p in params:
                response(hits, p, cfg)
        t_response = (time.perf_counter() - start) / (repeats * len(params))

        start = time.perf_counter()
        for _ in range(repeats):
            for p in params:
                response_full(hits, p, cfg)
        t_full = (time.perf_counter() - start) / (repeats * len(params))

        c0_measured = float('nan')
        if step is not None:
            start = time.perf_counter()
            for _ in range(max(1, repeats // 10)):
                for p in params:
                    step(p)
            t_step = (time.perf_counter() - start) / (max(1, repeats // 10) * len(params))
            c0_measured = t_step / t_response

        report = CostReport(self.C, t_full / t_response, self.C0, c0_measured)
        logger.info(f'Measured C={report.C_measured:.2f} (configured {self.C}), '
                    f'C0={report.C0_measured:.2f} (configured {self.C0})')
        return report


def response_cost_model():
    """
    :return: the configured cost constant C used for budget accounting
    """
    return CostModel().C
