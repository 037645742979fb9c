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
from typing import Optional

from aart.optimize import RetinaObjective
from aart.retina import CostModel, ResponseCounter, RetinaConfig

logger = logging.getLogger('Accounting')

# Parameter points and passes used when timing the cost constants
COST_POINTS = 8
COST_REPEATS = 20


@dataclasses.dataclass(frozen=True)
class RunAccounting:
    """
    The response-unit bill of one reconstruction run.

    :ivar units: total units billed
    :ivar grid_units: units billed for grid cells
    :ivar optimizer_units: units billed for optimizer steps (C0 each)
    :ivar evaluation_units: units billed for standalone response and response+gradient+Hessian calls
    :ivar allowed_units: alpha * n_grid, None when the run had no budget
    :ivar budget_exceeded: optimizer_units above allowed_units by more than the rounding of one seed
    """
    units: float
    grid_units: float
    optimizer_units: float
    evaluation_units: float
    allowed_units: Optional[float] = None
    budget_exceeded: bool = False

    def to_dict(self):
        return dataclasses.asdict(self)


def count_response_units(counter: ResponseCounter, budget=None):
    """
    Turns a counter into a RunAccounting, checking it against an optional Budget. A budgeted run is allowed to exceed
    alpha * n_grid by half a seed (q * C0 / 2), which is what rounding the seed count can add. Exceeding it is reported,
    not raised.
    """
    optimizer_units = counter.C0 * counter.optimizer_steps
    evaluation_units = counter.response_calls + counter.C * counter.full_calls

    allowed = None
    exceeded = False
    if budget is not None:
        allowed = budget.allowed_units
        exceeded = bool(optimizer_units > allowed + 0.5 * budget.q * budget.C0)
        if exceeded:
            logger.warning(f'Optimizer used {optimizer_units} units, budget allows {allowed}')

    return RunAccounting(counter.units, counter.grid_cells, optimizer_units, evaluation_units, allowed, exceeded)


def measure_costs(hits, retina_config: RetinaConfig, points, update=None, C0=None, repeats=COST_REPEATS):
    """
    Times response, response_full and, when `update` is given, one update step on the hits of a representative event,
    so the measured C and C0 can be reported next to the configured ones. Accounting keeps using the configured values.

    :param points: parameter points to time at
    :param update: UpdateProcedure whose step is timed for C0
    :param C0: configured C0 to report, defaults to that of the configured update method
    :return: CostReport
    """
    step = None
    if update is not None:
        objective = RetinaObjective(hits, retina_config)
        step = lambda p: update.step(objective, p)
    return CostModel(C0=C0).measure(hits, points, retina_config, repeats, step)
