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

import csv
import dataclasses
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Tuple

import numpy as np

from aart import config
from aart.exceptions import ExperimentError
from aart.optimize import MultiStartRetina, OptimizerConfig
from aart.retina import ResponseCounter
from aart.simulation import SimConfig, SVeloSimulator
from .Accounting import COST_POINTS, count_response_units, measure_costs
from .Budget import compute_budget, default_n_grid
from .MatchReport import MatchSummary
from .TrackMatcher import match_candidates

logger = logging.getLogger('ExperimentRunner')

RESULT_COLUMNS = ['multiplicity', 'alpha', 'n_seeds', 'efficiency', 'err', 'ghost_rate', 'wall_time',
                  'response_units', 'n_events', 'reconstructible', 'allowed_units', 'budget_exceeded']
FIGURE_COLUMNS = ['multiplicity', 'alpha', 'efficiency', 'err_low', 'err_high']

REFERENCE_TRACKS = 2000


def _eval_default(key):
    return dataclasses.field(default_factory=lambda: tuple(config['evaluation'][key]))


@dataclasses.dataclass(frozen=True)
class ExperimentSpec:
    """
    An efficiency-versus-multiplicity experiment.

    :ivar multiplicities: target numbers of reconstructible tracks per event
    :ivar events_per_point: events generated per multiplicity; the same events are used for every alpha
    :ivar alphas: budget fractions of the grid search given to the optimizer
    :ivar rng_seed: master seed, every event and seed draw derives from it
    :ivar sim_config: generator settings, n_tracks and rng_seed are set per event
    :ivar optimizer_config: search settings, n_seeds is set from the budget
    :ivar n_grid: grid cell count the budget is a fraction of, derived from epsilon and the phi window when None
    :ivar match_generated: treat multiplicities as generated rather than reconstructible track counts
    """
    multiplicities: Tuple[int, ...] = _eval_default('multiplicities')
    events_per_point: int = dataclasses.field(default_factory=lambda: config['evaluation']['events_per_point'])
    alphas: Tuple[float, ...] = _eval_default('alphas')
    rng_seed: int = 0
    epsilon: float = dataclasses.field(default_factory=lambda: config['evaluation']['epsilon'])
    sim_config: SimConfig = dataclasses.field(default_factory=SimConfig)
    optimizer_config: OptimizerConfig = dataclasses.field(default_factory=OptimizerConfig)
    n_grid: Optional[int] = None
    strict_params: bool = False
    match_generated: bool = False
    record_wall_time: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'multiplicities', tuple(int(m) for m in self.multiplicities))
        object.__setattr__(self, 'alphas', tuple(float(a) for a in self.alphas))
        if self.events_per_point < 1:
            raise ValueError('events_per_point must be at least 1, got {}'.format(self.events_per_point))
        if any(m < 1 for m in self.multiplicities) or any(not a > 0 for a in self.alphas):
            raise ValueError('Multiplicities and alphas must be positive')

    @property
    def grid_cells(self):
        if self.n_grid is not None:
            return self.n_grid
        return default_n_grid(self.epsilon, self.sim_config.phi_window)


@dataclasses.dataclass(frozen=True)
class EventOutcome:
    seed: int
    n_truths: int
    n_matched: int
    n_candidates: int
    n_ghosts: int
    units: float
    budget_exceeded: bool
    wall_time: float


def event_seed(rng_seed, multiplicity, index):
    """
    The generator seed of event `index` at `multiplicity`, a 32-bit integer derived from the master seed.
    """
    return int(np.random.SeedSequence([rng_seed, multiplicity, index]).generate_state(1)[0])


def reconstructible_fraction(sim_config: SimConfig, rng_seed=0):
    """
    The fraction of generated tracks that end up reconstructible, measured on one large noise-free event.
    """
    reference = dataclasses.replace(sim_config, n_tracks=REFERENCE_TRACKS, noise_mean=0.0, rng_seed=rng_seed)
    event = SVeloSimulator(reference).generate_event()
    return max(len(event.true_tracks), 1) / REFERENCE_TRACKS


def reconstruction_rng(master_seed, seed):
    """
    The generator driving the seed draw when reconstructing event `seed` of a run with master seed `master_seed`.
    """
    return np.random.default_rng([master_seed, seed])


def run_event(sim_config: SimConfig, optimizer_config: OptimizerConfig, budget, epsilon, strict_params, master_seed=0):
    """
    Generates, reconstructs and matches one event. Module-level so that it can run in worker processes.
    """
    start = time.perf_counter()
    event = SVeloSimulator(sim_config).generate_event()

    counter = ResponseCounter(C0=optimizer_config.cost_C0)
    rng = reconstruction_rng(master_seed, sim_config.rng_seed)
    result = MultiStartRetina(optimizer_config).reconstruct(event.coordinates, rng, counter)
    report = match_candidates(result.candidates, event.true_tracks, epsilon, strict_params)
    accounting = count_response_units(counter, budget)

    return EventOutcome(sim_config.rng_seed, report.n_truths, report.n_matched, report.n_candidates,
                        len(report.ghosts), accounting.units, accounting.budget_exceeded,
                        time.perf_counter() - start)


class ExperimentRunner:
    def __init__(self, spec: ExperimentSpec, jobs=1):
        """
        Runs an ExperimentSpec, spreading events over `jobs` worker processes. Rows come out in (multiplicity, alpha)
        order whatever the number of workers.
        """
        self._spec = spec
        self._jobs = jobs

    @property
    def spec(self):
        return self._spec

    def cost_report(self):
        """
        Measures C and C0 on one event of the largest multiplicity, for reporting next to the configured constants.

        :return: CostReport
        """
        spec = self._spec
        sim = dataclasses.replace(spec.sim_config, n_tracks=max(spec.multiplicities), rng_seed=spec.rng_seed)
        event = SVeloSimulator(sim).generate_event()
        opt = spec.optimizer_config
        points = opt.seed_prior().draw(COST_POINTS, np.random.default_rng(spec.rng_seed))
        return measure_costs(event.coordinates, opt.final_retina_config, points, opt.make_update(), opt.cost_C0)

    def _tasks(self):
        spec = self._spec
        fraction = 1.0 if spec.match_generated else reconstructible_fraction(spec.sim_config, spec.rng_seed)
        logger.info(f'Reconstructible fraction {fraction:.3f}, grid cells {spec.grid_cells}')

        tasks = []
        for multiplicity in spec.multiplicities:
            n_tracks = max(multiplicity, int(round(multiplicity / fraction)))
            for alpha in spec.alphas:
                budget = compute_budget(alpha, spec.grid_cells, spec.optimizer_config.q, spec.optimizer_config.cost_C0)
                opt = spec.optimizer_config.with_n_seeds(budget.n_seeds)
                if opt.phi_window is None and spec.sim_config.phi_window is not None:
                    opt = dataclasses.replace(opt, phi_window=spec.sim_config.phi_window)
                for index in range(spec.events_per_point):
                    sim = dataclasses.replace(spec.sim_config, n_tracks=n_tracks,
                                              rng_seed=event_seed(spec.rng_seed, multiplicity, index))
                    tasks.append(((multiplicity, alpha), budget,
                                  (sim, opt, budget, spec.epsilon, spec.strict_params, spec.rng_seed)))
        return tasks

    def _outcomes(self, tasks):
        if self._jobs <= 1:
            for _, _, args in tasks:
                try:
                    yield run_event(*args)
                except Exception as e:
                    raise ExperimentError(f'Event failed: {e}', args[0].rng_seed) from e
            return

        with ProcessPoolExecutor(max_workers=self._jobs) as executor:
            futures = [executor.submit(run_event, *args) for _, _, args in tasks]
            for (_, _, args), future in zip(tasks, futures):
                try:
                    yield future.result()
                except Exception as e:
                    raise ExperimentError(f'Event failed: {e}', args[0].rng_seed) from e

    def run(self):
        """
        :return: list of result rows (dicts keyed by RESULT_COLUMNS)
        """
        tasks = self._tasks()
        outcomes = {}
        for (key, budget, _), outcome in zip(tasks, self._outcomes(tasks)):
            outcomes.setdefault(key, (budget, []))[1].append(outcome)

        rows = []
        for (multiplicity, alpha), (budget, events) in outcomes.items():
            summary = MatchSummary(len(events), sum(e.n_truths for e in events), sum(e.n_matched for e in events),
                                   sum(e.n_candidates for e in events), sum(e.n_ghosts for e in events))
            wall_time = sum(e.wall_time for e in events)
            rows.append({
                'multiplicity': multiplicity,
                'alpha': alpha,
                'n_seeds': budget.n_seeds,
                'efficiency': summary.efficiency,
                'err': summary.efficiency_error,
                'ghost_rate': summary.ghost_rate,
                'wall_time': round(wall_time, 3) if self._spec.record_wall_time else '',
                'response_units': sum(e.units for e in events) / len(events),
                'n_events': len(events),
                'reconstructible': summary.mean_truths,
                'allowed_units': budget.allowed_units,
                'budget_exceeded': any(e.budget_exceeded for e in events),
            })
            logger.info(f'multiplicity={multiplicity} alpha={alpha:.3f} n_seeds={budget.n_seeds}: '
                        f'efficiency {summary.efficiency:.4f} +- {summary.efficiency_error:.4f}')
        return rows


def run_experiment(multiplicities=None, events_per_point=None, alphas=None, rng_seed=0, jobs=1, **kwargs):
    """
    Runs an efficiency-versus-multiplicity experiment; unset arguments come from config['evaluation'], further
    ExperimentSpec fields can be passed as keywords.

    :return: list of result rows
    """
    values = dict(kwargs, rng_seed=rng_seed)
    if multiplicities is not None:
        values['multiplicities'] = multiplicities
    if events_per_point is not None:
        values['events_per_point'] = events_per_point
    if alphas is not None:
        values['alphas'] = alphas
    return ExperimentRunner(ExperimentSpec(**values), jobs).run()


def write_results_csv(path, rows):
    with open(path, 'w', newline='') as f:
        writer = csv.DictWriter(f, fieldnames=RESULT_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _format(row[k]) for k in RESULT_COLUMNS})


def figure_rows(rows):
    """
    Efficiency curve points with error bars clipped to [0, 1].
    """
    return [{'multiplicity': row['multiplicity'],
             'alpha': row['alpha'],
             'efficiency': row['efficiency'],
             'err_low': min(row['err'], row['efficiency']),
             'err_high': min(row['err'], 1.0 - row['efficiency'])} for row in rows]


def write_figure_csv(path, rows):
    with open(path, 'w', newline='') as f:
        writer = csv.DictWriter(f, fieldnames=FIGURE_COLUMNS)
        writer.writeheader()
        for row in figure_rows(rows):
            writer.writerow({k: _format(row[k]) for k in FIGURE_COLUMNS})


def _format(value):
    if isinstance(value, float):
        return repr(value) if math.isfinite(value) else ''
    return value
