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

from .MatchReport import MatchReport, MatchSummary, binomial_error
from .TrackMatcher import match_candidates
from .Budget import Budget, compute_budget, default_n_grid
from .Accounting import RunAccounting, count_response_units, measure_costs, COST_POINTS
from .CandidateFile import EventCandidates, write_candidates, read_candidates
from .ExperimentRunner import ExperimentSpec, ExperimentRunner, EventOutcome, run_experiment, run_event, \
    event_seed, reconstruction_rng, reconstructible_fraction, write_results_csv, write_figure_csv, figure_rows, \
    RESULT_COLUMNS
from .Figures import ResponseMap, toy_response_map, response_map_fixture, FIXTURES, RESPONSE_MAP_FIXTURES, \
    EFFICIENCY_FIXTURES, TOY_AXES
