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

from .DistanceModel import DistanceModel
from .SVeloDistance import SVeloDistance
from .Toy2DDistance import Toy2DDistance
from .RetinaConfig import RetinaConfig, DistanceModelKind
from .ResponseEval import ResponseEval
from .ResponseCounter import ResponseCounter
from .RetinaResponse import response, response_full, response_many, response_full_many, as_param_vector
from .CostModel import CostModel, CostReport, response_cost_model
from .Candidate import Candidate, NO_SEED
