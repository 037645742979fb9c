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

from .ParamGrid import ParamGrid, grid_cell_count_for_resolution
from .ResponseGrid import ResponseGrid
from .GridRetina import GridRetina, evaluate_grid, find_local_maxima, relative_maxima, activated_clusters, \
    relative_clusters, estimate_track, estimate_line, estimate_peak
