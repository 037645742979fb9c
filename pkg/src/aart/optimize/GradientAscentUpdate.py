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

from .UpdateProcedure import UpdateProcedure


class GradientAscentUpdate(UpdateProcedure):
    """
    First-order update: d = learning_rate * grad R, followed by the same backtracking line search as Truncated Newton.
    Ignores the Hessian.
    """

    def __init__(self, learning_rate=1e-5, c_armijo=1e-4, backtrack_factor=0.5, max_backtracking_iter=8,
                 max_step=None):
        super().__init__(c_armijo, backtrack_factor, max_backtracking_iter, max_step)
        self._learning_rate = learning_rate

    def directions(self, values, gradients, hessians, metrics=None):
        return self._learning_rate * np.asarray(gradients, dtype=float)
