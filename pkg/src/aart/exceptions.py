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
Errors raised by AART. Every error is a ValueError so callers that only care about "bad input" can catch that.
"""


class InvalidTrackError(ValueError):
    """A direction vector or track parameter set is outside the valid domain."""
    pass


class NoIntersectionError(ValueError):
    """The track does not travel forward, so it never reaches a positive-z detector layer."""
    pass


class ConfigError(ValueError):
    pass


class CorpusFormatError(ValueError):
    def __init__(self, message, line=None, field=None):
        """
        Raised when an event corpus or candidates file cannot be parsed.

        :param message: description of the problem
        :param line: 1-based line number of the offending record, if known
        :param field: name of the offending field, if known
        """
        context = []
        if line is not None:
            context.append(f'line {line}')
        if field is not None:
            context.append(f'field {field!r}')
        super().__init__(f'{message} ({", ".join(context)})' if context else message)
        self.line = line
        self.field = field


class IntegrityError(ValueError):
    """Two files that must describe the same events do not."""
    pass


class ExperimentError(RuntimeError):
    def __init__(self, message, seed):
        super().__init__(f'{message} (event seed {seed})')
        self.seed = seed
