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
Candidate files: one record per reconstructed event, in the same NDJSON layout as event corpora.

    {"format": "aart-candidates", "format_version": 1}
    {"accounting": {...}, "candidates": [[theta, phi, response, cluster_size, seed_id], ...], "format_version": 1,
     "method": "multistart", "n_seeds": 333, "seed": 7}
"""
import dataclasses
import json
import logging
from typing import Optional, Tuple

from aart.exceptions import CorpusFormatError
from aart.retina import Candidate
from aart.simulation.EventCorpus import FORMAT_VERSION, header_line, iter_records

FORMAT_NAME = 'aart-candidates'

logger = logging.getLogger('CandidateFile')


@dataclasses.dataclass(frozen=True)
class EventCandidates:
    seed: int
    method: str
    candidates: Tuple[Candidate, ...]
    accounting: dict
    n_seeds: Optional[int] = None
    model: str = 'svelo3d'

    def to_record(self):
        return {
            'format_version': FORMAT_VERSION,
            'seed': self.seed,
            'method': self.method,
            'model': self.model,
            'n_seeds': self.n_seeds,
            'candidates': [c.to_record() for c in self.candidates],
            'accounting': self.accounting,
        }


def write_candidates(path, results):
    """
    :param results: iterable of EventCandidates
    :return: the number of records written
    """
    count = 0
    with open(path, 'w', newline='\n') as f:
        f.write(header_line(FORMAT_NAME) + '\n')
        for result in results:
            f.write(json.dumps(result.to_record(), sort_keys=True) + '\n')
            count += 1
    logger.info(f'Wrote candidates of {count} events to {path}')
    return count


def read_candidates(path):
    """
    Streams the EventCandidates of a candidates file.

    :raises CorpusFormatError: on a malformed record
    """
    for line, record in iter_records(path, FORMAT_NAME):
        try:
            model = record.get('model', 'svelo3d')
            candidates = tuple(Candidate.from_record(r, toy=model == 'toy2d') for r in record['candidates'])
            yield EventCandidates(int(record['seed']), str(record['method']), candidates,
                                  dict(record.get('accounting') or {}), record.get('n_seeds'), model)
        except KeyError as e:
            raise CorpusFormatError('Missing field', line=line, field=e.args[0]) from e
        except (TypeError, ValueError) as e:
            raise CorpusFormatError(f'Invalid candidate record: {e}', line=line, field='candidates') from e
