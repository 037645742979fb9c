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
import hashlib
import json
import logging
import os
from typing import Dict, List, Optional

from aart.exceptions import IntegrityError

logger = logging.getLogger('RunManifest')

MANIFEST_SUFFIX = '.manifest.json'


def file_digest(path):
    """
    :return: hex sha256 of the file's bytes
    """
    digest = hashlib.sha256()
    with open(path, 'rb') as f:
        for block in iter(lambda: f.read(1 << 20), b''):
            digest.update(block)
    return digest.hexdigest()


def manifest_path(output_path):
    return output_path + MANIFEST_SUFFIX


@dataclasses.dataclass(frozen=True)
class RunManifest:
    """
    Everything needed to reproduce one CLI run: the exact arguments, the resolved configuration, the seeds, and the
    sha256 of every input and output file. It contains no timestamps, so rerunning a run writes the same manifest.

    :ivar subcommand: the CLI subcommand
    :ivar argv: the command line after the program name
    :ivar config: the resolved configuration dict the run used
    :ivar seeds: every rng seed the run consumed
    :ivar version: AART version that produced the outputs
    :ivar inputs: path -> sha256
    :ivar outputs: path -> sha256
    :ivar accounting: response-unit totals of the run, if it reconstructed anything
    """
    subcommand: str
    argv: List[str]
    config: dict
    seeds: List[int]
    version: str
    inputs: Dict[str, str] = dataclasses.field(default_factory=dict)
    outputs: Dict[str, str] = dataclasses.field(default_factory=dict)
    accounting: Optional[dict] = None

    @classmethod
    def for_files(cls, subcommand, argv, config, seeds, version, inputs=(), outputs=(), accounting=None):
        """
        Builds a manifest, hashing the given input and output files.
        """
        return cls(subcommand, list(argv), config, [int(s) for s in seeds], version,
                   {p: file_digest(p) for p in inputs}, {p: file_digest(p) for p in outputs}, accounting)

    def to_json(self):
        return json.dumps(dataclasses.asdict(self), sort_keys=True, indent=2) + '\n'

    def write(self, path):
        with open(path, 'w', newline='\n') as f:
            f.write(self.to_json())
        logger.info(f'Wrote manifest {path}')

    @classmethod
    def load(cls, path):
        with open(path, 'r') as f:
            values = json.load(f)
        try:
            return cls(**values)
        except TypeError as e:
            raise IntegrityError('{} is not a run manifest: {}'.format(path, e)) from e

    def verify_inputs(self):
        """
        :raises IntegrityError: if an input file is missing or changed since the run
        """
        for path, digest in self.inputs.items():
            if not os.path.exists(path):
                raise IntegrityError('Input {} of the manifest is missing'.format(path))
            if file_digest(path) != digest:
                raise IntegrityError('Input {} changed since the run'.format(path))

    def verify_outputs(self):
        """
        :return: list of output paths whose current contents differ from the recorded digest
        """
        return [path for path, digest in self.outputs.items()
                if not os.path.exists(path) or file_digest(path) != digest]
