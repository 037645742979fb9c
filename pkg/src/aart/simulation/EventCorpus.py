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
Event corpus files: newline-delimited JSON with a versioned header on the first line and one event per following line.

    {"format": "aart-event-corpus", "format_version": 1}
    {"config": {...}, "format_version": 1, "hits": [[x, y, z, layer, truth], ...], "seed": 7,
     "true_tracks": [[id, theta, phi, n_hits], ...]}

truth is the producing track id or null for noise. Records are written with sorted keys and repr floats, so the same
events always serialize to the same bytes, and floats read back bit-exact.

Toy corpora use the same layout with the header format "aart-toy-corpus" and records

    {"format_version": 1, "hits": [[x, y, truth], ...], "lines": [[angle, offset], ...], "plane_y": [...], "seed": 0}

where truth is the producing line index or -1 for noise.
"""
import json
import logging

import ijson
import numpy as np

from aart.exceptions import CorpusFormatError
from aart.geometry import Hit, Line2D, TrackParams
from .Event import Event, TrueTrack
from .SimConfig import SimConfig
from .ToyEventFactory import ToyEvent

FORMAT_NAME = 'aart-event-corpus'
TOY_FORMAT_NAME = 'aart-toy-corpus'
FORMAT_VERSION = 1

logger = logging.getLogger('EventCorpus')


def header_line(format_name=FORMAT_NAME):
    return json.dumps({'format': format_name, 'format_version': FORMAT_VERSION}, sort_keys=True)


def event_to_record(event: Event):
    return {
        'format_version': FORMAT_VERSION,
        'seed': event.seed,
        'config': event.config_snapshot.to_dict(),
        'hits': [[float(h.x), float(h.y), float(h.z), int(h.layer_index), h.truth] for h in event.hits],
        'true_tracks': [[int(t.track_id), float(t.params.theta), float(t.params.phi), int(t.n_hits)]
                        for t in event.true_tracks],
    }


def serialize_event(event: Event):
    """
    :return: the event as a single JSON line (without the trailing newline)
    """
    return json.dumps(event_to_record(event), sort_keys=True)


def _require(record, field, line):
    if not isinstance(record, dict) or field not in record:
        raise CorpusFormatError('Missing field', line=line, field=field)
    return record[field]


def record_to_event(record, line=None):
    """
    Rebuilds an Event from a parsed record.

    :param line: line number used in error messages
    :raises CorpusFormatError: on a missing field, an unsupported version or a malformed value
    """
    version = _require(record, 'format_version', line)
    if version != FORMAT_VERSION:
        raise CorpusFormatError(f'Unsupported format version {version}', line=line, field='format_version')

    try:
        sim_config = SimConfig.from_dict(_require(record, 'config', line))
    except (KeyError, TypeError, ValueError) as e:
        raise CorpusFormatError(f'Invalid configuration: {e}', line=line, field='config') from e

    seed = _require(record, 'seed', line)
    if seed != sim_config.rng_seed:
        raise CorpusFormatError(f'Seed {seed} does not match configuration seed {sim_config.rng_seed}',
                                line=line, field='seed')

    try:
        hits = tuple(Hit(float(x), float(y), float(z), int(layer), None if truth is None else int(truth))
                     for x, y, z, layer, truth in _require(record, 'hits', line))
    except (TypeError, ValueError) as e:
        raise CorpusFormatError(f'Invalid hit: {e}', line=line, field='hits') from e

    try:
        true_tracks = tuple(TrueTrack(int(i), TrackParams(float(theta), float(phi)), int(n))
                            for i, theta, phi, n in _require(record, 'true_tracks', line))
    except (TypeError, ValueError) as e:
        raise CorpusFormatError(f'Invalid true track: {e}', line=line, field='true_tracks') from e

    track_ids = {t.track_id for t in true_tracks}
    for h in hits:
        if h.truth is not None and h.truth not in track_ids:
            raise CorpusFormatError(f'Hit refers to unknown track {h.truth}', line=line, field='hits')

    return Event(hits, true_tracks, sim_config)


def deserialize_event(text, line=None):
    try:
        record = json.loads(text)
    except json.JSONDecodeError as e:
        raise CorpusFormatError(f'Malformed JSON: {e.msg}', line=line) from e
    return record_to_event(record, line)


def write_corpus(path, events):
    """
    Writes events to `path` as a corpus file.

    :return: the number of events written
    """
    count = 0
    with open(path, 'w', newline='\n') as f:
        f.write(header_line() + '\n')
        for event in events:
            f.write(serialize_event(event) + '\n')
            count += 1
    logger.info(f'Wrote {count} events to {path}')
    return count


def iter_records(path, format_name=FORMAT_NAME):
    """
    Streams the records of an NDJSON file written by AART, checking the header. Records are numbered by line, which
    holds because every record occupies exactly one line.

    :return: iterator of (line_number, record)
    """
    parsed = 0
    with open(path, 'rb') as f:
        records = ijson.items(f, '', multiple_values=True, use_float=True)
        try:
            header = next(records, None)
            if header is None:
                raise CorpusFormatError('Empty file, expected a header', line=1)
            if not isinstance(header, dict) or header.get('format') != format_name:
                raise CorpusFormatError(f'Not a {format_name} file', line=1, field='format')
            if header.get('format_version') != FORMAT_VERSION:
                raise CorpusFormatError(f'Unsupported format version {header.get("format_version")}',
                                        line=1, field='format_version')

            parsed = 1
            for record in records:
                parsed += 1
                yield parsed, record
        except ijson.JSONError as e:
            raise CorpusFormatError(f'Malformed JSON: {e}', line=parsed + 1) from e


def read_corpus(path):
    """
    Streams the events of a corpus file.

    :raises CorpusFormatError: with the line number and field of the first malformed record
    """
    for line, record in iter_records(path):
        yield record_to_event(record, line)


def corpus_format(path):
    """
    :return: the format name in the header of an AART NDJSON file
    :raises CorpusFormatError: if the first line is not a header
    """
    with open(path, 'r') as f:
        first = f.readline()
    try:
        header = json.loads(first)
    except json.JSONDecodeError as e:
        raise CorpusFormatError(f'Malformed header: {e.msg}', line=1) from e
    if not isinstance(header, dict) or 'format' not in header:
        raise CorpusFormatError('Missing header', line=1, field='format')
    return header['format']


def toy_event_to_record(event: ToyEvent):
    return {
        'format_version': FORMAT_VERSION,
        'seed': event.seed,
        'plane_y': list(event.plane_y),
        'lines': [[line.angle, line.offset] for line in event.lines],
        'hits': [[float(x), float(y), int(t)] for (x, y), t in zip(event.hits, event.truth)],
    }


def record_to_toy_event(record, line=None):
    version = _require(record, 'format_version', line)
    if version != FORMAT_VERSION:
        raise CorpusFormatError(f'Unsupported format version {version}', line=line, field='format_version')
    try:
        lines = tuple(Line2D(float(a), float(b)) for a, b in _require(record, 'lines', line))
    except (TypeError, ValueError) as e:
        raise CorpusFormatError(f'Invalid line: {e}', line=line, field='lines') from e
    try:
        rows = _require(record, 'hits', line)
        hits = np.array([[float(x), float(y)] for x, y, _ in rows]).reshape(-1, 2)
        truth = np.array([int(t) for _, _, t in rows], dtype=int)
    except (TypeError, ValueError) as e:
        raise CorpusFormatError(f'Invalid hit: {e}', line=line, field='hits') from e
    return ToyEvent(hits, truth, lines, tuple(float(y) for y in _require(record, 'plane_y', line)),
                    int(_require(record, 'seed', line)))


def write_toy_corpus(path, events):
    count = 0
    with open(path, 'w', newline='\n') as f:
        f.write(header_line(TOY_FORMAT_NAME) + '\n')
        for event in events:
            f.write(json.dumps(toy_event_to_record(event), sort_keys=True) + '\n')
            count += 1
    logger.info(f'Wrote {count} toy events to {path}')
    return count


def read_toy_corpus(path):
    for line, record in iter_records(path, TOY_FORMAT_NAME):
        yield record_to_toy_event(record, line)
