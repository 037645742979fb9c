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

from .SimConfig import SimConfig
from .Event import Event, TrueTrack
from .SVeloSimulator import SVeloSimulator, generate_event, noise_hit_sampler, sample_physical_track, \
    sample_physical_params
from .ToyEventFactory import ToyEvent, ToyEventFactory, two_track_event, close_tracks_event, NOISE
from .EventCorpus import serialize_event, deserialize_event, write_corpus, read_corpus, corpus_format, \
    write_toy_corpus, read_toy_corpus, FORMAT_NAME, TOY_FORMAT_NAME
