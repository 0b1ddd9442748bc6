# Copyright 2026 The Selfassess Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Node self-assessment of admission requests (Python bindings)."""

import json

from ._core import (
    ConfigError,
    ContractViolation,
    UnknownResourceType,
    assess_current,
    assess_history,
    assess_proximity,
    combine,
    effort_grade,
    grade_priority,
    needed_time_ms,
    transmission_time_ms,
)
from . import _core


def assess(node, request, proximity=None, seed=0):
    """Self-assess ``request`` (dict) on ``node`` (dict); returns the breakdown dict."""
    prox = json.dumps(proximity) if proximity is not None else ""
    return json.loads(_core.assess_json(json.dumps(node), json.dumps(request), prox, seed))


def simulate(topology, request, seed=0):
    """Runs a negotiation; returns the list of trace events plus the summary line."""
    text = _core.simulate_json(json.dumps(topology), json.dumps(request), seed)
    return [json.loads(line) for line in text.splitlines() if line]


def tas_example(fixture):
    return _core.tas_example_json(json.dumps(fixture))


__all__ = [
    "ConfigError",
    "ContractViolation",
    "UnknownResourceType",
    "assess",
    "assess_current",
    "assess_history",
    "assess_proximity",
    "combine",
    "effort_grade",
    "grade_priority",
    "needed_time_ms",
    "simulate",
    "tas_example",
    "transmission_time_ms",
]
