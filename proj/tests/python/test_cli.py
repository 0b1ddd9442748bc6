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

import csv
import io
import json
import os
import subprocess

CLI = os.environ["SELFASSESS_CLI"]
DATA = os.environ["SELFASSESS_DATA_DIR"]


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True, timeout=120)


def test_assess_prints_breakdown():
    out = run("assess", "--node", f"{DATA}/node_8core.json", "--request", f"{DATA}/request_cpu4.json")
    assert out.returncode == 0, out.stderr
    b = json.loads(out.stdout)
    assert b["bare_metal"] == 1
    assert b["current_resources"] == 0.5
    assert b["priority_grade"] == 0.875
    assert 0.0 <= b["suitability"] <= 1.0


def test_simulate_is_reproducible():
    args = ("simulate", "--topology", f"{DATA}/topology_diamond.json",
            "--request", f"{DATA}/request_diamond.json", "--seed", "7")
    first, second = run(*args), run(*args)
    assert first.returncode == 0, first.stderr
    assert first.stdout == second.stdout
    summary = json.loads(first.stdout.splitlines()[-1])
    assert summary["result"] == "reached"
    assert summary["path"][0] == "T" and summary["path"][-1] == "L"


def test_single_req_csv():
    out = run("experiment", "single-req", "--runs", "2", "--seed", "3")
    assert out.returncode == 0, out.stderr
    rows = list(csv.DictReader(io.StringIO(out.stdout)))
    assert len(rows) == 4 * 10 * 8 * 2
    assert all(0.0 <= float(r["suitability"]) <= 1.0 for r in rows)


def test_tas_example_exit_code_reflects_checks():
    out = run("experiment", "tas-example", "--fixture", f"{DATA}/tas_example.json")
    assert out.returncode in (0, 2)
    assert "t_tx_ms" in out.stdout
    assert (out.returncode == 0) == ("FAIL" not in out.stdout)


def test_bad_config_is_an_error():
    out = run("experiment", "tas-example")
    assert out.returncode == 1
    assert "fixture" in out.stderr
