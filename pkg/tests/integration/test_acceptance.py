"""End-to-end checks of the engine over ranges large enough to matter.

Copyright (c) 2024 collatzk maintainers

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""
import pytest

from collatzk.analysis import analysis_row, classify_cycle_entry, group_by_stopping_time, odd_count_conflicts
from collatzk.check import KIND_PARTNERS, run_cross_check
from collatzk.dynamics import fold_trajectory, three_adic_valuation, trajectory
from collatzk.enum import CheckFlags, TrajectoryStatus
from collatzk.models import Params, SweepConfig
from collatzk.store.jsonl import JsonLinesCheckpointStore
from collatzk.verifier import run_sweep


class StopSweep(Exception):
    """Raised from a progress callback to interrupt a sweep."""


@pytest.mark.parametrize("k", range(5))
def test_fold_agrees_with_iteration(k):
    """Every n up to 10^4 reaches 3^k, and the streaming fold agrees with the materialized trajectory."""
    params = Params(k=k)
    for n in range(1, 10_001):
        traj = trajectory(n, params)
        assert traj.status is TrajectoryStatus.REACHED_TARGET, n
        result = fold_trajectory(n, params)
        assert result.t == traj.stopping_time, n
        assert result.odd_count == sum(1 for term in traj.terms if term & 1), n


@pytest.mark.parametrize("k", range(5))
def test_closed_forms_agree_with_iteration(k):
    """Every term and every stopping time of n up to 10^4, recomputed from parity profiles."""
    result = run_cross_check(range(1, 10_001), Params(k=k), flags=CheckFlags.TERMS | CheckFlags.STOPPING_TIME)
    assert not result.has_failures(), result.str()


@pytest.mark.parametrize("k", range(3))
def test_same_time_partners(k):
    result = run_cross_check(range(1, 1001), Params(k=k), flags=CheckFlags.PARTNERS | CheckFlags.ALL_PAIRS)
    summary = result.summary()[KIND_PARTNERS]
    assert summary["fail"] == 0
    assert summary["pass"] > 800
    groups = group_by_stopping_time(range(1, 1001), Params(k=k))
    pairs = sum(len(members) * (len(members) - 1) // 2 for members in groups.values())
    assert sum(element.comparisons for element in result.get_children()) == 2 * pairs


@pytest.mark.parametrize("k,conflicts", [(0, 62), (1, 38), (2, 35)])
def test_same_time_and_pattern_do_not_fix_odd_count(k, conflicts):
    """Equal stopping time and entry pattern leave the number of odd terms open."""
    groups = group_by_stopping_time(range(1, 1001), Params(k=k))
    assert len(odd_count_conflicts(groups)) == conflicts


@pytest.mark.parametrize("k", range(5))
def test_valuation_level_never_drops(k):
    params = Params(k=k)
    for n in range(1, 10_001):
        levels = [min(three_adic_valuation(term), k) for term in trajectory(n, params).terms]
        assert all(a <= b for a, b in zip(levels, levels[1:])), n


@pytest.mark.parametrize("k", range(5))
def test_pure_powers(k):
    params = Params(k=k)
    for e in (0, 1, 2, 10, 64, 65, 1000, 50_000, 100_000):
        assert fold_trajectory(2**e * params.target, params).t == e


def test_sweep_parallel_and_resumed_runs_agree(tmp_path):
    settings = {"k": 0, "start": 1, "end": 200_000, "chunk_size": 10_000}
    serial = run_sweep(SweepConfig(parallelism=1, **settings))
    assert serial.verified == 200_000
    assert (serial.max_t, serial.max_t_n) == (382, 156_159)

    parallel = run_sweep(SweepConfig(parallelism=4, **settings))
    assert parallel.non_timing_dict() == serial.non_timing_dict()

    path = tmp_path / "sweep.jsonl"
    config = SweepConfig(parallelism=2, checkpoint_path=path, **settings)

    def interrupt(stage, processed, total):
        if processed >= 90_000:
            raise StopSweep(processed)

    with pytest.raises(StopSweep):
        run_sweep(config, callback=interrupt)
    done = JsonLinesCheckpointStore(path=path).latest()
    assert done is not None
    assert done.next_start == 90_001

    resumed = run_sweep(config)
    assert resumed.non_timing_dict() == serial.non_timing_dict()
    assert len(JsonLinesCheckpointStore(path=path)) == 20


@pytest.mark.parametrize("k", range(5))
def test_every_entry_matches_a_pattern(k):
    """No n up to 10^5 enters 3^k other than through 4*3^k or 3^(k-1)."""
    params = Params(k=k)
    for n in range(1, 100_001):
        assert classify_cycle_entry(n, params) is analysis_row(n, params).tag, n


@pytest.mark.parametrize("k", range(1, 4))
def test_multiples_of_target_follow_the_classical_map(k):
    params, classical = Params(k=k), Params(k=0)
    for u in range(1, 1001):
        terms = trajectory(params.target * u, params).terms
        assert terms == tuple(params.target * term for term in trajectory(u, classical).terms), u


@pytest.mark.parametrize("k", range(3))
def test_million_sweep(k):
    settings = {"k": k, "start": 1, "end": 1_000_000, "chunk_size": 25_000}
    parallel = run_sweep(SweepConfig(parallelism=4, **settings))
    assert parallel.completed
    assert (parallel.verified, parallel.failed) == (1_000_000, 0)
    assert parallel.throughput > 0
    if k == 0:
        assert (parallel.max_t, parallel.max_t_n) == (524, 837_799)

    serial = run_sweep(SweepConfig(parallelism=1, **settings))
    assert serial.non_timing_dict() == parallel.non_timing_dict()
