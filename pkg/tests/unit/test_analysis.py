"""Unit tests for stopping times, odd counts, entry patterns and grouping.

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

from collatzk.analysis import (
    FIGURE_KS,
    FIGURE_WINDOWS,
    GroupEntry,
    analysis_row,
    classical_stopping_time,
    classify_cycle_entry,
    classify_trajectory,
    figure_dataset,
    group_by_stopping_time,
    group_rows,
    odd_count_conflicts,
    odd_term_count,
    total_stopping_time,
)
from collatzk.dynamics import trajectory
from collatzk.enum import CycleTag, TrajectoryStatus
from collatzk.exceptions import InternalInvariantBroken
from collatzk.models import AnalysisRow, Params, Trajectory

K0_STOPPING_TIMES = [0, 1, 7, 2, 5, 8, 16, 3, 19, 6, 14, 9, 9, 17, 17, 4, 12, 20, 20, 7]

K3_ROWS = {
    1: (8, 4, CycleTag.SHORTCUT),
    2: (9, 4, CycleTag.SHORTCUT),
    3: (5, 3, CycleTag.SHORTCUT),
    4: (10, 4, CycleTag.SHORTCUT),
    5: (13, 6, CycleTag.STANDARD),
    6: (6, 3, CycleTag.SHORTCUT),
    7: (10, 4, CycleTag.SHORTCUT),
    8: (11, 4, CycleTag.SHORTCUT),
    9: (2, 2, CycleTag.SHORTCUT),
    10: (14, 6, CycleTag.STANDARD),
    11: (9, 4, CycleTag.SHORTCUT),
    12: (7, 3, CycleTag.SHORTCUT),
    13: (8, 4, CycleTag.STANDARD),
    14: (11, 4, CycleTag.SHORTCUT),
    15: (6, 3, CycleTag.SHORTCUT),
    16: (12, 4, CycleTag.SHORTCUT),
    17: (9, 4, CycleTag.SHORTCUT),
}


def test_figure_constants():
    assert FIGURE_WINDOWS == ((1, 100), (500, 600), (900, 1000))
    assert FIGURE_KS == (0, 1, 2)


def test_total_stopping_time_classical(k0):
    assert [total_stopping_time(n, k0) for n in range(1, 21)] == K0_STOPPING_TIMES


def test_total_stopping_time_budget(k0):
    assert total_stopping_time(27, k0, budget=100) is None
    assert total_stopping_time(27, k0) == 111


def test_odd_term_count(k0, k2):
    assert odd_term_count(1, k0) == 1
    assert odd_term_count(3, k0) == 3
    assert odd_term_count(31, k2) == 9
    assert odd_term_count(27, k0, budget=3) is None


@pytest.mark.parametrize("n,expected", sorted(K3_ROWS.items()))
def test_analysis_row_k3(n, expected):
    row = analysis_row(n, Params(k=3))
    assert (row.t, row.odd_count, row.tag) == expected
    assert row.k == 3


def test_analysis_row_unresolved(k0):
    row = analysis_row(27, k0, budget=10)
    assert (row.t, row.odd_count, row.tag) == (None, None, CycleTag.NONE)


def test_classify_cycle_entry(k0, k2):
    assert classify_cycle_entry(3, k0) is CycleTag.STANDARD
    assert classify_cycle_entry(1, k0) is CycleTag.SHORT
    assert classify_cycle_entry(2, k0) is CycleTag.SHORT
    assert classify_cycle_entry(32, k2) is CycleTag.SHORTCUT
    assert classify_cycle_entry(36, k2) is CycleTag.STANDARD
    assert classify_cycle_entry(27, k0, budget=10) is CycleTag.NONE


def test_classify_agrees_with_fold(make_params):
    for k in range(5):
        params = make_params(k)
        for n in range(1, 200):
            assert classify_cycle_entry(n, params) is analysis_row(n, params).tag, (n, k)


def test_classical_map_never_takes_the_shortcut(k0):
    assert all(analysis_row(n, k0).tag is not CycleTag.SHORTCUT for n in range(1, 500))


def test_classify_broken_invariant():
    """A hand-built trajectory entering 9 through neither pattern is refused."""
    params = Params(k=2)
    fake = Trajectory(start=5, k=2, terms=(5, 7, 9), status=TrajectoryStatus.REACHED_TARGET, stopping_time=2)
    with pytest.raises(InternalInvariantBroken):
        classify_trajectory(fake, params)


def test_figure_dataset(k2):
    rows = figure_dataset(range(30, 41), k2)
    assert [row.n for row in rows] == list(range(30, 41))
    assert (rows[1].t, rows[1].odd_count, rows[1].tag) == (23, 9, CycleTag.STANDARD)
    assert (rows[6].t, rows[6].odd_count, rows[6].tag) == (2, 1, CycleTag.STANDARD)


def test_figure_dataset_empty(k0):
    with pytest.raises(ValueError):
        figure_dataset(range(5, 5), k0)


def test_figure_dataset_keeps_unresolved_rows(k0, log):
    rows = figure_dataset(range(25, 30), k0, budget=50)
    assert len(rows) == 5
    unresolved = [row.n for row in rows if row.t is None]
    assert 27 in unresolved
    assert log.has("3^k not reached within budget", level="warning", n=27)


def test_figure_dataset_parallel_matches_serial(k0):
    assert figure_dataset(range(1, 120), k0, jobs=2) == figure_dataset(range(1, 120), k0)


def test_group_by_stopping_time(k2):
    groups = group_by_stopping_time(range(30, 41), k2)
    assert [entry.n for entry in groups[10]] == [30, 32, 33, 35]
    assert groups[13] == [
        GroupEntry(34, 5, CycleTag.STANDARD),
        GroupEntry(37, 5, CycleTag.STANDARD),
        GroupEntry(38, 5, CycleTag.STANDARD),
    ]
    assert list(groups)[:3] == [10, 23, 13]


def test_group_rows_skips_unresolved():
    rows = [
        AnalysisRow(n=27, k=0, t=None, odd_count=None, tag=CycleTag.NONE),
        AnalysisRow(n=4, k=0, t=2, odd_count=1, tag=CycleTag.STANDARD),
    ]
    assert dict(group_rows(rows)) == {2: [GroupEntry(4, 1, CycleTag.STANDARD)]}


def test_odd_count_conflicts_classical(k0):
    """3, 20, 21 and 128 all take 7 steps in the standard pattern, with three different odd counts."""
    conflicts = odd_count_conflicts(group_by_stopping_time(range(1, 129), k0))
    assert conflicts[(7, CycleTag.STANDARD)] == {1, 2, 3}


def test_odd_count_conflicts_shortcut(k2):
    conflicts = odd_count_conflicts(group_by_stopping_time(range(1, 25), k2))
    assert conflicts[(5, CycleTag.SHORTCUT)] == {2, 3}


def test_odd_count_conflicts_consistent_groups(k2):
    groups = {13: [GroupEntry(34, 5, CycleTag.STANDARD), GroupEntry(37, 5, CycleTag.STANDARD)]}
    assert odd_count_conflicts(groups) == {}


def test_classical_stopping_time(k0, k2):
    assert classical_stopping_time(3, k0) == 6
    assert classical_stopping_time(7, k0) == 11
    assert classical_stopping_time(2, k2) == 1
    assert classical_stopping_time(5, Params(k=3)) is None
    assert classical_stopping_time(27, k0, budget=5) is None


def test_odd_term_count_examples(k0, k2):
    assert odd_term_count(33, k2) == 4
    assert odd_term_count(1, k2) == 3
    assert odd_term_count(16, k0) == 1


def test_twice_target_is_short(make_params):
    for k in range(5):
        params = make_params(k)
        assert classify_cycle_entry(2 * params.target, params) is CycleTag.SHORT
        assert total_stopping_time(2 * params.target, params) == 1


def test_figure_dataset_examples(k2):
    (row,) = figure_dataset(range(9, 10), k2)
    assert (row.t, row.odd_count, row.tag) == (0, 1, CycleTag.SHORT)
    rows = figure_dataset(range(1, 3), k2)
    assert [(row.n, row.t, row.odd_count, row.tag) for row in rows] == [
        (1, 5, 3, CycleTag.SHORTCUT),
        (2, 6, 3, CycleTag.SHORTCUT),
    ]
