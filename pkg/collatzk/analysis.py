"""Derived quantities over trajectories: stopping times, odd-term counts and entry patterns.

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

Two odd counts are in play. `odd_count` counts the odd terms of C^{t+1}, the terminal 3^k included, which is
what the stopping-time figures plot; the m of the closed forms counts the odd terms of C^t. They differ by one.
"""
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Dict, List, Mapping, NamedTuple, Optional, Set, Tuple

import structlog  # type: ignore

from collatzk.dynamics import default_budget, fold_trajectory, orbit, trajectory
from collatzk.enum import CycleTag
from collatzk.exceptions import InternalInvariantBroken
from collatzk.models import AnalysisRow, Params, Trajectory
from collatzk.utils import OrderedDefaultDict

FIGURE_WINDOWS: Tuple[Tuple[int, int], ...] = ((1, 100), (500, 600), (900, 1000))
"""Inclusive n windows of the published stopping-time figures."""

FIGURE_KS: Tuple[int, ...] = (0, 1, 2)
"""Values of k plotted in the published figures."""

logger = structlog.get_logger()


class GroupEntry(NamedTuple):
    """One member of an equal-stopping-time group."""

    n: int
    odd_count: int
    tag: CycleTag


def total_stopping_time(n: int, params: Params, budget: Optional[int] = None) -> Optional[int]:
    """Smallest t with g_k^t(n) = 3^k, or None if the budget ran out first (which is not a claim of infinity)."""
    return fold_trajectory(n, params, budget).t


def odd_term_count(n: int, params: Params, budget: Optional[int] = None) -> Optional[int]:
    """Odd terms in C^{t+1}, the terminal 3^k included; None if the budget ran out first."""
    return fold_trajectory(n, params, budget).odd_count


def classify_trajectory(traj: Trajectory, params: Params) -> CycleTag:
    """Entry pattern of a materialized trajectory, checked against its actual terms.

    Raises:
        InternalInvariantBroken: if the term two steps before 3^k is neither 4*3^k nor 3^(k-1).
    """
    if not traj.reached_target:
        return CycleTag.NONE
    t = traj.stopping_time
    assert t is not None  # nosec: guaranteed by Trajectory validation
    if t < 2:
        return CycleTag.SHORT

    target = params.target
    predecessor = traj.terms[t - 2]
    if predecessor == 4 * target:
        return CycleTag.STANDARD
    if params.k >= 1 and predecessor == target // 3:
        return CycleTag.SHORTCUT
    raise InternalInvariantBroken(
        f"n={traj.start} enters {target} through {predecessor}, {traj.terms[t - 1]}; neither entry pattern applies"
    )


def classify_cycle_entry(n: int, params: Params, budget: Optional[int] = None) -> CycleTag:
    """How the trajectory of n first arrives at 3^k.

    Standard if the term two steps earlier is 4*3^k, Shortcut if it is 3^(k-1), Short when t < 2 and None
    when 3^k is not reached within the budget.

    Raises:
        InternalInvariantBroken: if neither pattern matches; that would contradict the predecessor analysis.
    """
    return classify_trajectory(trajectory(n, params, budget), params)


def analysis_row(n: int, params: Params, budget: Optional[int] = None) -> AnalysisRow:
    """Stopping time, odd count and entry tag of n, from a single streaming pass."""
    result = fold_trajectory(n, params, budget)
    return AnalysisRow(n=n, k=params.k, t=result.t, odd_count=result.odd_count, tag=result.tag)


def figure_dataset(
    n_range: range, params: Params, budget: Optional[int] = None, jobs: int = 1
) -> List[AnalysisRow]:
    """One AnalysisRow per n, in range order.

    Rows whose trajectory exhausts the budget carry None values instead of aborting the dataset. With `jobs` > 1
    the rows are computed in worker processes; the order of the result does not depend on `jobs`.
    """
    if not n_range:
        raise ValueError("figure datasets need a non-empty range")

    compute = partial(analysis_row, params=params, budget=budget)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(compute, n_range, chunksize=max(1, len(n_range) // (4 * jobs))))
    else:
        rows = [compute(n) for n in n_range]

    for row in rows:
        if row.t is None:
            logger.warning("3^k not reached within budget", n=row.n, k=params.k, budget=budget)
    return rows


def group_rows(rows: List[AnalysisRow]) -> Dict[int, List[GroupEntry]]:
    """Group terminating rows by stopping time, keeping first-seen order of t and of n within a group."""
    groups: OrderedDefaultDict[int, List[GroupEntry]] = OrderedDefaultDict(list)
    for row in rows:
        if row.t is None or row.odd_count is None:
            continue
        groups[row.t].append(GroupEntry(row.n, row.odd_count, row.tag))
    return groups


def group_by_stopping_time(
    n_range: range, params: Params, budget: Optional[int] = None
) -> Dict[int, List[GroupEntry]]:
    """Map each stopping time t to the (n, odd_count, tag) entries of the terminating n in the range."""
    return group_rows(figure_dataset(n_range, params, budget))


def odd_count_conflicts(groups: Mapping[int, List[GroupEntry]]) -> Dict[Tuple[int, CycleTag], Set[int]]:
    """Cells (t, tag) whose members do not all share one odd count, with the odd counts seen there.

    An empty result means "same stopping time and same entry pattern implies same number of odd terms" holds for
    the grouped range.
    """
    cells: OrderedDefaultDict[Tuple[int, CycleTag], Set[int]] = OrderedDefaultDict(set)
    for t, entries in groups.items():
        for entry in entries:
            cells[(t, entry.tag)].add(entry.odd_count)
    return {cell: counts for cell, counts in cells.items() if len(counts) > 1}


def classical_stopping_time(n: int, params: Params, budget: Optional[int] = None) -> Optional[int]:
    """Least l >= 1 with g_k^l(n) < n.

    None when the trajectory reaches 3^k, or the budget ends, without ever dropping below n. Some n < 3^k
    never drop below themselves (5 under 3n+27), which is why total stopping time is the useful notion here.
    """
    terms = orbit(n, params)
    next(terms)
    limit = budget if budget is not None else default_budget(n)
    target = params.target
    for index, value in enumerate(terms, start=1):
        if value < n:
            return index
        if value == target or index >= limit:
            return None
    return None  # pragma: no cover

