"""The map g_k, its trajectories, parity profiles and cycle detection.

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
from typing import Iterator, List, NamedTuple, Optional, Sequence

from collatzk.backend import HAVE_GMPY2, WORD_LIMIT, promote, remove_factor
from collatzk.enum import CycleTag, TrajectoryStatus
from collatzk.exceptions import ProfileLengthError, ZeroInputError
from collatzk.models import CycleReport, OddEvenProfile, Params, Trajectory


class FoldResult(NamedTuple):
    """Summary of a trajectory computed without keeping its terms."""

    status: TrajectoryStatus
    steps: int
    """Applications of g_k performed; the total stopping time when status is REACHED_TARGET."""
    odd_terms: int
    """Odd terms among the terms before the last one visited, i.e. m of the pre-target prefix."""
    peak_bits: int
    """Largest bit length of any term visited, the start included."""
    tag: CycleTag

    @property
    def t(self) -> Optional[int]:
        """Total stopping time, or None if 3^k was not reached."""
        return self.steps if self.status is TrajectoryStatus.REACHED_TARGET else None

    @property
    def odd_count(self) -> Optional[int]:
        """Odd terms in C^{t+1}, the terminal 3^k included; None if 3^k was not reached."""
        return self.odd_terms + 1 if self.status is TrajectoryStatus.REACHED_TARGET else None


def _require_positive(n: int) -> None:
    if n < 1:
        raise ZeroInputError(f"the map is only defined on positive integers, got {n}")


def _require_budget(budget: int) -> None:
    if budget < 1:
        raise ValueError(f"step budget must be at least 1 (not {budget})")


def default_budget(n: int) -> int:
    """Default per-n step limit: 10 * bitlen(n)^2 + 10^4."""
    bits = int(n).bit_length()
    return 10 * bits * bits + 10_000


def step(n: int, params: Params) -> int:
    """Apply g_k once: n / 2 for even n, 3n + 3^k for odd n.

    Raises:
        ZeroInputError: if n is 0.
    """
    _require_positive(n)
    if n & 1:
        return 3 * n + params.addend
    return n >> 1


def orbit(n: int, params: Params) -> Iterator[int]:
    """Yield n, g_k(n), g_k(g_k(n)), ... without end."""
    _require_positive(n)
    addend = params.addend
    value = n
    while True:
        yield value
        value = 3 * value + addend if value & 1 else value >> 1


def trajectory(n: int, params: Params, budget: Optional[int] = None) -> Trajectory:
    """Iterate g_k from n until the first 3^k, a repeated value, or `budget` steps.

    A repeated value before 3^k proves the orbit has entered a cycle that avoids 3^k.

    Raises:
        ZeroInputError: if n is 0.
    """
    _require_positive(n)
    if budget is None:
        budget = default_budget(n)
    _require_budget(budget)

    target = params.target
    terms: List[int] = [n]
    if n == target:
        return Trajectory(start=n, k=params.k, terms=terms, status=TrajectoryStatus.REACHED_TARGET, stopping_time=0)

    seen = {n}
    value = n
    for index in range(1, budget + 1):
        value = 3 * value + target if value & 1 else value >> 1
        terms.append(value)
        if value == target:
            return Trajectory(
                start=n, k=params.k, terms=terms, status=TrajectoryStatus.REACHED_TARGET, stopping_time=index
            )
        if value in seen:
            return Trajectory(start=n, k=params.k, terms=terms, status=TrajectoryStatus.CYCLE_WITHOUT_TARGET)
        seen.add(value)

    return Trajectory(start=n, k=params.k, terms=terms, status=TrajectoryStatus.BUDGET_EXHAUSTED)


def fold_trajectory(n: int, params: Params, budget: Optional[int] = None) -> FoldResult:
    """Run the trajectory of n as a streaming fold: current value plus counters, no term list.

    Runs of even terms are consumed in one shift (capped by the remaining budget). Since 3^k is odd it can
    only appear at the end of such a run, and the run length alone tells the entry pattern: a run of two or
    more halvings passed through 4*3^k, a single halving right after an odd step came from 3^(k-1).

    Raises:
        ZeroInputError: if n is 0.
    """
    _require_positive(n)
    if budget is None:
        budget = default_budget(n)
    _require_budget(budget)

    target = params.target
    peak = int(n).bit_length()
    if n == target:
        return FoldResult(TrajectoryStatus.REACHED_TARGET, 0, 0, peak, CycleTag.SHORT)

    value = promote(n)
    promoted = not HAVE_GMPY2 or value >= WORD_LIMIT
    steps = odd_terms = 0
    while steps < budget:
        if value & 1:
            value = 3 * value + target
            steps += 1
            odd_terms += 1
            if not promoted and value >= WORD_LIMIT:
                value = promote(value)
                promoted = True
            bits = value.bit_length()
            if bits > peak:
                peak = bits
            continue

        run = (value & -value).bit_length() - 1
        remaining = budget - steps
        if run > remaining:
            run = remaining
        value >>= run
        steps += run
        if value == target:
            if steps < 2:
                tag = CycleTag.SHORT
            elif run >= 2:
                tag = CycleTag.STANDARD
            else:
                tag = CycleTag.SHORTCUT
            return FoldResult(TrajectoryStatus.REACHED_TARGET, steps, odd_terms, peak, tag)

    return FoldResult(TrajectoryStatus.BUDGET_EXHAUSTED, steps, odd_terms, peak, CycleTag.NONE)


def profile_of_terms(terms: Sequence[int]) -> OddEvenProfile:
    """Parity run-length profile of exactly the given terms."""
    runs = [0]
    for term in terms:
        if term & 1:
            runs.append(0)
        else:
            runs[-1] += 1
    return OddEvenProfile(l=len(terms), m=len(runs) - 1, d=runs)


def parity_profile(traj: Trajectory, l: int) -> OddEvenProfile:
    """Parity profile of the prefix C^l_k(n) = terms[0 .. l-1] of a trajectory.

    The run after the last odd term is cut at the prefix boundary, which is what makes the term formula
    reproduce terms[l]. l = 0 gives the empty profile (m = 0, d = [0]).

    Raises:
        ProfileLengthError: if l is negative or exceeds the number of available terms.
    """
    if not 0 <= l <= len(traj.terms):
        raise ProfileLengthError(f"prefix length {l} is outside a trajectory of {len(traj.terms)} terms")
    return profile_of_terms(traj.terms[:l])


def three_adic_valuation(n: int) -> int:
    """Largest a such that 3^a divides n.

    Raises:
        ZeroInputError: if n is 0 (every power of 3 divides it).
    """
    _require_positive(n)
    _, count = remove_factor(n, 3)
    return count


def detect_cycle(n: int, params: Params, budget: Optional[int] = None) -> CycleReport:
    """Find the cycle the orbit of n falls into, with Brent's algorithm.

    Cycles through 3^k are reported like any other; callers tell them apart by membership. Members are listed
    from the first cycle element the orbit meets. Exhausting the budget is not an error: the report simply
    says nothing was found.

    Raises:
        ZeroInputError: if n is 0.
    """
    _require_positive(n)
    if budget is None:
        budget = default_budget(n)
    _require_budget(budget)
    addend = params.addend

    def advance(value: int) -> int:
        return 3 * value + addend if value & 1 else value >> 1

    power = length = 1
    tortoise = n
    hare = advance(n)
    used = 1
    while tortoise != hare:
        if used >= budget:
            return CycleReport(found=False, steps_used=budget)
        if power == length:
            tortoise = hare
            power *= 2
            length = 0
        hare = advance(hare)
        length += 1
        used += 1

    # Locate the first cycle element: walk two pointers `length` apart from the start.
    tortoise = hare = n
    for _ in range(length):
        hare = advance(hare)
    while tortoise != hare:
        tortoise = advance(tortoise)
        hare = advance(hare)

    members = [tortoise]
    value = advance(tortoise)
    while value != tortoise:
        members.append(value)
        value = advance(value)
    return CycleReport(found=True, cycle_members=members, cycle_length=length, steps_used=used)
