"""Cross-validation of the closed forms against iteration.

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
from functools import partial, total_ordering
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

import structlog  # type: ignore

from collatzk.dynamics import profile_of_terms, trajectory
from collatzk.enum import CheckFlags
from collatzk.exceptions import CollatzException
from collatzk.formula import eval_term_formula, same_time_partner, total_stopping_time_formula
from collatzk.models import OddEvenProfile, Params, Trajectory
from collatzk.utils import OrderedDefaultDict

# This workaround is used because we are defining a method called `str` in our class definition, which therefore renders
# the builtin `str` type unusable.
StrType = str

KIND_TERMS = "terms"
KIND_STOPPING_TIME = "stopping-time"
KIND_PARTNERS = "partners"
KINDS = (KIND_TERMS, KIND_STOPPING_TIME, KIND_PARTNERS)


@total_ordering
class CheckElement:
    """Outcome of one kind of comparison for one n."""

    def __init__(self, kind: StrType, n: int, comparisons: int = 0):
        """Instantiate a CheckElement.

        Args:
            kind: Which closed form was compared, one of KINDS.
            n: Start value whose trajectory was used.
            comparisons: Number of individual values compared so far.
        """
        if kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS} (not {kind!r})")
        self.kind = kind
        self.n = n
        self.comparisons = comparisons
        self.mismatches: List[StrType] = []

    def __lt__(self, other: "CheckElement") -> bool:
        """Order by kind, then n."""
        return (KINDS.index(self.kind), self.n) < (KINDS.index(other.kind), other.n)

    def __eq__(self, other: object) -> bool:
        """Elements are equal when they describe the same outcome."""
        if not isinstance(other, CheckElement):
            return NotImplemented
        return (self.kind, self.n, self.comparisons, self.mismatches) == (
            other.kind,
            other.n,
            other.comparisons,
            other.mismatches,
        )

    def __str__(self) -> StrType:
        """Basic string representation of a CheckElement."""
        return f"{self.kind} n={self.n}: {'PASS' if self.passed else 'FAIL'} ({self.comparisons} compared)"

    @property
    def passed(self) -> bool:
        """True if no comparison disagreed."""
        return not self.mismatches

    def record(self, matched: bool, detail: StrType = "") -> None:
        """Count one comparison, remembering the detail of a mismatch."""
        self.comparisons += 1
        if not matched:
            self.mismatches.append(detail)

    def dict(self) -> Dict[StrType, Any]:
        """Build a dictionary representation of this CheckElement."""
        return {"passed": self.passed, "comparisons": self.comparisons, "mismatches": list(self.mismatches)}


class CrossCheck:
    """Collection of CheckElements, grouped by kind."""

    def __init__(self, params: Optional[Params] = None) -> None:
        """Initialize a new, empty CrossCheck."""
        self.params = params
        self.children = OrderedDefaultDict[StrType, Dict[int, CheckElement]](dict)
        """`self.children[kind][n] == CheckElement(...)`"""
        self.n_processed = 0

    def __len__(self) -> int:
        """Total number of CheckElements stored herein."""
        return sum(len(elements) for elements in self.children.values())

    def complete(self) -> None:
        """Method to call once every n has been checked.

        The default implementation does nothing; a subclass could persist the outcome here.
        """

    def add(self, element: CheckElement) -> None:
        """Store a CheckElement.

        Raises:
            ValueError: if an element of the same kind for the same n is already stored.
        """
        if element.n in self.children[element.kind]:
            raise ValueError(f"Already storing a {element.kind} check for n={element.n}")
        self.children[element.kind][element.n] = element

    def get_children(self) -> Iterator[CheckElement]:
        """Iterate over all elements, kind by kind, each kind in ascending n."""
        for kind in KINDS:
            if kind in self.children:
                yield from sorted(self.children[kind].values())

    def failures(self) -> List[CheckElement]:
        """All elements with at least one mismatch."""
        return [element for element in self.get_children() if not element.passed]

    def has_failures(self) -> bool:
        """Indicate if any comparison disagreed."""
        return any(not element.passed for element in self.get_children())

    def summary(self) -> Dict[StrType, Dict[StrType, int]]:
        """PASS and FAIL counts per kind, counted per n."""
        summary: Dict[StrType, Dict[StrType, int]] = {}
        for element in self.get_children():
            counts = summary.setdefault(element.kind, {"pass": 0, "fail": 0})
            counts["pass" if element.passed else "fail"] += 1
        return summary

    def str(self, indent: int = 0) -> StrType:
        """Build a string representation: counts per kind, then every mismatch."""
        margin = " " * indent
        output = []
        for kind, counts in self.summary().items():
            output.append(f"{margin}{kind}: {counts['pass']} PASS, {counts['fail']} FAIL")
        for element in self.failures():
            output.append(f"{margin}  {element}")
            for detail in element.mismatches:
                output.append(f"{margin}    {detail}")
        result = "\n".join(output)
        if not result:
            result = f"{margin}(nothing checked)"
        return result

    def dict(self) -> Dict[StrType, Any]:
        """Build a dictionary representation of this CrossCheck; failing elements are listed in full."""
        result: Dict[StrType, Any] = {
            "k": self.params.k if self.params else None,
            "n_processed": self.n_processed,
            "summary": self.summary(),
            "failures": OrderedDefaultDict[StrType, Dict](dict),
        }
        for element in self.failures():
            result["failures"][element.kind][str(element.n)] = element.dict()
        result["failures"] = dict(result["failures"])
        return result


class CrossChecker:  # pylint: disable=too-many-instance-attributes
    """Helper class running the closed forms against materialized trajectories.

    Independent from CrossCheck and CheckElement as those classes are purely data objects, while this stores some
    state.
    """

    def __init__(  # pylint: disable=too-many-arguments
        self,
        n_range: range,
        params: Params,
        budget: Optional[int] = None,
        flags: CheckFlags = CheckFlags.ALL,
        callback: Optional[Callable[[StrType, int, int], None]] = None,
    ):
        """Create a CrossChecker for the given range and map."""
        if not n_range:
            raise ValueError("cross-checks need a non-empty range")
        self.n_range = n_range
        self.params = params
        self.budget = budget
        self.flags = flags
        self.callback = callback

        self.logger = structlog.get_logger().new(k=params.k, start=n_range[0], end=n_range[-1], flags=flags)
        self.result: Optional[CrossCheck] = None
        self.n_processed = 0
        self.total = len(n_range)
        self._groups: Dict[int, List[Tuple[int, OddEvenProfile]]] = {}

    def incr_processed(self, delta: int = 1) -> None:
        """Increment self.n_processed, then call self.callback if present."""
        if delta:
            self.n_processed += delta
            if self.callback:
                self.callback("check", self.n_processed, self.total)

    def run(self) -> CrossCheck:
        """Check every n of the range and return the resulting CrossCheck."""
        if self.result is not None:
            return self.result

        self.logger.info("Beginning cross-check")
        self.result = CrossCheck(self.params)
        self.n_processed = 0
        self._groups = {}
        for n in self.n_range:
            self.check_one(n)
            self.incr_processed()

        self.result.n_processed = self.n_processed
        self.result.complete()
        self.logger.info("Cross-check complete", summary=self.result.summary())
        return self.result

    def check_one(self, n: int) -> None:
        """Run every selected comparison for a single n."""
        assert self.result is not None  # nosec: only called from run()
        traj = trajectory(n, self.params, self.budget)
        pre_target = self.check_terms(traj) if CheckFlags.TERMS in self.flags else None

        if CheckFlags.STOPPING_TIME in self.flags:
            self.check_stopping_time(traj, pre_target)
        if CheckFlags.PARTNERS in self.flags and traj.reached_target:
            self.check_partner(traj, pre_target or profile_of_terms(traj.terms[: traj.stopping_time or 0]))

    def check_terms(self, traj: Trajectory) -> Optional[OddEvenProfile]:
        """Recompute every term from the profile of the terms before it.

        Returns the profile of C^t as a by-product when 3^k was reached.
        """
        element = CheckElement(KIND_TERMS, traj.start)
        runs = [0]
        pre_target = None
        for l, term in enumerate(traj.terms):
            # Profiles built here are consistent by construction; skip re-validation.
            profile = OddEvenProfile.model_construct(l=l, m=len(runs) - 1, d=tuple(runs))
            if l == traj.stopping_time:
                pre_target = profile
            self._compare(element, partial(eval_term_formula, traj.start, self.params, profile), term, f"l={l}")
            if term & 1:
                runs.append(0)
            else:
                runs[-1] += 1
        self._store(element)
        return pre_target

    def check_stopping_time(self, traj: Trajectory, pre_target: Optional[OddEvenProfile]) -> None:
        """Recompute t from the profile of C^t."""
        element = CheckElement(KIND_STOPPING_TIME, traj.start)
        if not traj.reached_target:
            element.record(False, f"3^k not reached: {traj.status.value} after {traj.steps} steps")
        else:
            t = traj.stopping_time or 0
            profile = pre_target or profile_of_terms(traj.terms[:t])
            self._compare(
                element, partial(total_stopping_time_formula, traj.start, self.params, profile), t, f"t={t}"
            )
        self._store(element)

    def check_partner(self, traj: Trajectory, profile: OddEvenProfile) -> None:
        """Reconstruct n from the first n seen with the same t, and that one from n.

        With CheckFlags.ALL_PAIRS every earlier n of the same t is used, not only the first.
        """
        group = self._groups.setdefault(traj.stopping_time or 0, [])
        partners = list(group)
        if not group or CheckFlags.ALL_PAIRS in self.flags:
            group.append((traj.start, profile))
        if not partners:
            return
        element = CheckElement(KIND_PARTNERS, traj.start)
        for other_n, other_profile in partners:
            self._compare(
                element,
                partial(same_time_partner, other_n, other_profile, profile, self.params),
                traj.start,
                f"from n={other_n}",
            )
            self._compare(
                element,
                partial(same_time_partner, traj.start, profile, other_profile, self.params),
                other_n,
                f"to n={other_n}",
            )
        self._store(element)

    def _compare(self, element: CheckElement, compute: Callable[[], int], expected: int, label: StrType) -> None:
        try:
            actual = compute()
        except CollatzException as err:
            element.record(False, f"{label}: {type(err).__name__}: {err}")
            return
        element.record(actual == expected, f"{label}: formula gives {actual}, iteration gives {expected}")

    def _store(self, element: CheckElement) -> None:
        assert self.result is not None  # nosec: only called from run()
        if not element.passed:
            self.logger.warning("Cross-check mismatch", kind=element.kind, n=element.n, details=element.mismatches)
        self.result.add(element)


def run_cross_check(  # pylint: disable=too-many-arguments
    n_range: range,
    params: Params,
    budget: Optional[int] = None,
    flags: CheckFlags = CheckFlags.ALL,
    callback: Optional[Callable[[StrType, int, int], None]] = None,
) -> CrossCheck:
    """Compare the closed forms with iteration for every n in the range.

    Args:
        n_range: start values to check, non-empty
        params: map parameters
        budget: steps allowed per trajectory, None for the default budget
        flags: which closed forms to compare
        callback: called as callback("check", processed, total) after each n
    """
    return CrossChecker(n_range, params, budget=budget, flags=flags, callback=callback).run()
