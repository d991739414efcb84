"""collatzk enums and flags.

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

import enum


class TrajectoryStatus(enum.Enum):
    """How an iteration of g_k from some start value ended."""

    REACHED_TARGET = "reached-target"
    """The trajectory hit 3^k; the index of the first hit is the total stopping time."""

    BUDGET_EXHAUSTED = "budget-exhausted"
    """The step budget ran out before 3^k appeared. Says nothing about finiteness."""

    CYCLE_WITHOUT_TARGET = "cycle-without-target"
    """A repeated value was found and 3^k is not on the cycle: a counterexample."""


class CycleTag(enum.Enum):
    """Classification of the two terms preceding the first arrival at 3^k."""

    STANDARD = "Standard"
    """Entry through 4*3^k, 2*3^k, 3^k (the 4, 2, 1 loop generalized)."""

    SHORTCUT = "Shortcut"
    """Entry through 3^(k-1), 2*3^k, 3^k; only possible for k >= 1."""

    SHORT = "Short"
    """Total stopping time below 2, so the entry pattern is undefined."""

    NONE = "None"
    """3^k was not reached within the budget."""


class OutputFormat(enum.Enum):
    """Rendering formats supported by the command line."""

    CSV = "csv"
    JSON = "json"
    TABLE = "table"


class ExitCode(enum.IntEnum):
    """Process exit codes of the `collatzk` command."""

    SUCCESS = 0
    USAGE = 1
    VERIFICATION_FAILURE = 2
    IO_ERROR = 3
    BUDGET_EXHAUSTED = 4


class CheckFlags(enum.Flag):
    """Flags selecting which closed forms `run_cross_check` compares against iteration."""

    NONE = 0

    TERMS = 0b1
    """Recompute every trajectory term from its parity profile (term formula)."""

    STOPPING_TIME = 0b10
    """Recompute the total stopping time from the profile of the pre-target prefix."""

    PARTNERS = 0b100
    """Reconstruct each n from another n with the same stopping time, in both directions."""

    ALL_PAIRS = 0b1000
    """With PARTNERS, pair each n with every earlier n of the same stopping time rather than only the first one."""

    ALL = TERMS | STOPPING_TIME | PARTNERS
