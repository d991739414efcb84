"""Data models for collatzk.

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
import os
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from pydantic import AfterValidator, BaseModel, ConfigDict, Field, PlainSerializer, model_validator

from collatzk.enum import CycleTag, OutputFormat, TrajectoryStatus
from collatzk.utils import to_decimal

if sys.version_info >= (3, 9):
    from typing import Annotated
else:
    from typing_extensions import Annotated

if sys.version_info >= (3, 11):
    from typing import Self
else:
    from typing_extensions import Self


def _check_natural(value: int) -> int:
    if value < 0:
        raise ValueError(f"expected a non-negative integer, got {value}")
    return value


Natural = Annotated[
    int,
    AfterValidator(_check_natural),
    PlainSerializer(to_decimal, return_type=str, when_used="json"),
]
"""Arbitrary-precision non-negative integer; serialized to JSON as a decimal string so no reader rounds it."""


class CollatzModel(BaseModel):
    """Base class for all collatzk value objects: immutable once constructed."""

    model_config = ConfigDict(frozen=True)


class Params(CollatzModel):
    """Parameters of the map g_k: halve even n, send odd n to 3n + 3^k."""

    k: int = Field(0, ge=0)

    @property
    def addend(self) -> int:
        """The constant added on odd steps, 3^k."""
        return 3**self.k

    @property
    def target(self) -> int:
        """The value every trajectory is conjectured to reach, also 3^k."""
        return 3**self.k

    @property
    def label(self) -> str:
        """Human-readable name of the map, e.g. `3n+9`."""
        return f"3n+{self.addend}"


class Trajectory(CollatzModel):
    """Terms g^0(n), g^1(n), ... of one trajectory, with how the iteration ended.

    `terms[i + 1] == step(terms[i])` holds by construction in `collatzk.dynamics.trajectory`; only the
    cheap invariants are re-validated here.
    """

    start: Natural
    k: int = Field(ge=0)
    terms: Tuple[Natural, ...]
    status: TrajectoryStatus
    stopping_time: Optional[int] = None
    """Index of the first term equal to 3^k, set only when status is REACHED_TARGET."""

    @model_validator(mode="after")
    def _validate_termination(self) -> Self:
        if not self.terms or self.terms[0] != self.start:
            raise ValueError("terms[0] must be the start value")
        target = 3**self.k
        if self.status is TrajectoryStatus.REACHED_TARGET:
            t = self.stopping_time
            if t is None or not 0 <= t < len(self.terms):
                raise ValueError(f"stopping_time {t} is not an index into {len(self.terms)} terms")
            if self.terms[t] != target or target in self.terms[:t]:
                raise ValueError(f"terms[{t}] is not the first occurrence of {target}")
        elif self.stopping_time is not None:
            raise ValueError(f"stopping_time must be unset when status is {self.status.value}")
        return self

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def reached_target(self) -> bool:
        """True if 3^k was reached within the budget."""
        return self.status is TrajectoryStatus.REACHED_TARGET

    @property
    def steps(self) -> int:
        """Number of applications of g_k recorded."""
        return len(self.terms) - 1


class OddEvenProfile(CollatzModel):
    """Parity run-lengths of the first `l` terms of a trajectory.

    `m` counts odd terms; `d[0]` is the number of even terms before the first odd one and `d[i]` the number of
    even terms immediately following the i-th odd term, cut at the prefix boundary.
    """

    l: int = Field(ge=0)
    m: int = Field(ge=0)
    d: Tuple[int, ...]

    @model_validator(mode="after")
    def _validate_runs(self) -> Self:
        if len(self.d) != self.m + 1:
            raise ValueError(f"expected {self.m + 1} run lengths, got {len(self.d)}")
        if any(run < 0 for run in self.d):
            raise ValueError(f"run lengths must be non-negative: {self.d}")
        if sum(self.d) != self.l - self.m:
            raise ValueError(f"run lengths {self.d} do not sum to l - m = {self.l - self.m}")
        return self


class EpsilonFlag(CollatzModel):
    """The indicator that zeroes the correction sum of the term formula for all-even prefixes."""

    epsilon: int = Field(ge=0, le=1)

    @classmethod
    def for_profile(cls, profile: OddEvenProfile) -> "EpsilonFlag":
        """Epsilon is 0 exactly when the prefix holds no odd term."""
        return cls(epsilon=0 if profile.m == 0 else 1)


class CycleReport(CollatzModel):
    """Outcome of Brent cycle detection on the orbit of a start value."""

    found: bool
    cycle_members: Tuple[Natural, ...] = ()
    cycle_length: int = Field(0, ge=0)
    steps_used: int = Field(0, ge=0)

    @model_validator(mode="after")
    def _validate_members(self) -> Self:
        if self.found and (self.cycle_length < 1 or len(self.cycle_members) != self.cycle_length):
            raise ValueError("a found cycle lists exactly cycle_length members")
        if not self.found and (self.cycle_members or self.cycle_length):
            raise ValueError("no members can be reported when no cycle was found")
        return self


class AnalysisRow(CollatzModel):
    """One n of a figure dataset: total stopping time, odd terms in C^{t+1} and the entry tag.

    `t` and `odd_count` are None when 3^k was not reached within the budget.
    """

    n: Natural
    k: int = Field(ge=0)
    t: Optional[int] = Field(None, ge=0)
    odd_count: Optional[int] = Field(None, ge=1)
    tag: CycleTag

    @model_validator(mode="after")
    def _validate_marker(self) -> Self:
        unresolved = self.t is None
        if unresolved != (self.odd_count is None) or unresolved != (self.tag is CycleTag.NONE):
            raise ValueError("t, odd_count and tag must agree on whether 3^k was reached")
        if self.t == 0 and (self.n != 3**self.k or self.odd_count != 1):
            raise ValueError("only n = 3^k has stopping time 0, with a single odd term")
        return self


class SpotCheckResult(CollatzModel):
    """Streaming run of a single, possibly huge, start value."""

    n: Natural
    k: int = Field(ge=0)
    status: TrajectoryStatus
    t: Optional[int] = None
    steps: int = Field(ge=0)
    odd_terms: int = Field(ge=0)
    peak_bits: int = Field(ge=0)
    elapsed: float = 0.0


class SweepConfig(CollatzModel):
    """Configuration of a verification sweep over the inclusive range [start, end]."""

    k: int = Field(0, ge=0)
    start: Natural = 1
    end: Natural
    budget: Optional[int] = Field(None, ge=1)
    """Steps allowed per n; None selects `collatzk.dynamics.default_budget(n)`."""
    chunk_size: int = Field(10_000, ge=1)
    parallelism: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)
    checkpoint_path: Optional[Path] = None

    @model_validator(mode="after")
    def _validate_range(self) -> Self:
        if self.start < 1:
            raise ValueError("sweeps start at 1 or above; the map is not defined on 0")
        if self.start > self.end:
            raise ValueError(f"empty range: start {self.start} > end {self.end}")
        return self

    @property
    def params(self) -> Params:
        """Map parameters of this sweep."""
        return Params(k=self.k)

    @property
    def size(self) -> int:
        """Number of integers in the range."""
        return self.end - self.start + 1


class ChunkFailure(CollatzModel):
    """An n that did not reach 3^k within the budget."""

    n: Natural
    status: TrajectoryStatus
    steps: int = Field(ge=0)


class ChunkResult(CollatzModel):
    """Outcome of verifying the inclusive range [start, end] of a sweep."""

    start: Natural
    end: Natural
    verified_count: int = Field(ge=0)
    failures: Tuple[ChunkFailure, ...] = ()
    max_t: Optional[int] = None
    max_t_n: Optional[Natural] = None
    odd_max: Optional[int] = None
    odd_max_n: Optional[Natural] = None
    elapsed: float = 0.0

    @model_validator(mode="after")
    def _validate_accounting(self) -> Self:
        if self.verified_count + len(self.failures) != self.size:
            raise ValueError(
                f"{self.verified_count} verified + {len(self.failures)} failed != chunk size {self.size}"
            )
        return self

    @property
    def size(self) -> int:
        """Number of integers in the chunk."""
        return self.end - self.start + 1

    @property
    def chunk_range(self) -> Tuple[int, int]:
        """Inclusive bounds of the chunk."""
        return self.start, self.end


class VerificationReport(CollatzModel):
    """Merged outcome of a sweep, chunk by chunk in ascending order."""

    config: SweepConfig
    verified: int = Field(ge=0)
    failed: int = Field(ge=0)
    budget_exhausted: int = Field(ge=0)
    cycles_without_target: int = Field(ge=0)
    max_t: Optional[int] = None
    max_t_n: Optional[Natural] = None
    odd_max: Optional[int] = None
    odd_max_n: Optional[Natural] = None
    elapsed: float = 0.0
    throughput: float = 0.0
    """Verified integers per second of wall time."""
    chunks: Tuple[ChunkResult, ...] = ()
    completed: bool = False

    @model_validator(mode="after")
    def _validate_totals(self) -> Self:
        if self.verified != sum(chunk.verified_count for chunk in self.chunks):
            raise ValueError("verified total does not match the chunks")
        if self.failed != sum(len(chunk.failures) for chunk in self.chunks):
            raise ValueError("failed total does not match the chunks")
        if self.budget_exhausted + self.cycles_without_target != self.failed:
            raise ValueError("every failure is either budget exhaustion or a cycle without 3^k")
        return self

    @property
    def failures(self) -> Tuple[ChunkFailure, ...]:
        """All failure entries in ascending n."""
        return tuple(failure for chunk in self.chunks for failure in chunk.failures)

    def non_timing_dict(self) -> Dict[str, Any]:
        """JSON-ready dict without wall-clock fields or settings that must not change the outcome.

        Two runs of the same sweep, whatever their parallelism or resume points, produce equal dicts.
        """
        return self.model_dump(
            mode="json",
            exclude={
                "elapsed": True,
                "throughput": True,
                "config": {"parallelism", "checkpoint_path"},
                "chunks": {"__all__": {"elapsed"}},
            },
        )


class CheckpointRecord(CollatzModel):
    """One line of a sweep checkpoint: progress after a completed chunk.

    The last record wins. `chunk` carries the completed chunk so a resumed sweep can rebuild the
    full report.
    """

    schema_version: int = 1
    k: int = Field(ge=0)
    budget: Optional[int] = None
    start: Natural
    end: Natural
    chunk_size: int = Field(ge=1)
    next_start: Natural
    verified_through: Natural
    max_t: Optional[int] = None
    max_t_n: Optional[Natural] = None
    timestamp: datetime
    chunk: ChunkResult

    def matches(self, config: SweepConfig) -> bool:
        """True if this record was written by a sweep with the same outcome-relevant settings."""
        return (self.k, self.budget, self.start, self.end, self.chunk_size) == (
            config.k,
            config.budget,
            config.start,
            config.end,
            config.chunk_size,
        )


class OutputRecord(CollatzModel):
    """Where and how the command line writes its result; no destination means standard output."""

    format: OutputFormat = OutputFormat.TABLE
    destination: Optional[Path] = None
