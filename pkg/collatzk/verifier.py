"""Chunked, resumable verification that every n of a range reaches 3^k.

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
import time
from collections import deque
from concurrent.futures import Future, ProcessPoolExecutor
from datetime import datetime, timezone
from itertools import islice
from typing import Callable, Deque, List, Optional, Sequence, Tuple

import structlog  # type: ignore

from collatzk.dynamics import default_budget, detect_cycle, fold_trajectory
from collatzk.enum import TrajectoryStatus
from collatzk.exceptions import CheckpointMismatch
from collatzk.models import (
    CheckpointRecord,
    ChunkFailure,
    ChunkResult,
    Params,
    SpotCheckResult,
    SweepConfig,
    VerificationReport,
)
from collatzk.store import BaseCheckpointStore
from collatzk.store.jsonl import JsonLinesCheckpointStore
from collatzk.utils import chunk_bounds

logger = structlog.get_logger()


def _failure_status(n: int, params: Params, budget: Optional[int]) -> TrajectoryStatus:
    """Tell a trajectory that merely ran long from one that provably cycles away from 3^k."""
    report = detect_cycle(n, params, budget)
    if report.found and params.target not in report.cycle_members:
        return TrajectoryStatus.CYCLE_WITHOUT_TARGET
    return TrajectoryStatus.BUDGET_EXHAUSTED


def verify_chunk(cfg: SweepConfig, chunk_range: Tuple[int, int]) -> ChunkResult:
    """Stream every n of the inclusive chunk through the fold and account for each one.

    An n that does not reach 3^k within the budget becomes a failure entry; it is never dropped and never raised.
    Runs in worker processes, so it only depends on its arguments.

    Raises:
        ValueError: if the chunk is empty or not within the configured range.
    """
    lo, hi = chunk_range
    if lo > hi or lo < cfg.start or hi > cfg.end:
        raise ValueError(f"chunk {lo}-{hi} is not a non-empty part of {cfg.start}-{cfg.end}")

    params = cfg.params
    started = time.perf_counter()
    verified = 0
    failures: List[ChunkFailure] = []
    max_t: Optional[int] = None
    max_t_n: Optional[int] = None
    odd_max: Optional[int] = None
    odd_max_n: Optional[int] = None

    for n in range(lo, hi + 1):
        result = fold_trajectory(n, params, cfg.budget)
        if result.status is not TrajectoryStatus.REACHED_TARGET:
            failures.append(
                ChunkFailure(n=n, status=_failure_status(n, params, cfg.budget), steps=result.steps)
            )
            continue
        verified += 1
        if max_t is None or result.steps > max_t:
            max_t, max_t_n = result.steps, n
        odd_count = result.odd_terms + 1
        if odd_max is None or odd_count > odd_max:
            odd_max, odd_max_n = odd_count, n

    return ChunkResult(
        start=lo,
        end=hi,
        verified_count=verified,
        failures=failures,
        max_t=max_t,
        max_t_n=max_t_n,
        odd_max=odd_max,
        odd_max_n=odd_max_n,
        elapsed=time.perf_counter() - started,
    )


def merge_chunks(
    config: SweepConfig, chunks: Sequence[ChunkResult], elapsed: float
) -> VerificationReport:
    """Fold chunk results, in ascending order, into a report; ties on a maximum keep the smallest n."""
    max_t = max_t_n = odd_max = odd_max_n = None
    budget_exhausted = cycles = 0
    for chunk in chunks:
        if chunk.max_t is not None and (max_t is None or chunk.max_t > max_t):
            max_t, max_t_n = chunk.max_t, chunk.max_t_n
        if chunk.odd_max is not None and (odd_max is None or chunk.odd_max > odd_max):
            odd_max, odd_max_n = chunk.odd_max, chunk.odd_max_n
        for failure in chunk.failures:
            if failure.status is TrajectoryStatus.CYCLE_WITHOUT_TARGET:
                cycles += 1
            else:
                budget_exhausted += 1

    verified = sum(chunk.verified_count for chunk in chunks)
    return VerificationReport(
        config=config,
        verified=verified,
        failed=budget_exhausted + cycles,
        budget_exhausted=budget_exhausted,
        cycles_without_target=cycles,
        max_t=max_t,
        max_t_n=max_t_n,
        odd_max=odd_max,
        odd_max_n=odd_max_n,
        elapsed=elapsed,
        throughput=verified / elapsed if elapsed > 0 else 0.0,
        chunks=tuple(chunks),
        completed=bool(chunks) and chunks[-1].end == config.end,
    )


class SweepRunner:  # pylint: disable=too-many-instance-attributes
    """Helper class driving a sweep: chunk planning, bounded parallel execution, ordered merge and checkpoints.

    Chunks are handed to worker processes, but results are consumed strictly in ascending order, so the report
    and the checkpoint log do not depend on the degree of parallelism. This object is the only checkpoint writer.
    """

    def __init__(
        self,
        config: SweepConfig,
        store: Optional[BaseCheckpointStore] = None,
        callback: Optional[Callable[[str, int, int], None]] = None,
    ):
        """Create a SweepRunner; a configured checkpoint_path selects a JsonLinesCheckpointStore by default."""
        self.config = config
        if store is None and config.checkpoint_path is not None:
            store = JsonLinesCheckpointStore(path=config.checkpoint_path)
        self.store = store
        self.callback = callback
        self.logger = structlog.get_logger().new(k=config.k, start=config.start, end=config.end)

        self.chunks: List[ChunkResult] = []
        self.n_processed = 0
        self.total = config.size

    def incr_processed(self, delta: int = 1) -> None:
        """Increment self.n_processed, then call self.callback if present."""
        if delta:
            self.n_processed += delta
            if self.callback:
                self.callback("verify", self.n_processed, self.total)

    def resume(self) -> List[ChunkResult]:
        """Load the chunks already completed according to the checkpoint store.

        Raises:
            CheckpointMismatch: if the store belongs to a different sweep, or its chunks do not tile the range.
        """
        if self.store is None:
            return []
        records = self.store.records()
        chunks: List[ChunkResult] = []
        expected_start = self.config.start
        for record in records:
            if not record.matches(self.config):
                raise CheckpointMismatch(
                    f"Checkpoint {self.store} was written for k={record.k}, budget={record.budget}, "
                    f"range {record.start}-{record.end}, chunk size {record.chunk_size}"
                )
            if record.chunk.start != expected_start or record.next_start != record.chunk.end + 1:
                raise CheckpointMismatch(f"Checkpoint {self.store} skips or repeats n around {record.chunk.start}")
            chunks.append(record.chunk)
            expected_start = record.next_start

        if chunks:
            self.logger.info("Resuming sweep", next_start=expected_start, chunks_done=len(chunks))
        return chunks

    def run(self) -> VerificationReport:
        """Verify every pending chunk and return the merged report."""
        self.chunks = self.resume()
        self.n_processed = sum(chunk.size for chunk in self.chunks)
        next_start = self.chunks[-1].end + 1 if self.chunks else self.config.start
        pending = list(chunk_bounds(next_start, self.config.end, self.config.chunk_size))
        prior_elapsed = sum(chunk.elapsed for chunk in self.chunks)

        self.logger.info(
            "Beginning sweep",
            budget=self.config.budget,
            chunks=len(pending),
            parallelism=self.config.parallelism,
        )
        started = time.perf_counter()
        if self.config.parallelism == 1 or len(pending) <= 1:
            for bounds in pending:
                self._commit(verify_chunk(self.config, bounds))
        else:
            self._run_parallel(pending)

        report = merge_chunks(self.config, self.chunks, prior_elapsed + time.perf_counter() - started)
        self.logger.info(
            "Sweep complete",
            verified=report.verified,
            failed=report.failed,
            max_t=report.max_t,
            max_t_n=report.max_t_n,
            throughput=round(report.throughput),
        )
        return report

    def _run_parallel(self, pending: List[Tuple[int, int]]) -> None:
        bounds_iter = iter(pending)
        window = 2 * self.config.parallelism
        inflight: Deque["Future[ChunkResult]"] = deque()
        with ProcessPoolExecutor(max_workers=self.config.parallelism) as pool:
            try:
                for bounds in islice(bounds_iter, window):
                    inflight.append(pool.submit(verify_chunk, self.config, bounds))
                while inflight:
                    self._commit(inflight.popleft().result())
                    bounds = next(bounds_iter, None)
                    if bounds is not None:
                        inflight.append(pool.submit(verify_chunk, self.config, bounds))
            except BaseException:
                for future in inflight:
                    future.cancel()
                raise

    def _commit(self, result: ChunkResult) -> None:
        """Record a finished chunk: report failures, persist the checkpoint, then count it as done."""
        chunk_log = self.logger.bind(chunk_start=result.start, chunk_end=result.end)
        for failure in result.failures:
            chunk_log.warning("3^k not reached", n=failure.n, status=failure.status.value, steps=failure.steps)

        self.chunks.append(result)
        if self.store is not None:
            running_max = merge_chunks(self.config, self.chunks, 0.0)
            self.store.append(
                CheckpointRecord(
                    k=self.config.k,
                    budget=self.config.budget,
                    start=self.config.start,
                    end=self.config.end,
                    chunk_size=self.config.chunk_size,
                    next_start=result.end + 1,
                    verified_through=result.end,
                    max_t=running_max.max_t,
                    max_t_n=running_max.max_t_n,
                    timestamp=datetime.now(timezone.utc),
                    chunk=result,
                )
            )
        chunk_log.debug("Chunk verified", verified=result.verified_count, failed=len(result.failures))
        self.incr_processed(result.size)


def run_sweep(
    cfg: SweepConfig,
    store: Optional[BaseCheckpointStore] = None,
    callback: Optional[Callable[[str, int, int], None]] = None,
) -> VerificationReport:
    """Verify [cfg.start, cfg.end] chunk by chunk and return the merged report.

    With a checkpoint (cfg.checkpoint_path, or an explicit store) progress is persisted after every chunk and a
    rerun resumes after the last durable one; the report is the same as that of an uninterrupted run, timing aside.

    Raises:
        CheckpointIOError: if a checkpoint cannot be written; records written before stay valid.
        CheckpointMismatch: if an existing checkpoint belongs to another sweep.
    """
    return SweepRunner(cfg, store=store, callback=callback).run()


def spot_check_large(n: int, params: Params, budget: Optional[int] = None) -> SpotCheckResult:
    """Run one, possibly enormous, start value through the fold; memory stays proportional to its bit length."""
    if budget is None:
        budget = default_budget(n)
    log = logger.bind(k=params.k, bits=int(n).bit_length(), budget=budget)
    log.info("Beginning spot check")
    started = time.perf_counter()
    result = fold_trajectory(n, params, budget)
    elapsed = time.perf_counter() - started
    log.info("Spot check complete", status=result.status.value, steps=result.steps, peak_bits=result.peak_bits)
    return SpotCheckResult(
        n=n,
        k=params.k,
        status=result.status,
        t=result.t,
        steps=result.steps,
        odd_terms=result.odd_terms,
        peak_bits=result.peak_bits,
        elapsed=elapsed,
    )
