"""Rendering of sequences, tables, datasets and reports as text, CSV or JSON.

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

Every natural is written in plain decimal, never abbreviated. Text output uses "\\n" newlines and ends with one.
"""
import csv
import io
import json
import sys
from functools import lru_cache
from itertools import islice
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import Field

from collatzk.check import CrossCheck
from collatzk.dynamics import fold_trajectory, orbit
from collatzk.enum import OutputFormat
from collatzk.models import (
    AnalysisRow,
    CollatzModel,
    OutputRecord,
    Params,
    SpotCheckResult,
    Trajectory,
    VerificationReport,
)
from collatzk.utils import to_decimal, unlimited_int_digits

TABLE_METADATA_PATH = Path(__file__).parent / "data" / "table1.json"

FIGDATA_SCHEMA = "# collatzk figdata schema 1"
FIGDATA_COLUMNS = ("n", "t", "odd_count", "tag")
UNRESOLVED = "unresolved"
"""Written in place of t and odd_count when 3^k was not reached within the budget."""

CYCLE_PASSES = 3
"""Terms printed after the first 3^k in columns outside the published table: one pass around the loop."""


class TableAnnotation(CollatzModel):
    """A published cell that disagrees with iteration, with the value iteration gives."""

    k: int = Field(ge=0)
    n: int = Field(ge=1)
    row: int = Field(ge=1)
    printed: str
    corrected: str


class TableMetadata(CollatzModel):
    """Shape of the published table: how many terms each column lists."""

    description: str = ""
    ks: Tuple[int, ...]
    n_max: int = Field(ge=1)
    column_lengths: Dict[int, Tuple[int, ...]]
    annotations: Tuple[TableAnnotation, ...] = ()

    def column_length(self, k: int, n: int) -> Optional[int]:
        """Published number of terms for column n of the 3n+3^k block, if the table covers it."""
        lengths = self.column_lengths.get(k)
        if lengths is None or not 1 <= n <= len(lengths):
            return None
        return lengths[n - 1]


@lru_cache(maxsize=1)
def load_table_metadata(path: Path = TABLE_METADATA_PATH) -> TableMetadata:
    """Read the published table metadata shipped with the package."""
    return TableMetadata.model_validate_json(path.read_text(encoding="utf-8"))


def _csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]], preamble: Sequence[str] = ()) -> str:
    buffer = io.StringIO()
    for line in preamble:
        buffer.write(line + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    with unlimited_int_digits():
        writer.writerows(rows)
    return buffer.getvalue()


def _json_text(payload: Any) -> str:
    with unlimited_int_digits():
        return json.dumps(payload, indent=2) + "\n"


def _aligned(lines: List[List[str]]) -> List[str]:
    """Right-justify every column to its widest cell, two spaces apart."""
    widths = [max(len(line[index]) for line in lines if index < len(line)) for index in range(max(map(len, lines)))]
    return ["  ".join(cell.rjust(widths[index]) for index, cell in enumerate(line)).rstrip() for line in lines]


# Sequences


def render_sequence(traj: Trajectory, params: Params, fmt: OutputFormat) -> str:
    """Terms after n through the first 3^k (or as far as the budget reached)."""
    after = traj.terms[1:]
    t = traj.stopping_time
    if fmt is OutputFormat.JSON:
        return _json_text(
            {
                "n": to_decimal(traj.start),
                "k": params.k,
                "map": params.label,
                "status": traj.status.value,
                "t": t,
                "terms": [to_decimal(term) for term in after],
            }
        )
    if fmt is OutputFormat.CSV:
        return _csv_text(("index", "term"), ((index, term) for index, term in enumerate(after, start=1)))
    header = f"n={to_decimal(traj.start)} {params.label} status={traj.status.value} t={UNRESOLVED if t is None else t}"
    return "\n".join([header] + [to_decimal(term) for term in after]) + "\n"


# Published table


def table_column(n: int, params: Params, budget: Optional[int] = None) -> List[int]:
    """Terms after n as the published table lists them.

    Inside the published range the column has the published length; elsewhere it runs through the first 3^k
    and once more around the loop.
    """
    length = load_table_metadata().column_length(params.k, n)
    if length is None:
        result = fold_trajectory(n, params, budget)
        length = result.steps + (CYCLE_PASSES if result.t is not None else 0)
    return list(islice(orbit(n, params), 1, length + 1))


def render_table(ks: Sequence[int], n_max: int, fmt: OutputFormat, budget: Optional[int] = None) -> str:
    """The published table layout: one block per k, columns n = 1..n_max, blank cells after a column ends."""
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1 (not {n_max})")
    blocks = []
    for k in ks:
        params = Params(k=k)
        blocks.append((params, [table_column(n, params, budget) for n in range(1, n_max + 1)]))

    if fmt is OutputFormat.JSON:
        return _json_text(
            {
                params.label: {str(n): [to_decimal(term) for term in column] for n, column in enumerate(columns, 1)}
                for params, columns in blocks
            }
        )
    if fmt is OutputFormat.CSV:
        return _csv_text(
            ("k", "n", "row", "term"),
            (
                (params.k, n, row, term)
                for params, columns in blocks
                for n, column in enumerate(columns, start=1)
                for row, term in enumerate(column, start=1)
            ),
        )

    rendered = []
    for params, columns in blocks:
        height = max(len(column) for column in columns)
        lines = [["n"] + [str(n) for n in range(1, n_max + 1)]]
        for row in range(height):
            lines.append([""] + [to_decimal(column[row]) if row < len(column) else "" for column in columns])
        rendered.append("\n".join([params.label] + _aligned(lines)))
    return "\n\n".join(rendered) + "\n"


# Figure datasets


def _row_cells(row: AnalysisRow) -> Tuple[Any, ...]:
    return (
        row.n,
        UNRESOLVED if row.t is None else row.t,
        UNRESOLVED if row.odd_count is None else row.odd_count,
        row.tag.value,
    )


def render_figdata(datasets: Sequence[Tuple[int, Tuple[int, int], List[AnalysisRow]]], fmt: OutputFormat) -> str:
    """One or more (k, window, rows) datasets; several datasets are each preceded by a `# k=..., window=...` line."""
    if fmt is OutputFormat.JSON:
        return _json_text(
            [
                {
                    "k": k,
                    "window": [lo, hi],
                    "rows": [
                        {"n": to_decimal(row.n), "t": row.t, "odd_count": row.odd_count, "tag": row.tag.value}
                        for row in rows
                    ],
                }
                for k, (lo, hi), rows in datasets
            ]
        )

    parts = []
    for k, (lo, hi), rows in datasets:
        heading = [f"# k={k}, window={lo}-{hi}"] if len(datasets) > 1 else []
        if fmt is OutputFormat.CSV:
            parts.append(_csv_text(FIGDATA_COLUMNS, map(_row_cells, rows), preamble=heading + [FIGDATA_SCHEMA]))
        else:
            lines = [list(FIGDATA_COLUMNS)] + [[str(cell) for cell in _row_cells(row)] for row in rows]
            parts.append("\n".join(heading + _aligned(lines)) + "\n")
    return "".join(parts)


def figdata_filename(k: int, window: Tuple[int, int]) -> str:
    """File name of one dataset under `--output-dir`."""
    return f"figdata_k{k}_{window[0]}-{window[1]}.csv"


# Reports


def render_check(result: CrossCheck, fmt: OutputFormat) -> str:
    """PASS/FAIL counts of a cross-check, with every mismatch."""
    if fmt is OutputFormat.JSON:
        return _json_text(result.dict())
    if fmt is OutputFormat.CSV:
        return _csv_text(
            ("kind", "pass", "fail"),
            ((kind, counts["pass"], counts["fail"]) for kind, counts in result.summary().items()),
        )
    return result.str() + "\n"


def render_report(report: VerificationReport, fmt: OutputFormat) -> str:
    """A sweep report: totals and maxima, then one line per chunk."""
    if fmt is OutputFormat.JSON:
        return _json_text(report.model_dump(mode="json"))
    if fmt is OutputFormat.CSV:
        return _csv_text(
            ("start", "end", "verified", "failed", "max_t", "max_t_n", "odd_max", "odd_max_n", "elapsed"),
            (
                (
                    chunk.start,
                    chunk.end,
                    chunk.verified_count,
                    len(chunk.failures),
                    chunk.max_t,
                    chunk.max_t_n,
                    chunk.odd_max,
                    chunk.odd_max_n,
                    f"{chunk.elapsed:.6f}",
                )
                for chunk in report.chunks
            ),
        )

    config = report.config
    lines = [
        f"sweep {Params(k=config.k).label} over {to_decimal(config.start)}-{to_decimal(config.end)}"
        f" ({'completed' if report.completed else 'incomplete'})",
        f"verified: {report.verified}",
        f"failed: {report.failed} (budget exhausted {report.budget_exhausted},"
        f" cycles without 3^k {report.cycles_without_target})",
        f"max t: {report.max_t} at n={report.max_t_n}",
        f"max odd count: {report.odd_max} at n={report.odd_max_n}",
        f"elapsed: {report.elapsed:.3f}s, throughput: {report.throughput:.0f} n/s",
    ]
    for failure in report.failures:
        lines.append(f"FAIL n={to_decimal(failure.n)} {failure.status.value} after {failure.steps} steps")
    return "\n".join(lines) + "\n"


def render_spot(result: SpotCheckResult, fmt: OutputFormat) -> str:
    """A single large-input run."""
    if fmt is OutputFormat.JSON:
        return _json_text(result.model_dump(mode="json"))
    t = UNRESOLVED if result.t is None else result.t
    if fmt is OutputFormat.CSV:
        return _csv_text(
            ("bits", "k", "status", "t", "steps", "odd_terms", "peak_bits", "elapsed"),
            [
                (
                    int(result.n).bit_length(),
                    result.k,
                    result.status.value,
                    t,
                    result.steps,
                    result.odd_terms,
                    result.peak_bits,
                    f"{result.elapsed:.6f}",
                )
            ],
        )
    return (
        f"n: {int(result.n).bit_length()}-bit start under {Params(k=result.k).label}\n"
        f"status: {result.status.value}\n"
        f"t: {t}\n"
        f"odd terms: {result.odd_terms}\n"
        f"peak bits: {result.peak_bits}\n"
        f"elapsed: {result.elapsed:.3f}s\n"
    )


def write_output(text: str, record: OutputRecord) -> None:
    """Write rendered text to the record's destination, or to standard output.

    Raises:
        OSError: if the destination cannot be written.
    """
    if record.destination is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(record.destination, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
