"""JsonLinesCheckpointStore module."""
import os
from pathlib import Path
from typing import Any, List, Union

from pydantic import ValidationError

from collatzk.exceptions import CheckpointIOError
from collatzk.models import CheckpointRecord
from collatzk.store import BaseCheckpointStore
from collatzk.utils import unlimited_int_digits


class JsonLinesCheckpointStore(BaseCheckpointStore):
    """Checkpoint file with one self-contained JSON object per line.

    The file is only ever appended to, and each append is flushed and fsynced before returning, so a crash leaves
    at worst a truncated final line. Such a line is ignored on read; every line before it is a durable checkpoint.
    """

    def __init__(self, *args: Any, path: Union[str, Path], **kwargs: Any) -> None:
        """Init method for JsonLinesCheckpointStore."""
        self.path = Path(path)
        kwargs.setdefault("name", str(self.path))
        super().__init__(*args, **kwargs)

    def _drop_partial_tail(self) -> None:
        """Cut an unterminated final line, left by a crash mid-append, back to the last newline."""
        try:
            with self.path.open("r+b") as handle:
                size = handle.seek(0, os.SEEK_END)
                if not size:
                    return
                handle.seek(size - 1)
                if handle.read(1) == b"\n":
                    return
                handle.seek(0)
                keep = handle.read().rfind(b"\n") + 1
                handle.truncate(keep)
                handle.flush()
                os.fsync(handle.fileno())
            self._log.warning("Dropped truncated final checkpoint line", dropped_bytes=size - keep)
        except FileNotFoundError:
            return

    def append(self, record: CheckpointRecord) -> None:
        """Write the record as one line and fsync it.

        An unterminated line at the end of the file is dropped first, so the new record starts a line of its own.

        Raises:
            CheckpointIOError: if the line could not be written and synced.
        """
        with unlimited_int_digits():
            line = record.model_dump_json() + "\n"
        try:
            self._drop_partial_tail()
            with self.path.open("a", encoding="utf-8", newline="\n") as handle:
                handle.write(line)
                handle.flush()
                os.fsync(handle.fileno())
        except OSError as err:
            raise CheckpointIOError(f"Unable to write checkpoint {self.path}: {err}") from err
        self._log.debug("Checkpoint written", next_start=record.next_start)

    def records(self) -> List[CheckpointRecord]:
        """Parse every complete line of the file; a missing file holds no records.

        Raises:
            CheckpointIOError: if the file cannot be read, or a line other than the last one is corrupt.
        """
        if not self.path.exists():
            return []
        try:
            lines = self.path.read_text(encoding="utf-8").splitlines()
        except OSError as err:
            raise CheckpointIOError(f"Unable to read checkpoint {self.path}: {err}") from err

        records = []
        lines = [line for line in lines if line.strip()]
        for index, line in enumerate(lines):
            try:
                with unlimited_int_digits():
                    records.append(CheckpointRecord.model_validate_json(line))
            except ValidationError as err:
                if index == len(lines) - 1:
                    self._log.warning("Ignoring truncated final checkpoint line", line=index + 1)
                    break
                raise CheckpointIOError(f"Corrupt checkpoint {self.path} at line {index + 1}") from err
        return records

    def clear(self) -> None:
        """Remove the checkpoint file."""
        try:
            self.path.unlink()
        except FileNotFoundError:
            pass
        except OSError as err:
            raise CheckpointIOError(f"Unable to remove checkpoint {self.path}: {err}") from err
