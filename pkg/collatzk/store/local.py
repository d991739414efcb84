"""LocalCheckpointStore module."""
from typing import Any, List

from collatzk.models import CheckpointRecord
from collatzk.store import BaseCheckpointStore


class LocalCheckpointStore(BaseCheckpointStore):
    """In-memory checkpoint store, for tests and for sweeps that do not need to survive the process."""

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        """Init method for LocalCheckpointStore."""
        super().__init__(*args, **kwargs)

        self._data: List[CheckpointRecord] = []

    def append(self, record: CheckpointRecord) -> None:
        """Add a record after the existing ones."""
        self._data.append(record)
        self._log.debug("Checkpoint stored", next_start=record.next_start)

    def records(self) -> List[CheckpointRecord]:
        """All records in the order they were appended."""
        return list(self._data)

    def clear(self) -> None:
        """Drop every record."""
        self._data.clear()
