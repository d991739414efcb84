"""Checkpoint stores for resumable sweeps."""
from typing import Any, List, Optional

import structlog  # type: ignore

from collatzk.models import CheckpointRecord


class BaseCheckpointStore:
    """Reference checkpoint store to be implemented in different backends.

    A store is an append-only log of CheckpointRecords; the last record wins.
    """

    def __init__(
        self,  # pylint: disable=unused-argument
        *args: Any,  # pylint: disable=unused-argument
        name: str = "",
        **kwargs: Any,  # pylint: disable=unused-argument
    ) -> None:
        """Init method for BaseCheckpointStore."""
        self.name = name or self.__class__.__name__
        self._log = structlog.get_logger().new(store=str(self))

    def __str__(self) -> str:
        """Render store name."""
        return self.name

    def __len__(self) -> int:
        """Number of records stored."""
        return len(self.records())

    def append(self, record: CheckpointRecord) -> None:
        """Durably add a record after the existing ones.

        Raises:
            CheckpointIOError: if the record could not be persisted; earlier records stay intact.
        """
        raise NotImplementedError

    def records(self) -> List[CheckpointRecord]:
        """All records in the order they were appended.

        Raises:
            CheckpointIOError: if stored records cannot be read back.
        """
        raise NotImplementedError

    def clear(self) -> None:
        """Drop every record."""
        raise NotImplementedError

    def latest(self) -> Optional[CheckpointRecord]:
        """The most recent record, or None for an empty store."""
        records = self.records()
        return records[-1] if records else None
