"""Per-step trace records written as JSON lines."""

from __future__ import annotations

import json
from collections.abc import Callable
from typing import IO, NamedTuple

__all__ = ["JsonLinesTrace", "StepRecord", "TraceSink", "read_trace"]


class StepRecord(NamedTuple):
    step: int
    mode: str
    instances: int  # rule instances enumerated in the step
    derived: int
    inserted: int  # derived facts that added content
    delta: int
    dropped: tuple[str, ...]
    elapsed: float  # seconds spent in the step
    peak_kib: int | None = None

    def to_json(self) -> str:
        payload = self._asdict()
        payload["dropped"] = list(self.dropped)
        return json.dumps(payload, sort_keys=True)


TraceSink = Callable[[StepRecord], None]


class JsonLinesTrace:
    """Writes each record as one JSON object per line."""

    def __init__(self, stream: IO[str], **extra: str) -> None:
        self._stream = stream
        self._extra = extra
        self.records: list[StepRecord] = []

    def __call__(self, record: StepRecord) -> None:
        self.records.append(record)
        line = record.to_json()
        if self._extra:
            payload = json.loads(line)
            payload.update(self._extra)
            line = json.dumps(payload, sort_keys=True)
        self._stream.write(line + "\n")
        self._stream.flush()


def read_trace(lines: IO[str]) -> list[dict[str, object]]:
    return [json.loads(line) for line in lines if line.strip()]
