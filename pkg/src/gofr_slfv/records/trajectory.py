"""JSON Lines codec for event logs.

Line 1 is a header ``{"schema_version", "kind": "header", "params"}``; every
following line is one event ``{n, center, uniform, positive, freq_at_center}``.
Floats are written with their shortest round-trip repr, so a decoded log
replays to the same state bit for bit.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, List, Tuple

from pydantic import ValidationError as PydanticValidationError

from gofr_slfv.chain import Event, Params, Trajectory
from gofr_slfv.exceptions import RecordError
from gofr_slfv.logger import get_logger

logger = get_logger("gofr-slfv.records")

SCHEMA_VERSION = 1
HEADER_KIND = "header"


def _dumps(record: dict) -> str:
    return json.dumps(record, allow_nan=False, separators=(",", ":"))


def write_events(path: Path, params: Params, events: Iterable[Event]) -> int:
    """Write a header and ``events`` to ``path``; returns the event count."""
    path = Path(path)
    header = {"schema_version": SCHEMA_VERSION, "kind": HEADER_KIND, "params": params.to_dict()}
    count = 0
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(_dumps(header) + "\n")
            for event in events:
                f.write(_dumps(event.to_dict()) + "\n")
                count += 1
    except OSError as e:
        logger.error("Failed to write event log", path=str(path), error=str(e))
        raise RecordError(f"Failed to write event log: {e}", details={"path": str(path)}) from e
    logger.debug("Event log written", path=str(path), events=count)
    return count


def write_trajectory(path: Path, trajectory: Trajectory) -> int:
    return write_events(path, trajectory.params, trajectory.events)


def _parse_header(line: str, path: Path) -> Params:
    try:
        header = json.loads(line)
    except json.JSONDecodeError as e:
        raise RecordError(f"Malformed header: {e}", details={"path": str(path)}) from e
    if not isinstance(header, dict) or header.get("kind") != HEADER_KIND:
        raise RecordError("First line is not a header record", details={"path": str(path)})
    version = header.get("schema_version")
    if version != SCHEMA_VERSION:
        raise RecordError(
            f"Unsupported schema_version {version!r}",
            code="SCHEMA_VERSION",
            details={"path": str(path), "expected": SCHEMA_VERSION},
        )
    try:
        return Params.model_validate(header.get("params", {}))
    except PydanticValidationError as e:
        raise RecordError(f"Invalid params in header: {e}", details={"path": str(path)}) from e


def read_trajectory(path: Path) -> Tuple[Params, List[Event]]:
    """Decode a log written by :func:`write_trajectory`.

    Raises:
        RecordError: unreadable file, bad header, unknown schema version or
            a malformed event line
    """
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = [line for line in f if line.strip()]
    except OSError as e:
        raise RecordError(f"Failed to read event log: {e}", details={"path": str(path)}) from e
    if not lines:
        raise RecordError("Event log is empty", details={"path": str(path)})
    params = _parse_header(lines[0], path)
    events: List[Event] = []
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise RecordError(
                f"Malformed event line {lineno}: {e}", details={"path": str(path)}
            ) from e
        if not isinstance(record, dict):
            raise RecordError(f"Event line {lineno} is not an object", details={"path": str(path)})
        events.append(Event.from_dict(record))
    return params, events
