"""Event sinks for protocol traces and run records.

Protocol runs emit EventRecord objects with logical timestamps (slot or
control-round index), so trace files are reproducible byte for byte.
"""

import json
from abc import ABC, abstractmethod
from pathlib import Path

from wsn_graph_filtering.models import EventRecord


def _encode(event: EventRecord) -> str:
    # Single compact line per event
    return json.dumps(event.to_dict(), separators=(",", ":"))


class EventSink(ABC):
    """Abstract interface for recording protocol and run events.

    Schedulers call ``log`` for every event as it happens; implementations
    decide where the record goes (a file, stdout, memory).
    """

    @abstractmethod
    def log(self, event: EventRecord) -> None:
        """Record an event.

        Args:
            event: The EventRecord to record, carrying logical timestamp,
                   event kind, emitting protocol and event-specific details.
        """
        pass


class JSONLEventSink(EventSink):
    """Appends events to a JSONL (JSON Lines) file.

    Example file content:
        {"ts":0,"kind":"activate","source":"cdsa","detail":{"node":7,"n_interferers":99}}
        {"ts":0,"kind":"decrement","source":"cdsa","detail":{"n_interferers":98,"feasible":0}}
    """

    def __init__(self, log_path: Path):
        """Initialize JSONLEventSink with the trace file path.

        Args:
            log_path: Path to the JSONL file. Parent directories are created
                     if they don't exist; an existing file is appended to.
        """
        self.log_path = Path(log_path)
        self.log_path.parent.mkdir(parents=True, exist_ok=True)

    def log(self, event: EventRecord) -> None:
        """Append the event as a JSON line."""
        with open(self.log_path, "a", encoding="utf-8") as f:
            f.write(_encode(event) + "\n")


class StdoutEventSink(EventSink):
    """Prints events to stdout, one JSON line each.

    The CLI selects it for `--trace -`, so traces can be piped.
    """

    def log(self, event: EventRecord) -> None:
        """Print the event as a compact JSON line."""
        print(_encode(event))


class MemoryEventSink(EventSink):
    """Keeps events in a list, in emission order.

    Attributes:
        events: Every event logged so far
    """

    def __init__(self) -> None:
        self.events: list[EventRecord] = []

    def log(self, event: EventRecord) -> None:
        """Append the event to ``events``."""
        self.events.append(event)


def read_events(log_path: Path) -> list[EventRecord]:
    """Load every event from a JSONL trace file.

    Args:
        log_path: File written by JSONLEventSink; blank lines are skipped

    Returns:
        The events in file order

    Raises:
        json.JSONDecodeError: If a line is not valid JSON
        KeyError: If a record lacks a required field
    """
    with open(log_path, encoding="utf-8") as f:
        return [EventRecord.from_dict(json.loads(line)) for line in f if line.strip()]
