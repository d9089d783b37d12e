"""Event sinks and logging configuration."""

from wsn_graph_filtering.observability.events import (
    EventSink,
    JSONLEventSink,
    MemoryEventSink,
    StdoutEventSink,
    read_events,
)
from wsn_graph_filtering.observability.logging_setup import configure_logging

__all__ = [
    "EventSink",
    "JSONLEventSink",
    "MemoryEventSink",
    "StdoutEventSink",
    "configure_logging",
    "read_events",
]
