"""
Output sinks for JSON reports and text exports.
"""
import json
import sys
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Optional, TextIO


class ReportSink(ABC):
    """Abstract destination for command output."""

    @abstractmethod
    def write_text(self, text: str) -> None:
        """Write raw text."""
        pass

    def write_json(self, payload: Any) -> None:
        """Write one JSON document."""
        self.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


class StreamSink(ReportSink):
    """Writes to an open text stream (stdout by default)."""

    def __init__(self, stream: Optional[TextIO] = None):
        self.stream = stream

    def write_text(self, text: str) -> None:
        stream = self.stream or sys.stdout
        stream.write(text)
        stream.flush()


class FileSink(ReportSink):
    """Writes to a file, replacing previous contents on first write."""

    def __init__(self, path: str):
        self.path = Path(path)
        self._opened = False

    def write_text(self, text: str) -> None:
        if self.path.parent and not self.path.parent.exists():
            self.path.parent.mkdir(parents=True, exist_ok=True)
        mode = "a" if self._opened else "w"
        with open(self.path, mode, encoding="utf-8") as handle:
            handle.write(text)
        self._opened = True


class MemorySink(ReportSink):
    """Collects output in memory."""

    def __init__(self):
        self.chunks = []

    def write_text(self, text: str) -> None:
        self.chunks.append(text)

    @property
    def text(self) -> str:
        return "".join(self.chunks)

    def json(self) -> Any:
        return json.loads(self.text)


# Default sink - can be replaced at runtime
sink_instance = None


def get_sink() -> ReportSink:
    """Get the current sink, defaulting to stdout."""
    global sink_instance
    if sink_instance is None:
        sink_instance = StreamSink()
    return sink_instance


def set_sink(sink: Optional[ReportSink]) -> None:
    """Set the current sink."""
    global sink_instance
    sink_instance = sink
