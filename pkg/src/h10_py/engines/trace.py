"""Tab-separated step traces: kind, index, detail, answer."""

import logging
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import TextIO

logger = logging.getLogger(__name__)


def _clean(field: object) -> str:
    return " ".join(str(field).split())


class TraceWriter:
    """Writes one line per engine step to a text stream."""

    def __init__(self, stream: TextIO):
        self._stream = stream
        self.lines = 0

    @classmethod
    @contextmanager
    def open(cls, path: str | Path) -> Iterator["TraceWriter"]:
        with open(path, "w", encoding="utf-8") as stream:
            writer = cls(stream)
            yield writer
        logger.info("wrote %d trace lines to %s", writer.lines, path)

    def record(self, kind: str, index: int, detail: object, answer: object) -> None:
        line = "\t".join((_clean(kind), str(index), _clean(detail), _clean(answer)))
        self._stream.write(line + "\n")
        self.lines += 1
