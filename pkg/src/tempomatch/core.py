"""Timed words, event-line parsing and the restriction operator."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, TextIO

__all__ = [
    "Event",
    "TimedWord",
    "EventStream",
    "ParseError",
    "StreamOrderError",
    "parse_event_line",
    "format_event",
    "read_events",
    "restrict",
]

_LABEL_RE = re.compile(r"[A-Za-z0-9]")
_NUMBER_RE = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")


class ParseError(ValueError):
    """Malformed event line. ``lineno`` is 1-based, or None when unknown."""

    def __init__(self, message: str, lineno: Optional[int] = None):
        self.lineno = lineno
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(where + message)


class StreamOrderError(ValueError):
    """Raised when an event stream goes backwards in time."""

    def __init__(self, message: str, index: Optional[int] = None):
        self.index = index
        super().__init__(message)


def is_label(symbol) -> bool:
    return isinstance(symbol, str) and len(symbol) == 1 and bool(_LABEL_RE.fullmatch(symbol))


@dataclass(frozen=True)
class Event:
    label: str
    time: float

    def __post_init__(self):
        if not is_label(self.label):
            raise ValueError(f"label must be one alphanumeric character, got {self.label!r}")
        if not (math.isfinite(self.time) and self.time >= 0):
            raise ValueError(f"timestamp must be finite and non-negative, got {self.time!r}")


@dataclass(frozen=True)
class TimedWord:
    """A finite, time-monotone sequence of events."""

    events: tuple = ()

    def __post_init__(self):
        events = tuple(self.events)
        object.__setattr__(self, "events", events)
        for k in range(len(events) - 1):
            if events[k + 1].time < events[k].time:
                raise StreamOrderError(
                    f"timestamps decrease at event {k + 2}: "
                    f"{events[k + 1].time!r} < {events[k].time!r}",
                    k + 2,
                )

    @classmethod
    def of(cls, *pairs) -> "TimedWord":
        """``TimedWord.of(("a", 0.5), ("b", 1.0))``"""
        return cls(tuple(Event(a, float(t)) for a, t in pairs))

    def __len__(self):
        return len(self.events)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)

    def __getitem__(self, k):
        return self.events[k]

    def pairs(self):
        return [(e.label, e.time) for e in self.events]


class EventStream:
    """Single-pass event source that enforces non-decreasing timestamps.

    The check happens when an event is pulled, so a bad event surfaces
    only once the consumer reaches it.
    """

    def __init__(self, source: Iterable[Event]):
        self._it = iter(source)
        self._last = None
        self.pulled = 0
        self.ended = False

    def __iter__(self):
        return self

    def __next__(self) -> Event:
        if self.ended:
            raise StopIteration
        try:
            ev = next(self._it)
        except StopIteration:
            self.ended = True
            raise
        if self._last is not None and ev.time < self._last:
            self.ended = True
            raise StreamOrderError(
                f"event {self.pulled + 1} goes back in time: {ev.time!r} < {self._last!r}",
                self.pulled + 1,
            )
        self._last = ev.time
        self.pulled += 1
        return ev

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "EventStream":
        return cls(read_events(lines))


def parse_event_line(line: str, lineno: Optional[int] = None) -> Optional[Event]:
    """Parse ``<label> <timestamp>``; returns None for blank and ``#`` lines."""
    text = line.strip()
    if not text or text.startswith("#"):
        return None
    fields = text.split()
    if len(fields) != 2:
        raise ParseError(f"expected '<label> <timestamp>', got {text!r}", lineno)
    label, stamp = fields
    if not is_label(label):
        raise ParseError(f"label must be a single alphanumeric character, got {label!r}", lineno)
    if not _NUMBER_RE.fullmatch(stamp):
        raise ParseError(f"unparsable timestamp {stamp!r}", lineno)
    time = float(stamp)
    if not math.isfinite(time):
        raise ParseError(f"timestamp out of range {stamp!r}", lineno)
    if time < 0:
        raise ParseError(f"negative timestamp {stamp!r}", lineno)
    return Event(label, time + 0.0)


def format_event(ev: Event) -> str:
    return f"{ev.label} {ev.time!r}"


def read_events(lines: Iterable[str]) -> Iterator[Event]:
    """Lazily parse event lines (a file object, stdin, or any iterable of str)."""
    for lineno, line in enumerate(lines, start=1):
        ev = parse_event_line(line, lineno)
        if ev is not None:
            yield ev


def write_events(events: Iterable[Event], fp: TextIO) -> None:
    for ev in events:
        fp.write(format_event(ev) + "\n")


def restrict(w: TimedWord, t: float, t_prime: float) -> TimedWord:
    """Events strictly inside (t, t_prime), re-timed relative to t."""
    if not t < t_prime:
        raise ValueError(f"restriction needs t < t', got t={t!r}, t'={t_prime!r}")
    return TimedWord(tuple(Event(e.label, e.time - t) for e in w.events if t < e.time < t_prime))
