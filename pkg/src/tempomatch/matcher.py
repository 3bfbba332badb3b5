"""Timed pattern matching: symbolic trials, brute force and FJS-style skipping.

A *trial* at start segment ``i`` covers every start ``t`` in
``[tau_{i-1}, tau_i)`` at once.  Within a trial each clock is either reset at
a known timestamp (its value at time ``x`` is ``x - r``) or has never been
reset (its value is ``x - t``), so the only symbolic quantity while events
are consumed is ``t`` itself, kept as one interval per configuration.  At
the end of every consumed prefix ``i..j`` the end ``t'`` ranges over
``(tau_j, tau_{j+1}]`` and terminal guards turn into bounds on ``t'`` and
``t' - t``.

Trials run one at a time over a sliding buffer of pulled events; zones are
reported as soon as the running trial determines them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, NamedTuple, Optional

from .automata import SkipTables, TimedAutomaton
from .core import Event, EventStream, ParseError, StreamOrderError
from .zones import (
    EMPTY,
    INF,
    Bound,
    MatchZone,
    interval_empty,
    normalize_zone,
    tighter_lower,
    tighter_upper,
)

log = logging.getLogger(__name__)

_POSITIVE = Bound(0.0, True)


class Configuration(NamedTuple):
    location: int
    resets: tuple  # per clock: timestamp of last reset, or None if never reset
    t_lo: Bound
    t_hi: Bound


class Match(NamedTuple):
    start: int  # start segment i: t in [tau_{i-1}, tau_i)
    end: int  # last consumed event j (i - 1 for zero-event matches)
    zone: MatchZone


@dataclass
class TrialOutcome:
    zones: List[MatchZone]
    progress: int
    lookahead_label: Optional[str] = None


@dataclass
class MatchStats:
    trials_run: int = 0
    trials_gate_skipped: int = 0
    events_read: int = 0
    zones_emitted: int = 0
    peak_buffer: int = 0


@dataclass
class MatchReport:
    zones: List[MatchZone] = field(default_factory=list)
    matches: List[Match] = field(default_factory=list)
    stats: MatchStats = field(default_factory=MatchStats)
    valid: bool = True
    error: Optional[str] = None


class _Program:
    """Transition lookup tables for one automaton."""

    def __init__(self, ta: TimedAutomaton):
        self.clock_count = ta.clock_count
        self.initial = ta.initial
        self.accepting = frozenset(ta.accepting)
        self.moves = {}
        self.finals = {}
        for tr in ta.transitions:
            guards = tuple((g.clock, g.op, g.constant) for g in tr.guards)
            if tr.terminal:
                if tr.target in self.accepting:
                    self.finals.setdefault(tr.source, []).append(guards)
            else:
                resets = tuple(sorted(tr.resets))
                self.moves.setdefault((tr.source, tr.label), []).append((tr.target, guards, resets))


class _Window:
    """Sliding buffer over a single-pass event stream, 1-indexed."""

    def __init__(self, events: Iterable[Event]):
        self._stream = events if isinstance(events, EventStream) else EventStream(events)
        self._buf: List[Event] = []
        self._offset = 0
        self._first = 1  # index of self._buf[self._offset]
        self.ended = False
        self.read = 0
        self.peak = 0

    def get(self, k: int) -> Optional[Event]:
        if k < self._first:
            raise IndexError(f"event {k} already released")
        pos = k - self._first + self._offset
        while pos >= len(self._buf):
            if self.ended:
                return None
            try:
                ev = next(self._stream)
            except StopIteration:
                self.ended = True
                return None
            self._buf.append(ev)
            self.read += 1
            held = len(self._buf) - self._offset
            if held > self.peak:
                self.peak = held
        return self._buf[pos]

    def time(self, k: int) -> float:
        return 0.0 if k == 0 else self.get(k).time

    def release(self, k: int) -> None:
        """Forget events with index < k."""
        k = min(k, self._first + len(self._buf) - self._offset)
        if k <= self._first:
            return
        self._offset += k - self._first
        self._first = k
        if self._offset > 1024 and self._offset * 2 > len(self._buf):
            del self._buf[: self._offset]
            self._offset = 0


def _touching(lo1: Bound, hi1: Bound, lo2: Bound, hi2: Bound) -> bool:
    """Whether the union of the two intervals is itself an interval."""
    if hi1.value < lo2.value or (hi1.value == lo2.value and hi1.strict and lo2.strict):
        return False
    if hi2.value < lo1.value or (hi2.value == lo1.value and hi2.strict and lo1.strict):
        return False
    return True


def _looser_lower(a: Bound, b: Bound) -> Bound:
    if b.value < a.value or (b.value == a.value and a.strict and not b.strict):
        return b
    return a


def _looser_upper(a: Bound, b: Bound) -> Bound:
    if b.value > a.value or (b.value == a.value and a.strict and not b.strict):
        return b
    return a


def _add_config(new: list, index: dict, cfg: Configuration) -> None:
    key = (cfg.location, cfg.resets)
    slots = index.get(key)
    if slots is None:
        index[key] = [len(new)]
        new.append(cfg)
        return
    for s in slots:
        old = new[s]
        if _touching(old.t_lo, old.t_hi, cfg.t_lo, cfg.t_hi):
            new[s] = Configuration(
                cfg.location,
                cfg.resets,
                _looser_lower(old.t_lo, cfg.t_lo),
                _looser_upper(old.t_hi, cfg.t_hi),
            )
            return
    slots.append(len(new))
    new.append(cfg)


def _end_zone(cfg: Configuration, guards: tuple, tp_lo: Bound, tp_hi: Bound):
    """Zone for ending the interval at this configuration under terminal ``guards``."""
    d_lo, d_hi = _POSITIVE, INF
    for clock, op, c in guards:
        r = cfg.resets[clock]
        if r is None:
            # clock reads t' - t
            if op == "<":
                d_hi = tighter_upper(d_hi, Bound(float(c), True))
            elif op == "<=":
                d_hi = tighter_upper(d_hi, Bound(float(c), False))
            elif op == ">":
                d_lo = tighter_lower(d_lo, Bound(float(c), True))
            else:
                d_lo = tighter_lower(d_lo, Bound(float(c), False))
        else:
            # clock reads t' - r
            if op == "<":
                tp_hi = tighter_upper(tp_hi, Bound(c + r, True))
            elif op == "<=":
                tp_hi = tighter_upper(tp_hi, Bound(c + r, False))
            elif op == ">":
                tp_lo = tighter_lower(tp_lo, Bound(c + r, True))
            else:
                tp_lo = tighter_lower(tp_lo, Bound(c + r, False))
    return normalize_zone(MatchZone(cfg.t_lo, cfg.t_hi, tp_lo, tp_hi, d_lo, d_hi))


def _step(prog: _Program, cfg: Configuration, label: str, tau: float, new: list, index: dict) -> None:
    for target, guards, resets in prog.moves.get((cfg.location, label), ()):
        lo, hi = cfg.t_lo, cfg.t_hi
        ok = True
        for clock, op, c in guards:
            r = cfg.resets[clock]
            if r is not None:
                v = tau - r
                if op == "<":
                    ok = v < c
                elif op == "<=":
                    ok = v <= c
                elif op == ">":
                    ok = v > c
                else:
                    ok = v >= c
            else:
                # tau - t op c  <=>  t op' tau - c
                edge = tau - c
                if op == "<":
                    lo = tighter_lower(lo, Bound(edge, True))
                elif op == "<=":
                    lo = tighter_lower(lo, Bound(edge, False))
                elif op == ">":
                    hi = tighter_upper(hi, Bound(edge, True))
                else:
                    hi = tighter_upper(hi, Bound(edge, False))
                ok = not interval_empty(lo, hi)
            if not ok:
                break
        if not ok:
            continue
        if resets:
            rs = list(cfg.resets)
            for clock in resets:
                rs[clock] = tau
            new_resets = tuple(rs)
        else:
            new_resets = cfg.resets
        _add_config(new, index, Configuration(target, new_resets, lo, hi))


def _trial(prog: _Program, win: _Window, i: int, emit: Callable[[Match], None]) -> int:
    """Run the trial for start segment ``i``; returns the number of events consumed."""
    prev = win.time(i - 1)
    nxt = win.get(i)
    t_lo = Bound(prev, False)
    t_hi = Bound(nxt.time, True) if nxt is not None else INF
    if interval_empty(t_lo, t_hi):
        return 0
    blank = (None,) * prog.clock_count
    configs = [Configuration(q, blank, t_lo, t_hi) for q in prog.initial]
    accepting = prog.accepting
    finals = prog.finals
    j = i - 1
    tp_lo = Bound(prev, True)
    while True:
        tp_hi = Bound(nxt.time, False) if nxt is not None else INF
        if not interval_empty(tp_lo, tp_hi):
            seen = set()
            for cfg in configs:
                if cfg.location in accepting:
                    z = _end_zone(cfg, (), tp_lo, tp_hi)
                    if z is not EMPTY and z not in seen:
                        seen.add(z)
                        emit(Match(i, j, z))
                for guards in finals.get(cfg.location, ()):
                    z = _end_zone(cfg, guards, tp_lo, tp_hi)
                    if z is not EMPTY and z not in seen:
                        seen.add(z)
                        emit(Match(i, j, z))
        if nxt is None:
            return j - i + 1
        new: list = []
        index: dict = {}
        for cfg in configs:
            _step(prog, cfg, nxt.label, nxt.time, new, index)
        if not new:
            return j - i + 1
        configs = new
        j += 1
        tp_lo = Bound(nxt.time, True)
        nxt = win.get(j + 1)


def run_trial(ta: TimedAutomaton, events, i: int) -> TrialOutcome:
    """Run the single trial for start segment ``i`` (1-based) over ``events``."""
    if i < 1:
        raise ValueError("start segment index is 1-based")
    win = _Window(events)
    if i > 1 and win.get(i - 1) is None:
        raise ValueError(f"start segment {i} lies beyond the end of the word")
    zones: List[MatchZone] = []
    progress = _trial(_Program(ta), win, i, lambda m: zones.append(m.zone))
    return TrialOutcome(zones, progress)


class MatchEngine:
    """Single-pass matcher over one event stream.

    With ``tables`` the scan skips start segments using the FJS-style
    tables; without, every start segment is tried (brute force).  Matches
    are handed to ``on_match`` the moment they are determined, before the
    next event is pulled by the running trial.
    """

    def __init__(self, ta: TimedAutomaton, tables: Optional[SkipTables] = None):
        self.ta = ta
        self.tables = tables
        self.stats = MatchStats()
        self._prog = _Program(ta)

    def run(self, events: Iterable[Event], on_match: Callable[[Match], None]) -> MatchStats:
        """Scan ``events``; stream errors propagate after partial emission."""
        win = _Window(events)

        def emit(m: Match) -> None:
            self.stats.zones_emitted += 1
            on_match(m)

        try:
            if self.tables is None:
                self._scan_brute(win, emit)
            else:
                self._scan_fjs(win, emit)
        finally:
            self.stats.events_read = win.read
            self.stats.peak_buffer = win.peak
        return self.stats

    def _scan_brute(self, win: _Window, emit) -> None:
        i = 1
        while True:
            win.release(i - 1)
            self.stats.trials_run += 1
            _trial(self._prog, win, i, emit)
            if win.get(i) is None:
                return
            i += 1

    def _scan_fjs(self, win: _Window, emit) -> None:
        tables = self.tables
        n_min = tables.n_min
        i = 1
        while True:
            win.release(i - 1)
            gate_label = None
            if n_min >= 1:
                ev = win.get(i + n_min - 1)
                if ev is None:
                    # no room left for a match of n_min events
                    return
                gate_label = ev.label
                if gate_label not in tables.gate:
                    self.stats.trials_gate_skipped += 1
                    i += tables.shift_for(gate_label)
                    continue
            self.stats.trials_run += 1
            progress = _trial(self._prog, win, i, emit)
            if n_min == 0 and win.get(i) is None:
                return
            shift = tables.beta_for(progress)
            if gate_label is not None:
                shift = max(shift, tables.shift_for(gate_label))
            i += max(shift, 1)


def _collect(ta: TimedAutomaton, tables: Optional[SkipTables], events) -> MatchReport:
    report = MatchReport()
    engine = MatchEngine(ta, tables)

    def keep(m: Match) -> None:
        report.matches.append(m)
        report.zones.append(m.zone)

    try:
        engine.run(events, keep)
    except (StreamOrderError, ParseError) as err:
        log.warning("input aborted: %s", err)
        report.valid = False
        report.error = str(err)
    report.stats = engine.stats
    return report


def match_brute(ta: TimedAutomaton, events) -> MatchReport:
    """Every matching interval, trying every start segment."""
    return _collect(ta, None, events)


def match_fjs(ta: TimedAutomaton, tables: SkipTables, events) -> MatchReport:
    """Same zone set as :func:`match_brute`, skipping provably fruitless starts."""
    return _collect(ta, tables, events)
