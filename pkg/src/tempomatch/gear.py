"""Synthetic automatic-transmission logs and a small benchmark driver.

Events use single-character labels: gears ``1``..``4``, ``H`` for engine
speed at or above the threshold and ``L`` below it.  The gear walks
1 -> 2 -> 3 -> 4 -> 3 -> 2 -> 1 -> ... and between two gear changes the log
carries up to two engine-speed readings.
"""

from __future__ import annotations

import itertools
import random
import statistics
import time
from dataclasses import dataclass
from typing import Iterator, List, Optional

from .automata import build_skip_tables, compile_tre
from .core import Event, TimedWord
from .matcher import MatchEngine, MatchStats

# gear shifts 1..4 with a high engine speed reading within 10 s, then
# gears 3/4 with any engine speed for more than 1 s
GEAR_TRE = "(1234H|123H4|12H34|1H234|H1234)%(0,10)(3|4|L|H)+%(1,1000)"

GRID = 8  # timestamps are multiples of 1/GRID
MAX_DWELL = 2
_DWELL_WEIGHTS = (5, 3, 2)


@dataclass(frozen=True)
class GearGenConfig:
    count: int
    seed: int = 0
    mean_gap: float = 1.0

    def __post_init__(self):
        if self.count < 1:
            raise ValueError(f"event count must be positive, got {self.count}")
        if not self.mean_gap > 0:
            raise ValueError(f"mean gap must be positive, got {self.mean_gap}")


def iter_gear_events(seed: int = 0, mean_gap: float = 1.0) -> Iterator[Event]:
    """Endless event source; every prefix depends only on ``seed`` and ``mean_gap``."""
    rng = random.Random(seed)
    now = 0.0
    gear, step = 1, 1

    def tick():
        nonlocal now
        now += max(1, round(rng.expovariate(1.0 / mean_gap) * GRID)) / GRID
        return now

    while True:
        yield Event(str(gear), tick())
        dwell = rng.choices(range(MAX_DWELL + 1), weights=_DWELL_WEIGHTS)[0]
        for _ in range(dwell):
            yield Event("H" if rng.random() < 0.5 else "L", tick())
        if not 1 <= gear + step <= 4:
            step = -step
        gear += step


def generate_gear_word(cfg: GearGenConfig) -> TimedWord:
    return TimedWord(tuple(itertools.islice(iter_gear_events(cfg.seed, cfg.mean_gap), cfg.count)))


@dataclass
class BenchRow:
    events: int
    algorithm: str
    seconds: float  # median over repeats
    stats: MatchStats


def time_match(ta, tables, word: TimedWord, repeats: int = 5) -> BenchRow:
    samples = []
    stats = None
    for _ in range(repeats):
        engine = MatchEngine(ta, tables)
        start = time.perf_counter()
        stats = engine.run(word.events, lambda m: None)
        samples.append(time.perf_counter() - start)
    return BenchRow(len(word), "brute" if tables is None else "fjs", statistics.median(samples), stats)


def run_benchmark(
    sizes=(10_000, 20_000, 40_000),
    seed: int = 0,
    repeats: int = 5,
    algorithms=("fjs", "brute"),
    pattern: Optional[str] = None,
) -> List[BenchRow]:
    ta = compile_tre(pattern or GEAR_TRE)
    tables = build_skip_tables(ta)
    longest = generate_gear_word(GearGenConfig(max(sizes), seed))
    rows = []
    for n in sizes:
        word = TimedWord(longest.events[:n])
        for algo in algorithms:
            rows.append(time_match(ta, tables if algo == "fjs" else None, word, repeats))
    return rows
