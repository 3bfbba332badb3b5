"""Timed pattern matching over timestamped event logs."""

from .automata import (
    SkipTables,
    TimedAutomaton,
    build_skip_tables,
    compile_tre,
    load_ta,
    parse_tre,
    validate_ta,
)
from .core import Event, EventStream, TimedWord, parse_event_line, restrict
from .matcher import MatchEngine, MatchReport, match_brute, match_fjs, run_trial
from .oracle import accepts_restriction
from .zones import EMPTY, Bound, MatchZone, normalize_zone, zone_contains, zone_equal

__version__ = "0.1.0"
