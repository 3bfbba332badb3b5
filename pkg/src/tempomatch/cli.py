"""Command-line front ends.

``tempomatch``        match a TRE (``-e``) or automaton file (``-f``) against a log
``tempomatch-gen``    write a synthetic gear-change log
``tempomatch-bench``  time the gear pattern on generated logs
"""

from __future__ import annotations

import argparse
import sys
import time
from decimal import Decimal
from typing import List, Optional

from .automata import (
    EmptyLanguageError,
    TRESyntaxError,
    build_skip_tables,
    compile_tre,
    load_ta,
)
from .core import EventStream, ParseError, StreamOrderError, format_event
from .gear import GEAR_TRE, GearGenConfig, iter_gear_events, run_benchmark
from .matcher import MatchEngine
from .zones import Bound, MatchZone

EXIT_OK, EXIT_USAGE, EXIT_INPUT = 0, 1, 2
SEPARATOR = "=" * 29


class UsageError(Exception):
    pass


class _Stop(Exception):
    pass


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def format_number(v: float) -> str:
    if v == 0:
        return "0"
    s = f"{v:.10g}"
    if "e" in s:
        s = format(Decimal(s), "f")
        if "." in s:
            s = s.rstrip("0").rstrip(".")
    return s


def _bounds_line(lo: Bound, name: str, hi: Bound) -> str:
    if lo.value == float("-inf"):
        left = "-inf <"
    else:
        left = f"{format_number(lo.value)} {'<' if lo.strict else '<='}"
    if hi.value == float("inf"):
        right = "< inf"
    else:
        right = f"{'<' if hi.strict else '<='} {format_number(hi.value)}"
    return f"{left} {name} {right}"


def format_zone(z: MatchZone) -> str:
    return "\n".join(
        [
            _bounds_line(z.t_lo, "t", z.t_hi),
            _bounds_line(z.tp_lo, "t'", z.tp_hi),
            _bounds_line(z.d_lo, "t' - t", z.d_hi),
            SEPARATOR,
        ]
    ) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    p = _ArgParser(prog="tempomatch", description="Timed pattern matching over a timestamped event log.")
    p.add_argument("-e", "--expr", metavar="TRE", help="timed regular expression pattern")
    p.add_argument("-f", "--automaton", metavar="TA.json", help="timed automaton file")
    p.add_argument("-i", "--input", metavar="PATH", help="event log (default: standard input)")
    p.add_argument("--algorithm", choices=("fjs", "brute"), default="fjs")
    p.add_argument("--stats", action="store_true", help="print scan statistics to stderr")
    p.add_argument("-q", "--quiet", action="store_true", help="print only the zone count, to stderr")
    p.add_argument("--first", action="store_true", help="stop after the first match")
    return p


def run_cli(argv: Optional[List[str]] = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr

    def fail(code: int, message: str) -> int:
        print(f"tempomatch: {message}", file=stderr)
        return code

    try:
        args = _build_parser().parse_args(argv)
        if (args.expr is None) == (args.automaton is None):
            raise UsageError("give exactly one pattern source: -e TRE or -f TA.json")
    except UsageError as err:
        return fail(EXIT_USAGE, f"usage error: {err}")

    try:
        ta = compile_tre(args.expr) if args.expr is not None else load_ta(args.automaton)
    except TRESyntaxError as err:
        return fail(EXIT_INPUT, str(err))
    except OSError as err:
        return fail(EXIT_INPUT, f"cannot read automaton: {err}")
    except ValueError as err:
        return fail(EXIT_INPUT, str(err))

    tables = None
    if args.algorithm == "fjs":
        try:
            tables = build_skip_tables(ta)
        except EmptyLanguageError as err:
            return fail(EXIT_INPUT, str(err))

    try:
        source = open(args.input, encoding="utf-8") if args.input else stdin
    except OSError as err:
        return fail(EXIT_INPUT, f"cannot read input: {err}")

    engine = MatchEngine(ta, tables)

    def on_match(m):
        if not args.quiet:
            stdout.write(format_zone(m.zone))
            stdout.flush()
        if args.first:
            raise _Stop

    started = time.perf_counter()
    code = EXIT_OK
    try:
        engine.run(EventStream.from_lines(source), on_match)
    except _Stop:
        pass
    except (ParseError, StreamOrderError) as err:
        code = fail(EXIT_INPUT, f"bad input: {err}")
    finally:
        if source is not stdin:
            source.close()
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    s = engine.stats
    if args.quiet:
        print(f"zones={s.zones_emitted}", file=stderr)
    if args.stats:
        print(
            f"trials={s.trials_run} gate_skipped={s.trials_gate_skipped} "
            f"events={s.events_read} zones={s.zones_emitted} time_ms={elapsed_ms:.0f}",
            file=stderr,
        )
    return code


def run_gen(argv: Optional[List[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    p = _ArgParser(prog="tempomatch-gen", description="Write a synthetic gear-change log.")
    p.add_argument("count", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mean-gap", type=float, default=1.0)
    try:
        args = p.parse_args(argv)
        cfg = GearGenConfig(args.count, args.seed, args.mean_gap)
    except (UsageError, ValueError) as err:
        print(f"tempomatch-gen: usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    events = iter_gear_events(cfg.seed, cfg.mean_gap)
    for _ in range(cfg.count):
        stdout.write(format_event(next(events)) + "\n")
    return EXIT_OK


def run_bench(argv: Optional[List[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    p = _ArgParser(prog="tempomatch-bench", description="Time the gear pattern on generated logs.")
    p.add_argument("--sizes", type=int, nargs="+", default=[10_000, 20_000, 40_000])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("-e", "--expr", default=GEAR_TRE)
    try:
        args = p.parse_args(argv)
    except UsageError as err:
        print(f"tempomatch-bench: usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    rows = run_benchmark(args.sizes, args.seed, args.repeats, pattern=args.expr)
    print(f"{'events':>8} {'algorithm':>9} {'seconds':>9} {'trials':>8} {'skipped':>8} {'zones':>7} {'peak_buf':>8}", file=stdout)
    for r in rows:
        s = r.stats
        print(
            f"{r.events:>8} {r.algorithm:>9} {r.seconds:>9.4f} {s.trials_run:>8} "
            f"{s.trials_gate_skipped:>8} {s.zones_emitted:>7} {s.peak_buffer:>8}",
            file=stdout,
        )
    return EXIT_OK


def main() -> None:
    sys.exit(run_cli())


def gen_main() -> None:
    sys.exit(run_gen())


def bench_main() -> None:
    sys.exit(run_bench())


if __name__ == "__main__":
    main()
