"""Timed automata: data model, validation and the JSON file format."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, List, Optional

from ..core import is_label

TERMINAL = "$"
GUARD_OPS = ("<", "<=", ">", ">=")


@dataclass(frozen=True)
class ClockGuard:
    clock: int
    op: str
    constant: int

    def holds(self, value: float) -> bool:
        c = self.constant
        if self.op == "<":
            return value < c
        if self.op == "<=":
            return value <= c
        if self.op == ">":
            return value > c
        return value >= c

    def __str__(self):
        return f"x{self.clock} {self.op} {self.constant}"


@dataclass(frozen=True)
class Transition:
    source: int
    target: int
    label: str
    guards: tuple = ()
    resets: frozenset = frozenset()

    @property
    def terminal(self) -> bool:
        return self.label == TERMINAL


@dataclass(frozen=True)
class Location:
    id: int
    initial: bool = False
    accepting: bool = False


@dataclass(frozen=True)
class TimedAutomaton:
    alphabet: frozenset
    clock_count: int
    locations: tuple
    transitions: tuple

    @property
    def location_ids(self):
        return [loc.id for loc in self.locations]

    @property
    def initial(self):
        return [loc.id for loc in self.locations if loc.initial]

    @property
    def accepting(self):
        return {loc.id for loc in self.locations if loc.accepting}

    def guard_constants(self):
        return sorted({g.constant for tr in self.transitions for g in tr.guards})


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    message: str

    def __str__(self):
        return f"{self.kind}: {self.message}"


class InvalidAutomatonError(ValueError):
    def __init__(self, diagnostics: List[Diagnostic], source: Optional[str] = None):
        self.diagnostics = list(diagnostics)
        head = f"{source}: " if source else ""
        super().__init__(head + "; ".join(str(d) for d in self.diagnostics))


def validate_ta(ta: TimedAutomaton) -> List[Diagnostic]:
    diags = []
    ids = [loc.id for loc in ta.locations]
    known = set(ids)
    if len(known) != len(ids):
        diags.append(Diagnostic("duplicate-location", "location ids are not unique"))
    if not any(loc.initial for loc in ta.locations):
        diags.append(Diagnostic("no-initial", "automaton has no initial location"))
    if ta.clock_count < 0:
        diags.append(Diagnostic("clock-count", f"negative clock count {ta.clock_count}"))
    for a in sorted(ta.alphabet):
        if not is_label(a):
            diags.append(Diagnostic("bad-label", f"alphabet entry {a!r} is not one alphanumeric character"))
    accepting = ta.accepting
    for n, tr in enumerate(ta.transitions):
        where = f"transition {n} ({tr.source} -{tr.label}-> {tr.target})"
        for end in (tr.source, tr.target):
            if end not in known:
                diags.append(Diagnostic("dangling-location", f"{where} refers to undeclared location {end}"))
        if tr.terminal:
            if tr.resets:
                diags.append(Diagnostic("terminal-reset", f"{where} is terminal but resets clocks"))
            if tr.target in known and tr.target not in accepting:
                diags.append(Diagnostic("terminal-non-accepting", f"{where} is terminal but its target is not accepting"))
        elif tr.label not in ta.alphabet:
            diags.append(Diagnostic("label-outside-alphabet", f"{where} uses label {tr.label!r} outside the alphabet"))
        for g in tr.guards:
            if not 0 <= g.clock < ta.clock_count:
                diags.append(Diagnostic("unknown-clock", f"{where} guards unknown clock {g.clock}"))
            if g.op not in GUARD_OPS:
                diags.append(Diagnostic("bad-guard-op", f"{where} uses guard operator {g.op!r}"))
            if not isinstance(g.constant, int) or g.constant < 0:
                diags.append(Diagnostic("bad-constant", f"{where} has guard constant {g.constant!r}"))
        for c in tr.resets:
            if not 0 <= c < ta.clock_count:
                diags.append(Diagnostic("unknown-clock", f"{where} resets unknown clock {c}"))
    return diags


def make_ta(alphabet: Iterable[str], clock_count: int, locations, transitions) -> TimedAutomaton:
    """Convenience constructor taking plain tuples.

    ``locations``: iterable of ``(id, initial, accepting)``;
    ``transitions``: iterable of ``(src, dst, label[, guards[, resets]])`` where
    guards are ``(clock, op, constant)`` triples.
    """
    locs = tuple(Location(int(i), bool(ini), bool(acc)) for i, ini, acc in locations)
    trs = []
    for tr in transitions:
        src, dst, label = tr[:3]
        guards = tr[3] if len(tr) > 3 else ()
        resets = tr[4] if len(tr) > 4 else ()
        trs.append(
            Transition(
                int(src),
                int(dst),
                label,
                tuple(ClockGuard(int(c), op, k) for c, op, k in guards),
                frozenset(int(c) for c in resets),
            )
        )
    return TimedAutomaton(frozenset(alphabet), int(clock_count), locs, tuple(trs))


def ta_from_dict(doc: dict) -> TimedAutomaton:
    try:
        return make_ta(
            doc["alphabet"],
            doc.get("clocks", 0),
            [(loc["id"], loc.get("initial", False), loc.get("accepting", False)) for loc in doc["locations"]],
            [
                (
                    tr["from"],
                    tr["to"],
                    tr["label"],
                    [(g["clock"], g["op"], g["bound"]) for g in tr.get("guards", [])],
                    tr.get("resets", []),
                )
                for tr in doc["transitions"]
            ],
        )
    except (KeyError, TypeError, ValueError) as err:
        raise ValueError(f"malformed automaton document: {err!r}") from err


def ta_to_dict(ta: TimedAutomaton) -> dict:
    return {
        "alphabet": sorted(ta.alphabet),
        "clocks": ta.clock_count,
        "locations": [{"id": loc.id, "initial": loc.initial, "accepting": loc.accepting} for loc in ta.locations],
        "transitions": [
            {
                "from": tr.source,
                "to": tr.target,
                "label": tr.label,
                "guards": [{"clock": g.clock, "op": g.op, "bound": g.constant} for g in tr.guards],
                "resets": sorted(tr.resets),
            }
            for tr in ta.transitions
        ],
    }


def load_ta(path) -> TimedAutomaton:
    """Read and validate an automaton file; raises ValueError subclasses."""
    with open(path, encoding="utf-8") as fp:
        try:
            doc = json.load(fp)
        except json.JSONDecodeError as err:
            raise ValueError(f"{path}: not valid JSON: {err}") from err
    ta = ta_from_dict(doc)
    diags = validate_ta(ta)
    if diags:
        raise InvalidAutomatonError(diags, str(path))
    return ta


def dump_ta(ta: TimedAutomaton, path) -> None:
    with open(path, "w", encoding="utf-8") as fp:
        json.dump(ta_to_dict(ta), fp, indent=2)
        fp.write("\n")
