"""Timed regular expressions: parser and compiler to timed automata.

Concrete syntax::

    expr     := alt
    alt      := cat ( '|' cat )*
    cat      := rep rep*
    rep      := base ( '*' | '+' | '%' interval )*
    base     := ATOM | '(' alt ')'
    interval := ( '(' | '[' ) INT ',' ( INT | 'inf' ) ( ')' | ']' )

``e%(l,u)`` bounds the duration of the sub-match of ``e``.  The compiler
builds a position automaton for ``e $`` and gives every ``%`` node its own
clock: the clock is reset when the sub-match is entered and guarded when it
is left.  Entering from the initial location resets nothing (clocks already
read ``t' - t`` style time since the interval start), and leaving through the
terminal ``$`` edge checks the guard at the interval end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional

from .ta import TERMINAL, ClockGuard, Location, TimedAutomaton, Transition, validate_ta


class TRESyntaxError(ValueError):
    """``position`` is the 1-based column of the offending character."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"syntax error at position {position}: {message}")


@dataclass(frozen=True)
class Atom:
    label: str


@dataclass(frozen=True)
class Concat:
    items: tuple


@dataclass(frozen=True)
class Union:
    items: tuple


@dataclass(frozen=True)
class Star:
    child: object


@dataclass(frozen=True)
class Plus:
    child: object


@dataclass(frozen=True)
class Within:
    child: object
    lower: int
    lower_strict: bool
    upper: float
    upper_strict: bool

    def __post_init__(self):
        if self.lower < 0:
            raise ValueError("negative interval bound")
        if math.isinf(self.upper) and not self.upper_strict:
            raise ValueError("infinite upper bound must be open")
        if self.lower > self.upper or (self.lower == self.upper and (self.lower_strict or self.upper_strict)):
            raise ValueError(f"empty interval {self.lower}..{self.upper}")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def peek(self) -> Optional[str]:
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1
        return self.text[self.i] if self.i < len(self.text) else None

    def fail(self, message: str):
        raise TRESyntaxError(message, self.i + 1)

    def expect(self, chars: str) -> str:
        c = self.peek()
        if c is None or c not in chars:
            found = "end of input" if c is None else repr(c)
            self.fail(f"expected one of {' '.join(repr(x) for x in chars)}, found {found}")
        self.i += 1
        return c

    def parse(self):
        node = self.alt()
        c = self.peek()
        if c is not None:
            self.fail(f"unexpected {c!r}")
        return node

    def alt(self):
        items = [self.cat()]
        while self.peek() == "|":
            self.i += 1
            items.append(self.cat())
        return items[0] if len(items) == 1 else Union(tuple(items))

    def cat(self):
        items = [self.rep()]
        while True:
            c = self.peek()
            if c is None or not (c == "(" or c.isascii() and c.isalnum()):
                break
            items.append(self.rep())
        return items[0] if len(items) == 1 else Concat(tuple(items))

    def rep(self):
        node = self.base()
        while True:
            c = self.peek()
            if c == "*":
                self.i += 1
                node = Star(node)
            elif c == "+":
                self.i += 1
                node = Plus(node)
            elif c == "%":
                self.i += 1
                node = self.interval(node)
            else:
                return node

    def base(self):
        c = self.peek()
        if c is not None and c.isascii() and c.isalnum():
            self.i += 1
            return Atom(c)
        if c == "(":
            self.i += 1
            node = self.alt()
            self.expect(")")
            return node
        self.fail("expected an atom or '(' but found " + ("end of input" if c is None else repr(c)))

    def integer(self) -> int:
        self.peek()
        start = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if start == self.i:
            self.fail("expected a non-negative integer")
        return int(self.text[start : self.i])

    def interval(self, child):
        start = self.i + 1
        lower_strict = self.expect("([") == "("
        lower = self.integer()
        self.expect(",")
        if self.peek() == "i":
            if not self.text.startswith("inf", self.i):
                self.fail("expected an integer or 'inf'")
            self.i += 3
            upper = math.inf
        else:
            upper = self.integer()
        upper_strict = self.expect(")]") == ")"
        if math.isinf(upper) and not upper_strict:
            raise TRESyntaxError("an infinite upper bound must be open", self.i)
        if lower > upper or (lower == upper and (lower_strict or upper_strict)):
            raise TRESyntaxError(f"empty interval: lower bound {lower} vs upper bound {upper}", start)
        return Within(child, lower, lower_strict, upper, upper_strict)


def parse_tre(text: str):
    return _Parser(text).parse()


# -- compilation -------------------------------------------------------------


@dataclass
class _Info:
    first: list
    last: list
    nullable: bool
    positions: frozenset
    withins: list  # (clock, positions, guards) for every % node in the subtree


def _within_guards(clock: int, w: Within) -> tuple:
    guards = []
    if w.lower_strict:
        guards.append(ClockGuard(clock, ">", w.lower))
    elif w.lower > 0:
        guards.append(ClockGuard(clock, ">=", w.lower))
    if not math.isinf(w.upper):
        guards.append(ClockGuard(clock, "<" if w.upper_strict else "<=", int(w.upper)))
    return tuple(guards)


class _Builder:
    def __init__(self):
        self.labels: List[str] = []
        self.clocks = 0
        self.edges = {}  # (p, q, guards, resets) -> None, insertion ordered

    def exit_guards(self, info: _Info, p: int) -> tuple:
        out = []
        for _, positions, guards in info.withins:
            if p in positions:
                out.extend(guards)
        return tuple(out)

    def entry_resets(self, info: _Info, q: int) -> frozenset:
        return frozenset(clock for clock, positions, _ in info.withins if q in positions)

    def link(self, a: _Info, b: _Info):
        for p in a.last:
            guards = self.exit_guards(a, p)
            for q in b.first:
                self.edges.setdefault((p, q, guards, self.entry_resets(b, q)), None)

    def walk(self, node) -> _Info:
        if isinstance(node, Atom):
            self.labels.append(node.label)
            p = len(self.labels)
            return _Info([p], [p], False, frozenset([p]), [])
        if isinstance(node, Concat):
            infos = [self.walk(c) for c in node.items]
            for k, a in enumerate(infos):
                for b in infos[k + 1 :]:
                    self.link(a, b)
                    if not b.nullable:
                        break
            first, last = [], []
            for info in infos:
                first.extend(info.first)
                if not info.nullable:
                    break
            for info in reversed(infos):
                last[:0] = info.last
                if not info.nullable:
                    break
            return _Info(
                first,
                last,
                all(i.nullable for i in infos),
                frozenset().union(*(i.positions for i in infos)),
                [w for i in infos for w in i.withins],
            )
        if isinstance(node, Union):
            infos = [self.walk(c) for c in node.items]
            return _Info(
                [p for i in infos for p in i.first],
                [p for i in infos for p in i.last],
                any(i.nullable for i in infos),
                frozenset().union(*(i.positions for i in infos)),
                [w for i in infos for w in i.withins],
            )
        if isinstance(node, (Star, Plus)):
            info = self.walk(node.child)
            self.link(info, info)
            return _Info(
                info.first,
                info.last,
                True if isinstance(node, Star) else info.nullable,
                info.positions,
                info.withins,
            )
        if isinstance(node, Within):
            clock = self.clocks
            self.clocks += 1
            info = self.walk(node.child)
            guards = _within_guards(clock, node)
            return _Info(
                info.first,
                info.last,
                info.nullable,
                info.positions,
                [(clock, info.positions, guards)] + info.withins,
            )
        raise TypeError(f"not a TRE node: {node!r}")


def compile_tre(expr) -> TimedAutomaton:
    """Compile a TRE (AST or text) into a validated timed automaton.

    Location 0 is initial, locations 1..k are the atom positions in textual
    order, and location k+1 is the single accepting location, entered only
    by ``$`` edges.
    """
    if isinstance(expr, str):
        expr = parse_tre(expr)
    b = _Builder()
    info = b.walk(expr)
    k = len(b.labels)
    init, acc = 0, k + 1

    transitions = []
    for q in info.first:
        transitions.append(Transition(init, q, b.labels[q - 1]))
    for p, q, guards, resets in b.edges:
        transitions.append(Transition(p, q, b.labels[q - 1], guards, resets))
    for p in info.last:
        transitions.append(Transition(p, acc, TERMINAL, b.exit_guards(info, p)))
    if info.nullable:
        transitions.append(Transition(init, acc, TERMINAL))

    locations = [Location(init, initial=True)]
    locations += [Location(p) for p in range(1, k + 1)]
    locations.append(Location(acc, accepting=True))
    ta = TimedAutomaton(frozenset(b.labels), b.clocks, tuple(locations), tuple(dict.fromkeys(transitions)))
    diags = validate_ta(ta)
    if diags:
        raise AssertionError(f"compiler produced an invalid automaton: {diags}")
    return ta
