"""Concrete-state membership oracle: does ``w|(t,t')`` belong to L(A)?

Nothing here reasons symbolically.  Runs are explored over concrete clock
valuations, which makes this slow but independent of the matcher.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Dict, List, Sequence, Tuple

from .automata import TimedAutomaton
from .core import TimedWord, restrict

State = Tuple[int, Tuple[float, ...]]


def _index(ta: TimedAutomaton):
    moves: Dict[Tuple[int, str], list] = {}
    finals: Dict[int, list] = {}
    accepting = ta.accepting
    for tr in ta.transitions:
        if tr.terminal:
            if tr.target in accepting:
                finals.setdefault(tr.source, []).append(tr.guards)
        else:
            moves.setdefault((tr.source, tr.label), []).append(tr)
    return moves, finals


def _advance(valuation, delay):
    return tuple(v + delay for v in valuation)


def _accepts_now(ta, finals, location, valuation) -> bool:
    if location in ta.accepting:
        return True
    return any(all(g.holds(valuation[g.clock]) for g in guards) for guards in finals.get(location, ()))


def accepts_restriction(ta: TimedAutomaton, w: TimedWord, t: float, t_prime: float) -> bool:
    """Depth-first search over (event index, location, clock valuation)."""
    if not t < t_prime:
        raise ValueError(f"need t < t', got t={t!r}, t'={t_prime!r}")
    sub = restrict(w, t, t_prime).events
    duration = t_prime - t
    moves, finals = _index(ta)
    zero = (0.0,) * ta.clock_count
    stack = [(0, q, zero, 0.0) for q in ta.initial]
    seen = set()
    while stack:
        k, q, val, now = stack.pop()
        if (k, q, val) in seen:
            continue
        seen.add((k, q, val))
        if k == len(sub):
            if _accepts_now(ta, finals, q, _advance(val, duration - now)):
                return True
            continue
        ev = sub[k]
        val_at = _advance(val, ev.time - now)
        for tr in moves.get((q, ev.label), ()):
            if all(g.holds(val_at[g.clock]) for g in tr.guards):
                nxt = tuple(0.0 if c in tr.resets else v for c, v in enumerate(val_at))
                stack.append((k + 1, tr.target, nxt, ev.time))
    return False


def acceptance_profile(ta: TimedAutomaton, w: TimedWord, t: float, ends: Sequence[float]) -> List[bool]:
    """``[accepts_restriction(ta, w, t, e) for e in ends]`` sharing the forward pass.

    Every entry of ``ends`` must exceed ``t``.
    """
    moves, finals = _index(ta)
    later = [ev for ev in w.events if ev.time > t]
    zero = (0.0,) * ta.clock_count
    # layers[k]: reachable (location, valuation) after the first k later events,
    # valuations taken at the k-th event's time
    layers = [{(q, zero) for q in ta.initial}]
    stamps = [t]
    for ev in later:
        nxt = set()
        delay = ev.time - stamps[-1]
        for q, val in layers[-1]:
            val_at = _advance(val, delay)
            for tr in moves.get((q, ev.label), ()):
                if all(g.holds(val_at[g.clock]) for g in tr.guards):
                    nxt.add((tr.target, tuple(0.0 if c in tr.resets else v for c, v in enumerate(val_at))))
        layers.append(nxt)
        stamps.append(ev.time)
        if not nxt:
            break
    times = [ev.time for ev in later]
    out = []
    for end in ends:
        if not end > t:
            raise ValueError("profile ends must exceed t")
        k = bisect_left(times, end)
        if k >= len(layers):
            out.append(False)
            continue
        delay = end - stamps[k]
        out.append(any(_accepts_now(ta, finals, q, _advance(val, delay)) for q, val in layers[k]))
    return out
