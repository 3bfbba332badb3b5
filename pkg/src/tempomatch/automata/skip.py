"""Untimed projection and the skip tables used by the FJS-style matcher.

All tables are computed on the untimed projection of the automaton, which
over-approximates the timed language: a skip that is safe for the
projection is safe for the automaton.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from .ta import TimedAutomaton


class EmptyLanguageError(ValueError):
    pass


@dataclass(frozen=True)
class UntimedNFA:
    """Location graph of a TA with guards, resets and ``$`` edges erased.

    ``accepting`` holds the TA's accepting locations plus every source of a
    ``$`` edge (acceptance pulled back through the terminal edge).
    """

    locations: tuple
    initial: frozenset
    accepting: frozenset
    edges: tuple  # (source, label, target), one per event transition of the TA

    def successors(self) -> Dict[int, Dict[str, set]]:
        succ = {q: {} for q in self.locations}
        for src, a, dst in self.edges:
            succ[src].setdefault(a, set()).add(dst)
        return succ

    def accepts(self, word) -> bool:
        succ = self.successors()
        cur = set(self.initial)
        for a in word:
            cur = {q2 for q in cur for q2 in succ[q].get(a, ())}
            if not cur:
                return False
        return bool(cur & self.accepting)


def untimed_projection(ta: TimedAutomaton) -> UntimedNFA:
    accepting = set(ta.accepting)
    edges = []
    for tr in ta.transitions:
        if tr.terminal:
            if tr.target in ta.accepting:
                accepting.add(tr.source)
        else:
            edges.append((tr.source, tr.label, tr.target))
    return UntimedNFA(
        tuple(ta.location_ids),
        frozenset(ta.initial),
        frozenset(accepting),
        tuple(edges),
    )


def reachable_layers(nfa: UntimedNFA, depth: int) -> List[FrozenSet[int]]:
    """``layers[d]`` = locations reachable from the initial set in exactly d steps."""
    succ = nfa.successors()
    layers = [frozenset(nfa.initial)]
    for _ in range(depth):
        prev = layers[-1]
        layers.append(frozenset(q2 for q in prev for targets in succ[q].values() for q2 in targets))
    return layers


def min_match_length(nfa: UntimedNFA) -> int:
    succ = nfa.successors()
    seen = set(nfa.initial)
    frontier = set(nfa.initial)
    length = 0
    while frontier:
        if frontier & nfa.accepting:
            return length
        nxt = set()
        for q in frontier:
            for targets in succ[q].values():
                nxt.update(targets)
        frontier = nxt - seen
        seen |= frontier
        length += 1
    raise EmptyLanguageError("pattern matches nothing")


_DONE = -1  # second component has already accepted


def kmp_skip_table(nfa: UntimedNFA, cap: int) -> List[int]:
    """``beta[m]`` for m in 0..cap.

    ``beta[m]`` is the least shift d in 1..m such that some length-m word u
    runnable from the initial set has a suffix u[d:] that is itself runnable
    from the initial set, or has a prefix that is accepted.  Starts shifted
    by less than ``beta[m]`` after a trial that consumed m events cannot
    produce a match.
    """
    if cap < 1:
        raise ValueError("progress cap must be at least 1")
    succ = nfa.successors()
    accepting = nfa.accepting
    layers = reachable_layers(nfa, cap)
    best: List[Optional[int]] = [None] * (cap + 1)

    def second(q):
        return _DONE if q in accepting else q

    for d in range(1, cap + 1):
        if not layers[d]:
            break
        cur = {(q1, second(q2)) for q1 in layers[d] for q2 in nfa.initial}
        if best[d] is None:
            best[d] = d
        for k in range(1, cap - d + 1):
            nxt = set()
            for q1, q2 in cur:
                for a, targets in succ[q1].items():
                    if q2 == _DONE:
                        nxt.update((t1, _DONE) for t1 in targets)
                        continue
                    others = succ[q2].get(a)
                    if others:
                        nxt.update((t1, second(t2)) for t1 in targets for t2 in others)
            cur = nxt
            if not cur:
                break
            if best[d + k] is None:
                best[d + k] = d
    beta = [1]
    for m in range(1, cap + 1):
        beta.append(best[m] if best[m] is not None else m)
    return beta


def position_labels(nfa: UntimedNFA, upto: int) -> List[FrozenSet[str]]:
    """``P[j]`` (j = 1..upto): labels that can be the j-th event of a run. ``P[0]`` is empty."""
    succ = nfa.successors()
    layers = reachable_layers(nfa, max(upto - 1, 0))
    out = [frozenset()]
    for j in range(1, upto + 1):
        out.append(frozenset(a for q in layers[j - 1] for a in succ[q]))
    return out


def quick_search_table(nfa: UntimedNFA, n_min: int) -> Dict[str, int]:
    """Shift by the label observed at the last slot of an ``n_min``-event window.

    A label that can occur at most at position j < n_min of a run shifts by
    ``n_min - j``; labels absent from the map shift by ``n_min``.
    """
    if n_min < 1:
        return {}
    P = position_labels(nfa, n_min - 1)
    delta = {}
    for j in range(1, n_min):
        for a in P[j]:
            delta[a] = n_min - j
    return delta


@dataclass(frozen=True)
class SkipTables:
    n_min: int
    beta: tuple
    delta: Dict[str, int] = field(hash=False)
    cap: int
    gate: frozenset  # labels allowed as the n_min-th event of a run

    def shift_for(self, label: str) -> int:
        return self.delta.get(label, self.n_min)

    def beta_for(self, progress: int) -> int:
        return self.beta[progress] if progress <= self.cap else 1


def build_skip_tables(ta: TimedAutomaton, cap: Optional[int] = None) -> SkipTables:
    nfa = untimed_projection(ta)
    n_min = min_match_length(nfa)
    if cap is None:
        cap = max(2 * len(nfa.locations), n_min)
    cap = max(cap, 1)
    gate = position_labels(nfa, n_min)[n_min] if n_min >= 1 else frozenset()
    return SkipTables(
        n_min=n_min,
        beta=tuple(kmp_skip_table(nfa, cap)),
        delta=quick_search_table(nfa, n_min),
        cap=cap,
        gate=gate,
    )
