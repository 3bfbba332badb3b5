"""Bounds and match zones over (t, t', t' - t).

A zone is a conjunction of lower/upper bounds on the start ``t``, the end
``t'`` and the duration ``t' - t``.  Canonicalization is the closure of a
3x3 difference-bound matrix over the variables (0, t, t').
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "Bound",
    "MatchZone",
    "EMPTY",
    "INF",
    "NEG_INF",
    "bound_add",
    "normalize_zone",
    "zone_contains",
    "zone_equal",
    "tighter_upper",
    "tighter_lower",
]


@dataclass(frozen=True)
class Bound:
    """``value`` with a strictness flag; infinite bounds must be strict."""

    value: float
    strict: bool = False

    def __post_init__(self):
        if math.isnan(self.value):
            raise ValueError("bound value is NaN")
        if math.isinf(self.value) and not self.strict:
            raise ValueError("infinite bounds are always strict")

    @property
    def finite(self) -> bool:
        return math.isfinite(self.value)

    def __repr__(self):
        return f"Bound({self.value!r}, {'<' if self.strict else '<='})"


INF = Bound(math.inf, True)
NEG_INF = Bound(-math.inf, True)
_ZERO = Bound(0.0, False)


def bound_add(x: Bound, y: Bound) -> Bound:
    if math.isinf(x.value) and math.isinf(y.value) and x.value != y.value:
        raise ValueError("cannot add +inf and -inf bounds")
    return Bound(x.value + y.value, x.strict or y.strict)


def _neg(b: Bound) -> Bound:
    return Bound(-b.value + 0.0, b.strict)


def _upper_lt(a: Bound, b: Bound) -> bool:
    """True when ``a`` is a strictly tighter upper bound than ``b``."""
    return a.value < b.value or (a.value == b.value and a.strict and not b.strict)


def tighter_upper(a: Bound, b: Bound) -> Bound:
    return a if _upper_lt(a, b) else b


def tighter_lower(a: Bound, b: Bound) -> Bound:
    if a.value > b.value or (a.value == b.value and a.strict and not b.strict):
        return a
    return b


def interval_empty(lo: Bound, hi: Bound) -> bool:
    """Whether {x | lo below x, x below hi} is empty."""
    return lo.value > hi.value or (lo.value == hi.value and (lo.strict or hi.strict))


@dataclass(frozen=True)
class MatchZone:
    t_lo: Bound = Bound(0.0, False)
    t_hi: Bound = INF
    tp_lo: Bound = NEG_INF
    tp_hi: Bound = INF
    d_lo: Bound = Bound(0.0, True)
    d_hi: Bound = INF

    @classmethod
    def of(cls, t=None, t_prime=None, diff=None) -> "MatchZone":
        """Build from ``(lo, hi)`` pairs of Bounds; missing pairs are unbounded."""
        t = t or (NEG_INF, INF)
        t_prime = t_prime or (NEG_INF, INF)
        diff = diff or (NEG_INF, INF)
        return cls(t[0], t[1], t_prime[0], t_prime[1], diff[0], diff[1])

    def __repr__(self):
        def rng(lo, hi):
            return f"{'(' if lo.strict else '['}{lo.value!r}, {hi.value!r}{')' if hi.strict else ']'}"

        return (
            f"MatchZone(t={rng(self.t_lo, self.t_hi)}, "
            f"t'={rng(self.tp_lo, self.tp_hi)}, diff={rng(self.d_lo, self.d_hi)})"
        )


class _Empty:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EMPTY"

    def __reduce__(self):
        return (_Empty, ())


EMPTY = _Empty()


def normalize_zone(z: MatchZone):
    """Tightest equivalent bounds, or EMPTY."""
    if z is EMPTY:
        return EMPTY
    for lo, hi in ((z.t_lo, z.t_hi), (z.tp_lo, z.tp_hi), (z.d_lo, z.d_hi)):
        if lo.value == math.inf or hi.value == -math.inf:
            return EMPTY

    # d[i][j] bounds x_i - x_j with x_0 = 0, x_1 = t, x_2 = t'
    d = [
        [_ZERO, _neg(z.t_lo), _neg(z.tp_lo)],
        [z.t_hi, _ZERO, _neg(z.d_lo)],
        [z.tp_hi, z.d_hi, _ZERO],
    ]
    for k in range(3):
        for i in range(3):
            dik = d[i][k]
            if dik.value == math.inf:
                continue
            for j in range(3):
                dkj = d[k][j]
                if dkj.value == math.inf:
                    continue
                via = bound_add(dik, dkj)
                if _upper_lt(via, d[i][j]):
                    d[i][j] = via
    for i in range(3):
        if _upper_lt(d[i][i], _ZERO):
            return EMPTY
    return MatchZone(
        t_lo=_neg(d[0][1]),
        t_hi=d[1][0],
        tp_lo=_neg(d[0][2]),
        tp_hi=d[2][0],
        d_lo=_neg(d[1][2]),
        d_hi=d[2][1],
    )


def _satisfies(x: float, lo: Bound, hi: Bound) -> bool:
    if x < lo.value or (lo.strict and x == lo.value):
        return False
    if x > hi.value or (hi.strict and x == hi.value):
        return False
    return True


def zone_contains(z, t: float, t_prime: float) -> bool:
    if z is EMPTY:
        return False
    return (
        _satisfies(t, z.t_lo, z.t_hi)
        and _satisfies(t_prime, z.tp_lo, z.tp_hi)
        and _satisfies(t_prime - t, z.d_lo, z.d_hi)
    )


def zone_equal(a, b) -> bool:
    if a is EMPTY or b is EMPTY:
        return a is b
    return a == b
