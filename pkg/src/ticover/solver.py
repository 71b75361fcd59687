"""Optimal placement of the covering interval.

Social cost as a function of the covering interval's left endpoint ``x`` is
continuous and piecewise linear. Each agent ``[s, t]`` changes its slope at
``s - c``, ``t - c``, ``s`` and ``t``, so a single sweep over those events
gives the whole profile and its leftmost minimiser.

The sweep runs on integers: every coordinate is scaled by the least common
denominator of the instance, which keeps the arithmetic exact and much
faster than stepping through :class:`~fractions.Fraction` objects.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import CoordLike, Instance, Placement, coord, social_cost


@dataclass(frozen=True)
class ScProfile:
    """Closed form of ``x -> SC(x)``.

    ``slopes[j]`` is the slope left of ``breakpoints[j]`` (``slopes[0]`` is
    the unbounded left end, ``slopes[-1]`` the unbounded right end).
    """

    breakpoints: tuple[Fraction, ...]
    slopes: tuple[int, ...]
    value_at_first: Fraction

    def values(self) -> list[Fraction]:
        """Profile value at every breakpoint."""
        out = [self.value_at_first]
        for j in range(1, len(self.breakpoints)):
            dx = self.breakpoints[j] - self.breakpoints[j - 1]
            out.append(out[-1] + self.slopes[j] * dx)
        return out

    def __call__(self, x: CoordLike) -> Fraction:
        x = coord(x)
        bps = self.breakpoints
        j = bisect_right(bps, x)
        if j == 0:
            return self.value_at_first + self.slopes[0] * (x - bps[0])
        vals = self.values()
        return vals[j - 1] + self.slopes[j] * (x - bps[j - 1])

    def minimum(self) -> tuple[Fraction, Fraction]:
        """Leftmost minimiser and the minimum value."""
        vals = self.values()
        best = min(range(len(vals)), key=lambda j: (vals[j], j))
        return self.breakpoints[best], vals[best]


def _events(scaled: list[tuple[int, int]], c: int) -> dict[int, int]:
    deltas: dict[int, int] = {}
    for s, ln in scaled:
        t = s + ln
        lo, hi = (s, t - c) if s <= t - c else (t - c, s)
        for x, d in ((s - c, -1), (lo, 1), (hi, 1), (t, -1)):
            deltas[x] = deltas.get(x, 0) + d
    return deltas


def _sweep(inst: Instance) -> tuple[int, list[int], list[int], int]:
    den, scaled, c = inst.scaled
    deltas = _events(scaled, c)
    xs = sorted(deltas)
    slopes = [0]
    for x in xs:
        slopes.append(slopes[-1] + deltas[x])
    total = sum(ln for _, ln in scaled)
    return den, xs, slopes, total


def sc_profile(inst: Instance) -> ScProfile:
    den, xs, slopes, total = _sweep(inst)
    # slope deltas that cancel exactly leave a removable breakpoint; drop it
    keep_x, keep_s = [], [slopes[0]]
    for j, x in enumerate(xs):
        if slopes[j + 1] != keep_s[-1]:
            keep_x.append(x)
            keep_s.append(slopes[j + 1])
    return ScProfile(tuple(Fraction(x, den) for x in keep_x), tuple(keep_s), Fraction(total, den))


def candidate_placements(inst: Instance) -> list[Placement]:
    """Every left endpoint that starts or ends the covering interval at an agent endpoint."""
    c = inst.covering_length
    pts = set()
    for a in inst.agents:
        t = a.t
        pts.update((a.s, t, a.s - c, t - c))
    return [Placement(x) for x in sorted(pts)]


def optimal_placement(inst: Instance) -> tuple[Placement, Fraction]:
    """Social-cost minimising placement; the leftmost one among ties."""
    den, xs, slopes, total = _sweep(inst)
    value, best_x, best_v = total, xs[0], total
    prev = xs[0]
    for j, x in enumerate(xs):
        value += slopes[j] * (x - prev)
        prev = x
        if value < best_v:
            best_x, best_v = x, value
    return Placement(Fraction(best_x, den)), Fraction(best_v, den)


def optimal_cost(inst: Instance) -> Fraction:
    return optimal_placement(inst)[1]


def grid(lo: CoordLike, hi: CoordLike, step: CoordLike) -> Iterable[Fraction]:
    lo, hi, step = coord(lo), coord(hi), coord(step)
    if step <= 0:
        raise ValueError("grid step must be positive")
    x = lo
    while x <= hi:
        yield x
        x += step


def brute_force_optimal(inst: Instance, grid_step: CoordLike) -> tuple[Placement, Fraction]:
    """Test oracle: direct evaluation over candidates plus a rational grid."""
    step = coord(grid_step)
    if step <= 0:
        raise ValueError("grid step must be positive")
    c = inst.covering_length
    lo = min(a.s for a in inst.agents) - c
    hi = max(a.t for a in inst.agents)
    points = {p.s for p in candidate_placements(inst)}
    points.update(grid(lo, hi, step))
    best = None
    for x in sorted(points):
        sc = social_cost(inst, x)
        if best is None or sc < best[1]:
            best = (x, sc)
    return Placement(best[0]), best[1]
