"""Exact model of agents, instances, placements and lotteries.

All coordinates are :class:`fractions.Fraction` values. Nothing in this module
ever rounds, so equality tests between costs are meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

Coord = Fraction
CoordLike = Union[int, str, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def coord(value: CoordLike) -> Fraction:
    """Convert ``value`` to an exact coordinate.

    Integers, fractions and strings (``"3/2"``, ``"0.25"``) are accepted.
    Floats are refused because their binary expansion is rarely what the
    caller meant.
    """
    if type(value) is Fraction:
        return value
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact coordinate; pass a str or Fraction")


@dataclass(frozen=True, slots=True)
class AgentInterval:
    """Interval ``[s, s + length]`` reported by agent ``id``."""

    id: int
    s: Fraction
    length: Fraction = ONE

    def __post_init__(self) -> None:
        object.__setattr__(self, "s", coord(self.s))
        object.__setattr__(self, "length", coord(self.length))
        if self.length <= 0:
            raise ValueError(f"agent {self.id}: interval length must be positive, got {self.length}")

    @property
    def t(self) -> Fraction:
        return self.s + self.length

    def moved_to(self, s: CoordLike) -> "AgentInterval":
        return AgentInterval(self.id, coord(s), self.length)


@dataclass(frozen=True, slots=True, order=True)
class Placement:
    """Left endpoint of the covering interval."""

    s: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "s", coord(self.s))

    def interval(self, covering_length: Fraction) -> tuple[Fraction, Fraction]:
        return (self.s, covering_length)


@dataclass(frozen=True)
class Instance:
    """Agents sorted by ``(s, id)`` together with the covering length.

    Build instances with :meth:`from_lefts` or :meth:`from_intervals`; the
    constructor itself normalises whatever agent order it is given.
    """

    agents: tuple[AgentInterval, ...]
    covering_length: Fraction = ONE
    _by_id: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        # two stable passes compare only with `<`, which is cheaper on fractions than tuple keys
        agents = sorted(self.agents, key=lambda a: a.id)
        agents = tuple(sorted(agents, key=lambda a: a.s))
        if not agents:
            raise ValueError("an instance needs at least one agent")
        c = coord(self.covering_length)
        if c <= 0:
            raise ValueError(f"covering length must be positive, got {c}")
        by_id = {a.id: a for a in agents}
        if len(by_id) != len(agents):
            raise ValueError("agent ids must be unique")
        object.__setattr__(self, "agents", agents)
        object.__setattr__(self, "covering_length", c)
        object.__setattr__(self, "_by_id", by_id)

    @classmethod
    def from_lefts(cls, lefts: Iterable[CoordLike], covering_length: CoordLike = 1,
                   lengths: Iterable[CoordLike] | None = None) -> "Instance":
        lefts = [coord(x) for x in lefts]
        if lengths is None:
            c = coord(covering_length)
            lengths = [c] * len(lefts)
        else:
            lengths = [coord(x) for x in lengths]
            if len(lengths) != len(lefts):
                raise ValueError("lefts and lengths differ in size")
        agents = [AgentInterval(i, s, ln) for i, (s, ln) in enumerate(zip(lefts, lengths))]
        return cls(tuple(agents), coord(covering_length))

    @classmethod
    def from_intervals(cls, intervals: Iterable[tuple[CoordLike, CoordLike]],
                       covering_length: CoordLike = 1) -> "Instance":
        """Build from ``(s, t)`` endpoint pairs; ids follow input order."""
        agents = []
        for i, (s, t) in enumerate(intervals):
            s, t = coord(s), coord(t)
            agents.append(AgentInterval(i, s, t - s))
        return cls(tuple(agents), coord(covering_length))

    @property
    def n(self) -> int:
        return len(self.agents)

    @property
    def lefts(self) -> list[Fraction]:
        return [a.s for a in self.agents]

    @property
    def total_length(self) -> Fraction:
        den, pairs, _ = self.scaled
        return Fraction(sum(ln for _, ln in pairs), den)

    @property
    def equal_unit(self) -> bool:
        return self.covering_length == 1 and all(a.length == 1 for a in self.agents)

    @property
    def equal_lengths(self) -> bool:
        """True when every agent interval is exactly as long as the covering interval."""
        _, pairs, c = self.scaled
        return all(ln == c for _, ln in pairs)

    def agent(self, agent_id: int) -> AgentInterval:
        try:
            return self._by_id[agent_id]
        except KeyError:
            raise KeyError(f"no agent with id {agent_id}") from None

    def with_agent(self, agent: AgentInterval) -> "Instance":
        """Return a copy where the agent with ``agent.id`` reports ``agent`` instead."""
        self.agent(agent.id)
        others = [a for a in self.agents if a.id != agent.id]
        return Instance(tuple(others) + (agent,), self.covering_length)

    @cached_property
    def scaled(self) -> tuple[int, list[tuple[int, int]], int]:
        """``(den, [(s*den, length*den)], c*den)`` with the least common denominator.

        Integer sweeps over this frame are exact and far cheaper than
        arithmetic on fractions.
        """
        c = self.covering_length
        den = c.denominator
        for a in self.agents:
            den = math.lcm(den, a.s.denominator, a.length.denominator)
        pairs = [(a.s.numerator * (den // a.s.denominator),
                  a.length.numerator * (den // a.length.denominator)) for a in self.agents]
        return den, pairs, c.numerator * (den // c.denominator)

    def mirror(self, axis: CoordLike | None = None) -> "Instance":
        """Reflect every interval through ``x -> axis - x``.

        The default axis maps the instance's hull onto itself.
        """
        if axis is None:
            axis = self.agents[0].s + max(a.t for a in self.agents)
        axis = coord(axis)
        return Instance(tuple(AgentInterval(a.id, axis - a.t, a.length) for a in self.agents),
                        self.covering_length)

    def mirror_placement(self, p: Placement, axis: CoordLike | None = None) -> Placement:
        """Image of ``p`` under the reflection used by :meth:`mirror`."""
        if axis is None:
            axis = self.agents[0].s + max(a.t for a in self.agents)
        return Placement(coord(axis) - p.s - self.covering_length)


@dataclass(frozen=True)
class Lottery:
    """Finite distribution over placements, kept in canonical form.

    Entries are sorted by placement, duplicate placements are merged and
    zero-probability entries dropped.
    """

    entries: tuple[tuple[Placement, Fraction], ...]

    def __post_init__(self) -> None:
        merged: dict[Placement, Fraction] = {}
        for p, prob in self.entries:
            if not isinstance(p, Placement):
                p = Placement(p)
            prob = coord(prob)
            if prob < 0:
                raise ValueError(f"negative probability {prob}")
            merged[p] = merged.get(p, ZERO) + prob
        total = sum(merged.values(), ZERO)
        if total != 1:
            raise ValueError(f"lottery probabilities sum to {total}, not 1")
        entries = tuple(sorted((p, q) for p, q in merged.items() if q > 0))
        object.__setattr__(self, "entries", entries)

    @classmethod
    def point(cls, p: Placement) -> "Lottery":
        return cls(((p, ONE),))

    @property
    def placements(self) -> list[Placement]:
        return [p for p, _ in self.entries]

    def probability(self, p: Placement) -> Fraction:
        for q, prob in self.entries:
            if q == p:
                return prob
        return ZERO

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def _left(p: Placement | CoordLike) -> Fraction:
    return p.s if isinstance(p, Placement) else coord(p)


def overlap(a: Sequence[CoordLike], b: Sequence[CoordLike]) -> Fraction:
    """Length of the intersection of intervals given as ``(s, length)``."""
    sa, la = coord(a[0]), coord(a[1])
    sb, lb = coord(b[0]), coord(b[1])
    if la <= 0 or lb <= 0:
        raise ValueError("interval lengths must be positive")
    ov = min(sa + la, sb + lb) - max(sa, sb)
    return ov if ov > 0 else ZERO


def _overlap_with(agent: AgentInterval, x: Fraction, y: Fraction) -> Fraction:
    ov = min(agent.s + agent.length, y) - max(agent.s, x)
    return ov if ov > 0 else ZERO


def agent_cost(agent: AgentInterval, p: Placement | CoordLike, covering_length: CoordLike) -> Fraction:
    """Uncovered part of the agent's interval."""
    x = _left(p)
    c = coord(covering_length)
    if c <= 0:
        raise ValueError("covering length must be positive")
    return agent.length - _overlap_with(agent, x, x + c)


def social_welfare(inst: Instance, p: Placement | CoordLike) -> Fraction:
    """Total covered length."""
    x = _left(p)
    den, pairs, c = inst.scaled
    xs = x * den
    if xs.denominator == 1:
        lo_x = xs.numerator
        hi_x = lo_x + c
        covered = 0
        for s, ln in pairs:
            ov = min(s + ln, hi_x) - max(s, lo_x)
            if ov > 0:
                covered += ov
        return Fraction(covered, den)
    y = x + inst.covering_length
    total = ZERO
    for a in inst.agents:
        lo = a.s if a.s > x else x
        t = a.s + a.length
        hi = t if t < y else y
        if hi > lo:
            total += hi - lo
    return total


def social_cost(inst: Instance, p: Placement | CoordLike) -> Fraction:
    return inst.total_length - social_welfare(inst, p)


def expected_social_cost(inst: Instance, lot: Lottery | Iterable[tuple[Placement, CoordLike]]) -> Fraction:
    if not isinstance(lot, Lottery):
        lot = Lottery(tuple(lot))
    return sum((prob * social_cost(inst, p) for p, prob in lot.entries), ZERO)


def expected_agent_cost(agent: AgentInterval, lot: Lottery, covering_length: CoordLike) -> Fraction:
    return sum((prob * agent_cost(agent, p, covering_length) for p, prob in lot.entries), ZERO)
