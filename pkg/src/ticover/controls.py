"""Deliberately flawed mechanisms used as negative controls by the audits."""

from __future__ import annotations

from fractions import Fraction

from .core import Instance, Placement


def mean_left(inst: Instance) -> Placement:
    """Cover from the mean reported left endpoint (not truthful)."""
    return Placement(sum(inst.lefts, Fraction(0)) / inst.n)


def leftmost_cover(inst: Instance) -> Placement:
    """Cover the leftmost reported interval from its left endpoint."""
    return Placement(inst.agents[0].s)


def rightmost_cover(inst: Instance) -> Placement:
    """Cover the rightmost reported interval from its left endpoint."""
    return Placement(inst.agents[-1].s)


def threshold_cover(inst: Instance) -> Placement:
    """Cover the leftmost agent only if it reports at least half the covering length.

    Otherwise the covering interval is parked two units to the right of its
    left endpoint, abandoning that agent.
    """
    first = inst.agents[0]
    if 2 * first.length >= inst.covering_length:
        return Placement(first.s)
    return Placement(first.s + 2)


CONTROLS = {
    "mean-left": mean_left,
    "leftmost-cover": leftmost_cover,
    "rightmost-cover": rightmost_cover,
    "threshold-cover": threshold_cover,
}
