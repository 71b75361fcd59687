"""Truthful mechanisms built from ordered statistics of the reported lefts.

Deterministic mechanisms map an :class:`~ticover.core.Instance` to a
:class:`~ticover.core.Placement`; randomized ones return a
:class:`~ticover.core.Lottery`. Every mechanism object here is a plain
callable, so ad-hoc functions with the same signature can be audited too.

Order statistics are 1-indexed and ties in left endpoints are broken by agent
id, which is exactly the order :class:`Instance` stores agents in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .controls import CONTROLS
from .core import ZERO, CoordLike, Instance, Lottery, Placement, coord


class MechanismError(ValueError):
    """A mechanism was invoked on an instance it does not apply to."""


def _require_equal_lengths(inst: Instance) -> None:
    if not inst.equal_lengths:
        raise MechanismError("mechanism needs every interval to be as long as the covering interval")


def median_index(n: int) -> int:
    return n // 2 if n % 2 == 0 else (n + 1) // 2


def uniform_indices(n: int) -> tuple[int, int, int]:
    """``(l, m, r)`` indices mixed by the uniform-statistic mechanism."""
    return math.ceil(n / 3), median_index(n), math.ceil(2 * n / 3)


def kth_statistic(inst: Instance, k: int) -> Placement:
    """Cover the interval of the agent with the ``k``-th smallest left endpoint."""
    _require_equal_lengths(inst)
    if not 1 <= k <= inst.n:
        raise MechanismError(f"order statistic k={k} out of range for n={inst.n}")
    return Placement(inst.agents[k - 1].s)


def median_mechanism(inst: Instance) -> Placement:
    return kth_statistic(inst, median_index(inst.n))


def convex_combination(inst: Instance, weights: Sequence[CoordLike]) -> Lottery:
    """Play the ``k``-th statistic with probability ``weights[k - 1]``."""
    weights = _check_weights(weights, inst.n)
    _require_equal_lengths(inst)
    return Lottery(tuple((Placement(a.s), w) for a, w in zip(inst.agents, weights)))


def uniform_statistic(inst: Instance) -> Lottery:
    _require_equal_lengths(inst)
    third = Fraction(1, 3)
    return Lottery(tuple((kth_statistic(inst, k), third) for k in uniform_indices(inst.n)))


def weighted_median(inst: Instance) -> Placement:
    """Left endpoint of the first agent whose length prefix reaches half the total.

    Works for arbitrary (known) lengths; on equal lengths it coincides with
    :func:`median_mechanism`.
    """
    half = inst.total_length / 2
    prefix = ZERO
    for a in inst.agents:
        prefix += a.length
        if prefix >= half:
            return Placement(a.s)
    raise AssertionError("unreachable: the full prefix equals the total length")


def _check_weights(weights: Sequence[CoordLike], n: int) -> tuple[Fraction, ...]:
    try:
        ws = tuple(coord(w) for w in weights)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise MechanismError(f"malformed weight: {exc}") from None
    if len(ws) != n:
        raise MechanismError(f"expected {n} weights, got {len(ws)}")
    if any(w < 0 for w in ws):
        raise MechanismError("weights must be non-negative")
    if sum(ws) != 1:
        raise MechanismError(f"weights sum to {sum(ws)}, not 1")
    return ws


# Callable mechanism objects. ``components`` exposes the ordered statistics a
# randomized mechanism mixes, which is what coupled (per-realization) truthfulness
# checks run against.

@dataclass(frozen=True)
class KthStatistic:
    k: int
    randomized = False

    def __call__(self, inst: Instance) -> Placement:
        return kth_statistic(inst, self.k)

    @property
    def name(self) -> str:
        return f"kth:{self.k}"


@dataclass(frozen=True)
class Median:
    randomized = False
    name = "median"

    def __call__(self, inst: Instance) -> Placement:
        return median_mechanism(inst)


@dataclass(frozen=True)
class WeightedMedian:
    randomized = False
    name = "weighted-median"

    def __call__(self, inst: Instance) -> Placement:
        return weighted_median(inst)


@dataclass(frozen=True)
class UniformStatistic:
    randomized = True
    name = "uniform-statistic"

    def __call__(self, inst: Instance) -> Lottery:
        return uniform_statistic(inst)

    def components(self, n: int) -> list[tuple[Fraction, KthStatistic]]:
        return [(Fraction(1, 3), KthStatistic(k)) for k in uniform_indices(n)]


@dataclass(frozen=True)
class ConvexCombination:
    weights: tuple[Fraction, ...]
    randomized = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", _check_weights(self.weights, len(self.weights)))

    def __call__(self, inst: Instance) -> Lottery:
        return convex_combination(inst, self.weights)

    def components(self, n: int) -> list[tuple[Fraction, KthStatistic]]:
        if n != len(self.weights):
            raise MechanismError(f"expected {len(self.weights)} agents, got {n}")
        return [(w, KthStatistic(k)) for k, w in enumerate(self.weights, start=1) if w > 0]

    @property
    def name(self) -> str:
        return "convex:" + ",".join(str(w) for w in self.weights)


def parse_mechanism(selector: str):
    """Mechanism object for a CLI selector.

    Accepted forms: ``kth:<k>``, ``median``, ``uniform-statistic``,
    ``weighted-median`` and ``convex:<p1,...,pn>``. The negative controls of
    :mod:`ticover.controls` are reachable as ``control:<name>``.
    """
    selector = selector.strip()
    if selector == "median":
        return Median()
    if selector == "uniform-statistic":
        return UniformStatistic()
    if selector == "weighted-median":
        return WeightedMedian()
    kind, sep, arg = selector.partition(":")
    if sep and kind == "kth":
        try:
            return KthStatistic(int(arg))
        except ValueError:
            raise MechanismError(f"bad order statistic index {arg!r}") from None
    if sep and kind == "convex":
        return ConvexCombination(tuple(arg.split(",")))
    if sep and kind == "control" and arg in CONTROLS:
        return CONTROLS[arg]
    raise MechanismError(f"unknown mechanism {selector!r}")


def mechanism_name(mech) -> str:
    name = getattr(mech, "name", None)
    if name:
        return name
    for key, fn in CONTROLS.items():
        if fn is mech:
            return f"control:{key}"
    return getattr(mech, "__name__", repr(mech))


def is_randomized(mech) -> bool:
    return bool(getattr(mech, "randomized", False))


def as_lottery(output: Placement | Lottery) -> Lottery:
    return output if isinstance(output, Lottery) else Lottery.point(output)
