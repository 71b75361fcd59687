"""Approximation ratios, misreport search and lower-bound constructions.

Everything here treats mechanisms as black boxes: a deterministic mechanism
is any callable ``Instance -> Placement`` and a randomized one any callable
``Instance -> Lottery`` with ``randomized = True``. Randomized mechanisms that
also expose ``components(n)`` (the ordered statistics they mix) are checked
realization by realization as well as in expectation.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .core import (
    ONE,
    AgentInterval,
    CoordLike,
    Instance,
    Lottery,
    Placement,
    agent_cost,
    coord,
    expected_agent_cost,
    expected_social_cost,
    social_cost,
)
from .instances import singleton_group, two_cluster_seed, unknown_length_pair
from .mechanisms import ConvexCombination, as_lottery, is_randomized
from .solver import grid, optimal_placement


class Unbounded(enum.Enum):
    UNBOUNDED = "unbounded"

    def __str__(self) -> str:
        return "unbounded"


UNBOUNDED = Unbounded.UNBOUNDED
Ratio = Union[Fraction, Unbounded]


def ratio_of(mechanism_cost: Fraction, optimal_cost: Fraction) -> Ratio:
    if optimal_cost > 0:
        return mechanism_cost / optimal_cost
    return ONE if mechanism_cost == 0 else UNBOUNDED


def ratio_at_least(ratio: Ratio, bound: CoordLike) -> bool:
    return ratio is UNBOUNDED or ratio >= coord(bound)


def ratio_at_most(ratio: Ratio, bound: CoordLike) -> bool:
    return ratio is not UNBOUNDED and ratio <= coord(bound)


@dataclass(frozen=True)
class RatioReport:
    mechanism_cost: Fraction
    optimal_cost: Fraction
    ratio: Ratio
    mechanism_output: Union[Placement, Lottery]
    optimal_placement: Placement

    @property
    def unbounded(self) -> bool:
        return self.ratio is UNBOUNDED


def _mechanism_cost(inst: Instance, output) -> Fraction:
    if isinstance(output, Lottery):
        return expected_social_cost(inst, output)
    return social_cost(inst, output)


def approximation_ratio(mech: Callable, inst: Instance) -> RatioReport:
    """Exact (expected) social cost of ``mech`` on ``inst`` over the optimum."""
    output = mech(inst)
    cost = _mechanism_cost(inst, output)
    opt_p, opt = optimal_placement(inst)
    return RatioReport(cost, opt, ratio_of(cost, opt), output, opt_p)


# --- misreports -------------------------------------------------------------

@dataclass(frozen=True)
class DeviationWitness:
    """Agent ``agent`` strictly gains by reporting ``misreport``.

    Costs are expected costs for randomized mechanisms, unless ``realization``
    names the order statistic under which the coupled comparison failed.
    """

    agent: int
    true_cost: Fraction
    misreport: AgentInterval
    deviated_cost: Fraction
    realization: int | None = None

    def __post_init__(self) -> None:
        if not self.deviated_cost < self.true_cost:
            raise ValueError("a deviation witness must strictly lower the agent's cost")


def default_misreports(inst: Instance, agent_id: int, step: CoordLike = Fraction(1, 4),
                       lengths: Iterable[CoordLike] | None = None) -> list[AgentInterval]:
    """Candidate misreports for one agent.

    Left endpoints: every agent endpoint ``e`` and ``e - c``, plus the grid
    ``[min s - c - 1, max t + 1]`` at ``step``. Lengths default to the agent's
    own, as equal-length mechanisms require; the truthful report is skipped.
    """
    me = inst.agent(agent_id)
    c = inst.covering_length
    lefts = set()
    for a in inst.agents:
        lefts.update((a.s, a.t, a.s - c, a.t - c))
    lo = min(a.s for a in inst.agents) - c - 1
    hi = max(a.t for a in inst.agents) + 1
    lefts.update(grid(lo, hi, step))
    lens = [me.length] if lengths is None else sorted({coord(x) for x in lengths})
    return [AgentInterval(agent_id, s, ln) for s in sorted(lefts) for ln in lens
            if (s, ln) != (me.s, me.length)]


def deviation_search(mech: Callable, inst: Instance, agent_id: int,
                     misreports: Sequence[AgentInterval] | None = None,
                     step: CoordLike = Fraction(1, 4)) -> DeviationWitness | None:
    """First strictly profitable misreport for ``agent_id``, or ``None``.

    Sound but not complete: only the given (or default) misreports are tried.
    """
    if misreports is None:
        misreports = default_misreports(inst, agent_id, step)
    if not misreports:
        raise ValueError("misreport set is empty")
    me = inst.agent(agent_id)
    c = inst.covering_length
    if not is_randomized(mech):
        truthful = agent_cost(me, mech(inst), c)
        if truthful == 0:
            return None
        for m in misreports:
            cost = agent_cost(me, mech(inst.with_agent(m)), c)
            if cost < truthful:
                return DeviationWitness(agent_id, truthful, m, cost)
        return None

    truthful = expected_agent_cost(me, as_lottery(mech(inst)), c)
    coupled = []
    if hasattr(mech, "components"):
        coupled = [(comp.k, comp, agent_cost(me, comp(inst), c)) for _, comp in mech.components(inst.n)]
    for m in misreports:
        deviated = inst.with_agent(m)
        cost = expected_agent_cost(me, as_lottery(mech(deviated)), c)
        if cost < truthful:
            return DeviationWitness(agent_id, truthful, m, cost)
        for k, comp, base in coupled:
            cost_k = agent_cost(me, comp(deviated), c)
            if cost_k < base:
                return DeviationWitness(agent_id, base, m, cost_k, realization=k)
    return None


def grid_profiles(n: int, coords: Sequence[CoordLike]) -> Iterable[Instance]:
    """Every ordered profile of ``n`` unit agents with lefts drawn from ``coords``."""
    coords = [coord(x) for x in coords]
    for lefts in itertools.product(coords, repeat=n):
        yield Instance.from_lefts(lefts)


def truthfulness_sweep(mech: Callable, profiles: Iterable[Instance],
                       step: CoordLike = Fraction(1, 2)) -> list[tuple[Instance, DeviationWitness]]:
    """Run :func:`deviation_search` for every agent of every profile."""
    found = []
    for inst in profiles:
        for a in inst.agents:
            w = deviation_search(mech, inst, a.id, step=step)
            if w is not None:
                found.append((inst, w))
    return found


# --- lower-bound games ------------------------------------------------------

@dataclass(frozen=True)
class RatioWitness:
    """Instance on which the mechanism provably does no better than ``bound``.

    ``ratio`` is the exact measured ratio; ``bound`` is the guarantee the
    construction certifies at that point.
    """

    ratio: Ratio
    bound: Fraction
    instance: Instance
    output: Union[Placement, Lottery]
    mechanism_cost: Fraction
    optimal_cost: Fraction

    status = "RatioWitness"

    @property
    def holds(self) -> bool:
        return ratio_at_least(self.ratio, self.bound)


@dataclass(frozen=True)
class TruthfulnessViolation:
    """``witness.agent`` gains by misreporting in ``instance``."""

    instance: Instance
    witness: DeviationWitness

    status = "TruthfulnessViolation"


@dataclass(frozen=True)
class Exhausted:
    """The game stopped without a verdict: iteration cap hit or a stalled move."""

    steps: int
    reason: str = "iteration cap"

    status = "Exhausted"


@dataclass(frozen=True)
class GameStep:
    instance: Instance
    placement: Placement
    intersecting: tuple[int, ...]
    family: int
    moved: int | None = None


@dataclass(frozen=True)
class GameTranscript:
    steps: tuple[GameStep, ...]
    outcome: Union[RatioWitness, TruthfulnessViolation, Exhausted]
    family: int
    mirrored: bool = False

    @property
    def status(self) -> str:
        return self.outcome.status


def _positive_overlap(a: AgentInterval, p: Placement, c: Fraction) -> bool:
    return min(a.t, p.s + c) > max(a.s, p.s)


def _ratio_witness(inst: Instance, output, bound: Fraction) -> RatioWitness:
    cost = _mechanism_cost(inst, output)
    _, opt = optimal_placement(inst)
    return RatioWitness(ratio_of(cost, opt), bound, inst, output, cost, opt)


def adversary_game(mech: Callable[[Instance], Placement], n: int,
                   delta: CoordLike = Fraction(1, 1000),
                   max_steps: int | None = None) -> GameTranscript:
    """Drive a deterministic mechanism towards ratio ``2 - 2/n``.

    Starting from two clusters of n/2 unit agents on ``[0, 1]`` and
    ``[n, n + 1]``, repeatedly take the rightmost agent still touched by the
    covering interval and slide it right so that it keeps a sliver in common
    with the current placement. A truthful mechanism must keep covering part
    of the moved agent, so the set of touched agents shrinks until at most
    one remains. If the mechanism abandons a moved agent, the move itself is a
    profitable misreport and is returned as a violation.

    The game is played in a mirrored frame when the first placement touches
    the right cluster; the transcript is always reported in the caller's frame.
    """
    if n < 4 or n % 2:
        raise ValueError(f"the adversary game needs an even n >= 4, got {n}")
    delta = coord(delta)
    if not 0 < delta < Fraction(1, 2):
        raise ValueError(f"delta must lie in (0, 1/2), got {delta}")
    cap = 16 * n if max_steps is None else max_steps
    c = ONE
    half = n // 2
    axis = Fraction(n + 1)
    seed = two_cluster_seed(n)

    first = mech(seed)
    mirrored = _positive_overlap(AgentInterval(-1, n, 1), first, c)
    if mirrored:
        def play(inst: Instance) -> Placement:
            return Placement(axis - mech(inst.mirror(axis)).s - c)

        def out(inst: Instance) -> Instance:
            return inst.mirror(axis)

        def out_p(p: Placement) -> Placement:
            return Placement(axis - p.s - c)

        def out_a(a: AgentInterval) -> AgentInterval:
            return AgentInterval(a.id, axis - a.t, a.length)
    else:
        play = mech

        def out(inst: Instance) -> Instance:
            return inst

        def out_p(p: Placement) -> Placement:
            return p

        def out_a(a: AgentInterval) -> AgentInterval:
            return a

    def frame_witness(inst, p, bound):
        return _ratio_witness(out(inst), out_p(p), bound)

    steps: list[GameStep] = []
    inst, p = seed, (Placement(axis - first.s - c) if mirrored else first)
    family = 0
    for _ in range(cap):
        family = max(family, min(math.floor(p.s), half - 1))
        touched = [a for a in inst.agents if _positive_overlap(a, p, c)]
        ids = tuple(a.id for a in touched)
        if len(touched) <= 1 or family >= half - 1:
            steps.append(GameStep(out(inst), out_p(p), ids, family))
            bound = Fraction(2) if not touched else Fraction(n - 1, half)
            return GameTranscript(tuple(steps), frame_witness(inst, p, bound), family, mirrored)

        mover = max(touched, key=lambda a: (a.t, a.id))
        right = p.s + c
        if p.s < mover.t < right:
            moved = mover.moved_to(mover.t)
        else:
            moved = mover.moved_to(right - delta)
        steps.append(GameStep(out(inst), out_p(p), ids, family, moved=mover.id))
        if moved == mover:
            # the rightmost touched agent already sits at right - delta
            return GameTranscript(tuple(steps), Exhausted(len(steps), "stalled move"), family, mirrored)

        nxt = inst.with_agent(moved)
        q = play(nxt)
        if not _positive_overlap(moved, q, c):
            # true interval `moved`: cost 1 when truthful, strictly less by
            # reporting the previous interval, which brings back placement p
            true_cost = agent_cost(moved, q, c)
            gain_cost = agent_cost(moved, p, c)
            witness = DeviationWitness(moved.id, true_cost, out_a(mover), gain_cost)
            steps.append(GameStep(out(nxt), out_p(q),
                                  tuple(a.id for a in nxt.agents if _positive_overlap(a, q, c)), family))
            return GameTranscript(tuple(steps), TruthfulnessViolation(out(nxt), witness), family, mirrored)
        inst, p = nxt, q
    return GameTranscript(tuple(steps), Exhausted(len(steps)), family, mirrored)


def order_statistic_lower_bound(weights: Sequence[CoordLike], n: int) -> Fraction:
    """Worse expected ratio of a mix of order statistics on the singleton/group
    instance and its mirror image."""
    if n < 2 or n % 2:
        raise ValueError(f"n must be even, got {n}")
    mech = ConvexCombination(tuple(weights))
    if len(mech.weights) != n:
        raise ValueError(f"expected {n} weights, got {len(mech.weights)}")
    inst = singleton_group(n)
    worst = None
    for candidate in (inst, inst.mirror()):
        r = approximation_ratio(mech, candidate).ratio
        worst = r if worst is None else max(worst, r)
    return worst


def order_statistic_closed_form(weights: Sequence[CoordLike], n: int) -> Fraction:
    """``1 + q (n - 2) / n`` with ``q`` the heavier of the two half masses."""
    ws = [coord(w) for w in weights]
    p = sum(ws[: n // 2], Fraction(0))
    q = max(p, 1 - p)
    return 1 + q * Fraction(n - 2, n)


def unknown_lengths_probe(mech: Callable, eps: CoordLike) -> Union[RatioWitness, TruthfulnessViolation]:
    """Force ratio ``Omega(1/eps)`` or expose a misreport when lengths are reported.

    Deterministic mechanisms either under-cover ``[0, 1]`` on
    ``{[0,1], [3,3+eps]}``, or must keep covering a tiny sub-interval of it
    when the left agent shrinks to length ``eps^2``. Lotteries follow the same
    argument with probability masses 1/2 and 1/4.
    """
    eps = coord(eps)
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    big, _ = unknown_length_pair(eps)
    tiny = eps * eps
    left = big.agent(0)
    out = mech(big)
    if isinstance(out, Lottery):
        return _probe_lottery(mech, big, out, eps)

    ov = left.length - agent_cost(left, out, 1)
    if ov <= eps:
        # the left agent loses at least 1 - eps and the right one eps
        return _ratio_witness(big, out, 1 / eps)
    side_left = out.s <= 0
    small = AgentInterval(0, 0 if side_left else 1 - tiny, tiny)
    shrunk = big.with_agent(small)
    out2 = mech(shrunk)
    if agent_cost(small, out2, 1) == 0:
        return _ratio_witness(shrunk, out2, 1 / eps)
    witness = DeviationWitness(0, agent_cost(small, out2, 1), left, agent_cost(small, out, 1))
    return TruthfulnessViolation(shrunk, witness)


def _probe_lottery(mech, big: Instance, lot: Lottery, eps: Fraction):
    tiny = eps * eps
    left = big.agent(0)
    hit = sum((q for p, q in lot if left.length - agent_cost(left, p, 1) > 0), Fraction(0))
    if hit < Fraction(1, 2):
        return _ratio_witness(big, lot, 1 / (2 * eps))

    def covers(lo: Fraction, p: Placement) -> bool:
        return p.s <= lo and lo + eps <= p.s + 1

    p_left = sum((q for p, q in lot if covers(Fraction(0), p)), Fraction(0))
    p_right = sum((q for p, q in lot if covers(1 - eps, p)), Fraction(0))
    quarter = Fraction(1, 4)
    if p_left < quarter and p_right < quarter:
        # over half the mass overlaps [0, 1] by less than eps: cost above 1 there
        return _ratio_witness(big, lot, 1 / (2 * eps))
    small = AgentInterval(0, 0 if p_left >= p_right else 1 - tiny, tiny)
    shrunk = big.with_agent(small)
    lot2 = as_lottery(mech(shrunk))
    truthful = expected_agent_cost(small, lot2, 1)
    deviated = expected_agent_cost(small, lot, 1)
    if deviated < truthful:
        return TruthfulnessViolation(shrunk, DeviationWitness(0, truthful, left, deviated))
    return _ratio_witness(shrunk, lot2, 1 / (4 * eps))


def welfare_ratio_bound(rho: CoordLike, n: int, sw_lower: CoordLike) -> Fraction:
    """Welfare approximation implied by a cost approximation ``rho``."""
    rho, sw_lower = coord(rho), coord(sw_lower)
    if rho < 1:
        raise ValueError(f"rho must be at least 1, got {rho}")
    if sw_lower <= 0:
        raise ValueError(f"welfare lower bound must be positive, got {sw_lower}")
    return 1 / rho + n * (rho - 1) / (rho * sw_lower)
