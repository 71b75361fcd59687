"""Re-derive every headline bound as a pass/fail table.

Each ``check_*`` function returns a :class:`Claim` holding the expected and
measured values as exact rationals rendered to text. ``run_all`` executes the
whole table; ``quick=True`` shrinks the sample counts for smoke runs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import controls
from .audit import (
    adversary_game,
    approximation_ratio,
    grid_profiles,
    order_statistic_lower_bound,
    ratio_at_least,
    ratio_at_most,
    truthfulness_sweep,
    unknown_lengths_probe,
    welfare_ratio_bound,
)
from .instances import (
    GeneratorParams,
    _rng,
    random_instances,
    weighted_median_worst,
    wci1,
    wci2,
)
from .io import format_number
from .mechanisms import KthStatistic, Median, UniformStatistic, WeightedMedian
from .solver import brute_force_optimal, optimal_placement


@dataclass
class Claim:
    name: str
    expected: str
    measured: str
    passed: bool
    seconds: float = 0.0
    details: list[str] = field(default_factory=list)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.name}: expected {self.expected}; measured {self.measured} ({self.seconds:.2f}s)"


def _timed(fn: Callable[..., Claim]) -> Callable[..., Claim]:
    def wrapper(*args, **kwargs) -> Claim:
        start = time.perf_counter()
        claim = fn(*args, **kwargs)
        claim.seconds = time.perf_counter() - start
        return claim

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _fmt(x) -> str:
    return format_number(x) if isinstance(x, Fraction) else str(x)


def sweep_params(n: int, seed: int) -> GeneratorParams:
    return GeneratorParams(n, seed=seed * 1000 + n, grid_step=Fraction(1, 4), span=Fraction(8))


@_timed
def check_median_upper_bound(samples: int = 10_000, ns=range(2, 13), seed: int = 0) -> Claim:
    """Median never exceeds 2 - 2/n on random unit instances."""
    violations, details = 0, []
    for n in ns:
        bound = 2 - Fraction(2, n)
        worst = Fraction(0)
        for inst in random_instances(sweep_params(n, seed), samples):
            r = approximation_ratio(Median(), inst).ratio
            if not ratio_at_most(r, bound):
                violations += 1
            elif r > worst:
                worst = r
        details.append(f"n={n}: max ratio {_fmt(worst)} <= {_fmt(bound)}")
    return Claim("median ≤ 2−2/n", "0 violations", f"{violations} violations over {samples} x {len(ns)} instances",
                 violations == 0, details=details)


@_timed
def check_median_tightness(ns=(6, 12, 60)) -> Claim:
    """Median hits 2 - 2/n exactly on the half-singleton instance."""
    details, ok = [], True
    for n in ns:
        r = approximation_ratio(Median(), wci2(n)).ratio
        expected = 2 - Fraction(2, n)
        ok &= r == expected
        details.append(f"n={n}: {_fmt(r)} vs {_fmt(expected)}")
    return Claim("median LB = 2−2/n", "ratio = 2-2/n", "; ".join(details), ok, details=details)


@_timed
def check_adversary_game(ns=range(4, 21, 2), delta: Fraction = Fraction(1, 1000)) -> Claim:
    """The adversary game pushes the median to 2 - 2/n, never catching a misreport."""
    details, ok, slow = [], True, []
    for n in ns:
        start = time.perf_counter()
        t = adversary_game(Median(), n, delta)
        if time.perf_counter() - start >= 1.0:
            slow.append(n)
        bound = 2 - Fraction(2, n)
        ok &= t.status == "RatioWitness" and ratio_at_least(t.outcome.ratio, bound)
        measured = _fmt(t.outcome.ratio) if t.status == "RatioWitness" else t.status
        details.append(f"n={n}: {measured} >= {_fmt(bound)}")
    measured = "; ".join(details)
    if slow:
        measured += f"; over 1s for n in {slow}"
    return Claim("median LB = 2−2/n (adversary game)", "RatioWitness >= 2-2/n, < 1s each",
                 measured, ok and not slow, details=details)


@_timed
def check_uniform_statistic(samples: int = 10_000, ns=(6, 12, 60), sweep_ns=(6, 12), seed: int = 0) -> Claim:
    """Exact values on both worst-case families and the 5/3 cap on random instances."""
    details, ok = [], True
    mech = UniformStatistic()
    for n in ns:
        r1 = approximation_ratio(mech, wci1(n)).ratio
        r2 = approximation_ratio(mech, wci2(n)).ratio
        e1 = Fraction(5, 3) - Fraction(1, n)
        e2 = Fraction(5, 3) - Fraction(4, 3 * n)
        ok &= r1 == e1 and r2 == e2
        details.append(f"n={n}: wci1 {_fmt(r1)} (= {_fmt(e1)}), wci2 {_fmt(r2)} (= {_fmt(e2)})")
    cap = Fraction(5, 3)
    violations = 0
    for n in sweep_ns:
        worst = Fraction(0)
        for inst in random_instances(sweep_params(n, seed), samples):
            r = approximation_ratio(mech, inst).ratio
            if not ratio_at_most(r, cap):
                violations += 1
            elif r > worst:
                worst = r
        details.append(f"random n={n}: max ratio {_fmt(worst)} <= 5/3")
    ok &= violations == 0
    return Claim("uniform-statistic ≤ 5/3", "exact wci values; 0 violations",
                 f"{violations} violations; " + "; ".join(details[: len(ns)]), ok, details=details)


def random_weights(rng, n: int) -> list[Fraction]:
    while True:
        raw = [int(x) for x in rng.integers(0, 21, size=n)]
        if sum(raw):
            total = sum(raw)
            return [Fraction(x, total) for x in raw]


@_timed
def check_order_statistic_lower_bound(vectors: int = 1000, ns=(4, 6, 8, 12), seed: int = 0) -> Claim:
    """No mix of order statistics beats 3/2 - 1/n on the singleton/group pair."""
    details, ok = [], True
    rng = _rng(seed * 1000 + 17)
    for n in ns:
        floor = Fraction(3, 2) - Fraction(1, n)
        lowest = None
        for _ in range(vectors):
            v = order_statistic_lower_bound(random_weights(rng, n), n)
            lowest = v if lowest is None else min(lowest, v)
        at_uniform = order_statistic_lower_bound([Fraction(1, n)] * n, n)
        good = lowest >= floor and at_uniform == floor
        ok &= good
        details.append(f"n={n}: min {_fmt(lowest)} >= {_fmt(floor)}, uniform {_fmt(at_uniform)}")
    return Claim("order-statistic LB ≥ 3/2−1/n", "min >= 3/2-1/n, equality at uniform", "; ".join(details), ok,
                 details=details)


@_timed
def check_weighted_median(cases=((1, Fraction(1, 2)), (1, Fraction(1, 4)), (2, Fraction(1, 10)))) -> Claim:
    """Weighted-Median is exactly 1/eps off on its bad instance."""
    details, ok = [], True
    for k, eps in cases:
        r = approximation_ratio(WeightedMedian(), weighted_median_worst(k, eps)).ratio
        ok &= r == 1 / eps
        details.append(f"k={k}, eps={_fmt(eps)}: {_fmt(r)}")
    return Claim("weighted-median = 1/ε", "ratio = 1/eps", "; ".join(details), ok, details=details)


@_timed
def check_unknown_lengths(epsilons=(Fraction(1, 2), Fraction(1, 10))) -> Claim:
    """The probe certifies 1/eps on covering controls and catches the abandoning one."""
    details, ok = [], True
    for eps in epsilons:
        for name, mech, want in (("leftmost-cover", controls.leftmost_cover, "RatioWitness"),
                                 ("rightmost-cover", controls.rightmost_cover, "RatioWitness"),
                                 ("threshold-cover", controls.threshold_cover, "TruthfulnessViolation")):
            out = unknown_lengths_probe(mech, eps)
            good = out.status == want
            if want == "RatioWitness":
                good = good and ratio_at_least(out.ratio, 1 / eps)
                details.append(f"eps={_fmt(eps)} {name}: ratio {_fmt(out.ratio)}")
            else:
                details.append(f"eps={_fmt(eps)} {name}: {out.status}")
            ok &= good
    return Claim("unknown lengths: ratio ≥ 1/ε or violation", "witness per control", "; ".join(details), ok,
                 details=details)


@_timed
def check_solver(samples: int = 1000, seed: int = 0) -> Claim:
    """Event sweep agrees with brute force and always lands on an endpoint."""
    mismatches, unanchored, checked = 0, 0, 0
    families = [GeneratorParams(n, seed=seed * 1000 + 500 + n, grid_step=Fraction(1, 4), span=Fraction(8),
                                max_length=(None if n % 2 else Fraction(3)))
                for n in range(1, 11)]
    per = max(1, samples // len(families))
    for params in families:
        for inst in random_instances(params, per):
            p, sc = optimal_placement(inst)
            _, bf = brute_force_optimal(inst, Fraction(1, 16))
            checked += 1
            mismatches += sc != bf
            c = inst.covering_length
            ends = {e for a in inst.agents for e in (a.s, a.t)}
            unanchored += not (p.s in ends or p.s + c in ends)
    ok = mismatches == 0 and unanchored == 0
    return Claim("solver = brute force, endpoint anchored", "0 mismatches, 0 unanchored",
                 f"{mismatches} mismatches, {unanchored} unanchored over {checked}", ok)


@_timed
def check_truthfulness(max_n: int = 4, coords=(0, Fraction(1, 2), 1, Fraction(3, 2), 2)) -> Claim:
    """Exhaustive small-grid misreport search over the truthful mechanisms and a control."""
    details, ok, runs, witnesses = [], True, 0, 0
    for n in range(1, max_n + 1):
        mechs = [KthStatistic(k) for k in range(1, n + 1)] + [Median(), WeightedMedian(), UniformStatistic()]
        for mech in mechs:
            found = truthfulness_sweep(mech, grid_profiles(n, coords), step=Fraction(1, 2))
            runs += 1
            witnesses += len(found)
            ok &= not found
            if found:
                details.append(f"n={n} {mech.name}: {len(found)} witnesses")
    details.append(f"{witnesses} witnesses over {runs} mechanism sweeps")
    control = sum(len(truthfulness_sweep(controls.mean_left, grid_profiles(n, coords), step=Fraction(1, 2)))
                  for n in range(1, max_n + 1))
    ok &= control >= 1
    details.append(f"mean-left control: {control} witnesses")
    return Claim("truthfulness suite", "0 witnesses for truthful mechanisms, >= 1 for control",
                 "; ".join(details), ok, details=details)


@_timed
def check_welfare(ns=(2, 4, 10, 100)) -> Claim:
    """Welfare conversion of the median's cost bound gives n/2."""
    details, ok = [], True
    for n in ns:
        v = welfare_ratio_bound(2 - Fraction(2, n), n, 1)
        ok &= v == Fraction(n, 2)
        details.append(f"n={n}: {_fmt(v)}")
    return Claim("welfare bound = n/2", "n/2", "; ".join(details), ok, details=details)


def run_all(quick: bool = False, seed: int = 0) -> list[Claim]:
    samples = 500 if quick else 10_000
    return [
        check_median_upper_bound(samples=samples, seed=seed),
        check_median_tightness(),
        check_adversary_game(),
        check_uniform_statistic(samples=samples, seed=seed),
        check_order_statistic_lower_bound(vectors=100 if quick else 1000, seed=seed),
        check_weighted_median(),
        check_unknown_lengths(),
        check_solver(samples=200 if quick else 1000, seed=seed),
        check_truthfulness(max_n=3 if quick else 4),
        check_welfare(),
    ]
