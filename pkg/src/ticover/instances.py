"""Named instance families and seeded random instances."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import AgentInterval, CoordLike, Instance, coord


def _check_gap(gap: Fraction) -> Fraction:
    gap = coord(gap)
    if gap <= 1:
        raise ValueError(f"gap must exceed 1 so singletons stay disjoint, got {gap}")
    return gap


def singletons_then_group(n_single: int, n_group: int, gap: CoordLike = 2) -> Instance:
    """``n_single`` unit intervals spaced by ``gap`` followed by ``n_group`` identical ones."""
    gap = _check_gap(gap)
    lefts = [j * gap for j in range(n_single)] + [n_single * gap] * n_group
    return Instance.from_lefts(lefts)


def wci1(n: int, gap: CoordLike = 2) -> Instance:
    """n/3 singletons and a group of 2n/3 agents."""
    if n <= 0 or n % 6:
        raise ValueError(f"wci1 needs n divisible by 6, got {n}")
    return singletons_then_group(n // 3, 2 * n // 3, gap)


def wci2(n: int, gap: CoordLike = 2) -> Instance:
    """n/2 singletons and a group of n/2 agents."""
    if n <= 0 or n % 6:
        raise ValueError(f"wci2 needs n divisible by 6, got {n}")
    return singletons_then_group(n // 2, n // 2, gap)


def singleton_group(n: int, gap: CoordLike = 2) -> Instance:
    """n/2 singletons spaced by ``gap``, then n/2 identical agents one empty slot further.

    For n=4 and gap 2 that is ``{[0,1], [2,3], [6,7], [6,7]}``.
    """
    if n <= 0 or n % 2:
        raise ValueError(f"singleton_group needs an even n, got {n}")
    gap = _check_gap(gap)
    half = n // 2
    return Instance.from_lefts([j * gap for j in range(half)] + [(half + 1) * gap] * half)


def two_cluster_seed(n: int) -> Instance:
    """Half the agents on [0, 1], the other half on [n, n + 1]."""
    if n < 2 or n % 2:
        raise ValueError(f"two_cluster_seed needs an even n >= 2, got {n}")
    return Instance.from_lefts([0] * (n // 2) + [n] * (n // 2))


def weighted_median_worst(k: int, eps: CoordLike) -> Instance:
    """k unit agents on [0, 1] and k/eps agents on [1, 1 + eps]."""
    eps = coord(eps)
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    count = Fraction(k) / eps
    if count.denominator != 1:
        raise ValueError(f"k/eps = {count} is not an integer")
    m = int(count)
    return Instance.from_lefts([0] * k + [1] * m, covering_length=1, lengths=[1] * k + [eps] * m)


def unknown_length_pair(eps: CoordLike) -> tuple[Instance, Instance]:
    """``{[0,1], [3,3+eps]}`` and the same with the left agent shrunk to ``[0, eps^2]``."""
    eps = coord(eps)
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    first = Instance((AgentInterval(0, 0, 1), AgentInterval(1, 3, eps)))
    second = Instance((AgentInterval(0, 0, eps * eps), AgentInterval(1, 3, eps)))
    return first, second


@dataclass(frozen=True)
class GeneratorParams:
    n: int
    seed: int = 0
    grid_step: Fraction = Fraction(1, 4)
    span: Fraction = Fraction(8)
    gap: Fraction = Fraction(2)
    max_length: Fraction | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "grid_step", coord(self.grid_step))
        object.__setattr__(self, "span", coord(self.span))
        object.__setattr__(self, "gap", coord(self.gap))
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.grid_step <= 0 or self.span < 0:
            raise ValueError("random instances need a non-empty grid")
        if self.max_length is not None:
            object.__setattr__(self, "max_length", coord(self.max_length))
            if self.max_length < self.grid_step:
                raise ValueError("max_length must be at least one grid step")


def _rng(seed: int) -> np.random.Generator:
    # Philox is counter based; the stream depends only on the 64-bit seed.
    return np.random.Generator(np.random.Philox(seed & 0xFFFFFFFFFFFFFFFF))


def random_lefts(rng: np.random.Generator, params: GeneratorParams) -> list[Fraction]:
    cells = params.span / params.grid_step
    top = int(cells)  # grid points 0, step, ..., floor(span/step) * step
    draws = rng.integers(0, top + 1, size=params.n)
    num, den = params.grid_step.numerator, params.grid_step.denominator
    return [Fraction(int(d) * num, den) for d in draws]


def random_instance(params: GeneratorParams) -> Instance:
    """n unit intervals with left endpoints drawn uniformly from ``{0, step, ..., span}``."""
    return Instance.from_lefts(random_lefts(_rng(params.seed), params))


def random_instances(params: GeneratorParams, count: int):
    """``count`` instances from one stream seeded by ``params.seed``.

    With ``params.max_length`` set, agent lengths and the covering length are
    drawn from ``{step, 2 step, ..., max_length}`` instead of being 1.
    """
    rng = _rng(params.seed)
    for _ in range(count):
        lefts = random_lefts(rng, params)
        if params.max_length is None:
            yield Instance.from_lefts(lefts)
            continue
        step = params.grid_step
        top = int(params.max_length / step)
        draws = rng.integers(1, top + 1, size=params.n + 1)
        lengths = [int(d) * step for d in draws]
        yield Instance.from_lefts(lefts, covering_length=lengths[-1], lengths=lengths[:-1])
