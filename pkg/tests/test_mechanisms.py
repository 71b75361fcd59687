from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import unit_instances
from ticover.controls import mean_left
from ticover.core import Instance, Lottery, Placement, social_cost
from ticover.instances import wci1, wci2, weighted_median_worst
from ticover.mechanisms import (
    ConvexCombination,
    KthStatistic,
    MechanismError,
    Median,
    UniformStatistic,
    WeightedMedian,
    convex_combination,
    kth_statistic,
    median_index,
    median_mechanism,
    mechanism_name,
    parse_mechanism,
    uniform_indices,
    uniform_statistic,
    weighted_median,
)

THREE = Instance.from_lefts([0, 2, 5])


def test_kth_statistic_examples():
    assert kth_statistic(THREE, 2) == Placement(2)
    assert kth_statistic(THREE, 1) == Placement(0)
    assert kth_statistic(Instance.from_lefts([0, 0]), 2) == Placement(0)


def test_kth_statistic_errors():
    with pytest.raises(MechanismError):
        kth_statistic(THREE, 4)
    with pytest.raises(MechanismError):
        kth_statistic(THREE, 0)
    with pytest.raises(MechanismError):
        kth_statistic(Instance.from_intervals([(0, 1), (2, 4)]), 1)


def test_index_conventions():
    assert [median_index(n) for n in range(1, 7)] == [1, 1, 2, 2, 3, 3]
    assert uniform_indices(6) == (2, 3, 4)
    assert uniform_indices(3) == (1, 2, 2)
    assert uniform_indices(1) == (1, 1, 1)


def test_median_examples():
    assert median_mechanism(Instance.from_lefts([0, 1, 4, 9])) == Placement(1)
    assert median_mechanism(Instance.from_lefts([0, 1])) == Placement(0)
    p = median_mechanism(wci2(6))
    assert p == Placement(4)
    assert social_cost(wci2(6), p) == 5


def test_uniform_statistic_examples():
    assert uniform_statistic(wci1(6)) == Lottery(((Placement(2), F(1, 3)), (Placement(4), F(2, 3))))
    assert uniform_statistic(THREE) == Lottery(((Placement(0), F(1, 3)), (Placement(2), F(2, 3))))
    assert uniform_statistic(Instance.from_lefts([7])) == Lottery.point(Placement(7))


def test_weighted_median_examples():
    inst = weighted_median_worst(1, F(1, 2))
    assert weighted_median(inst) == Placement(0)
    assert social_cost(inst, 0) == 1
    assert weighted_median(Instance.from_lefts([3])) == Placement(3)


def test_convex_combination_examples():
    assert convex_combination(THREE, [0, 1, 0]) == Lottery.point(kth_statistic(THREE, 2))
    two = Instance.from_lefts([0, 3])
    assert convex_combination(two, [F(1, 2), F(1, 2)]) == Lottery(((Placement(0), F(1, 2)), (Placement(3), F(1, 2))))
    assert convex_combination(Instance.from_lefts([0, 0]), [F(1, 2), F(1, 2)]) == Lottery.point(Placement(0))


def test_convex_combination_errors():
    with pytest.raises(MechanismError):
        convex_combination(THREE, [F(1, 2), F(1, 2)])
    with pytest.raises(MechanismError):
        convex_combination(THREE, [1, 1, -1])
    with pytest.raises(MechanismError):
        convex_combination(THREE, [F(1, 3), F(1, 3), F(1, 2)])


def test_parse_mechanism():
    assert parse_mechanism("kth:2") == KthStatistic(2)
    assert parse_mechanism("median") == Median()
    assert parse_mechanism("uniform-statistic") == UniformStatistic()
    assert parse_mechanism("weighted-median") == WeightedMedian()
    assert parse_mechanism("convex:1/2,1/2") == ConvexCombination((F(1, 2), F(1, 2)))
    assert parse_mechanism("control:mean-left") is mean_left
    assert mechanism_name(mean_left) == "control:mean-left"
    for bad in ("kth:x", "nope", "control:nope", "convex:1/2"):
        with pytest.raises(MechanismError):
            parse_mechanism(bad)


@given(unit_instances())
def test_weighted_median_equals_median_on_unit_lengths(inst):
    assert weighted_median(inst) == median_mechanism(inst)


@given(unit_instances())
def test_mirror_maps_kth_to_opposite_statistic(inst):
    # distinct lefts keep the id tie-break out of the picture
    inst = Instance.from_lefts(sorted(set(inst.lefts)))
    n = inst.n
    for k in range(1, n + 1):
        mirrored = inst.mirror_placement(kth_statistic(inst, k))
        assert kth_statistic(inst.mirror(), n + 1 - k) == mirrored


@given(unit_instances(), st.randoms(use_true_random=False))
def test_anonymity(inst, rnd):
    lefts = inst.lefts
    rnd.shuffle(lefts)
    other = Instance.from_lefts(lefts)
    assert median_mechanism(other) == median_mechanism(inst)
    assert uniform_statistic(other) == uniform_statistic(inst)


@given(unit_instances())
def test_uniform_statistic_probabilities(inst):
    lot = uniform_statistic(inst)
    assert sum(q for _, q in lot) == 1
    assert all(q in (F(1, 3), F(2, 3), 1) for _, q in lot)
