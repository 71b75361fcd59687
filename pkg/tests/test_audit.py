from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conftest import unit_instances
from ticover import controls
from ticover.audit import (
    UNBOUNDED,
    DeviationWitness,
    RatioWitness,
    TruthfulnessViolation,
    adversary_game,
    approximation_ratio,
    default_misreports,
    deviation_search,
    grid_profiles,
    order_statistic_closed_form,
    order_statistic_lower_bound,
    ratio_of,
    truthfulness_sweep,
    unknown_lengths_probe,
    welfare_ratio_bound,
)
from ticover.core import AgentInterval, Instance, Placement
from ticover.instances import wci1, wci2
from ticover.mechanisms import ConvexCombination, KthStatistic, Median, UniformStatistic, WeightedMedian
from ticover.solver import optimal_placement


def test_ratio_examples():
    assert approximation_ratio(Median(), wci2(6)).ratio == F(5, 3)
    rep = approximation_ratio(UniformStatistic(), wci1(6))
    assert (rep.mechanism_cost, rep.optimal_cost, rep.ratio) == (3, 2, F(3, 2))
    assert approximation_ratio(lambda inst: optimal_placement(inst)[0], wci1(12)).ratio == 1


def test_ratio_zero_optimum():
    assert ratio_of(F(0), F(0)) == 1
    assert ratio_of(F(1), F(0)) is UNBOUNDED
    rep = approximation_ratio(lambda inst: Placement(10), Instance.from_lefts([0]))
    assert rep.unbounded


def test_deviation_examples():
    assert deviation_search(Median(), Instance.from_lefts([0, 2, 4]), 0) is None
    inst = Instance.from_lefts([0, 2])
    w = deviation_search(controls.mean_left, inst, 0, [AgentInterval(0, -2)])
    assert w == DeviationWitness(0, 1, AgentInterval(0, -2), 0)
    assert deviation_search(KthStatistic(1), Instance.from_lefts([3]), 0) is None


def test_deviation_witness_must_be_strict():
    with pytest.raises(ValueError):
        DeviationWitness(0, F(1), AgentInterval(0, 0), F(1))


def test_empty_misreports_rejected():
    with pytest.raises(ValueError):
        deviation_search(Median(), Instance.from_lefts([0, 2]), 0, [])


def test_default_misreports_skip_truth():
    inst = Instance.from_lefts([0, 2])
    ms = default_misreports(inst, 0)
    assert AgentInterval(0, 0) not in ms
    assert AgentInterval(0, -2) in ms and AgentInterval(0, 3) in ms


def test_grid_profiles_counts():
    assert sum(1 for _ in grid_profiles(2, [0, 1, 2])) == 9


class _Shift:
    """Second order statistic that jumps to 0 once any left endpoint is negative."""

    k = 2

    def __call__(self, inst):
        return Placement(0) if inst.agents[0].s < 0 else Placement(inst.agents[1].s)


class _Mixed:
    randomized = True

    def __call__(self, inst):
        return ConvexCombination((F(1, 2), F(1, 2)))(inst)

    def components(self, n):
        return [(F(1, 2), KthStatistic(1)), (F(1, 2), _Shift())]


def test_coupled_check_catches_component_gain():
    # expected cost does not drop, but one realization does
    w = deviation_search(_Mixed(), Instance.from_lefts([0, 2]), 0, [AgentInterval(0, -1)])
    assert w is not None and w.realization == 2
    assert (w.true_cost, w.deviated_cost) == (1, 0)


def test_small_exhaustive_sweep():
    profiles = list(grid_profiles(3, [0, 1, 2]))
    for mech in (Median(), WeightedMedian(), UniformStatistic(), KthStatistic(3)):
        assert truthfulness_sweep(mech, profiles) == []
    assert truthfulness_sweep(controls.mean_left, profiles)


@settings(max_examples=40, deadline=None)
@given(unit_instances(max_n=5), st.data())
def test_order_statistics_truthful(inst, data):
    k = data.draw(st.integers(1, inst.n))
    agent = data.draw(st.sampled_from([a.id for a in inst.agents]))
    assert deviation_search(KthStatistic(k), inst, agent, step=F(1, 2)) is None


@pytest.mark.parametrize("n", range(4, 21, 2))
def test_adversary_median(n):
    t = adversary_game(Median(), n)
    assert isinstance(t.outcome, RatioWitness)
    assert t.outcome.ratio >= 2 - F(2, n)
    assert t.outcome.holds


def test_adversary_median_n4_final_instance():
    t = adversary_game(Median(), 4)
    out = t.outcome
    assert (out.mechanism_cost, out.optimal_cost, out.ratio) == (3, 2, F(3, 2))
    assert sorted(out.instance.lefts) == [0, F(999, 500), 4, 4]


def test_adversary_mirrors_when_right_cluster_is_hit():
    t = adversary_game(KthStatistic(4), 6)
    assert t.mirrored
    assert t.status == "RatioWitness" and t.outcome.ratio >= F(5, 3)


def test_adversary_mean_left_never_exhausted():
    t = adversary_game(controls.mean_left, 4)
    assert t.status in ("RatioWitness", "TruthfulnessViolation")
    if t.status == "RatioWitness":
        assert t.outcome.ratio >= F(3, 2)


def test_adversary_catches_abandoning_mechanism():
    def flighty(inst):
        # covers the left cluster on the seed, then runs away from any change
        return Placement(0) if inst.lefts.count(0) == inst.n // 2 else Placement(-10)

    t = adversary_game(flighty, 6)
    assert isinstance(t.outcome, TruthfulnessViolation)
    w = t.outcome.witness
    assert w.deviated_cost < w.true_cost


def test_adversary_rejects_bad_input():
    with pytest.raises(ValueError):
        adversary_game(Median(), 5)
    with pytest.raises(ValueError):
        adversary_game(Median(), 6, delta=1)


def test_order_statistic_lower_bound_examples():
    assert order_statistic_lower_bound([F(1, 4)] * 4, 4) == F(5, 4)
    assert order_statistic_lower_bound([0, 0, 0, 1], 4) == F(3, 2)
    assert order_statistic_lower_bound([0, 1, 0, 0], 4) == F(3, 2)


@given(st.lists(st.integers(0, 9), min_size=6, max_size=6).filter(any))
def test_order_statistic_bound_matches_closed_form(raw):
    w = [F(x, sum(raw)) for x in raw]
    value = order_statistic_lower_bound(w, 6)
    assert value == order_statistic_closed_form(w, 6)
    assert value >= F(3, 2) - F(1, 6)


def test_probe_controls():
    for eps in (F(1, 2), F(1, 10)):
        for mech in (controls.leftmost_cover, controls.rightmost_cover):
            out = unknown_lengths_probe(mech, eps)
            assert isinstance(out, RatioWitness) and out.ratio >= 1 / eps
        assert isinstance(unknown_lengths_probe(controls.threshold_cover, eps), TruthfulnessViolation)


def test_probe_leftmost_half():
    out = unknown_lengths_probe(controls.leftmost_cover, F(1, 2))
    assert (out.mechanism_cost, out.optimal_cost) == (F(1, 2), F(1, 4))
    out = unknown_lengths_probe(controls.rightmost_cover, F(1, 2))
    assert (out.mechanism_cost, out.optimal_cost) == (1, F(1, 2))


def test_probe_lottery_path():
    def coin(inst):
        from ticover.core import Lottery
        return Lottery(((Placement(inst.agents[0].s), F(1, 2)), (Placement(inst.agents[-1].s), F(1, 2))))

    out = unknown_lengths_probe(coin, F(1, 10))
    assert out.status in ("RatioWitness", "TruthfulnessViolation")
    if out.status == "RatioWitness":
        assert out.holds


def test_welfare_ratio_bound():
    for n in (2, 4, 10, 100):
        assert welfare_ratio_bound(2 - F(2, n), n, 1) == F(n, 2)
    assert welfare_ratio_bound(1, 7, 3) == 1
    assert welfare_ratio_bound(F(5, 3), 6, 3) == F(7, 5)
    with pytest.raises(ValueError):
        welfare_ratio_bound(F(1, 2), 3, 1)
