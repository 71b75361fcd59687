from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from conftest import mixed_instances, unit_instances
from ticover.core import Instance, Placement, social_cost
from ticover.instances import GeneratorParams, random_instances, wci1
from ticover.solver import brute_force_optimal, candidate_placements, optimal_placement, sc_profile


def test_candidates():
    assert [p.s for p in candidate_placements(Instance.from_lefts([0]))] == [-1, 0, 1]
    assert [p.s for p in candidate_placements(Instance.from_lefts([0, 1]))] == [-1, 0, 1, 2]
    half = Instance.from_intervals([(0, 1)], covering_length=F(1, 2))
    assert [p.s for p in candidate_placements(half)] == [F(-1, 2), 0, F(1, 2), 1]


def test_optimal_placement_examples():
    assert optimal_placement(Instance.from_lefts([0, 1])) == (Placement(0), 1)
    assert optimal_placement(wci1(6)) == (Placement(4), 2)
    assert optimal_placement(Instance.from_lefts([5])) == (Placement(5), 0)


def test_profile_single_agent():
    prof = sc_profile(Instance.from_lefts([0]))
    assert prof.breakpoints == (-1, 0, 1)
    assert prof.slopes == (0, -1, 1, 0)
    assert prof.value_at_first == 1
    assert prof(0) == 0 and prof(F(1, 2)) == F(1, 2) and prof(-7) == 1


def test_profile_flat_segment():
    prof = sc_profile(Instance.from_lefts([0, 1]))
    assert all(prof(F(k, 8)) == 1 for k in range(9))
    assert prof.minimum() == (0, 1)


def test_brute_force_examples():
    assert brute_force_optimal(Instance.from_lefts([0, 1]), F(1, 8)) == (Placement(0), 1)
    assert brute_force_optimal(Instance.from_lefts([3]), F(1, 4)) == (Placement(3), 0)


def test_brute_force_agrees_on_seeded_family():
    for inst in random_instances(GeneratorParams(5, seed=7), 100):
        assert optimal_placement(inst)[1] == brute_force_optimal(inst, F(1, 16))[1]


@given(mixed_instances())
def test_profile_matches_social_cost(inst):
    prof = sc_profile(inst)
    for x in [F(k, 8) for k in range(-24, 120, 3)]:
        assert prof(x) == social_cost(inst, x)


@given(mixed_instances())
def test_profile_shape(inst):
    prof = sc_profile(inst)
    assert prof.slopes[0] <= 0 <= prof.slopes[-1]
    assert all(abs(s) <= inst.n for s in prof.slopes)
    assert prof(prof.breakpoints[0] - 100) == inst.total_length


@settings(max_examples=150)
@given(mixed_instances())
def test_optimal_matches_brute_force_and_is_anchored(inst):
    p, sc = optimal_placement(inst)
    assert social_cost(inst, p) == sc
    assert sc == brute_force_optimal(inst, F(1, 8))[1]
    c = inst.covering_length
    ends = {e for a in inst.agents for e in (a.s, a.t)}
    assert p.s in ends or p.s + c in ends


@given(unit_instances())
def test_optimal_is_leftmost(inst):
    p, sc = optimal_placement(inst)
    assert all(social_cost(inst, q) > sc for q in candidate_placements(inst) if q < p)


@given(unit_instances(), st.randoms(use_true_random=False))
def test_optimum_permutation_invariant(inst, rnd):
    lefts = inst.lefts
    rnd.shuffle(lefts)
    assert optimal_placement(Instance.from_lefts(lefts)) == optimal_placement(inst)
