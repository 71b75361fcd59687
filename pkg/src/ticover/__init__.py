"""Truthful interval covering: exact solver, truthful mechanisms and audits."""

from .audit import (
    UNBOUNDED,
    DeviationWitness,
    Exhausted,
    GameTranscript,
    RatioReport,
    RatioWitness,
    TruthfulnessViolation,
    adversary_game,
    approximation_ratio,
    deviation_search,
    order_statistic_lower_bound,
    truthfulness_sweep,
    unknown_lengths_probe,
    welfare_ratio_bound,
)
from .core import (
    AgentInterval,
    Instance,
    Lottery,
    Placement,
    agent_cost,
    expected_social_cost,
    social_cost,
    social_welfare,
)
from .mechanisms import (
    ConvexCombination,
    KthStatistic,
    Median,
    UniformStatistic,
    WeightedMedian,
    kth_statistic,
    median_mechanism,
    parse_mechanism,
    uniform_statistic,
    weighted_median,
)
from .solver import brute_force_optimal, optimal_placement, sc_profile

__version__ = "0.1.0"

__all__ = [
    "UNBOUNDED", "AgentInterval", "ConvexCombination", "DeviationWitness", "Exhausted", "GameTranscript",
    "Instance", "KthStatistic", "Lottery", "Median", "Placement", "RatioReport", "RatioWitness",
    "TruthfulnessViolation", "UniformStatistic", "WeightedMedian", "adversary_game", "agent_cost",
    "approximation_ratio", "brute_force_optimal", "deviation_search", "expected_social_cost",
    "kth_statistic", "median_mechanism", "optimal_placement", "order_statistic_lower_bound",
    "parse_mechanism", "sc_profile", "social_cost", "social_welfare", "truthfulness_sweep",
    "uniform_statistic", "unknown_lengths_probe", "weighted_median", "welfare_ratio_bound",
]
