"""Approval-based committee rules and their robustness to ballot perturbations."""

from .constructions import (
    DEFAULT_MAX_VOTERS,
    BipartiteGraph,
    GadgetBundle,
    PhragmenTimepoints,
    RX3CInstance,
    X3CInstance,
    count_perfect_matchings,
    covered_x3c_example,
    matching_to_sav_counting,
    no_cover_rx3c_n2,
    parse_graph,
    parse_x3c,
    phragmen_reduction_timepoints,
    rx3c_to_greedy,
    rx3c_to_phragmen,
    sav_add_witness,
    sav_remove_witness,
    serialize_graph,
    serialize_x3c,
    shortcut_yes_instance,
    solve_exact_cover,
    thiele_witness,
    triple_cover_rx3c,
    uncoverable_x3c_example,
    x3c_to_thiele,
)
from .core import (
    CapExceeded,
    Committee,
    Election,
    approval_score,
    approval_scores,
    committee_score,
    election,
    render_diff_matrix,
    sav_score,
    sav_scores,
)
from .counting import (
    COUNT_KINDS,
    CountOutcome,
    av_count_state,
    av_count_unchanged,
    oracle_count_unchanged,
    unchanged_probability,
)
from .perturb import (
    OP_KINDS,
    Add,
    Operation,
    Remove,
    Swap,
    apply,
    apply_sequence,
    displacement,
    empirical_robustness_level,
    feasible_operations,
    is_feasible,
    level_argmax,
    op_kind,
)
from .radius import (
    ExceedsBound,
    Finite,
    Impossible,
    RadiusOutcome,
    av_radius,
    oracle_radius,
    radius_decision,
    sav_radius,
)
from .rules import (
    DEFAULT_CAP,
    ExplicitWinners,
    RuleSpec,
    ThieleVector,
    ThresholdWinners,
    WinnerSet,
    greedy_thiele,
    phragmen,
    phragmen_trace,
    preset_rule,
    thiele_vector,
    winner_set,
    winner_sets_equal,
    winners_separable,
    winners_thiele,
)

__all__ = [
    "Add",
    "BipartiteGraph",
    "CapExceeded",
    "Committee",
    "CountOutcome",
    "COUNT_KINDS",
    "DEFAULT_CAP",
    "DEFAULT_MAX_VOTERS",
    "Election",
    "ExceedsBound",
    "ExplicitWinners",
    "Finite",
    "GadgetBundle",
    "Impossible",
    "OP_KINDS",
    "Operation",
    "PhragmenTimepoints",
    "RadiusOutcome",
    "Remove",
    "RuleSpec",
    "RX3CInstance",
    "Swap",
    "ThieleVector",
    "ThresholdWinners",
    "WinnerSet",
    "X3CInstance",
    "approval_score",
    "approval_scores",
    "apply",
    "apply_sequence",
    "av_count_state",
    "av_count_unchanged",
    "av_radius",
    "committee_score",
    "count_perfect_matchings",
    "covered_x3c_example",
    "displacement",
    "election",
    "empirical_robustness_level",
    "feasible_operations",
    "greedy_thiele",
    "is_feasible",
    "level_argmax",
    "matching_to_sav_counting",
    "no_cover_rx3c_n2",
    "op_kind",
    "oracle_count_unchanged",
    "oracle_radius",
    "parse_graph",
    "parse_x3c",
    "phragmen",
    "phragmen_reduction_timepoints",
    "phragmen_trace",
    "preset_rule",
    "radius_decision",
    "render_diff_matrix",
    "rx3c_to_greedy",
    "rx3c_to_phragmen",
    "sav_add_witness",
    "sav_radius",
    "sav_remove_witness",
    "sav_score",
    "sav_scores",
    "serialize_graph",
    "serialize_x3c",
    "shortcut_yes_instance",
    "solve_exact_cover",
    "thiele_vector",
    "thiele_witness",
    "triple_cover_rx3c",
    "unchanged_probability",
    "uncoverable_x3c_example",
    "winner_set",
    "winner_sets_equal",
    "winners_separable",
    "winners_thiele",
    "x3c_to_thiele",
]

__version__ = "0.1.0"
