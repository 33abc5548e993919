"""Eternal domination games on finite graphs and infinite regular grids."""

from .graph_core import Graph, GuardConfig, Kind, Variant
from .game_engine import DefenseMove, apply_defense, legal_attacks, transition_feasible
from .exact_solver import EternalResult, SafeFamily, eternal_number, oracle_minimax, safe_family
from .strategy_lib import Policy, Transcript, make_floating_policy, policy_defend, simulate
from .reduction_forge import ReductionInstance, TheoremId, build_reduction, verify_reduction
from .grid_patrol import (GridKind, PatrolState, grid_defend, grid_neighbors,
                          pattern_member, simulate_grid, unique_dominator,
                          verify_window)

__version__ = "0.1.0"

__all__ = [
    "Graph", "GuardConfig", "Kind", "Variant",
    "DefenseMove", "apply_defense", "legal_attacks", "transition_feasible",
    "EternalResult", "SafeFamily", "eternal_number", "oracle_minimax", "safe_family",
    "Policy", "Transcript", "make_floating_policy", "policy_defend", "simulate",
    "ReductionInstance", "TheoremId", "build_reduction", "verify_reduction",
    "GridKind", "PatrolState", "grid_defend", "grid_neighbors",
    "pattern_member", "simulate_grid", "unique_dominator", "verify_window",
]
