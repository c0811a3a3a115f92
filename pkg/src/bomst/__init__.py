"""Two-phase solver for the bi-objective minimum spanning tree problem."""

from .geometry import (
    Group,
    Point,
    Relation,
    Status,
    Triangle,
    Weight,
    Zone,
    compare,
    group_angle,
    group_nd_bound,
    group_weight,
    initial_upper_bound,
    local_upper_bounds,
    make_group,
    nd_bound,
    weighted_value,
)
from .instances import GenParams, Instance, InstanceFormatError, generate, read_instance, write_instance
from .optimal import ExplorationCosts, effectiveness_ratio, exhaustive_optimal, optimal_grouping
from .oracle import FrontierClassification, classify, enumerate_all_trees, frontier_of
from .phase1 import ExtremeSet, dichotomic_search
from .phase2 import (
    BudgetExceededError,
    SearchState,
    apply_coverage,
    explore_group,
    trim_empty_extremes,
    update_nd,
    update_ub,
)
from .ranking import PointListProblem, SpanningTreeProblem, min_weighted_tree
from .strategies import STRATEGY_LABELS, StrategySpec, parse_strategy, solve

__version__ = "0.1.0"
