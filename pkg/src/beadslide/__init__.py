"""Bead sliding: exact slide certificates and the convex inequalities they imply."""

from .core import (
    BeadConfig,
    GapVector,
    Rational,
    SlideMove,
    SlidePlan,
    apply_slide,
    apply_slide_gaps,
    from_gaps,
    gaps,
    is_slideable_target,
    leq,
    new_config,
    spread,
)
from .planner import (
    PlanResult,
    PredecessorInterval,
    VerificationReport,
    approx_plan,
    converse_counterexample,
    epsilon_sleeve,
    has_predecessor,
    midpoint_move,
    one_step_predecessor_interval,
    plan,
    sweep_T,
    sweep_bound,
    try_plan,
    verify_plan,
)
from .oracle import (
    LatticeSpec,
    ReachabilityVerdict,
    enumerate_one_step_predecessors,
    lattice_reachable,
    random_pair,
)
from .majorization import (
    EQUAL_TOTALS,
    PREFIX_DOMINANCE,
    MajorizationInstance,
    PiecewiseLinear,
    ShapeWarning,
    SmoothFunction,
    TestFunction,
    catalog,
    central_difference,
    check_concave_schur,
    check_concave_sum_inequality,
    check_schur_convex,
    check_transform_order,
    concave_clamp,
    derivative_consistent,
    find_concavity_counterexample,
    increasing_rearrangement,
    transform_gaps,
)

__version__ = "0.1.0"
