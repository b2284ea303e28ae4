"""Frank-Wolfe dynamics laboratory on lp balls.

Exact-line-search and short-step Frank-Wolfe on the unit lp ball, the
recentered/scaled slow dynamics with their fixed-point curve, slow-start
initializations, and an experiment harness for convergence-rate and
asymptotic-constant measurements.
"""

__version__ = "0.1.0"

from .dynamics import (
    CenteredState,
    SlowConstants,
    SlowCurvePoint,
    F,
    G,
    fixed_point_y,
    one_step_uw,
    phi,
    phi_dy,
    slow_constants,
    slow_curve,
    slow_start,
)
from .errors import (
    BracketFailureError,
    DegenerateDirectionError,
    DomainError,
    FWLabError,
    InfeasibleStartError,
    InsufficientDataError,
    NumericError,
    UnsupportedExponentError,
    UnsupportedObjectiveError,
    ZeroGradientError,
)
from .experiments import (
    HeatmapCell,
    HebResult,
    RateFit,
    coincidence_check,
    confinement_check,
    constant_convergence,
    contraction_series,
    fit_rate,
    heatmap,
    heb_experiment,
    random_feasible_points,
    rate_report,
    tracking_series,
)
from .geometry import BallSpec, is_strictly_feasible, lmo, lp_norm
from .objectives import HEBPower, Objective, Quadratic, gradient, primal_gap, residual, value
from .precision import (
    DOUBLE,
    Precision,
    stable_d1,
    stable_m_minus_u,
    stable_one_minus_v1,
    stable_pow1p,
)
from .solver import (
    RULE_EXACT,
    RULE_SHORT,
    ProblemSpec,
    SolverConfig,
    TrajectoryRecord,
    exact_linesearch_gamma,
    golden_section_gamma,
    iterations_to_target,
    run,
    short_step_gamma,
    write_trajectory_csv,
)
