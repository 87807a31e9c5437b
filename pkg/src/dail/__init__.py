"""Interference avoidance for coexisting TDMA body-area networks by
channel/time-slot hopping on orthogonal Latin rectangles (DAIL)."""

from .analysis import VARIANTS, AnalyticalParams, collision_bounds, success_probability
from .latin import (
    LatinRectangle,
    LatinSquare,
    OrthogonalFamily,
    TransmissionPattern,
    are_orthogonal,
    cut_rectangle,
    generate_mols,
    overlap_count,
    pattern_of,
    rectangle_family,
)
from .oracle import OracleConfig, exhaustive_theorem_check, monte_carlo_lambda
from .sim import (
    AbstractQ,
    CollisionReport,
    Disk,
    EnergyModel,
    Network,
    NetworkConfig,
    Placed,
    assign_schedules,
    build_network,
    run,
    simulate,
    theorem_violations,
)

__version__ = "0.1.0"
