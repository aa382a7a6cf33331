"""Exact projective rigidity analysis of point-line configurations."""

from .analysis import (
    AnalysisReport,
    BalanceReport,
    SecondOrderResult,
    analyze,
    compare_realizations,
    count_check,
    detect_geometric_incidences,
    nontrivial_flex_basis,
    second_order_extension_test,
    second_order_rigidity_verdict,
    test_added_incidence,
    verify_three_fold_balance,
)
from .errors import *  # noqa: F401,F403
from .fileio import dumps, load, parse, read, save
from .geometry import (
    Configuration,
    HomogeneousTriple,
    IncidenceStructure,
    apply_transform,
    conic_determinant,
    dualize,
    incident,
    join,
    line,
    meet,
    normalize_to_chart,
    point,
)
from .rigidity import (
    FlexVector,
    PinningSystem,
    RigidityMatrix,
    StressVector,
    assemble,
    exact_rank,
    exact_rank_kernel_cokernel,
    is_infinitesimally_rigid,
    numeric_rank,
    pinned_nullity,
    trivial_motion_basis,
)
from .svg import SvgOptions, render_svg

__version__ = "0.1.0"
