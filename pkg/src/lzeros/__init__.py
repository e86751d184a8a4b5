"""High-precision zeros of zeta and L-functions from one transcendental equation per zero."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BranchWindowWarning,
    ConvergenceError,
    DomainError,
    InsufficientData,
    LZerosError,
    MultiRootWarning,
    NoSolution,
    PrecisionExhausted,
    ResourceError,
)
from .numerics import PrecisionContext  # noqa: E402
from .lfuncs import (  # noqa: E402
    LFunctionSpec,
    davenport_heilbronn,
    dh_spec,
    dirichlet_l,
    dirichlet_spec,
    evaluate,
    modular12_spec,
    modular_l,
    spec_for,
    zeta,
    zeta_spec,
)
from .solver import (  # noqa: E402
    SolverConfig,
    ZeroRecord,
    count_zeros,
    counting_line,
    counting_strip,
    find_offline_zero,
    gap_scan,
    lambert_seed,
    solve_many,
    solve_zero,
)
from .analysis import (  # noqa: E402
    bounce_number,
    gram_points,
    pair_correlation,
    pi_from_zeros,
    psi_from_zeros,
    s_mean,
    s_of_y,
)
from .saddle import saddle_points, zeta_saddle  # noqa: E402
