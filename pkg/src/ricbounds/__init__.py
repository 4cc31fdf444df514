"""Probabilistic bounds on restricted isometry constants of Gaussian
matrices: asymptotic bound families, finite-size tail probabilities,
empirical estimates, covering simulations, and the l1 recovery phase
transition curve."""

from .asymptotic import (
    AsymptoticBound,
    bct_bounds,
    bt_bounds,
    compute_bounds,
    ct_bounds,
    l1_phase_transition,
)
from .covering import CoveringPlan, covering_bound, min_group_count, random_cover
from .empirical import (
    EmpiricalRun,
    MatrixSample,
    exhaustive_ric,
    gram_extreme_eigs,
    local_search,
    sample_gaussian,
    sharpness_ratio,
)
from .errors import (
    DomainError,
    GuardError,
    IOFailure,
    RicBoundsError,
    SolverError,
)
from .finite import (
    FiniteInstance,
    TailBound,
    covering_failure_bound,
    g_max_pdf_bound,
    g_min_pdf_bound,
    tail_prob_lower,
    tail_prob_upper,
)
from .rates import ProblemShape, psi_max, psi_min, shannon_entropy

__version__ = "1.0.0"

__all__ = [
    "AsymptoticBound",
    "CoveringPlan",
    "DomainError",
    "EmpiricalRun",
    "FiniteInstance",
    "GuardError",
    "IOFailure",
    "MatrixSample",
    "ProblemShape",
    "RicBoundsError",
    "SolverError",
    "TailBound",
    "bct_bounds",
    "bt_bounds",
    "compute_bounds",
    "covering_bound",
    "covering_failure_bound",
    "ct_bounds",
    "exhaustive_ric",
    "g_max_pdf_bound",
    "g_min_pdf_bound",
    "gram_extreme_eigs",
    "l1_phase_transition",
    "local_search",
    "min_group_count",
    "psi_max",
    "psi_min",
    "random_cover",
    "sample_gaussian",
    "shannon_entropy",
    "sharpness_ratio",
    "tail_prob_lower",
    "tail_prob_upper",
]
