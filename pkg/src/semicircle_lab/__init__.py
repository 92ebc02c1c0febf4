"""Simulation and exact-combinatorics toolkit for semicircle-law spectral
statistics of random symmetric matrices with variance profiles.

The library side exposes seeded matrix ensembles, spectral statistics,
distribution distances, the interpolation path between ensembles, and the
closed-walk combinatorics behind the trace-moment method.  The ``cli``
module adds a batch front end; ``plots`` renders the standard figures.
"""

from . import semicircle
from .ensembles import (
    KINDS,
    EnsembleSpec,
    conditional_variance,
    coupling_field,
    paired_seeds,
    profile_block,
    profile_constant,
    profile_from_desc,
    profile_smooth,
    profile_zero,
    sample,
)
from .interpolation import (
    DEFAULT_Z_GRID,
    PathSample,
    path_seed_pairs,
    stieltjes_at,
    sweep,
    universality_gap,
    z_matrix,
)
from .matrices import (
    ConditionReport,
    ConditionTolerances,
    SymmetricMatrix,
    TruncationResult,
    VarianceProfile,
    b_values,
    check_conditions,
    lindeberg_ratio,
    symmetric_from_upper,
    truncate,
    truncation_perturbation_check,
    truncation_sequence,
)
from .metrics import (
    StepCDF,
    as_step,
    kolmogorov,
    kolmogorov_to_semicircle,
    levy,
    semicircle_step,
)
from .moment_graphs import (
    CanonicalGraph,
    MomentBreakdown,
    category_counts,
    class_size,
    classify,
    enumerate_canonical,
    gaussian_moment_exact,
    graph_contribution,
    iter_canonical,
    wick_moment_oracle,
)
from .semicircle import catalan_moment
from .spectra import (
    AveragedESD,
    SpectralDistribution,
    averaged_esd,
    default_grid,
    eigenvalues,
    empirical_moment,
    empirical_stieltjes,
    esd,
    esd_eval,
    thread_count,
)

__version__ = "0.1.0"

__all__ = [
    "semicircle",
    "KINDS",
    "EnsembleSpec",
    "conditional_variance",
    "coupling_field",
    "paired_seeds",
    "profile_block",
    "profile_constant",
    "profile_from_desc",
    "profile_smooth",
    "profile_zero",
    "sample",
    "DEFAULT_Z_GRID",
    "PathSample",
    "path_seed_pairs",
    "stieltjes_at",
    "sweep",
    "universality_gap",
    "z_matrix",
    "ConditionReport",
    "ConditionTolerances",
    "SymmetricMatrix",
    "TruncationResult",
    "VarianceProfile",
    "b_values",
    "check_conditions",
    "lindeberg_ratio",
    "symmetric_from_upper",
    "truncate",
    "truncation_perturbation_check",
    "truncation_sequence",
    "StepCDF",
    "as_step",
    "kolmogorov",
    "kolmogorov_to_semicircle",
    "levy",
    "semicircle_step",
    "CanonicalGraph",
    "MomentBreakdown",
    "category_counts",
    "class_size",
    "classify",
    "enumerate_canonical",
    "gaussian_moment_exact",
    "graph_contribution",
    "iter_canonical",
    "wick_moment_oracle",
    "catalan_moment",
    "AveragedESD",
    "SpectralDistribution",
    "averaged_esd",
    "default_grid",
    "eigenvalues",
    "empirical_moment",
    "empirical_stieltjes",
    "esd",
    "esd_eval",
    "thread_count",
    "__version__",
]
