"""Dense symmetric matrices, variance profiles and entry-level functionals.

Everything a spectral experiment needs before eigenvalues enter: the
symmetric-matrix and variance-profile value types, row-average statistics,
the Lindeberg tail ratio of a realization, and the split of a matrix into
small and large entries at a threshold scaling like sqrt(n).
"""

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SymmetricMatrix",
    "VarianceProfile",
    "ConditionTolerances",
    "ConditionReport",
    "TruncationResult",
    "symmetric_from_upper",
    "lindeberg_ratio",
    "truncation_sequence",
    "truncate",
    "truncation_perturbation_check",
    "b_values",
    "check_conditions",
]


@dataclass(frozen=True)
class SymmetricMatrix:
    """Real symmetric n x n matrix with finite entries.

    The full dense array is stored; symmetry and finiteness are enforced at
    construction, so downstream code may rely on both.
    """

    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=float)
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {data.shape}")
        if data.shape[0] < 1:
            raise ValueError("matrix dimension must be positive")
        if not np.isfinite(data).all():
            raise ValueError("matrix entries must be finite")
        if not np.array_equal(data, data.T):
            raise ValueError("matrix must be symmetric")
        data = data.copy()
        data.flags.writeable = False
        object.__setattr__(self, "data", data)

    @property
    def n(self):
        return self.data.shape[0]

    def entry(self, i, j):
        return float(self.data[i, j])


@dataclass(frozen=True)
class VarianceProfile:
    """Symmetric nonnegative array of entry variances.

    ``desc`` carries the {type, params} descriptor when the profile was built
    by one of the named factories, enabling JSON round-trips; hand-built
    profiles leave it None.
    """

    sigma2: np.ndarray
    desc: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        sigma2 = np.asarray(self.sigma2, dtype=float)
        if sigma2.ndim != 2 or sigma2.shape[0] != sigma2.shape[1]:
            raise ValueError(f"expected a square variance array, got shape {sigma2.shape}")
        if sigma2.shape[0] < 1:
            raise ValueError("profile dimension must be positive")
        if not np.isfinite(sigma2).all():
            raise ValueError("variances must be finite")
        if (sigma2 < 0).any():
            raise ValueError("variances must be nonnegative")
        if not np.array_equal(sigma2, sigma2.T):
            raise ValueError("variance array must be symmetric")
        sigma2 = sigma2.copy()
        sigma2.flags.writeable = False
        object.__setattr__(self, "sigma2", sigma2)

    @property
    def n(self):
        return self.sigma2.shape[0]


@dataclass(frozen=True)
class ConditionTolerances:
    """Thresholds the row-average conditions are checked against."""

    b_avg: float = 0.05  # mean |B_i^2 - 1|
    b_max: float = 2.0  # absolute bound on max B_i
    b_max_dev: float = 0.1  # max |B_i^2 - 1| (the stronger uniform variant)
    lindeberg: float = 0.05


@dataclass(frozen=True)
class ConditionReport:
    """Row-average and tail statistics of a profile with pass/fail verdicts.

    Verdict keys: ``b_avg`` (average row deviation), ``b_max`` (bounded row
    averages), ``b_uniform`` (uniform row deviation), ``lindeberg``.
    """

    avg_b_deviation: float
    max_b: float
    max_b_deviation: float
    lindeberg: float
    verdicts: dict

    @property
    def all_pass(self):
        return all(self.verdicts.values())


@dataclass(frozen=True)
class TruncationResult:
    """Split of a matrix at threshold tau*sqrt(n).

    ``hat`` keeps entries strictly below the threshold in magnitude,
    ``check`` the rest; they reassemble the input exactly.  ``centered`` is
    ``hat`` with a scalar mean removed from every entry.
    """

    hat: SymmetricMatrix
    check: SymmetricMatrix
    centered: SymmetricMatrix
    tau: float


def symmetric_from_upper(n, upper):
    """Build a SymmetricMatrix from its upper triangle (row-major, i <= j)."""
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    upper = np.asarray(upper, dtype=float).ravel()
    expected = n * (n + 1) // 2
    if upper.size != expected:
        raise ValueError(f"expected {expected} upper-triangle values for n={n}, got {upper.size}")
    if not np.isfinite(upper).all():
        raise ValueError("matrix entries must be finite")
    data = np.zeros((n, n))
    iu, ju = np.triu_indices(n)
    data[iu, ju] = upper
    data[ju, iu] = upper
    return SymmetricMatrix(data)


def lindeberg_ratio(m, tau):
    """Tail second-moment ratio of one realization.

    n^-2 times the sum of x_ij^2 over all n^2 ordered pairs whose magnitude
    reaches tau*sqrt(n).  Averaging this plug-in statistic over seeds
    estimates the ensemble's Lindeberg ratio.
    """
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau}")
    x = m.data
    n = m.n
    threshold = tau * np.sqrt(n)
    mask = np.abs(x) >= threshold
    return float((x[mask] ** 2).sum()) / n**2


def truncation_sequence(n):
    """Default truncation level tau_n = n^(-1/8).

    Decreasing in n while tau_n * sqrt(n) = n^(3/8) still grows, the two
    requirements a truncation schedule must satisfy.
    """
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    return float(n) ** (-0.125)


def truncate(m, tau, center_mean=None):
    """Split a matrix into small-entry and large-entry parts at tau*sqrt(n).

    ``hat`` = entries with |x| < tau*sqrt(n), ``check`` = the complement;
    hat + check reassembles the input bit-exactly.  ``centered`` subtracts a
    scalar from every hat entry: ``center_mean`` when the ensemble's
    truncated-law mean is known analytically (0 for the sign-symmetric
    ensembles shipped here), else the empirical mean of hat's off-diagonal
    entries.
    """
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau}")
    x = m.data
    n = m.n
    threshold = tau * np.sqrt(n)
    small = np.abs(x) < threshold
    hat = np.where(small, x, 0.0)
    check = np.where(small, 0.0, x)
    if center_mean is None:
        if n > 1:
            off = ~np.eye(n, dtype=bool)
            center_mean = float(hat[off].mean())
        else:
            center_mean = 0.0
    centered = hat - center_mean
    return TruncationResult(
        hat=SymmetricMatrix(hat),
        check=SymmetricMatrix(check),
        centered=SymmetricMatrix(centered),
        tau=float(tau),
    )


def _resolvent_trace(m, z):
    lam = np.linalg.eigvalsh(m.data / np.sqrt(m.n))
    return complex(np.sum(1.0 / (lam - z)))


def truncation_perturbation_check(x, d, z):
    """Resolvent-trace perturbation bound for an additive symmetric change.

    Returns (lhs, rhs) with lhs = |Tr R(z) - Tr R~(z)| for the resolvents of
    x/sqrt(n) and (x+d)/sqrt(n), and rhs = Im(z)^-2 * sqrt(sum d_ij^2).  The
    bound lhs <= rhs holds exactly; callers allow eigensolver slack 1e-8*n.
    """
    if x.n != d.n:
        raise ValueError(f"dimension mismatch: {x.n} vs {d.n}")
    z = complex(z)
    if z.imag <= 0:
        raise ValueError(f"z must lie in the upper half-plane, got {z}")
    perturbed = SymmetricMatrix(x.data + d.data)
    lhs = abs(_resolvent_trace(x, z) - _resolvent_trace(perturbed, z))
    rhs = np.sqrt(float((d.data**2).sum())) / z.imag**2
    return float(lhs), float(rhs)


def b_values(profile):
    """Row averages B_i^2 = (1/n) sum_j sigma_ij^2 of a variance profile."""
    return profile.sigma2.mean(axis=1)


def check_conditions(profile, tau, lindeberg_estimate, tol=ConditionTolerances()):
    """Exact row-average statistics of a profile plus a supplied Lindeberg
    estimate, each compared against its tolerance.

    The Lindeberg value is caller-supplied (Monte-Carlo over seeds or
    analytic) because it is a property of the entry law, not of the profile.
    """
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau}")
    if lindeberg_estimate < 0:
        raise ValueError("Lindeberg estimate must be nonnegative")
    b2 = b_values(profile)
    dev = np.abs(b2 - 1.0)
    avg_b_deviation = float(dev.mean())
    max_b = float(np.sqrt(b2.max()))
    max_b_deviation = float(dev.max())
    verdicts = {
        "b_avg": avg_b_deviation <= tol.b_avg,
        "b_max": max_b <= tol.b_max,
        "b_uniform": max_b_deviation <= tol.b_max_dev,
        "lindeberg": lindeberg_estimate <= tol.lindeberg,
    }
    return ConditionReport(
        avg_b_deviation=avg_b_deviation,
        max_b=max_b,
        max_b_deviation=max_b_deviation,
        lindeberg=float(lindeberg_estimate),
        verdicts=verdicts,
    )
