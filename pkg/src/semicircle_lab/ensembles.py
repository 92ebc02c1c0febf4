"""Seeded generators for the matrix ensembles used in the experiments.

Three entry laws share one stream schedule (see ``_rng``): every
upper-triangle entry owns a magnitude stream and a sign stream, and the
entry is always sign * amplitude with the sign drawn from its dedicated
stream.  Flipping one entry's sign stream therefore negates that entry and
nothing else, which is the mechanism making the conditional-mean property
hold by construction.

* ``gaussian``   -- amplitude sigma_ij * |normal|; entries independent
  N(0, sigma_ij^2).
* ``rademacher`` -- amplitude sigma_ij; entries are +-sigma_ij fair coins.
* ``dependent``  -- amplitude sigma_ij * sqrt(max(0, 1 + delta*(M_ij - 1)))
  where M_ij averages the squared magnitude draws of every *other* entry.
  Signs stay independent of everything, so each entry still has zero
  conditional mean given the rest, while its conditional variance deviates
  from sigma_ij^2 by delta * sigma_ij^2 * (M_ij - 1): genuine dependence
  with an O(delta/n) average deviation, vanishing as n grows.  delta = 0
  reproduces the rademacher draw bit-for-bit.

Variance-profile factories cover the constant (classical) case, a smooth
profile with exactly unit row averages, and the half-masked block profile
whose lower rows average 1/2 + 1/n -- the stock example of a profile that
breaks the row-average condition and with it semicircle convergence.
"""

from dataclasses import dataclass, field

import numpy as np

from ._rng import derive_root, stream_keys, stream_normal, stream_sign
from .matrices import SymmetricMatrix, VarianceProfile

__all__ = [
    "KINDS",
    "EnsembleSpec",
    "profile_constant",
    "profile_zero",
    "profile_smooth",
    "profile_block",
    "profile_from_desc",
    "sample",
    "coupling_field",
    "conditional_variance",
    "paired_seeds",
]

KINDS = ("gaussian", "rademacher", "dependent")


@dataclass(frozen=True)
class EnsembleSpec:
    """Everything needed to reproduce one random matrix deterministically."""

    kind: str
    profile: VarianceProfile
    delta: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not 0.0 <= self.delta < 1.0:
            raise ValueError(f"delta must lie in [0, 1), got {self.delta}")
        if self.delta != 0.0 and self.kind != "dependent":
            raise ValueError("delta is only meaningful for the dependent kind")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @property
    def n(self):
        return self.profile.n

    def with_seed(self, seed):
        return EnsembleSpec(self.kind, self.profile, self.delta, seed)

    def to_dict(self):
        """JSON form {kind, n, profile: {type, params}, delta, seed}."""
        if self.profile.desc is None:
            raise ValueError("profile was not built by a named factory; cannot serialize")
        return {
            "kind": self.kind,
            "n": self.n,
            "profile": self.profile.desc,
            "delta": self.delta,
            "seed": int(self.seed),
        }

    @classmethod
    def from_dict(cls, d):
        profile = profile_from_desc(int(d["n"]), d["profile"])
        return cls(
            kind=d["kind"],
            profile=profile,
            delta=float(d.get("delta", 0.0)),
            seed=int(d.get("seed", 0)),
        )


def profile_constant(n):
    """All variances 1: the classical homogeneous case."""
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    return VarianceProfile(np.ones((n, n)), desc={"type": "constant", "params": {}})


def profile_zero(n):
    """All variances 0: every realization is the zero matrix."""
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    return VarianceProfile(np.zeros((n, n)), desc={"type": "zero", "params": {}})


def profile_smooth(n, alpha):
    """Rank-one modulated profile sigma_ij^2 = 1 + alpha * f_i * f_j with
    midpoint factors f_i = (2i - n - 1)/n, i = 1..n.

    The factors sum to zero, so every row average is exactly 1; |alpha| <= 1
    keeps the variances nonnegative.
    """
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    if abs(alpha) > 1.0:
        raise ValueError(f"alpha must lie in [-1, 1], got {alpha}")
    f = (2.0 * np.arange(1, n + 1) - n - 1) / n
    sigma2 = 1.0 + alpha * np.outer(f, f)
    return VarianceProfile(sigma2, desc={"type": "smooth", "params": {"alpha": float(alpha)}})


def profile_block(n):
    """Half-masked block profile: unit variance wherever either index lies
    in the first half or on the diagonal, zero elsewhere.

    Rows in the second half average (n/2 + 1)/n, so the mean row deviation
    tends to 1/4: row-average convergence fails by design.
    """
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    if n % 2 != 0:
        raise ValueError(f"block profile needs even dimension, got {n}")
    m = n // 2
    sigma2 = np.zeros((n, n))
    sigma2[:m, :] = 1.0
    sigma2[:, :m] = 1.0
    np.fill_diagonal(sigma2, 1.0)
    return VarianceProfile(sigma2, desc={"type": "block", "params": {}})


_PROFILE_FACTORIES = {
    "constant": lambda n, params: profile_constant(n),
    "zero": lambda n, params: profile_zero(n),
    "smooth": lambda n, params: profile_smooth(n, params["alpha"]),
    "block": lambda n, params: profile_block(n),
}


def profile_from_desc(n, desc):
    """Rebuild a profile from its {type, params} descriptor."""
    kind = desc.get("type")
    if kind not in _PROFILE_FACTORIES:
        raise ValueError(f"unknown profile type {kind!r}")
    return _PROFILE_FACTORIES[kind](n, desc.get("params", {}))


def _entry_streams(spec):
    """Magnitude and sign stream keys for the upper-triangle entries."""
    n = spec.n
    count = n * (n + 1) // 2
    e = np.arange(count, dtype=np.uint64)
    value_keys = stream_keys(spec.seed, np.uint64(2) * e)
    sign_keys = stream_keys(spec.seed, np.uint64(2) * e + np.uint64(1))
    return value_keys, sign_keys


def _amplitudes(spec):
    """Nonnegative amplitude of every upper-triangle entry (kind-specific)."""
    iu, ju = np.triu_indices(spec.n)
    sigma = np.sqrt(spec.profile.sigma2[iu, ju])
    value_keys, _ = _entry_streams(spec)
    if spec.kind == "rademacher":
        return sigma
    if spec.kind == "gaussian":
        return sigma * np.abs(stream_normal(value_keys))
    rho = np.abs(stream_normal(value_keys))
    coupling = _coupling_from_rho(rho)
    return sigma * np.sqrt(np.maximum(0.0, 1.0 + spec.delta * (coupling - 1.0)))


def _coupling_from_rho(rho):
    """Leave-one-out mean of squared magnitudes; 1.0 for a single entry."""
    count = rho.size
    if count == 1:
        return np.ones(1)
    total = float((rho**2).sum())
    return (total - rho**2) / (count - 1)


def _assemble(spec, signs):
    """Symmetric matrix from per-entry signs and the spec's amplitudes."""
    n = spec.n
    entries = signs * _amplitudes(spec)
    data = np.zeros((n, n))
    iu, ju = np.triu_indices(n)
    data[iu, ju] = entries
    data[ju, iu] = entries
    return SymmetricMatrix(data)


def sample(spec):
    """Draw the matrix realization determined by the spec.

    Pure function of (kind, profile, delta, seed); entries are generated
    from per-entry streams, so the result is independent of evaluation
    order and thread count.
    """
    _, sign_keys = _entry_streams(spec)
    return _assemble(spec, stream_sign(sign_keys))


def coupling_field(spec):
    """Leave-one-out squared-magnitude field of the dependent ensemble as a
    symmetric n x n array (all ones for the independent kinds)."""
    n = spec.n
    out = np.ones((n, n))
    if spec.kind == "dependent":
        value_keys, _ = _entry_streams(spec)
        rho = np.abs(stream_normal(value_keys))
        coupling = _coupling_from_rho(rho)
        iu, ju = np.triu_indices(n)
        out[iu, ju] = coupling
        out[ju, iu] = coupling
    return out


def conditional_variance(spec):
    """Closed-form conditional variance of every entry given all others.

    sigma_ij^2 for the independent kinds; for the dependent kind
    sigma_ij^2 * max(0, 1 + delta*(M_ij - 1)) with M the coupling field.
    """
    sigma2 = spec.profile.sigma2
    if spec.kind != "dependent":
        return sigma2.copy()
    coupling = coupling_field(spec)
    return sigma2 * np.maximum(0.0, 1.0 + spec.delta * (coupling - 1.0))


def paired_seeds(seed):
    """Independent sub-seeds for the two sides of a paired experiment."""
    return derive_root(seed, "X"), derive_root(seed, "Y")
