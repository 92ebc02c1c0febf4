"""Spectra of symmetric realizations and their empirical distributions.

``eigenvalues`` returns the raw spectrum of a matrix; ``esd`` applies the
n^{-1/2} scaling and wraps the result as a spectral distribution, the
object the limit theorems are about.  The empirical spectral distribution
(ESD) puts mass 1/n on each scaled eigenvalue; averaging ESDs over
independent seeds estimates the expected spectral distribution F = E(ESD).
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import json
import os

import numpy as np

from .ensembles import EnsembleSpec, sample
from .matrices import SymmetricMatrix

__all__ = [
    "SpectralDistribution",
    "AveragedESD",
    "eigenvalues",
    "esd",
    "esd_eval",
    "empirical_moment",
    "empirical_stieltjes",
    "averaged_esd",
    "default_grid",
    "thread_count",
]


def _eigh(matrix: SymmetricMatrix):
    """Full eigendecomposition of the raw matrix (values ascending).

    Internal: eigenvectors back the reconstruction checks but are not part
    of the public surface.
    """
    return np.linalg.eigh(matrix.data)


def eigenvalues(matrix: SymmetricMatrix):
    """Full spectrum of the matrix itself (no scaling), ascending."""
    return np.linalg.eigvalsh(matrix.data)


@dataclass(frozen=True)
class SpectralDistribution:
    """Sorted eigenvalues of n^{-1/2} X together with the CDF they induce."""

    lambdas: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=float)
        if lam.ndim != 1 or lam.size < 1:
            raise ValueError("lambdas must be a nonempty 1-d vector")
        if not np.all(np.isfinite(lam)):
            raise ValueError("lambdas must be finite")
        if np.any(np.diff(lam) < 0):
            raise ValueError("lambdas must be sorted nondecreasing")
        lam = lam.copy()
        lam.setflags(write=False)
        object.__setattr__(self, "lambdas", lam)

    @property
    def n(self):
        return self.lambdas.size

    def __call__(self, x):
        return esd_eval(self, x)


def esd(matrix: SymmetricMatrix):
    """Empirical spectral distribution of n^{-1/2} X."""
    return SpectralDistribution(eigenvalues(matrix) / np.sqrt(matrix.n))


def _lambdas(d):
    return d.lambdas if isinstance(d, SpectralDistribution) else np.asarray(d, dtype=float)


def esd_eval(d, x):
    """CDF of the spectral distribution at x: (#{lambda_i <= x})/n, ties
    counted inclusively.  x may be a scalar or an array."""
    lam = _lambdas(d)
    counts = np.searchsorted(lam, np.asarray(x, dtype=float), side="right")
    out = counts / lam.size
    return float(out) if out.ndim == 0 else out


def empirical_moment(d, k):
    """k-th spectral moment (1/n) sum lambda_i^k."""
    if k < 0:
        raise ValueError(f"moment order must be nonnegative, got {k}")
    lam = _lambdas(d)
    return float(np.mean(lam ** int(k)))


def empirical_stieltjes(d, z):
    """Stieltjes transform (1/n) sum 1/(lambda_i - z) at a point (or array
    of points) z in the upper half-plane."""
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag <= 0):
        raise ValueError("stieltjes transform requires Im z > 0")
    lam = _lambdas(d)
    out = np.mean(1.0 / (lam[:, None] - z.reshape(-1)), axis=0).reshape(z.shape)
    return complex(out) if out.ndim == 0 else out


def thread_count(threads=None):
    """Resolve a worker count: explicit argument, else the
    SEMICIRCLE_LAB_THREADS environment variable, else 1."""
    if threads is None:
        threads = os.environ.get("SEMICIRCLE_LAB_THREADS", "1")
    threads = int(threads)
    if threads < 1:
        raise ValueError(f"thread count must be positive, got {threads}")
    return threads


@dataclass(frozen=True)
class AveragedESD:
    """Seed-averaged ESD tabulated on a fixed grid.

    grid is strictly increasing; values[i] is the mean over seeds of the
    per-seed ESD at grid[i], hence nondecreasing within [0, 1].
    """

    grid: np.ndarray
    values: np.ndarray
    seeds: tuple
    spec: dict | None = None

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.ndim != 1 or grid.shape != values.shape:
            raise ValueError("grid and values must be 1-d arrays of equal length")
        if grid.size >= 2 and not np.all(np.diff(grid) > 0):
            raise ValueError("grid must be strictly increasing")
        if np.any(values < -1e-12) or np.any(values > 1 + 1e-12):
            raise ValueError("averaged ESD values must lie in [0, 1]")
        grid = grid.copy()
        values = values.copy()
        grid.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))

    @property
    def seed_count(self):
        return len(self.seeds)

    def to_csv(self, path):
        """Write the two-column x,F table (header included)."""
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_csv_text())

    def to_csv_text(self):
        lines = ["x,F"]
        for x, f in zip(self.grid, self.values):
            lines.append(f"{x:.17g},{f:.17g}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, path, seeds=(), spec=None):
        with open(path, encoding="utf-8") as fh:
            return cls.from_csv_text(fh.read(), seeds=seeds, spec=spec)

    @classmethod
    def from_csv_text(cls, text, seeds=(), spec=None):
        rows = [line.strip() for line in text.splitlines() if line.strip()]
        if not rows or rows[0] != "x,F":
            raise ValueError("expected header line 'x,F'")
        pairs = [tuple(float(c) for c in row.split(",")) for row in rows[1:]]
        grid = np.array([p[0] for p in pairs])
        values = np.array([p[1] for p in pairs])
        return cls(grid, values, seeds=seeds, spec=spec)

    def to_json(self):
        payload = {
            "grid": [float(x) for x in self.grid],
            "values": [float(v) for v in self.values],
            "seeds": list(self.seeds),
        }
        if self.spec is not None:
            payload["spec"] = self.spec
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text):
        payload = json.loads(text)
        return cls(
            np.array(payload["grid"], dtype=float),
            np.array(payload["values"], dtype=float),
            seeds=payload.get("seeds", ()),
            spec=payload.get("spec"),
        )


def default_grid(lo=-3.0, hi=3.0, points=401):
    """Evenly spaced evaluation grid covering the semicircle support with
    margin on both sides."""
    if points < 2:
        raise ValueError(f"grid needs at least 2 points, got {points}")
    if not lo < hi:
        raise ValueError(f"grid bounds must satisfy lo < hi, got [{lo}, {hi}]")
    return np.linspace(lo, hi, int(points))


def _esd_on_grid(spec: EnsembleSpec, seed, grid):
    return esd_eval(esd(sample(spec.with_seed(seed))), grid)


def averaged_esd(spec: EnsembleSpec, seeds, grid=None, threads=None):
    """Average the per-seed ESDs of a spec over the given seeds.

    Seeds fan out to a thread pool (the eigensolver releases the
    interpreter lock) and merge in the listed order, so the result does not
    depend on the worker count.
    """
    seeds = [int(s) for s in seeds]
    if not seeds:
        raise ValueError("at least one seed is required")
    if grid is None:
        grid = default_grid()
    grid = np.asarray(grid, dtype=float)
    workers = thread_count(threads)
    if workers == 1:
        tables = [_esd_on_grid(spec, s, grid) for s in seeds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            tables = list(pool.map(lambda s: _esd_on_grid(spec, s, grid), seeds))
    mean = np.mean(np.stack(tables), axis=0)
    try:
        spec_dict = spec.to_dict()
    except ValueError:
        spec_dict = None
    return AveragedESD(grid, mean, seeds=seeds, spec=spec_dict)
