"""Trigonometric interpolation between two ensembles.

Z(phi) = X cos phi + Y sin phi deforms X (phi = 0) into Y (phi = pi/2)
while keeping the entry variances on the unit circle.  Universality says
the Monte-Carlo Stieltjes transform of the scaled spectrum barely moves
along the path when the two ensembles share a variance profile; the
endpoint gap |S_x(z) - S_y(z)| over a z-grid quantifies that.

Seed schedule: path experiments draw X and Y independently per seed by
deriving sub-seeds from the labels "X" and "Y", as independence of the two
matrices requires.  The endpoint gap instead runs each spec standalone on
the raw seed list, so identical specs give a gap of exactly zero.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import math

import numpy as np

from .ensembles import paired_seeds, sample
from .matrices import SymmetricMatrix
from .spectra import empirical_stieltjes, esd, thread_count

__all__ = [
    "PathSample",
    "z_matrix",
    "path_seed_pairs",
    "stieltjes_at",
    "universality_gap",
    "sweep",
    "DEFAULT_Z_GRID",
]

# Im z = 1 keeps every resolvent bound mild; the real parts straddle the
# semicircle support.
DEFAULT_Z_GRID = tuple(complex(re, 1.0) for re in (-2.0, -1.0, 0.0, 1.0, 2.0))


@dataclass(frozen=True)
class PathSample:
    """Monte-Carlo mean of the path Stieltjes transform at one (phi, z)."""

    phi: float
    z: complex
    s: complex
    seeds: int
    stderr: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.phi <= math.pi / 2:
            raise ValueError(f"phi must lie in [0, pi/2], got {self.phi}")
        if self.z.imag <= 0:
            raise ValueError("z must lie in the upper half-plane")
        if self.seeds < 1:
            raise ValueError("at least one seed is required")
        if self.s.imag <= 0 or abs(self.s) > 1.0 / self.z.imag + 1e-12:
            raise ValueError("sample violates the Herglotz bounds")


def z_matrix(x: SymmetricMatrix, y: SymmetricMatrix, phi):
    """Entrywise cos(phi) x + sin(phi) y for phi in [0, pi/2].

    The endpoints return x and y themselves so the path identities hold
    bit-exactly rather than up to rounding of cos/sin.
    """
    if x.n != y.n:
        raise ValueError(f"dimension mismatch: {x.n} vs {y.n}")
    if not 0.0 <= phi <= math.pi / 2:
        raise ValueError(f"phi must lie in [0, pi/2], got {phi}")
    if phi == 0.0:
        return x
    if phi == math.pi / 2:
        return y
    return SymmetricMatrix(math.cos(phi) * x.data + math.sin(phi) * y.data)


def path_seed_pairs(seeds):
    """Per-seed (x_seed, y_seed) sub-seed pairs for independent draws."""
    return [paired_seeds(int(s)) for s in seeds]


def _path_transforms(spec_x, spec_y, phi, zs, seeds, threads=None):
    """Per-seed Stieltjes vectors of Z(phi) on the z-grid, seed order kept."""
    if spec_x.n != spec_y.n:
        raise ValueError("the two specs must share a dimension")
    zs = np.asarray(zs, dtype=complex)
    pairs = path_seed_pairs(seeds)
    if not pairs:
        raise ValueError("at least one seed is required")

    def one(pair):
        sx, sy = pair
        z_mat = z_matrix(sample(spec_x.with_seed(sx)), sample(spec_y.with_seed(sy)), phi)
        return empirical_stieltjes(esd(z_mat), zs)

    workers = thread_count(threads)
    if workers == 1:
        rows = [one(p) for p in pairs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one, pairs))
    return np.stack([np.atleast_1d(r) for r in rows])


def stieltjes_at(spec_x, spec_y, phi, z, seeds, threads=None):
    """Monte-Carlo estimate of the path transform S(z, phi).

    Averages empirical Stieltjes transforms of Z(phi) over seed pairs; X
    and Y are drawn independently within each pair.  At phi = 0 (resp.
    pi/2) the estimate equals the standalone X (resp. Y) estimate under the
    same derived seed schedule, bit for bit.
    """
    rows = _path_transforms(spec_x, spec_y, phi, [z], seeds, threads=threads)
    samples = rows[:, 0]
    mean = complex(np.mean(samples))
    m = samples.size
    stderr = 0.0
    if m > 1:
        stderr = float(np.sqrt(np.sum(np.abs(samples - mean) ** 2) / (m * (m - 1))))
    return PathSample(phi=float(phi), z=complex(z), s=mean, seeds=m, stderr=stderr)


def _standalone_means(spec, zs, seeds, threads=None):
    """Mean empirical Stieltjes vector of one spec over raw seeds."""
    zs = np.asarray(zs, dtype=complex)

    def one(s):
        return np.atleast_1d(empirical_stieltjes(esd(sample(spec.with_seed(int(s)))), zs))

    seeds = list(seeds)
    if not seeds:
        raise ValueError("at least one seed is required")
    workers = thread_count(threads)
    if workers == 1:
        rows = [one(s) for s in seeds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one, seeds))
    return np.mean(np.stack(rows), axis=0)


def universality_gap(spec_x, spec_y, z_grid=None, seeds=(0,), threads=None):
    """Largest gap between the two standalone mean transforms on a z-grid.

    max over z of |mean S_x(z) - mean S_y(z)|, each mean taken over the raw
    seed list.  Identical specs therefore give exactly zero.
    """
    if spec_x.n != spec_y.n:
        raise ValueError("the two specs must share a dimension")
    zs = np.asarray(DEFAULT_Z_GRID if z_grid is None else z_grid, dtype=complex)
    if np.any(zs.imag <= 0):
        raise ValueError("every z must lie in the upper half-plane")
    mean_x = _standalone_means(spec_x, zs, seeds, threads=threads)
    mean_y = _standalone_means(spec_y, zs, seeds, threads=threads)
    return float(np.max(np.abs(mean_x - mean_y)))


def sweep(spec_x, spec_y, phis, z_grid=None, seeds=(0,), threads=None):
    """PathSample table over a phi list and a z-grid (row order: phi outer,
    z inner), for export and plotting."""
    zs = np.asarray(DEFAULT_Z_GRID if z_grid is None else z_grid, dtype=complex)
    if np.any(zs.imag <= 0):
        raise ValueError("every z must lie in the upper half-plane")
    out = []
    for phi in phis:
        rows = _path_transforms(spec_x, spec_y, float(phi), zs, seeds, threads=threads)
        m = rows.shape[0]
        for j, z in enumerate(zs):
            samples = rows[:, j]
            mean = complex(np.mean(samples))
            stderr = 0.0
            if m > 1:
                stderr = float(np.sqrt(np.sum(np.abs(samples - mean) ** 2) / (m * (m - 1))))
            out.append(PathSample(phi=float(phi), z=complex(z), s=mean, seeds=m, stderr=stderr))
    return out
