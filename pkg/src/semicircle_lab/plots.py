"""Headless figure rendering for the report pipeline.

Every function draws one figure to a file path and returns the path.  The
Agg backend keeps this usable in batch jobs and CI; nothing here opens a
window.  Figures mirror the delimited outputs the CLI writes next to them:
histogram with density overlay, averaged ESD against the semicircle CDF,
and the interpolation sweep.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import semicircle

__all__ = [
    "histogram_figure",
    "esd_figure",
    "interpolation_figure",
]


def histogram_figure(centers, heights, path, title="Spectral histogram"):
    """Density-normalized eigenvalue histogram with the semicircle overlay."""
    centers = np.asarray(centers, dtype=float)
    heights = np.asarray(heights, dtype=float)
    if centers.shape != heights.shape or centers.ndim != 1:
        raise ValueError("centers and heights must be 1-d arrays of equal length")
    width = centers[1] - centers[0] if centers.size > 1 else 1.0
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.bar(centers, heights, width=width, color="#9ecae1", edgecolor="none", label="spectrum")
    xs = np.linspace(-2.05, 2.05, 400)
    ax.plot(xs, semicircle.density(xs), "k-", lw=1.5, label="semicircle density")
    ax.set_xlabel("x")
    ax.set_ylabel("density")
    ax.set_title(title)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def esd_figure(averaged, path, title="Averaged ESD vs semicircle CDF"):
    """Averaged ESD as a curve over its grid, with G for comparison."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(averaged.grid, averaged.values, "-", color="#3182bd", lw=1.5, label="averaged ESD")
    ax.plot(averaged.grid, semicircle.cdf(averaged.grid), "k--", lw=1.2, label="semicircle CDF")
    ax.set_xlabel("x")
    ax.set_ylabel("F(x)")
    ax.set_ylim(-0.02, 1.02)
    ax.set_title(title)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def interpolation_figure(samples, path, title="Stieltjes transform along the path"):
    """Im S(z, phi) against phi, one curve per z-grid point."""
    by_z = {}
    for s in samples:
        by_z.setdefault(s.z, []).append(s)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for z in sorted(by_z, key=lambda w: (w.real, w.imag)):
        rows = sorted(by_z[z], key=lambda r: r.phi)
        phis = [r.phi for r in rows]
        ims = [r.s.imag for r in rows]
        errs = [r.stderr for r in rows]
        ax.errorbar(phis, ims, yerr=errs, marker="o", ms=3, lw=1.0, capsize=2,
                    label=f"z = {z.real:g} + {z.imag:g}i")
    ax.set_xlabel("phi")
    ax.set_ylabel("Im S(z, phi)")
    ax.set_title(title)
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
