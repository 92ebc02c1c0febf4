"""Closed forms for the standard semicircle law on [-2, 2].

Density, CDF, even moments (Catalan numbers) and the Stieltjes transform
of the reference law that every convergence experiment compares against.
All functions are stateless and accept scalars or numpy arrays.
"""

import math

import numpy as np

__all__ = ["density", "cdf", "catalan_moment", "stieltjes", "quantile"]


def density(x):
    """Semicircle density (1/2pi) * sqrt(4 - x^2) on [-2, 2], zero outside.

    Parameters
    ----------
    x : float or ndarray

    Returns
    -------
    float or ndarray, nonnegative, even in x.
    """
    x = np.asarray(x, dtype=float)
    inside = np.abs(x) <= 2.0
    out = np.zeros_like(x)
    out[inside] = np.sqrt(4.0 - x[inside] ** 2) / (2.0 * math.pi)
    if out.ndim == 0:
        return float(out)
    return out


def cdf(x):
    """Distribution function of the semicircle law.

    Closed form on [-2, 2]:

        G(x) = 1/2 + x*sqrt(4 - x^2)/(4 pi) + arcsin(x/2)/pi

    clamped to 0 below -2 and 1 above 2.
    """
    x = np.asarray(x, dtype=float)
    xc = np.clip(x, -2.0, 2.0)
    out = 0.5 + xc * np.sqrt(4.0 - xc**2) / (4.0 * math.pi) + np.arcsin(xc / 2.0) / math.pi
    out = np.clip(out, 0.0, 1.0)
    if out.ndim == 0:
        return float(out)
    return out


def catalan_moment(k):
    """k-th moment of the semicircle law: the Catalan number C_m for k = 2m.

    Odd moments vanish; catalan_moment(0) = 1 (total mass).  Exact integer
    arithmetic.
    """
    if k < 0:
        raise ValueError(f"moment order must be nonnegative, got {k}")
    if k % 2 == 1:
        return 0
    m = k // 2
    return math.comb(2 * m, m) // (m + 1)


def quantile(p):
    """Inverse of the CDF on [0, 1], by bisection on [-2, 2].

    G is continuous and strictly increasing on the support, so 60 halvings
    pin the root to ~2e-18, far below the 1e-12 comparisons used elsewhere.
    The levels 0 and 1 map to the support edges directly: G has 3/2-power
    contact there, so the rounded CDF is flat over the last ~1e-10 of the
    interval and bisection alone would stop short.
    """
    p = np.asarray(p, dtype=float)
    if np.any(p < 0.0) or np.any(p > 1.0):
        raise ValueError("quantile level must lie in [0, 1]")
    lo = np.full_like(p, -2.0)
    hi = np.full_like(p, 2.0)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        below = np.asarray(cdf(mid)) < p
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    out = 0.5 * (lo + hi)
    out = np.where(p == 0.0, -2.0, np.where(p == 1.0, 2.0, out))
    if out.ndim == 0:
        return float(out)
    return out


def stieltjes(z):
    """Stieltjes transform s(z) = (-z + sqrt(z^2 - 4))/2 for Im z > 0.

    The square-root branch is chosen so that Im s(z) > 0 (the Herglotz
    property of a probability measure's transform); s solves s^2 + z*s + 1 = 0.
    """
    z = complex(z)
    if z.imag <= 0:
        raise ValueError(f"z must lie in the upper half-plane, got {z}")
    w = np.lib.scimath.sqrt(z * z - 4.0)
    s = (-z + w) / 2.0
    if s.imag <= 0:
        s = (-z - w) / 2.0
    return complex(s)
