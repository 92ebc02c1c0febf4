"""Acceptance gate: nine pre-registered checks at fixed sizes and thresholds.

Each test prints one verdict line (visible under ``pytest -s`` and in failure
reports) and then asserts it, so a red run names the criterion that broke.
The large gaussian constant-profile batch is computed once and shared by the
convergence and moment checks.
"""

import math
import time

import numpy as np
import pytest

from semicircle_lab import (
    AveragedESD,
    EnsembleSpec,
    VarianceProfile,
    as_step,
    catalan_moment,
    category_counts,
    classify,
    default_grid,
    empirical_moment,
    empirical_stieltjes,
    esd,
    esd_eval,
    eigenvalues,
    gaussian_moment_exact,
    iter_canonical,
    kolmogorov,
    kolmogorov_to_semicircle,
    levy,
    profile_block,
    profile_constant,
    profile_smooth,
    sample,
    semicircle,
    symmetric_from_upper,
    truncation_perturbation_check,
    universality_gap,
    wick_moment_oracle,
)
from semicircle_lab.spectra import _eigh

N_LARGE = 1024
SEEDS_20 = tuple(range(20))
GRID = default_grid()


def _verdict(num, name, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"[criterion {num}] {name}: {status} ({detail})", flush=True)
    assert ok, f"criterion {num} ({name}): {detail}"


def _spectra(kind, profile, seeds, delta=0.0):
    lams = []
    for s in seeds:
        spec = EnsembleSpec(kind=kind, profile=profile, delta=delta, seed=s)
        lams.append(esd(sample(spec)).lambdas)
    return lams


def _averaged(lams):
    values = np.mean(np.stack([esd_eval(lam, GRID) for lam in lams]), axis=0)
    return AveragedESD(GRID, values, seeds=tuple(range(len(lams))))


def _random_symmetric(rng, n, scale=1.0):
    u = rng.normal(scale=scale, size=n * (n + 1) // 2)
    return symmetric_from_upper(n, u)


@pytest.fixture(scope="module")
def gaussian_constant_runs():
    """Twenty scaled spectra of the gaussian constant-profile ensemble."""
    return _spectra("gaussian", profile_constant(N_LARGE), SEEDS_20)


# --- 1: canonical walk counts ----------------------------------------------

def _set_partitions(items):
    """Every partition of a list, by inserting the head into each block of
    every partition of the tail.  Independent of the package's enumerator."""
    if not items:
        yield []
        return
    head, tail = items[0], items[1:]
    for part in _set_partitions(tail):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [head]] + part[i + 1:]
        yield [[head]] + part


def test_criterion_1_walk_counts():
    t0 = time.perf_counter()
    c1 = {k: category_counts(k)[0] for k in (2, 4, 6, 8)}
    totals = {k: len(list(iter_canonical(k))) for k in (2, 3, 4, 5)}
    bell = {k: sum(1 for _ in _set_partitions(list(range(k)))) for k in (2, 3, 4, 5)}
    odd_c1 = {k: category_counts(k)[0] for k in (3, 5, 7)}
    elapsed = time.perf_counter() - t0
    ok = (
        c1 == {2: 1, 4: 2, 6: 5, 8: 14}
        and totals == {2: 2, 3: 5, 4: 15, 5: 52}
        and totals == bell
        and all(v == 0 for v in odd_c1.values())
        and elapsed < 1.0
    )
    _verdict(1, "canonical walk counts", ok,
             f"c1={sorted(c1.values())}, totals={sorted(totals.values())}, "
             f"independent partition counts={sorted(bell.values())}, "
             f"odd c1={sorted(odd_c1.values())}, {elapsed:.2f}s < 1s")


# --- 2: exact moments vs pairing oracle ------------------------------------

def test_criterion_2_moment_oracle_equivalence():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2)
    worst = 0.0
    cases = 0
    for n in (1, 2, 3, 4):
        for _ in range(5):
            u = rng.uniform(0.05, 2.0, size=n * (n + 1) // 2)
            profile = VarianceProfile(symmetric_from_upper(n, u).data)
            for k in (2, 4, 6):
                total = gaussian_moment_exact(profile, k).total
                oracle = wick_moment_oracle(profile, k)
                worst = max(worst, abs(total - oracle) / max(1.0, abs(oracle)))
                cases += 1
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-10 and elapsed < 30.0
    _verdict(2, "graph-sum equals pairing oracle", ok,
             f"{cases} cases, worst rel err {worst:.2e} <= 1e-10, "
             f"{elapsed:.1f}s < 30s")


# --- 3: ten-step walk classification ---------------------------------------

def test_criterion_3_ten_step_walk_classification():
    walk = (1, 1, 1, 2, 3, 3, 3, 2, 3, 2)
    graph = next(g for g in iter_canonical(10) if g.g == walk)
    ok = classify(walk) == 3 and graph.category == 3 and graph.t == 3
    _verdict(3, "ten-step walk lands in category 3", ok,
             f"classify={classify(walk)} (want 3), enumerated category="
             f"{graph.category}, t={graph.t} (want 3)")


# --- 4: eigensolver accuracy -----------------------------------------------

def _analytic_2x2(a, b, c):
    half = 0.5 * (a + c)
    root = math.hypot(0.5 * (a - c), b)
    return np.array([half - root, half + root])


def _analytic_3x3(m):
    # trigonometric closed form for the symmetric 3x3 eigenproblem
    a = m.data
    q = (a[0, 0] + a[1, 1] + a[2, 2]) / 3.0
    p2 = ((a[0, 0] - q) ** 2 + (a[1, 1] - q) ** 2 + (a[2, 2] - q) ** 2
          + 2.0 * (a[0, 1] ** 2 + a[0, 2] ** 2 + a[1, 2] ** 2))
    p = math.sqrt(p2 / 6.0)
    if p == 0.0:
        return np.array([q, q, q])
    b = (a - q * np.eye(3)) / p
    det_b = (b[0, 0] * (b[1, 1] * b[2, 2] - b[1, 2] ** 2)
             - b[0, 1] * (b[0, 1] * b[2, 2] - b[1, 2] * b[0, 2])
             + b[0, 2] * (b[0, 1] * b[1, 2] - b[1, 1] * b[0, 2]))
    r = min(1.0, max(-1.0, det_b / 2.0))
    phi = math.acos(r) / 3.0
    eig_hi = q + 2.0 * p * math.cos(phi)
    eig_lo = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    return np.array([eig_lo, 3.0 * q - eig_hi - eig_lo, eig_hi])


def test_criterion_4_eigensolver_accuracy():
    t0 = time.perf_counter()
    rng = np.random.default_rng(4)
    sizes = rng.integers(2, 257, size=50)
    sizes[0] = 256
    worst_resid = worst_trace = 0.0
    for n in sizes:
        m = _random_symmetric(rng, int(n), scale=rng.uniform(0.5, 3.0))
        w, q = _eigh(m)
        bound = int(n) * np.abs(m.data).max()
        resid = np.abs(q @ np.diag(w) @ q.T - m.data).max() / bound
        trace = abs(w.sum() - np.trace(m.data)) / bound
        worst_resid = max(worst_resid, resid)
        worst_trace = max(worst_trace, trace)
    worst_closed = 0.0
    for _ in range(20):
        m2 = _random_symmetric(rng, 2, scale=2.0)
        want = _analytic_2x2(m2.data[0, 0], m2.data[0, 1], m2.data[1, 1])
        scale = max(1.0, np.abs(want).max())
        worst_closed = max(
            worst_closed, np.abs(eigenvalues(m2) - want).max() / scale)
        m3 = _random_symmetric(rng, 3, scale=2.0)
        want3 = _analytic_3x3(m3)
        scale3 = max(1.0, np.abs(want3).max())
        worst_closed = max(
            worst_closed, np.abs(eigenvalues(m3) - want3).max() / scale3)
    elapsed = time.perf_counter() - t0
    ok = (worst_resid <= 1e-8 and worst_trace <= 1e-10
          and worst_closed <= 1e-9 and elapsed < 60.0)
    _verdict(4, "eigensolver reconstruction and closed forms", ok,
             f"resid {worst_resid:.2e} <= 1e-8*n*max, "
             f"trace {worst_trace:.2e} <= 1e-10*n*max, "
             f"2x2/3x3 dev {worst_closed:.2e}, {elapsed:.1f}s < 60s")


# --- 5: semicircle convergence across ensembles ----------------------------

def test_criterion_5_semicircle_convergence(gaussian_constant_runs):
    results = {"gaussian/constant": kolmogorov_to_semicircle(
        _averaged(gaussian_constant_runs))}
    variants = (
        ("gaussian/smooth(0.5)", "gaussian", profile_smooth(N_LARGE, 0.5), 0.0),
        ("rademacher/constant", "rademacher", profile_constant(N_LARGE), 0.0),
        ("dependent(0.5)/constant", "dependent", profile_constant(N_LARGE), 0.5),
    )
    for label, kind, profile, delta in variants:
        lams = _spectra(kind, profile, SEEDS_20, delta=delta)
        results[label] = kolmogorov_to_semicircle(_averaged(lams))
    ok = all(v <= 0.03 for v in results.values())
    detail = ", ".join(f"{k} K={v:.4f}" for k, v in results.items())
    _verdict(5, "averaged ESD within 0.03 of the semicircle CDF", ok, detail)


# --- 6: block profile breaks convergence -----------------------------------

def test_criterion_6_block_profile_divergence():
    profile = profile_block(N_LARGE)
    dists = []
    for s in range(10):
        spec = EnsembleSpec(kind="gaussian", profile=profile, seed=s)
        dists.append(kolmogorov_to_semicircle(esd(sample(spec))))
    low = min(dists)
    ok = low >= 0.05
    _verdict(6, "block-profile distance stays >= 0.05 on every seed", ok,
             f"min over 10 seeds K={low:.6f}, max K={max(dists):.6f}")


# --- 7: interpolation gap between entry laws -------------------------------

def test_criterion_7_universality_gaps():
    const = profile_constant(N_LARGE)
    smooth = profile_smooth(N_LARGE, 0.5)
    gap_rad = universality_gap(
        EnsembleSpec(kind="rademacher", profile=const),
        EnsembleSpec(kind="gaussian", profile=const),
        seeds=SEEDS_20)
    gap_dep = universality_gap(
        EnsembleSpec(kind="dependent", profile=smooth, delta=0.5),
        EnsembleSpec(kind="gaussian", profile=smooth),
        seeds=SEEDS_20)
    ok = gap_rad <= 0.02 and gap_dep <= 0.02
    _verdict(7, "resolvent-trace gap <= 0.02", ok,
             f"rademacher vs gaussian {gap_rad:.5f}, "
             f"dependent vs gaussian on smooth {gap_dep:.5f}")


# --- 8: perturbation, Levy and Herglotz properties -------------------------

def test_criterion_8_inequality_suite():
    t0 = time.perf_counter()
    rng = np.random.default_rng(8)
    n = 32
    slack = 1e-8 * n
    pert_ok = herglotz_ok = True
    worst_gap = -math.inf
    for _ in range(100):
        x = _random_symmetric(rng, n)
        mask = rng.random(n * (n + 1) // 2) < 0.1
        d_upper = np.where(mask, rng.normal(scale=0.2, size=mask.size), 0.0)
        d = symmetric_from_upper(n, d_upper)
        z = complex(rng.uniform(-2.0, 2.0), rng.uniform(0.3, 2.0))
        lhs, rhs = truncation_perturbation_check(x, d, z)
        worst_gap = max(worst_gap, lhs - rhs)
        pert_ok = pert_ok and lhs <= rhs + slack
        s = empirical_stieltjes(esd(x), z)
        herglotz_ok = herglotz_ok and abs(s) <= 1.0 / z.imag + 1e-12
    for z in (0.5j, 2.0 + 0.1j, -1.0 + 1.0j, 3.0 + 0.01j):
        herglotz_ok = herglotz_ok and abs(semicircle.stieltjes(z)) <= 1.0 / z.imag + 1e-12
    levy_ok = True
    worst_levy = -math.inf
    for _ in range(100):
        f1 = as_step(rng.normal(size=rng.integers(3, 40)))
        f2 = as_step(rng.normal(size=rng.integers(3, 40)) + rng.uniform(-1, 1))
        excess = levy(f1, f2) - kolmogorov(f1, f2)
        worst_levy = max(worst_levy, excess)
        levy_ok = levy_ok and excess <= 1e-9
    elapsed = time.perf_counter() - t0
    ok = pert_ok and levy_ok and herglotz_ok and elapsed < 30.0
    _verdict(8, "perturbation, Levy and Herglotz inequalities", ok,
             f"worst lhs-rhs {worst_gap:.2e} <= {slack:.0e}, "
             f"worst levy-kolmogorov {worst_levy:.2e} <= 1e-9, "
             f"herglotz {'ok' if herglotz_ok else 'violated'}, "
             f"{elapsed:.1f}s < 30s")


# --- 9: empirical moments approach the Catalan sequence --------------------

def test_criterion_9_moment_convergence(gaussian_constant_runs):
    errs = {}
    for k in range(1, 7):
        mean_k = float(np.mean(
            [empirical_moment(lam, k) for lam in gaussian_constant_runs]))
        errs[k] = abs(mean_k - catalan_moment(k))
    ok = all(v <= 0.05 for v in errs.values())
    detail = ", ".join(f"|m_{k}-{catalan_moment(k)}|={v:.4f}"
                       for k, v in errs.items())
    _verdict(9, "moments within 0.05 of Catalan targets", ok, detail)
