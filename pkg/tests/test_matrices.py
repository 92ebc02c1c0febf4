"""Value types, row-average statistics, truncation and the perturbation bound."""

import numpy as np
import pytest

from semicircle_lab import (
    ConditionTolerances,
    SymmetricMatrix,
    VarianceProfile,
    b_values,
    check_conditions,
    lindeberg_ratio,
    profile_block,
    profile_constant,
    symmetric_from_upper,
    truncate,
    truncation_perturbation_check,
    truncation_sequence,
)


def _random_symmetric(rng, n, scale=1.0):
    return symmetric_from_upper(n, scale * rng.normal(size=n * (n + 1) // 2))


# --- value types -----------------------------------------------------------


def test_symmetric_matrix_validation():
    with pytest.raises(ValueError):
        SymmetricMatrix(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        SymmetricMatrix(np.array([[0.0, 1.0], [2.0, 0.0]]))
    with pytest.raises(ValueError):
        SymmetricMatrix(np.array([[np.nan, 0.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        SymmetricMatrix(np.zeros((0, 0)))


def test_symmetric_matrix_is_frozen():
    m = SymmetricMatrix(np.eye(3))
    assert m.n == 3
    assert m.entry(1, 1) == 1.0
    with pytest.raises(ValueError):
        m.data[0, 0] = 5.0


def test_symmetric_from_upper():
    m = symmetric_from_upper(2, [1.0, 2.0, 3.0])
    assert np.array_equal(m.data, [[1.0, 2.0], [2.0, 3.0]])
    with pytest.raises(ValueError):
        symmetric_from_upper(3, [1.0, 2.0])
    with pytest.raises(ValueError):
        symmetric_from_upper(0, [])


def test_variance_profile_validation():
    with pytest.raises(ValueError):
        VarianceProfile(np.array([[1.0, -0.5], [-0.5, 1.0]]))
    with pytest.raises(ValueError):
        VarianceProfile(np.array([[1.0, 0.2], [0.3, 1.0]]))
    p = VarianceProfile(np.ones((2, 2)))
    assert p.desc is None
    assert p.n == 2


# --- row averages ----------------------------------------------------------


def test_b_values_constant_profile():
    assert np.array_equal(b_values(profile_constant(7)), np.ones(7))


@pytest.mark.parametrize("n", [8, 64, 200])
def test_b_values_block_closed_form(n):
    # first half rows average 1, second half (n/2 + 1)/n; both dyadic-exact
    b2 = b_values(profile_block(n))
    m = n // 2
    assert np.array_equal(b2[:m], np.ones(m))
    assert np.allclose(b2[m:], (m + 1) / n, atol=1e-15)
    dev = np.abs(b2 - 1.0).mean()
    assert dev == pytest.approx(0.5 * (0.5 - 1.0 / n), abs=1e-15)


def test_block_average_deviation_frozen_at_64():
    dev = np.abs(b_values(profile_block(64)) - 1.0).mean()
    assert dev == 0.2421875


def test_check_conditions_constant_passes():
    report = check_conditions(profile_constant(32), tau=0.5, lindeberg_estimate=0.0)
    assert report.all_pass
    assert report.avg_b_deviation == 0.0
    assert report.max_b == 1.0
    assert report.verdicts == {"b_avg": True, "b_max": True, "b_uniform": True,
                               "lindeberg": True}


def test_check_conditions_block_fails():
    report = check_conditions(profile_block(64), tau=0.5, lindeberg_estimate=0.0)
    assert not report.all_pass
    assert not report.verdicts["b_avg"]
    assert not report.verdicts["b_uniform"]
    assert report.verdicts["b_max"]
    assert report.verdicts["lindeberg"]
    assert report.max_b_deviation == pytest.approx(0.5 - 1.0 / 64, abs=1e-15)


def test_check_conditions_custom_tolerances():
    tol = ConditionTolerances(b_avg=0.3, b_max_dev=0.6)
    report = check_conditions(profile_block(64), tau=0.5, lindeberg_estimate=0.0, tol=tol)
    assert report.all_pass


def test_check_conditions_rejects_bad_inputs():
    with pytest.raises(ValueError):
        check_conditions(profile_constant(4), tau=0.0, lindeberg_estimate=0.0)
    with pytest.raises(ValueError):
        check_conditions(profile_constant(4), tau=0.5, lindeberg_estimate=-1.0)


# --- truncation ------------------------------------------------------------


def test_truncation_sequence():
    assert truncation_sequence(256) == 0.5
    assert truncation_sequence(1) == 1.0
    assert truncation_sequence(4096) < truncation_sequence(256)
    with pytest.raises(ValueError):
        truncation_sequence(0)


def test_truncate_reassembles_exactly():
    rng = np.random.default_rng(11)
    m = _random_symmetric(rng, 16, scale=3.0)
    result = truncate(m, tau=0.4)
    assert np.array_equal(result.hat.data + result.check.data, m.data)
    threshold = 0.4 * np.sqrt(16)
    nonzero_hat = result.hat.data[result.hat.data != 0.0]
    nonzero_check = result.check.data[result.check.data != 0.0]
    assert np.all(np.abs(nonzero_hat) < threshold)
    assert np.all(np.abs(nonzero_check) >= threshold)
    # supports are disjoint
    assert not np.any((result.hat.data != 0.0) & (result.check.data != 0.0))
    assert result.tau == 0.4


def test_truncate_centering():
    rng = np.random.default_rng(12)
    m = _random_symmetric(rng, 12, scale=2.0)
    explicit = truncate(m, tau=0.5, center_mean=0.0)
    assert np.array_equal(explicit.centered.data, explicit.hat.data)
    default = truncate(m, tau=0.5)
    off = ~np.eye(12, dtype=bool)
    assert abs(default.centered.data[off].mean()) <= 1e-14


def test_truncate_rejects_bad_tau():
    with pytest.raises(ValueError):
        truncate(SymmetricMatrix(np.eye(2)), tau=0.0)


def test_lindeberg_ratio_hand_examples():
    m = SymmetricMatrix(np.array([[0.0, 3.0], [3.0, 0.0]]))
    # threshold sqrt(2); both off-diagonal 3s exceed it: (9 + 9)/4
    assert lindeberg_ratio(m, tau=1.0) == 4.5
    d = SymmetricMatrix(np.array([[3.0, 0.0], [0.0, 0.0]]))
    assert lindeberg_ratio(d, tau=1.0) == 2.25
    assert lindeberg_ratio(m, tau=100.0) == 0.0
    with pytest.raises(ValueError):
        lindeberg_ratio(m, tau=0.0)


# --- perturbation bound ----------------------------------------------------


def test_perturbation_bound_holds():
    rng = np.random.default_rng(13)
    n = 16
    for _ in range(10):
        x = _random_symmetric(rng, n)
        sparse = rng.normal(size=n * (n + 1) // 2)
        sparse[rng.random(sparse.size) < 0.8] = 0.0
        d = symmetric_from_upper(n, sparse)
        z = complex(rng.uniform(-2, 2), rng.uniform(0.3, 2.0))
        lhs, rhs = truncation_perturbation_check(x, d, z)
        assert lhs <= rhs + 1e-8 * n


def test_perturbation_zero_difference():
    x = SymmetricMatrix(np.diag([1.0, 2.0, 3.0]))
    zero = SymmetricMatrix(np.zeros((3, 3)))
    lhs, rhs = truncation_perturbation_check(x, zero, 1j)
    assert lhs == 0.0
    assert rhs == 0.0


def test_perturbation_rejects_bad_inputs():
    x = SymmetricMatrix(np.eye(3))
    with pytest.raises(ValueError):
        truncation_perturbation_check(x, SymmetricMatrix(np.eye(2)), 1j)
    with pytest.raises(ValueError):
        truncation_perturbation_check(x, x, 1.0)
