"""
Тесты численных ядер: квадратура, Якоби, ln Γ, наклон в log-log
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis.strategies import floats, integers
from scipy.integrate import quad

from errors import DomainError, MatrixError, QuadratureError
from numerics import (
    eigvals_hermitian, fit_loglog_slope, integrate_semi_infinite, log_gamma, logspace_points,
)


def bose(x):
    return x / np.expm1(x)


def test_bose_integral():
    result = integrate_semi_infinite(bose)
    assert result.value == pytest.approx(math.pi ** 2 / 6, rel=1e-11)
    assert result.error_estimate <= 1e-9
    assert result.evaluations > 0


def test_cube_bose_integral():
    result = integrate_semi_infinite(lambda x: x ** 3 / np.expm1(x))
    assert result.value == pytest.approx(math.pi ** 4 / 15, rel=1e-10)


def test_exponential_integral():
    result = integrate_semi_infinite(lambda x: np.exp(-x))
    assert result.value == pytest.approx(1.0, rel=1e-11)


def test_logarithmic_endpoint_singularity():
    """−ln(1 − e⁻ˣ) интегрируема в нуле; ∫ = π²/6"""
    result = integrate_semi_infinite(lambda x: -np.log(-np.expm1(-x)))
    assert result.value == pytest.approx(math.pi ** 2 / 6, rel=1e-9)


def test_matches_scipy_quad():
    f = lambda x: x ** 2 * np.exp(-x) / (1 + np.exp(-x))
    expected, _ = quad(lambda x: float(f(np.array([x]))[0]), 0, np.inf)
    assert integrate_semi_infinite(f).value == pytest.approx(expected, rel=1e-9)


def test_nan_integrand_rejected():
    with pytest.raises(DomainError):
        integrate_semi_infinite(lambda x: np.full_like(x, np.nan))


def test_slowly_decaying_integrand_fails():
    with pytest.raises(QuadratureError) as info:
        integrate_semi_infinite(lambda x: 1 / (1 + x), rel_tol=1e-6)
    assert info.value.partial is not None
    assert info.value.partial.value > 0


def test_evaluation_budget_enforced():
    with pytest.raises(QuadratureError):
        integrate_semi_infinite(bose, max_evaluations=20)


@pytest.mark.parametrize("rel_tol", [0.0, 1e-16, 1e-2])
def test_tolerance_range(rel_tol):
    with pytest.raises(DomainError):
        integrate_semi_infinite(bose, rel_tol=rel_tol)


@pytest.mark.parametrize("rel_tol", [1e-6, 1e-8, 1e-10])
def test_bose_integral_meets_requested_tolerance(rel_tol):
    result = integrate_semi_infinite(bose, rel_tol=rel_tol)
    assert result.value == pytest.approx(math.pi ** 2 / 6, rel=rel_tol)


def test_pauli_y_eigenvalues():
    values = eigvals_hermitian([[0, -1j], [1j, 0]])
    assert values == pytest.approx([1.0, -1.0], abs=1e-14)


def test_eigenvalues_sorted_descending():
    values = eigvals_hermitian(np.diag([0.1, 0.7, 0.2]))
    assert list(values) == pytest.approx([0.7, 0.2, 0.1])


@settings(deadline=None, max_examples=40)
@given(seed=integers(min_value=0, max_value=2 ** 32 - 1), n=integers(min_value=1, max_value=12))
def test_jacobi_matches_numpy(seed, n):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    h = a + a.conj().T
    expected = np.sort(np.linalg.eigvalsh(h))[::-1]
    scale = max(1.0, float(np.abs(expected).max()))
    assert np.allclose(eigvals_hermitian(h), expected, atol=1e-11 * scale, rtol=0)


def test_trace_preserved():
    rng = np.random.default_rng(7)
    a = rng.normal(size=(20, 20)) + 1j * rng.normal(size=(20, 20))
    h = a @ a.conj().T
    assert eigvals_hermitian(h).sum() == pytest.approx(np.trace(h).real, rel=1e-12)


@pytest.mark.parametrize("matrix", [
    [[1, 2], [3, 4]],
    [[1, 2, 3]],
    np.zeros((0, 0)),
    np.eye(65),
    [[np.inf, 0], [0, 1]],
])
def test_invalid_matrices(matrix):
    with pytest.raises(MatrixError):
        eigvals_hermitian(matrix)


def test_log_gamma():
    assert log_gamma(5.0) == pytest.approx(math.log(24))
    assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi))
    with pytest.raises(DomainError):
        log_gamma(0.0)


@settings(deadline=None)
@given(x=floats(min_value=0.05, max_value=150.0))
def test_log_gamma_recurrence(x):
    """ln Γ(x+1) = ln Γ(x) + ln x"""
    assert log_gamma(x + 1) == pytest.approx(log_gamma(x) + math.log(x), rel=1e-12, abs=1e-12)


def test_loglog_slope():
    points = [(x, 3 * x ** 0.75) for x in logspace_points(1, 1e4, 20)]
    assert fit_loglog_slope(points) == pytest.approx(0.75, abs=1e-12)


@pytest.mark.parametrize("points", [
    [(1, 1), (2, 2)],
    [(1, 1), (2, -1), (3, 3)],
    [(1, 1), (1, 2), (3, 3)],
])
def test_loglog_slope_rejects(points):
    with pytest.raises(DomainError):
        fit_loglog_slope(points)


def test_logspace_points():
    points = logspace_points(1.0, 100.0, 3)
    assert points == pytest.approx([1.0, 10.0, 100.0])
    with pytest.raises(DomainError):
        logspace_points(10.0, 1.0, 5)
