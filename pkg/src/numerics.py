"""
Численные ядра: полубесконечная квадратура, собственные значения
эрмитовых матриц (циклический Якоби), ln Γ и наклон в log-log.
"""
import logging
import math
from typing import Callable, List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field
from scipy.special import gammaln

from config import (
    DEFAULT_REL_TOL, INITIAL_CUTOFF, MATRIX_TOL, MAX_CUTOFF, MAX_EVALUATIONS,
    MAX_JACOBI_SWEEPS, MAX_MATRIX_DIMENSION, MAX_REL_TOL, MIN_REL_TOL,
)
from errors import DomainError, MatrixError, QuadratureError

logger = logging.getLogger(__name__)

# ==================== УЗЛЫ ГАУССА-КРОНРОДА (7/15) ====================

_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# 15 узлов на [-1, 1]: сначала отрицательные, затем центр, затем положительные
_NODES = np.concatenate([-_XGK[:-1], [0.0], _XGK[:-1][::-1]])
_KRONROD = np.concatenate([_WGK[:-1], [_WGK[-1]], _WGK[:-1][::-1]])
_GAUSS = np.zeros(15)
_GAUSS[[1, 3, 5]] = _WG[:3]
_GAUSS[7] = _WG[3]
_GAUSS[[13, 11, 9]] = _WG[:3]

_EPS = np.finfo(float).eps
_TINY = np.finfo(float).tiny


class QuadratureResult(BaseModel):
    value: float
    error_estimate: float = Field(ge=0)
    evaluations: int = Field(gt=0)
    cutoff: float = 0.0


def _evaluate(f: Callable, x: np.ndarray) -> np.ndarray:
    fx = np.asarray(f(x), dtype=float)
    if fx.shape != x.shape:
        fx = np.broadcast_to(fx, x.shape)
    if np.isnan(fx).any():
        raise DomainError("integrand returned NaN")
    return fx


def _gauss_kronrod(f: Callable, a: float, b: float) -> Tuple[float, float]:
    """Одна панель 7/15 с оценкой погрешности как в QUADPACK"""
    half = 0.5 * (b - a)
    center = 0.5 * (a + b)
    fx = _evaluate(f, center + half * _NODES)

    result_kronrod = float(np.dot(_KRONROD, fx))
    result_gauss = float(np.dot(_GAUSS, fx))
    result_abs = float(np.dot(_KRONROD, np.abs(fx)))
    mean = 0.5 * result_kronrod
    result_asc = float(np.dot(_KRONROD, np.abs(fx - mean)))

    error = abs((result_kronrod - result_gauss) * half)
    result_asc *= abs(half)
    result_abs *= abs(half)
    if result_asc != 0.0 and error != 0.0:
        error = result_asc * min(1.0, (200.0 * error / result_asc) ** 1.5)
    if result_abs > _TINY / (50.0 * _EPS):
        error = max(50.0 * _EPS * result_abs, error)
    return result_kronrod * half, error


def _adaptive(f: Callable, a: float, b: float, rel_tol: float,
              budget: int, abs_floor: float = 0.0) -> Tuple[float, float, int]:
    """Адаптивное деление панели с наибольшей погрешностью"""
    # ниже 50·eps оценка ограничена округлением
    rel_tol = max(rel_tol, 50.0 * _EPS)
    value, error = _gauss_kronrod(f, a, b)
    intervals = [(a, b, value, error)]
    evaluations = 15

    while True:
        total = sum(item[2] for item in intervals)
        total_error = sum(item[3] for item in intervals)
        if total_error <= max(rel_tol * abs(total), abs_floor, 1e-300):
            return total, total_error, evaluations
        if evaluations + 30 > budget:
            raise QuadratureError(
                f"no convergence on [{a}, {b}] after {evaluations} evaluations",
                partial=QuadratureResult(value=total, error_estimate=total_error,
                                         evaluations=evaluations, cutoff=b),
            )

        worst = max(range(len(intervals)), key=lambda i: intervals[i][3])
        left, right, _, _ = intervals[worst]
        mid = 0.5 * (left + right)
        v_left, e_left = _gauss_kronrod(f, left, mid)
        v_right, e_right = _gauss_kronrod(f, mid, right)
        evaluations += 30
        intervals[worst] = (left, mid, v_left, e_left)
        intervals.append((mid, right, v_right, e_right))


def integrate_semi_infinite(f: Callable[[np.ndarray], np.ndarray],
                            rel_tol: float = DEFAULT_REL_TOL,
                            max_evaluations: int = MAX_EVALUATIONS) -> QuadratureResult:
    """
    Интеграл f по (0, ∞) для экспоненциально убывающих f.

    Верхний предел X удваивается, пока вклад [X, 2X] не станет меньше rel_tol/10
    от накопленного значения. f получает массив numpy и должна быть векторизована.
    """
    if not MIN_REL_TOL <= rel_tol <= MAX_REL_TOL:
        raise DomainError(f"rel_tol must lie in [{MIN_REL_TOL}, {MAX_REL_TOL}], got {rel_tol}")

    cutoff = INITIAL_CUTOFF
    value, error, evaluations = _adaptive(f, 0.0, cutoff, rel_tol / 2, max_evaluations)

    while True:
        try:
            tail, tail_error, used = _adaptive(
                f, cutoff, 2 * cutoff, rel_tol / 2, max_evaluations - evaluations,
                abs_floor=rel_tol * abs(value) / 4,
            )
        except QuadratureError as e:
            partial = QuadratureResult(value=value, error_estimate=error,
                                       evaluations=evaluations, cutoff=cutoff)
            raise QuadratureError(str(e), partial=partial) from e
        value += tail
        error += tail_error
        evaluations += used
        cutoff *= 2
        if abs(tail) <= rel_tol / 10 * abs(value) or (value == 0 and tail == 0):
            break
        if cutoff > MAX_CUTOFF:
            raise QuadratureError(
                f"integrand does not decay before cutoff {cutoff}",
                partial=QuadratureResult(value=value, error_estimate=error,
                                         evaluations=evaluations, cutoff=cutoff),
            )

    logger.debug(f"Квадратура: {value:.15g} ± {error:.2e}, {evaluations} вычислений, X={cutoff}")
    return QuadratureResult(value=value, error_estimate=error,
                            evaluations=evaluations, cutoff=cutoff)


# ==================== СОБСТВЕННЫЕ ЗНАЧЕНИЯ ====================

def _rotate(a: np.ndarray, p: int, q: int) -> None:
    """Комплексное вращение Якоби, зануляющее a[p, q] (на месте)"""
    apq = a[p, q]
    magnitude = abs(apq)
    phase = apq / magnitude
    app, aqq = a[p, p].real, a[q, q].real

    tau = (aqq - app) / (2.0 * magnitude)
    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c

    # U = D·P: D снимает фазу элемента (p, q), P: вещественный поворот
    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - s * np.conj(phase) * col_q
    a[:, q] = s * col_p + c * np.conj(phase) * col_q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - s * phase * row_q
    a[q, :] = s * row_p + c * phase * row_q

    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real


def eigvals_hermitian(h: Sequence) -> np.ndarray:
    """Собственные значения эрмитовой матрицы по убыванию"""
    a = np.array(h, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise MatrixError(f"matrix must be square, got shape {a.shape}")
    n = a.shape[0]
    if n == 0 or n > MAX_MATRIX_DIMENSION:
        raise MatrixError(f"dimension must be in [1, {MAX_MATRIX_DIMENSION}], got {n}")
    if not np.isfinite(a).all():
        raise MatrixError("matrix has non-finite entries")
    asymmetry = float(np.max(np.abs(a - a.conj().T)))
    if asymmetry > MATRIX_TOL:
        raise MatrixError(f"matrix is not Hermitian (max deviation {asymmetry:.3e})")

    a = 0.5 * (a + a.conj().T)
    scale = float(np.linalg.norm(a))
    threshold = _EPS * max(scale, _TINY)

    for sweep in range(MAX_JACOBI_SWEEPS):
        off = math.sqrt(float(np.sum(np.abs(np.triu(a, 1)) ** 2)))
        if off <= threshold:
            logger.debug(f"Якоби сошёлся за {sweep} проходов, n={n}")
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) > _TINY:
                    _rotate(a, p, q)
    else:
        raise MatrixError(f"Jacobi iteration did not converge in {MAX_JACOBI_SWEEPS} sweeps")

    return np.sort(np.diag(a).real)[::-1]


# ==================== ПРОЧЕЕ ====================

def log_gamma(x: float) -> float:
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return float(gammaln(x))


def fit_loglog_slope(points: Sequence[Tuple[float, float]]) -> float:
    """Наклон МНК-прямой по точкам (ln x, ln y)"""
    if len(points) < 3:
        raise DomainError(f"need at least 3 points, got {len(points)}")
    xs = np.array([p[0] for p in points], dtype=float)
    ys = np.array([p[1] for p in points], dtype=float)
    if (xs <= 0).any() or (ys <= 0).any():
        raise DomainError("log-log fit requires positive values")
    if (np.diff(xs) <= 0).any():
        raise DomainError("x values must be strictly increasing")
    slope, _ = np.polyfit(np.log(xs), np.log(ys), 1)
    return float(slope)


def logspace_points(low: float, high: float, samples: int) -> List[float]:
    if not 0 < low < high or samples < 2:
        raise DomainError(f"invalid range [{low}, {high}] with {samples} samples")
    return [float(v) for v in np.geomspace(low, high, samples)]
