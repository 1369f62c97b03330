"""
Квантовая и классическая энтропия: Шеннон, фон Нейман, смешивание ансамблей,
предел доступной информации S·log₂e.
"""
import logging
import math
from enum import Enum
from typing import List, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from config import MATRIX_TOL, MAX_MATRIX_DIMENSION, PROBABILITY_TOL
from errors import DomainError, MatrixError
from numerics import eigvals_hermitian
from units import LOG2E

logger = logging.getLogger(__name__)


class EntropyUnit(str, Enum):
    NATS = "nats"
    BITS = "bits"


def _in_unit(nats: float, base: EntropyUnit) -> float:
    return nats * LOG2E if EntropyUnit(base) is EntropyUnit.BITS else nats


# ==================== МОДЕЛИ ДАННЫХ ====================

class DensityMatrix(BaseModel):
    """Эрмитов оператор с единичным следом"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    entries: np.ndarray

    @field_validator("entries", mode="before")
    @classmethod
    def _check(cls, value) -> np.ndarray:
        a = np.array(value, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise MatrixError(f"density matrix must be square, got shape {a.shape}")
        d = a.shape[0]
        if not 1 <= d <= MAX_MATRIX_DIMENSION:
            raise MatrixError(f"dimension must be in [1, {MAX_MATRIX_DIMENSION}], got {d}")
        if float(np.max(np.abs(a - a.conj().T))) > MATRIX_TOL:
            raise MatrixError("density matrix is not Hermitian")
        trace = np.trace(a)
        if abs(trace - 1.0) > MATRIX_TOL:
            raise MatrixError(f"trace must be 1, got {trace.real:.15g}")
        a = 0.5 * (a + a.conj().T)
        if eigvals_hermitian(a)[-1] < -MATRIX_TOL:
            raise MatrixError("density matrix has negative eigenvalues")
        a.setflags(write=False)
        return a

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_ket(cls, ket: Sequence[complex]) -> "DensityMatrix":
        psi = np.asarray(ket, dtype=complex)
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise DomainError("zero state vector")
        psi = psi / norm
        return cls(entries=np.outer(psi, psi.conj()))

    @classmethod
    def maximally_mixed(cls, d: int) -> "DensityMatrix":
        return cls(entries=np.eye(d) / d)


class EnsembleMember(BaseModel):
    probability: float
    state: DensityMatrix

    @field_validator("probability")
    @classmethod
    def _nonnegative(cls, p: float) -> float:
        if p < 0 or not math.isfinite(p):
            raise ValueError(f"probability must be nonnegative, got {p}")
        return p


class Ensemble(BaseModel):
    members: List[EnsembleMember]

    @model_validator(mode="after")
    def _normalized(self) -> "Ensemble":
        if not self.members:
            raise ValueError("ensemble is empty")
        total = sum(m.probability for m in self.members)
        if abs(total - 1.0) > PROBABILITY_TOL:
            raise ValueError(f"probabilities must sum to 1, got {total:.15g}")
        dims = {m.state.dimension for m in self.members}
        if len(dims) != 1:
            raise MatrixError(f"ensemble states have mixed dimensions {sorted(dims)}")
        return self

    @property
    def probabilities(self) -> List[float]:
        return [m.probability for m in self.members]


# ==================== ОПЕРАЦИИ ====================

def _validate_distribution(probs: Sequence[float]) -> np.ndarray:
    p = np.asarray(probs, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise DomainError("probability list must be a nonempty sequence")
    if (p < 0).any() or not np.isfinite(p).all():
        raise DomainError("probabilities must be finite and nonnegative")
    if abs(p.sum() - 1.0) > PROBABILITY_TOL:
        raise DomainError(f"probabilities must sum to 1, got {p.sum():.15g}")
    return p


def _entropy_of(values: np.ndarray) -> float:
    # 0·ln 0 := 0
    nonzero = values[values > 0]
    return float(-np.sum(nonzero * np.log(nonzero)))


def shannon_entropy(probs: Sequence[float], base: EntropyUnit = EntropyUnit.NATS) -> float:
    return _in_unit(_entropy_of(_validate_distribution(probs)), base)


def von_neumann_entropy(rho: DensityMatrix, base: EntropyUnit = EntropyUnit.NATS) -> float:
    """S = −Tr ρ ln ρ по собственным значениям"""
    eigenvalues = eigvals_hermitian(rho.entries)
    # шум округления в [−1e-12, 0) считается нулём
    clipped = np.where(eigenvalues < 0, 0.0, eigenvalues)
    return _in_unit(_entropy_of(clipped), base)


def mix_ensemble(ensemble: Ensemble) -> DensityMatrix:
    """ρ = Σ p_i ρ_i"""
    mixed = sum(m.probability * m.state.entries for m in ensemble.members)
    return DensityMatrix(entries=mixed)


def purity(rho: DensityMatrix) -> float:
    return float(np.real(np.trace(rho.entries @ rho.entries)))


def accessible_info_bound(rho: DensityMatrix) -> float:
    """Верхняя граница извлекаемой информации в битах"""
    return von_neumann_entropy(rho, EntropyUnit.NATS) * LOG2E


def naive_capacity(ensemble: Ensemble) -> float:
    """Формальная ёмкость по Шеннону (в битах) без учёта неразличимости состояний"""
    return shannon_entropy(ensemble.probabilities, EntropyUnit.BITS)


def spin_half_ensemble() -> Ensemble:
    """Четыре состояния спина ½ (вверх/вниз по z и по x) с вероятностью ¼"""
    root = 1 / math.sqrt(2)
    kets = [(1, 0), (0, 1), (root, root), (root, -root)]
    return Ensemble(members=[
        EnsembleMember(probability=0.25, state=DensityMatrix.from_ket(k)) for k in kets
    ])
