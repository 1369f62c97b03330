"""
Мысленный эксперимент: система с энергией E и радиусом R падает в чёрную дыру
массы M = ζR. Аудит проверяет каждое неравенство вывода границы 8πνζRE.
"""
import logging
import math
from typing import List, Optional, Union

from pydantic import BaseModel, field_validator, model_validator

from config import (
    D_OVER_M_THRESHOLD, DEFAULT_ZETA, FORCE_RATIO_THRESHOLD, NU_RANGE, SPECIES_CAP, ZETA_RANGE,
)
from errors import AuditViolation, DomainError
from units import ENERGY, LENGTH, MASS, TIME, Quantity, planck_quantity

logger = logging.getLogger(__name__)

RADIATION_TIME_COEFFICIENT = 15360 * math.pi
INFALL_COEFFICIENT = 2 * 15360 ** (2 / 3)
ROUNDED_RADIATION_TIME_COEFFICIENT = 5e4
ROUNDED_INFALL_COEFFICIENT = 1.2e3


# ==================== МОДЕЛИ ДАННЫХ ====================

class GedankenConfig(BaseModel):
    E: Quantity
    R: Quantity
    zeta: float = DEFAULT_ZETA
    species_count: float = SPECIES_CAP
    n_eff: Optional[float] = None

    @field_validator("E", mode="before")
    @classmethod
    def _energy(cls, v) -> Quantity:
        return planck_quantity(v, ENERGY)

    @field_validator("R", mode="before")
    @classmethod
    def _radius(cls, v) -> Quantity:
        return planck_quantity(v, LENGTH)

    @model_validator(mode="after")
    def _ranges(self) -> "GedankenConfig":
        if self.E.value <= 0 or self.R.value <= 0:
            raise ValueError("E and R must be positive")
        if not ZETA_RANGE[0] <= self.zeta <= ZETA_RANGE[1]:
            raise ValueError(f"zeta must lie in {list(ZETA_RANGE)}, got {self.zeta}")
        if self.species_count <= 0:
            raise ValueError(f"species count must be positive, got {self.species_count}")
        if self.n_eff is not None and self.n_eff <= 0:
            raise ValueError(f"n_eff must be positive, got {self.n_eff}")
        return self

    @property
    def M(self) -> float:
        return self.zeta * self.R.value


class AuditFlag(BaseModel):
    name: str
    passed: bool
    value: float
    threshold: float
    detail: str


class CoefficientCheck(BaseModel):
    name: str
    exact: float
    rounded: float

    @property
    def deviation(self) -> float:
        return abs(self.exact - self.rounded) / self.rounded


class AuditReport(BaseModel):
    M: float
    T_H: float
    t: float
    d: float
    d_over_M: float
    force_ratio_at_d: float
    n_eff_cap: float
    flags: List[AuditFlag]
    coefficients: List[CoefficientCheck]

    @property
    def passed(self) -> bool:
        return all(f.passed for f in self.flags)

    @property
    def violations(self) -> List[str]:
        return [f.name for f in self.flags if not f.passed]

    def raise_for_violations(self) -> None:
        if not self.passed:
            raise AuditViolation(self.violations)


# ==================== ОПЕРАЦИИ ====================

def _positive(*pairs) -> None:
    for name, value in pairs:
        if not value > 0 or not math.isfinite(value):
            raise DomainError(f"{name} must be positive, got {value}")


def radiation_time(E: Union[Quantity, float], M: Union[Quantity, float],
                   species_count: float) -> Quantity:
    """Время излучения энергии E дырой массы M: t = 15360πEM²/𝒩"""
    energy = planck_quantity(E, ENERGY).value
    mass = planck_quantity(M, MASS).value
    _positive(("E", energy), ("M", mass), ("species count", species_count))
    return Quantity(value=RADIATION_TIME_COEFFICIENT * energy * mass ** 2 / species_count,
                    dimension=TIME)


def infall_distance(t: Union[Quantity, float], M: Union[Quantity, float]) -> Quantity:
    """Расстояние свободного падения за время t: d = 2(t²M/π²)^{1/3}"""
    time = planck_quantity(t, TIME).value
    mass = planck_quantity(M, MASS).value
    _positive(("t", time), ("M", mass))
    return Quantity(value=2 * (time ** 2 * mass / math.pi ** 2) ** (1 / 3), dimension=LENGTH)


def free_fall_time(d: Union[Quantity, float], M: Union[Quantity, float]) -> Quantity:
    """Ньютоново время падения из покоя с расстояния d: (π/2)d^{3/2}/√(2M)"""
    distance = planck_quantity(d, LENGTH).value
    mass = planck_quantity(M, MASS).value
    _positive(("d", distance), ("M", mass))
    return Quantity(value=math.pi / 2 * distance ** 1.5 / math.sqrt(2 * mass), dimension=TIME)


def force_ratio(M: Union[Quantity, float], E: Union[Quantity, float],
                R: Union[Quantity, float], n_eff: float) -> float:
    """f_rad/f_grav = N_eff·R²/(61440π²M³E)"""
    mass = planck_quantity(M, MASS).value
    energy = planck_quantity(E, ENERGY).value
    radius = planck_quantity(R, LENGTH).value
    _positive(("M", mass), ("E", energy), ("R", radius), ("n_eff", n_eff))
    return n_eff * radius ** 2 / (61440 * math.pi ** 2 * mass ** 3 * energy)


def n_eff_cap(M: Union[Quantity, float], E: Union[Quantity, float]) -> float:
    """N_eff < 8πME"""
    mass = planck_quantity(M, MASS).value
    energy = planck_quantity(E, ENERGY).value
    _positive(("M", mass), ("E", energy))
    return 8 * math.pi * mass * energy


def net_entropy_change(S_system: float, E: Union[Quantity, float],
                       M: Union[Quantity, float], nu: float) -> float:
    """δS = νE/T_H − S = 8πνME − S"""
    energy = planck_quantity(E, ENERGY).value
    mass = planck_quantity(M, MASS).value
    _positive(("E", energy), ("M", mass))
    if not NU_RANGE[0] <= nu <= NU_RANGE[1]:
        raise DomainError(f"nu must lie in {list(NU_RANGE)}, got {nu}")
    return 8 * math.pi * nu * mass * energy - S_system


def coefficient_checks() -> List[CoefficientCheck]:
    return [
        CoefficientCheck(name="radiation_time", exact=RADIATION_TIME_COEFFICIENT,
                         rounded=ROUNDED_RADIATION_TIME_COEFFICIENT),
        CoefficientCheck(name="infall_distance", exact=INFALL_COEFFICIENT,
                         rounded=ROUNDED_INFALL_COEFFICIENT),
    ]


def audit(cfg: GedankenConfig) -> AuditReport:
    """Полный прогон: M = ζR, t, d, d/M, давление излучения и флаги неравенств"""
    E, R = cfg.E.value, cfg.R.value
    M = cfg.M
    t = radiation_time(E, M, cfg.species_count).value
    d = infall_distance(t, M).value
    cap = n_eff_cap(M, E)
    n_eff = cap if cfg.n_eff is None else cfg.n_eff
    ratio = force_ratio(M, E, R, n_eff)
    compton = E * R

    flags = [
        AuditFlag(name="compton", passed=compton >= 1.0, value=compton, threshold=1.0,
                  detail="system larger than its Compton length (ER >= hbar)"),
        AuditFlag(name="species", passed=cfg.species_count <= SPECIES_CAP,
                  value=cfg.species_count, threshold=SPECIES_CAP,
                  detail="massless species count N <= 100"),
        AuditFlag(name="infall", passed=d / M >= D_OVER_M_THRESHOLD, value=d / M,
                  threshold=D_OVER_M_THRESHOLD, detail="drop distance d >= 57M"),
        AuditFlag(name="radiation_pressure", passed=ratio < FORCE_RATIO_THRESHOLD,
                  value=ratio, threshold=FORCE_RATIO_THRESHOLD,
                  detail="radiation pressure negligible against gravity"),
    ]
    report = AuditReport(M=M, T_H=1 / (8 * math.pi * M), t=t, d=d, d_over_M=d / M,
                         force_ratio_at_d=ratio, n_eff_cap=cap, flags=flags,
                         coefficients=coefficient_checks())
    if not report.passed:
        logger.warning(f"Аудит не пройден: {', '.join(report.violations)}")
    return report
