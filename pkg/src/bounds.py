"""
Энтропийные границы ограниченных систем и вселенных.

Все границы возвращаются в натах (BoundResult); биты получаются умножением на log₂e.
Там, где формула имеет размерный смысл, значение собирается из Quantity вместе
с ℏ, G, c и проверяется на безразмерность.
"""
import logging
import math
from typing import List, Literal, Optional, Union

from pydantic import BaseModel, computed_field, field_validator, model_validator

from config import (
    NU_RANGE, POOR_MAN_COEFFICIENT_CAP, SATURATION_TOL, TYPICAL_COMPACTNESS, ZETA_RANGE,
)
from errors import DomainError
from numerics import log_gamma
from units import (
    AREA, ENERGY, LENGTH, LOG2E, MASS, Quantity, constant, planck_quantity,
)

logger = logging.getLogger(__name__)

STRONG_GRAVITY = "strong_gravity"
PLANCK_UNITS_ONLY = "planck_units_only"


# ==================== МОДЕЛИ ДАННЫХ ====================

class BoundResult(BaseModel):
    bound_name: str
    nats: float
    saturated: Optional[bool] = None
    warnings: List[str] = []

    @field_validator("nats")
    @classmethod
    def _nonnegative(cls, v: float) -> float:
        if v < 0 or not math.isfinite(v):
            raise ValueError(f"bound must be finite and nonnegative, got {v}")
        return v

    @computed_field
    @property
    def bits(self) -> float:
        return self.nats * LOG2E


class SystemSpec(BaseModel):
    """Система с энергией E, радиусом R в пространстве размерности n (D = n + 1)"""
    E: Quantity
    R: Quantity
    n: int = 3

    @field_validator("E", mode="before")
    @classmethod
    def _energy(cls, v) -> Quantity:
        return planck_quantity(v, ENERGY)

    @field_validator("R", mode="before")
    @classmethod
    def _radius(cls, v) -> Quantity:
        return planck_quantity(v, LENGTH)

    @model_validator(mode="after")
    def _positive(self) -> "SystemSpec":
        if self.E.value <= 0 or self.R.value <= 0:
            raise ValueError("E and R must be positive")
        if self.n < 3:
            raise ValueError(f"spatial dimension must be >= 3, got {self.n}")
        return self

    @property
    def strongly_gravitating(self) -> bool:
        return self.R.value < 2 * self.E.value


class VerlindeInput(BaseModel):
    E: Quantity
    E_C: Quantity
    R: Quantity
    n: int = 3

    @field_validator("E", "E_C", mode="before")
    @classmethod
    def _energies(cls, v) -> Quantity:
        return planck_quantity(v, ENERGY)

    @field_validator("R", mode="before")
    @classmethod
    def _radius(cls, v) -> Quantity:
        return planck_quantity(v, LENGTH)

    @model_validator(mode="after")
    def _casimir_range(self) -> "VerlindeInput":
        if self.E.value <= 0 or self.R.value <= 0:
            raise ValueError("E and R must be positive")
        if not 0 <= self.E_C.value <= 2 * self.E.value:
            raise ValueError(f"Casimir energy must lie in [0, 2E], got {self.E_C.value}")
        if self.n < 3:
            raise ValueError(f"spatial dimension must be >= 3, got {self.n}")
        return self


class KerrNewmanSpec(BaseModel):
    """Масса M, удельный момент a = J/M и заряд Q в геометризованных единицах"""
    M: Quantity
    a: Quantity
    Q: Quantity

    @field_validator("M", "a", "Q", mode="before")
    @classmethod
    def _mass_like(cls, v) -> Quantity:
        return planck_quantity(v, MASS)

    @model_validator(mode="after")
    def _horizon_exists(self) -> "KerrNewmanSpec":
        M, a, Q = self.M.value, self.a.value, self.Q.value
        if M <= 0:
            raise ValueError("mass must be positive")
        if M * M < a * a + Q * Q:
            raise ValueError("naked singularity: M^2 < a^2 + Q^2")
        return self

    @property
    def horizon_radius(self) -> float:
        M, a, Q = self.M.value, self.a.value, self.Q.value
        return M + math.sqrt(max(M * M - a * a - Q * Q, 0.0))


class KerrNewmanCheck(BaseModel):
    entropy: float
    bound: float
    horizon_radius: float
    saturated: bool


class BoundComparison(BaseModel):
    universal: BoundResult
    holographic: Optional[BoundResult] = None
    ratio: Optional[float] = None
    tighter: Optional[Literal["universal", "holographic", "equal"]] = None
    note: str = ""


# ==================== ВСПОМОГАТЕЛЬНОЕ ====================

def _entropy_value(q: Quantity) -> float:
    if not q.is_dimensionless():
        raise AssertionError(f"bound is not dimensionless: {q.dimension}")
    return q.value


def _result(name: str, nats: float, entropy: Optional[float] = None,
            warnings: Optional[List[str]] = None) -> BoundResult:
    saturated = None
    if entropy is not None:
        saturated = abs(entropy - nats) <= SATURATION_TOL * nats
    return BoundResult(bound_name=name, nats=nats, saturated=saturated,
                       warnings=list(warnings or []))


def _sphere_area(radius: float, n: int) -> float:
    """Площадь (n−1)-сферы радиуса R в n-мерном пространстве"""
    return 2 * math.pi ** (n / 2) * radius ** (n - 1) / math.exp(log_gamma(n / 2))


# ==================== ГРАНИЦЫ ====================

def holographic_bound(area: Union[Quantity, float, None] = None,
                      radius: Union[Quantity, float, None] = None,
                      n: int = 3, entropy: Optional[float] = None) -> BoundResult:
    """S ≤ A/4ℏ; принимает площадь или радиус (A = 4πR² при n = 3)"""
    if (area is None) == (radius is None):
        raise DomainError("give exactly one of area or radius")
    warnings: List[str] = []
    if area is not None:
        A = planck_quantity(area, AREA)
    else:
        R = planck_quantity(radius, LENGTH)
        if R.value <= 0:
            raise DomainError(f"radius must be positive, got {R.value}")
        if n == 3:
            A = 4 * math.pi * R * R
        else:
            A = Quantity(value=_sphere_area(R.value, n), dimension=AREA)
            warnings.append(PLANCK_UNITS_ONLY)
    if A.value <= 0:
        raise DomainError(f"area must be positive, got {A.value}")
    if n != 3 and PLANCK_UNITS_ONLY not in warnings:
        warnings.append(PLANCK_UNITS_ONLY)

    hbar, G, c = constant("hbar"), constant("G"), constant("c")
    nats = _entropy_value(A * c ** 3 / (4 * G * hbar))
    return _result("holographic", nats, entropy, warnings)


def universal_bound(s: SystemSpec, entropy: Optional[float] = None) -> BoundResult:
    """S ≤ 2πER/ℏ"""
    warnings: List[str] = []
    if s.strongly_gravitating:
        logger.warning(f"R < 2E ({s.R.value:.4g} < {2 * s.E.value:.4g}): система сильно гравитирующая")
        warnings.append(STRONG_GRAVITY)
    hbar, c = constant("hbar"), constant("c")
    nats = _entropy_value(2 * math.pi * s.E * s.R / (hbar * c))
    return _result("universal", nats, entropy, warnings)


def poor_man_bound(s: SystemSpec, nu: float, zeta: float,
                   check_ranges: bool = True) -> BoundResult:
    """S < 8πνζRE/ℏ"""
    if check_ranges:
        if not NU_RANGE[0] <= nu <= NU_RANGE[1]:
            raise DomainError(f"nu must lie in {list(NU_RANGE)}, got {nu}")
        if zeta < ZETA_RANGE[0]:
            raise DomainError(f"zeta must be >= {ZETA_RANGE[0]}, got {zeta}")
    elif nu <= 0 or zeta <= 0:
        raise DomainError("nu and zeta must be positive")
    hbar, c = constant("hbar"), constant("c")
    nats = _entropy_value(8 * math.pi * nu * zeta * s.R * s.E / (hbar * c))
    return _result("poor_man", nats)


def poor_man_coefficient(nu: float, zeta: float) -> float:
    """4νζ; ожидается меньше 10²"""
    value = 4 * nu * zeta
    if value >= POOR_MAN_COEFFICIENT_CAP:
        logger.warning(f"4νζ = {value:.4g} превышает {POOR_MAN_COEFFICIENT_CAP:g}")
    return value


def gravitational_radius(E: Union[Quantity, float], n: int = 3) -> Quantity:
    """r_g из D-мерного решения Шварцшильда"""
    if n < 3:
        raise DomainError(f"spatial dimension must be >= 3, got {n}")
    energy = planck_quantity(E, ENERGY).value
    if energy <= 0:
        raise DomainError(f"energy must be positive, got {energy}")
    log_rg = (
        math.log(8) + log_gamma(n / 2) + math.log(energy)
        - math.log(n - 1) - (n / 2 - 1) * math.log(math.pi)
    ) / (n - 2)
    return Quantity(value=math.exp(log_rg), dimension=LENGTH)


def bousso_bound(s: SystemSpec) -> BoundResult:
    """S ≤ (n−1)π^{n/2} r_g^{n−2} R / (4Γ(n/2))"""
    n = s.n
    r_g = gravitational_radius(s.E, n).value
    log_nats = (
        math.log(n - 1) + (n / 2) * math.log(math.pi) + (n - 2) * math.log(r_g)
        + math.log(s.R.value) - math.log(4) - log_gamma(n / 2)
    )
    # r_g^{n−2}R отнесено к l_P^{n−1}; в Планковских единицах множитель равен 1
    planck_length = (constant("hbar") * constant("G") / constant("c") ** 3) ** 0.5
    per_length = _entropy_value(Quantity(value=1.0, dimension=LENGTH) / planck_length)
    warnings = [] if n == 3 else [PLANCK_UNITS_ONLY]
    return _result("bousso", math.exp(log_nats) * per_length ** (n - 1), warnings=warnings)


def verlinde_bound(v: VerlindeInput) -> BoundResult:
    """S ≤ (2πR/nℏ)[E_C(2E − E_C)]^{1/2}"""
    E, E_C = v.E.value, v.E_C.value
    bracket = max(E_C * (2 * E - E_C), 0.0)
    hbar, c = constant("hbar"), constant("c")
    casimir_term = Quantity(value=math.sqrt(bracket), dimension=ENERGY)
    nats = _entropy_value(2 * math.pi * v.R * casimir_term / (v.n * hbar * c))
    warnings = [] if v.n == 3 else [PLANCK_UNITS_ONLY]
    return _result("verlinde", nats, warnings=warnings)


def verlinde_max(E: Union[Quantity, float], R: Union[Quantity, float], n: int = 3) -> BoundResult:
    """Максимум по E_C: 2πRE/n"""
    s = SystemSpec(E=E, R=R, n=n)
    hbar, c = constant("hbar"), constant("c")
    nats = _entropy_value(2 * math.pi * s.R * s.E / (n * hbar * c))
    return _result("verlinde_max", nats)


def kerr_newman_check(k: KerrNewmanSpec) -> KerrNewmanCheck:
    """Сравнение S_BH = π(r₊² + a²) с 2πMr₊"""
    M, a = k.M.value, k.a.value
    r_plus = k.horizon_radius
    entropy = math.pi * (r_plus ** 2 + a ** 2)
    bound = 2 * math.pi * M * r_plus
    saturated = abs(entropy - bound) <= SATURATION_TOL * bound
    if not saturated:
        logger.info(f"Керр-Ньюман: S_BH = {entropy:.6g} < 2πMr₊ = {bound:.6g}")
    return KerrNewmanCheck(entropy=entropy, bound=bound, horizon_radius=r_plus,
                           saturated=saturated)


def tightest_bound(s: SystemSpec) -> BoundComparison:
    """Сравнение универсальной и голографической границ"""
    universal = universal_bound(s)
    if s.n != 3:
        return BoundComparison(
            universal=universal,
            note="for D > 4 the holographic bound is tighter for strongly gravitating "
                 "systems; the universal bound stays tighter for weakly gravitating ones",
        )
    holographic = holographic_bound(radius=s.R)
    ratio = holographic.nats / universal.nats
    if abs(ratio - 1.0) <= SATURATION_TOL:
        tighter = "equal"
    elif ratio > 1.0:
        tighter = "universal"
    else:
        tighter = "holographic"
    return BoundComparison(universal=universal, holographic=holographic,
                           ratio=ratio, tighter=tighter)


def typical_compactness(kind: str) -> float:
    """Типичное E/R для лабораторных и астрономических систем"""
    try:
        return TYPICAL_COMPACTNESS[kind]
    except KeyError:
        raise DomainError(f"unknown system kind '{kind}', known: {', '.join(TYPICAL_COMPACTNESS)}")
