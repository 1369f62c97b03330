"""
Физические величины и переводы между системами единиц.

Внутреннее представление: Планковские единицы (G = c = ℏ = k_B = 1).
Размерность хранится как кортеж показателей по (длина, время, масса, температура).
Константы из CODATA 2018.
"""
import logging
import math
import re
from enum import Enum
from typing import Dict, Tuple, Union

from pydantic import BaseModel, ConfigDict, field_validator

import config  # noqa: F401  (настройка логирования)
from errors import UnitError

logger = logging.getLogger(__name__)

Dimension = Tuple[float, float, float, float]

# ==================== РАЗМЕРНОСТИ ====================

DIMENSIONLESS: Dimension = (0.0, 0.0, 0.0, 0.0)
LENGTH: Dimension = (1.0, 0.0, 0.0, 0.0)
TIME: Dimension = (0.0, 1.0, 0.0, 0.0)
MASS: Dimension = (0.0, 0.0, 1.0, 0.0)
TEMPERATURE: Dimension = (0.0, 0.0, 0.0, 1.0)
AREA: Dimension = (2.0, 0.0, 0.0, 0.0)
ENERGY: Dimension = (2.0, -2.0, 1.0, 0.0)
POWER: Dimension = (2.0, -3.0, 1.0, 0.0)
RATE: Dimension = (0.0, -1.0, 0.0, 0.0)
FLUX: Dimension = (0.0, -3.0, 1.0, 0.0)
WAVENUMBER: Dimension = (-1.0, 0.0, 0.0, 0.0)
ACTION: Dimension = (2.0, -1.0, 1.0, 0.0)
VELOCITY: Dimension = (1.0, -1.0, 0.0, 0.0)
NEWTON_G: Dimension = (3.0, -2.0, -1.0, 0.0)
BOLTZMANN: Dimension = (2.0, -2.0, 1.0, -1.0)

DIMENSIONS: Dict[str, Dimension] = {
    "dimensionless": DIMENSIONLESS,
    "length": LENGTH,
    "time": TIME,
    "mass": MASS,
    "temperature": TEMPERATURE,
    "area": AREA,
    "energy": ENERGY,
    "power": POWER,
    "rate": RATE,
    "flux": FLUX,
    "wavenumber": WAVENUMBER,
}


class UnitSystem(str, Enum):
    SI = "si"
    GEOMETRIZED = "geo"
    PLANCK = "planck"


# ==================== КОНСТАНТЫ CODATA 2018 ====================

CODATA_VERSION = "CODATA 2018"

HBAR_SI = 1.054571817e-34       # J s
G_SI = 6.67430e-11              # m^3 kg^-1 s^-2
C_SI = 299792458.0              # m s^-1
K_B_SI = 1.380649e-23           # J K^-1
SOLAR_MASS_SI = 1.98847e30      # kg

PLANCK_LENGTH = math.sqrt(HBAR_SI * G_SI / C_SI**3)
PLANCK_TIME = math.sqrt(HBAR_SI * G_SI / C_SI**5)
PLANCK_MASS = math.sqrt(HBAR_SI * C_SI / G_SI)
PLANCK_TEMPERATURE = PLANCK_MASS * C_SI**2 / K_B_SI

LOG2E = 1.0 / math.log(2.0)

_PLANCK_SCALES = (PLANCK_LENGTH, PLANCK_TIME, PLANCK_MASS, PLANCK_TEMPERATURE)


class Quantity(BaseModel):
    """Величина в Планковских единицах с показателями размерности"""
    model_config = ConfigDict(frozen=True)

    value: float
    dimension: Dimension = DIMENSIONLESS

    @field_validator("value")
    @classmethod
    def _finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError(f"non-finite value: {v}")
        return v

    @field_validator("dimension")
    @classmethod
    def _half_integers(cls, dim: Dimension) -> Dimension:
        for exponent in dim:
            if abs(exponent * 2 - round(exponent * 2)) > 1e-12 or abs(exponent) > 12:
                raise ValueError(f"unsupported dimension exponent: {exponent}")
        return tuple(float(e) for e in dim)

    def is_dimensionless(self) -> bool:
        return self.dimension == DIMENSIONLESS

    def _check_same(self, other: "Quantity", op: str) -> None:
        if self.dimension != other.dimension:
            raise UnitError(f"cannot {op} {self.dimension} and {other.dimension}")

    def __add__(self, other: "Quantity") -> "Quantity":
        other = _as_quantity(other)
        self._check_same(other, "add")
        return Quantity(value=self.value + other.value, dimension=self.dimension)

    def __sub__(self, other: "Quantity") -> "Quantity":
        other = _as_quantity(other)
        self._check_same(other, "subtract")
        return Quantity(value=self.value - other.value, dimension=self.dimension)

    def __neg__(self) -> "Quantity":
        return Quantity(value=-self.value, dimension=self.dimension)

    def __mul__(self, other: Union["Quantity", float]) -> "Quantity":
        other = _as_quantity(other)
        dim = tuple(a + b for a, b in zip(self.dimension, other.dimension))
        return Quantity(value=self.value * other.value, dimension=dim)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["Quantity", float]) -> "Quantity":
        other = _as_quantity(other)
        if other.value == 0:
            raise UnitError("division by zero quantity")
        dim = tuple(a - b for a, b in zip(self.dimension, other.dimension))
        return Quantity(value=self.value / other.value, dimension=dim)

    def __rtruediv__(self, other: float) -> "Quantity":
        return _as_quantity(other) / self

    def __pow__(self, power: float) -> "Quantity":
        dim = tuple(a * power for a in self.dimension)
        return Quantity(value=self.value ** power, dimension=dim)

    def __lt__(self, other: "Quantity") -> bool:
        other = _as_quantity(other)
        self._check_same(other, "compare")
        return self.value < other.value

    def __le__(self, other: "Quantity") -> bool:
        other = _as_quantity(other)
        self._check_same(other, "compare")
        return self.value <= other.value

    def __float__(self) -> float:
        return self.value


def _as_quantity(x: Union[Quantity, float]) -> Quantity:
    if isinstance(x, Quantity):
        return x
    return Quantity(value=float(x))


def _si_factor(dimension: Dimension) -> float:
    return math.prod(scale ** e for scale, e in zip(_PLANCK_SCALES, dimension))


def _geometrized_factor(dimension: Dimension) -> float:
    # при G = c = k_B = 1 все размерности сводятся к степени длины
    return PLANCK_LENGTH ** sum(dimension)


def _factor(dimension: Dimension, system: UnitSystem) -> float:
    system = UnitSystem(system)
    if system is UnitSystem.PLANCK:
        return 1.0
    if system is UnitSystem.SI:
        return _si_factor(dimension)
    return _geometrized_factor(dimension)


def to_internal(value: float, dimension: Dimension, system: UnitSystem) -> Quantity:
    """Перевод числа из внешней системы в Планковские единицы"""
    value = float(value)
    if not math.isfinite(value):
        raise UnitError(f"non-finite input value: {value}")
    try:
        factor = _factor(dimension, system)
    except ValueError as e:
        raise UnitError(f"unknown unit system: {system}") from e
    return Quantity(value=value / factor, dimension=dimension)


def from_internal(q: Quantity, system: UnitSystem) -> float:
    """Обратный перевод: Планковские единицы -> внешняя система.

    В геометризованной системе длина измеряется в метрах, поэтому масса 2 (Планковские)
    выводится как 2·l_P м, а не как 2. Масса и длина с равными внутренними значениями
    при этом совпадают.
    """
    try:
        factor = _factor(q.dimension, system)
    except ValueError as e:
        raise UnitError(f"unknown unit system: {system}") from e
    result = q.value * factor
    if not math.isfinite(result) or (q.value != 0 and result == 0):
        raise UnitError(f"{q.dimension} not representable in {system}")
    return result


def planck_quantity(x: Union[Quantity, float, int], dimension: Dimension) -> Quantity:
    """Приведение числа или величины к Quantity заданной размерности"""
    if isinstance(x, Quantity):
        if x.dimension != tuple(float(e) for e in dimension):
            raise UnitError(f"expected dimension {dimension}, got {x.dimension}")
        return x
    return Quantity(value=float(x), dimension=dimension)


# ==================== ТАБЛИЦА КОНСТАНТ ====================

_CONSTANTS: Dict[str, Quantity] = {
    "hbar": Quantity(value=1.0, dimension=ACTION),
    "G": Quantity(value=1.0, dimension=NEWTON_G),
    "c": Quantity(value=1.0, dimension=VELOCITY),
    "k_B": Quantity(value=1.0, dimension=BOLTZMANN),
    "log2e": Quantity(value=LOG2E),
    "planck_length": Quantity(value=1.0, dimension=LENGTH),
    "planck_time": Quantity(value=1.0, dimension=TIME),
    "planck_mass": Quantity(value=1.0, dimension=MASS),
    "planck_temperature": Quantity(value=1.0, dimension=TEMPERATURE),
    "solar_mass": Quantity(value=SOLAR_MASS_SI / PLANCK_MASS, dimension=MASS),
}


def constant(name: str) -> Quantity:
    """Константа из фиксированной таблицы"""
    try:
        return _CONSTANTS[name]
    except KeyError:
        raise UnitError(f"unknown constant '{name}', known: {', '.join(sorted(_CONSTANTS))}")


# ==================== ПОДПИСИ И ЛИТЕРАЛЫ ====================

_SI_LABELS: Dict[Dimension, str] = {
    DIMENSIONLESS: "1",
    LENGTH: "m",
    TIME: "s",
    MASS: "kg",
    TEMPERATURE: "K",
    AREA: "m^2",
    ENERGY: "J",
    POWER: "W",
    RATE: "1/s",
    FLUX: "W/m^2",
    WAVENUMBER: "1/m",
}


def _format_exponent(e: float) -> str:
    return str(int(e)) if float(e).is_integer() else str(e)


def unit_label(dimension: Dimension, system: UnitSystem) -> str:
    system = UnitSystem(system)
    dimension = tuple(float(e) for e in dimension)
    if dimension == DIMENSIONLESS:
        return "1"
    if system is UnitSystem.PLANCK:
        return "planck"
    if system is UnitSystem.GEOMETRIZED:
        total = sum(dimension)
        if total == 0:
            return "1"
        return "m" if total == 1 else f"m^{_format_exponent(total)}"
    if dimension in _SI_LABELS:
        return _SI_LABELS[dimension]
    parts = [
        f"{symbol}^{_format_exponent(e)}"
        for symbol, e in zip(("m", "s", "kg", "K"), dimension) if e != 0
    ]
    return " ".join(parts)


_SUFFIXES: Dict[str, Tuple[float, Dimension]] = {
    "m": (1.0, LENGTH),
    "cm": (1e-2, LENGTH),
    "km": (1e3, LENGTH),
    "kg": (1.0, MASS),
    "g": (1e-3, MASS),
    "s": (1.0, TIME),
    "J": (1.0, ENERGY),
    "W": (1.0, POWER),
    "K": (1.0, TEMPERATURE),
    "solar-mass": (SOLAR_MASS_SI, MASS),
}

_LITERAL = re.compile(
    r'^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([A-Za-z][A-Za-z-]*)?\s*$'
)


def parse_literal(text: str, dimension: Dimension, system: UnitSystem) -> Quantity:
    """Разбор литерала вида '1cm', '2.5e30kg', '1solar-mass' или голого числа"""
    match = _LITERAL.match(text)
    if not match:
        raise UnitError(f"cannot parse quantity '{text}'")
    number, suffix = float(match.group(1)), match.group(2)
    if suffix is None:
        return to_internal(number, dimension, system)
    if suffix not in _SUFFIXES:
        raise UnitError(f"unknown unit suffix '{suffix}', known: {', '.join(_SUFFIXES)}")
    scale, suffix_dim = _SUFFIXES[suffix]
    # при G = c = k_B = 1 масса, длина, время, энергия и температура взаимозаменяемы
    if sum(suffix_dim) != sum(dimension):
        raise UnitError(f"suffix '{suffix}' does not fit dimension {dimension}")
    q = to_internal(number * scale, suffix_dim, UnitSystem.SI)
    if suffix_dim != tuple(float(e) for e in dimension):
        logger.info(f"Литерал '{text}' приведён к размерности {dimension}")
    return Quantity(value=q.value, dimension=dimension)
