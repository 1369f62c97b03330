"""
Ёмкость одного канала и излучение чёрного тела.

Токи энергии и энтропии считаются квадратурой после подстановки x = ε/T
(переменная "energy") либо по импульсу с групповой скоростью υ(p) = dε/dp
(переменная "momentum"). Замкнутые формы лежат рядом для сверки.
"""
import logging
import math
from enum import Enum
from typing import Callable, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from scipy.optimize import brentq
from scipy.special import zeta

from config import DEFAULT_REL_TOL, DISPERSION_SAMPLES
from errors import DomainError
from numerics import QuadratureResult, integrate_semi_infinite, log_gamma
from units import (
    ENERGY, LENGTH, LOG2E, POWER, RATE, TEMPERATURE, TIME, Quantity, planck_quantity,
)

logger = logging.getLogger(__name__)

Variable = Literal["energy", "momentum"]
NUMERICAL_VELOCITY_TOL = 1e-8


class Statistics(str, Enum):
    BOSON = "boson"
    FERMION = "fermion"


# ==================== ЯДРА ====================

def _bose_energy(x: np.ndarray) -> np.ndarray:
    """x / (eˣ − 1)"""
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        return np.where(x > 700, 0.0, x / np.expm1(np.minimum(x, 700)))


def _fermi_energy(x: np.ndarray) -> np.ndarray:
    """x / (eˣ + 1)"""
    e = np.exp(-x)
    return x * e / (1.0 + e)


def _bose_entropy(x: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return _bose_energy(x) - np.log(-np.expm1(-x))


def _fermi_entropy(x: np.ndarray) -> np.ndarray:
    return _fermi_energy(x) + np.log1p(np.exp(-x))


def _energy_kernel(statistics: Statistics) -> Callable:
    return _bose_energy if Statistics(statistics) is Statistics.BOSON else _fermi_energy


def _entropy_kernel(statistics: Statistics) -> Callable:
    return _bose_entropy if Statistics(statistics) is Statistics.BOSON else _fermi_entropy


def _fermion_factor(statistics: Statistics, n: int) -> float:
    # отношение η(n+1)/ζ(n+1): 1/2 при n = 1, 3/4 при n = 2, 7/8 при n = 3
    return 1.0 if Statistics(statistics) is Statistics.BOSON else 1.0 - 2.0 ** (-n)


# ==================== МОДЕЛИ ДАННЫХ ====================

class Dispersion(BaseModel):
    """Монотонная зависимость ε(p) на [0, ∞) с ε(0) = 0"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    energy: Callable[[np.ndarray], np.ndarray]
    velocity: Optional[Callable[[np.ndarray], np.ndarray]] = None
    description: str = "custom"

    @model_validator(mode="after")
    def _monotone(self) -> "Dispersion":
        p = np.concatenate([[0.0], np.logspace(-6, 6, DISPERSION_SAMPLES - 1)])
        eps = np.asarray(self.energy(p), dtype=float)
        if eps[0] != 0.0:
            raise ValueError(f"dispersion must vanish at p = 0, got {eps[0]}")
        if not np.isfinite(eps).all() or (np.diff(eps) <= 0).any():
            raise ValueError(f"dispersion '{self.description}' is not strictly increasing")
        return self

    def group_velocity(self, p: np.ndarray) -> np.ndarray:
        """υ(p) = dε/dp, аналитически или центральной разностью"""
        if self.velocity is not None:
            return np.asarray(self.velocity(p), dtype=float)
        h = 1e-6 * np.maximum(p, 1e-300)
        return (self.energy(p + h) - self.energy(p - h)) / (2 * h)

    def momentum_at(self, energy: float) -> float:
        """Обращение ε(p) = energy"""
        if energy <= 0:
            raise DomainError(f"energy must be positive, got {energy}")
        high = 1.0
        while float(self.energy(np.array([high]))[0]) < energy:
            high *= 2.0
            if high > 1e300:
                raise DomainError(f"dispersion '{self.description}' never reaches {energy}")
        return brentq(lambda p: float(self.energy(np.array([p]))[0]) - energy,
                      0.0, high, xtol=1e-300, rtol=4 * np.finfo(float).eps)

    @classmethod
    def linear(cls, speed: float = 1.0) -> "Dispersion":
        if speed <= 0:
            raise DomainError(f"speed must be positive, got {speed}")
        return cls(energy=lambda p: speed * np.asarray(p, dtype=float),
                   velocity=lambda p: np.full_like(np.asarray(p, dtype=float), speed),
                   description=f"linear(c_s={speed:g})")

    @classmethod
    def power_law(cls, exponent: float, scale: float = 1.0) -> "Dispersion":
        """ε = scale·p^exponent"""
        if exponent <= 0 or scale <= 0:
            raise DomainError("exponent and scale must be positive")
        return cls(energy=lambda p: scale * np.asarray(p, dtype=float) ** exponent,
                   velocity=lambda p: scale * exponent * np.asarray(p, dtype=float) ** (exponent - 1),
                   description=f"power_law({scale:g}·p^{exponent:g})")


class ChannelSpec(BaseModel):
    statistics: Statistics = Statistics.BOSON
    dispersion: Dispersion = Dispersion.linear()


class PulseSpec(BaseModel):
    """Импульс с энергией E и длительностью τ в одной локальной системе отсчёта"""
    E: Quantity
    tau: Quantity

    @field_validator("E", mode="before")
    @classmethod
    def _energy(cls, v) -> Quantity:
        return planck_quantity(v, ENERGY)

    @field_validator("tau", mode="before")
    @classmethod
    def _duration(cls, v) -> Quantity:
        return planck_quantity(v, TIME)

    @model_validator(mode="after")
    def _positive(self) -> "PulseSpec":
        if self.E.value <= 0 or self.tau.value <= 0:
            raise ValueError("pulse energy and duration must be positive")
        return self

    @property
    def xi(self) -> float:
        """ξ = Eτ/ℏ"""
        return self.E.value * self.tau.value

    @property
    def varpi(self) -> float:
        """ϖ = GE/(c⁵τ); в границы не входит"""
        return self.E.value / self.tau.value


class EmitterSpec(BaseModel):
    """Излучатель: при n = 3 задаётся площадь A, при n = 2 длина L, n = 1 это один канал"""
    n: int = 3
    measure: float
    temperature: Quantity

    @field_validator("temperature", mode="before")
    @classmethod
    def _temperature(cls, v) -> Quantity:
        return planck_quantity(v, TEMPERATURE)

    @model_validator(mode="after")
    def _valid(self) -> "EmitterSpec":
        if self.n not in (1, 2, 3):
            raise ValueError(f"unsupported spatial dimension {self.n}")
        if self.measure <= 0 or self.temperature.value <= 0:
            raise ValueError("measure and temperature must be positive")
        return self


class PendryRate(BaseModel):
    entropy_rate: Quantity
    info_rate: Quantity


class BlackbodyEmission(BaseModel):
    power: Quantity
    entropy_rate: Quantity
    entropy_rate_from_power: Quantity


class PulseBound(BaseModel):
    linear: float
    steady: float
    envelope: float


# ==================== МОДЫ И ТОКИ ====================

def mode_entropy(epsilon: Union[Quantity, float], T: Union[Quantity, float],
                 statistics: Statistics = Statistics.BOSON) -> float:
    """Энтропия одной моды с энергией ε при температуре T"""
    eps = planck_quantity(epsilon, ENERGY).value
    temp = planck_quantity(T, TEMPERATURE).value
    if temp <= 0:
        raise DomainError(f"temperature must be positive, got {temp}")
    if eps < 0:
        raise DomainError(f"mode energy must be nonnegative, got {eps}")
    if eps == 0 and Statistics(statistics) is Statistics.BOSON:
        raise DomainError("boson mode entropy diverges at zero energy")
    x = np.array([eps / temp])
    return float(_entropy_kernel(statistics)(x)[0])


def _temperature(T: Union[Quantity, float]) -> float:
    temp = planck_quantity(T, TEMPERATURE).value
    if temp <= 0:
        raise DomainError(f"temperature must be positive, got {temp}")
    return temp


def _momentum_integral(c: ChannelSpec, T: float, kernel: Callable,
                       rel_tol: float) -> QuadratureResult:
    """∫ kernel(ε(p)/T)·υ(p) dp по безразмерному u = p/p_T, где ε(p_T) = T"""
    p_T = c.dispersion.momentum_at(T)
    if c.dispersion.velocity is None:
        # шум центральной разности ~1e-10 не даёт сойтись точнее
        rel_tol = max(rel_tol, NUMERICAL_VELOCITY_TOL)

    def integrand(u: np.ndarray) -> np.ndarray:
        p = p_T * u
        x = c.dispersion.energy(p) / T
        return kernel(x) * c.dispersion.group_velocity(p) * p_T

    return integrate_semi_infinite(integrand, rel_tol)


def power_quadrature(c: ChannelSpec, T: Union[Quantity, float], variable: Variable = "energy",
                     rel_tol: float = DEFAULT_REL_TOL) -> QuadratureResult:
    """Интеграл односторонней мощности без множителя 1/2π"""
    temp = _temperature(T)
    kernel = _energy_kernel(c.statistics)
    if variable == "energy":
        result = integrate_semi_infinite(kernel, rel_tol)
        scale = temp * temp
    elif variable == "momentum":
        # ε/(e^{ε/T} ∓ 1) = T·kernel(ε/T)
        result = _momentum_integral(c, temp, kernel, rel_tol)
        scale = temp
    else:
        raise DomainError(f"unknown integration variable '{variable}'")
    return result.model_copy(update={
        "value": result.value * scale, "error_estimate": result.error_estimate * scale,
    })


def entropy_quadrature(c: ChannelSpec, T: Union[Quantity, float], variable: Variable = "energy",
                       rel_tol: float = DEFAULT_REL_TOL) -> QuadratureResult:
    temp = _temperature(T)
    kernel = _entropy_kernel(c.statistics)
    if variable == "energy":
        result = integrate_semi_infinite(kernel, rel_tol)
        scale = temp
    elif variable == "momentum":
        result = _momentum_integral(c, temp, kernel, rel_tol)
        scale = 1.0
    else:
        raise DomainError(f"unknown integration variable '{variable}'")
    return result.model_copy(update={
        "value": result.value * scale, "error_estimate": result.error_estimate * scale,
    })


def one_way_power(c: ChannelSpec, T: Union[Quantity, float], variable: Variable = "energy",
                  rel_tol: float = DEFAULT_REL_TOL) -> Quantity:
    """P = ∫ ε/(e^{ε/T} ∓ 1)·υ dp/2π"""
    result = power_quadrature(c, T, variable, rel_tol)
    logger.debug(f"P({c.dispersion.description}, {c.statistics.value}) = {result.value / (2 * math.pi):.15g}")
    return Quantity(value=result.value / (2 * math.pi), dimension=POWER)


def one_way_entropy_rate(c: ChannelSpec, T: Union[Quantity, float], variable: Variable = "energy",
                         rel_tol: float = DEFAULT_REL_TOL) -> Quantity:
    """Ṡ = ∫ s(p)·υ dp/2π"""
    result = entropy_quadrature(c, T, variable, rel_tol)
    return Quantity(value=result.value / (2 * math.pi), dimension=RATE)


def closed_form_power(T: Union[Quantity, float], statistics: Statistics = Statistics.BOSON) -> Quantity:
    """πT²/12 для бозонов, вдвое меньше для фермионов"""
    temp = _temperature(T)
    return Quantity(value=math.pi * temp * temp / 12 * _fermion_factor(statistics, 1),
                    dimension=POWER)


def closed_form_entropy_rate(T: Union[Quantity, float],
                             statistics: Statistics = Statistics.BOSON) -> Quantity:
    """Ṡ = 2P/T"""
    temp = _temperature(T)
    return Quantity(value=2 * closed_form_power(temp, statistics).value / temp, dimension=RATE)


def pendry_rate(P: Union[Quantity, float], statistics: Statistics = Statistics.BOSON) -> PendryRate:
    """Ṡ = (πP/3ℏ)^{1/2}; для фермионов меньше в √2 раз"""
    power = planck_quantity(P, POWER).value
    if power <= 0:
        raise DomainError(f"power must be positive, got {power}")
    rate = math.sqrt(math.pi * power / 3)
    if Statistics(statistics) is Statistics.FERMION:
        rate /= math.sqrt(2)
    return PendryRate(entropy_rate=Quantity(value=rate, dimension=RATE),
                      info_rate=Quantity(value=rate * LOG2E, dimension=RATE))


# ==================== ЧЁРНОЕ ТЕЛО ====================

def _flux_coefficient(n: int, statistics: Statistics) -> float:
    """σ_n: P = σ_n·measure·T^{n+1} для одной поляризации"""
    solid_angle = 2 * math.pi ** (n / 2) / math.exp(log_gamma(n / 2))
    spectrum = math.exp(log_gamma(n + 1)) * float(zeta(n + 1))
    projection = math.exp(log_gamma(n / 2) - log_gamma((n + 1) / 2)) / (2 * math.sqrt(math.pi))
    return solid_angle / (2 * math.pi) ** n * spectrum * projection * _fermion_factor(statistics, n)


def surface_entropy_rate(P: Union[Quantity, float], n: int, measure: float,
                         statistics: Statistics = Statistics.BOSON) -> Quantity:
    """Ṡ(P) после исключения T: (n+1)/n·P^{n/(n+1)}·(σ_n·measure)^{1/(n+1)}"""
    power = planck_quantity(P, POWER).value
    if power <= 0 or measure <= 0:
        raise DomainError("power and measure must be positive")
    if n not in (1, 2, 3):
        raise DomainError(f"unsupported spatial dimension {n}")
    sigma = _flux_coefficient(n, statistics) * measure
    rate = (n + 1) / n * power ** (n / (n + 1)) * sigma ** (1 / (n + 1))
    return Quantity(value=rate, dimension=RATE)


def blackbody_rate(e: EmitterSpec, statistics: Statistics = Statistics.BOSON) -> BlackbodyEmission:
    """Мощность и поток энтропии одной поляризации с поверхности температуры T"""
    T = e.temperature.value
    power = _flux_coefficient(e.n, statistics) * e.measure * T ** (e.n + 1)
    entropy_rate = (e.n + 1) / e.n * power / T
    return BlackbodyEmission(
        power=Quantity(value=power, dimension=POWER),
        entropy_rate=Quantity(value=entropy_rate, dimension=RATE),
        entropy_rate_from_power=surface_entropy_rate(power, e.n, e.measure, statistics),
    )


def blackbody_coefficient_by_quadrature(n: int, statistics: Statistics = Statistics.BOSON,
                                        rel_tol: float = DEFAULT_REL_TOL) -> float:
    """Коэффициент при P/T как ∫xⁿ⁻¹s(x)dx / ∫xⁿ/(eˣ ∓ 1)dx; ожидается (n+1)/n"""
    if n < 1:
        raise DomainError(f"spatial dimension must be >= 1, got {n}")
    entropy_kernel = _entropy_kernel(statistics)
    energy_kernel = _energy_kernel(statistics)
    entropy = integrate_semi_infinite(lambda x: x ** (n - 1) * entropy_kernel(x), rel_tol)
    energy = integrate_semi_infinite(lambda x: x ** (n - 1) * energy_kernel(x), rel_tol)
    return entropy.value / energy.value


# ==================== ИМПУЛЬСЫ ====================

def pulse_info_bound(p: PulseSpec) -> PulseBound:
    """Линейная граница, стационарная (Пендри за время τ) и их минимум, в битах"""
    xi = p.xi
    if xi <= 0:
        raise DomainError(f"xi must be positive, got {xi}")
    linear = math.pi * xi * LOG2E
    steady = math.sqrt(math.pi * xi / 3) * LOG2E
    return PulseBound(linear=linear, steady=steady, envelope=min(linear, steady))


PULSE_CROSSOVER = 1 / (3 * math.pi)


def redshift_transform(p: PulseSpec, alpha: float) -> PulseSpec:
    """Красное смещение энергии и замедление длительности: Eτ сохраняется"""
    if not alpha > 0:
        raise DomainError(f"redshift ratio must be positive, got {alpha}")
    return PulseSpec(E=p.E * alpha, tau=p.tau / alpha)


def structure_info_bound(E: Union[Quantity, float], R: Union[Quantity, float]) -> float:
    """Информация в материальной структуре: 2πER·log₂e бит"""
    energy = planck_quantity(E, ENERGY).value
    radius = planck_quantity(R, LENGTH).value
    if energy <= 0 or radius <= 0:
        raise DomainError("E and R must be positive")
    return 2 * math.pi * energy * radius * LOG2E


def linear_reception_rate(E_rec: Union[Quantity, float]) -> Quantity:
    """İ_rec < πE_rec·log₂e / ℏ"""
    energy = planck_quantity(E_rec, ENERGY).value
    if energy <= 0:
        raise DomainError(f"energy must be positive, got {energy}")
    return Quantity(value=math.pi * energy * LOG2E, dimension=RATE)
