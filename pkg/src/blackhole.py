"""
Излучение шварцшильдовской чёрной дыры: температура Хокинга, поток,
мощность и поток энтропии по сортам частиц, подсчёт каналов и сброс информации.
"""
import logging
import math
from typing import Dict, Optional, Union

from pydantic import BaseModel, field_validator, model_validator

from bounds import BoundResult, holographic_bound
from channel import Statistics, pendry_rate
from config import CHANNEL_DISTANCE_FACTOR, DEFAULT_NU, NU_ENVELOPE, NU_RANGE
from errors import DomainError
from units import (
    AREA, FLUX, LENGTH, LOG2E, MASS, POWER, RATE, TEMPERATURE, WAVENUMBER, Quantity,
    planck_quantity,
)

logger = logging.getLogger(__name__)

FERMION_POWER_FACTOR = 7 / 8
NEUTRINO_WEIGHT = 7 / 16


# ==================== МОДЕЛИ ДАННЫХ ====================

class BlackHole(BaseModel):
    M: Quantity

    @field_validator("M", mode="before")
    @classmethod
    def _mass(cls, v) -> Quantity:
        q = planck_quantity(v, MASS)
        if q.value <= 0:
            raise ValueError(f"black hole mass must be positive, got {q.value}")
        return q

    @property
    def horizon_radius(self) -> float:
        return 2 * self.M.value

    @property
    def area(self) -> float:
        return 4 * math.pi * self.horizon_radius ** 2


class SpeciesEmission(BaseModel):
    """Сорт излучаемых частиц: ν (избыток энтропии) и Γ̄ (поправка к мощности)"""
    name: str
    statistics: Statistics
    nu: float
    gamma_bar: float
    n_weight: float

    @model_validator(mode="after")
    def _ranges(self) -> "SpeciesEmission":
        if not NU_RANGE[0] <= self.nu <= NU_RANGE[1]:
            raise ValueError(f"nu must lie in {list(NU_RANGE)}, got {self.nu}")
        if self.gamma_bar <= 0 or self.n_weight <= 0:
            raise ValueError("gamma_bar and n_weight must be positive")
        return self

    @property
    def power_factor(self) -> float:
        return FERMION_POWER_FACTOR if self.statistics is Statistics.FERMION else 1.0


SPECIES: Dict[str, SpeciesEmission] = {
    "photon": SpeciesEmission(name="photon", statistics=Statistics.BOSON,
                              nu=1.5003, gamma_bar=1.6267, n_weight=1.0),
    "neutrino": SpeciesEmission(name="neutrino", statistics=Statistics.FERMION,
                                nu=1.6391, gamma_bar=18.045, n_weight=NEUTRINO_WEIGHT),
}

# отношения коэффициентов в том виде, в каком они процитированы; прямой расчёт их не воспроизводит
QUOTED_COEFFICIENT_RATIOS: Dict[str, float] = {"photon": 15.1, "neutrino": 48.1}


def species(name: str) -> SpeciesEmission:
    try:
        return SPECIES[name]
    except KeyError:
        raise DomainError(f"unknown species '{name}', known: {', '.join(SPECIES)}")


def generic_species(statistics: Union[Statistics, str], gamma_bar: float,
                    nu: Optional[float] = None, name: str = "generic") -> SpeciesEmission:
    """Сорт без табличных значений; ν по умолчанию берётся из DEFAULT_NU"""
    statistics = Statistics(statistics)
    if nu is None:
        nu = DEFAULT_NU
        if not NU_ENVELOPE[0] <= nu <= NU_ENVELOPE[1]:
            raise DomainError(f"default nu must lie in {list(NU_ENVELOPE)}, got {nu}")
    elif not NU_ENVELOPE[0] <= nu <= NU_ENVELOPE[1]:
        logger.warning(f"ν = {nu:.4g} вне интервала {list(NU_ENVELOPE)} для известных сортов")
    weight = NEUTRINO_WEIGHT if statistics is Statistics.FERMION else 1.0
    try:
        return SpeciesEmission(name=name, statistics=statistics, nu=nu,
                               gamma_bar=gamma_bar, n_weight=weight)
    except ValueError as e:
        raise DomainError(str(e))


class ChannelCountSpec(BaseModel):
    """Площадь передатчика 𝒜, волновое число k и телесный угол ΔΩ"""
    area: Quantity
    k: Quantity
    solid_angle: float

    @field_validator("area", mode="before")
    @classmethod
    def _area(cls, v) -> Quantity:
        return planck_quantity(v, AREA)

    @field_validator("k", mode="before")
    @classmethod
    def _wavenumber(cls, v) -> Quantity:
        return planck_quantity(v, WAVENUMBER)

    @model_validator(mode="after")
    def _positive(self) -> "ChannelCountSpec":
        if self.area.value <= 0 or self.k.value <= 0 or self.solid_angle <= 0:
            raise ValueError("area, wave number and solid angle must be positive")
        if self.solid_angle > 4 * math.pi:
            raise ValueError(f"solid angle exceeds 4π: {self.solid_angle}")
        return self


# ==================== ТЕРМОДИНАМИКА ====================

def hawking_temperature(bh: BlackHole) -> Quantity:
    """T_H = 1/(8πM)"""
    return Quantity(value=1 / (8 * math.pi * bh.M.value), dimension=TEMPERATURE)


def bh_entropy(bh: BlackHole) -> BoundResult:
    """S = A/4 = 4πM²; горизонт насыщает голографическую границу"""
    area = Quantity(value=bh.area, dimension=AREA)
    result = holographic_bound(area=area, entropy=4 * math.pi * bh.M.value ** 2)
    return result.model_copy(update={"bound_name": "bh_entropy"})


def _positive(value: float, name: str) -> float:
    if not value > 0 or not math.isfinite(value):
        raise DomainError(f"{name} must be positive, got {value}")
    return value


def hawking_flux(r: Union[Quantity, float], bh: BlackHole, species_count: float) -> Quantity:
    """F(r) = 𝒩/(61440(πMr)²) в дальней зоне"""
    radius = planck_quantity(r, LENGTH).value
    _positive(species_count, "species count")
    if radius <= bh.horizon_radius:
        raise DomainError(f"r = {radius:.6g} must exceed the horizon radius {bh.horizon_radius:.6g}")
    M = bh.M.value
    return Quantity(value=species_count / (61440 * (math.pi * M * radius) ** 2), dimension=FLUX)


def luminosity(bh: BlackHole, species_count: float) -> Quantity:
    """L = 4πr²F = 𝒩/(15360πM²)"""
    _positive(species_count, "species count")
    return Quantity(value=species_count / (15360 * math.pi * bh.M.value ** 2), dimension=POWER)


def effective_species_count(photons: float = 1.0, neutrino_species: float = 0.0) -> float:
    """𝒩 с весами 1 для фотонов и 7/16 для каждого сорта нейтрино"""
    if photons < 0 or neutrino_species < 0:
        raise DomainError("species counts must be nonnegative")
    total = photons * SPECIES["photon"].n_weight + neutrino_species * SPECIES["neutrino"].n_weight
    return _positive(total, "effective species count")


def emission_power(bh: BlackHole, s: SpeciesEmission) -> Quantity:
    """P = Γ̄·π²T_H⁴A/120, для фермионов с множителем 7/8"""
    T = hawking_temperature(bh).value
    power = s.gamma_bar * s.power_factor * math.pi ** 2 * T ** 4 * bh.area / 120
    return Quantity(value=power, dimension=POWER)


def emission_entropy_rate(bh: BlackHole, s: SpeciesEmission) -> Quantity:
    """Ṡ = νP/T_H = 8πMνP"""
    power = emission_power(bh, s).value
    return Quantity(value=s.nu * power / hawking_temperature(bh).value, dimension=RATE)


def bh_rate_vs_power(P: Union[Quantity, float], s: SpeciesEmission) -> Quantity:
    """Ṡ(P) = (ν²Γ̄πP/480)^{1/2}; для фермионов 7/8 под корнем"""
    power = _positive(planck_quantity(P, POWER).value, "power")
    rate = math.sqrt(s.nu ** 2 * s.gamma_bar * s.power_factor * math.pi * power / 480)
    return Quantity(value=rate, dimension=RATE)


def rate_coefficient(s: SpeciesEmission) -> float:
    """Коэффициент при √P в Ṡ(P)"""
    return bh_rate_vs_power(1.0, s).value


def coefficient_ratio(s: SpeciesEmission) -> float:
    """Отношение коэффициента Ṡ(P) дыры к коэффициенту одного канала той же статистики"""
    channel = pendry_rate(1.0, s.statistics).entropy_rate.value
    ratio = rate_coefficient(s) / channel
    quoted = QUOTED_COEFFICIENT_RATIOS.get(s.name)
    if quoted is not None:
        logger.info(f"{s.name}: отношение коэффициентов {ratio:.4g}, процитировано {quoted}")
    return ratio


# ==================== КАНАЛЫ ====================

def is_scattering_dominated(k: Union[Quantity, float], bh: BlackHole) -> bool:
    """Волны с k < 2π/(2M) рассеиваются на кривизне"""
    wavenumber = planck_quantity(k, WAVENUMBER).value
    return wavenumber < 2 * math.pi / bh.horizon_radius


def channel_count(c: ChannelCountSpec, bh: Optional[BlackHole] = None) -> float:
    """𝒲 = (2π)⁻²𝒜k²ΔΩ"""
    if bh is not None and is_scattering_dominated(c.k, bh):
        logger.warning(f"k = {c.k.value:.4g} ниже порога 2π/(2M): рассеяние преобладает")
    return c.area.value * c.k.value ** 2 * c.solid_angle / (2 * math.pi) ** 2


def bh_channel_bound(bh: BlackHole, d: Union[Quantity, float],
                     area: Union[Quantity, float, None] = None) -> float:
    """Число каналов, видимых с расстояния d: k = π/M, ΔΩ = π(2M)²/d², 𝒜 ≤ 4πd²"""
    distance = planck_quantity(d, LENGTH).value
    M = bh.M.value
    if distance <= CHANNEL_DISTANCE_FACTOR * M:
        raise DomainError(f"d must exceed {CHANNEL_DISTANCE_FACTOR:g}M, got d/M = {distance / M:.4g}")
    sphere = 4 * math.pi * distance ** 2
    transmitter = sphere if area is None else planck_quantity(area, AREA).value
    if not 0 < transmitter <= sphere * (1 + 1e-12):
        raise DomainError(f"transmitter area must lie in (0, 4πd²], got {transmitter:.6g}")
    spec = ChannelCountSpec(
        area=min(transmitter, sphere),
        k=2 * math.pi / bh.horizon_radius,
        solid_angle=math.pi * bh.horizon_radius ** 2 / distance ** 2,
    )
    return channel_count(spec)


def dump_rate(P: Union[Quantity, float], channels: float = 1.0) -> Quantity:
    """Предельная скорость сброса информации в битах: channels·√(πP/3)·log₂e"""
    if channels < 1:
        raise DomainError(f"channel count must be >= 1, got {channels}")
    return Quantity(value=channels * pendry_rate(P).info_rate.value, dimension=RATE)


def power_for_rate(info_rate: Union[Quantity, float], channels: float = 1.0) -> Quantity:
    """Обратное к dump_rate: P = (3/π)(İ/(channels·log₂e))²"""
    if channels < 1:
        raise DomainError(f"channel count must be >= 1, got {channels}")
    rate = _positive(planck_quantity(info_rate, RATE).value, "information rate")
    per_channel = rate / (channels * LOG2E)
    return Quantity(value=3 / math.pi * per_channel ** 2, dimension=POWER)


def mode_count_1d(L: Union[Quantity, float], dk: Union[Quantity, float]) -> float:
    """L·Δk/2π"""
    length = _positive(planck_quantity(L, LENGTH).value, "length")
    width = _positive(planck_quantity(dk, WAVENUMBER).value, "wave number interval")
    return length * width / (2 * math.pi)


def surface_mode_count(area: Union[Quantity, float], L: Union[Quantity, float],
                       k: Union[Quantity, float], dk: Union[Quantity, float],
                       solid_angle: float) -> float:
    """(2π)⁻³𝒜Lk²ΔΩΔk: моды в трубке длины L за поверхностью 𝒜"""
    spec = ChannelCountSpec(area=area, k=k, solid_angle=solid_angle)
    return channel_count(spec) * mode_count_1d(L, dk)
