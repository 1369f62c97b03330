"""
Сквозная проверка: каждая замкнутая формула сверяется с независимым расчётом
(квадратура, собственные значения, подстановка). Результат: список CheckResult.
"""
import logging
import math
from functools import partial
from typing import Callable, List, Tuple

import numpy as np
from pydantic import BaseModel

from blackhole import (
    QUOTED_COEFFICIENT_RATIOS, SPECIES, BlackHole, bh_channel_bound, bh_entropy,
    bh_rate_vs_power, coefficient_ratio, emission_entropy_rate, emission_power,
)
from bounds import (
    KerrNewmanSpec, SystemSpec, VerlindeInput, bousso_bound, gravitational_radius,
    holographic_bound, kerr_newman_check, universal_bound, verlinde_bound,
)
from channel import (
    ChannelSpec, Dispersion, PulseSpec, Statistics, one_way_entropy_rate, one_way_power,
    pendry_rate, pulse_info_bound, redshift_transform, surface_entropy_rate,
)
from gedanken import GedankenConfig, RADIATION_TIME_COEFFICIENT, audit
from numerics import eigvals_hermitian, fit_loglog_slope, logspace_points
from qinfo import (
    EntropyUnit, accessible_info_bound, mix_ensemble, naive_capacity, spin_half_ensemble,
    von_neumann_entropy,
)
from units import LENGTH, UnitSystem, parse_literal

logger = logging.getLogger(__name__)

_SEED = 20260101


class CheckResult(BaseModel):
    name: str
    expected: float
    computed: float
    rel_error: float
    tolerance: float
    passed: bool
    note: str = ""


def _check(name: str, expected: float, computed: float, tolerance: float,
           note: str = "") -> CheckResult:
    scale = abs(expected) if expected != 0 else 1.0
    rel_error = abs(computed - expected) / scale
    return CheckResult(name=name, expected=expected, computed=computed, rel_error=rel_error,
                       tolerance=tolerance, passed=rel_error <= tolerance, note=note)


def _range_check(name: str, low: float, high: float, computed: float, note: str = "") -> CheckResult:
    """Попадание в интервал; expected равно середине интервала в логарифмической шкале"""
    expected = math.sqrt(low * high)
    return CheckResult(name=name, expected=expected, computed=computed,
                       rel_error=abs(computed - expected) / expected,
                       tolerance=(high - low) / expected, passed=low <= computed <= high, note=note)


def _worst(pairs: List[Tuple[float, float]]) -> Tuple[float, float]:
    """Пара (ожидаемое, вычисленное) с наибольшим относительным расхождением"""
    return max(pairs, key=lambda p: abs(p[1] - p[0]) / abs(p[0]))


# ==================== ПРОВЕРКИ ====================

def _quadrature_closed_form() -> List[CheckResult]:
    photon = ChannelSpec()
    fermion = ChannelSpec(statistics=Statistics.FERMION)
    return [
        _check("power_quadrature_boson", math.pi / 12, one_way_power(photon, 1.0).value, 1e-9),
        _check("power_quadrature_fermion", math.pi / 24, one_way_power(fermion, 1.0).value, 1e-9),
    ]


def _dispersion_independence() -> List[CheckResult]:
    dispersions = [Dispersion.linear(), Dispersion.linear(1e-2), Dispersion.power_law(1.5)]
    pairs = []
    for T in (0.1, 1.0, 10.0):
        reference = one_way_entropy_rate(ChannelSpec(), T).value
        for d in dispersions:
            rate = one_way_entropy_rate(ChannelSpec(dispersion=d), T, variable="momentum").value
            pairs.append((reference, rate))
    expected, computed = _worst(pairs)
    return [_check("dispersion_independence", expected, computed, 1e-6)]


def _pendry_consistency() -> List[CheckResult]:
    photon = ChannelSpec()
    pairs = []
    for T in logspace_points(1e-2, 1e2, 20):
        power = one_way_power(photon, T)
        pairs.append((one_way_entropy_rate(photon, T).value, pendry_rate(power).entropy_rate.value))
    expected, computed = _worst(pairs)
    ratio = (pendry_rate(1.0, Statistics.FERMION).entropy_rate.value
             / pendry_rate(1.0, Statistics.BOSON).entropy_rate.value)
    return [
        _check("pendry_self_consistency", expected, computed, 1e-9),
        _check("pendry_fermion_ratio", 1 / math.sqrt(2), ratio, 1e-9),
    ]


def _spin_half() -> List[CheckResult]:
    ensemble = spin_half_ensemble()
    rho = mix_ensemble(ensemble)
    eigenvalues = eigvals_hermitian(rho.entries)
    return [
        _check("spin_half_eigenvalue_max", 0.5, float(eigenvalues[0]), 1e-12),
        _check("spin_half_eigenvalue_min", 0.5, float(eigenvalues[-1]), 1e-12),
        _check("spin_half_entropy", math.log(2), von_neumann_entropy(rho, EntropyUnit.NATS), 1e-12),
        _check("spin_half_naive_capacity", 2.0, naive_capacity(ensemble), 1e-12),
        _check("spin_half_holevo_cap", 1.0, accessible_info_bound(rho), 1e-12),
    ]


def _holographic_centimetre() -> List[CheckResult]:
    radius = parse_literal("1cm", LENGTH, UnitSystem.SI)
    bits = holographic_bound(radius=radius).bits
    return [_range_check("holographic_one_centimetre_bits", 1.0e66, 3.0e66, bits)]


def _dimensional_reduction(rng: np.random.Generator) -> List[CheckResult]:
    pairs = []
    for E, R in 10.0 ** rng.uniform(-5, 5, size=(100, 2)):
        s = SystemSpec(E=E, R=R)
        pairs.append((universal_bound(s).nats, bousso_bound(s).nats))
    expected, computed = _worst(pairs)
    E = 3.7
    return [
        _check("bousso_equals_universal", expected, computed, 1e-12),
        _check("gravitational_radius_n3", 2 * E, gravitational_radius(E, 3).value, 1e-13),
    ]


def _verlinde(rng: np.random.Generator) -> List[CheckResult]:
    E, R, n = 2.0, 5.0, 3
    grid = np.linspace(0.0, 2 * E, 2001)
    grid_max = max(verlinde_bound(VerlindeInput(E=E, E_C=e_c, R=R, n=n)).nats for e_c in grid)

    exceed = 0
    for E_i, R_i, fraction in zip(10.0 ** rng.uniform(-3, 3, 10_000),
                                  10.0 ** rng.uniform(-3, 3, 10_000),
                                  rng.uniform(0.0, 2.0, 10_000)):
        v = VerlindeInput(E=E_i, E_C=fraction * E_i, R=R_i)
        universal = universal_bound(SystemSpec(E=E_i, R=R_i)).nats
        if verlinde_bound(v).nats > universal * (1 + 1e-12):
            exceed += 1
    return [
        _check("verlinde_grid_max", 2 * math.pi * R * E / n, grid_max, 1e-6),
        _check("verlinde_never_exceeds_universal", 0.0, float(exceed), 0.0),
    ]


def _black_hole_elimination() -> List[CheckResult]:
    photon = SPECIES["photon"]
    masses = logspace_points(1.0, 1e6, 50)
    pairs = []
    curve = []
    for M in masses:
        bh = BlackHole(M=M)
        power = emission_power(bh, photon)
        rate = emission_entropy_rate(bh, photon).value
        pairs.append((rate, bh_rate_vs_power(power, photon).value))
        curve.append((power.value, rate))
    expected, computed = _worst(pairs)
    curve.sort()

    powers = logspace_points(1.0, 1e4, 50)
    surface = [(p, surface_entropy_rate(p, 3, 1.0).value) for p in powers]
    boundary = [(p, surface_entropy_rate(p, 2, 1.0).value) for p in powers]
    return [
        _check("black_hole_elimination", expected, computed, 1e-10),
        _check("black_hole_slope", 0.5, fit_loglog_slope(curve), 1e-9),
        _check("surface_slope", 0.75, fit_loglog_slope(surface), 1e-6),
        _check("boundary_slope", 2 / 3, fit_loglog_slope(boundary), 1e-6),
    ]


def _coefficient_ratios() -> List[CheckResult]:
    results = []
    for name, expected, tolerance in (("photon", 0.1513, 0.0005), ("neutrino", 0.728, 0.005)):
        computed = coefficient_ratio(SPECIES[name])
        quoted = QUOTED_COEFFICIENT_RATIOS[name]
        results.append(CheckResult(
            name=f"coefficient_ratio_{name}", expected=expected, computed=computed,
            rel_error=abs(computed - expected) / expected, tolerance=tolerance / expected,
            passed=abs(computed - expected) <= tolerance,
            note=f"quoted ratio {quoted} is not reproduced by direct evaluation",
        ))
    return results


def _gedanken_chain() -> List[CheckResult]:
    report = audit(GedankenConfig(E=1.0, R=1.0, zeta=1.0, species_count=100.0))
    return [
        _check("worst_case_d_over_M", 2 * 15360 ** (2 / 3) * 10 ** (-4 / 3), report.d_over_M, 1e-9),
        _range_check("worst_case_d_over_M_quoted", 57.3, 57.5, report.d_over_M),
        _range_check("radiation_time_coefficient", 0.96 * 5e4, 5e4, RADIATION_TIME_COEFFICIENT,
                     note="rounded coefficient 5e4"),
    ]


def _channel_counting() -> List[CheckResult]:
    values = []
    for M in logspace_points(1.0, 1e6, 10):
        for ratio in logspace_points(21.0, 1e6, 10):
            values.append(bh_channel_bound(BlackHole(M=M), ratio * M))
    worst = max(values, key=lambda v: abs(v - 4 * math.pi ** 2))
    return [_check("black_hole_channel_bound", 4 * math.pi ** 2, worst, 1e-12)]


def _pulse_envelope(rng: np.random.Generator) -> List[CheckResult]:
    crossover = pulse_info_bound(PulseSpec(E=1 / (3 * math.pi), tau=1.0))
    pulse = PulseSpec(E=2.0, tau=0.7)
    before = pulse_info_bound(pulse).envelope
    pairs = [(before, pulse_info_bound(redshift_transform(pulse, alpha)).envelope)
             for alpha in 10.0 ** rng.uniform(-3, 3, 100)]
    expected, computed = _worst(pairs)
    return [
        _check("pulse_crossover", crossover.linear, crossover.steady, 1e-12),
        _check("pulse_redshift_invariance", expected, computed, 1e-12),
    ]


def _saturation() -> List[CheckResult]:
    pairs = []
    for M in logspace_points(1e-2, 1e8, 20):
        pairs.append((universal_bound(SystemSpec(E=M, R=2 * M)).nats, bh_entropy(BlackHole(M=M)).nats))
    expected, computed = _worst(pairs)
    kerr = kerr_newman_check(KerrNewmanSpec(M=1.0, a=0.6, Q=0.0))
    charged = kerr_newman_check(KerrNewmanSpec(M=1.0, a=0.3, Q=0.5))
    return [
        _check("black_hole_saturates_universal", expected, computed, 1e-12),
        _check("kerr_saturation", kerr.bound, kerr.entropy, 1e-9),
        CheckResult(name="charged_strictly_below", expected=charged.bound, computed=charged.entropy,
                    rel_error=abs(charged.bound - charged.entropy) / charged.bound, tolerance=0.0,
                    passed=charged.entropy < charged.bound,
                    note="Reissner-Nordstrom and Kerr-Newman holes stay strictly below 2πMr+"),
    ]


def run_checks() -> List[CheckResult]:
    """Прогон всех проверок с фиксированным зерном"""
    rng = np.random.default_rng(_SEED)
    groups: List[Callable[[], List[CheckResult]]] = [
        _quadrature_closed_form, _dispersion_independence, _pendry_consistency, _spin_half,
        _holographic_centimetre, partial(_dimensional_reduction, rng), partial(_verlinde, rng),
        _black_hole_elimination, _coefficient_ratios, _gedanken_chain, _channel_counting,
        partial(_pulse_envelope, rng), _saturation,
    ]
    results: List[CheckResult] = []
    for group in groups:
        batch = group()
        for r in batch:
            if not r.passed:
                logger.warning(f"Проверка {r.name} не пройдена: {r.computed:.12g} против {r.expected:.12g}")
        results.extend(batch)
    logger.info(f"Проверки: {sum(r.passed for r in results)}/{len(results)}")
    return results


def summarize(results: List[CheckResult]) -> Tuple[int, int]:
    return sum(1 for r in results if r.passed), len(results)
