"""
Тесты ёмкости канала, закона Стефана-Больцмана и границ для импульсов
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis.strategies import floats

from channel import (
    PULSE_CROSSOVER, ChannelSpec, Dispersion, EmitterSpec, PulseSpec, Statistics,
    blackbody_coefficient_by_quadrature, blackbody_rate, closed_form_entropy_rate,
    closed_form_power, linear_reception_rate, mode_entropy, one_way_entropy_rate, one_way_power,
    pendry_rate, pulse_info_bound, redshift_transform, structure_info_bound, surface_entropy_rate,
)
from errors import DomainError
from numerics import fit_loglog_slope, logspace_points
from units import LOG2E

BOSON = ChannelSpec()
FERMION = ChannelSpec(statistics=Statistics.FERMION)


# ==================== МОДЫ ====================

def test_mode_entropy_at_unit_ratio():
    expected = 1 / (math.e - 1) - math.log(1 - math.exp(-1))
    assert mode_entropy(1.0, 1.0) == pytest.approx(expected, rel=1e-14)
    assert expected == pytest.approx(1.04144, abs=1e-5)


def test_mode_entropy_frozen_and_classical_limits():
    assert mode_entropy(1000.0, 1.0) == pytest.approx(0.0, abs=1e-300)
    assert mode_entropy(1e-8, 1.0) > mode_entropy(1e-4, 1.0) > mode_entropy(1.0, 1.0)


def test_fermion_mode_entropy_at_zero_energy():
    assert mode_entropy(0.0, 1.0, Statistics.FERMION) == pytest.approx(math.log(2))


@pytest.mark.parametrize("eps, T, statistics", [
    (1.0, 0.0, Statistics.BOSON),
    (-1.0, 1.0, Statistics.BOSON),
    (0.0, 1.0, Statistics.BOSON),
])
def test_mode_entropy_rejects(eps, T, statistics):
    with pytest.raises(DomainError):
        mode_entropy(eps, T, statistics)


# ==================== ТОКИ ====================

def test_boson_power_by_quadrature():
    assert one_way_power(BOSON, 1.0).value == pytest.approx(math.pi / 12, rel=1e-9)


def test_fermion_power_by_quadrature():
    assert one_way_power(FERMION, 1.0).value == pytest.approx(math.pi / 24, rel=1e-9)


def test_entropy_rate_is_twice_power_over_temperature():
    T = 3.0
    power = one_way_power(BOSON, T).value
    rate = one_way_entropy_rate(BOSON, T).value
    assert rate == pytest.approx(math.pi * T / 6, rel=1e-9)
    assert rate / (power / T) == pytest.approx(2.0, rel=1e-9)


def test_slow_medium_does_not_change_power():
    slow = ChannelSpec(dispersion=Dispersion.linear(0.01))
    assert one_way_power(slow, 1.0, variable="momentum").value == pytest.approx(math.pi / 12, rel=1e-9)


@pytest.mark.parametrize("dispersion", [
    Dispersion.linear(),
    Dispersion.linear(1e-2),
    Dispersion.linear(1e-5),
    Dispersion.power_law(1.5),
])
@pytest.mark.parametrize("T", [0.1, 1.0, 10.0])
def test_dispersion_independence(dispersion, T):
    spec = ChannelSpec(dispersion=dispersion)
    assert one_way_power(spec, T, variable="momentum").value == pytest.approx(
        closed_form_power(T).value, rel=1e-6)
    assert one_way_entropy_rate(spec, T, variable="momentum").value == pytest.approx(
        closed_form_entropy_rate(T).value, rel=1e-6)


def test_numerical_group_velocity():
    d = Dispersion(energy=lambda p: 0.5 * np.asarray(p) ** 2, description="quadratic")
    p = np.array([0.5, 1.0, 3.0])
    assert d.group_velocity(p) == pytest.approx(p, rel=1e-8)
    assert d.momentum_at(2.0) == pytest.approx(2.0, rel=1e-12)


def test_custom_dispersion_without_velocity():
    """ε = p + p³: скорость считается разностью"""
    spec = ChannelSpec(dispersion=Dispersion(energy=lambda p: np.asarray(p) + np.asarray(p) ** 3))
    assert one_way_power(spec, 1.0, variable="momentum").value == pytest.approx(math.pi / 12, rel=1e-6)


@pytest.mark.parametrize("energy", [
    lambda p: np.asarray(p) + 1.0,
    lambda p: -np.asarray(p),
    lambda p: np.sin(np.asarray(p)),
])
def test_invalid_dispersions(energy):
    with pytest.raises(ValueError):
        Dispersion(energy=energy)


def test_unknown_variable():
    with pytest.raises(DomainError):
        one_way_power(BOSON, 1.0, variable="frequency")


def test_statistics_ratios():
    assert one_way_power(FERMION, 2.0).value / one_way_power(BOSON, 2.0).value == pytest.approx(0.5, rel=1e-9)
    ratio = pendry_rate(5.0, Statistics.FERMION).entropy_rate.value / pendry_rate(5.0).entropy_rate.value
    assert ratio == pytest.approx(1 / math.sqrt(2), rel=1e-12)


# ==================== ПРЕДЕЛ ПЕНДРИ ====================

def test_pendry_values():
    assert pendry_rate(3 / math.pi).entropy_rate.value == pytest.approx(1.0)
    result = pendry_rate(1.0)
    assert result.entropy_rate.value == pytest.approx(1.02333, abs=1e-5)
    assert result.info_rate.value == pytest.approx(result.entropy_rate.value * LOG2E)


@pytest.mark.parametrize("statistics, spec", [(Statistics.BOSON, BOSON), (Statistics.FERMION, FERMION)])
def test_pendry_eliminates_temperature(statistics, spec):
    for T in logspace_points(1e-2, 1e2, 20):
        power = one_way_power(spec, T)
        assert pendry_rate(power, statistics).entropy_rate.value == pytest.approx(
            one_way_entropy_rate(spec, T).value, rel=1e-9)


def test_pendry_rejects_nonpositive_power():
    with pytest.raises(DomainError):
        pendry_rate(0.0)


# ==================== ЧЁРНОЕ ТЕЛО ====================

def test_stefan_boltzmann_example():
    result = blackbody_rate(EmitterSpec(n=3, measure=120 / math.pi ** 2, temperature=1.0))
    assert result.power.value == pytest.approx(1.0)
    assert result.entropy_rate.value == pytest.approx(4 / 3)


@pytest.mark.parametrize("n, expected", [(1, math.pi / 12), (2, 1.2020569031595942 / math.pi ** 2)])
def test_lower_dimensional_power(n, expected):
    result = blackbody_rate(EmitterSpec(n=n, measure=1.0, temperature=1.0))
    assert result.power.value == pytest.approx(expected, rel=1e-12)


def test_single_channel_reproduces_pendry():
    result = blackbody_rate(EmitterSpec(n=1, measure=1.0, temperature=2.0))
    assert result.entropy_rate_from_power.value == pytest.approx(
        pendry_rate(result.power).entropy_rate.value, rel=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("statistics", list(Statistics))
def test_both_routes_agree(n, statistics):
    result = blackbody_rate(EmitterSpec(n=n, measure=2.5, temperature=0.7), statistics)
    assert result.entropy_rate_from_power.value == pytest.approx(result.entropy_rate.value, rel=1e-10)


def test_fermion_surface_law_factor():
    boson = surface_entropy_rate(1.0, 3, 1.0).value
    fermion = surface_entropy_rate(1.0, 3, 1.0, Statistics.FERMION).value
    assert fermion / boson == pytest.approx((7 / 8) ** 0.25, rel=1e-12)


@pytest.mark.parametrize("n, slope", [(1, 0.5), (2, 2 / 3), (3, 0.75)])
def test_surface_law_exponents(n, slope):
    points = [(p, surface_entropy_rate(p, n, 1.0).value) for p in logspace_points(1, 1e4, 30)]
    assert fit_loglog_slope(points) == pytest.approx(slope, abs=1e-6)


def test_two_dimensional_scaling():
    """Ṡ ∝ (LP²)^{1/3}"""
    base = surface_entropy_rate(1.0, 2, 1.0).value
    assert surface_entropy_rate(2.0, 2, 4.0).value == pytest.approx(base * 16 ** (1 / 3), rel=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("statistics", list(Statistics))
def test_coefficient_by_quadrature(n, statistics):
    assert blackbody_coefficient_by_quadrature(n, statistics) == pytest.approx((n + 1) / n, rel=1e-10)


def test_emitter_rejects_dimension():
    with pytest.raises(ValueError):
        EmitterSpec(n=4, measure=1.0, temperature=1.0)


# ==================== ИМПУЛЬСЫ ====================

def test_pulse_crossover():
    result = pulse_info_bound(PulseSpec(E=PULSE_CROSSOVER, tau=1.0))
    assert result.linear == pytest.approx(result.steady, rel=1e-12)
    assert result.linear == pytest.approx(LOG2E / 3, rel=1e-12)


def test_pulse_regimes():
    small = pulse_info_bound(PulseSpec(E=1e-3, tau=1.0))
    assert small.envelope == small.linear
    large = pulse_info_bound(PulseSpec(E=3 / math.pi, tau=1.0))
    assert large.steady == pytest.approx(LOG2E)
    assert large.envelope == large.steady


def test_pulse_ignores_self_gravity_parameter():
    """ϖ = E/τ меняется, ξ = Eτ нет: граница та же"""
    a = PulseSpec(E=2.0, tau=0.5)
    b = PulseSpec(E=0.5, tau=2.0)
    assert a.varpi != b.varpi
    assert pulse_info_bound(a) == pulse_info_bound(b)


@settings(deadline=None)
@given(xi_1=floats(min_value=1e-6, max_value=1e6), xi_2=floats(min_value=1e-6, max_value=1e6))
def test_envelope_is_monotone(xi_1, xi_2):
    low, high = sorted([xi_1, xi_2])
    assert pulse_info_bound(PulseSpec(E=low, tau=1.0)).envelope <= pulse_info_bound(
        PulseSpec(E=high, tau=1.0)).envelope


@settings(deadline=None)
@given(alpha=floats(min_value=1e-3, max_value=1e3))
def test_redshift_invariance(alpha):
    pulse = PulseSpec(E=2.0, tau=0.7)
    shifted = redshift_transform(pulse, alpha)
    assert shifted.xi == pytest.approx(pulse.xi, rel=1e-12)
    assert pulse_info_bound(shifted).envelope == pytest.approx(pulse_info_bound(pulse).envelope, rel=1e-12)


def test_redshift_identity_and_rejects():
    pulse = PulseSpec(E=2.0, tau=0.7)
    assert redshift_transform(pulse, 1.0) == pulse
    with pytest.raises(DomainError):
        redshift_transform(pulse, 0.0)


def test_pulse_rejects_nonpositive():
    with pytest.raises(ValueError):
        PulseSpec(E=0.0, tau=1.0)


def test_structure_and_reception_bounds():
    assert structure_info_bound(1.0, 1.0) == pytest.approx(2 * math.pi * LOG2E)
    assert linear_reception_rate(1.0).value == pytest.approx(math.pi * LOG2E)
