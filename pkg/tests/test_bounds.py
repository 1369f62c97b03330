"""
Тесты энтропийных границ
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis.strategies import floats, integers

from bounds import (
    PLANCK_UNITS_ONLY, STRONG_GRAVITY, KerrNewmanSpec, SystemSpec, VerlindeInput, bousso_bound,
    gravitational_radius, holographic_bound, kerr_newman_check, poor_man_bound,
    poor_man_coefficient, tightest_bound, typical_compactness, universal_bound, verlinde_bound,
    verlinde_max,
)
from errors import DomainError
from units import LENGTH, LOG2E, Quantity, UnitSystem, parse_literal

positive = floats(min_value=1e-6, max_value=1e6)


def test_holographic_area():
    result = holographic_bound(area=4.0)
    assert result.nats == pytest.approx(1.0)
    assert result.bits == pytest.approx(LOG2E)
    assert result.saturated is None


def test_holographic_one_centimetre():
    radius = parse_literal("1cm", LENGTH, UnitSystem.SI)
    bits = holographic_bound(radius=radius).bits
    assert 1.0e66 <= bits <= 3.0e66


def test_holographic_saturation_flag():
    assert holographic_bound(area=4.0, entropy=1.0).saturated is True
    assert holographic_bound(area=4.0, entropy=0.5).saturated is False


def test_holographic_higher_dimension_flagged():
    result = holographic_bound(radius=1.0, n=4)
    # площадь 3-сферы 2π²R³
    assert result.nats == pytest.approx(2 * math.pi ** 2 / 4)
    assert PLANCK_UNITS_ONLY in result.warnings


@pytest.mark.parametrize("kwargs", [{}, {"area": 1.0, "radius": 1.0}, {"area": -1.0}, {"radius": 0.0}])
def test_holographic_rejects(kwargs):
    with pytest.raises(DomainError):
        holographic_bound(**kwargs)


def test_universal_bound():
    result = universal_bound(SystemSpec(E=1.0, R=10.0))
    assert result.nats == pytest.approx(20 * math.pi)
    assert result.warnings == []


@settings(deadline=None)
@given(E=positive, R=positive, scale=floats(min_value=1e-3, max_value=1e3))
def test_universal_scales_quadratically(E, R, scale):
    """E → λE, R → λR умножает границу на λ²"""
    base = universal_bound(SystemSpec(E=E, R=R)).nats
    scaled = universal_bound(SystemSpec(E=scale * E, R=scale * R)).nats
    assert scaled == pytest.approx(scale ** 2 * base, rel=1e-12)


def test_universal_flags_strong_gravity():
    result = universal_bound(SystemSpec(E=1.0, R=1.0))
    assert STRONG_GRAVITY in result.warnings


@pytest.mark.parametrize("E, R, n", [(0.0, 1.0, 3), (1.0, -1.0, 3), (1.0, 1.0, 2)])
def test_system_spec_rejects(E, R, n):
    with pytest.raises(ValueError):
        SystemSpec(E=E, R=R, n=n)


def test_poor_man_bound():
    result = poor_man_bound(SystemSpec(E=1.0, R=1.0), nu=1.5, zeta=5.0)
    assert result.nats == pytest.approx(60 * math.pi)


def test_poor_man_formal_values():
    """ν = ¼, ζ = 1 вне допустимого диапазона, но формула даёт 2πER"""
    s = SystemSpec(E=2.0, R=3.0)
    result = poor_man_bound(s, nu=0.25, zeta=1.0, check_ranges=False)
    assert result.nats == pytest.approx(universal_bound(s).nats)


def test_poor_man_ranges():
    s = SystemSpec(E=1.0, R=10.0)
    with pytest.raises(DomainError):
        poor_man_bound(s, nu=0.25, zeta=5.0)
    with pytest.raises(DomainError):
        poor_man_bound(s, nu=1.5, zeta=0.5)


def test_poor_man_coefficient():
    assert poor_man_coefficient(1.64, 10.0) == pytest.approx(65.6)
    assert poor_man_coefficient(1.5, 5.0) < 100


@pytest.mark.parametrize("n", [3, 4, 5, 7])
def test_bousso_equals_universal(n):
    s = SystemSpec(E=2.5, R=40.0, n=n)
    assert bousso_bound(s).nats == pytest.approx(universal_bound(s).nats, rel=1e-12)


@settings(deadline=None)
@given(E=positive, R=positive)
def test_bousso_reduces_in_four_dimensions(E, R):
    s = SystemSpec(E=E, R=R)
    assert bousso_bound(s).nats == pytest.approx(universal_bound(s).nats, rel=1e-12)


def test_bousso_result_is_checked_dimensionless(monkeypatch):
    broken = {"hbar": Quantity(value=1.0, dimension=LENGTH), "G": Quantity(value=1.0), "c": Quantity(value=1.0)}
    monkeypatch.setattr("bounds.constant", broken.__getitem__)
    with pytest.raises(AssertionError):
        bousso_bound(SystemSpec(E=1.0, R=3.0))


def test_gravitational_radius():
    assert gravitational_radius(3.0).value == pytest.approx(6.0, rel=1e-14)
    # D = 5: r_g² = 8E/(3π)
    assert gravitational_radius(1.0, 4).value == pytest.approx(math.sqrt(8 / (3 * math.pi)))
    with pytest.raises(DomainError):
        gravitational_radius(1.0, 2)


def test_verlinde_at_peak():
    v = VerlindeInput(E=1.0, E_C=1.0, R=3.0)
    assert verlinde_bound(v).nats == pytest.approx(2 * math.pi)


def test_verlinde_zero_casimir():
    assert verlinde_bound(VerlindeInput(E=1.0, E_C=0.0, R=3.0)).nats == 0.0


def test_verlinde_grid_maximum():
    E, R = 2.0, 5.0
    grid = np.linspace(0, 2 * E, 2001)
    best = max(verlinde_bound(VerlindeInput(E=E, E_C=c, R=R)).nats for c in grid)
    assert best == pytest.approx(verlinde_max(E, R).nats, rel=1e-6)
    assert verlinde_max(E, R).nats == pytest.approx(2 * math.pi * R * E / 3)


@settings(deadline=None)
@given(E=positive, R=positive, fraction=floats(min_value=0.0, max_value=2.0),
       n=integers(min_value=3, max_value=6))
def test_verlinde_never_exceeds_universal(E, R, fraction, n):
    v = VerlindeInput(E=E, E_C=fraction * E, R=R, n=n)
    assert verlinde_bound(v).nats <= universal_bound(SystemSpec(E=E, R=R, n=n)).nats * (1 + 1e-12)


def test_verlinde_casimir_range():
    with pytest.raises(ValueError):
        VerlindeInput(E=1.0, E_C=2.5, R=1.0)


def test_kerr_saturates():
    check = kerr_newman_check(KerrNewmanSpec(M=1.0, a=0.6, Q=0.0))
    assert check.horizon_radius == pytest.approx(1.8)
    assert check.entropy == pytest.approx(check.bound, rel=1e-9)
    assert check.saturated


def test_schwarzschild_saturates():
    check = kerr_newman_check(KerrNewmanSpec(M=2.0, a=0.0, Q=0.0))
    assert check.entropy == pytest.approx(16 * math.pi)
    assert check.saturated


@pytest.mark.parametrize("a, Q", [(0.0, 0.5), (0.3, 0.5), (0.0, 0.999)])
def test_charged_hole_below_bound(a, Q):
    check = kerr_newman_check(KerrNewmanSpec(M=1.0, a=a, Q=Q))
    assert check.entropy < check.bound
    assert not check.saturated


def test_kerr_newman_never_exceeds_bound():
    """S_BH ≤ 2πMr₊ для случайных (M, a, Q); равенство только при Q = 0"""
    rng = np.random.default_rng(20260101)
    for i in range(10_000):
        M = 10 ** rng.uniform(-3, 3)
        a = M * rng.uniform(0.0, 0.9)
        Q = 0.0 if i % 2 else math.sqrt(M * M - a * a) * rng.uniform(0.01, 0.99)
        check = kerr_newman_check(KerrNewmanSpec(M=M, a=a, Q=Q))
        assert check.entropy <= check.bound * (1 + 1e-12)
        assert check.saturated == (Q == 0.0)


def test_naked_singularity_rejected():
    with pytest.raises(ValueError):
        KerrNewmanSpec(M=1.0, a=0.8, Q=0.8)


def test_tightest_bound_weak_gravity():
    comparison = tightest_bound(SystemSpec(E=1.0, R=100.0))
    assert comparison.tighter == "universal"
    assert comparison.ratio == pytest.approx(50.0)


def test_tightest_bound_at_horizon():
    comparison = tightest_bound(SystemSpec(E=1.0, R=2.0))
    assert comparison.tighter == "equal"


def test_tightest_bound_strong_gravity():
    comparison = tightest_bound(SystemSpec(E=1.0, R=1.0))
    assert comparison.tighter == "holographic"


def test_tightest_bound_higher_dimension_is_qualitative():
    comparison = tightest_bound(SystemSpec(E=1.0, R=1.0, n=4))
    assert comparison.holographic is None
    assert comparison.tighter is None
    assert comparison.note


def test_typical_compactness():
    assert typical_compactness("laboratory") == 1e-23
    assert typical_compactness("astronomical") == 1e-5
    with pytest.raises(DomainError):
        typical_compactness("galactic")
