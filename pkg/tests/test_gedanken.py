"""
Тесты цепочки мысленного эксперимента и аудита неравенств
"""
import math

import pytest
from hypothesis import given, settings
from hypothesis.strategies import floats

from errors import AuditViolation, DomainError
from gedanken import (
    INFALL_COEFFICIENT, RADIATION_TIME_COEFFICIENT, GedankenConfig, audit, coefficient_checks,
    force_ratio, free_fall_time, infall_distance, n_eff_cap, net_entropy_change, radiation_time,
)


def test_radiation_time_coefficient():
    assert RADIATION_TIME_COEFFICIENT == pytest.approx(48254.86, abs=0.01)
    assert 0.96 <= RADIATION_TIME_COEFFICIENT / 5e4 <= 1.0
    assert radiation_time(1.0, 1.0, 1.0).value == pytest.approx(RADIATION_TIME_COEFFICIENT)


def test_rounded_coefficients_are_close():
    checks = {c.name: c for c in coefficient_checks()}
    assert checks["radiation_time"].deviation < 0.04
    assert checks["infall_distance"].deviation < 0.04
    assert INFALL_COEFFICIENT == pytest.approx(1235.8, abs=0.5)


def test_radiation_time_scaling():
    base = radiation_time(1.0, 2.0, 10.0).value
    assert radiation_time(2.0, 2.0, 10.0).value == pytest.approx(2 * base)
    assert radiation_time(1.0, 4.0, 10.0).value == pytest.approx(4 * base)
    assert radiation_time(1.0, 2.0, 20.0).value == pytest.approx(base / 2)


@settings(deadline=None)
@given(d=floats(min_value=10.0, max_value=1e8), M=floats(min_value=1e-2, max_value=1e4))
def test_infall_inverts_free_fall(d, M):
    t = free_fall_time(d, M)
    assert infall_distance(t, M).value == pytest.approx(d, rel=1e-12)


def test_worst_case_drop_distance():
    report = audit(GedankenConfig(E=1.0, R=1.0, zeta=1.0, species_count=100.0))
    assert report.d_over_M == pytest.approx(57.4, abs=0.1)
    assert report.passed


def test_drop_distance_formula():
    """d/M = 2(15360·ζER/𝒩)^{2/3}"""
    cfg = GedankenConfig(E=3.0, R=2.0, zeta=4.0, species_count=7.0)
    report = audit(cfg)
    assert report.d_over_M == pytest.approx(2 * (15360 * 4.0 * 6.0 / 7.0) ** (2 / 3), rel=1e-12)


def test_audit_passes():
    E = R = math.sqrt(1e3)
    report = audit(GedankenConfig(E=E, R=R, zeta=5.0, species_count=10.0))
    assert report.passed
    assert report.violations == []
    assert report.M == pytest.approx(5 * R)
    assert report.T_H == pytest.approx(1 / (8 * math.pi * report.M))
    assert {f.name for f in report.flags} == {"compton", "species", "infall", "radiation_pressure"}
    report.raise_for_violations()


def test_audit_flags_compton():
    report = audit(GedankenConfig(E=0.5, R=1.0))
    assert not report.passed
    assert "compton" in report.violations
    with pytest.raises(AuditViolation) as info:
        report.raise_for_violations()
    assert "compton" in info.value.flags
    assert "violated" in str(info.value)


def test_audit_flags_species_and_infall():
    report = audit(GedankenConfig(E=1.0, R=1.0, zeta=1.0, species_count=1000.0))
    assert set(report.violations) == {"species", "infall"}


def test_audit_flags_radiation_pressure():
    report = audit(GedankenConfig(E=10.0, R=10.0, zeta=1.0, species_count=1.0, n_eff=1e12))
    assert "radiation_pressure" in report.violations


def test_default_n_eff_is_cap():
    cfg = GedankenConfig(E=2.0, R=3.0)
    report = audit(cfg)
    assert report.n_eff_cap == pytest.approx(8 * math.pi * cfg.M * 2.0)
    assert report.force_ratio_at_d == pytest.approx(3.0 ** 2 / (7680 * math.pi * cfg.M ** 2))


@settings(deadline=None)
@given(M=floats(min_value=1e-3, max_value=1e6), E=floats(min_value=1e-3, max_value=1e6),
       R=floats(min_value=1e-3, max_value=1e6))
def test_force_ratio_at_cap(M, E, R):
    ratio = force_ratio(M, E, R, n_eff_cap(M, E))
    assert ratio == pytest.approx(R ** 2 / (7680 * math.pi * M ** 2), rel=1e-12)


def test_force_ratio_is_negligible_for_compact_holes():
    """M = ζR с ζ ≥ 1 даёт отношение не больше 1/(7680π)"""
    R = 1.0
    assert force_ratio(R, 1.0, R, n_eff_cap(R, 1.0)) < 1e-4


def test_net_entropy_change():
    assert net_entropy_change(0.0, 1.0, 5.0, 1.5) == pytest.approx(60 * math.pi)
    assert net_entropy_change(60 * math.pi, 1.0, 5.0, 1.5) == pytest.approx(0.0, abs=1e-12)


def test_net_entropy_change_is_monotone_in_mass():
    changes = [net_entropy_change(10.0, 1.0, M, 1.5) for M in (1.0, 2.0, 5.0, 10.0)]
    assert changes == sorted(changes)


@pytest.mark.parametrize("kwargs", [
    {"E": 0.0, "R": 1.0},
    {"E": 1.0, "R": -1.0},
    {"E": 1.0, "R": 1.0, "zeta": 0.5},
    {"E": 1.0, "R": 1.0, "zeta": 11.0},
    {"E": 1.0, "R": 1.0, "species_count": 0.0},
    {"E": 1.0, "R": 1.0, "n_eff": -1.0},
])
def test_config_rejects(kwargs):
    with pytest.raises(ValueError):
        GedankenConfig(**kwargs)


def test_operations_reject_nonpositive():
    with pytest.raises(DomainError):
        radiation_time(1.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        infall_distance(-1.0, 1.0)
    with pytest.raises(DomainError):
        force_ratio(1.0, 1.0, 1.0, 0.0)


def d_over_M(E=1.0, R=1.0, zeta=1.0, species_count=100.0):
    return audit(GedankenConfig(E=E, R=R, zeta=zeta, species_count=species_count)).d_over_M


def test_drop_distance_grows_with_zeta():
    values = [d_over_M(zeta=z) for z in (1.0, 2.0, 5.0, 10.0)]
    assert values == sorted(values)
    assert values[0] == pytest.approx(57.36, abs=0.01)
    assert values[-1] == pytest.approx(266.3, abs=0.1)


@settings(deadline=None)
@given(E=floats(min_value=1e-2, max_value=1e3), R=floats(min_value=1e-2, max_value=1e3),
       zeta=floats(min_value=1.0, max_value=5.0), species_count=floats(min_value=1.0, max_value=100.0))
def test_drop_distance_monotonicity(E, R, zeta, species_count):
    base = d_over_M(E, R, zeta, species_count)
    assert d_over_M(2 * E, R, zeta, species_count) > base
    assert d_over_M(E, 2 * R, zeta, species_count) > base
    assert d_over_M(E, R, 2 * zeta, species_count) > base
    assert d_over_M(E, R, zeta, 2 * species_count) < base


@settings(deadline=None)
@given(E=floats(min_value=1e-2, max_value=1e3), R=floats(min_value=1e-2, max_value=1e3),
       zeta=floats(min_value=1.0, max_value=10.0), species_count=floats(min_value=1.0, max_value=1e3))
def test_audit_chains_radiation_time_into_infall(E, R, zeta, species_count):
    report = audit(GedankenConfig(E=E, R=R, zeta=zeta, species_count=species_count))
    t = radiation_time(E, zeta * R, species_count)
    assert report.t == pytest.approx(t.value, rel=1e-12)
    assert report.d == pytest.approx(infall_distance(t, zeta * R).value, rel=1e-12)


@settings(deadline=None)
@given(ER=floats(min_value=1.0, max_value=1e6), R=floats(min_value=1e-2, max_value=1e2),
       zeta=floats(min_value=1.0, max_value=10.0), species_count=floats(min_value=1.0, max_value=100.0))
def test_worst_case_is_minimum_of_admissible_region(ER, R, zeta, species_count):
    """ER ≥ 1, ζ ≥ 1, 𝒩 ≤ 100: d/M не меньше значения в углу ER = ζ = 1, 𝒩 = 100"""
    worst = d_over_M()
    assert d_over_M(ER / R, R, zeta, species_count) >= worst * (1 - 1e-12)


def test_net_entropy_change_requires_nu_in_range():
    with pytest.raises(DomainError):
        net_entropy_change(0.0, 1.0, 5.0, 0.5)
    with pytest.raises(DomainError):
        net_entropy_change(0.0, 1.0, 5.0, 2.5)
