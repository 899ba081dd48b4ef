import math

import pytest

from pairforce import units
from pairforce.errors import DomainError


def test_known_length_conversion():
    # 197.327 nm is one inverse eV to within the CODATA value's precision
    assert units.to_internal_length(197.327) == pytest.approx(1.0, rel=1e-6)


def test_length_round_trip_12_digits():
    for x in (1e-3, 0.122, 122.0, 5.4e7):
        back = units.to_lab_length(units.to_internal_length(x))
        assert back == pytest.approx(x, rel=1e-12)


def test_nonpositive_length_rejected():
    with pytest.raises(DomainError):
        units.to_internal_length(0.0)
    with pytest.raises(DomainError):
        units.to_internal_length(-3.0)


def test_inverse_temperature_values():
    # 1/k_B in K gives beta = 1/eV
    assert units.to_internal_inverse_temperature(11604.5) == pytest.approx(1.0, rel=1e-4)
    assert units.to_internal_inverse_temperature(300.0) == pytest.approx(38.68, rel=1e-3)


def test_temperature_round_trip_and_domain():
    beta = units.to_internal_inverse_temperature(300.0)
    assert units.to_lab_temperature(beta) == pytest.approx(300.0, rel=1e-12)
    for bad in (0.0, -1.0):
        with pytest.raises(DomainError):
            units.to_internal_inverse_temperature(bad)


def test_frequency_conversions_both_kinds():
    # 10 eV is 2.42e15 Hz as an ordinary frequency, 1.52e16 rad/s as angular
    assert units.energy_to_frequency_hz(10.0) == pytest.approx(2.418e15, rel=1e-3)
    assert units.energy_to_angular_frequency(10.0) == pytest.approx(1.519e16, rel=1e-3)
    ratio = units.energy_to_angular_frequency(1.0) / units.energy_to_frequency_hz(1.0)
    assert ratio == pytest.approx(2.0 * math.pi, rel=1e-9)


def test_force_conversion_round_trip_and_factor():
    f = -3.7e-12
    assert units.force_to_internal(units.force_to_newton(f)) == pytest.approx(f, rel=1e-12)
    # documented factor: eV^2 -> N is e / (hbar c)
    assert units.FORCE_EV2_TO_NEWTON == pytest.approx(8.1194e-13, rel=1e-4)


def test_unit_system_rejects_nonpositive():
    with pytest.raises(DomainError):
        units.UnitSystem(hbar_c=-1.0)


def test_elementary_charge_internal():
    assert units.ELEMENTARY_CHARGE_INTERNAL ** 2 == pytest.approx(
        4.0 * math.pi * units.FINE_STRUCTURE, rel=1e-14)
