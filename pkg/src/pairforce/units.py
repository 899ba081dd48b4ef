"""Internal unit system and laboratory conversions.

Everything inside the package runs in natural units with hbar = c = 1,
energies in eV and lengths in 1/eV.  All conversions to and from laboratory
units (nm, K, Hz, N) live here and nowhere else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# CODATA 2018
HBAR_C_EV_NM = 197.3269804           # hbar*c in eV nm
BOLTZMANN_EV_PER_K = 8.617333262e-5  # k_B in eV/K
ELECTRON_MASS_EV = 510998.95000      # m_e c^2 in eV
FINE_STRUCTURE = 7.2973525693e-3     # alpha
HBAR_EV_S = 6.582119569e-16          # hbar in eV s
PLANCK_EV_S = 4.135667696e-15        # h in eV s
E_CHARGE_COULOMB = 1.602176634e-19   # exact

# Heaviside-Lorentz natural units: e^2 = 4 pi alpha, so an atom carrying one
# elementary charge has internal coupling sqrt(4 pi alpha).
ELEMENTARY_CHARGE_INTERNAL = math.sqrt(4.0 * math.pi * FINE_STRUCTURE)

# 1 eV^-1 of length is HBAR_C_EV_NM nm; a force in eV^2 is eV per eV^-1.
FORCE_EV2_TO_NEWTON = E_CHARGE_COULOMB / (HBAR_C_EV_NM * 1e-9)


@dataclass(frozen=True)
class UnitSystem:
    """Bundle of the physical constants the package relies on."""

    hbar_c: float = HBAR_C_EV_NM            # eV nm
    boltzmann: float = BOLTZMANN_EV_PER_K   # eV/K
    electron_mass: float = ELECTRON_MASS_EV  # eV
    fine_structure_coupling: float = FINE_STRUCTURE

    def __post_init__(self):
        for name in ("hbar_c", "boltzmann", "electron_mass", "fine_structure_coupling"):
            if getattr(self, name) <= 0:
                raise DomainError(f"UnitSystem.{name} must be positive")


DEFAULT_UNITS = UnitSystem()


def to_internal_length(x_nm: float, units: UnitSystem = DEFAULT_UNITS) -> float:
    """nm -> 1/eV."""
    if x_nm <= 0:
        raise DomainError(f"length must be positive, got {x_nm} nm")
    return x_nm / units.hbar_c


def to_lab_length(x_inv_ev: float, units: UnitSystem = DEFAULT_UNITS) -> float:
    """1/eV -> nm."""
    if x_inv_ev <= 0:
        raise DomainError(f"length must be positive, got {x_inv_ev} /eV")
    return x_inv_ev * units.hbar_c


def to_internal_inverse_temperature(t_kelvin: float, units: UnitSystem = DEFAULT_UNITS) -> float:
    """K -> beta in 1/eV.  T = 0 is not representable here; use the explicit
    zero-temperature marker (beta = inf) instead."""
    if t_kelvin <= 0:
        raise DomainError(f"temperature must be positive, got {t_kelvin} K")
    return 1.0 / (units.boltzmann * t_kelvin)


def to_lab_temperature(beta_inv_ev: float, units: UnitSystem = DEFAULT_UNITS) -> float:
    """beta in 1/eV -> K."""
    if beta_inv_ev <= 0:
        raise DomainError(f"inverse temperature must be positive, got {beta_inv_ev} /eV")
    return 1.0 / (units.boltzmann * beta_inv_ev)


def energy_to_frequency_hz(e_ev: float) -> float:
    """eV -> ordinary frequency in Hz (E/h)."""
    return e_ev / PLANCK_EV_S


def energy_to_angular_frequency(e_ev: float) -> float:
    """eV -> angular frequency in rad/s (E/hbar)."""
    return e_ev / HBAR_EV_S


def force_to_newton(f_ev2: float) -> float:
    """eV^2 -> N."""
    return f_ev2 * FORCE_EV2_TO_NEWTON


def force_to_internal(f_newton: float) -> float:
    """N -> eV^2."""
    return f_newton / FORCE_EV2_TO_NEWTON
