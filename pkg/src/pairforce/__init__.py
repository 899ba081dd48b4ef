"""Forces between two neutral oscillator atoms mediated by the quantum
electromagnetic field: dispersion (intrinsic-fluctuation and induced-dipole)
components at zero and finite temperature, the out-of-equilibrium 1/z^3 far
field, the entanglement force of cross-correlated initial states, the exact
derivative-ladder machinery behind the frequency integrands, detection
ratios, crossover distances, and quasi-static trajectories.
"""

__version__ = "0.1.0"

from .model import (AtomSpec, BathSpec, ComponentSelection, ForceBreakdown,
                    PairConfig, SqueezeState, ZERO_TEMPERATURE,
                    dynamic_polarizability, polarizability_imaginary_weight)
from .quadrature import (QuadratureSpec, cp_imaginary_frequency_oracle,
                         integrate_fc, pv_integral)
from .dispersion import (delta_f_c, f_a, f_b, f_cp_farfield, f_london,
                         f_noneq, total_force)
from .entanglement import (f_ent_anisotropic, f_ent_isotropic,
                           f_ent_nearfield, g_ent_longtime)
from .ladder import TrigSeries, derive_ent_kernel, derive_fc_integrand, series_equal
from .analysis import (crossover_distance, crossover_from_prefactor,
                       logslope, ratio_entanglement, ratio_noneq)
from .dynamics import integrate as integrate_trajectory

__all__ = [
    "AtomSpec", "BathSpec", "ComponentSelection", "ForceBreakdown",
    "PairConfig", "SqueezeState", "ZERO_TEMPERATURE",
    "dynamic_polarizability", "polarizability_imaginary_weight",
    "QuadratureSpec", "cp_imaginary_frequency_oracle", "integrate_fc",
    "pv_integral", "delta_f_c", "f_a", "f_b", "f_cp_farfield", "f_london",
    "f_noneq", "total_force", "f_ent_anisotropic", "f_ent_isotropic",
    "f_ent_nearfield", "g_ent_longtime", "TrigSeries", "derive_ent_kernel",
    "derive_fc_integrand", "series_equal", "crossover_distance",
    "crossover_from_prefactor", "logslope", "ratio_entanglement",
    "ratio_noneq", "integrate_trajectory",
]
