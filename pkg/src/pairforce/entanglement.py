"""Force from cross-correlated initial states of the two oscillators.

Unlike every dispersion component (fourth order in the couplings, q1^2 q2^2)
this force is second order (q1 q2): it exists because an entangled initial
state gives the two dipoles a nonvanishing cross correlator that a single
retarded propagation converts into a force.

Only the long-time limit of the cross correlator is implemented; the
finite-evolution-time kernel has unregulated csc-type singularities and
every printed end result uses the long-time form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import ladder
from .errors import ConfigError, UnsupportedError
from .model import AtomSpec, PairConfig, SqueezeState

__all__ = [
    "EntanglementKernel", "delta_amplitudes", "g_ent_longtime",
    "f_ent_isotropic", "f_ent_nearfield", "f_ent_anisotropic", "f_ent_auto",
]


def _common_atom(pair: PairConfig) -> AtomSpec:
    a1, a2 = pair.atom1, pair.atom2
    if a1.mu != a2.mu or a1.omega != a2.omega:
        raise UnsupportedError(
            "the entangled-state correlator is defined for atoms sharing "
            f"(mu, Omega); got ({a1.mu}, {a1.omega}) vs ({a2.mu}, {a2.omega})")
    return a1


def _require_squeeze(pair: PairConfig) -> SqueezeState:
    if pair.squeeze is None:
        raise ConfigError("this operation needs a SqueezeState on the pair")
    return pair.squeeze


def delta_amplitudes(state: SqueezeState, mu: float, omega: float):
    """Per-axis amplitude of the long-time cross correlator:
    Delta_j = (1/8)(beta_j^2 - 1/alpha_j^2)(alpha_j^2/beta_j^2 - 1/(mu Omega)^2).
    """
    inv_mw2 = 1.0 / (mu * omega) ** 2
    return tuple(
        0.125 * (b * b - 1.0 / (a * a)) * (a * a / (b * b) - inv_mw2)
        for a, b in zip(state.alpha, state.beta_sq))


@dataclass(frozen=True)
class EntanglementKernel:
    """Long-time cross-correlator amplitudes (one per axis) and the common
    oscillator frequency."""

    amplitude: tuple[float, float, float]
    omega: float

    @classmethod
    def from_state(cls, state: SqueezeState, atom: AtomSpec) -> "EntanglementKernel":
        return cls(delta_amplitudes(state, atom.mu, atom.omega), atom.omega)


def g_ent_longtime(state: SqueezeState, atom: AtomSpec, z: float):
    """Per-axis long-time cross correlator at lag z: Delta_j cos(Omega z)."""
    kern = EntanglementKernel.from_state(state, atom)
    c = math.cos(kern.omega * z)
    return tuple(a * c for a in kern.amplitude)


# [z^3 L^3 + 5 z L^2](cos(w z)/z) reduces to exactly two terms:
# w^3 sin(wz)/z + w^2 cos(wz)/z^2.  Derived once from the exact ladder.
_KERNEL_SERIES = ladder.derive_ent_kernel(ladder.TrigSeries.term(1, 0, 0, "cos", 1))


def kernel_series() -> ladder.TrigSeries:
    """The exact ladder image of the long-time correlator shape."""
    return _KERNEL_SERIES


def f_ent_isotropic(pair: PairConfig) -> float:
    """Static entanglement force for an isotropic squeezed state:
    -q1 q2/(4 pi) [z^3 L^3 + 5 z L^2](A cos(Omega z)/z), evaluated from the
    exact ladder series."""
    atom = _common_atom(pair)
    state = _require_squeeze(pair)
    if not state.isotropic:
        raise ConfigError("squeeze state is anisotropic; use f_ent_anisotropic")
    amp = delta_amplitudes(state, atom.mu, atom.omega)[0]
    prefactor = -pair.atom1.q * pair.atom2.q / (4.0 * math.pi)
    return prefactor * amp * float(_KERNEL_SERIES.evaluate(atom.omega, pair.z))


def f_ent_nearfield(pair: PairConfig) -> float:
    """Near-field (Omega z << 1) closed form of the isotropic force:
    -q1 q2/(32 pi) (beta^2 - 1/alpha^2)(alpha^2/beta^2 - 1/(mu Omega)^2)
    Omega^2 / z^2."""
    atom = _common_atom(pair)
    state = _require_squeeze(pair)
    if not state.isotropic:
        raise ConfigError("squeeze state is anisotropic; use f_ent_anisotropic")
    amp = delta_amplitudes(state, atom.mu, atom.omega)[0]
    return (-pair.atom1.q * pair.atom2.q / (4.0 * math.pi)
            * amp * atom.omega ** 2 / pair.z ** 2)


def f_ent_anisotropic(pair: PairConfig) -> float:
    """Near-field long-time force for a general (per-axis) squeezed state:
    -3 q1 q2/(4 pi) [Delta_x + Delta_y - 2 Delta_z] / z^4.
    Vanishes identically for isotropic states."""
    atom = _common_atom(pair)
    state = _require_squeeze(pair)
    dx, dy, dz = delta_amplitudes(state, atom.mu, atom.omega)
    return (-3.0 * pair.atom1.q * pair.atom2.q / (4.0 * math.pi)
            * (dx + dy - 2.0 * dz) / pair.z ** 4)


def f_ent_auto(pair: PairConfig) -> float:
    """Isotropic ladder form when the state is isotropic, else the
    anisotropic near-field form."""
    state = _require_squeeze(pair)
    if state.isotropic:
        return f_ent_isotropic(pair)
    return f_ent_anisotropic(pair)
