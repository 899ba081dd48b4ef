"""Quasi-static centre-of-mass dynamics of atom 1 under the selected force.

The force at each step is the static-separation value at the instantaneous
z; back-reaction kernels (radiation reaction, dissipation, memory) are not
part of this model, so trajectories are a quasi-static approximation valid
for slowly moving atoms.  Velocities are in units of c and must stay well
below 1; the integrator attaches a warning when |v| exceeds 0.1.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import dispersion, quadrature
from .errors import ConfigError
from .model import ComponentSelection, PairConfig

__all__ = ["TrajectoryState", "TrajectoryResult", "integrate", "default_z_min"]


@dataclass(frozen=True)
class TrajectoryState:
    t: float      # 1/eV
    z: float      # 1/eV
    v: float      # dimensionless (units of c)
    f: float      # eV^2, force used to leave this state


@dataclass(frozen=True)
class TrajectoryResult:
    states: tuple
    halt_reason: str              # "t_max" | "z_min" | "force-error"
    warnings: tuple = ()
    error: str | None = None


def default_z_min(pair: PairConfig) -> float:
    """Model-breakdown cutoff: a hundredth of the shorter resonance
    wavelength."""
    return 1e-2 / min(pair.atom1.omega, pair.atom2.omega)


def integrate(pair: PairConfig, sel: ComponentSelection, z0: float, v0: float,
              dt: float, t_max: float,
              spec: quadrature.QuadratureSpec | None = None,
              z_min: float | None = None) -> TrajectoryResult:
    """Velocity-Verlet integration of M1 d2z/dt2 = f_total(z).

    Halts at t_max, at the z_min cutoff, or on a force-evaluation failure
    (returning the partial trajectory with the error attached).
    """
    if dt <= 0:
        raise ConfigError("dt must be positive")
    if t_max <= 0:
        raise ConfigError("t_max must be positive")
    if z_min is None:
        z_min = default_z_min(pair)
    if z0 <= z_min:
        raise ConfigError(f"z0 = {z0} must exceed z_min = {z_min}")

    mass = pair.atom1.total_mass
    warnings: list[str] = []
    states: list[TrajectoryState] = []

    def force(z: float) -> float:
        return dispersion.total_force(pair.at(z), sel, spec).total

    t, z, v = 0.0, float(z0), float(v0)
    try:
        f = force(z)
    except Exception as exc:
        return TrajectoryResult((), "force-error", (), str(exc))

    warned_v = False
    while True:
        states.append(TrajectoryState(t, z, v, f))
        if t >= t_max:
            return TrajectoryResult(tuple(states), "t_max", tuple(warnings))
        a = f / mass
        z_new = z + v * dt + 0.5 * a * dt * dt
        if z_new <= z_min:
            states.append(TrajectoryState(t + dt, z_new, v + a * dt, f))
            return TrajectoryResult(tuple(states), "z_min", tuple(warnings))
        try:
            f_new = force(z_new)
        except Exception as exc:
            return TrajectoryResult(tuple(states), "force-error",
                                    tuple(warnings), str(exc))
        v_new = v + 0.5 * (a + f_new / mass) * dt
        t, z, v, f = t + dt, z_new, v_new, f_new
        if not warned_v and abs(v) > 0.1:
            warnings.append(
                f"|v| = {abs(v):.3g} c exceeded 0.1 at t = {t:.6g}; the "
                "non-relativistic model is no longer trustworthy")
            warned_v = True
