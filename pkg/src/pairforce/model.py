"""Domain types: atoms, field state, entangled initial states, pair
configuration, force breakdowns.

Temperature convention: inverse temperatures are floats in 1/eV and zero
temperature is the explicit marker ``math.inf`` (ZERO_TEMPERATURE).  Thermal
weights substitute coth -> 1 and the Bose factor -> 0 symbolically for that
marker, so no large exponentials are ever formed.

Charge convention: ``AtomSpec.q`` is the coupling in natural
(Heaviside-Lorentz) units, i.e. the value entering q^2/(4 pi mu (Omega^2 -
omega^2)) directly.  One elementary charge corresponds to
``units.ELEMENTARY_CHARGE_INTERNAL``; the CLI does that conversion when it
reads ``charge_e``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import ConfigError, DegenerateFrequencyError, DomainError, PoleError

ZERO_TEMPERATURE = math.inf

#: default guard for formulas containing 1/(omega1^2 - omega2^2)
EPS_DEGENERATE = 1e-6


def _check_beta(beta: float, who: str) -> None:
    if math.isnan(beta) or beta <= 0:
        raise ConfigError(f"{who}: inverse temperature must be positive or the "
                          f"zero-temperature marker (math.inf), got {beta}")


@dataclass(frozen=True)
class AtomSpec:
    """One atom: coupling q (natural units), reduced mass, oscillator
    frequency, total mass (all eV), and internal inverse temperature beta
    (1/eV, inf = zero temperature)."""

    q: float
    mu: float
    omega: float
    total_mass: float
    beta: float = ZERO_TEMPERATURE

    def __post_init__(self):
        if self.q == 0:
            raise ConfigError("AtomSpec.q must be nonzero")
        if self.mu <= 0:
            raise ConfigError("AtomSpec.mu must be positive")
        if self.omega <= 0:
            raise ConfigError("AtomSpec.omega must be positive")
        if self.total_mass <= 0:
            raise ConfigError("AtomSpec.total_mass must be positive")
        _check_beta(self.beta, "AtomSpec")


@dataclass(frozen=True)
class BathSpec:
    """Field state: inverse temperature (1/eV, inf = zero temperature) and an
    optional UV regulator scale eta (1/eV).  When ``uv_eta`` is None the
    quadrature layer picks its own ladder; the physical answer is always the
    eta -> 0 extrapolation."""

    beta: float = ZERO_TEMPERATURE
    uv_eta: float | None = None

    def __post_init__(self):
        _check_beta(self.beta, "BathSpec")
        if self.uv_eta is not None and self.uv_eta <= 0:
            raise ConfigError("BathSpec.uv_eta must be positive when given")


@dataclass(frozen=True)
class SqueezeState:
    """Two-atom entangled Gaussian state, one (alpha_j, beta_j) pair per axis.

    alpha and beta_sq are the widths of the difference and sum quadratures of
    the pair state; they are squeeze parameters, not temperatures.
    """

    alpha: tuple[float, float, float]
    beta_sq: tuple[float, float, float]

    def __post_init__(self):
        if len(self.alpha) != 3 or len(self.beta_sq) != 3:
            raise ConfigError("SqueezeState needs exactly three axes")
        if any(a <= 0 for a in self.alpha) or any(b <= 0 for b in self.beta_sq):
            raise ConfigError("all squeeze parameters must be strictly positive")

    @property
    def isotropic(self) -> bool:
        return (self.alpha[0] == self.alpha[1] == self.alpha[2]
                and self.beta_sq[0] == self.beta_sq[1] == self.beta_sq[2])

    @classmethod
    def isotropic_state(cls, alpha: float, beta_sq: float) -> "SqueezeState":
        return cls((alpha,) * 3, (beta_sq,) * 3)

    @classmethod
    def from_tilde(cls, alpha_tilde, beta_tilde, mu: float, omega: float) -> "SqueezeState":
        """Build from the dimensionless parametrization alpha~ = mu*Omega*alpha,
        beta~ = beta/(mu*Omega).  Scalars are applied to all three axes."""
        if not isinstance(alpha_tilde, (tuple, list)):
            alpha_tilde = (alpha_tilde,) * 3
        if not isinstance(beta_tilde, (tuple, list)):
            beta_tilde = (beta_tilde,) * 3
        mw = mu * omega
        return cls(tuple(a / mw for a in alpha_tilde),
                   tuple(b * mw for b in beta_tilde))

    def tilde(self, mu: float, omega: float):
        """Inverse of :meth:`from_tilde`: (alpha~ per axis, beta~ per axis)."""
        mw = mu * omega
        return (tuple(a * mw for a in self.alpha),
                tuple(b / mw for b in self.beta_sq))


@dataclass(frozen=True)
class PairConfig:
    """Two atoms a separation z apart (1/eV), plus the field state and an
    optional entangled initial state.  The z axis points from atom 2 to atom
    1; negative force values are attractive."""

    atom1: AtomSpec
    atom2: AtomSpec
    bath: BathSpec
    z: float
    squeeze: SqueezeState | None = None
    eps_deg: float = EPS_DEGENERATE

    def __post_init__(self):
        if self.z <= 0:
            raise ConfigError("PairConfig.z must be positive")
        if self.eps_deg <= 0:
            raise ConfigError("PairConfig.eps_deg must be positive")

    @property
    def degeneracy_ratio(self) -> float:
        w1sq = self.atom1.omega ** 2
        w2sq = self.atom2.omega ** 2
        return abs(w1sq - w2sq) / (w1sq + w2sq)

    def require_nondegenerate(self) -> None:
        if self.degeneracy_ratio < self.eps_deg:
            raise DegenerateFrequencyError(
                f"|omega1^2 - omega2^2|/(omega1^2 + omega2^2) = "
                f"{self.degeneracy_ratio:.3e} < eps_deg = {self.eps_deg:.3e}; "
                "this formula is singular at equal frequencies")

    def at(self, z: float) -> "PairConfig":
        return replace(self, z=z)


def dynamic_polarizability(atom: AtomSpec, omega: float) -> float:
    """q^2 / (4 pi mu (Omega^2 - omega^2)); negative above resonance.

    Exact evaluation on the resonance raises; principal-value handling of the
    pole lives in the quadrature layer.
    """
    if omega < 0:
        raise DomainError("dynamic_polarizability: omega must be >= 0")
    den = atom.omega ** 2 - omega ** 2
    if den == 0.0:
        raise PoleError(f"polarizability pole at omega = {omega}")
    return atom.q ** 2 / (4.0 * math.pi * atom.mu * den)


def polarizability_imaginary_weight(atom: AtomSpec) -> float:
    """Coefficient of the resonance delta line of the polarizability,
    q^2/(4 pi mu Omega) * pi/2."""
    return atom.q ** 2 / (8.0 * atom.mu * atom.omega)


# --- force components / breakdown -------------------------------------------

COMPONENT_NAMES = ("fA", "fB", "fC_integral", "delta_fC",
                   "london_nearfield", "cp_farfield", "noneq", "entanglement")

# An asymptotic form may not be summed with the exact components it
# approximates: london ~ near field of fA+fB, cp_farfield ~ far field of the
# frequency integral, noneq ~ far field of fA+fB+delta_fC.
_CONFLICTS = (
    ("london_nearfield", "fA"),
    ("london_nearfield", "fB"),
    ("cp_farfield", "fC_integral"),
    ("noneq", "fA"),
    ("noneq", "fB"),
    ("noneq", "delta_fC"),
)


@dataclass(frozen=True)
class ComponentSelection:
    fA: bool = False
    fB: bool = False
    fC_integral: bool = False
    delta_fC: bool = False
    london_nearfield: bool = False
    cp_farfield: bool = False
    noneq: bool = False
    entanglement: bool = False

    def __post_init__(self):
        if not any(getattr(self, n) for n in COMPONENT_NAMES):
            raise ConfigError("ComponentSelection: at least one component required")
        for a, b in _CONFLICTS:
            if getattr(self, a) and getattr(self, b):
                raise ConfigError(
                    f"ComponentSelection: {a!r} is an asymptotic variant of the "
                    f"physics in {b!r}; summing both would double count")

    def active(self) -> tuple[str, ...]:
        return tuple(n for n in COMPONENT_NAMES if getattr(self, n))

    @classmethod
    def from_names(cls, names) -> "ComponentSelection":
        names = list(names)
        unknown = [n for n in names if n not in COMPONENT_NAMES]
        if unknown:
            raise ConfigError(f"unknown component(s) {unknown}; "
                              f"valid names: {', '.join(COMPONENT_NAMES)}")
        return cls(**{n: True for n in names})


@dataclass
class ForceBreakdown:
    """Per-separation evaluation of the selected components (eV^2, signed,
    attraction negative) plus the total and per-component method tags."""

    z: float
    f_A: float | None = None
    f_B: float | None = None
    f_C_integral: float | None = None
    delta_f_C: float | None = None
    f_london: float | None = None
    f_cp_farfield: float | None = None
    f_noneq: float | None = None
    f_ent: float | None = None
    total: float = 0.0
    methods: dict = field(default_factory=dict)
    notes: tuple = ()

    _FIELD_OF = {
        "fA": "f_A", "fB": "f_B", "fC_integral": "f_C_integral",
        "delta_fC": "delta_f_C", "london_nearfield": "f_london",
        "cp_farfield": "f_cp_farfield", "noneq": "f_noneq",
        "entanglement": "f_ent",
    }

    def value_of(self, component: str) -> float | None:
        return getattr(self, self._FIELD_OF[component])
