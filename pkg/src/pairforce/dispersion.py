"""Closed-form and quadrature-backed force components between the two atoms.

Conventions: the z axis points from atom 2 to atom 1, so negative values are
attractive.  All values are in eV^2.  Inverse temperatures are floats with
math.inf as the zero-temperature marker; thermal weights reduce to coth -> 1
and Bose n -> 0 symbolically in that case.

Component map:

* ``f_a`` / ``f_b``   intrinsic-fluctuation force sourced by the quantum
  fluctuations of atom 2 / atom 1 respectively (atom temperatures enter).
* ``f_london``        their common near-field limit (no frequency-degeneracy
  singularity).
* ``delta_f_c``       resonance-line part of the induced-dipole force (the
  polarizability delta lines collapsed analytically; field temperature).
* ``quadrature.integrate_fc``  the principal-value frequency integral.
* ``f_noneq``         far-field residual when atom and field temperatures
  differ; vanishes identically in global equilibrium.
* ``f_cp_farfield``   the -161/(4 pi) a1(0) a2(0) / z^8 asymptote.

In global equilibrium the polynomial parts of f_a + f_b + delta_f_c cancel
identically and the sum with the frequency integral reproduces the standard
dispersion force at every separation.
"""

from __future__ import annotations

import math

from . import ladder, quadrature
from .errors import ComponentError
from .model import (ComponentSelection, ForceBreakdown, PairConfig,
                    dynamic_polarizability)

__all__ = [
    "coth_half", "planck_n", "f_a", "f_b", "f_london", "delta_f_c",
    "f_noneq", "f_cp_farfield", "f_a_farfield", "f_b_farfield",
    "delta_f_c_farfield", "total_force", "resonance_bracket_value",
]

# advisory separation-regime thresholds in units of max(Omega) * z
NEAR_FIELD_MAX = 0.1
FAR_FIELD_MIN = 10.0


def coth_half(beta: float, omega: float) -> float:
    """coth(beta*omega/2); exactly 1 at the zero-temperature marker."""
    if math.isinf(beta):
        return 1.0
    t = 0.5 * beta * omega
    if t < 1e-4:
        return 1.0 / t + t / 3.0
    if t > 20.0:
        return 1.0
    return 1.0 / math.tanh(t)


def planck_n(beta: float, omega: float) -> float:
    """Bose occupation 1/(exp(beta*omega) - 1); exactly 0 at zero temperature."""
    if math.isinf(beta):
        return 0.0
    return 1.0 / math.expm1(beta * omega)


def _coupling(pair: PairConfig) -> float:
    """q1^2 q2^2 / (16 pi^2 mu1 mu2)."""
    a1, a2 = pair.atom1, pair.atom2
    return (a1.q ** 2) * (a2.q ** 2) / (16.0 * math.pi ** 2 * a1.mu * a2.mu)


# --- resonance bracket --------------------------------------------------------

_RES_BRACKET = ladder.resonance_bracket_target()
_RES_TAYLOR = None


def resonance_bracket_value(x: float) -> float:
    """The resonance-line bracket
    -9 - 2x^2 - x^4 + (9 - 16x^2 + 3x^4) cos 2x + x(18 - 8x^2 + x^4) sin 2x.

    Vanishes through O(x^6) at small x; evaluated by its exact Taylor series
    below |x| = 0.5 where the direct form is pure cancellation noise.
    """
    global _RES_TAYLOR
    if abs(x) < 0.5:
        if _RES_TAYLOR is None:
            _, coeffs = _RES_BRACKET.laurent_x(40)
            _RES_TAYLOR = sorted(coeffs.items())
        val = 0.0
        for p, c in _RES_TAYLOR:
            val += float(c) * x ** p
        return val
    x2 = x * x
    return (-9.0 - 2.0 * x2 - x2 * x2
            + (9.0 - 16.0 * x2 + 3.0 * x2 * x2) * math.cos(2.0 * x)
            + x * (18.0 - 8.0 * x2 + x2 * x2) * math.sin(2.0 * x))


# --- intrinsic fluctuation components ------------------------------------------

def f_a(pair: PairConfig) -> float:
    """Force sourced by atom 2's intrinsic dipole fluctuations:
    -K/(O1 O2) * O1/(O1^2 - O2^2) * [9 + 2 O2^2 z^2 + O2^4 z^4]
    * coth(beta2 O2 / 2) / z^7."""
    pair.require_nondegenerate()
    a1, a2 = pair.atom1, pair.atom2
    w1, w2 = a1.omega, a2.omega
    z = pair.z
    x2 = (w2 * z) ** 2
    return (-_coupling(pair) / (w1 * w2)
            * w1 / (w1 ** 2 - w2 ** 2)
            * (9.0 + 2.0 * x2 + x2 * x2)
            * coth_half(a2.beta, w2) / z ** 7)


def f_b(pair: PairConfig) -> float:
    """f_a with the two oscillators' roles exchanged (atom 1's fluctuations,
    so atom 1's temperature)."""
    pair.require_nondegenerate()
    a1, a2 = pair.atom1, pair.atom2
    w1, w2 = a1.omega, a2.omega
    z = pair.z
    x1 = (w1 * z) ** 2
    return (-_coupling(pair) / (w1 * w2)
            * w2 / (w2 ** 2 - w1 ** 2)
            * (9.0 + 2.0 * x1 + x1 * x1)
            * coth_half(a1.beta, w1) / z ** 7)


def f_london(pair: PairConfig) -> float:
    """Near-field limit of f_a + f_b at zero temperature:
    -9 K / (O1 O2 (O1 + O2) z^7).  Regular at equal frequencies."""
    a1, a2 = pair.atom1, pair.atom2
    w1, w2 = a1.omega, a2.omega
    return (-9.0 * _coupling(pair)
            / (w1 * w2 * (w1 + w2) * pair.z ** 7))


# --- resonance-line component ---------------------------------------------------

def delta_f_c(pair: PairConfig) -> float:
    """Resonance-line part of the induced-dipole force (delta lines of the
    polarizabilities collapsed analytically; thermal weight at the field
    temperature):

    -K/(O1 O2 z^7) [ coth(b O2/2) O1 Phi(O2 z)/(O1^2-O2^2) + (1 <-> 2) ].
    """
    pair.require_nondegenerate()
    a1, a2 = pair.atom1, pair.atom2
    w1, w2 = a1.omega, a2.omega
    z = pair.z
    beta = pair.bath.beta
    term2 = (coth_half(beta, w2) * w1 / (w1 ** 2 - w2 ** 2)
             * resonance_bracket_value(w2 * z))
    term1 = (coth_half(beta, w1) * w2 / (w2 ** 2 - w1 ** 2)
             * resonance_bracket_value(w1 * z))
    return -_coupling(pair) / (w1 * w2) * (term2 + term1) / z ** 7


# --- far-field (asymptotic) forms -----------------------------------------------

def f_a_farfield(pair: PairConfig) -> float:
    """Leading non-oscillatory far-field form of f_a: -K O2^3/(O1^2 - O2^2)
    coth(beta2 O2/2) / z^3."""
    pair.require_nondegenerate()
    a1, a2 = pair.atom1, pair.atom2
    w1, w2 = a1.omega, a2.omega
    return (-_coupling(pair) * w2 ** 3 / (w1 ** 2 - w2 ** 2)
            * coth_half(a2.beta, w2) / pair.z ** 3)


def f_b_farfield(pair: PairConfig) -> float:
    pair.require_nondegenerate()
    a1, a2 = pair.atom1, pair.atom2
    w1, w2 = a1.omega, a2.omega
    return (-_coupling(pair) * w1 ** 3 / (w2 ** 2 - w1 ** 2)
            * coth_half(a1.beta, w1) / pair.z ** 3)


def delta_f_c_farfield(pair: PairConfig) -> float:
    """Non-oscillatory far-field form of delta_f_c:
    +K/(O1 O2) [O1 O2^4 coth(b O2/2)/(O1^2-O2^2) + (1 <-> 2)] / z^3.
    Cancels f_a_farfield + f_b_farfield exactly in global equilibrium."""
    pair.require_nondegenerate()
    a1, a2 = pair.atom1, pair.atom2
    w1, w2 = a1.omega, a2.omega
    beta = pair.bath.beta
    bracket = (w1 * w2 ** 4 * coth_half(beta, w2) / (w1 ** 2 - w2 ** 2)
               + w2 * w1 ** 4 * coth_half(beta, w1) / (w2 ** 2 - w1 ** 2))
    return _coupling(pair) / (w1 * w2) * bracket / pair.z ** 3


def f_noneq(pair: PairConfig) -> float:
    """Out-of-equilibrium far-field force:

    -K/2 * ... = -q1^2 q2^2/(8 pi^2 mu1 mu2) { O2^3/(O1^2-O2^2)
    [n(b2 O2) - n(b O2)] + O1^3/(O2^2-O1^2) [n(b1 O1) - n(b O1)] } / z^3.

    Equals the sum of the three far-field forms above for any temperature
    assignment, and vanishes identically when both atoms share the field
    temperature.  The exchange term swaps (Omega, beta) per atom; the
    symmetric mass product is untouched.
    """
    pair.require_nondegenerate()
    a1, a2 = pair.atom1, pair.atom2
    w1, w2 = a1.omega, a2.omega
    beta = pair.bath.beta
    term2 = (w2 ** 3 / (w1 ** 2 - w2 ** 2)
             * (planck_n(a2.beta, w2) - planck_n(beta, w2)))
    term1 = (w1 ** 3 / (w2 ** 2 - w1 ** 2)
             * (planck_n(a1.beta, w1) - planck_n(beta, w1)))
    return -2.0 * _coupling(pair) * (term2 + term1) / pair.z ** 3


def f_cp_farfield(pair: PairConfig) -> float:
    """-161/(4 pi) a1(0) a2(0) / z^8, the retarded far-field asymptote of the
    full zero-temperature force."""
    a10 = dynamic_polarizability(pair.atom1, 0.0)
    a20 = dynamic_polarizability(pair.atom2, 0.0)
    return -161.0 / (4.0 * math.pi) * a10 * a20 / pair.z ** 8


# --- assembly -------------------------------------------------------------------

_EVALUATORS = {
    "fA": (f_a, "closed-form"),
    "fB": (f_b, "closed-form"),
    "delta_fC": (delta_f_c, "closed-form"),
    "london_nearfield": (f_london, "asymptotic"),
    "cp_farfield": (f_cp_farfield, "asymptotic"),
    "noneq": (f_noneq, "asymptotic"),
}


def total_force(pair: PairConfig, sel: ComponentSelection,
                spec: quadrature.QuadratureSpec | None = None) -> ForceBreakdown:
    """Evaluate every selected component at pair.z and sum them.

    Component failures are re-raised as ComponentError carrying the component
    name.  Asymptotic components outside their advisory validity window add a
    note to the breakdown; the engine never switches formulas silently.
    """
    out = ForceBreakdown(z=pair.z)
    notes = []
    x = max(pair.atom1.omega, pair.atom2.omega) * pair.z
    total = 0.0

    for name in sel.active():
        try:
            if name == "fC_integral":
                value = quadrature.integrate_fc(pair, spec)
                method = "quadrature"
            elif name == "entanglement":
                from . import entanglement
                value = entanglement.f_ent_auto(pair)
                method = "closed-form"
            else:
                fn, method = _EVALUATORS[name]
                value = fn(pair)
        except Exception as exc:
            raise ComponentError(name, exc) from exc
        setattr(out, out._FIELD_OF[name], value)
        out.methods[name] = method
        total += value
        if name == "london_nearfield" and x > NEAR_FIELD_MAX:
            notes.append(f"london_nearfield outside its near-field window "
                         f"(max(Omega) z = {x:.3g} > {NEAR_FIELD_MAX})")
        if name in ("cp_farfield", "noneq") and x < FAR_FIELD_MIN:
            notes.append(f"{name} outside its far-field window "
                         f"(max(Omega) z = {x:.3g} < {FAR_FIELD_MIN})")

    out.total = total
    out.notes = tuple(notes)
    return out
