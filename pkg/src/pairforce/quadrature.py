"""Numerical evaluation of the oscillatory frequency integrals.

The primary route is the real-frequency principal-value integral of the
combined bracket against the thermal weight and the UV regulator
exp(-eta w), extrapolated eta -> 0 over a ladder of regulator values.  The
independent cross-check is a Wick-rotated (imaginary-frequency) integral
with a smooth integrand, evaluated through scipy so the two routes share no
quadrature code.

Sign convention of :func:`integrate_fc`: the combined frequency integral
enters the force as +2/(pi z^7) times the principal-value integral.  With
this sign the assembled zero-temperature force (intrinsic-fluctuation terms
+ resonance-line term + this integral) reproduces the standard
Casimir-Polder result at every separation, its known -161/(4 pi) z^-8 far
field, and the London near field; the opposite sign is inconsistent with
all three.  See the package notes on the sign of the printed prefactor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import kernels, ladder
from .errors import (ConfigError, ConvergenceError, ResidueUnstableError,
                     UnsupportedError)
from .model import PairConfig

__all__ = [
    "QuadratureSpec", "pv_integral", "integrate_adaptive",
    "integrate_fc", "cp_imaginary_frequency_oracle", "richardson_extrapolate",
]

# Gauss7/Kronrod15 nodes and weights (positive half; node 0 last).
_XGK = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0])
_WGK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469])


@dataclass(frozen=True)
class QuadratureSpec:
    """Knobs of the principal-value engine.

    eta          base UV regulator (1/eV); None -> 0.2 / max(Omega1, Omega2)
    eta_ladder   decreasing regulator values for the eta -> 0 extrapolation;
                 None -> (eta, eta/2, eta/4)
    pole_window  half-width of the residue-subtraction window around each
                 polarizability pole (eV); None -> min(O1, O2, |O1-O2|)/8
    panel_tol    relative tolerance per accepted panel
    max_panels   total panel budget of one principal-value integral
    """

    eta: float | None = None
    eta_ladder: tuple[float, ...] | None = None
    pole_window: float | None = None
    panel_tol: float = 1e-6
    max_panels: int = 100_000

    def __post_init__(self):
        if self.eta is not None and self.eta <= 0:
            raise ConfigError("QuadratureSpec.eta must be positive")
        if self.eta_ladder is not None:
            lad = tuple(self.eta_ladder)
            if len(lad) < 2 or any(e <= 0 for e in lad):
                raise ConfigError("eta_ladder needs >= 2 positive entries")
            if any(b >= a for a, b in zip(lad, lad[1:])):
                raise ConfigError("eta_ladder must be strictly decreasing")
        if self.pole_window is not None and self.pole_window <= 0:
            raise ConfigError("pole_window must be positive")
        if not 0 < self.panel_tol < 1:
            raise ConfigError("panel_tol must be in (0, 1)")
        if self.max_panels < 16:
            raise ConfigError("max_panels is unreasonably small")


def _gk15(f, a: np.ndarray, b: np.ndarray):
    """Vectorized Gauss7/Kronrod15 on panels [a_i, b_i].

    Returns (kronrod, |kronrod - gauss|).  Panel endpoints are never
    evaluated, so integrable endpoint features are safe.
    """
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    nodes = np.concatenate(
        [c[:, None] - h[:, None] * _XGK[None, :],
         c[:, None] + h[:, None] * _XGK[None, :-1]], axis=1)
    fv = np.asarray(f(nodes.ravel()), dtype=float).reshape(nodes.shape)
    centre = fv[:, 7]
    k15 = _WGK[7] * centre
    g7 = _WG[3] * centre
    for j in range(7):
        pair = fv[:, j] + fv[:, 8 + j]
        k15 = k15 + _WGK[j] * pair
        if j % 2 == 1:
            g7 = g7 + _WG[(j - 1) // 2] * pair
    return k15 * h, np.abs((k15 - g7) * h)


def _initial_edges(a: float, b: float, cap: float, base: float,
                   max_panels: int) -> np.ndarray:
    """Panel edges for [a, b]: widths start at ``base`` and grow linearly
    with distance from ``a`` (logarithmic panel count over long smooth
    tails) but never exceed ``cap`` (so oscillations stay resolved)."""
    span = b - a
    base = min(cap, base, span / 8.0)
    edges = [a]
    w = a
    while w < b and len(edges) <= max_panels:
        width = min(cap, base + 0.25 * (w - a))
        w = min(w + width, b)
        edges.append(w)
    edges[-1] = b
    return np.asarray(edges)


def integrate_adaptive(f, a: float, b: float, *, panel_tol: float = 1e-6,
                       osc_scale: float | None = None,
                       base_scale: float | None = None,
                       min_width: float | None = None,
                       max_panels: int = 100_000,
                       _budget: list | None = None) -> float:
    """Adaptive panel integration of a vectorized callback on [a, b].

    Initial panel widths are capped at ``osc_scale`` (e.g. a quarter
    oscillation period), start at ``base_scale`` near the left edge, and
    every panel is bisected until it passes ``panel_tol`` relative to the
    accumulated magnitude.  ``min_width`` stops refinement where the
    integrand's evaluation noise, not its shape, drives the error estimate
    (e.g. folded pole windows).  Raises ConvergenceError when the panel
    budget runs out.
    """
    if b <= a:
        return 0.0
    if osc_scale is None:
        osc_scale = (b - a) / 64.0
    if base_scale is None:
        base_scale = osc_scale
    edges = _initial_edges(a, b, osc_scale, base_scale, max_panels)
    lo, hi = edges[:-1], edges[1:]
    budget = _budget if _budget is not None else [max_panels]

    total = 0.0
    scale = 0.0
    width_floor = min_width if min_width is not None \
        else 1e-12 * (abs(a) + abs(b) + 1.0)
    for _ in range(64):
        budget[0] -= len(lo)
        if budget[0] < 0:
            raise ConvergenceError(
                "panel budget exhausted",
                diagnostics={"interval": (a, b), "panels_left": budget[0]})
        k15, err = _gk15(f, lo, hi)
        scale = max(scale, float(np.sum(np.abs(k15))))
        floor = panel_tol * max(scale, 1e-300) / max(len(lo), 1)
        bad = err > np.maximum(panel_tol * np.abs(k15), floor)
        bad &= (hi - lo) > width_floor   # below this, splitting is pure noise
        total += float(np.sum(k15[~bad]))
        if not bad.any():
            return total
        mid = 0.5 * (lo[bad] + hi[bad])
        lo = np.concatenate([lo[bad], mid])
        hi = np.concatenate([mid, hi[bad]])
    raise ConvergenceError("refinement depth exhausted",
                           diagnostics={"interval": (a, b)})


def _estimate_residue(f, pole: float, window: float,
                      stencil: float | None = None):
    """Residue of a simple pole from two symmetric stencils; raises when the
    two estimates disagree by more than 1%.  The stencil must stay small
    against the scale on which the regular factor varies (e.g. the
    oscillation period), else the quadratic correction spoils the estimate.
    """
    def est(d):
        up = float(np.asarray(f(np.array([pole + d])))[0])
        dn = float(np.asarray(f(np.array([pole - d])))[0])
        return 0.5 * (d * up - d * dn)

    d1 = window / 16.0 if stencil is None else min(window / 16.0, stencil)
    r1, r2 = est(d1), est(d1 / 2.0)
    scale = max(abs(r1), abs(r2))
    if scale > 0 and abs(r1 - r2) > 0.01 * scale:
        raise ResidueUnstableError(
            f"residue at pole {pole} unstable: {r1:.6e} vs {r2:.6e}")
    return r2


def pv_integral(f: Callable, pole_list: Sequence[float],
                spec: QuadratureSpec | None = None, *,
                upper: float | None = None,
                osc_scale: float | None = None) -> float:
    """Principal value of the integral of ``f`` over [0, upper] with simple
    poles at ``pole_list``.

    ``f`` must accept a numpy array of frequencies and be pure.  Around each
    pole the numerically estimated residue term r/(w - pole) is subtracted
    (its principal value over the symmetric window is zero) and the smooth
    remainder is integrated; everywhere else plain adaptive panels are used.
    With ``upper=None`` the tail is extended geometrically until three
    consecutive blocks are negligible.
    """
    spec = spec or QuadratureSpec()
    poles = sorted(float(p) for p in pole_list)
    if any(p <= 0 for p in poles):
        raise ConfigError("poles must be positive frequencies")

    window = spec.pole_window
    if window is None:
        if poles:
            gaps = [poles[0]] + [b - a for a, b in zip(poles, poles[1:])]
            window = min(gaps) / 8.0
        else:
            window = 1.0
    for a_, b_ in zip(poles, poles[1:]):
        if b_ - a_ <= 2 * window:
            raise ConfigError(
                f"poles {a_} and {b_} closer than twice the pole window {window}")
    if poles and poles[0] <= window:
        raise ConfigError("first pole closer to the origin than the pole window")

    budget = [spec.max_panels]
    total = 0.0

    def regular(a_, b_):
        return integrate_adaptive(f, a_, b_, panel_tol=spec.panel_tol,
                                  osc_scale=osc_scale, base_scale=window,
                                  max_panels=spec.max_panels, _budget=budget)

    cursor = 0.0
    for p in poles:
        total += regular(cursor, p - window)
        # The residue estimate is a stability check on the pole model: the
        # principal value of r/(w - p) over the symmetric window is exactly
        # zero, so the subtracted remainder integrates to the same value as
        # the symmetrized sum f(p+u) + f(p-u), which is smooth at u -> 0 and
        # free of the 1/u cancellation of an explicit subtraction.
        _estimate_residue(f, p, window,
                          stencil=(osc_scale / 16.0) if osc_scale else None)

        def folded(u, _p=p):
            return (np.asarray(f(_p + u), dtype=float)
                    + np.asarray(f(_p - u), dtype=float))

        # min_width: near u = 0 the folded values are a difference of two
        # +-r/u terms, so evaluation noise grows like eps/u^2 and refinement
        # below a hundredth of the window would only chase that noise.
        total += integrate_adaptive(folded, 0.0, window, panel_tol=spec.panel_tol,
                                    osc_scale=min(window / 8, osc_scale or window),
                                    min_width=window / 100.0,
                                    max_panels=spec.max_panels, _budget=budget)
        cursor = p + window

    if upper is not None:
        total += regular(cursor, upper)
        return total

    # open tail: extend geometrically until negligible
    block_lo = cursor
    block_hi = max(4.0 * (poles[-1] if poles else 1.0), block_lo + 4.0, 4.0)
    quiet = 0
    while quiet < 3:
        part = regular(block_lo, block_hi)
        total += part
        if abs(part) <= spec.panel_tol * max(abs(total), 1e-300):
            quiet += 1
        else:
            quiet = 0
        block_lo, block_hi = block_hi, 2.0 * block_hi
        if budget[0] < 0:
            raise ConvergenceError("tail did not settle within the panel budget",
                                   diagnostics={"reached": block_lo})
    return total


def richardson_extrapolate(xs: Sequence[float], ys: Sequence[float]):
    """Neville polynomial extrapolation of (xs, ys) to x = 0.

    Returns (value, last_two_column_values) so callers can judge
    convergence from the final two extrapolants.
    """
    x = [float(v) for v in xs]
    t = [list(map(float, ys))]
    n = len(x)
    if n < 2:
        raise ConfigError("extrapolation needs at least two rungs")
    for k in range(1, n):
        t.append([(t[k - 1][i + 1] * x[i] - t[k - 1][i] * x[i + k])
                  / (x[i] - x[i + k]) for i in range(n - k)])
    return t[-1][0], (t[-2][0] if n >= 2 else t[-1][0], t[-1][0])


# --- the induced-dipole frequency integral -----------------------------------

_BRACKET_CACHE: dict | None = None


def _bracket_arrays():
    """Float coefficient arrays of the combined bracket, derived once from
    the exact ladder result: cos/sin polynomial coefficients in x = w z and
    the small-x Taylor series."""
    global _BRACKET_CACHE
    if _BRACKET_CACHE is None:
        series = ladder.derive_fc_integrand()
        pc = np.zeros(6)
        ps = np.zeros(6)
        for (k, n, kind, m), c in series.terms:
            if m != 2 or k != n:
                raise ConfigError("unexpected bracket structure")
            if kind == "cos":
                pc[n] = float(c)
            elif kind == "sin":
                ps[n] = float(c)
        _, taylor = series.laurent_x(36)
        tay = np.zeros(37)
        for p, c in taylor.items():
            tay[p] = float(c)
        _BRACKET_CACHE = {"cos": pc, "sin": ps, "taylor": tay}
    return _BRACKET_CACHE


def _eta_ladder(pair: PairConfig, spec: QuadratureSpec) -> tuple[float, ...]:
    if spec.eta_ladder is not None:
        return tuple(spec.eta_ladder)
    base = spec.eta
    if base is None:
        base = pair.bath.uv_eta
    if base is None:
        # The integral is analytic in eta only within a disk of radius set by
        # the oscillation scale 2z, so the ladder must sit inside it; for
        # separations beyond the resonance wavelength the frequency scale
        # 1/max(Omega) is the binding one.
        base = 0.2 * min(1.0 / max(pair.atom1.omega, pair.atom2.omega), pair.z)
        return tuple(base / 2 ** k for k in range(6))
    return (base, base / 2.0, base / 4.0)


def _pole_window(pair: PairConfig, spec: QuadratureSpec) -> float:
    w1, w2 = pair.atom1.omega, pair.atom2.omega
    limit = min(w1, w2, abs(w1 - w2))
    window = spec.pole_window if spec.pole_window is not None else limit / 8.0
    if not window < limit / 4.0:
        raise ConfigError(
            f"pole_window {window} must be smaller than "
            f"min(Omega1, Omega2, |Omega1 - Omega2|)/4 = {limit / 4.0}")
    return window


def integrate_fc(pair: PairConfig, spec: QuadratureSpec | None = None) -> float:
    """Principal-value part of the induced-dipole force (eV^2).

    Evaluates +2/(pi z^7) * PV int_0^inf dw a1(w) a2(w) coth(beta w/2)
    B(w z) exp(-eta w), extrapolated eta -> 0 over the regulator ladder.

    This is the smooth-prescription piece of the induced-dipole force only:
    the resonance delta lines are a separate closed form, and the standard
    Casimir-Polder force is recovered by the sum of this integral with the
    intrinsic-fluctuation and resonance-line components, not by this
    integral alone.
    """
    spec = spec or QuadratureSpec()
    pair.require_nondegenerate()
    a1, a2 = pair.atom1, pair.atom2
    z = pair.z
    w1, w2 = a1.omega, a2.omega
    window = _pole_window(pair, spec)
    etas = _eta_ladder(pair, spec)

    arrs = _bracket_arrays()
    beta = pair.bath.beta
    kernel_beta = 0.0 if math.isinf(beta) else beta
    pvspec = QuadratureSpec(pole_window=window, panel_tol=spec.panel_tol,
                            max_panels=spec.max_panels)

    osc = math.pi / (4.0 * z)      # quarter period of trig(2 w z) in w
    vals = []
    for eta in etas:
        def f(w, _eta=eta):
            return kernels.fc_integrand(
                np.ascontiguousarray(w, dtype=float), z, kernel_beta, _eta,
                w1 * w1, w2 * w2, arrs["cos"], arrs["sin"], arrs["taylor"], 0.5)

        upper = 45.0 / eta
        vals.append(pv_integral(f, [w1, w2], pvspec, upper=upper, osc_scale=osc))

    value, (prev, last) = richardson_extrapolate(etas, vals)
    spread = abs(last - prev) / max(abs(last), 1e-300)
    if spread > 10.0 * spec.panel_tol:
        raise ConvergenceError(
            f"eta extrapolation did not settle: relative spread {spread:.3e} "
            f"exceeds 10 * panel_tol = {10 * spec.panel_tol:.1e}",
            diagnostics={"etas": etas, "rungs": vals,
                         "extrapolants": (prev, last)})

    coupling = (a1.q ** 2) * (a2.q ** 2) / (16.0 * math.pi ** 2 * a1.mu * a2.mu)
    return (2.0 / (math.pi * z ** 7)) * coupling * value


# Force-kernel polynomial of the Wick route: d/dz of exp(-2u) applied to the
# potential polynomial 3 + 6u + 5u^2 + 2u^3 + u^4, u = xi z.
_WICK_FORCE_POLY = (18.0, 36.0, 32.0, 16.0, 6.0, 2.0)


def cp_imaginary_frequency_oracle(pair: PairConfig) -> float:
    """Independent zero-temperature check value (eV^2): the standard
    imaginary-frequency form of the dispersion force between two ground-state
    oscillator atoms.  Smooth integrand, no poles; evaluated through scipy
    (no code shared with the principal-value engine).

    Equals the full zero-temperature force: -161/(4 pi) a1(0) a2(0) / z^8 in
    the far field and the London 1/z^7 law in the near field.
    """
    from scipy.integrate import quad

    if not math.isinf(pair.bath.beta):
        raise UnsupportedError(
            "the imaginary-frequency oracle is defined at zero temperature only")
    a1, a2 = pair.atom1, pair.atom2
    z = pair.z
    c1 = a1.q ** 2 / (4.0 * math.pi * a1.mu)
    c2 = a2.q ** 2 / (4.0 * math.pi * a2.mu)

    def g(xi):
        u = xi * z
        poly = 0.0
        for coeff in reversed(_WICK_FORCE_POLY):
            poly = poly * u + coeff
        return (c1 / (a1.omega ** 2 + xi ** 2)
                * c2 / (a2.omega ** 2 + xi ** 2)
                * math.exp(-2.0 * u) * poly)

    val, _err = quad(g, 0.0, np.inf, limit=400, epsabs=0.0, epsrel=1e-11)
    return -val / (math.pi * z ** 7)
