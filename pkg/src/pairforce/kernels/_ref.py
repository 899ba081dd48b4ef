"""Pure-numpy reference implementation of the hot quadrature kernel.

The compiled backend in ``_fastkern.pyx`` implements the same functions with
identical semantics; ``pairforce.kernels`` picks whichever is available.
"""

from __future__ import annotations

import numpy as np


def coth_half(t):
    """coth(t) for t = beta*omega/2 > 0, series-stabilized at small t."""
    t = np.asarray(t, dtype=float)
    small = t < 1e-4
    ts = np.where(small, 1.0, t)
    out = 1.0 / np.tanh(ts)
    # coth t = 1/t + t/3 - t^3/45 + O(t^5)
    out = np.where(small, 1.0 / np.where(small, t, 1.0) + t / 3.0, out)
    return out


def fc_integrand(w, z, beta, eta, w1sq, w2sq, poly_cos, poly_sin,
                 series, x_switch):
    """Induced-dipole frequency integrand without the coupling prefactor:

        coth(beta w / 2) * B(w z) * exp(-eta w) / ((w1sq - w^2)(w2sq - w^2))

    B(x) = poly_cos(x) cos 2x + poly_sin(x) sin 2x, evaluated through its
    exact Taylor series (``series``) for |x| < x_switch where the direct form
    loses all significant digits to cancellation.  ``beta = 0.0`` means zero
    temperature (coth -> 1).
    """
    w = np.asarray(w, dtype=float)
    x = w * z

    direct = (np.polyval(poly_cos[::-1], x) * np.cos(2.0 * x)
              + np.polyval(poly_sin[::-1], x) * np.sin(2.0 * x))
    small = np.abs(x) < x_switch
    if np.any(small):
        ser = np.polyval(series[::-1], np.where(small, x, 0.0))
        bracket = np.where(small, ser, direct)
    else:
        bracket = direct

    val = bracket * np.exp(-eta * w) / ((w1sq - w * w) * (w2sq - w * w))
    if beta != 0.0:
        val = val * coth_half(0.5 * beta * w)
    return val
