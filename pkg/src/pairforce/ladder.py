"""Exact calculus on trigonometric-polynomial series in the separation z.

A :class:`TrigSeries` is a finite sum of terms

    c * omega^k * z^n * {1 | cos(m omega z) | sin(m omega z)}

with exact rational c, integer k, n and nonnegative integer m.  The class
implements the repeated operator L = (1/z) d/dz ("ladder"), products reduced
to the canonical {1, cos, sin} basis, exact Laurent expansion in x = omega z,
and numeric evaluation.  Floating point only ever appears at evaluation time,
so series identities are decidable equalities.

Two derived objects live here because they are pure ladder algebra:

* the combined frequency-integral bracket of the induced-dipole force,
  rebuilt from its four ladder pieces and checked term by term against the
  stored target polynomial, and
* the static entanglement kernel [z^3 L^3 + 5 z L^2](g/z).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

from .errors import IntegrandMismatchError, TamperedTargetError

KINDS = ("const", "cos", "sin")

# Key: (wpow, zpow, kind, m).  "const" always has m == 0.
TermKey = tuple


def _normalize(coeff: Fraction, wpow: int, zpow: int, kind: str, m: int):
    """Normalize one term to the canonical basis; returns None if it is zero."""
    if coeff == 0:
        return None
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if kind == "const":
        if m != 0:
            raise ValueError("const terms must have m == 0")
        return (coeff, wpow, zpow, "const", 0)
    if m < 0:
        m = -m
        if kind == "sin":
            coeff = -coeff
    if m == 0:
        if kind == "sin":
            return None          # sin(0) = 0
        return (coeff, wpow, zpow, "const", 0)   # cos(0) = 1
    return (coeff, wpow, zpow, kind, m)


class TrigSeries:
    """Immutable canonical trig-polynomial series."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple] = ()):
        """terms: iterable of (coeff, wpow, zpow, kind, m); coeff may be any
        Fraction-convertible exact value (int, Fraction, '3/4')."""
        acc: dict[TermKey, Fraction] = {}
        for coeff, wpow, zpow, kind, m in terms:
            t = _normalize(Fraction(coeff), int(wpow), int(zpow), kind, int(m))
            if t is None:
                continue
            c, k, n, kd, mm = t
            key = (k, n, kd, mm)
            acc[key] = acc.get(key, Fraction(0)) + c
        self._terms = tuple(sorted((k, v) for k, v in acc.items() if v != 0))

    # --- construction helpers -------------------------------------------

    @classmethod
    def term(cls, coeff, wpow=0, zpow=0, kind="const", m=0) -> "TrigSeries":
        return cls([(coeff, wpow, zpow, kind, m)])

    @classmethod
    def zero(cls) -> "TrigSeries":
        return cls()

    # --- mapping access ---------------------------------------------------

    @property
    def terms(self) -> tuple:
        """Sorted tuple of ((wpow, zpow, kind, m), coeff)."""
        return self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        return isinstance(other, TrigSeries) and self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    # --- algebra ----------------------------------------------------------

    def __add__(self, other: "TrigSeries") -> "TrigSeries":
        return TrigSeries([(c, *k2) for k2, c in self._iter()] +
                          [(c, *k2) for k2, c in other._iter()])

    def __sub__(self, other: "TrigSeries") -> "TrigSeries":
        return self + other.scale(-1)

    def __neg__(self) -> "TrigSeries":
        return self.scale(-1)

    def _iter(self):
        for (k, n, kd, m), c in self._terms:
            yield (k, n, kd, m), c

    def scale(self, coeff, wpow: int = 0, zpow: int = 0) -> "TrigSeries":
        """Multiply by coeff * omega^wpow * z^zpow."""
        coeff = Fraction(coeff)
        return TrigSeries([(c * coeff, k + wpow, n + zpow, kd, m)
                           for (k, n, kd, m), c in self._iter()])

    def mul(self, other: "TrigSeries") -> "TrigSeries":
        """Product, reduced to the canonical basis by product-to-sum
        identities."""
        out = []
        half = Fraction(1, 2)
        for (k1, n1, kd1, m1), c1 in self._iter():
            for (k2, n2, kd2, m2), c2 in other._iter():
                c = c1 * c2
                k = k1 + k2
                n = n1 + n2
                if kd1 == "const":
                    out.append((c, k, n, kd2, m2))
                elif kd2 == "const":
                    out.append((c, k, n, kd1, m1))
                elif kd1 == "cos" and kd2 == "cos":
                    out.append((c * half, k, n, "cos", m1 - m2))
                    out.append((c * half, k, n, "cos", m1 + m2))
                elif kd1 == "sin" and kd2 == "sin":
                    out.append((c * half, k, n, "cos", m1 - m2))
                    out.append((-c * half, k, n, "cos", m1 + m2))
                elif kd1 == "sin" and kd2 == "cos":
                    out.append((c * half, k, n, "sin", m1 + m2))
                    out.append((c * half, k, n, "sin", m1 - m2))
                else:  # cos * sin
                    out.append((c * half, k, n, "sin", m1 + m2))
                    out.append((-c * half, k, n, "sin", m1 - m2))
        return TrigSeries(out)

    # --- calculus -----------------------------------------------------------

    def ladder(self, nsteps: int = 1) -> "TrigSeries":
        """Apply L = (1/z) d/dz exactly, nsteps times."""
        if nsteps < 0:
            raise ValueError("nsteps must be >= 0")
        s = self
        for _ in range(nsteps):
            out = []
            for (k, n, kd, m), c in s._iter():
                if n != 0:
                    out.append((c * n, k, n - 2, kd, m))
                if kd == "cos":
                    out.append((-c * m, k + 1, n - 1, "sin", m))
                elif kd == "sin":
                    out.append((c * m, k + 1, n - 1, "cos", m))
            s = TrigSeries(out)
        return s

    # --- expansion / evaluation ---------------------------------------------

    def homogeneity_degree(self) -> int:
        """The common value of wpow - zpow, when every term rewrites as
        omega^d * (power of x) * trig(m x) with x = omega z."""
        degs = {k - n for (k, n, _, _), _ in self._iter()}
        if len(degs) > 1:
            raise ValueError(f"series is not x-homogeneous: degrees {sorted(degs)}")
        return degs.pop() if degs else 0

    def laurent_x(self, max_power: int):
        """Exact Laurent coefficients in x = omega z up to x**max_power.

        Returns (d, coeffs) with d = homogeneity degree so that the series
        equals omega^d * sum_j coeffs[j] x^j + O(x^(max_power+1)).
        """
        d = self.homogeneity_degree()
        coeffs: dict[int, Fraction] = {}
        for (k, n, kd, m), c in self._iter():
            if kd == "const":
                coeffs[n] = coeffs.get(n, Fraction(0)) + c
                continue
            # trig Taylor: cos(mx) = sum (-1)^j (m x)^{2j} / (2j)!, etc.
            j = 0
            while True:
                p = 2 * j if kd == "cos" else 2 * j + 1
                power = n + p
                if power > max_power:
                    break
                term = c * Fraction((-1) ** j) * Fraction(m) ** p / math.factorial(p)
                coeffs[power] = coeffs.get(power, Fraction(0)) + term
                j += 1
        return d, {p: c for p, c in sorted(coeffs.items()) if c != 0}

    def evaluate(self, omega, z):
        """Numeric value; omega and z may be floats or numpy arrays."""
        import numpy as np

        total = 0.0
        for (k, n, kd, m), c in self._iter():
            base = float(c) * omega ** k * z ** n
            if kd == "cos":
                base = base * np.cos(m * omega * z)
            elif kd == "sin":
                base = base * np.sin(m * omega * z)
            total = total + base
        return total

    # --- reporting -----------------------------------------------------------

    def to_text(self) -> str:
        """Human-readable term list, used by the verification report."""
        if not self._terms:
            return "0"
        bits = []
        for (k, n, kd, m), c in self._iter():
            s = str(c)
            if k:
                s += f" w^{k}"
            if n:
                s += f" z^{n}"
            if kd != "const":
                s += f" {kd}({m}wz)"
            bits.append(s)
        return "  +  ".join(bits)


def series_equal(a: TrigSeries, b: TrigSeries) -> bool:
    """Exact equality of canonical forms (no tolerance)."""
    return a == b


# --- the combined frequency-integral bracket ---------------------------------

#: How the bracket factors are treated: they multiply the ladder output as
#: plain powers of the final z, i.e. they are not differentiated.
BRACKET_CONVENTION = "brackets multiply after differentiation"

# Ladder pieces: (ladders on the cos(wz)/z factor, ladders on the sin(wz)/z
# factor, bracket z power, bracket coefficient).  The first piece is the
# symmetrized pair with weight 1/2 each.
_FC_PIECES = (
    (Fraction(1, 2), 2, 3, 4, 2),
    (Fraction(1, 2), 3, 2, 4, 2),
    (Fraction(1), 2, 2, 2, 8),
    (Fraction(1), 1, 3, 2, 4),
    (Fraction(1), 1, 2, 0, 20),
)


def fc_integrand_target() -> TrigSeries:
    """The stored target bracket: w z (18 - 8 z^2 w^2 + z^4 w^4) cos(2wz)
    + (-9 + 16 w^2 z^2 - 3 w^4 z^4) sin(2wz)."""
    return TrigSeries([
        (18, 1, 1, "cos", 2), (-8, 3, 3, "cos", 2), (1, 5, 5, "cos", 2),
        (-9, 0, 0, "sin", 2), (16, 2, 2, "sin", 2), (-3, 4, 4, "sin", 2),
    ])


def derive_fc_integrand(target: TrigSeries | None = None) -> TrigSeries:
    """Rebuild the combined bracket from its ladder pieces.

    Each piece applies ladders to cos(wz)/z and sin(wz)/z separately, merges
    them at equal separations, multiplies by the bracket power of z, and the
    weighted sum times z^7 must reproduce the target polynomial exactly.
    Raises :class:`IntegrandMismatchError` with a term-level diff otherwise.
    """
    cos_over_z = TrigSeries.term(1, 0, -1, "cos", 1)
    sin_over_z = TrigSeries.term(1, 0, -1, "sin", 1)

    combined = TrigSeries.zero()
    for weight, n_cos, n_sin, bracket_zpow, bracket_coeff in _FC_PIECES:
        piece = cos_over_z.ladder(n_cos).mul(sin_over_z.ladder(n_sin))
        piece = piece.scale(weight * bracket_coeff, 0, bracket_zpow + 1)
        combined = combined + piece
    combined = combined.scale(1, 0, 7)

    if target is None:
        target = fc_integrand_target()
    if combined != target:
        diff = {}
        got = dict(combined.terms)
        want = dict(target.terms)
        for key in sorted(set(got) | set(want)):
            g = got.get(key, Fraction(0))
            w = want.get(key, Fraction(0))
            if g != w:
                diff[key] = (w, g)
        raise IntegrandMismatchError(
            f"ladder result does not match the stored bracket under the "
            f"convention {BRACKET_CONVENTION!r}; {len(diff)} term(s) differ",
            diff=diff)
    return combined


def derive_ent_kernel(g: TrigSeries) -> TrigSeries:
    """[z^3 L^3 + 5 z L^2] (g / z), exactly."""
    g_over_z = g.scale(1, 0, -1)
    return (g_over_z.ladder(3).scale(1, 0, 3)
            + g_over_z.ladder(2).scale(5, 0, 1))


# --- conjugate resonance bracket ---------------------------------------------

def resonance_bracket_target() -> TrigSeries:
    """Bracket of the resonance-line (delta) force:
    -9 - 2x^2 - x^4 + (9 - 16x^2 + 3x^4) cos 2x + x(18 - 8x^2 + x^4) sin 2x,
    written with x = w z.  Its trig part is the conjugate pair of the
    combined bracket (cos <-> sin with matching signs)."""
    return TrigSeries([
        (-9, 0, 0, "const", 0), (-2, 2, 2, "const", 0), (-1, 4, 4, "const", 0),
        (9, 0, 0, "cos", 2), (-16, 2, 2, "cos", 2), (3, 4, 4, "cos", 2),
        (18, 1, 1, "sin", 2), (-8, 3, 3, "sin", 2), (1, 5, 5, "sin", 2),
    ])


def _self_check() -> None:
    # cheap structural sanity on the stored constants at import time
    t = fc_integrand_target()
    if len(t.terms) != 6 or t.homogeneity_degree() != 0:
        raise TamperedTargetError("combined bracket constant is malformed")


_self_check()
