import math

import numpy as np
import pytest
from scipy.integrate import quad

from pairforce import quadrature as q
from pairforce.errors import (ConfigError, ConvergenceError,
                              DegenerateFrequencyError, UnsupportedError)
from pairforce.model import AtomSpec, BathSpec, PairConfig


def make_pair(omega1=1.0, omega2=1.3, z=1.0, beta=math.inf, q1=1.0, q2=1.0,
              mu1=1.0, mu2=1.0):
    return PairConfig(
        atom1=AtomSpec(q=q1, mu=mu1, omega=omega1, total_mass=1e9),
        atom2=AtomSpec(q=q2, mu=mu2, omega=omega2, total_mass=1e9),
        bath=BathSpec(beta=beta), z=z)


class TestEngine:
    def test_plain_exponential(self):
        val = q.pv_integral(lambda w: np.exp(-w), [], q.QuadratureSpec())
        assert val == pytest.approx(1.0, rel=1e-6)

    def test_laplace_oscillatory_self_test(self):
        # int_0^inf exp(-eta w) sin(2 w z) dw = 2z / (eta^2 + 4 z^2)
        eta, z = 0.05, 1.7
        val = q.integrate_adaptive(
            lambda w: np.exp(-eta * w) * np.sin(2 * z * w),
            0.0, 45.0 / eta, panel_tol=1e-9, osc_scale=math.pi / (4 * z))
        assert val == pytest.approx(2 * z / (eta ** 2 + 4 * z ** 2), rel=1e-8)

    def test_symmetric_pole_window_is_zero(self):
        # PV of 1/(w - 1) over [0, 2]: the two regular pieces are empty and
        # the folded window integrand vanishes identically
        val = q.pv_integral(lambda w: 1.0 / (w - 1.0), [1.0],
                            q.QuadratureSpec(pole_window=0.999), upper=2.0)
        assert val == pytest.approx(0.0, abs=1e-9)

    def test_pv_against_shrinking_window_oracle(self):
        # PV int_0^inf exp(-eta w)/(1 - w^2) dw, eta = 1e-3
        eta = 1e-3
        f = lambda w: np.exp(-eta * w) / (1.0 - w ** 2)
        val = q.pv_integral(f, [1.0], q.QuadratureSpec(pole_window=0.2),
                            upper=45.0 / eta)

        def brute(d):
            g = lambda w: math.exp(-eta * w) / (1.0 - w * w)
            a, _ = quad(g, 0.0, 1.0 - d, limit=400)
            b, _ = quad(g, 1.0 + d, 45.0 / eta, limit=1000)
            return a + b

        oracle = 2 * brute(1e-6) - brute(2e-6)   # leading-order d extrapolation
        assert val == pytest.approx(oracle, rel=1e-4)

    def test_pole_separation_validation(self):
        with pytest.raises(ConfigError):
            q.pv_integral(lambda w: w, [1.0, 1.1],
                          q.QuadratureSpec(pole_window=0.2), upper=3.0)

    def test_budget_exhaustion_raises(self):
        with pytest.raises(ConvergenceError):
            q.integrate_adaptive(lambda w: np.sin(50.0 * w), 0.0, 1000.0,
                                 panel_tol=1e-12, osc_scale=1e-3, max_panels=64)

    def test_richardson_on_polynomial(self):
        xs = [0.4, 0.2, 0.1, 0.05]
        ys = [3.0 + 2 * x - 7 * x ** 2 for x in xs]
        val, (prev, last) = q.richardson_extrapolate(xs, ys)
        assert val == pytest.approx(3.0, rel=1e-12)
        assert last == pytest.approx(prev, rel=1e-12)


class TestSpecValidation:
    def test_ladder_must_decrease(self):
        with pytest.raises(ConfigError):
            q.QuadratureSpec(eta_ladder=(0.1, 0.2))

    def test_panel_tol_range(self):
        with pytest.raises(ConfigError):
            q.QuadratureSpec(panel_tol=2.0)

    def test_pole_window_guard_in_fc(self):
        pair = make_pair()
        with pytest.raises(ConfigError):
            q.integrate_fc(pair, q.QuadratureSpec(pole_window=0.3))


class TestOracle:
    def test_far_field_asymptote(self):
        from pairforce.dispersion import f_cp_farfield
        for wz in (20.0, 50.0):
            pair = make_pair(z=wz / 1.0)
            assert q.cp_imaginary_frequency_oracle(pair) == pytest.approx(
                f_cp_farfield(pair), rel=5e-3)

    def test_near_field_power_law(self):
        pair = make_pair(z=1e-3)
        r = (q.cp_imaginary_frequency_oracle(pair.at(2e-3))
             / q.cp_imaginary_frequency_oracle(pair))
        assert r == pytest.approx(2.0 ** -7, rel=1e-4)

    def test_swap_symmetry(self):
        pair = make_pair(q1=1.2, q2=0.7, mu1=0.9, mu2=1.8, z=2.0)
        swapped = PairConfig(atom1=pair.atom2, atom2=pair.atom1,
                             bath=pair.bath, z=pair.z)
        assert q.cp_imaginary_frequency_oracle(pair) == pytest.approx(
            q.cp_imaginary_frequency_oracle(swapped), rel=1e-12)

    def test_finite_temperature_unsupported(self):
        with pytest.raises(UnsupportedError):
            q.cp_imaginary_frequency_oracle(make_pair(beta=10.0))


class TestIntegrateFc:
    def test_degenerate_guard(self):
        with pytest.raises(DegenerateFrequencyError):
            q.integrate_fc(make_pair(omega2=1.0 + 1e-9))

    def test_dual_route_identity_moderate_separation(self):
        # assembled real-axis total against the independent Wick route
        from pairforce.dispersion import delta_f_c, f_a, f_b
        for wz in (0.5, 2.0):
            pair = make_pair(z=wz / 1.3)
            total = (f_a(pair) + f_b(pair) + delta_f_c(pair)
                     + q.integrate_fc(pair))
            oracle = q.cp_imaginary_frequency_oracle(pair)
            assert total == pytest.approx(oracle, rel=1e-8)

    def test_coupling_rescaling_exact(self):
        pair = make_pair(z=0.8)
        scaled = make_pair(z=0.8, q1=2.0, q2=2.0)
        assert q.integrate_fc(scaled) == 16.0 * q.integrate_fc(pair)

    def test_temperature_continuity(self):
        pair0 = make_pair(z=1.0)
        cold = make_pair(z=1.0, beta=1e3 / 1.3)
        v0 = q.integrate_fc(pair0)
        vc = q.integrate_fc(cold)
        assert vc == pytest.approx(v0, rel=3e-6)

    def test_doubling_budget_stable(self):
        pair = make_pair(z=1.0)
        a = q.integrate_fc(pair, q.QuadratureSpec(max_panels=100_000))
        b = q.integrate_fc(pair, q.QuadratureSpec(max_panels=200_000))
        assert b == pytest.approx(a, rel=1e-6)

    def test_extrapolation_rungs_settle(self):
        # the invariant: the last two extrapolants agree within panel_tol
        pair = make_pair(z=1.0)
        spec = q.QuadratureSpec()
        etas = q._eta_ladder(pair, spec)
        arrs = q._bracket_arrays()
        from pairforce import kernels
        vals = []
        for eta in etas:
            f = lambda w, _e=eta: kernels.fc_integrand(
                np.ascontiguousarray(w, dtype=float), pair.z, 0.0, _e,
                1.0, 1.69, arrs["cos"], arrs["sin"], arrs["taylor"], 0.5)
            vals.append(q.pv_integral(f, [1.0, 1.3],
                                      q.QuadratureSpec(pole_window=0.3 / 8),
                                      upper=45.0 / eta,
                                      osc_scale=math.pi / (4 * pair.z)))
        _, (prev, last) = q.richardson_extrapolate(etas, vals)
        assert abs(last - prev) <= spec.panel_tol * abs(last)

    def test_finite_temperature_value_is_finite_and_thermal(self):
        hot = q.integrate_fc(make_pair(z=1.0, beta=0.5))
        cold = q.integrate_fc(make_pair(z=1.0, beta=1e3))
        assert math.isfinite(hot) and math.isfinite(cold)
        assert abs(hot) > abs(cold)   # coth enhancement
