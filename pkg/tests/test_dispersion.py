import math

import numpy as np
import pytest

from pairforce import dispersion as d
from pairforce import quadrature as q
from pairforce.errors import ComponentError, DegenerateFrequencyError
from pairforce.model import (AtomSpec, BathSpec, ComponentSelection, PairConfig,
                             ZERO_TEMPERATURE)


def make_pair(omega1=1.0, omega2=1.3, z=1.0, beta=math.inf, beta1=math.inf,
              beta2=math.inf, q1=1.0, q2=1.0, mu1=1.0, mu2=1.0):
    return PairConfig(
        atom1=AtomSpec(q=q1, mu=mu1, omega=omega1, total_mass=1e9, beta=beta1),
        atom2=AtomSpec(q=q2, mu=mu2, omega=omega2, total_mass=1e9, beta=beta2),
        bath=BathSpec(beta=beta), z=z)


def random_pair(rng, **kw):
    w1 = rng.uniform(0.5, 2.0)
    w2 = w1 * rng.uniform(1.15, 1.9)
    return make_pair(omega1=w1, omega2=w2,
                     q1=rng.uniform(0.5, 2.0), q2=rng.uniform(0.5, 2.0),
                     mu1=rng.uniform(0.5, 2.0), mu2=rng.uniform(0.5, 2.0),
                     z=rng.uniform(0.5, 3.0), **kw)


class TestFA:
    def test_zero_temperature_form(self):
        pair = make_pair(z=0.7)
        w1, w2, z = 1.0, 1.3, 0.7
        k = 1.0 / (16 * math.pi ** 2)
        x2 = (w2 * z) ** 2
        expect = (-k / (w1 * w2) * w1 / (w1 ** 2 - w2 ** 2)
                  * (9 + 2 * x2 + x2 ** 2) / z ** 7)
        assert d.f_a(pair) == pytest.approx(expect, rel=1e-14)
        # finite temperature multiplies by coth(beta2 omega2 / 2)
        warm = make_pair(z=0.7, beta2=2.0)
        assert d.f_a(warm) == pytest.approx(
            expect / math.tanh(2.0 * 1.3 / 2), rel=1e-13)

    def test_far_field_limit(self):
        pair = make_pair(z=4000.0, beta2=1.5)
        target = d.f_a_farfield(pair)
        assert d.f_a(pair) == pytest.approx(target, rel=1e-6)

    def test_charge_scaling(self):
        pair = make_pair()
        assert d.f_a(make_pair(q1=2.0)) == pytest.approx(4 * d.f_a(pair), rel=1e-14)

    def test_degeneracy_guard(self):
        with pytest.raises(DegenerateFrequencyError):
            d.f_a(make_pair(omega2=1.0 + 1e-9))


class TestFB:
    def test_swap_definition(self):
        pair = make_pair(q1=1.1, q2=0.8, mu1=0.6, mu2=1.7, beta1=2.0, beta2=5.0)
        swapped = PairConfig(atom1=pair.atom2, atom2=pair.atom1,
                             bath=pair.bath, z=pair.z)
        assert d.f_b(pair) == pytest.approx(d.f_a(swapped), rel=1e-14)

    def test_sign_flips_with_frequency_order(self):
        lo_hi = d.f_b(make_pair(omega1=1.0, omega2=1.3))
        hi_lo = d.f_b(make_pair(omega1=1.3, omega2=1.0))
        assert lo_hi * hi_lo < 0


class TestLondon:
    def test_equal_atoms_closed_form(self):
        pair = make_pair(omega1=1.0, omega2=1.0, z=0.5, q1=1.2, q2=1.2,
                         mu1=0.9, mu2=0.9)
        expect = -9 * 1.2 ** 4 / (32 * math.pi ** 2 * 0.9 ** 2 * 1.0 ** 3 * 0.5 ** 7)
        assert d.f_london(pair) == pytest.approx(expect, rel=1e-14)

    def test_power_law(self):
        pair = make_pair(z=1.0)
        assert d.f_london(pair.at(2.0)) / d.f_london(pair) == pytest.approx(2.0 ** -7)

    def test_near_field_agreement(self):
        pair = make_pair(z=1e-3 / 1.3)
        total = d.f_a(pair) + d.f_b(pair)
        assert (total - d.f_london(pair)) / d.f_london(pair) == pytest.approx(0.0, abs=1e-3)

    def test_always_attractive(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            assert d.f_london(random_pair(rng)) < 0


class TestDeltaFC:
    def test_far_field_asymptote(self):
        pair = make_pair(z=3000.0, beta=0.9)
        assert d.delta_f_c(pair) == pytest.approx(
            d.delta_f_c_farfield(pair), rel=2e-2)

    def test_subleading_near_field(self):
        pair = make_pair(z=1e-2 / 1.3)
        assert abs(d.delta_f_c(pair)) < 1e-6 * abs(d.f_london(pair))

    def test_resonance_bracket_small_x_matches_direct(self):
        # series and direct branches agree where both are reliable
        for x in (0.45, 0.499, 0.501, 0.6):
            series_like = d.resonance_bracket_value(x)
            x2 = x * x
            direct = (-9 - 2 * x2 - x2 * x2
                      + (9 - 16 * x2 + 3 * x2 * x2) * math.cos(2 * x)
                      + x * (18 - 8 * x2 + x2 * x2) * math.sin(2 * x))
            assert series_like == pytest.approx(direct, rel=1e-7, abs=1e-18)

    def test_bracket_vanishes_at_zero(self):
        assert d.resonance_bracket_value(0.0) == 0.0


class TestEquilibriumCancellation:
    def test_exact_cancellation_random(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            beta = rng.uniform(0.3, 4.0)
            pair = random_pair(rng, beta=beta, beta1=beta, beta2=beta)
            parts = [d.f_a_farfield(pair), d.f_b_farfield(pair),
                     d.delta_f_c_farfield(pair)]
            assert abs(sum(parts)) <= 1e-12 * max(abs(p) for p in parts)

    def test_zero_temperature_cancellation(self):
        pair = make_pair()
        parts = [d.f_a_farfield(pair), d.f_b_farfield(pair),
                 d.delta_f_c_farfield(pair)]
        assert abs(sum(parts)) <= 1e-12 * max(abs(p) for p in parts)

    def test_noneq_equals_farfield_residual(self):
        rng = np.random.default_rng(12)
        for _ in range(10):
            pair = random_pair(rng, beta=rng.uniform(0.4, 3.0),
                               beta1=rng.uniform(0.4, 3.0),
                               beta2=rng.uniform(0.4, 3.0))
            residual = (d.f_a_farfield(pair) + d.f_b_farfield(pair)
                        + d.delta_f_c_farfield(pair))
            assert d.f_noneq(pair) == pytest.approx(residual, rel=1e-10)


class TestNoneq:
    def test_global_equilibrium_is_zero(self):
        pair = make_pair(beta=1.2, beta1=1.2, beta2=1.2)
        assert d.f_noneq(pair) == 0.0

    def test_z_cubed_law(self):
        pair = make_pair(beta=1.0, beta1=2.0, beta2=3.0)
        assert d.f_noneq(pair.at(2.0)) / d.f_noneq(pair) == pytest.approx(0.125, rel=1e-14)


class TestCpFarfield:
    def test_equal_atoms_value(self):
        pair = make_pair(omega1=2.0, omega2=2.0, z=1.5)
        a0 = 1.0 / (4 * math.pi * 4.0)
        expect = -161 / (4 * math.pi) * a0 ** 2 / 1.5 ** 8
        assert d.f_cp_farfield(pair) == pytest.approx(expect, rel=1e-14)

    def test_crossover_with_london_exists(self):
        pair = make_pair()
        r1 = d.f_cp_farfield(pair) / d.f_london(pair)
        r2 = d.f_cp_farfield(pair.at(2.0)) / d.f_london(pair.at(2.0))
        assert r2 == pytest.approx(r1 / 2.0, rel=1e-12)

    def test_matches_oracle_far_field(self):
        pair = make_pair(z=50.0)
        assert d.f_cp_farfield(pair) == pytest.approx(
            q.cp_imaginary_frequency_oracle(pair), rel=5e-3)


class TestTotalForce:
    def test_single_component(self):
        pair = make_pair()
        bd = d.total_force(pair, ComponentSelection(london_nearfield=True))
        assert bd.total == d.f_london(pair)
        assert bd.f_london == bd.total
        assert bd.methods == {"london_nearfield": "asymptotic"}

    def test_sum_and_tags(self):
        pair = make_pair(z=0.4)
        sel = ComponentSelection(fA=True, fB=True, delta_fC=True)
        bd = d.total_force(pair, sel)
        assert bd.total == pytest.approx(
            d.f_a(pair) + d.f_b(pair) + d.delta_f_c(pair), rel=1e-14)
        assert bd.methods["fA"] == "closed-form"

    def test_swap_symmetry(self):
        pair = make_pair(q1=1.1, q2=0.8, mu1=0.6, mu2=1.7, z=0.8)
        swapped = PairConfig(atom1=pair.atom2, atom2=pair.atom1,
                             bath=pair.bath, z=pair.z)
        sel = ComponentSelection(fA=True, fB=True, delta_fC=True,
                                 london_nearfield=False)
        a = d.total_force(pair, sel).total
        b = d.total_force(swapped, sel).total
        assert a == pytest.approx(b, rel=1e-13)

    def test_component_error_attribution(self):
        pair = make_pair(omega2=1.0 + 1e-9)
        with pytest.raises(ComponentError) as exc:
            d.total_force(pair, ComponentSelection(fA=True))
        assert exc.value.component == "fA"

    def test_validity_notes(self):
        pair = make_pair(z=5.0)   # max(Omega) z = 6.5, outside near field
        bd = d.total_force(pair, ComponentSelection(london_nearfield=True))
        assert any("near-field" in n for n in bd.notes)

    def test_zero_temperature_continuity(self):
        cold = make_pair(beta=1e3 / 1.3, beta1=1e3 / 1.3, beta2=1e3 / 1.3, z=0.7)
        zero = make_pair(z=0.7)
        for fn in (d.f_a, d.f_b, d.delta_f_c):
            assert fn(cold) == pytest.approx(fn(zero), rel=1e-6)
