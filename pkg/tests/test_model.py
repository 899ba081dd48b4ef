import math

import pytest

from pairforce.errors import (ConfigError, DegenerateFrequencyError, DomainError,
                              PoleError)
from pairforce.model import (AtomSpec, BathSpec, ComponentSelection, PairConfig,
                             SqueezeState, ZERO_TEMPERATURE,
                             dynamic_polarizability, polarizability_imaginary_weight)


def make_atom(**kw):
    base = dict(q=1.0, mu=1.0, omega=1.0, total_mass=1e9)
    base.update(kw)
    return AtomSpec(**base)


def make_pair(omega2=1.3, z=1.0, **kw):
    return PairConfig(atom1=make_atom(), atom2=make_atom(omega=omega2),
                      bath=BathSpec(), z=z, **kw)


class TestAtomSpec:
    def test_validation(self):
        with pytest.raises(ConfigError):
            make_atom(q=0.0)
        with pytest.raises(ConfigError):
            make_atom(mu=-1.0)
        with pytest.raises(ConfigError):
            make_atom(omega=0.0)
        with pytest.raises(ConfigError):
            make_atom(total_mass=0.0)
        with pytest.raises(ConfigError):
            make_atom(beta=-2.0)

    def test_zero_temperature_marker(self):
        atom = make_atom()
        assert atom.beta == ZERO_TEMPERATURE
        assert math.isinf(atom.beta)


class TestPolarizability:
    def test_static_limit(self):
        atom = make_atom(q=2.0, mu=3.0, omega=5.0)
        expect = 4.0 / (4.0 * math.pi * 3.0 * 25.0)
        assert dynamic_polarizability(atom, 0.0) == pytest.approx(expect, rel=1e-14)

    def test_half_resonance(self):
        atom = make_atom()
        a0 = dynamic_polarizability(atom, 0.0)
        assert dynamic_polarizability(atom, 0.5) == pytest.approx(4.0 / 3.0 * a0, rel=1e-14)

    def test_pole(self):
        with pytest.raises(PoleError):
            dynamic_polarizability(make_atom(), 1.0)

    def test_negative_above_resonance_monotone_tail(self):
        atom = make_atom()
        prev = None
        for w in (1.5, 2.0, 3.0, 5.0, 10.0):
            val = dynamic_polarizability(atom, w)
            assert val < 0
            if prev is not None:
                assert val > prev   # rises toward zero like -q^2/(4 pi mu w^2)
            prev = val
        w = 1e4
        assert dynamic_polarizability(atom, w) == pytest.approx(
            -1.0 / (4.0 * math.pi * w ** 2), rel=1e-7)


class TestImaginaryWeight:
    def test_unit_value(self):
        assert polarizability_imaginary_weight(make_atom()) == pytest.approx(0.125, abs=1e-15)

    def test_charge_scaling_and_positivity(self):
        a = make_atom()
        b = make_atom(q=2.0)
        assert polarizability_imaginary_weight(b) == pytest.approx(
            4.0 * polarizability_imaginary_weight(a), rel=1e-14)
        assert polarizability_imaginary_weight(make_atom(q=-1.5, mu=0.3, omega=7.0)) > 0


class TestSqueezeState:
    def test_positivity(self):
        with pytest.raises(ConfigError):
            SqueezeState((1.0, 1.0, -1.0), (1.0, 1.0, 1.0))

    def test_isotropy_flag(self):
        assert SqueezeState.isotropic_state(2.0, 3.0).isotropic
        assert not SqueezeState((2.0, 2.0, 2.1), (3.0,) * 3).isotropic

    def test_tilde_round_trip(self):
        st = SqueezeState.from_tilde((1.5, 2.0, 0.5), (0.7, 0.9, 1.1),
                                     mu=2.0, omega=3.0)
        at, bt = st.tilde(2.0, 3.0)
        assert at == pytest.approx((1.5, 2.0, 0.5), rel=1e-14)
        assert bt == pytest.approx((0.7, 0.9, 1.1), rel=1e-14)


class TestPairConfig:
    def test_z_positive(self):
        with pytest.raises(ConfigError):
            make_pair(z=0.0)

    def test_degeneracy_guard(self):
        pair = make_pair(omega2=1.0 + 1e-9)
        with pytest.raises(DegenerateFrequencyError):
            pair.require_nondegenerate()
        make_pair(omega2=1.3).require_nondegenerate()

    def test_at_replaces_z(self):
        pair = make_pair(z=1.0)
        assert pair.at(2.5).z == 2.5
        assert pair.z == 1.0


class TestComponentSelection:
    def test_requires_one(self):
        with pytest.raises(ConfigError):
            ComponentSelection()

    def test_conflicts(self):
        with pytest.raises(ConfigError):
            ComponentSelection(london_nearfield=True, fA=True)
        with pytest.raises(ConfigError):
            ComponentSelection(cp_farfield=True, fC_integral=True)
        with pytest.raises(ConfigError):
            ComponentSelection(noneq=True, delta_fC=True)

    def test_from_names(self):
        sel = ComponentSelection.from_names(["fA", "fB"])
        assert sel.active() == ("fA", "fB")
        with pytest.raises(ConfigError):
            ComponentSelection.from_names(["london"])
