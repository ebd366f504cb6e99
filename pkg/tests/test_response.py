import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from gan_qwr.coupling import TransitionData
from gan_qwr.errors import SingularityError
from gan_qwr.response import (FIELD_TO_MEV, ResponseConfig, dielectric_function, resonant_susceptibility,
                              stationary_density_matrix, susceptibility_prefactor)
from oracles import liouville_components

T = TransitionData.synthetic(1.05, 127.0)


def test_no_drive_no_coherence():
    rho = stationary_density_matrix(100.0, T, 10.0, 0.0)
    assert rho.rho21 == 0 and rho.rho12 == 0 and rho.rho11 == 0


def test_on_resonance_imaginary():
    E0 = 1e-3
    rho = stationary_density_matrix(T.energy_gap, T, 10.0, E0)
    assert rho.rho21.real == pytest.approx(0.0, abs=1e-18)
    assert abs(rho.rho21) == pytest.approx(T.dipole_moment * E0 * FIELD_TO_MEV / 10.0, rel=1e-14)


def test_singular_without_damping():
    with pytest.raises(SingularityError):
        stationary_density_matrix(T.energy_gap, T, 0.0, 1e-3)


@pytest.mark.parametrize("kw", [dict(gamma=0.0), dict(volume_norm=-1.0), dict(background_eps=0.5)])
def test_config_invariants(kw):
    with pytest.raises(ValueError):
        ResponseConfig(**kw)


def test_liouville_oracle():
    hw = np.linspace(0.2, 2.0, 201) * T.energy_gap
    E0 = 1e-7  # weak drive: the model has no population relaxation
    c_minus, c_plus = liouville_components(hw, T.energy_gap, T.dipole_moment * E0 * FIELD_TO_MEV, 10.0)
    rho = [stationary_density_matrix(h, T, 10.0, E0) for h in hw]
    np.testing.assert_allclose(c_minus, [r.rho21 for r in rho], rtol=1e-3)
    np.testing.assert_allclose(np.conj(c_plus), [r.rho12 for r in rho], rtol=1e-3)
    chi_ode = susceptibility_prefactor(T, 1.0) * (c_minus + np.conj(c_plus)) / (T.dipole_moment * E0 * FIELD_TO_MEV)
    np.testing.assert_allclose(chi_ode, resonant_susceptibility(hw, T, ResponseConfig()), rtol=1e-3)


def test_two_pole_form_exact():
    hw = np.linspace(0, 400, 81)
    g = 10.0
    pref = susceptibility_prefactor(T, 1.0)
    ref = pref * (1 / (T.energy_gap + hw + 1j * g) + 1 / (T.energy_gap - hw - 1j * g))
    assert np.array_equal(resonant_susceptibility(hw, T, ResponseConfig(field=0.3)), ref)


def test_static_value_positive_real():
    chi0 = resonant_susceptibility(0.0, T, ResponseConfig())
    pref = susceptibility_prefactor(T, 1.0)
    assert chi0.imag == 0.0
    assert chi0.real == pytest.approx(pref * 2 * 127 / (127**2 + 100), rel=1e-14)


def test_high_frequency_decay():
    cfg = ResponseConfig()
    assert abs(resonant_susceptibility(10 * T.energy_gap, T, cfg)) < 0.05 * abs(resonant_susceptibility(0.0, T, cfg))


def test_kramers_kronig_static():
    cfg = ResponseConfig()
    im = lambda w: resonant_susceptibility(w, T, cfg).imag / w  # noqa: E731
    E = T.energy_gap
    kk = 2 / np.pi * (quad(im, 0, E, limit=400)[0] + quad(im, E, 20 * E, limit=400)[0])
    assert kk == pytest.approx(resonant_susceptibility(0.0, T, cfg).real, rel=0.03)


def test_absorption_peak_at_gap():
    grid = np.arange(0.0, 400.0, 0.5)
    r = dielectric_function(grid, T, ResponseConfig())
    assert abs(grid[np.argmax(r.absorptive)] - T.energy_gap) <= 0.25
    assert np.all(r.absorptive[1:] > 0)


def test_background_only_without_coupling():
    r = dielectric_function([0.0, 50.0, 127.0], TransitionData.synthetic(0.0, 127.0), ResponseConfig(background_eps=9.56))
    assert np.all(r.eps == 9.56)


def test_grid_must_increase():
    with pytest.raises(ValueError):
        dielectric_function([1.0, 0.5], T, ResponseConfig())


@settings(max_examples=50, deadline=None)
@given(st.floats(0.0, 2000.0), st.floats(1.0, 50.0), st.floats(20.0, 500.0))
def test_bounded_by_linewidth_scale(hw, gamma, gap):
    t = TransitionData.synthetic(1.0, gap)
    cfg = ResponseConfig(gamma=gamma)
    assert abs(resonant_susceptibility(hw, t, cfg)) <= 2 * susceptibility_prefactor(t, 1.0) / gamma


def test_delta_diag_term_enters():
    t = TransitionData.synthetic(1.0, 127.0, delta_diag=0.5)
    a = resonant_susceptibility(60.0, t, ResponseConfig(field=0.0))
    b = resonant_susceptibility(60.0, t, ResponseConfig(field=0.01))
    assert a != b
