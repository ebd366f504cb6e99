import warnings

import numpy as np
import pytest

from gan_qwr.donor import (BoundaryMinimumWarning, DonorState, QuadratureSpec, binding_energy,
                           energy_expectation, minimize_energy)
from gan_qwr.errors import AccuracyError
from gan_qwr.materials import Geometry, MaterialParams
from gan_qwr.subbands import find_levels
from oracles import fd_donor_ground, tensor_grid_expectation

RYDBERG = 13605.693 * 0.13 / 9.56**2  # effective Rydberg of GaN, meV


@pytest.fixture(scope="module")
def s10(geo4):
    return find_levels(0, geo4, 1)[0]


@pytest.fixture(scope="module")
def d10(s10):
    return minimize_energy(s10)


def test_rydberg_scale():
    assert RYDBERG == pytest.approx(19.35, abs=0.01)


def test_tensor_grid_oracle(s10):
    ref = tensor_grid_expectation(0.05, s10, 9.56, nr=1200, ny=1200)
    assert energy_expectation(0.05, s10) == pytest.approx(ref, abs=0.1)
    ref_free = tensor_grid_expectation(0.05, s10, 9.56, nr=1200, ny=1200, coulomb=False)
    assert energy_expectation(0.05, s10, coulomb=False) == pytest.approx(ref_free, abs=0.1)


def test_free_limit_from_above(s10):
    excess = [energy_expectation(a, s10, coulomb=False) - s10.energy for a in (1e-3, 1e-4, 1e-5)]
    assert all(e > 0 for e in excess)
    assert excess[0] > excess[1] > excess[2]
    assert excess[2] < 0.01


@pytest.mark.parametrize("a", [1e-3, 0.05, 1.0])
def test_coulomb_lowers(s10, a):
    assert energy_expectation(a, s10) < energy_expectation(a, s10, coulomb=False)


def test_invalid_a(s10):
    with pytest.raises(ValueError):
        energy_expectation(0.0, s10)


def test_accuracy_error_carries_estimate(s10):
    crude = QuadratureSpec(interior_panels=2, exterior_panels=2, nodes=3, rtol=1e-12)
    with pytest.raises(AccuracyError) as exc:
        energy_expectation(0.05, s10, quad=crude)
    assert exc.value.estimate > 1e-12


def test_regression_4nm(d10):
    # frozen from this solver; cross-checked against the 2D finite-difference ground state below
    assert d10.binding_energy == pytest.approx(51.149, abs=0.01)
    assert d10.a_opt == pytest.approx(0.0338, rel=0.02)
    assert not d10.at_boundary
    assert d10.energy < d10.base.energy
    assert binding_energy(d10) == pytest.approx(d10.binding_energy, abs=1e-12)


@pytest.mark.slow
def test_variational_bound_vs_fd(geo4, s10):
    ground = fd_donor_ground(geo4, 9.56, h=0.04)
    for a in np.geomspace(1e-3, 3.0, 12):
        assert energy_expectation(a, s10) >= ground - 0.5


def test_binding_relative_to_rydberg(d10):
    # a single-parameter Gaussian overshoots the bulk-like [0.5, 2.5] Ry window in this wire
    assert 0.5 * RYDBERG < d10.binding_energy < 5 * RYDBERG


def test_quadrature_doubling(s10, d10):
    fine = minimize_energy(s10, quad=QuadratureSpec().doubled())
    assert abs(fine.energy - d10.energy) <= 0.05


def test_monotone_binding():
    b = [minimize_energy(find_levels(0, Geometry.from_ids(r), 1)[0]).binding_energy
         for r in (3.0, 3.5, 4.0, 4.5)]
    assert all(x > 0 for x in b)
    assert all(x > y for x, y in zip(b, b[1:]))


def test_excited_state_binding(geo4):
    d11 = minimize_energy(find_levels(1, geo4, 1)[0])
    assert 0 < d11.binding_energy < minimize_energy(find_levels(0, geo4, 1)[0]).binding_energy


def test_no_coulomb_boundary_warning(s10):
    with pytest.warns(BoundaryMinimumWarning):
        d = minimize_energy(s10, coulomb=False)
    assert d.at_boundary
    assert d.a_opt == pytest.approx(1e-5)
    assert d.energy == pytest.approx(s10.energy, abs=0.01)


def test_identity_binding(s10):
    d = DonorState(base=s10, a_opt=1.0, energy=s10.energy, binding_energy=0.0)
    assert binding_energy(d) == 0.0


def _scaled_geometry(s):
    well = MaterialParams("w", 1000.0, 0.13, 9.56)
    barrier = MaterialParams("b", 1000.0 + 2100.0 / s**2, 0.19, 8.35)
    return Geometry(4.0 * s, well, barrier)


def test_length_scaling_without_coulomb():
    s = 2.0
    st1 = find_levels(0, _scaled_geometry(1.0), 1)[0]
    st2 = find_levels(0, _scaled_geometry(s), 1)[0]
    assert st2.energy == pytest.approx(st1.energy / s**2, rel=1e-9)
    for a in (0.01, 0.05, 0.3):
        e1 = energy_expectation(a, st1, coulomb=False)
        e2 = energy_expectation(a / s**2, st2, coulomb=False)
        assert e2 == pytest.approx(e1 / s**2, rel=1e-6)


def test_quiet_without_boundary(s10):
    with warnings.catch_warnings():
        warnings.simplefilter("error", BoundaryMinimumWarning)
        minimize_energy(s10)
