import numpy as np
import pytest
from numpy.polynomial import legendre
from scipy.integrate import trapezoid

from gan_qwr.errors import ContractError
from gan_qwr.materials import Geometry
from gan_qwr.qdot import _angular_factor, as_sphere, dot_volume, qd_dipole, qd_find_levels
from gan_qwr.subbands import find_levels, radial_wavefunction


@pytest.fixture(scope="module")
def dot4():
    return as_sphere(Geometry.from_ids(4.0))


def test_requires_sphere(geo4):
    with pytest.raises(ContractError):
        qd_find_levels(0, geo4)


def test_levels_and_ordering(dot4):
    assert qd_find_levels(0, dot4, 1)[0].energy == pytest.approx(140.330, abs=0.01)
    assert qd_find_levels(1, dot4, 1)[0].energy == pytest.approx(286.767, abs=0.01)
    e3 = qd_find_levels(0, as_sphere(Geometry.from_ids(3.0)), 1)[0].energy
    assert e3 > qd_find_levels(0, dot4, 1)[0].energy


@pytest.mark.parametrize("l", [0, 1, 2, 3])
def test_angular_factor_by_quadrature(l):
    x, w = legendre.leggauss(40)

    def Y(k):
        c = np.zeros(k + 1)
        c[k] = 1
        return np.sqrt((2 * k + 1) / (4 * np.pi)) * legendre.legval(x, c)

    val = 2 * np.pi * np.sum(w * Y(l) * Y(l + 1) * x)
    assert val == pytest.approx(_angular_factor(l, l + 1), rel=1e-12)
    assert _angular_factor(0, 1) == pytest.approx(1 / np.sqrt(3), rel=1e-15)


def test_dipole_regression_and_symmetry(dot4):
    s10 = qd_find_levels(0, dot4, 2)
    s11 = qd_find_levels(1, dot4, 1)[0]
    r = np.linspace(0, 60, 600001)
    ref = 4 * np.pi / np.sqrt(3) * trapezoid(radial_wavefunction(s10[0], r) * radial_wavefunction(s11, r) * r**3, r)
    M = qd_dipole(s10[0], s11)
    assert M == pytest.approx(ref, rel=1e-6)
    assert M == pytest.approx(1.39026, abs=1e-4)
    assert qd_dipole(s11, s10[0]) == M
    assert qd_dipole(s10[0], s10[1]) == 0.0


def test_dot_volume(dot4):
    assert dot_volume(dot4) == pytest.approx(4 / 3 * np.pi * 64)


@pytest.mark.parametrize("r0", [3.0, 4.0])
def test_dot_gap_exceeds_wire_gap(r0):
    cyl = Geometry.from_ids(r0)
    sph = as_sphere(cyl)
    gap_qd = qd_find_levels(1, sph, 1)[0].energy - qd_find_levels(0, sph, 1)[0].energy
    gap_qwr = find_levels(1, cyl, 1)[0].energy - find_levels(0, cyl, 1)[0].energy
    assert gap_qd > gap_qwr
