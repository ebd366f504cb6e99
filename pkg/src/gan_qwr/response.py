"""Two-level density-matrix response and the complex dielectric function.

Sign convention: fields vary as exp(-i omega t). With the stationary
solution written this way the resonant susceptibility has Im chi > 0 at
absorption, so the absorptive part reported by this module is +Im eps.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .coupling import TransitionData
from .errors import SingularityError
from .materials import constants

# e * nm * (V/nm) = eV
FIELD_TO_MEV = 1e3


@dataclass(frozen=True)
class ResponseConfig:
    gamma: float = 10.0  # meV, hbar * gamma
    field: float = 0.0  # V/nm, E0
    volume_norm: float = 1.0  # nm^3 per electron
    background_eps: float = 9.56

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")
        if not self.volume_norm > 0:
            raise ValueError("volume_norm must be positive")
        if not self.background_eps >= 1:
            raise ValueError("background_eps must be >= 1")


class DensityMatrix(NamedTuple):
    rho11: complex
    rho12: complex
    rho21: complex
    rho22: complex


@dataclass(frozen=True)
class ComplexResponse:
    energies: np.ndarray  # meV
    chi_res: np.ndarray
    eps: np.ndarray

    @property
    def real(self):
        return self.eps.real

    @property
    def absorptive(self):
        return self.eps.imag


def _drive(t: TransitionData, field: float):
    """(M E0, Delta M E0) in meV."""
    return t.dipole_moment * field * FIELD_TO_MEV, t.delta_diag * field * FIELD_TO_MEV


def stationary_density_matrix(hw: float, t: TransitionData, gamma: float, field: float,
                              population_difference: float = 1.0) -> DensityMatrix:
    """Stationary exp(-i omega t) amplitudes for a fully occupied lower level."""
    me, dme = _drive(t, field)
    den21 = t.energy_gap - hw + dme - 1j * gamma
    den12 = t.energy_gap + hw + dme + 1j * gamma
    den_d = hw + 1j * gamma
    if den21 == 0 or den12 == 0 or den_d == 0:
        raise SingularityError(f"undamped response is singular at hw = {hw} meV")
    rho21 = population_difference * me / den21
    rho12 = population_difference * me / den12
    rho11 = (me * rho12 - me * rho21) / den_d
    return DensityMatrix(rho11, rho12, rho21, -rho11)


def susceptibility_prefactor(t: TransitionData, volume_norm: float) -> float:
    """|M|^2 / (eps0 V) in meV; e^2/eps0 = 4 pi * (e^2 / 4 pi eps0)."""
    return 4 * np.pi * constants().coulomb_factor * t.dipole_moment**2 / volume_norm


def resonant_susceptibility(hw, t: TransitionData, cfg: ResponseConfig):
    hw = np.asarray(hw, dtype=float)
    _, dme = _drive(t, cfg.field)
    e_minus = t.energy_gap - hw + dme - 1j * cfg.gamma
    e_plus = t.energy_gap + hw + dme + 1j * cfg.gamma
    bracket = 1 / e_plus + 1 / e_minus
    if dme != 0:
        bracket = bracket + dme / (hw + 1j * cfg.gamma) * (1 / e_plus - 1 / e_minus)
    chi = susceptibility_prefactor(t, cfg.volume_norm) * bracket
    return complex(chi) if chi.ndim == 0 else chi


def dielectric_function(grid, t: TransitionData, cfg: ResponseConfig) -> ComplexResponse:
    grid = np.asarray(grid, dtype=float)
    if np.any(np.diff(grid) <= 0):
        raise ValueError("energy grid must be strictly increasing")
    chi = resonant_susceptibility(grid, t, cfg)
    return ComplexResponse(grid, chi, cfg.background_eps + chi)
