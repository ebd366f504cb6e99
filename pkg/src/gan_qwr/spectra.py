"""Absorption-rate spectra for the dot and the wire.

The dot line is the damped golden-rule rate
    W'(hw) = hw |M|^2 / ((E21 - hw)^2 + (hbar gamma)^2).
The wire multiplies it by the 1D density of states of free axial motion,
    D(E, Ei) = sqrt(m*) / (pi hbar sqrt(E - Ei)),
used exactly in this form (it lacks the sqrt(2) of the textbook 1D DOS).
Integrals over D use E = Ei + u^2, which removes the edge singularity.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Literal

import numpy as np
from scipy.special import expit

from .coupling import TransitionData
from .donor import DonorState
from .errors import DomainError
from .materials import constants

log = logging.getLogger(__name__)

EPS_REG = 0.01  # meV, pointwise-mode regularization of the DOS edge
CUTOFF_KT = 40.0

Mode = Literal["detuning", "amplitude", "pointwise"]


@dataclass(frozen=True)
class ThermalConfig:
    temperature: float = 300.0  # K
    fermi_offset: float = 10.0  # meV above the ground subband
    L_w: float = 16.0  # nm^2

    def __post_init__(self):
        if not self.temperature > 0:
            raise ValueError("temperature must be positive")
        if not self.L_w > 0:
            raise ValueError("L_w must be positive")

    @property
    def kT(self):
        return constants().kB * self.temperature


@dataclass(frozen=True)
class Spectrum:
    energies: np.ndarray  # meV
    values: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if np.any(np.diff(self.energies) <= 0):
            raise ValueError("spectrum grid must be strictly increasing")

    @property
    def peak_index(self) -> int:
        return int(np.argmax(self.values))

    @property
    def peak_energy(self) -> float:
        return float(self.energies[self.peak_index])

    @property
    def peak_value(self) -> float:
        return float(self.values[self.peak_index])

    def fwhm(self) -> float:
        """Full width at half maximum, linear interpolation between grid points."""
        v, e = self.values, self.energies
        k = self.peak_index
        half = 0.5 * v[k]
        lo = k
        while lo > 0 and v[lo] > half:
            lo -= 1
        hi = k
        while hi < len(v) - 1 and v[hi] > half:
            hi += 1
        if v[lo] > half or v[hi] > half:
            return float("nan")
        left = e[lo] + (half - v[lo]) * (e[lo + 1] - e[lo]) / (v[lo + 1] - v[lo])
        right = e[hi - 1] + (half - v[hi - 1]) * (e[hi] - e[hi - 1]) / (v[hi] - v[hi - 1])
        return float(right - left)

    def scaled(self, scale: float) -> "Spectrum":
        """Divide by ``scale``; the divisor is kept in the metadata."""
        meta = dict(self.metadata, scale=scale * self.metadata.get("scale", 1.0))
        return replace(self, values=self.values / scale, metadata=meta)

    def normalized(self) -> "Spectrum":
        return self.scaled(self.peak_value)


def fermi_dirac(E, E_F, T):
    if not T > 0:
        raise ValueError("temperature must be positive")
    x = (np.asarray(E, dtype=float) - E_F) / (constants().kB * T)
    out = expit(-x)
    return float(out) if out.ndim == 0 else out


def _dos_prefactor(m_ratio):
    """sqrt(m*) / (pi hbar) in meV^-1/2 nm^-1."""
    return np.sqrt(m_ratio / (2 * constants().hbar2_over_2m0)) / np.pi


def dos_1d(E, E_i, m_ratio):
    """States per meV per nm above the subband edge ``E_i``."""
    d = np.asarray(E, dtype=float) - E_i
    if np.any(d <= 0):
        raise DomainError("1D density of states requires E > E_i")
    out = _dos_prefactor(m_ratio) / np.sqrt(d)
    return float(out) if out.ndim == 0 else out


def _u_rule(u_max, panels=64, nodes=16):
    x, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(0.0, u_max, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    return (mid[:, None] + half[:, None] * x).ravel(), (half[:, None] * w).ravel()


def occupied_line_density(E_i, E_F, T, m_ratio, E_cut=None):
    """int_{E_i}^{E_cut} D(E, E_i) f(E) dE in nm^-1 (u-substitution)."""
    if E_cut is None:
        E_cut = E_F + CUTOFF_KT * constants().kB * T
    if E_cut <= E_i:
        return 0.0
    u, w = _u_rule(np.sqrt(E_cut - E_i))
    # D dE = 2 sqrt(m*) / (pi hbar) du
    return float(2 * _dos_prefactor(m_ratio) * np.dot(w, fermi_dirac(E_i + u * u, E_F, T)))


def lorentzian_rate(hw, t: TransitionData, gamma: float, energy_gap=None):
    if not gamma > 0:
        raise ValueError("gamma must be positive")
    gap = t.energy_gap if energy_gap is None else energy_gap
    hw = np.asarray(hw, dtype=float)
    out = hw * t.dipole_moment**2 / ((gap - hw) ** 2 + gamma**2)
    return float(out) if out.ndim == 0 else out


def qd_absorption(grid, t: TransitionData, gamma: float, radius=None) -> Spectrum:
    grid = np.asarray(grid, dtype=float)
    return Spectrum(grid, lorentzian_rate(grid, t, gamma),
                    {"structure": "QD", "radius": radius, "gamma": gamma})


def _subband(state):
    return state.base if isinstance(state, DonorState) else state


def qwr_absorption(grid, t: TransitionData, thermal: ThermalConfig, gamma: float,
                   mode: Mode = "detuning", radius=None) -> Spectrum:
    """Wire absorption rate on ``grid``.

    ``amplitude``: Lorentzian scaled by the occupied line density.
    ``detuning``: each axial kinetic energy eps above the initial subband edge
    contributes a Lorentzian centred at E21 + eps, weighted by D f; this is
    the Lorentzian convolution of the occupied DOS and gives the asymmetric
    high-energy tail.
    ``pointwise``: D and f evaluated at the detuning hw - E21 (clamped at
    EPS_REG) multiplying the Lorentzian directly.
    """
    grid = np.asarray(grid, dtype=float)
    init = _subband(t.initial)
    E_i = init.energy
    m = init.geometry.m_well
    T = thermal.temperature
    E_F = E_i + thermal.fermi_offset
    E_cut = E_F + CUTOFF_KT * thermal.kT
    if mode == "amplitude":
        values = lorentzian_rate(grid, t, gamma) * occupied_line_density(E_i, E_F, T, m, E_cut)
    elif mode == "detuning":
        if E_cut <= E_i:
            values = np.zeros_like(grid)
        else:
            u, w = _u_rule(np.sqrt(E_cut - E_i))
            eps = u * u
            weight = 2 * _dos_prefactor(m) * w * fermi_dirac(E_i + eps, E_F, T)
            gaps = t.energy_gap + eps
            lor = grid[:, None] * t.dipole_moment**2 / ((gaps[None, :] - grid[:, None]) ** 2 + gamma**2)
            values = lor @ weight
    elif mode == "pointwise":
        det = np.maximum(grid - t.energy_gap, EPS_REG)
        values = dos_1d(E_i + det, E_i, m) * fermi_dirac(E_i + det, E_F, T) * lorentzian_rate(grid, t, gamma)
    else:
        raise ValueError(f"unknown wire lineshape mode {mode!r}")
    return Spectrum(grid, np.asarray(values, dtype=float),
                    {"structure": "QWR", "radius": radius, "gamma": gamma,
                     "temperature": T, "mode": mode})


@dataclass(frozen=True)
class SheetDensity:
    value: float  # nm^-3, i.e. 1/V
    negative: bool

    @property
    def volume(self) -> float:
        """Volume per electron from the magnitude of 1/V."""
        return 1.0 / abs(self.value)


def sheet_density(initial, final, thermal: ThermalConfig) -> SheetDensity:
    """(1/L_w) [int D(E, E_f) f dE - int D(E, E_i) f dE], final minus initial.

    With a populated ground subband the bracket is negative; the sign is kept
    and flagged, and callers wanting a volume use its magnitude.
    """
    si, sf = _subband(initial), _subband(final)
    T = thermal.temperature
    E_F = si.energy + thermal.fermi_offset
    E_cut = E_F + CUTOFF_KT * thermal.kT
    n_f = occupied_line_density(sf.energy, E_F, T, sf.geometry.m_well, E_cut)
    n_i = occupied_line_density(si.energy, E_F, T, si.geometry.m_well, E_cut)
    value = (n_f - n_i) / thermal.L_w
    if value < 0:
        log.info("sheet density bracket negative (%.4g nm^-3); magnitude used for 1/V", value)
    return SheetDensity(float(value), value < 0)
