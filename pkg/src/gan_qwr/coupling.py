"""Dipole coupling between subband states for x- or z-polarized light.

For x = r cos(theta) the angular integral of exp(i (l_f - l_i) theta) cos(theta)
is pi when |l_f - l_i| = 1 and zero otherwise, so only the radial overlap
int R_i R_f r^2 dr has to be computed. Dipoles are returned in e*nm.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Union

import numpy as np
from scipy.integrate import quad

from .donor import DonorState
from .errors import ContractError
from .qdot import QdState, qd_dipole
from .subbands import SubbandState, radial_wavefunction, state_norm

State = Union[SubbandState, DonorState]


def selection_allowed(l_i: int, l_f: int) -> bool:
    return abs(l_f - l_i) == 1


def _check_normalized(s):
    if abs(state_norm(s) - 1) > 1e-6:
        raise ContractError(f"state ({s.n},{s.l}) is not normalized")


def angular_factor(l_i: int, l_f: int) -> float:
    return np.pi if selection_allowed(l_i, l_f) else 0.0


def _radial_moment(si, sf, g_i=0.0, g_f=0.0):
    """int R_i R_f exp(-(g_i + g_f) r^2) r^2 dr split at the interface."""
    r0 = si.geometry.core_radius
    g = g_i + g_f

    def integrand(r):
        return radial_wavefunction(si, r) * radial_wavefunction(sf, r) * np.exp(-g * r * r) * r * r

    inner, _ = quad(integrand, 0, r0, epsabs=0, epsrel=1e-10, limit=200)
    outer, _ = quad(integrand, r0, np.inf, epsabs=0, epsrel=1e-10, limit=200)
    return inner + outer


def _gaussian_norm2(s, a):
    """2 pi int R^2 exp(-2 a r^2) r dr * sqrt(pi / 2a)."""
    r0 = s.geometry.core_radius

    def integrand(r):
        return radial_wavefunction(s, r) ** 2 * np.exp(-2 * a * r * r) * r

    inner, _ = quad(integrand, 0, r0, epsabs=0, epsrel=1e-11, limit=200)
    outer, _ = quad(integrand, r0, np.inf, epsabs=0, epsrel=1e-11, limit=200)
    return 2 * np.pi * (inner + outer) * np.sqrt(np.pi / (2 * a))


def dipole_element(i: State, f: State, polarization: Literal["x", "z"] = "x") -> float:
    """|<i| e x |f>| (or e z) in e*nm; both polarizations share the magnitude.

    Donor states carry their Gaussian envelopes; the axial overlap
    int exp(-(a_i + a_f) y^2) dy is included together with the trial norms.
    """
    if polarization not in ("x", "z"):
        raise ValueError(f"unsupported polarization {polarization!r}")
    if isinstance(i, QdState) or isinstance(f, QdState):
        return qd_dipole(i, f)
    bi = i.base if isinstance(i, DonorState) else i
    bf = f.base if isinstance(f, DonorState) else f
    _check_normalized(bi)
    _check_normalized(bf)
    if not selection_allowed(bi.l, bf.l):
        return 0.0
    if isinstance(i, DonorState) or isinstance(f, DonorState):
        ai = i.a_opt if isinstance(i, DonorState) else 0.0
        af = f.a_opt if isinstance(f, DonorState) else 0.0
        if ai == 0.0 or af == 0.0:
            raise ContractError("donor and free states have incompatible axial normalization")
        axial = np.sqrt(np.pi / (ai + af))
        norm = np.sqrt(_gaussian_norm2(bi, ai) * _gaussian_norm2(bf, af))
        return abs(np.pi * _radial_moment(bi, bf, ai, af) * axial / norm)
    return abs(np.pi * _radial_moment(bi, bf))


def diagonal_dipole_difference(i: State, f: State) -> float:
    """M_ii - M_ff; both terms vanish for angular-momentum eigenstates."""
    return dipole_element(i, i) - dipole_element(f, f)


@dataclass(frozen=True)
class TransitionData:
    initial: object
    final: object
    dipole_moment: float  # e nm
    energy_gap: float  # meV
    delta_diag: float = 0.0  # e nm

    @classmethod
    def between(cls, initial, final, polarization="x") -> "TransitionData":
        gap = final.energy - initial.energy
        if gap <= 0:
            raise ContractError("final state must lie above the initial state")
        return cls(initial, final, dipole_element(initial, final, polarization), gap,
                   diagonal_dipole_difference(initial, final))

    @classmethod
    def synthetic(cls, dipole_moment, energy_gap, delta_diag=0.0) -> "TransitionData":
        """Two-level transition without explicit states (tests, calibration)."""
        return cls(None, None, float(dipole_moment), float(energy_gap), float(delta_diag))
