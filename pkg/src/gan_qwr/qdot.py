"""Spherical core/shell dot used as the comparison structure.

A standard finite spherical well (spherical Bessel j_l inside, decaying k_l
outside) with the same interface rule as the wire. The dot volume used for
the 1/V normalization of the susceptibility is the core volume.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import quad

from . import subbands
from .errors import ContractError
from .materials import Geometry


@dataclass(frozen=True)
class QdState(subbands.SubbandState):
    """Dot state; R is normalized with 4 pi int |R|^2 r^2 dr = 1."""


def as_sphere(geometry: Geometry) -> Geometry:
    return geometry if geometry.shape == "sphere" else replace(geometry, shape="sphere")


def qd_find_levels(l: int, geometry: Geometry, max_n: int = 10) -> list[QdState]:
    if geometry.shape != "sphere":
        raise ContractError("qd_find_levels needs a spherical geometry")
    return subbands.find_levels(l, geometry, max_n)


def dot_volume(geometry: Geometry) -> float:
    return 4.0 / 3.0 * np.pi * geometry.core_radius**3


def _angular_factor(li, lf):
    """<Y_{l,0}| cos(theta) |Y_{l+1,0}>.

    Light polarized along the quantization axis couples the m = 0 partner;
    x-polarized light reaches the same total strength summed over m = +-1.
    """
    l = min(abs(li), abs(lf))
    return (l + 1) / np.sqrt((2 * l + 1) * (2 * l + 3))


def qd_dipole(i: QdState, f: QdState) -> float:
    """|<i| z |f>| in nm (times e), zero unless |l_f - l_i| = 1."""
    for s in (i, f):
        if abs(subbands.state_norm(s) - 1) > 1e-6:
            raise ContractError(f"state ({s.n},{s.l}) is not normalized")
    if abs(abs(f.l) - abs(i.l)) != 1:
        return 0.0
    r0 = i.geometry.core_radius

    def integrand(r):
        return subbands.radial_wavefunction(i, r) * subbands.radial_wavefunction(f, r) * r**3

    inner, _ = quad(integrand, 0, r0, epsabs=0, epsrel=1e-11, limit=200)
    outer, _ = quad(integrand, r0, np.inf, epsabs=0, epsrel=1e-11, limit=200)
    # R carries 1/sqrt(4 pi) from the normalization convention
    return abs(4 * np.pi * (inner + outer) * _angular_factor(i.l, f.l))
