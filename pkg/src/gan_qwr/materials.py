"""Physical constants, bulk material parameters and heterostructure geometry.

Internal units throughout the package: energies in meV, lengths in nm,
temperatures in K. Charges are in units of the elementary charge, so dipole
moments come out in e*nm.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from types import MappingProxyType
from typing import Literal, Optional

from scipy import constants as _c

from .errors import HeterojunctionError, MaterialLookupError


@dataclass(frozen=True)
class PhysicalConstants:
    hbar2_over_2m0: float  # meV nm^2
    coulomb_factor: float  # e^2 / (4 pi eps0), meV nm
    kB: float  # meV / K

    def __post_init__(self):
        for name in ("hbar2_over_2m0", "coulomb_factor", "kB"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


@lru_cache(maxsize=None)
def constants() -> PhysicalConstants:
    """CODATA-derived constants in (meV, nm, K).

    hbar^2/2m0 = 38.0998211 meV nm^2, e^2/4pi eps0 = 1439.96455 meV nm,
    kB = 0.0861733326 meV/K.
    """
    to_mev = 1e3 / _c.e
    return PhysicalConstants(
        hbar2_over_2m0=_c.hbar**2 / (2 * _c.m_e) * to_mev * 1e18,
        coulomb_factor=_c.e**2 / (4 * _c.pi * _c.epsilon_0) * to_mev * 1e9,
        kB=_c.k * to_mev,
    )


@dataclass(frozen=True)
class MaterialParams:
    name: str
    band_gap: float  # meV
    effective_mass_ratio: float
    eps_static: float
    eps_infinity: Optional[float] = None

    def __post_init__(self):
        if not self.band_gap > 0:
            raise ValueError(f"{self.name}: band_gap must be positive")
        if not 0 < self.effective_mass_ratio < 1:
            raise ValueError(f"{self.name}: effective mass ratio must lie in (0, 1)")
        if self.eps_infinity is not None and self.eps_static < self.eps_infinity:
            raise ValueError(f"{self.name}: eps_static < eps_infinity")


# zinc-blende values; no high-frequency permittivity is tabulated for AlN
_BUILTIN = {
    "GaN": MaterialParams("GaN", band_gap=3200.0, effective_mass_ratio=0.13,
                          eps_static=9.56, eps_infinity=5.3),
    "AlN": MaterialParams("AlN", band_gap=5300.0, effective_mass_ratio=0.19,
                          eps_static=8.35),
}
_registry: dict[str, MaterialParams] = dict(_BUILTIN)


def register_material(params: MaterialParams) -> None:
    _registry[params.name] = params


def registered_materials():
    return MappingProxyType(_registry)


def material_lookup(name: str) -> MaterialParams:
    try:
        return _registry[name]
    except KeyError:
        raise MaterialLookupError(name) from None


Shape = Literal["cylinder", "sphere"]
Matching = Literal["mass", "plain"]


@dataclass(frozen=True)
class Geometry:
    """Core/shell heterostructure.

    ``matching`` selects the interface condition: ``"mass"`` keeps
    (1/m*) dR/dr continuous (BenDaniel-Duke), ``"plain"`` keeps dR/dr
    continuous.
    """

    core_radius: float  # nm
    well: MaterialParams
    barrier: MaterialParams
    offset_ratio: float = 0.76
    shape: Shape = "cylinder"
    matching: Matching = "mass"

    def __post_init__(self):
        if not self.core_radius > 0:
            raise ValueError("core_radius must be positive")
        if not 0 < self.offset_ratio <= 1:
            raise ValueError("offset_ratio must lie in (0, 1]")
        if self.shape not in ("cylinder", "sphere"):
            raise ValueError(f"unknown shape {self.shape!r}")
        if self.matching not in ("mass", "plain"):
            raise ValueError(f"unknown matching condition {self.matching!r}")

    @classmethod
    def from_ids(cls, core_radius, well="GaN", barrier="AlN", **kw) -> "Geometry":
        return cls(core_radius, material_lookup(well), material_lookup(barrier), **kw)

    def with_radius(self, core_radius) -> "Geometry":
        return replace(self, core_radius=core_radius)

    @property
    def m_well(self) -> float:
        return self.well.effective_mass_ratio

    @property
    def m_barrier(self) -> float:
        return self.barrier.effective_mass_ratio

    @property
    def barrier_height(self) -> float:
        return conduction_offset(self)


def conduction_offset(geometry: Geometry) -> float:
    """Conduction-band discontinuity offset_ratio * (Eg_barrier - Eg_well), meV."""
    delta = geometry.barrier.band_gap - geometry.well.band_gap
    if delta <= 0:
        raise HeterojunctionError(
            f"barrier {geometry.barrier.name} gap must exceed well {geometry.well.name} gap"
        )
    return geometry.offset_ratio * delta
