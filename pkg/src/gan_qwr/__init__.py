"""Subbands, donor binding and intersubband optics of GaN/AlN core/shell wires and dots."""

__version__ = "0.1.0"

from .materials import Geometry, MaterialParams, conduction_offset, constants, material_lookup  # noqa: E402
from .subbands import SubbandState, find_levels, matching_residual, radial_wavefunction  # noqa: E402
from .qdot import QdState, qd_dipole, qd_find_levels  # noqa: E402
from .donor import DonorState, QuadratureSpec, binding_energy, energy_expectation, minimize_energy  # noqa: E402
from .coupling import TransitionData, diagonal_dipole_difference, dipole_element, selection_allowed  # noqa: E402
from .response import (  # noqa: E402
    ResponseConfig,
    dielectric_function,
    resonant_susceptibility,
    stationary_density_matrix,
)
from .spectra import (  # noqa: E402
    Spectrum,
    ThermalConfig,
    dos_1d,
    fermi_dirac,
    lorentzian_rate,
    qd_absorption,
    qwr_absorption,
    sheet_density,
)
