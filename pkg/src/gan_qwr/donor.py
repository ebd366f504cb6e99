"""On-axis hydrogenic donor in the wire: Gaussian-envelope variational energy.

The trial function is Psi_nl(r, theta) * exp(-a (r^2 + y^2)). The angular
integral is trivial and the axial one is done in closed form, including the
Coulomb kernel:

    int exp(-2 a y^2) / sqrt(r^2 + y^2) dy = exp(a r^2) K0(a r^2),

which leaves one-dimensional radial integrals evaluated with composite
Gauss-Legendre rules. Kinetic energy uses the gradient form
int (hbar^2 / 2 m(r)) |grad Psi|^2.
"""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import special as sp

from .errors import AccuracyError
from .materials import Geometry, constants
from .subbands import SubbandState, radial_wavefunction, radial_derivative

log = logging.getLogger(__name__)

A_MIN, A_MAX = 1e-5, 10.0  # nm^-2
COARSE_POINTS = 40


class BoundaryMinimumWarning(UserWarning):
    """The variational minimum sits on the edge of the searched a-interval."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Radial quadrature layout.

    The interior [0, r0] uses the substitution r = r0 t^2, which smooths the
    logarithmic Coulomb singularity at the axis. The barrier region extends to
    ``radial_extent * r0`` or to where the envelope has decayed by
    exp(-2 * ``decay_lengths``), whichever is shorter.
    """

    radial_extent: float = 8.0  # multiples of r0
    decay_lengths: float = 40.0
    interior_panels: int = 4
    exterior_panels: int = 6
    nodes: int = 32  # Gauss-Legendre nodes per panel
    rtol: float = 1e-4  # accepted relative error estimate on the norm integral

    def doubled(self) -> "QuadratureSpec":
        return QuadratureSpec(self.radial_extent, self.decay_lengths,
                              2 * self.interior_panels, 2 * self.exterior_panels,
                              self.nodes, self.rtol)


@dataclass(frozen=True)
class DonorState:
    base: SubbandState
    a_opt: float  # nm^-2
    energy: float  # meV
    binding_energy: float  # meV
    at_boundary: bool = False
    coulomb: bool = field(default=True, repr=False)

    @property
    def label(self):
        return self.base.label


def _composite_gl(a, b, panels, nodes):
    x, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    xs = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    ws = (half[:, None] * w[None, :]).ravel()
    return xs, ws


def radial_rule(state: SubbandState, quad: QuadratureSpec, coarse: bool = False):
    """Nodes r and weights w with sum w f(r) ~ int_0^rmax f(r) dr."""
    r0 = state.geometry.core_radius
    ip, ep = quad.interior_panels, quad.exterior_panels
    if coarse:
        ip, ep = max(1, ip // 2), max(1, ep // 2)
    t, wt = _composite_gl(0.0, 1.0, ip, quad.nodes)
    r_in = r0 * t * t
    w_in = 2 * r0 * t * wt
    r_max = min(quad.radial_extent * r0, r0 + quad.decay_lengths / (2 * state.kappa_b))
    r_out, w_out = _composite_gl(r0, r_max, ep, quad.nodes)
    return np.concatenate([r_in, r_out]), np.concatenate([w_in, w_out])


def _radial_terms(state, r):
    geo = state.geometry
    R = radial_wavefunction(state, r)
    dR = radial_derivative(state, r)
    inside = r < geo.core_radius
    h2m = constants().hbar2_over_2m0 / np.where(inside, geo.m_well, geo.m_barrier)
    U = np.where(inside, 0.0, geo.barrier_height)
    return R, dR, h2m, U


def energy_expectation(a: float, state: SubbandState, geometry: Geometry | None = None,
                       quad: QuadratureSpec | None = None, coulomb: bool = True,
                       eps_r: float | None = None) -> float:
    """Rayleigh quotient <Psi_t|H|Psi_t>/<Psi_t|Psi_t> in meV.

    ``eps_r`` defaults to the static permittivity of the well material.
    """
    if not a > 0:
        raise ValueError("variational parameter a must be positive")
    geometry = geometry or state.geometry
    quad = quad or QuadratureSpec()
    eps_r = eps_r or geometry.well.eps_static
    l = state.l

    r, w = radial_rule(state, quad)
    R, dR, h2m, U = _radial_terms(state, r)
    g2 = np.exp(-2 * a * r * r)
    dens = R * R * g2 * r
    norm = np.dot(w, dens)

    # error estimate from the half-resolution rule
    rc, wc = radial_rule(state, quad, coarse=True)
    Rc = radial_wavefunction(state, rc)
    norm_c = np.dot(wc, Rc * Rc * np.exp(-2 * a * rc * rc) * rc)
    err = abs(norm - norm_c) / norm
    if err > quad.rtol:
        raise AccuracyError(f"norm quadrature error {err:.2e} exceeds {quad.rtol:.0e}", err)

    grad_r = dR - 2 * a * r * R
    kin_r = np.dot(w, h2m * (grad_r**2 + (l * l) * (R * R) / (r * r)) * g2 * r)
    kin_y = a * np.dot(w, h2m * dens)
    pot = np.dot(w, U * dens)
    total = kin_r + kin_y + pot
    if coulomb:
        kc = constants().coulomb_factor / eps_r
        # axial Gaussian norm is sqrt(pi / 2a); k0e(x) = exp(x) K0(x)
        coul = np.dot(w, R * R * g2 * sp.k0e(a * r * r) * r)
        total -= kc * np.sqrt(2 * a / np.pi) * coul
    return float(total / norm)


def _golden_section(f, lo, hi, f_tol, x_tol=1e-6, max_iter=200):
    """Minimize f on [lo, hi]; stop when the bracket's f-values span < f_tol."""
    invphi = (np.sqrt(5) - 1) / 2
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    fc, fd = f(c), f(d)
    flo, fhi = f(lo), f(hi)
    for _ in range(max_iter):
        span = max(flo, fc, fd, fhi) - min(flo, fc, fd, fhi)
        if span <= f_tol or hi - lo <= x_tol:
            break
        if fc < fd:
            hi, fhi = d, fd
            d, fd = c, fc
            c = hi - invphi * (hi - lo)
            fc = f(c)
        else:
            lo, flo = c, fc
            c, fc = d, fd
            d = lo + invphi * (hi - lo)
            fd = f(d)
    return (c, fc) if fc < fd else (d, fd)


def minimize_energy(state: SubbandState, geometry: Geometry | None = None,
                    quad: QuadratureSpec | None = None, coulomb: bool = True,
                    eps_r: float | None = None, energy_tol: float = 1e-3) -> DonorState:
    """Minimize the trial energy over log a in [1e-5, 10] nm^-2."""
    geometry = geometry or state.geometry
    quad = quad or QuadratureSpec()

    def f(log_a):
        return energy_expectation(np.exp(log_a), state, geometry, quad, coulomb, eps_r)

    grid = np.linspace(np.log(A_MIN), np.log(A_MAX), COARSE_POINTS)
    vals = np.array([f(x) for x in grid])
    k = int(np.argmin(vals))
    at_boundary = k in (0, len(grid) - 1)
    if at_boundary:
        warnings.warn(
            f"minimum for state ({state.n},{state.l}) at a = {np.exp(grid[k]):.3g} nm^-2, "
            "edge of the search interval", BoundaryMinimumWarning, stacklevel=2)
        log_a, e = grid[k], vals[k]
    else:
        log_a, e = _golden_section(f, grid[k - 1], grid[k + 1], energy_tol)
    return DonorState(base=state, a_opt=float(np.exp(log_a)), energy=float(e),
                      binding_energy=float(state.energy - e), at_boundary=at_boundary,
                      coulomb=coulomb)


def binding_energy(donor: DonorState) -> float:
    return donor.base.energy - donor.energy
