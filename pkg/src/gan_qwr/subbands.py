"""Bound states of the finite core/shell well by interface matching.

Inside the core the radial function is a regular Bessel function of the
interior wavevector, outside it is the decaying modified function of the
barrier wavevector. Energies follow from matching logarithmic derivatives
at r0; the same machinery handles the cylinder (J_l, K_l) and the sphere
(j_l, k_l) through a small kernel table.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import special
from .errors import DomainError
from .materials import Geometry, constants

log = logging.getLogger(__name__)

ENERGY_TOL = 1e-6  # meV
SCAN_DIVISIONS = 2000


@dataclass(frozen=True)
class _Kernel:
    inner: callable
    outer_scaled: callable
    dim: int  # 2 for the wire cross-section, 3 for the dot

    @property
    def solid_angle(self):
        return 2 * np.pi if self.dim == 2 else 4 * np.pi

    def centrifugal(self, l):
        return l * l if self.dim == 2 else l * (l + 1)


_KERNELS = {
    "cylinder": _Kernel(special.bessel_j, special.bessel_k_mod_scaled, 2),
    "sphere": _Kernel(special.spherical_bessel_j, special.spherical_k_mod_scaled, 3),
}


@dataclass(frozen=True)
class SubbandState:
    """Normalized bound state with quantum numbers (n, l).

    R(r) = interior_amp * J_l(kappa_w r) for r < r0 and
    exterior_amp * K_l(kappa_b r) beyond; normalized so that
    (2 pi) int |R|^2 r dr = 1 (cylinder) or (4 pi) int |R|^2 r^2 dr = 1 (sphere).
    """

    n: int
    l: int
    energy: float  # meV, from the well band edge
    kappa_w: float  # 1/nm
    kappa_b: float  # 1/nm
    interior_amp: float
    exterior_amp: float
    geometry: Geometry

    @property
    def label(self):
        return f"{self.n}{abs(self.l)}"


def _wavevectors(E, geometry):
    h = constants().hbar2_over_2m0
    U = geometry.barrier_height
    kw = np.sqrt(geometry.m_well * E / h)
    kb = np.sqrt(geometry.m_barrier * (U - E) / h)
    return kw, kb


def _mass_weights(geometry):
    if geometry.matching == "mass":
        return 1.0 / geometry.m_well, 1.0 / geometry.m_barrier
    return 1.0, 1.0


def matching_residual(E: float, l: int, geometry: Geometry) -> float:
    """Mismatch of the (mass-weighted) logarithmic derivatives at r0.

    Returns +/-inf at poles, i.e. where the interior function vanishes at r0.
    """
    U = geometry.barrier_height
    if not 0 < E < U:
        raise DomainError(f"energy {E} meV outside (0, {U}) meV")
    ker = _KERNELS[geometry.shape]
    r0 = geometry.core_radius
    kw, kb = _wavevectors(E, geometry)
    ww, wb = _mass_weights(geometry)
    inner = ker.inner(l, kw * r0)
    outer = ker.outer_scaled(l, kb * r0)
    if abs(inner.value) < 1e-300:
        return np.copysign(np.inf, -inner.derivative)
    return ww * kw * inner.derivative / inner.value - wb * kb * outer.derivative / outer.value


def _interior_zeros(l, ker, x_max):
    """Zeros of the interior radial function in (0, x_max)."""
    if x_max <= 0:
        return []
    xs = np.arange(0.05, x_max + 0.05, 0.05)
    xs = xs[xs < x_max]
    if xs.size == 0:
        return []
    vals = ker.inner(l, xs).value
    zeros = []
    for a, b, fa, fb in zip(xs[:-1], xs[1:], vals[:-1], vals[1:]):
        if fa == 0.0:
            zeros.append(a)
        elif fa * fb < 0:
            zeros.append(brentq(lambda x: ker.inner(l, x).value, a, b, xtol=1e-15, rtol=1e-15))
    return zeros


def pole_energies(l: int, geometry: Geometry) -> list[float]:
    """Energies in (0, U) at which the interior function vanishes at r0."""
    ker = _KERNELS[geometry.shape]
    r0 = geometry.core_radius
    U = geometry.barrier_height
    h = constants().hbar2_over_2m0
    x_max = np.sqrt(geometry.m_well * U / h) * r0
    return [h * x * x / (geometry.m_well * r0 * r0) for x in _interior_zeros(l, ker, x_max)]


def find_levels(l: int, geometry: Geometry, max_n: int = 10) -> list[SubbandState]:
    """All bound states of angular number ``l`` (at most ``max_n``), ascending in energy."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    U = geometry.barrier_height
    eps = 1e-9 * U
    step = U / SCAN_DIVISIONS
    poles = pole_energies(l, geometry)
    edges = [eps] + poles + [U - eps]
    roots = []
    for k, (lo, hi) in enumerate(zip(edges[:-1], edges[1:])):
        # stay clear of the poles themselves
        if k > 0:
            lo = lo + eps
        if k < len(edges) - 2:
            hi = hi - eps
        if hi <= lo:
            continue
        grid = np.append(np.arange(lo, hi, step), hi)
        f = np.array([matching_residual(E, l, geometry) for E in grid])
        for a, b, fa, fb in zip(grid[:-1], grid[1:], f[:-1], f[1:]):
            if fa == 0.0:
                roots.append(a)
            elif np.isfinite(fa) and np.isfinite(fb) and fa * fb < 0:
                roots.append(brentq(matching_residual, a, b, args=(l, geometry),
                                    xtol=ENERGY_TOL * 1e-2, rtol=1e-14))
        if len(roots) >= max_n:
            break
    roots.sort()
    return [_build_state(n + 1, l, E, geometry) for n, E in enumerate(roots[:max_n])]


def _norm_integrals(l, x0, y0, inner, outer, ker, r0):
    """Interior and exterior integrals of R^2 r^(d-1) for an unnormalized R.

    The exterior is expressed relative to the interior amplitude through the
    continuity ratio inner(x0)/outer(y0); only logarithmic derivatives enter,
    so the scaled exterior function can be used directly.
    """
    c = ker.centrifugal(l)
    j, jp = inner.value, inner.derivative
    q = outer.derivative / outer.value
    if ker.dim == 2:
        i_in = 0.5 * r0**2 * (jp * jp + (1 - c / x0**2) * j * j)
        i_out = 0.5 * r0**2 * j * j * (q * q - (1 + c / y0**2))
    else:
        i_in = 0.5 * r0**3 * (jp * jp + j * jp / x0 + (1 - c / x0**2) * j * j)
        i_out = 0.5 * r0**3 * j * j * (q * q + q / y0 - (1 + c / y0**2))
    return i_in, i_out


def _build_state(n, l, E, geometry, cls=None):
    ker = _KERNELS[geometry.shape]
    r0 = geometry.core_radius
    kw, kb = _wavevectors(E, geometry)
    x0, y0 = kw * r0, kb * r0
    inner = ker.inner(l, x0)
    outer = ker.outer_scaled(l, y0)
    i_in, i_out = _norm_integrals(l, x0, y0, inner, outer, ker, r0)
    A = 1.0 / np.sqrt(ker.solid_angle * (i_in + i_out))
    # the exterior amplitude multiplies the unscaled K_l(kappa_b r)
    B = A * inner.value / (outer.value * np.exp(-y0))
    if cls is None:
        cls = SubbandState if geometry.shape == "cylinder" else _qd_state_cls()
    return cls(n=n, l=l, energy=float(E), kappa_w=float(kw), kappa_b=float(kb),
               interior_amp=float(A), exterior_amp=float(B), geometry=geometry)


def _qd_state_cls():
    from .qdot import QdState
    return QdState


def state_from_energy(n: int, l: int, E: float, geometry: Geometry) -> SubbandState:
    """Normalized state for a given energy (no root check; used by tests and sweeps)."""
    return _build_state(n, l, E, geometry)


def _radial_parts(state, r):
    geo = state.geometry
    ker = _KERNELS[geo.shape]
    r0 = geo.core_radius
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("r must be >= 0")
    inside = r < r0
    val = np.empty_like(r)
    der = np.empty_like(r)
    ri = r[inside]
    if ri.size:
        ev = ker.inner(state.l, state.kappa_w * ri)
        val[inside] = state.interior_amp * ev.value
        der[inside] = state.interior_amp * state.kappa_w * ev.derivative
    ro = r[~inside]
    if ro.size:
        # A J(x0) * K(kb r)/K(kb r0), written with scaled K to avoid underflow
        y0 = state.kappa_b * r0
        y = state.kappa_b * ro
        edge = ker.inner(state.l, state.kappa_w * r0).value * state.interior_amp
        ref = ker.outer_scaled(state.l, y0).value
        ev = ker.outer_scaled(state.l, y)
        decay = np.exp(-(y - y0))
        val[~inside] = edge * ev.value / ref * decay
        der[~inside] = edge * state.kappa_b * ev.derivative / ref * decay
    return val, der


def radial_wavefunction(state: SubbandState, r):
    """R(r) in nm^-1 (cylinder) or nm^-3/2 (sphere); scalar in, scalar out."""
    val, _ = _radial_parts(state, np.atleast_1d(r))
    return float(val[0]) if np.ndim(r) == 0 else val


def radial_derivative(state: SubbandState, r):
    _, der = _radial_parts(state, np.atleast_1d(r))
    return float(der[0]) if np.ndim(r) == 0 else der


def state_norm(state: SubbandState) -> float:
    """Closed-form norm (should be 1 for states built by this module)."""
    geo = state.geometry
    ker = _KERNELS[geo.shape]
    r0 = geo.core_radius
    x0, y0 = state.kappa_w * r0, state.kappa_b * r0
    i_in, i_out = _norm_integrals(state.l, x0, y0, ker.inner(state.l, x0),
                                  ker.outer_scaled(state.l, y0), ker, r0)
    return ker.solid_angle * state.interior_amp**2 * (i_in + i_out)


def level_table(geometry: Geometry, ls=(0, 1), max_n: int = 3) -> dict[tuple[int, int], SubbandState]:
    """Map (n, |l|) -> state for the requested angular numbers."""
    out = {}
    for l in ls:
        for s in find_levels(l, geometry, max_n):
            out[(s.n, abs(l))] = s
    return out
