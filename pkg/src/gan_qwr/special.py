"""Integer-order Bessel kernels with derivatives.

Values come from scipy.special (AMOS / Cephes), which meets the 1e-10
relative accuracy needed by the eigenvalue matching over orders 0..20.
All functions accept scalars or arrays for ``x``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special as sp

from .errors import DomainError, UnsupportedOrderError

MAX_ORDER = 20


@dataclass(frozen=True)
class BesselEval:
    value: np.ndarray | float
    derivative: np.ndarray | float


def _order(order) -> tuple[int, int]:
    """Return (|order|, sign applied by J_{-l} = (-1)^l J_l)."""
    if int(order) != order:
        raise UnsupportedOrderError(f"non-integer order {order}")
    n = abs(int(order))
    if n > MAX_ORDER:
        raise UnsupportedOrderError(f"order {order} outside supported range |l| <= {MAX_ORDER}")
    return n, (-1) ** n if order < 0 else 1


def _out(v, d):
    if np.ndim(v) == 0:
        return BesselEval(float(v), float(d))
    return BesselEval(v, d)


def bessel_j(order: int, x) -> BesselEval:
    n, sign = _order(order)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("bessel_j requires x >= 0")
    return _out(sign * sp.jv(n, x), sign * sp.jvp(n, x))


def bessel_k_mod(order: int, x) -> BesselEval:
    n, _ = _order(order)  # K_{-l} = K_l
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("bessel_k_mod requires x > 0")
    return _out(sp.kv(n, x), sp.kvp(n, x))


def bessel_k_mod_scaled(order: int, x) -> BesselEval:
    """exp(x) K_l(x) and exp(x) K_l'(x); avoids underflow deep in the barrier."""
    n, _ = _order(order)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("bessel_k_mod requires x > 0")
    v = sp.kve(n, x)
    # K_n' = -(K_{n-1} + K_{n+1}) / 2
    d = -0.5 * (sp.kve(abs(n - 1), x) + sp.kve(n + 1, x))
    return _out(v, d)


def spherical_bessel_j(order: int, x) -> BesselEval:
    n, sign = _order(order)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("spherical_bessel_j requires x >= 0")
    return _out(sign * sp.spherical_jn(n, x), sign * sp.spherical_jn(n, x, derivative=True))


def spherical_k_mod(order: int, x) -> BesselEval:
    """Decaying modified spherical Bessel function, normalized so k_0(x) = exp(-x)/x."""
    n, _ = _order(order)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("spherical_k_mod requires x > 0")
    scale = 2.0 / np.pi
    return _out(scale * sp.spherical_kn(n, x), scale * sp.spherical_kn(n, x, derivative=True))


def spherical_k_mod_scaled(order: int, x) -> BesselEval:
    """exp(x) k_l(x) and exp(x) k_l'(x)."""
    n, _ = _order(order)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("spherical_k_mod requires x > 0")
    # k_n(x) = (2/pi) sqrt(pi/2x) K_{n+1/2}(x)
    pref = np.sqrt(2.0 / (np.pi * x))
    v = pref * sp.kve(n + 0.5, x)
    d = -pref * sp.kve(n + 1.5, x) + n / x * v
    return _out(v, d)
