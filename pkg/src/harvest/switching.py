"""Detector switching profiles.

Each profile is a frozen dataclass with ``evaluate`` (vectorized, peak value
exactly 1 at ``t0``), ``support_window(k)`` returning an interval outside of
which the profile is below ~2 e^{-k^2}, and an ``is_even`` flag used by the
symmetry checks (a profile that is even about its own peak).

The skew-normal profile

    S(u) = exp(-u^2 / T^2) * (1 + erf(alpha * u / T))

peaks at ``u = t_max > 0`` (for alpha > 0) with height 1/n_alpha; both
constants are solved at construction so that ``evaluate`` is the calibrated
profile n_alpha * S(t - t0 + t_max), which peaks at exactly 1 at t = t0. The
peak satisfies (in units of T)

    u * (1 + erf(alpha*u)) = (alpha / sqrt(pi)) * exp(-alpha^2 u^2),

which we bracket by a golden-section maximum of S and then polish with
Newton to 1e-12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .special import erf

__all__ = ["GaussianSwitching", "SkewNormalSwitching", "same_shape"]

_INV_SQRT_PI = 1.0 / math.sqrt(math.pi)
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class GaussianSwitching:
    """chi(t) = exp(-((t - t0)/T)^2)."""

    T: float
    t0: float = 0.0

    def __post_init__(self):
        if self.T <= 0:
            raise ValueError("switching width T must be positive")

    @property
    def is_even(self) -> bool:
        return True

    def evaluate(self, t):
        u = (np.asarray(t, dtype=float) - self.t0) / self.T
        out = np.exp(-u * u)
        return float(out) if out.ndim == 0 else out

    def support_window(self, k: float) -> tuple[float, float]:
        return (self.t0 - k * self.T, self.t0 + k * self.T)


def _skew_peak(alpha: float) -> float:
    """Peak location (units of T) of exp(-u^2)(1 + erf(alpha u))."""
    if alpha == 0.0:
        return 0.0

    def raw(u):
        return math.exp(-u * u) * (1.0 + math.erf(alpha * u))

    # Golden-section maximization brackets the unique interior maximum.
    a, b = -3.0, 3.0
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = raw(c), raw(d)
    while b - a > 1e-6:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = raw(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = raw(d)
    u = 0.5 * (a + b)

    # Newton polish of the stationarity condition
    #   h(u) = u (1 + erf(alpha u)) - (alpha/sqrt(pi)) exp(-alpha^2 u^2) = 0.
    for _ in range(60):
        gauss = math.exp(-((alpha * u) ** 2))
        h = u * (1.0 + math.erf(alpha * u)) - alpha * _INV_SQRT_PI * gauss
        dh = (1.0 + math.erf(alpha * u)) + 2.0 * alpha * u * _INV_SQRT_PI * (
            1.0 + alpha * alpha
        ) * gauss
        step = h / dh
        u -= step
        if abs(step) <= 1e-12 * max(1.0, abs(u)):
            break
    else:
        raise RuntimeError(f"skew peak iteration failed to converge (alpha={alpha})")
    return u


@dataclass(frozen=True)
class SkewNormalSwitching:
    """Calibrated skew-normal switching, peak value 1 at t0.

    ``alpha`` sets the asymmetry sign and strength; alpha = 0 degenerates to
    the Gaussian profile. ``t_max`` and ``n_alpha`` are derived, not inputs.
    """

    T: float
    t0: float = 0.0
    alpha: float = 0.0

    def __post_init__(self):
        if self.T <= 0:
            raise ValueError("switching width T must be positive")
        u_peak = _skew_peak(self.alpha)
        height = math.exp(-u_peak * u_peak) * (1.0 + math.erf(self.alpha * u_peak))
        object.__setattr__(self, "_t_max", u_peak * self.T)
        object.__setattr__(self, "_n_alpha", 1.0 / height)

    @property
    def t_max(self) -> float:
        """Offset of the raw profile's peak from its Gaussian center."""
        return self._t_max

    @property
    def n_alpha(self) -> float:
        """Normalization making the calibrated peak exactly 1."""
        return self._n_alpha

    @property
    def is_even(self) -> bool:
        return self.alpha == 0.0

    def evaluate(self, t):
        u = (np.asarray(t, dtype=float) - self.t0 + self._t_max) / self.T
        out = self._n_alpha * np.exp(-u * u) * (1.0 + erf(self.alpha * u))
        return float(out) if out.ndim == 0 else out

    def support_window(self, k: float) -> tuple[float, float]:
        # The erf factor approaches 2 on the side of sign(alpha): that tail
        # is twice the bare Gaussian, so give it one extra width. The other
        # side carries an additional erfc suppression and needs none. The
        # peak shift |t_max| < T is absorbed by the same margin.
        lo = self.t0 - k * self.T
        hi = self.t0 + k * self.T
        if self.alpha > 0.0:
            hi += self.T
        elif self.alpha < 0.0:
            lo -= self.T
        return (lo, hi)


def same_shape(p, q) -> bool:
    """Same profile family and shape parameters (centers may differ)."""
    if type(p) is not type(q) or p.T != q.T:
        return False
    return getattr(p, "alpha", 0.0) == getattr(q, "alpha", 0.0)
