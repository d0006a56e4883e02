"""Spacetime backgrounds: flat space and conformally-flat FRW cosmologies.

Detectors live at fixed comoving positions; their clocks read comoving time
t. A background supplies three vectorized maps:

* ``scale_factor(t)``      a(t) > 0,
* ``conformal_time(t)``    eta(t) = integral dt/a, anchored eta(0) = 0
                           (or at the left edge of a tabulated range that
                           excludes 0),
* ``measure_weight(t, tp)``  1/(a(t) a(t')), the factor the conformal
                           coupling inserts into every double time integral.

Field correlators are evaluated at the conformal-time lag eta(t) - eta(t'),
while switching envelopes and detector phases stay functions of comoving t.

Closed forms are used where they exist:

* de Sitter  a = e^{Ht}:      eta = (1 - e^{-Ht})/H,
* cosh bounce a = cosh(Ht):   eta = arctan(sinh(Ht))/H (the Gudermannian),

and ``Tabulated`` accepts scale-factor samples, interpolating a(t) with a
shape-preserving cubic and building eta(t) once by panelwise Gauss-Legendre
integration of 1/a on a refined grid (absolute budget ~1e-10 over the range).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator

__all__ = ["Minkowski", "DeSitter", "CoshSymmetric", "Tabulated"]


def _as_float_array(t):
    return np.asarray(t, dtype=float)


def _maybe_scalar(out):
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class Minkowski:
    kind = "minkowski"

    def scale_factor(self, t):
        return np.ones_like(_as_float_array(t))

    def conformal_time(self, t):
        return _as_float_array(t)

    def measure_weight(self, t, tp):
        return np.ones(np.broadcast_shapes(np.shape(t), np.shape(tp)))


@dataclass(frozen=True)
class DeSitter:
    """a(t) = exp(H t), H > 0."""

    H: float
    kind = "desitter"

    def __post_init__(self):
        if self.H <= 0:
            raise ValueError("expansion rate H must be positive")

    def scale_factor(self, t):
        return _maybe_scalar(np.exp(self.H * _as_float_array(t)))

    def conformal_time(self, t):
        # (1 - e^{-Ht})/H via expm1: stable as H t -> 0.
        return _maybe_scalar(-np.expm1(-self.H * _as_float_array(t)) / self.H)

    def measure_weight(self, t, tp):
        return _maybe_scalar(np.exp(-self.H * (_as_float_array(t) + _as_float_array(tp))))


@dataclass(frozen=True)
class CoshSymmetric:
    """a(t) = cosh(H t): a contracting/expanding bounce, even about t = 0."""

    H: float
    kind = "cosh"

    def __post_init__(self):
        if self.H <= 0:
            raise ValueError("expansion rate H must be positive")

    def scale_factor(self, t):
        return _maybe_scalar(np.cosh(self.H * _as_float_array(t)))

    def conformal_time(self, t):
        return _maybe_scalar(np.arctan(np.sinh(self.H * _as_float_array(t))) / self.H)

    def measure_weight(self, t, tp):
        a = np.cosh(self.H * _as_float_array(t))
        ap = np.cosh(self.H * _as_float_array(tp))
        return _maybe_scalar(1.0 / (a * ap))


class Tabulated:
    """Background from (t, a) samples.

    ``a(t)`` is the shape-preserving cubic through the samples; ``eta(t)`` is
    precomputed by integrating 1/a(t) with per-panel Gauss-Legendre on a grid
    refined until the interpolated eta is converged below ``eta_budget``.
    Evaluation outside the sampled range raises ValueError.
    """

    kind = "tabulated"

    def __init__(self, times, scale_factors, eta_budget: float = 1e-10):
        times = np.asarray(times, dtype=float)
        scale_factors = np.asarray(scale_factors, dtype=float)
        if times.ndim != 1 or times.size < 4:
            raise ValueError("need at least 4 samples")
        if times.shape != scale_factors.shape:
            raise ValueError("times and scale_factors must have equal length")
        if not np.all(np.diff(times) > 0):
            raise ValueError("sample times must be strictly increasing")
        if not np.all(scale_factors > 0):
            raise ValueError("scale factor samples must be positive")
        self.t_min = float(times[0])
        self.t_max = float(times[-1])
        self._a = PchipInterpolator(times, scale_factors, extrapolate=False)

        gl_x, gl_w = np.polynomial.legendre.leggauss(15)
        anchor = 0.0 if self.t_min <= 0.0 <= self.t_max else self.t_min

        def integrate_eta(density: int):
            grid = np.unique(
                np.concatenate(
                    [np.linspace(times[i], times[i + 1], density + 1) for i in range(times.size - 1)]
                )
            )
            mid = 0.5 * (grid[:-1] + grid[1:])
            half = 0.5 * np.diff(grid)
            nodes = mid[:, None] + half[:, None] * gl_x[None, :]
            inv_a = 1.0 / self._a(nodes)
            if np.any(~np.isfinite(inv_a)) or np.any(inv_a <= 0):
                raise ValueError("interpolated scale factor is not strictly positive")
            pieces = half * (inv_a @ gl_w)
            eta = np.concatenate([[0.0], np.cumsum(pieces)])
            eta -= np.interp(anchor, grid, eta)
            return PchipInterpolator(grid, eta, extrapolate=False)

        density = 4
        eta_interp = integrate_eta(density)
        for _ in range(6):
            finer = integrate_eta(2 * density)
            probe = np.linspace(self.t_min, self.t_max, 1201)
            gap = float(np.max(np.abs(eta_interp(probe) - finer(probe))))
            eta_interp = finer
            density *= 2
            if gap <= eta_budget:
                break
        else:
            raise RuntimeError(f"conformal-time table did not converge to {eta_budget:g}")
        self._eta = eta_interp

    def _check_range(self, t):
        t = _as_float_array(t)
        if np.any(t < self.t_min) or np.any(t > self.t_max):
            raise ValueError(
                f"time outside tabulated range [{self.t_min:g}, {self.t_max:g}]"
            )
        return t

    def scale_factor(self, t):
        return _maybe_scalar(self._a(self._check_range(t)))

    def conformal_time(self, t):
        return _maybe_scalar(self._eta(self._check_range(t)))

    def measure_weight(self, t, tp):
        return _maybe_scalar(
            1.0 / (self._a(self._check_range(t)) * self._a(self._check_range(tp)))
        )
