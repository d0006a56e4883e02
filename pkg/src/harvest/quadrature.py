"""Adaptive 2D Gauss-Legendre quadrature for complex oscillatory integrands.

The moment integrals are double integrals of (Gaussian switching envelopes) x
(oscillatory phases) x (smeared vacuum kernels), either over the full (t, t')
plane or over the time-ordered wedge t' <= t. Both are handled by
tensor-product Gauss-Legendre panels with

* an embedded half-order rule on each panel for the error estimate,
* per-axis roughness from the tail Legendre coefficients of the panel's own
  node values, which picks the bisection axis for free (no extra evaluations),
* worst-panel-first global refinement with an insertion-order tiebreak, so
  the reduction order -- and therefore the floating-point result -- is
  identical on every run.

The ordered wedge is mapped to a rectangle with the substitution s = t - t'
(s >= 0), which keeps the integrand smooth; a Heaviside factor would destroy
the spectral convergence of the panels. In (t, s) coordinates the rectangle
[t_lo, t_hi] x [0, t_hi - t'_lo] covers the wedge intersected with the
windows plus a smooth spill region below the t' window; callers size windows
so the integrand there is at tail level (< e^{-window_k^2}).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "Ordering",
    "QuadratureSpec",
    "Domain2D",
    "EmptyWedgeError",
    "QuadratureNonConvergence",
    "integrate_2d",
    "build_domain",
]


class Ordering(Enum):
    FULL = "full"
    ORDERED_LOWER = "ordered_lower"  # restrict to t' <= t


class EmptyWedgeError(ValueError):
    """Ordered domain has no points with t' <= t inside the windows."""


class QuadratureNonConvergence(RuntimeError):
    """Tolerance not reached; carries the best estimate."""

    def __init__(self, value: complex, err_est: float, reason: str):
        super().__init__(
            f"quadrature did not reach tolerance ({reason}); "
            f"best value {value!r}, err_est {err_est:.3e}"
        )
        self.value = value
        self.err_est = err_est
        self.reason = reason


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-14
    max_depth: int = 26
    window_k: float = 8.0
    panel_order: int = 16

    def __post_init__(self):
        if self.rel_tol <= 0:
            raise ValueError("rel_tol must be positive")
        if self.panel_order < 8:
            raise ValueError("panel_order must be >= 8")
        if self.window_k < 5:
            raise ValueError("window_k must be >= 5")


@dataclass(frozen=True)
class Domain2D:
    t_window: tuple[float, float]
    tp_window: tuple[float, float]
    ordering: Ordering = Ordering.FULL

    def __post_init__(self):
        if not self.t_window[0] < self.t_window[1]:
            raise ValueError(f"empty t window {self.t_window}")
        if not self.tp_window[0] < self.tp_window[1]:
            raise ValueError(f"empty t' window {self.tp_window}")
        if self.ordering is Ordering.ORDERED_LOWER and (
            self.t_window[1] <= self.tp_window[0]
        ):
            raise EmptyWedgeError(
                f"t window {self.t_window} lies entirely below t' window "
                f"{self.tp_window}: the wedge t' <= t is empty"
            )


def build_domain(profiles, spec: QuadratureSpec, ordering: Ordering) -> Domain2D:
    """Domain from the two switching supports truncated at k = window_k."""
    prof_t, prof_tp = profiles
    return Domain2D(
        t_window=prof_t.support_window(spec.window_k),
        tp_window=prof_tp.support_window(spec.window_k),
        ordering=ordering,
    )


# --------------------------------------------------------------------------
# panel machinery
# --------------------------------------------------------------------------

_rule_cache: dict[int, tuple] = {}

# Initial uniform subdivision per axis; guards against a single panel where
# high- and low-order rules agree by accident on a strongly oscillatory
# integrand.
_BASE_GRID = 4
_MAX_PANELS = 200_000


def _rules(order: int):
    try:
        return _rule_cache[order]
    except KeyError:
        pass
    x_hi, w_hi = np.polynomial.legendre.leggauss(order)
    x_lo, w_lo = np.polynomial.legendre.leggauss(order // 2)
    # Legendre-coefficient analysis matrix: coeffs = A @ values at the nodes.
    vander = np.polynomial.legendre.legvander(x_hi, order - 1)
    scale = (2.0 * np.arange(order) + 1.0) / 2.0
    analysis = (vander * w_hi[:, None]).T * scale[:, None]
    rule = (x_hi, w_hi, x_lo, w_lo, analysis)
    _rule_cache[order] = rule
    return rule


def _eval_panel(g, x0, x1, y0, y1, rule):
    """(value, err_est, roughness_x, roughness_y) on one rectangle."""
    x_hi, w_hi, x_lo, w_lo, analysis = rule
    cx, hx = 0.5 * (x0 + x1), 0.5 * (x1 - x0)
    cy, hy = 0.5 * (y0 + y1), 0.5 * (y1 - y0)

    gx = (cx + hx * x_hi)[:, None]
    gy = (cy + hy * x_hi)[None, :]
    vals = np.asarray(g(gx, gy), dtype=complex)
    if vals.shape != (x_hi.size, x_hi.size):
        vals = np.broadcast_to(vals, (x_hi.size, x_hi.size))
    value = hx * hy * (w_hi @ vals @ w_hi)

    gx2 = (cx + hx * x_lo)[:, None]
    gy2 = (cy + hy * x_lo)[None, :]
    vals2 = np.asarray(g(gx2, gy2), dtype=complex)
    if vals2.shape != (x_lo.size, x_lo.size):
        vals2 = np.broadcast_to(vals2, (x_lo.size, x_lo.size))
    value_lo = hx * hy * (w_lo @ vals2 @ w_lo)

    err = abs(value - value_lo)

    coeffs = analysis @ vals @ analysis.T
    rough_x = float(np.sum(np.abs(coeffs[-2:, :])))
    rough_y = float(np.sum(np.abs(coeffs[:, -2:])))
    return value, err, rough_x, rough_y


def integrate_2d(f, dom: Domain2D, spec: QuadratureSpec):
    """Integrate a vectorized complex integrand over the domain.

    ``f(t, tp)`` must accept broadcastable numpy arrays. Returns
    ``(value, err_est)`` with ``err_est <= max(abs_tol, rel_tol*|value|)``;
    raises QuadratureNonConvergence (carrying the best estimate) when the
    panel budget or max_depth is exhausted first.
    """
    t_lo, t_hi = dom.t_window
    if dom.ordering is Ordering.FULL:
        y_lo, y_hi = dom.tp_window
        g = f
    else:
        s_max = t_hi - dom.tp_window[0]
        if s_max <= 0.0:
            raise EmptyWedgeError("ordered wedge is empty for these windows")
        y_lo, y_hi = 0.0, s_max

        def g(t, s):
            return f(t, t - s)

    rule = _rules(spec.panel_order)

    # (-err, seq, depth, x0, x1, y0, y1); leaves[seq] = (value, err)
    heap = []
    leaves: dict[int, tuple[complex, float]] = {}
    seq = 0
    xs = np.linspace(t_lo, t_hi, _BASE_GRID + 1)
    ys = np.linspace(y_lo, y_hi, _BASE_GRID + 1)
    total_val = 0.0 + 0.0j
    total_err = 0.0
    for i in range(_BASE_GRID):
        for j in range(_BASE_GRID):
            val, err, rx, ry = _eval_panel(g, xs[i], xs[i + 1], ys[j], ys[j + 1], rule)
            heapq.heappush(heap, (-err, seq, 0, xs[i], xs[i + 1], ys[j], ys[j + 1], rx, ry))
            leaves[seq] = (val, err)
            total_val += val
            total_err += err
            seq += 1

    def _finalize():
        re = math.fsum(v.real for v, _ in leaves.values())
        im = math.fsum(v.imag for v, _ in leaves.values())
        err = math.fsum(e for _, e in leaves.values())
        return complex(re, im), err

    while True:
        tol = max(spec.abs_tol, spec.rel_tol * abs(total_val))
        if total_err <= tol:
            value, err = _finalize()
            return value, err
        neg_err, pseq, depth, x0, x1, y0, y1, rx, ry = heapq.heappop(heap)
        if depth >= spec.max_depth:
            value, err = _finalize()
            raise QuadratureNonConvergence(value, err, "max_depth exceeded")
        if len(leaves) >= _MAX_PANELS:
            value, err = _finalize()
            raise QuadratureNonConvergence(value, err, "panel budget exhausted")

        pval, perr = leaves.pop(pseq)
        total_val -= pval
        total_err -= perr
        if rx >= ry:
            halves = ((x0, 0.5 * (x0 + x1), y0, y1), (0.5 * (x0 + x1), x1, y0, y1))
        else:
            halves = ((x0, x1, y0, 0.5 * (y0 + y1)), (x0, x1, 0.5 * (y0 + y1), y1))
        for cx0, cx1, cy0, cy1 in halves:
            val, err, crx, cry = _eval_panel(g, cx0, cx1, cy0, cy1, rule)
            heapq.heappush(heap, (-err, seq, depth + 1, cx0, cx1, cy0, cy1, crx, cry))
            leaves[seq] = (val, err)
            total_val += val
            total_err += err
            seq += 1
