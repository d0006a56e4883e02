"""Smeared vacuum two-point kernels for Gaussian detector profiles.

A massless scalar in the conformal vacuum, sampled by two Gaussian spatial
profiles of width sigma a comoving distance d apart, produces correlation
kernels that depend only on the (conformal) time lag. All three kernels are
elementary Gaussians plus Dawson functions:

    I(z)      = sqrt(pi)/(2 sigma) * exp(-z^2/(4 sigma^2))
                - (i/sigma) * D(z/(2 sigma))
    k_ab      = (2 pi i / d) * (I(dt + d) - I(dt - d)),          d > 0
    k_jj      = (2 pi/sigma^2) * (1 - 2 u D(u))
                - i pi^{3/2} (dt/sigma^3) * exp(-u^2),           u = dt/(2 sigma)
    k_ab^-    = i pi^{3/2}/(sigma d)
                * (exp(-(dt+d)^2/(4 sigma^2)) - exp(-(dt-d)^2/(4 sigma^2)))

k_ab^- is the commutator (signalling) part: it is the odd-in-dt piece of
k_ab, purely imaginary, and dies off as a Gaussian away from the light cone
|dt| = d. The remainder k_ab - k_ab^- and k_ab itself decay only
algebraically, k_ab -> -4 pi/(dt^2 - d^2) for large |dt|.

``k_oracle`` evaluates the defining momentum-space integral by 1D adaptive
quadrature; it is slow and exists to pin the closed forms down in tests and
verification suites.
"""

from __future__ import annotations

import math
import warnings

import numpy as np
import scipy.integrate
from scipy.integrate import quad

from .special import dawson

__all__ = ["script_i", "k_ab", "k_jj", "k_ab_minus", "k_oracle", "effective_delta"]

_SQRT_PI = math.sqrt(math.pi)


def _check_sigma(sigma: float):
    if sigma <= 0:
        raise ValueError("smearing width sigma must be positive")


def _check_d(d: float):
    if d <= 0:
        raise ValueError(
            "detector separation d must be positive; use k_jj for the "
            "coincident (self) kernel"
        )


def script_i(z, sigma: float):
    """Half-line Gaussian Fourier kernel I(z)."""
    _check_sigma(sigma)
    u = np.asarray(z, dtype=float) / (2.0 * sigma)
    out = (_SQRT_PI / (2.0 * sigma)) * np.exp(-u * u) - (1j / sigma) * dawson(u)
    return complex(out) if out.ndim == 0 else out


def k_ab(delta_t, d: float, sigma: float):
    """Cross kernel between profiles separated by comoving distance d > 0."""
    _check_sigma(sigma)
    _check_d(d)
    dt = np.asarray(delta_t, dtype=float)
    out = (2j * math.pi / d) * (script_i(dt + d, sigma) - script_i(dt - d, sigma))
    return complex(out) if np.ndim(out) == 0 else out


def k_jj(delta_t, sigma: float):
    """Self kernel of a single profile (the d -> 0 limit of k_ab)."""
    _check_sigma(sigma)
    dt = np.asarray(delta_t, dtype=float)
    u = dt / (2.0 * sigma)
    real = (2.0 * math.pi / sigma**2) * (1.0 - 2.0 * u * dawson(u))
    imag = -(_SQRT_PI * math.pi) * (dt / sigma**3) * np.exp(-u * u)
    out = real + 1j * imag
    return complex(out) if out.ndim == 0 else out


def k_ab_minus(delta_t, d: float, sigma: float):
    """Commutator part of k_ab: odd in delta_t, purely imaginary."""
    _check_sigma(sigma)
    _check_d(d)
    dt = np.asarray(delta_t, dtype=float)
    up = (dt + d) / (2.0 * sigma)
    um = (dt - d) / (2.0 * sigma)
    out = (1j * _SQRT_PI * math.pi / (sigma * d)) * (np.exp(-up * up) - np.exp(-um * um))
    return complex(out) if np.ndim(out) == 0 else out


def k_oracle(delta_t: float, d: float, sigma: float, abs_tol: float = 1e-10) -> complex:
    """Direct momentum-space evaluation of the smeared kernel.

    d > 0:   (4 pi / d) * int_0^inf sin(k d) e^{-k^2 sigma^2} e^{-i k dt} dk
    d == 0:  4 pi * int_0^inf k e^{-k^2 sigma^2} e^{-i k dt} dk
    """
    _check_sigma(sigma)
    if d < 0:
        raise ValueError("detector separation d must be nonnegative")
    k_max = 10.0 / sigma  # envelope below e^{-100} past here

    if d == 0.0:
        amp = lambda k: 4.0 * math.pi * k * math.exp(-(k * sigma) ** 2)
    else:
        amp = lambda k: (4.0 * math.pi / d) * math.sin(k * d) * math.exp(-(k * sigma) ** 2)

    with warnings.catch_warnings():
        # quad flags roundoff on the oscillatory pieces; we enforce our own
        # absolute budget on its returned error estimate below.
        warnings.simplefilter("ignore", scipy.integrate.IntegrationWarning)
        re, re_err = quad(lambda k: amp(k) * math.cos(k * delta_t), 0.0, k_max,
                          epsabs=1e-13, epsrel=1e-13, limit=800)
        im, im_err = quad(lambda k: -amp(k) * math.sin(k * delta_t), 0.0, k_max,
                          epsabs=1e-13, epsrel=1e-13, limit=800)
    if re_err + im_err > abs_tol:
        raise RuntimeError(
            f"momentum-space quadrature did not converge: err {re_err + im_err:.2e}"
        )
    return complex(re, im)


def effective_delta(background, t, tp):
    """Conformal-time lag eta(t) - eta(t') entering every kernel argument."""
    return background.conformal_time(t) - background.conformal_time(tp)
