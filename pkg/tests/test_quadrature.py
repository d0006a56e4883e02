"""Adaptive 2D panels against closed-form integrals and failure contracts."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from harvest.quadrature import (
    Domain2D,
    EmptyWedgeError,
    Ordering,
    QuadratureNonConvergence,
    QuadratureSpec,
    build_domain,
    integrate_2d,
)
from harvest.switching import GaussianSwitching

SPEC = QuadratureSpec()  # rel 1e-9, abs 1e-14

FULL_SQUARE = Domain2D((-8.0, 8.0), (-8.0, 8.0), Ordering.FULL)
WEDGE_SQUARE = Domain2D((-8.0, 8.0), (-8.0, 8.0), Ordering.ORDERED_LOWER)


def gauss2(t, tp):
    return np.exp(-t * t - tp * tp)


def test_gaussian_full_plane():
    value, err = integrate_2d(gauss2, FULL_SQUARE, SPEC)
    assert abs(value - math.pi) <= 1e-8 * math.pi
    assert abs(value.imag) <= 1e-14
    assert err <= max(SPEC.abs_tol, SPEC.rel_tol * abs(value))


def test_gaussian_wedge_is_half():
    # The wedge mapping assumes the integrand decays at the window edges
    # (true here: e^{-64} at the boundary).
    value, err = integrate_2d(gauss2, WEDGE_SQUARE, SPEC)
    assert abs(value - math.pi / 2) <= 1e-8 * math.pi
    assert err <= max(SPEC.abs_tol, SPEC.rel_tol * abs(value))


def test_oscillatory_gaussian():
    # int e^{-t^2-tp^2} e^{5i(t+tp)} = pi e^{-12.5}: five decades of phase
    # cancellation, the regime every moment integral lives in.
    exact = math.pi * math.exp(-12.5)

    def f(t, tp):
        return np.exp(-t * t - tp * tp + 5j * (t + tp))

    value, err = integrate_2d(f, FULL_SQUARE, SPEC)
    assert abs(value - exact) <= 1e-8 * exact
    assert err <= max(SPEC.abs_tol, SPEC.rel_tol * abs(value))


def test_wedge_plus_reversed_wedge_is_full():
    def f(t, tp):
        return np.exp(-((t - 0.3) ** 2) - (tp + 0.4) ** 2 + 1j * (t - 2 * tp)) * (
            1.0 + 0.5 * np.sin(t) * np.cos(2 * tp)
        )

    def f_swapped(t, tp):
        return f(tp, t)

    tw, tpw = (0.3 - 8.0, 0.3 + 8.0), (-0.4 - 8.0, -0.4 + 8.0)
    full, _ = integrate_2d(f, Domain2D(tw, tpw, Ordering.FULL), SPEC)
    lower, _ = integrate_2d(f, Domain2D(tw, tpw, Ordering.ORDERED_LOWER), SPEC)
    upper, _ = integrate_2d(f_swapped, Domain2D(tpw, tw, Ordering.ORDERED_LOWER), SPEC)
    assert abs((lower + upper) - full) <= 1e-10


def test_constant_on_unit_square():
    dom = Domain2D((0.0, 1.0), (0.0, 1.0), Ordering.FULL)
    value, err = integrate_2d(lambda t, tp: np.broadcast_to(1.0, np.broadcast_shapes(t.shape, tp.shape)), dom, SPEC)
    assert value == pytest.approx(1.0, rel=1e-13)


def test_zero_integrand():
    value, err = integrate_2d(lambda t, tp: 0.0 * t * tp, FULL_SQUARE, SPEC)
    assert value == 0.0
    assert err <= SPEC.abs_tol


def test_deterministic_repeats():
    def f(t, tp):
        return np.exp(-t * t - tp * tp + 3j * t * tp)

    first = integrate_2d(f, FULL_SQUARE, SPEC)
    second = integrate_2d(f, FULL_SQUARE, SPEC)
    assert first[0] == second[0]  # bit-identical, not just close
    assert first[1] == second[1]


@settings(max_examples=25, deadline=None)
@given(
    c1=st.floats(min_value=-2.0, max_value=2.0),
    c2=st.floats(min_value=-2.0, max_value=2.0),
    s1=st.floats(min_value=0.3, max_value=2.0),
    s2=st.floats(min_value=0.3, max_value=2.0),
)
def test_separable_gaussians(c1, c2, s1, s2):
    dom = Domain2D((c1 - 8 * s1, c1 + 8 * s1), (c2 - 8 * s2, c2 + 8 * s2), Ordering.FULL)

    def f(t, tp):
        return np.exp(-(((t - c1) / s1) ** 2) - ((tp - c2) / s2) ** 2)

    exact = math.pi * s1 * s2
    value, err = integrate_2d(f, dom, SPEC)
    assert abs(value - exact) <= 1e-8 * exact


def test_build_domain_uses_support_windows():
    spec = QuadratureSpec(window_k=6.0)
    pa = GaussianSwitching(T=0.5, t0=1.0)
    pb = GaussianSwitching(T=2.0, t0=-3.0)
    dom = build_domain((pa, pb), spec, Ordering.FULL)
    assert dom.t_window == (1.0 - 3.0, 1.0 + 3.0)
    assert dom.tp_window == (-3.0 - 12.0, -3.0 + 12.0)
    assert dom.ordering is Ordering.FULL


def test_empty_wedge_raises():
    with pytest.raises(EmptyWedgeError):
        Domain2D((-2.0, -1.0), (5.0, 6.0), Ordering.ORDERED_LOWER)
    # ... but the same windows are fine unordered.
    Domain2D((-2.0, -1.0), (5.0, 6.0), Ordering.FULL)
    # build_domain propagates it for far-separated switchings.
    pa = GaussianSwitching(T=0.1, t0=0.0)
    pb = GaussianSwitching(T=0.1, t0=100.0)
    with pytest.raises(EmptyWedgeError):
        build_domain((pa, pb), QuadratureSpec(), Ordering.ORDERED_LOWER)


def test_degenerate_windows_raise():
    with pytest.raises(ValueError):
        Domain2D((1.0, 1.0), (0.0, 1.0))
    with pytest.raises(ValueError):
        Domain2D((0.0, 1.0), (2.0, 1.0))


@pytest.mark.parametrize(
    "kwargs",
    [dict(rel_tol=0.0), dict(rel_tol=-1e-9), dict(panel_order=4), dict(window_k=2.0)],
)
def test_spec_validation(kwargs):
    with pytest.raises(ValueError):
        QuadratureSpec(**kwargs)


def test_nonconvergence_carries_best_estimate():
    # 16th-order panels cannot track cos(40 t t') at depth <= 2; the error
    # object must still expose the partial answer.
    spec = QuadratureSpec(rel_tol=1e-13, abs_tol=1e-16, max_depth=2)
    dom = Domain2D((-4.0, 4.0), (-4.0, 4.0), Ordering.FULL)

    def f(t, tp):
        return np.cos(40.0 * t * tp) * np.exp(-0.1 * (t * t + tp * tp))

    with pytest.raises(QuadratureNonConvergence) as excinfo:
        integrate_2d(f, dom, spec)
    exc = excinfo.value
    assert exc.reason == "max_depth exceeded"
    assert math.isfinite(exc.err_est) and exc.err_est > 0
    assert isinstance(exc.value, complex)
    assert "did not reach tolerance" in str(exc)


def test_error_estimate_is_conservative_here():
    # On smooth decaying integrands the embedded estimate should bound the
    # true error (it is a heuristic, so this is asserted only for this
    # well-behaved family).
    for freq in (0.0, 1.0, 3.0):

        def f(t, tp, w=freq):
            return np.exp(-t * t - tp * tp) * np.cos(w * (t - tp))

        exact = math.pi * math.exp(-freq * freq / 2.0)
        value, err = integrate_2d(f, FULL_SQUARE, SPEC)
        assert abs(value - exact) <= max(err, 5e-14)
