"""Detector-pair moments, negativities, and the interference phase.

Two gapped detectors (a, b) couple linearly to the field through Gaussian
spatial profiles and switching envelopes. To second order in the coupling,
the two-detector state is fixed by

* local noise terms  L_aa, L_bb  (excitation probabilities, per lambda^2),
* a cross term       L_ab,
* the pair term      M,  which splits as  M = M^+ + M^-  into a
  state-dependent part M^+ and a commutator-mediated (signalling) part M^-
  built from the k_ab_minus kernel.

Entanglement is measured by the negativity

    N = max(0, sqrt(|M|^2 + ((L_aa - L_bb)/2)^2) - (L_aa + L_bb)/2),

and N^+/N^- are the same expression with M -> M^+/M^-. Because

    |M|^2 = |M^+|^2 + |M^-|^2 + 2 |M^+||M^-| cos(dgamma),

the relative phase dgamma = arg(M^+) - arg(M^-) decides whether signalling
interferes constructively or destructively with the harvested part.

Detectors may start in an arbitrary pure state parameterized by angles
(alpha, beta): the moments for a general state are fixed cos^2/sin^2
combinations of the frequency-reversed blocks L(+-Omega, +-Omega) and
M(+-Omega, +-Omega), assembled by ``combine_general_L/M``.

All moments are reported per lambda^2 (coupling set to 1); the O(lambda^4)
remainder is dropped, so keeping the physical coupling perturbative is the
caller's responsibility.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

import numpy as np

from .kernels import effective_delta, k_ab, k_ab_minus, k_jj
from .quadrature import Domain2D, Ordering, QuadratureSpec, integrate_2d
from .switching import same_shape

__all__ = [
    "DetectorSpec",
    "BipartiteMoments",
    "InterferenceReport",
    "InterferenceClass",
    "MPart",
    "l_block",
    "m_block",
    "combine_general_L",
    "combine_general_M",
    "negativity",
    "analyze",
    "check_appendixA",
    "check_prop1",
    "check_appendixE",
]

# 1 / (2 (2 pi)^3): the common prefactor of every second-order moment.
_PRE = 1.0 / (2.0 * (2.0 * math.pi) ** 3)

# Coefficients below this are dropped without evaluating their block; the
# induced error (< 1e-30 x block) is far below any quadrature tolerance.
_COEFF_FLOOR = 1e-30

DEFAULT_TOL_ORTH = 1e-3


class MPart(Enum):
    FULL = "full"
    MINUS_ONLY = "minus_only"


class InterferenceClass(Enum):
    FULLY_DESTRUCTIVE = "FullyDestructive"
    DESTRUCTIVE = "Destructive"
    ORTHOGONAL = "Orthogonal"
    CONSTRUCTIVE = "Constructive"
    FULLY_CONSTRUCTIVE = "FullyConstructive"
    UNDEFINED = "Undefined"


@dataclass(frozen=True)
class DetectorSpec:
    """One detector: gap, comoving position, smearing, switching, state."""

    gap: float
    position: tuple[float, float, float]
    sigma: float
    switching: object
    state_alpha: float = 0.0
    state_beta: float = 0.0

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError("smearing width sigma must be positive")
        if len(self.position) != 3:
            raise ValueError("position must be a 3-vector")
        for name in ("state_alpha", "state_beta"):
            val = getattr(self, name)
            if not 0.0 <= val <= 2.0 * math.pi:
                raise ValueError(f"{name} must lie in [0, 2*pi], got {val}")
        object.__setattr__(self, "position", tuple(float(x) for x in self.position))

    @property
    def is_ground(self) -> bool:
        return self.state_alpha == 0.0


@dataclass(frozen=True)
class BipartiteMoments:
    L_aa: complex
    L_bb: complex
    L_ab: complex
    M: complex
    M_minus: complex
    M_plus: complex
    err_budget: float


@dataclass(frozen=True)
class InterferenceReport:
    N: float
    N_plus: float
    N_minus: float
    abs_M: float
    abs_M_plus: float
    abs_M_minus: float
    cos_dgamma: float
    dgamma: float
    classification: InterferenceClass


def _separation(det_i: DetectorSpec, det_j: DetectorSpec) -> float:
    return math.dist(det_i.position, det_j.position)


def _sigma_eff(sigma_i: float, sigma_j: float) -> float:
    """Width of the cross kernel for unequal smearings (quadrature mean)."""
    return math.sqrt(0.5 * (sigma_i * sigma_i + sigma_j * sigma_j))


def _cross_kernel(d: float, sigma: float, part: MPart):
    """k(delta) for a detector pair at comoving distance d >= 0."""
    if d > 0.0:
        if part is MPart.FULL:
            return lambda dl: k_ab(dl, d, sigma)
        return lambda dl: k_ab_minus(dl, d, sigma)
    if part is MPart.FULL:
        return lambda dl: k_jj(dl, sigma)
    # d -> 0 limit of k_ab_minus: the odd (imaginary) part of k_jj.
    coef = -1j * math.pi ** 1.5 / sigma**3

    def k_coincident_minus(dl):
        dl = np.asarray(dl, dtype=float)
        return coef * dl * np.exp(-(dl / (2.0 * sigma)) ** 2)

    return k_coincident_minus


def _l_block_err(det_i, det_j, omega_i, omega_j, bg, spec):
    d = _separation(det_i, det_j)
    kernel = _cross_kernel(d, _sigma_eff(det_i.sigma, det_j.sigma), MPart.FULL)
    chi_i, chi_j = det_i.switching, det_j.switching
    dom = Domain2D(
        chi_i.support_window(spec.window_k),
        chi_j.support_window(spec.window_k),
        Ordering.FULL,
    )

    # The 1/(2 (2 pi)^3) prefactor lives inside the integrand so that the
    # quadrature tolerances apply to the reported moment scale.
    def integrand(t, tp):
        phase = np.exp(-1j * (omega_i * t - omega_j * tp))
        return (
            _PRE
            * phase
            * chi_i.evaluate(t)
            * chi_j.evaluate(tp)
            * bg.measure_weight(t, tp)
            * kernel(effective_delta(bg, t, tp))
        )

    return integrate_2d(integrand, dom, spec)


def l_block(det_i, det_j, omega_i, omega_j, bg, spec: QuadratureSpec) -> complex:
    """Local-noise building block L_ij(omega_i, omega_j), full-plane integral."""
    return _l_block_err(det_i, det_j, omega_i, omega_j, bg, spec)[0]


def _m_block_err(det_a, det_b, omega_a, omega_b, bg, spec, part: MPart):
    d = _separation(det_a, det_b)
    kernel = _cross_kernel(d, _sigma_eff(det_a.sigma, det_b.sigma), part)
    chi_a, chi_b = det_a.switching, det_b.switching
    # The (t <-> t') symmetrized bracket makes both switchings appear in both
    # time slots, so each axis needs the union of the two supports.
    wa = chi_a.support_window(spec.window_k)
    wb = chi_b.support_window(spec.window_k)
    window = (min(wa[0], wb[0]), max(wa[1], wb[1]))
    dom = Domain2D(window, window, Ordering.ORDERED_LOWER)

    def integrand(t, tp):
        bracket = np.exp(1j * (omega_a * t + omega_b * tp)) * chi_a.evaluate(t) * chi_b.evaluate(tp)
        bracket = bracket + np.exp(1j * (omega_a * tp + omega_b * t)) * chi_a.evaluate(tp) * chi_b.evaluate(t)
        return -_PRE * bracket * bg.measure_weight(t, tp) * kernel(effective_delta(bg, t, tp))

    return integrate_2d(integrand, dom, spec)


def m_block(det_a, det_b, omega_a, omega_b, bg, spec: QuadratureSpec,
            part: MPart = MPart.FULL) -> complex:
    """Pair building block M(omega_a, omega_b) over the wedge t' <= t."""
    return _m_block_err(det_a, det_b, omega_a, omega_b, bg, spec, part)[0]


def _state_weights(alpha: float):
    c = math.cos(alpha) ** 2
    return c, 1.0 - c


def combine_general_L(blocks, alphas, betas) -> complex:
    """General-state L from blocks (L(+i,+j), L(+i,-j), L(-i,+j), L(-i,-j))."""
    pp, pm, mp, mm = blocks
    (alpha_i, alpha_j), (beta_i, beta_j) = alphas, betas
    c_i, s_i = _state_weights(alpha_i)
    c_j, s_j = _state_weights(alpha_j)
    return (
        c_i * c_j * pp
        - c_i * s_j * cmath.exp(-2j * beta_j) * pm
        - s_i * c_j * cmath.exp(2j * beta_i) * mp
        + s_i * s_j * cmath.exp(2j * (beta_i - beta_j)) * mm
    )


def combine_general_M(blocks, alphas, betas) -> complex:
    """General-state M from blocks (M(+a,+b), M(+a,-b), M(-a,+b), M(-a,-b))."""
    pp, pm, mp, mm = blocks
    (alpha_a, alpha_b), (beta_a, beta_b) = alphas, betas
    c_a, s_a = _state_weights(alpha_a)
    c_b, s_b = _state_weights(alpha_b)
    return (
        c_a * c_b * pp
        - c_a * s_b * cmath.exp(2j * beta_b) * pm
        - s_a * c_b * cmath.exp(2j * beta_a) * mp
        + s_a * s_b * cmath.exp(2j * (beta_a + beta_b)) * mm
    )


def _l_coefficients(alpha_i, beta_i, alpha_j, beta_j):
    c_i, s_i = _state_weights(alpha_i)
    c_j, s_j = _state_weights(alpha_j)
    return (
        c_i * c_j,
        -c_i * s_j * cmath.exp(-2j * beta_j),
        -s_i * c_j * cmath.exp(2j * beta_i),
        s_i * s_j * cmath.exp(2j * (beta_i - beta_j)),
    )


def _m_coefficients(alpha_a, beta_a, alpha_b, beta_b):
    c_a, s_a = _state_weights(alpha_a)
    c_b, s_b = _state_weights(alpha_b)
    return (
        c_a * c_b,
        -c_a * s_b * cmath.exp(2j * beta_b),
        -s_a * c_b * cmath.exp(2j * beta_a),
        s_a * s_b * cmath.exp(2j * (beta_a + beta_b)),
    )


def negativity(L_aa: float, L_bb: float, M: complex) -> float:
    """N = max(0, sqrt(|M|^2 + ((L_aa-L_bb)/2)^2) - (L_aa+L_bb)/2)."""
    if L_aa < 0.0 or L_bb < 0.0:
        raise ValueError(f"local noise must be nonnegative, got ({L_aa}, {L_bb})")
    v = math.hypot(abs(M), 0.5 * (L_aa - L_bb)) - 0.5 * (L_aa + L_bb)
    return max(0.0, v)


def _wrap_angle(x: float) -> float:
    """Wrap to (-pi, pi]."""
    y = math.remainder(x, 2.0 * math.pi)
    if y <= -math.pi:
        y += 2.0 * math.pi
    return y


class _BlockCache:
    """Evaluates (and re-uses) weighted moment blocks, tracking error."""

    def __init__(self, det_a, det_b, bg, spec):
        self.det_a, self.det_b, self.bg, self.spec = det_a, det_b, bg, spec
        self._store: dict = {}
        self.err_budget = 0.0

    def _get(self, key, compute):
        if key not in self._store:
            self._store[key] = compute()
        return self._store[key]

    def l_sum(self, which: str, omega_i: float, omega_j: float, coeffs) -> complex:
        det_i = self.det_a if which[0] == "a" else self.det_b
        det_j = self.det_a if which[1] == "a" else self.det_b
        total = 0.0 + 0.0j
        for coef, (wi, wj) in zip(
            coeffs,
            ((omega_i, omega_j), (omega_i, -omega_j), (-omega_i, omega_j), (-omega_i, -omega_j)),
        ):
            if abs(coef) < _COEFF_FLOOR:
                continue
            val, err = self._get(
                ("L", which, wi, wj),
                lambda wi=wi, wj=wj: _l_block_err(det_i, det_j, wi, wj, self.bg, self.spec),
            )
            total += coef * val
            self.err_budget += abs(coef) * err
        return total

    def m_sum(self, part: MPart, omega_a: float, omega_b: float, coeffs) -> complex:
        total = 0.0 + 0.0j
        for coef, (wa, wb) in zip(
            coeffs,
            ((omega_a, omega_b), (omega_a, -omega_b), (-omega_a, omega_b), (-omega_a, -omega_b)),
        ):
            if abs(coef) < _COEFF_FLOOR:
                continue
            val, err = self._get(
                ("M", part, wa, wb),
                lambda wa=wa, wb=wb: _m_block_err(
                    self.det_a, self.det_b, wa, wb, self.bg, self.spec, part
                ),
            )
            total += coef * val
            self.err_budget += abs(coef) * err
        return total


def _classify(abs_plus: float, abs_minus: float, cos_dg: float,
              abs_floor: float, tol_orth: float) -> InterferenceClass:
    # The relative phase is meaningless once either modulus sits at the
    # quadrature noise floor.
    if min(abs_plus, abs_minus) < abs_floor:
        return InterferenceClass.UNDEFINED
    if abs(cos_dg) < tol_orth:
        return InterferenceClass.ORTHOGONAL
    if cos_dg > 1.0 - tol_orth:
        return InterferenceClass.FULLY_CONSTRUCTIVE
    if cos_dg < -(1.0 - tol_orth):
        return InterferenceClass.FULLY_DESTRUCTIVE
    return InterferenceClass.CONSTRUCTIVE if cos_dg > 0.0 else InterferenceClass.DESTRUCTIVE


def analyze(det_a: DetectorSpec, det_b: DetectorSpec, bg, spec: QuadratureSpec,
            tol_orth: float = DEFAULT_TOL_ORTH):
    """Full pipeline: moments for the given pair, then the interference report."""
    cache = _BlockCache(det_a, det_b, bg, spec)
    aa, ba = det_a.state_alpha, det_a.state_beta
    ab, bb = det_b.state_alpha, det_b.state_beta

    L_aa = cache.l_sum("aa", det_a.gap, det_a.gap, _l_coefficients(aa, ba, aa, ba))
    L_bb = cache.l_sum("bb", det_b.gap, det_b.gap, _l_coefficients(ab, bb, ab, bb))
    L_ab = cache.l_sum("ab", det_a.gap, det_b.gap, _l_coefficients(aa, ba, ab, bb))
    m_coeffs = _m_coefficients(aa, ba, ab, bb)
    M_full = cache.m_sum(MPart.FULL, det_a.gap, det_b.gap, m_coeffs)
    M_minus = cache.m_sum(MPart.MINUS_ONLY, det_a.gap, det_b.gap, m_coeffs)
    M_plus = M_full - M_minus

    budget = max(cache.err_budget, spec.abs_tol)
    for name, val in (("L_aa", L_aa), ("L_bb", L_bb)):
        if abs(val.imag) > 10.0 * budget or val.real < -10.0 * budget:
            raise ValueError(
                f"{name} = {val!r} is not a nonnegative real within 10x the "
                f"quadrature budget {budget:.2e}"
            )

    moments = BipartiteMoments(
        L_aa=L_aa, L_bb=L_bb, L_ab=L_ab,
        M=M_full, M_minus=M_minus, M_plus=M_plus,
        err_budget=cache.err_budget,
    )

    laa = max(0.0, L_aa.real)
    lbb = max(0.0, L_bb.real)
    abs_m, abs_p, abs_n = abs(M_full), abs(M_plus), abs(M_minus)
    prod = abs_p * abs_n
    if prod > 0.0:
        cos_dg = (M_plus * M_minus.conjugate()).real / prod
        cos_dg = min(1.0, max(-1.0, cos_dg))
        dgamma = _wrap_angle(cmath.phase(M_plus) - cmath.phase(M_minus))
    else:
        cos_dg = math.nan
        dgamma = math.nan

    report = InterferenceReport(
        N=negativity(laa, lbb, M_full),
        N_plus=negativity(laa, lbb, M_plus),
        N_minus=negativity(laa, lbb, M_minus),
        abs_M=abs_m,
        abs_M_plus=abs_p,
        abs_M_minus=abs_n,
        cos_dgamma=cos_dg,
        dgamma=dgamma,
        classification=_classify(abs_p, abs_n, cos_dg, spec.abs_tol, tol_orth),
    )
    return moments, report


def check_appendixA(report: InterferenceReport, tol: float,
                    tol_orth: float = DEFAULT_TOL_ORTH) -> Optional[bool]:
    """When cos(dgamma) ~ 0, N must dominate the quadrature sum of N+-.

    Returns None when the orthogonality precondition does not hold.
    """
    if not abs(report.cos_dgamma) < tol_orth:  # NaN fails the gate too
        return None
    return report.N + tol >= math.hypot(report.N_plus, report.N_minus)


def _recentered(det: DetectorSpec, t0: float) -> DetectorSpec:
    return replace(det, switching=replace(det.switching, t0=t0))


def check_prop1(det_a: DetectorSpec, det_b: DetectorSpec, bg, spec: QuadratureSpec,
                rel_tol: float = 1e-8) -> bool:
    """Gap reversal with beta conjugation mirrors the interference phase.

    Sending Omega_j -> -Omega_j and beta_j -> -beta_j must leave |M+| and
    |M-| unchanged while flipping the sign of cos(dgamma).
    """
    _, rep = analyze(det_a, det_b, bg, spec)
    flipped_a = replace(det_a, gap=-det_a.gap,
                        state_beta=_wrap_beta(-det_a.state_beta))
    flipped_b = replace(det_b, gap=-det_b.gap,
                        state_beta=_wrap_beta(-det_b.state_beta))
    _, rep_f = analyze(flipped_a, flipped_b, bg, spec)

    floor = spec.abs_tol
    mod_ok = (
        abs(rep_f.abs_M_plus - rep.abs_M_plus) <= rel_tol * max(rep.abs_M_plus, floor)
        and abs(rep_f.abs_M_minus - rep.abs_M_minus) <= rel_tol * max(rep.abs_M_minus, floor)
    )
    if math.isnan(rep.cos_dgamma) and math.isnan(rep_f.cos_dgamma):
        cos_ok = True
    else:
        cos_ok = abs(rep_f.cos_dgamma + rep.cos_dgamma) <= 1e-8
    return mod_ok and cos_ok


def _wrap_beta(beta: float) -> float:
    return beta % (2.0 * math.pi)


def check_appendixE(det_a: DetectorSpec, det_b: DetectorSpec, bg, spec: QuadratureSpec,
                    rel_tol: float = 1e-8) -> tuple[Optional[bool], Optional[bool]]:
    """Swap symmetries under exchanging the two switching centers.

    First slot (equal shapes, equal gaps, ground states): M and M+- must be
    invariant. Second slot (each switching even about its own center): |M+-|
    must be invariant while cos(dgamma) flips sign. A slot is None when its
    hypotheses do not hold for the given pair.
    """
    swapped_a = _recentered(det_a, det_b.switching.t0)
    swapped_b = _recentered(det_b, det_a.switching.t0)

    prop6: Optional[bool] = None
    prop7: Optional[bool] = None
    floor = spec.abs_tol

    need6 = (
        same_shape(det_a.switching, det_b.switching)
        and det_a.gap == det_b.gap
        and det_a.is_ground
        and det_b.is_ground
    )
    need7 = det_a.switching.is_even and det_b.switching.is_even

    if not (need6 or need7):
        return (None, None)

    mom, rep = analyze(det_a, det_b, bg, spec)
    mom_s, rep_s = analyze(swapped_a, swapped_b, bg, spec)

    if need6:
        prop6 = all(
            abs(x - y) <= rel_tol * max(abs(x), floor)
            for x, y in (
                (mom.M, mom_s.M),
                (mom.M_plus, mom_s.M_plus),
                (mom.M_minus, mom_s.M_minus),
            )
        )
    if need7:
        mods_ok = (
            abs(rep_s.abs_M_plus - rep.abs_M_plus) <= rel_tol * max(rep.abs_M_plus, floor)
            and abs(rep_s.abs_M_minus - rep.abs_M_minus) <= rel_tol * max(rep.abs_M_minus, floor)
        )
        if math.isnan(rep.cos_dgamma) and math.isnan(rep_s.cos_dgamma):
            cos_ok = True
        else:
            cos_ok = abs(rep_s.cos_dgamma + rep.cos_dgamma) <= 1e-8
        prop7 = mods_ok and cos_ok
    return (prop6, prop7)
