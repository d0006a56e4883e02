#!/usr/bin/env python3
"""Regenerate tests/data/special_reference.json.

Frozen high-precision reference values for the real special functions and the
skew-normal calibration constants. Everything here is computed with mpmath at
50 decimal digits, independently of the production code path:

* dawson: compensated Gauss-Legendre quadrature of the defining integral,
  D(x) = e^{-x^2} * int_0^x e^{y^2} dy
* erf / erfi: Maclaurin series sum_n (+-1)^n x^(2n+1) / (n! (2n+1)) * 2/sqrt(pi)
* skew-normal calibration: root of the peak equation
  u (1 + erf(a u)) = (a/sqrt(pi)) e^{-a^2 u^2}  for the raw profile
  e^{-u^2} (1 + erf(a u)), solved with mpmath.findroot.

The JSON is committed; rerun this script only to extend the table. Values are
rounded to the nearest binary double on output, which is what the tests
compare against.
"""

from __future__ import annotations

import json
from pathlib import Path

import mpmath as mp

OUT = Path(__file__).parent / "data" / "special_reference.json"

mp.mp.dps = 50


def dawson_quad(x: mp.mpf) -> mp.mpf:
    """Dawson function via Gauss-Legendre quadrature of the defining integral."""
    if x == 0:
        return mp.mpf(0)
    core = mp.quad(lambda y: mp.e ** (y * y), [0, x], method="gauss-legendre")
    return mp.e ** (-x * x) * core


def erf_series(x: mp.mpf) -> mp.mpf:
    # The alternating series cancels down from terms of size e^{x^2}, so the
    # working precision must grow with x^2 or the sum is garbage past x ~ 7.
    extra = int(x * x * 0.4343) + 20
    with mp.workdps(mp.mp.dps + extra):
        total = mp.mpf(0)
        term = mp.mpf(x)
        n = 0
        while abs(term) > mp.mpf(10) ** (-(mp.mp.dps + 10)) * (abs(total) + 1):
            total += term / (2 * n + 1)
            n += 1
            term *= -x * x / n
        total = total * 2 / mp.sqrt(mp.pi)
    return total


def erfi_series(x: mp.mpf) -> mp.mpf:
    total = mp.mpf(0)
    term = x
    n = 0
    while abs(term) > mp.mpf(10) ** (-(mp.mp.dps + 10)) * (abs(total) + 1):
        total += term / (2 * n + 1)
        n += 1
        term *= x * x / n
    return total * 2 / mp.sqrt(mp.pi)


def skew_calibration(alpha: float) -> tuple[mp.mpf, mp.mpf]:
    """(t_max, N) for the raw profile e^{-u^2}(1 + erf(alpha*u)), T = 1."""
    a = mp.mpf(alpha)
    if a == 0:
        return mp.mpf(0), mp.mpf(1)

    def peak_eq(u):
        return u * (1 + mp.erf(a * u)) - (a / mp.sqrt(mp.pi)) * mp.e ** (-(a * u) ** 2)

    u0 = mp.findroot(peak_eq, mp.mpf("0.3"))
    raw = mp.e ** (-u0 * u0) * (1 + mp.erf(a * u0))
    return u0, 1 / raw


def main() -> None:
    # 100 log-spaced points spanning the acceptance range, plus spot anchors.
    n = 100
    lo, hi = mp.mpf("1e-4"), mp.mpf(20)
    xs = [float(lo * (hi / lo) ** (mp.mpf(i) / (n - 1))) for i in range(n)]

    rows = []
    for x in xs:
        xm = mp.mpf(x)
        d_quad = dawson_quad(xm)
        # Oracle self-check: quadrature route vs series route must agree to
        # far beyond double precision before anything is frozen.
        d_series = mp.sqrt(mp.pi) / 2 * mp.e ** (-xm * xm) * erfi_series(xm)
        assert abs(d_quad - d_series) <= mp.mpf(10) ** (-35) * abs(d_quad), x
        rows.append(
            {
                "x": x,
                "dawson": float(d_quad),
                "erfi": float(erfi_series(xm)) if x <= 26 else None,
                "erf": float(erf_series(xm)),
            }
        )

    anchors = {
        "dawson_1": float(dawson_quad(mp.mpf(1))),
        "erf_1": float(erf_series(mp.mpf(1))),
        "erfi_1": float(erfi_series(mp.mpf(1))),
        "dawson_half": float(dawson_quad(mp.mpf("0.5"))),
        "dawson_max_abs": float(dawson_quad(mp.findroot(
            lambda u: 1 - 2 * u * dawson_quad(u), mp.mpf("0.9")))),
    }

    skews = {}
    for alpha in (0.5, 1.0, 2.35, 5.0):
        t_max, n_alpha = skew_calibration(alpha)
        skews[str(alpha)] = {"t_max": float(t_max), "n_alpha": float(n_alpha)}

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(
        json.dumps({"grid": rows, "anchors": anchors, "skew": skews}, indent=1)
    )
    print(f"wrote {OUT} ({len(rows)} grid points)")
    print("anchors:", json.dumps(anchors, indent=2))
    print("skew:", json.dumps(skews, indent=2))


if __name__ == "__main__":
    main()
