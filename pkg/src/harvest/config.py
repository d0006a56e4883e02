"""Flat key = value sweep configuration.

The format is intentionally dumb: one `dotted.key = value` pair per line,
`#` comments, blank lines ignored, no nesting or quoting. A config may start
from a named preset (`preset = fig4`) and override any subset of keys.

Key reference (also printed by ``harvest schema``):

  preset                    optional; one of the PRESETS names
  detector_a.gap            detector gap Omega (1/time)
  detector_a.sigma          smearing width (length)
  detector_a.position       comma-separated comoving 3-vector (length)
  detector_a.state_alpha    initial-state angle alpha in [0, 2*pi]
  detector_a.state_beta     initial-state angle beta in [0, 2*pi]
  detector_a.switching.kind gaussian | skew
  detector_a.switching.T    switching width (time)
  detector_a.switching.t0   switching center (time)
  detector_a.switching.alpha  skewness (skew kind only)
  detector_b.*              same keys for the second detector
  background.kind           minkowski | desitter | cosh | tabulated
  background.H              expansion rate (1/time; desitter and cosh)
  background.scale_factor   path to two-column (t, a) samples (tabulated)
  quad.rel_tol              relative tolerance of every 2D integral
  quad.abs_tol              absolute floor of the same
  quad.window_k             switching support truncation in widths
  quad.panel_order          Gauss-Legendre nodes per panel axis
  quad.max_depth            bisection depth limit per panel
  sweep.axis                delta_t | d
  sweep.start, sweep.stop   axis range (start < stop)
  sweep.steps               number of grid points (>= 2)
  sweep.centering           symmetric | fixed_a (delta_t axis only)
  sweep.mid                 midpoint time for symmetric centering
  output.path               default CSV destination (--out overrides)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path

from .background import CoshSymmetric, DeSitter, Minkowski, Tabulated
from .harvesting import DetectorSpec
from .quadrature import QuadratureSpec
from .switching import GaussianSwitching, SkewNormalSwitching

__all__ = ["ConfigError", "SweepConfig", "DetectorConfig", "parse_config",
           "load_config", "config_from_preset", "PRESETS", "schema_text"]


class ConfigError(ValueError):
    """Malformed or inconsistent sweep configuration."""


@dataclass(frozen=True)
class DetectorConfig:
    gap: float = 1.0
    sigma: float = 0.1
    position: tuple[float, float, float] = (0.0, 0.0, 0.0)
    state_alpha: float = 0.0
    state_beta: float = 0.0
    switching_kind: str = "gaussian"
    switching_T: float = 1.0
    switching_t0: float = 0.0
    switching_alpha: float = 0.0

    def build_switching(self, t0: float):
        if self.switching_kind == "gaussian":
            return GaussianSwitching(T=self.switching_T, t0=t0)
        return SkewNormalSwitching(T=self.switching_T, t0=t0, alpha=self.switching_alpha)

    def build(self, t0: float, position=None) -> DetectorSpec:
        return DetectorSpec(
            gap=self.gap,
            position=self.position if position is None else position,
            sigma=self.sigma,
            switching=self.build_switching(t0),
            state_alpha=self.state_alpha,
            state_beta=self.state_beta,
        )


@dataclass(frozen=True)
class SweepConfig:
    detector_a: DetectorConfig
    detector_b: DetectorConfig
    background_kind: str = "minkowski"
    background_H: float = 0.0
    background_table: str = ""
    axis: str = "delta_t"
    start: float = -1.0
    stop: float = 1.0
    steps: int = 2
    centering: str = "symmetric"
    mid: float = 0.0
    quad: QuadratureSpec = QuadratureSpec()
    output: str = ""

    def __post_init__(self):
        if self.axis not in ("delta_t", "d"):
            raise ConfigError(f"sweep.axis must be delta_t or d, got {self.axis!r}")
        if self.centering not in ("symmetric", "fixed_a"):
            raise ConfigError(
                f"sweep.centering must be symmetric or fixed_a, got {self.centering!r}"
            )
        if self.steps < 2:
            raise ConfigError(f"sweep.steps must be >= 2, got {self.steps}")
        if not self.start < self.stop:
            raise ConfigError(
                f"sweep.start must be < sweep.stop, got {self.start} >= {self.stop}"
            )
        if self.background_kind not in ("minkowski", "desitter", "cosh", "tabulated"):
            raise ConfigError(f"unknown background.kind {self.background_kind!r}")
        if self.background_kind in ("desitter", "cosh") and self.background_H <= 0:
            raise ConfigError("background.H must be positive for expanding backgrounds")
        if self.background_kind == "tabulated" and not self.background_table:
            raise ConfigError("background.scale_factor sample file is required")

    def grid(self) -> list[float]:
        n = self.steps
        return [self.start + (self.stop - self.start) * i / (n - 1) for i in range(n)]

    def build_background(self):
        if self.background_kind == "minkowski":
            return Minkowski()
        if self.background_kind == "desitter":
            return DeSitter(H=self.background_H)
        if self.background_kind == "cosh":
            return CoshSymmetric(H=self.background_H)
        try:
            import numpy as np

            samples = np.loadtxt(self.background_table)
            return Tabulated(samples[:, 0], samples[:, 1])
        except OSError as exc:
            raise ConfigError(f"cannot read background.scale_factor file: {exc}") from exc

    def detectors_at(self, x: float) -> tuple[DetectorSpec, DetectorSpec]:
        """Detector pair for one sweep point."""
        ca, cb = self.detector_a, self.detector_b
        if self.axis == "delta_t":
            if self.centering == "symmetric":
                ta, tb = self.mid - 0.5 * x, self.mid + 0.5 * x
            else:
                ta, tb = ca.switching_t0, ca.switching_t0 + x
            return ca.build(ta), cb.build(tb)
        # d axis: keep configured switchings, place b at distance x along +x.
        pos_b = (ca.position[0] + x, ca.position[1], ca.position[2])
        return ca.build(ca.switching_t0), cb.build(cb.switching_t0, position=pos_b)

    def point_geometry(self, x: float) -> tuple[float, float]:
        """(d, delta_t) actually realized at sweep value x."""
        det_a, det_b = self.detectors_at(x)
        return (
            math.dist(det_a.position, det_b.position),
            det_b.switching.t0 - det_a.switching.t0,
        )


_DETECTOR_KEYS = {
    "gap": ("gap", float),
    "sigma": ("sigma", float),
    "position": ("position", None),
    "state_alpha": ("state_alpha", float),
    "state_beta": ("state_beta", float),
    "switching.kind": ("switching_kind", str),
    "switching.T": ("switching_T", float),
    "switching.t0": ("switching_t0", float),
    "switching.alpha": ("switching_alpha", float),
}


def _parse_position(text: str) -> tuple[float, float, float]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise ValueError("position needs exactly three comma-separated numbers")
    return tuple(float(p) for p in parts)


def _parse_value(key: str, value: str, lineno: int):
    try:
        if key.startswith(("detector_a.", "detector_b.")):
            sub = key.split(".", 1)[1]
            if sub not in _DETECTOR_KEYS:
                raise KeyError(f"unknown detector key {sub!r}")
            field, conv = _DETECTOR_KEYS[sub]
            if sub == "position":
                return field, _parse_position(value)
            if sub == "switching.kind":
                if value not in ("gaussian", "skew"):
                    raise ValueError("switching.kind must be gaussian or skew")
                return field, value
            return field, conv(value)
        if key == "background.kind":
            return key, value
        if key == "background.H":
            return key, float(value)
        if key == "background.scale_factor":
            return key, value
        if key in ("quad.rel_tol", "quad.abs_tol"):
            return key, float(value)
        if key in ("quad.window_k",):
            return key, float(value)
        if key in ("quad.panel_order", "quad.max_depth", "sweep.steps"):
            return key, int(value)
        if key in ("sweep.start", "sweep.stop", "sweep.mid"):
            return key, float(value)
        if key in ("sweep.axis", "sweep.centering", "output.path", "preset"):
            return key, value
        raise KeyError(f"unknown key {key!r}")
    except (ValueError, KeyError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        raise ConfigError(f"line {lineno}: {msg}") from exc


def parse_config(text: str, source: str = "<config>") -> SweepConfig:
    """Parse config text; raises ConfigError with line numbers."""
    entries: dict = {}
    preset_name = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}: line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not value:
            raise ConfigError(f"{source}: line {lineno}: empty value for {key!r}")
        try:
            field, parsed = _parse_value(key, value, lineno)
        except ConfigError as exc:
            raise ConfigError(f"{source}: {exc}") from None
        if field == "preset":
            preset_name = parsed
        else:
            entries[(key.split(".", 1)[0] if key.startswith("detector") else None, field)] = parsed

    base = config_from_preset(preset_name, source) if preset_name else SweepConfig(
        detector_a=DetectorConfig(), detector_b=DetectorConfig()
    )
    return _apply_entries(base, entries)


def _apply_entries(base: SweepConfig, entries: dict) -> SweepConfig:
    det_a, det_b = base.detector_a, base.detector_b
    cfg_updates: dict = {}
    quad_updates: dict = {}
    for (det, field), value in entries.items():
        if det == "detector_a":
            det_a = replace(det_a, **{field: value})
        elif det == "detector_b":
            det_b = replace(det_b, **{field: value})
        elif field.startswith("quad."):
            quad_updates[field.split(".", 1)[1]] = value
        elif field.startswith("sweep."):
            cfg_updates[field.split(".", 1)[1]] = value
        elif field.startswith("background."):
            sub = field.split(".", 1)[1]
            cfg_updates["background_" + ("table" if sub == "scale_factor" else sub)] = value
        elif field == "output.path":
            cfg_updates["output"] = value
    quad = base.quad
    if quad_updates:
        max_depth = quad_updates.pop("max_depth", quad.max_depth)
        try:
            quad = replace(quad, max_depth=max_depth, **quad_updates)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    try:
        return replace(base, detector_a=det_a, detector_b=det_b, quad=quad, **cfg_updates)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str) -> SweepConfig:
    if path.startswith("preset:"):
        return config_from_preset(path.split(":", 1)[1], path)
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    return parse_config(text, source=str(p))


# ---------------------------------------------------------------------------
# presets (expressed in the config language so they exercise the parser)
# ---------------------------------------------------------------------------

_FIG2_BASE = """
detector_a.gap = 5.0
detector_b.gap = 5.0
detector_a.sigma = 0.3
detector_b.sigma = 0.3
detector_a.position = 0, 0, 0
detector_b.position = 2.1, 0, 0
detector_a.switching.T = 1.0
detector_b.switching.T = 1.0
sweep.axis = delta_t
sweep.start = -6.0
sweep.stop = 6.0
sweep.centering = symmetric
"""

PRESETS: dict[str, str] = {
    # Two equal detectors, skewed switchings: destructive/constructive bands.
    "fig2_skew": _FIG2_BASE + """
detector_a.switching.kind = skew
detector_b.switching.kind = skew
detector_a.switching.alpha = 2.35
detector_b.switching.alpha = 2.35
sweep.steps = 121
""",
    # Same geometry with even switchings: the orthogonal (cos = 0) control.
    "fig2_symmetric": _FIG2_BASE + """
detector_a.switching.kind = gaussian
detector_b.switching.kind = gaussian
sweep.steps = 61
""",
    # Separation scan at simultaneous switching.
    "fig3": """
detector_a.gap = 5.0
detector_b.gap = 5.0
detector_a.sigma = 0.3
detector_b.sigma = 0.3
detector_a.position = 0, 0, 0
detector_a.switching.T = 1.0
detector_b.switching.T = 1.0
detector_a.switching.t0 = 0.0
detector_b.switching.t0 = 0.0
sweep.axis = d
sweep.start = 0.5
sweep.stop = 6.0
sweep.steps = 23
""",
    # Unequal switching widths: order-of-coupling advantage.
    "fig4": """
detector_a.gap = 4.0
detector_b.gap = 4.0
detector_a.sigma = 0.2
detector_b.sigma = 0.2
detector_a.position = 0, 0, 0
detector_b.position = 3.0, 0, 0
detector_a.switching.T = 1.0
detector_b.switching.T = 1.3
sweep.axis = delta_t
sweep.start = -6.0
sweep.stop = 6.0
sweep.steps = 61
sweep.centering = symmetric
""",
    # Exponential expansion: communication-assisted entanglement.
    "fig5": """
detector_a.gap = 4.0
detector_b.gap = 4.0
detector_a.sigma = 0.1
detector_b.sigma = 0.1
detector_a.position = 0, 0, 0
detector_b.position = 2.0, 0, 0
detector_a.switching.T = 1.0
detector_b.switching.T = 1.0
background.kind = desitter
background.H = 0.1
sweep.axis = delta_t
sweep.start = -6.0
sweep.stop = 6.0
sweep.steps = 61
sweep.centering = symmetric
""",
}


def config_from_preset(name: str, source: str = "<preset>") -> SweepConfig:
    if name not in PRESETS:
        raise ConfigError(
            f"{source}: unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}"
        )
    return parse_config(PRESETS[name], source=f"preset:{name}")


def schema_text() -> str:
    doc = __doc__.split("Key reference", 1)[1]
    lines = ["Sweep configuration: one 'dotted.key = value' per line, '#' comments.",
             "", "Key reference" + doc.rstrip(), "",
             "Defaults: " + ", ".join(
                 f"quad.{f}={getattr(QuadratureSpec(), f)}"
                 for f in ("rel_tol", "abs_tol", "window_k", "panel_order", "max_depth")
             ),
             "Presets: " + ", ".join(sorted(PRESETS)),
             "Use 'preset = <name>' inside a config (override any key after it),",
             "or pass --config preset:<name> directly."]
    return "\n".join(lines)
