"""Entanglement harvesting with communicating detector pairs.

Numerical pipeline for two gapped particle detectors coupled to a massless
scalar field in flat or conformally-flat FRW spacetimes: second-order
moments (L_ij, M), the communication split M = M+ + M-, negativities, and
the interference phase between harvested and signalled correlations.
"""

from .background import CoshSymmetric, DeSitter, Minkowski, Tabulated
from .config import PRESETS, ConfigError, SweepConfig, config_from_preset, load_config
from .harvesting import (
    BipartiteMoments,
    DetectorSpec,
    InterferenceClass,
    InterferenceReport,
    MPart,
    analyze,
    check_appendixA,
    check_appendixE,
    check_prop1,
    combine_general_L,
    combine_general_M,
    l_block,
    m_block,
    negativity,
)
from .kernels import effective_delta, k_ab, k_ab_minus, k_jj, k_oracle, script_i
from .quadrature import (
    Domain2D,
    EmptyWedgeError,
    Ordering,
    QuadratureNonConvergence,
    QuadratureSpec,
    build_domain,
    integrate_2d,
)
from .special import dawson, erf, erfi
from .sweep import CSV_COLUMNS, run_sweep
from .switching import GaussianSwitching, SkewNormalSwitching, same_shape
from .verify import SUITES, run_verify

__all__ = [
    "BipartiteMoments", "CSV_COLUMNS", "ConfigError", "CoshSymmetric",
    "DeSitter", "DetectorSpec", "Domain2D", "EmptyWedgeError",
    "GaussianSwitching", "InterferenceClass", "InterferenceReport",
    "MPart", "Minkowski", "Ordering", "PRESETS", "QuadratureNonConvergence",
    "QuadratureSpec", "SUITES", "SkewNormalSwitching", "SweepConfig",
    "Tabulated", "analyze", "build_domain", "check_appendixA",
    "check_appendixE", "check_prop1", "combine_general_L",
    "combine_general_M", "config_from_preset", "dawson", "effective_delta",
    "erf", "erfi", "integrate_2d", "k_ab", "k_ab_minus", "k_jj", "k_oracle",
    "l_block", "load_config", "m_block", "negativity", "run_sweep",
    "run_verify", "same_shape", "script_i",
]
