"""Two-tier hybrid-duplex HetNet toolkit.

Analytic SINR/spectral-efficiency model for received-power-based duplex
switching, a from-first-principles Monte Carlo validator, and the greedy
duplex-mode selection algorithm with an exhaustive oracle.
"""

__version__ = "0.1.0"

from .params import NetworkParams, DerivedScales, load_config
from .association import association_probabilities, classify_user, duplex_gain
from .analytic import (
    CcdfCurve,
    SinrModel,
    SpectralEfficiencyReport,
    ccdf,
    ccdf_mixture,
    corollary_limits,
    laplace,
    spectral_efficiency,
)
from .quadrature import QuadratureSpec

__all__ = [
    "__version__",
    "NetworkParams",
    "DerivedScales",
    "load_config",
    "association_probabilities",
    "classify_user",
    "duplex_gain",
    "CcdfCurve",
    "SinrModel",
    "SpectralEfficiencyReport",
    "ccdf",
    "ccdf_mixture",
    "corollary_limits",
    "laplace",
    "spectral_efficiency",
    "QuadratureSpec",
]
