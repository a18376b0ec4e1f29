"""Exact curvature, holonomy and classification of polynomial Walker metrics."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    NonConvergenceError,
    PolynomialParseError,
    PreconditionError,
    SpecError,
    WalkerError,
)
from .metric import WalkerMetric, adapted_frame, christoffel, inverse_metric, metric_matrix  # noqa: E402,E501
from .polynomial import Polynomial  # noqa: E402

__all__ = [
    "__version__",
    "Polynomial",
    "WalkerMetric",
    "metric_matrix",
    "inverse_metric",
    "christoffel",
    "adapted_frame",
    "WalkerError",
    "SpecError",
    "PolynomialParseError",
    "PreconditionError",
    "NonConvergenceError",
]
