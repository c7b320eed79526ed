"""Exact and numerical evaluation of Gaussian-windowed Bessel transforms.

The quantity of interest is the integral over the real line of

    exp(-beta^2 x^2 - i q x) * x^(m+1/2) * J_{n+1/2}(x)

for non-negative integers m, n.  ``eval_closed`` computes it in closed
form; ``eval_quadrature_direct`` and ``eval_quadrature_hermite`` are two
independent numerical oracles, and ``compare`` cross-checks all three.
"""

from .closed_form import (
    BETA_MIN,
    EndpointWeights,
    EvalParams,
    EvaluationError,
    OverflowGuardError,
    ParameterError,
    e_poly,
    endpoint_weights,
    eval_closed,
    gaussian_moment_even,
    gaussian_moment_odd,
    residual_integral,
)
from .numerics import (
    MAX_ORDER,
    Polynomial,
    double_factorial,
    erf,
    hermite,
    one_minus_t2_pow,
    poly_derivative,
    spherical_bessel_j,
)
from .oracle import (
    ComparisonReport,
    ConvergenceError,
    QuadratureResult,
    compare,
    eval_quadrature_direct,
    eval_quadrature_hermite,
    gauss_hermite_fourier,
    rel_disagreement,
)

__version__ = "0.1.0"

__all__ = [
    "BETA_MIN",
    "ComparisonReport",
    "ConvergenceError",
    "EndpointWeights",
    "EvalParams",
    "EvaluationError",
    "MAX_ORDER",
    "OverflowGuardError",
    "ParameterError",
    "Polynomial",
    "QuadratureResult",
    "__version__",
    "compare",
    "double_factorial",
    "e_poly",
    "endpoint_weights",
    "erf",
    "eval_closed",
    "eval_quadrature_direct",
    "eval_quadrature_hermite",
    "gauss_hermite_fourier",
    "gaussian_moment_even",
    "gaussian_moment_odd",
    "hermite",
    "one_minus_t2_pow",
    "poly_derivative",
    "rel_disagreement",
    "residual_integral",
    "spherical_bessel_j",
]
