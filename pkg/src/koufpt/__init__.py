"""First-passage-time probabilities for the Kou double-exponential jump-diffusion.

Computes P(tau_b <= t) and P(X_t >= a, tau_b <= t) by inverting their complex
Laplace transforms along a Bromwich contour (Euler-accelerated Fourier
series), with Gaver-Stehfest and grid Monte Carlo as cross-validators.
"""

from ._backend import backend_name
from .inversion import (
    Estimate,
    EulerConfig,
    GaverConfig,
    InversionError,
    euler_invert,
    gaver_sequence,
    gaver_stehfest,
)
from .model import (
    KouParams,
    PoleError,
    levy_exponent,
    levy_exponent_derivative,
    validate_params,
)
from .montecarlo import McConfig, McResult, estimate_probabilities, simulate_path
from .quartic import (
    ClassificationError,
    ClassifiedRoots,
    QuarticPoly,
    ResultantPoly,
    RootSolveError,
    build_characteristic_quartic,
    choose_contour,
    classify_roots,
    resultant_in_alpha,
    singular_points,
    solve_quartic,
)
from .transforms import (
    DegenerateRootsError,
    TransformInputs,
    coeff_A,
    coeff_B,
    coeff_C,
    coeff_D,
    fpt_transform,
    fpt_transform_mp,
    joint_transform,
    make_fpt_mp,
)

__version__ = "0.1.0"

__all__ = [
    "backend_name",
    "Estimate",
    "EulerConfig",
    "GaverConfig",
    "InversionError",
    "euler_invert",
    "gaver_sequence",
    "gaver_stehfest",
    "KouParams",
    "PoleError",
    "levy_exponent",
    "levy_exponent_derivative",
    "validate_params",
    "McConfig",
    "McResult",
    "estimate_probabilities",
    "simulate_path",
    "ClassificationError",
    "ClassifiedRoots",
    "QuarticPoly",
    "ResultantPoly",
    "RootSolveError",
    "build_characteristic_quartic",
    "choose_contour",
    "classify_roots",
    "resultant_in_alpha",
    "singular_points",
    "solve_quartic",
    "DegenerateRootsError",
    "TransformInputs",
    "coeff_A",
    "coeff_B",
    "coeff_C",
    "coeff_D",
    "fpt_transform",
    "fpt_transform_mp",
    "joint_transform",
    "make_fpt_mp",
    "__version__",
]
