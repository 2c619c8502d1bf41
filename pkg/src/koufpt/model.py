"""Kou double-exponential jump-diffusion: parameters and Levy exponent.

The process is X_t = sigma * W_t + mu * t + sum of N_t jumps, where jumps are
a mixture of a positive exponential (rate eta1, probability p) and a negative
exponential (rate eta2, probability 1 - p).  Everything downstream (root
classification, Laplace transforms, inversion) is driven by the exponent

    G(z) = mu*z + 0.5*sigma^2*z^2 + lam*(p*eta1/(eta1 - z)
                                         + (1 - p)*eta2/(eta2 + z) - 1)

with E[exp(i*s*X_t)] = exp(t*G(i*s)).
"""

from __future__ import annotations

from dataclasses import dataclass


class PoleError(ValueError):
    """Evaluation requested at (or within machine tolerance of) a pole of G."""


@dataclass(frozen=True)
class KouParams:
    """Model parameters (per unit time); `lam` is the jump intensity lambda."""

    mu: float
    sigma: float
    lam: float
    eta1: float
    eta2: float
    p: float


def validate_params(params: KouParams) -> None:
    """Raise ValueError naming the first violated parameter constraint.

    lam = 0 is admitted (degenerate pure-diffusion mode used by the
    closed-form Brownian barrier checks), although the full model assumes
    lam > 0.
    """
    if not params.sigma > 0:
        raise ValueError("sigma must be positive")
    if not params.eta1 > 0:
        raise ValueError("eta1 must be positive")
    if not params.eta2 > 0:
        raise ValueError("eta2 must be positive")
    if not 0 < params.p < 1:
        raise ValueError("p must lie in (0,1)")
    if not params.lam >= 0:
        raise ValueError("lambda must be nonnegative")


def _pole_guard(params: KouParams, z: complex) -> None:
    tol = 1e-12 * (1.0 + params.eta1 + params.eta2)
    if abs(z - params.eta1) < tol:
        raise PoleError(f"G is singular at eta1 = {params.eta1}")
    if abs(z + params.eta2) < tol:
        raise PoleError(f"G is singular at -eta2 = {-params.eta2}")


def levy_exponent(params: KouParams, z: complex) -> complex:
    """G(z) on the complex plane, excluding the poles eta1 and -eta2."""
    z = complex(z)
    _pole_guard(params, z)
    jump = params.p * params.eta1 / (params.eta1 - z) + (1.0 - params.p) * params.eta2 / (params.eta2 + z) - 1.0
    return params.mu * z + 0.5 * params.sigma**2 * z * z + params.lam * jump


def levy_exponent_derivative(params: KouParams, z: complex) -> complex:
    """Analytic derivative G'(z), same pole restrictions as G."""
    z = complex(z)
    _pole_guard(params, z)
    jump = (
        params.p * params.eta1 / (params.eta1 - z) ** 2
        - (1.0 - params.p) * params.eta2 / (params.eta2 + z) ** 2
    )
    return params.mu + params.sigma**2 * z + params.lam * jump
