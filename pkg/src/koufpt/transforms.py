"""Complex Laplace transforms of the first-passage and joint probabilities.

For a barrier b > 0 with crossing time tau_b and Re(alpha) > 0:

    fpt_transform   -> integral of exp(-alpha*t) * P(tau_b <= t) dt
    joint_transform -> integral of exp(-alpha*t) * P(X_t >= a, tau_b <= t) dt

Both are rational-exponential expressions in the classified roots of
G(z) = alpha.  The naive formulas are 0/0 at the removable singularities where
two roots coincide; below a relative gap of ~1e-6 the evaluation switches to
series/merged-pole rewrites that stay finite through the collision.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable

from . import _backend
from .model import KouParams, levy_exponent_derivative, validate_params
from .quartic import ClassifiedRoots, build_characteristic_quartic, roots_for


class DegenerateRootsError(ArithmeticError):
    """Near-coincident roots: the naive coefficient formula is unusable."""


@dataclass(frozen=True)
class TransformInputs:
    """Barrier level b > 0 and, for the joint transform, threshold a <= b."""

    params: KouParams
    b: float
    a: float | None = None

    def __post_init__(self) -> None:
        validate_params(self.params)
        if not self.b > 0:
            raise ValueError("b must be positive")
        if self.a is not None and not self.a <= self.b:
            raise ValueError("a must satisfy a <= b")


def _eps_degenerate(x: complex, y: complex) -> float:
    return 1e-6 * (1.0 + abs(x) + abs(y))


def _require_separated(x: complex, y: complex, label: str) -> None:
    if abs(y - x) < _eps_degenerate(x, y):
        raise DegenerateRootsError(f"{label} differ by {abs(y - x):.3e}; use the stable branch")


def coeff_A(roots: ClassifiedRoots, params: KouParams, b: float) -> complex:
    """A(alpha): weight of the no-overshoot crossing (X at tau_b equals b)."""
    b1, b2 = roots.beta1, roots.beta2
    _require_separated(b1, b2, "beta1 and beta2")
    eta1 = params.eta1
    d = b2 - b1
    return (eta1 - b1) / d * cmath.exp(-b1 * b) + (b2 - eta1) / d * cmath.exp(-b2 * b)


def coeff_B(roots: ClassifiedRoots, params: KouParams, b: float) -> complex:
    """B(alpha): weight of the jump-overshoot crossing (X at tau_b above b)."""
    b1, b2 = roots.beta1, roots.beta2
    _require_separated(b1, b2, "beta1 and beta2")
    eta1 = params.eta1
    return (b2 - eta1) * (eta1 - b1) / (eta1 * (b2 - b1)) * (cmath.exp(-b1 * b) - cmath.exp(-b2 * b))


def coeff_C(roots: ClassifiedRoots, params: KouParams, j: int) -> complex:
    """C_j = 1 / (beta_j * G'(-beta_j)) for j in {3, 4}."""
    bj = _tail_root(roots, j)
    _require_separated(roots.beta3, roots.beta4, "beta3 and beta4")
    return 1.0 / (bj * levy_exponent_derivative(params, -bj))


def coeff_D(roots: ClassifiedRoots, params: KouParams, j: int) -> complex:
    """D_j = eta1 / ((eta1 + beta_j) * beta_j * G'(-beta_j)) for j in {3, 4}."""
    bj = _tail_root(roots, j)
    _require_separated(roots.beta3, roots.beta4, "beta3 and beta4")
    return params.eta1 / ((params.eta1 + bj) * bj * levy_exponent_derivative(params, -bj))


def _tail_root(roots: ClassifiedRoots, j: int) -> complex:
    if j == 3:
        return roots.beta3
    if j == 4:
        return roots.beta4
    raise ValueError("j must be 3 or 4")


def _phi(delta: complex, b: float) -> complex:
    """(exp(-delta*b) - 1) / delta, stable through delta = 0 (limit -b)."""
    x = delta * b
    if abs(x) < 1e-3:
        # -b * (1 - x/2 + x^2/6 - x^3/24 + ...)
        acc = 1.0 + 0.0j
        term = 1.0 + 0.0j
        for k in range(2, 8):
            term *= -x / k
            acc += term
        return -b * acc
    return (cmath.exp(-x) - 1.0) / delta


def _check_alpha(alpha: complex) -> complex:
    alpha = complex(alpha)
    if not alpha.real > 0:
        raise ValueError("alpha must have positive real part")
    return alpha


def fpt_transform(inputs: TransformInputs, alpha: complex) -> complex:
    """Laplace transform of t -> P(tau_b <= t) at Re(alpha) > 0."""
    alpha = _check_alpha(alpha)
    if _backend.kernel is not None:
        q = inputs.params
        return _backend.kernel.fpt_value(q.mu, q.sigma, q.lam, q.eta1, q.eta2, q.p, inputs.b, alpha)
    return _fpt_python(inputs, alpha)


def _fpt_python(inputs: TransformInputs, alpha: complex) -> complex:
    roots = roots_for(inputs.params, alpha)
    return _fpt_from_roots(roots, inputs.params.eta1, inputs.b, alpha)


def _fpt_from_roots(roots: ClassifiedRoots, eta1: float, b: float, alpha: complex) -> complex:
    b1, b2 = roots.beta1, roots.beta2
    delta = b2 - b1
    if abs(delta) < _eps_degenerate(b1, b2):
        # removable singularity: exp(-b*beta1)/(alpha*eta1) * (eta1 + beta1*(beta2-eta1)*phi)
        return cmath.exp(-b1 * b) / (alpha * eta1) * (eta1 + b1 * (b2 - eta1) * _phi(delta, b))
    num = b2 * (eta1 - b1) * cmath.exp(-b1 * b) + b1 * (b2 - eta1) * cmath.exp(-b2 * b)
    return num / (alpha * eta1 * delta)


def joint_transform(inputs: TransformInputs, alpha: complex) -> complex:
    """Laplace transform of t -> P(X_t >= a, tau_b <= t) at Re(alpha) > 0."""
    alpha = _check_alpha(alpha)
    if inputs.a is None:
        raise ValueError("joint transform requires the terminal threshold a")
    if _backend.kernel is not None:
        q = inputs.params
        return _backend.kernel.joint_value(
            q.mu, q.sigma, q.lam, q.eta1, q.eta2, q.p, inputs.a, inputs.b, alpha
        )
    return _joint_python(inputs, alpha)


def _stable_AB(roots: ClassifiedRoots, eta1: float, b: float) -> tuple[complex, complex]:
    """A(alpha) and B(alpha), usable through beta1 = beta2."""
    b1, b2 = roots.beta1, roots.beta2
    delta = b2 - b1
    if abs(delta) < _eps_degenerate(b1, b2):
        phi = _phi(delta, b)
        ea = cmath.exp(-b1 * b)
        a_val = ea * (cmath.exp(-delta * b) - (eta1 - b1) * phi)
        b_val = -(b2 - eta1) * (eta1 - b1) / eta1 * ea * phi
        return a_val, b_val
    a_val = (eta1 - b1) / delta * cmath.exp(-b1 * b) + (b2 - eta1) / delta * cmath.exp(-b2 * b)
    b_val = (b2 - eta1) * (eta1 - b1) / (eta1 * delta) * (cmath.exp(-b1 * b) - cmath.exp(-b2 * b))
    return a_val, b_val


def _joint_python(inputs: TransformInputs, alpha: complex) -> complex:
    params = inputs.params
    roots = roots_for(params, alpha)
    a_val, b_val = _stable_AB(roots, params.eta1, inputs.b)
    c = inputs.b - inputs.a
    b3, b4 = roots.beta3, roots.beta4
    if abs(b4 - b3) < _eps_degenerate(b3, b4):
        tail = _merged_tail(params, roots, a_val, b_val, c, alpha)
    else:
        g3 = levy_exponent_derivative(params, -b3)
        g4 = levy_exponent_derivative(params, -b4)
        c3 = 1.0 / (b3 * g3)
        c4 = 1.0 / (b4 * g4)
        d3 = params.eta1 / ((params.eta1 + b3) * b3 * g3)
        d4 = params.eta1 / ((params.eta1 + b4) * b4 * g4)
        tail = (a_val * c3 + b_val * d3) * cmath.exp(-c * b3) + (a_val * c4 + b_val * d4) * cmath.exp(-c * b4)
    return (a_val + b_val) / alpha + tail


def _merged_tail(
    params: KouParams,
    roots: ClassifiedRoots,
    a_val: complex,
    b_val: complex,
    c: float,
    alpha: complex,
) -> complex:
    """Tail terms of the joint transform through beta3 = beta4.

    With P(z) = c4 (z - beta1)(z - beta2)(z + beta3)(z + beta4) and
    g(w) = F(w) Q(-w) exp(-c*w) / (c4 w (w + beta1)(w + beta2)), where
    F(w) = A + B*eta1/(eta1 + w), the two tail terms sum to the divided
    difference -(g(beta4) - g(beta3))/(beta4 - beta3); at the merged pole this
    is -g'((beta3 + beta4)/2) to first order.
    """
    eta1, eta2 = params.eta1, params.eta2
    c4 = build_characteristic_quartic(params, alpha).c4
    b1, b2 = roots.beta1, roots.beta2
    w = 0.5 * (roots.beta3 + roots.beta4)

    f_w = a_val + b_val * eta1 / (eta1 + w)
    df_w = -b_val * eta1 / (eta1 + w) ** 2
    qm = (eta1 + w) * (eta2 - w)
    dqm = (eta2 - w) - (eta1 + w)
    den = c4 * w * (w + b1) * (w + b2)
    dden = c4 * ((w + b1) * (w + b2) + w * (w + b2) + w * (w + b1))
    num = f_w * qm
    dnum = df_w * qm + f_w * dqm - c * f_w * qm
    return -cmath.exp(-c * w) * (dnum * den - num * dden) / (den * den)


def fpt_transform_mp(inputs: TransformInputs, alpha):
    """fpt transform on the positive real axis at mpmath working precision.

    Evaluates the quartic roots and the transform entirely in the caller's
    mpmath context; the Gaver-Stehfest inverter needs this because its
    accuracy is limited by the precision of the transform values themselves.
    """
    from mpmath import mp, mpf, polyroots
    from mpmath import exp as mpexp

    q = inputs.params
    mu, sigma, lam = mpf(q.mu), mpf(q.sigma), mpf(q.lam)
    eta1, eta2, p = mpf(q.eta1), mpf(q.eta2), mpf(q.p)
    alpha = mpf(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive on the real-axis branch")
    s2 = sigma * sigma / 2
    coeffs = [
        -s2,
        s2 * (eta1 - eta2) - mu,
        s2 * eta1 * eta2 + mu * (eta1 - eta2) + lam + alpha,
        mu * eta1 * eta2 - (lam + alpha) * (eta1 - eta2) + lam * (p * eta1 - (1 - p) * eta2),
        -alpha * eta1 * eta2,
    ]
    roots = polyroots(coeffs, maxsteps=200, extraprec=2 * mp.prec)
    pos = sorted(r.real for r in roots if r.real > 0)
    if len(pos) != 2:
        raise ArithmeticError(f"expected two positive real roots at alpha = {alpha}")
    b1, b2 = pos
    b = mpf(inputs.b)
    num = b2 * (eta1 - b1) * mpexp(-b1 * b) + b1 * (b2 - eta1) * mpexp(-b2 * b)
    return num / (alpha * eta1 * (b2 - b1))


def make_fpt_mp(inputs: TransformInputs) -> Callable:
    """Real-to-real callable for the Gaver-Stehfest inverter."""
    return lambda alpha: fpt_transform_mp(inputs, alpha)
