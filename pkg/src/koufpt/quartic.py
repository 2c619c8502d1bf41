"""Characteristic quartic of G(z) = alpha: roots, classification, resultant.

Clearing the rational terms of G(z) - alpha against Q(z) = (eta1 - z)(eta2 + z)
gives a degree-4 polynomial P_alpha(z) whose roots are exactly the solutions of
G(z) = alpha.  For Re(alpha) > 0 the four roots split two/two across the
imaginary axis; the alphas where two roots collide are the roots of the
resultant of P_alpha and its z-derivative, and are the removable singularities
of the Laplace transforms built on top of this module.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .model import KouParams, levy_exponent

#: residual contract scale factor shared by the quartic and quintic solvers
_RESIDUAL_TOL = 1e-10


class RootSolveError(RuntimeError):
    """Closed-form solve plus polishing failed the residual contract."""


class ClassificationError(RuntimeError):
    """Root set did not split 2/2 across the imaginary axis.

    Signals Re(alpha) <= 0, a root on the imaginary axis, or solver failure.
    """


@dataclass(frozen=True)
class QuarticPoly:
    """Coefficients of c4*z^4 + c3*z^3 + c2*z^2 + c1*z + c0."""

    c4: complex
    c3: complex
    c2: complex
    c1: complex
    c0: complex

    def coeffs(self) -> tuple[complex, complex, complex, complex, complex]:
        return (self.c4, self.c3, self.c2, self.c1, self.c0)

    def __call__(self, z: complex) -> complex:
        return (((self.c4 * z + self.c3) * z + self.c2) * z + self.c1) * z + self.c0

    def derivative(self, z: complex) -> complex:
        return ((4.0 * self.c4 * z + 3.0 * self.c3) * z + 2.0 * self.c2) * z + self.c1


@dataclass(frozen=True)
class ClassifiedRoots:
    """Roots of G(z) = alpha: beta1, beta2 have Re > 0 and -beta3, -beta4 are
    the two roots with Re < 0; within each pair ordered by ascending real part
    (ties broken by ascending imaginary part)."""

    beta1: complex
    beta2: complex
    beta3: complex
    beta4: complex


@dataclass(frozen=True)
class ResultantPoly:
    """Degree-5 resultant R(alpha) of P_alpha and dP_alpha/dz, coefficients
    of alpha^5 .. alpha^0.  Mathematically real; stored complex because it is
    assembled from determinants at complex sample points."""

    r5: complex
    r4: complex
    r3: complex
    r2: complex
    r1: complex
    r0: complex

    def coeffs(self) -> tuple[complex, ...]:
        return (self.r5, self.r4, self.r3, self.r2, self.r1, self.r0)

    def __call__(self, alpha: complex) -> complex:
        acc = 0.0 + 0.0j
        for c in self.coeffs():
            acc = acc * alpha + c
        return acc


def build_characteristic_quartic(params: KouParams, alpha: complex) -> QuarticPoly:
    """P_alpha(z) = (G(z) - alpha) * (eta1 - z) * (eta2 + z), expanded.

    Coefficients are affine in alpha; c4 = -sigma^2/2 never vanishes.
    """
    mu, sigma, lam, eta1, eta2, p = (
        params.mu,
        params.sigma,
        params.lam,
        params.eta1,
        params.eta2,
        params.p,
    )
    alpha = complex(alpha)
    s2 = 0.5 * sigma * sigma
    return QuarticPoly(
        c4=complex(-s2),
        c3=complex(s2 * (eta1 - eta2) - mu),
        c2=s2 * eta1 * eta2 + mu * (eta1 - eta2) + lam + alpha,
        c1=mu * eta1 * eta2 - (lam + alpha) * (eta1 - eta2) + lam * (p * eta1 - (1.0 - p) * eta2),
        c0=-alpha * eta1 * eta2,
    )


def _cubic_root(a2: complex, a1: complex, a0: complex) -> complex:
    """One root of x^3 + a2 x^2 + a1 x + a0 (Cardano, cancellation-safe branch)."""
    p = a1 - a2 * a2 / 3.0
    q = a0 - a2 * a1 / 3.0 + 2.0 * a2**3 / 27.0
    w = cmath.sqrt(q * q / 4.0 + p**3 / 27.0)
    u3 = -q / 2.0 + w
    alt = -q / 2.0 - w
    if abs(u3) < abs(alt):
        u3 = alt
    if u3 == 0:
        x = 0.0 + 0.0j
    else:
        u = u3 ** (1.0 / 3.0)
        x = u - p / (3.0 * u)
    return x - a2 / 3.0


def _quadratic_roots(b: complex, c: complex) -> tuple[complex, complex]:
    """Roots of y^2 + b y + c avoiding subtractive cancellation."""
    d = cmath.sqrt(b * b - 4.0 * c)
    if (b.conjugate() * d).real > 0.0:
        d = -d
    q = -0.5 * (b - d)
    if q == 0:
        return 0.0 + 0.0j, -b
    return q, c / q


def _quartic_closed_form(c4, c3, c2, c1, c0) -> list[complex]:
    """Ferrari-type closed form via the depressed quartic and resolvent cubic."""
    a = c3 / c4
    b = c2 / c4
    c = c1 / c4
    d = c0 / c4
    # depress with z = y - a/4
    e = b - 3.0 * a * a / 8.0
    f = c + a**3 / 8.0 - a * b / 2.0
    g = d - 3.0 * a**4 / 256.0 + a * a * b / 16.0 - a * c / 4.0
    shift = -a / 4.0
    scale = max(1.0, abs(e), abs(f) ** (2.0 / 3.0), abs(g) ** 0.5)
    if abs(f) <= 1e-14 * scale**3:
        # biquadratic: y^4 + e y^2 + g
        y2a, y2b = _quadratic_roots(e, g)
        s1 = cmath.sqrt(y2a)
        s2 = cmath.sqrt(y2b)
        ys = (s1, -s1, s2, -s2)
    else:
        m = _cubic_root(e, e * e / 4.0 - g, -f * f / 8.0)
        if m == 0:
            m = complex(1e-30)
        s = cmath.sqrt(2.0 * m)
        t1 = e / 2.0 + m
        u = f / (2.0 * s)
        r1, r2 = _quadratic_roots(s, t1 - u)
        r3, r4 = _quadratic_roots(-s, t1 + u)
        ys = (r1, r2, r3, r4)
    return [y + shift for y in ys]


def _polish_root(poly: QuarticPoly, z: complex, steps: int = 3) -> complex:
    """Newton steps against the original quartic, keeping the best residual."""
    best = z
    best_resid = abs(poly(z))
    for _ in range(steps):
        dz = poly.derivative(z)
        if dz == 0:
            break
        z = z - poly(z) / dz
        resid = abs(poly(z))
        if resid < best_resid:
            best, best_resid = z, resid
        else:
            break
    return best


def _residual_bound(coeffs, root: complex, degree: int) -> float:
    max_coeff = max(abs(c) for c in coeffs)
    return _RESIDUAL_TOL * max_coeff * max(1.0, abs(root)) ** degree


def solve_quartic(poly: QuarticPoly) -> tuple[complex, complex, complex, complex]:
    """All four roots of the quartic, multiple roots with multiplicity.

    Closed form (Ferrari) followed by Newton polishing; every returned root z
    satisfies |P(z)| <= 1e-10 * max|coeff| * max(1, |z|)^4, else RootSolveError.
    """
    if poly.c4 == 0:
        raise RootSolveError("leading coefficient is zero; polynomial is not a quartic")
    roots = [_polish_root(poly, z) for z in _quartic_closed_form(*poly.coeffs())]
    for z in roots:
        if not (abs(poly(z)) <= _residual_bound(poly.coeffs(), z, 4)):
            raise RootSolveError(
                f"root residual {abs(poly(z)):.3e} exceeds contract at z = {z}"
            )
    return tuple(roots)


def classify_roots(roots, alpha: complex) -> ClassifiedRoots:
    """Split four roots of G(z) = alpha into the 2/2 sign pattern.

    Requires Re(alpha) > 0; beta3 and beta4 are returned negated so that all
    four classified values have positive real part.
    """
    pos = sorted((complex(z) for z in roots if z.real > 0), key=lambda z: (z.real, z.imag))
    neg = sorted((-complex(z) for z in roots if z.real < 0), key=lambda z: (z.real, z.imag))
    if len(pos) != 2 or len(neg) != 2:
        raise ClassificationError(
            f"expected a 2/2 sign split of the roots at alpha = {alpha}; "
            f"got {len(pos)} with Re > 0 and {len(neg)} with Re < 0 "
            "(Re(alpha) <= 0, a root on the imaginary axis, or solver failure)"
        )
    return ClassifiedRoots(beta1=pos[0], beta2=pos[1], beta3=neg[0], beta4=neg[1])


def roots_for(params: KouParams, alpha: complex) -> ClassifiedRoots:
    """Build, solve and classify in one step (the common path)."""
    poly = build_characteristic_quartic(params, alpha)
    return classify_roots(solve_quartic(poly), alpha)


_RESULTANT_SAMPLES = (0.0 + 0.0j, 1.0 + 0.0j, -1.0 + 0.0j, 2.0j, -2.0j, 3.0 + 0.0j)


def _sylvester_det(params: KouParams, alpha: complex, scale: float) -> complex:
    """det of the 7x7 Sylvester matrix of (P_alpha, dP_alpha/dz)."""
    c = np.array(build_characteristic_quartic(params, alpha).coeffs(), dtype=complex) * scale
    d = np.array([4.0 * c[0], 3.0 * c[1], 2.0 * c[2], c[3]], dtype=complex)
    m = np.zeros((7, 7), dtype=complex)
    for i in range(3):
        m[i, i : i + 5] = c
    for i in range(4):
        m[3 + i, i : i + 4] = d
    return complex(np.linalg.det(m))


def resultant_in_alpha(params: KouParams, scale: float = 1.0) -> ResultantPoly:
    """Resultant R(alpha) of P_alpha and dP_alpha/dz as a degree-5 polynomial.

    The Sylvester determinant has entries affine in alpha, so R is recovered
    exactly (to rounding) by evaluating at six sample points and interpolating.
    `scale` multiplies P_alpha before the resultant is taken; it rescales R by
    scale^7 and exists so that scaling invariance of the roots can be checked.
    R's roots are the removable singularities of the transforms.
    """
    samples = np.array(_RESULTANT_SAMPLES, dtype=complex)
    vals = np.array([_sylvester_det(params, a, scale) for a in samples])
    vander = np.vander(samples, 6)
    r = np.linalg.solve(vander, vals)
    if r[0] == 0:
        raise RootSolveError("resultant degenerated below degree 5")
    return ResultantPoly(*[complex(x) for x in r])


def singular_points(params: KouParams, scale: float = 1.0) -> list[complex]:
    """The five roots of R(alpha): the alphas where P_alpha has a multiple root.

    Companion-matrix solve polished by Newton steps, under the same residual
    contract as solve_quartic generalized to degree 5.  Sorted by (Re, Im).
    """
    poly = resultant_in_alpha(params, scale)
    coeffs = poly.coeffs()
    roots = [complex(z) for z in np.roots(np.array(coeffs, dtype=complex))]

    def dpoly(alpha: complex) -> complex:
        acc = 0.0 + 0.0j
        for k, c in enumerate(coeffs[:-1]):
            acc = acc * alpha + (5 - k) * c
        return acc

    polished = []
    for z in roots:
        best, best_resid = z, abs(poly(z))
        for _ in range(3):
            dz = dpoly(z)
            if dz == 0:
                break
            z = z - poly(z) / dz
            resid = abs(poly(z))
            if resid < best_resid:
                best, best_resid = z, resid
            else:
                break
        if not (best_resid <= _residual_bound(coeffs, best, 5)):
            raise RootSolveError(
                f"resultant root residual {best_resid:.3e} exceeds contract at alpha = {best}"
            )
        polished.append(best)
    return sorted(polished, key=lambda z: (z.real, z.imag))


def choose_contour(params: KouParams, t: float, delta: float) -> float:
    """Abscissa u = A/(2t) with A = delta*ln(10); 10^-delta discretization error.

    If Re = u comes within 1e-6 of the real part of any removable singularity,
    u is bumped up by 1% increments until clear, so the Bromwich line never
    passes through a singular point.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    if delta <= 0:
        raise ValueError("delta must be positive")
    u = delta * math.log(10.0) / (2.0 * t)
    clearance = 1e-6
    real_parts = [z.real for z in singular_points(params)]
    while any(abs(u - x) < clearance for x in real_parts):
        u *= 1.01
    return u


def verify_roots(params: KouParams, alpha: complex, roots: ClassifiedRoots, tol: float = 1e-9) -> bool:
    """Check G(beta) = alpha at all four classified roots (diagnostic)."""
    alpha = complex(alpha)
    pts = (roots.beta1, roots.beta2, -roots.beta3, -roots.beta4)
    return all(abs(levy_exponent(params, z) - alpha) <= tol * (1.0 + abs(alpha)) for z in pts)
