import cmath

import numpy as np
import pytest

from koufpt.model import (
    KouParams,
    PoleError,
    levy_exponent,
    levy_exponent_derivative,
    validate_params,
)
from koufpt.quartic import build_characteristic_quartic, classify_roots, solve_quartic

from conftest import PAPER_PARAMS


def test_validate_accepts_paper_params():
    validate_params(PAPER_PARAMS)


@pytest.mark.parametrize(
    "field,value,message",
    [
        ("sigma", 0.0, "sigma must be positive"),
        ("sigma", -0.1, "sigma must be positive"),
        ("eta1", 0.0, "eta1 must be positive"),
        ("eta2", -1.0, "eta2 must be positive"),
        ("p", 1.5, "p must lie in (0,1)"),
        ("p", 0.0, "p must lie in (0,1)"),
        ("lam", -1.0, "lambda must be nonnegative"),
    ],
)
def test_validate_rejects_bad_params(field, value, message):
    bad = KouParams(**{**PAPER_PARAMS.__dict__, field: value})
    with pytest.raises(ValueError, match=message.replace("(", r"\(").replace(")", r"\)")):
        validate_params(bad)


def test_exponent_vanishes_at_zero():
    assert levy_exponent(PAPER_PARAMS, 0.0) == 0.0


def test_exponent_matches_displayed_form():
    # G(z) = 0.1 z + 0.02 z^2 + 3*(25/(50-z) + (50/3)/(100/3+z) - 1)
    rng = np.random.default_rng(7)
    for _ in range(50):
        z = complex(rng.uniform(-30, 30), rng.uniform(-30, 30))
        displayed = 0.1 * z + 0.02 * z * z + 3.0 * (25.0 / (50.0 - z) + (50.0 / 3.0) / (100.0 / 3.0 + z) - 1.0)
        assert abs(levy_exponent(PAPER_PARAMS, z) - displayed) <= 1e-12 * (1.0 + abs(displayed))


def test_exponent_recovers_alpha_at_classified_roots():
    rng = np.random.default_rng(11)
    for _ in range(50):
        alpha = complex(rng.uniform(0.1, 100.0), rng.uniform(-200.0, 200.0))
        roots = classify_roots(solve_quartic(build_characteristic_quartic(PAPER_PARAMS, alpha)), alpha)
        for z in (roots.beta1, roots.beta2, -roots.beta3, -roots.beta4):
            assert abs(levy_exponent(PAPER_PARAMS, z) - alpha) <= 1e-9 * (1.0 + abs(alpha))


def test_pole_guard():
    with pytest.raises(PoleError):
        levy_exponent(PAPER_PARAMS, PAPER_PARAMS.eta1)
    with pytest.raises(PoleError):
        levy_exponent(PAPER_PARAMS, -PAPER_PARAMS.eta2)
    with pytest.raises(PoleError):
        levy_exponent_derivative(PAPER_PARAMS, PAPER_PARAMS.eta1 + 1e-14)


def test_derivative_at_zero():
    # mu + lam*p/eta1 - lam*(1-p)/eta2 = 0.1 + 0.03 - 0.045
    assert levy_exponent_derivative(PAPER_PARAMS, 0.0) == pytest.approx(0.085, abs=1e-14)


def test_derivative_without_jumps_is_affine():
    params = KouParams(mu=0.1, sigma=0.2, lam=0.0, eta1=50.0, eta2=100.0 / 3.0, p=0.5)
    for z in (-3.0, 0.0, 1.7, 12.0):
        assert levy_exponent_derivative(params, z) == pytest.approx(0.1 + 0.04 * z, abs=1e-14)


def test_derivative_matches_central_difference():
    rng = np.random.default_rng(3)
    h = 1e-5
    checked = 0
    while checked < 200:
        z = complex(rng.uniform(-25, 45), rng.uniform(-25, 25))
        if abs(z - PAPER_PARAMS.eta1) < 1.0 or abs(z + PAPER_PARAMS.eta2) < 1.0:
            continue
        fd = (levy_exponent(PAPER_PARAMS, z + h) - levy_exponent(PAPER_PARAMS, z - h)) / (2.0 * h)
        assert abs(levy_exponent_derivative(PAPER_PARAMS, z) - fd) <= 1e-6
        checked += 1


def test_conjugate_symmetry():
    rng = np.random.default_rng(19)
    for _ in range(1000):
        z = complex(rng.uniform(-40, 40), rng.uniform(-40, 40))
        if abs(z - PAPER_PARAMS.eta1) < 0.5 or abs(z + PAPER_PARAMS.eta2) < 0.5:
            continue
        g = levy_exponent(PAPER_PARAMS, z)
        g_conj = levy_exponent(PAPER_PARAMS, z.conjugate())
        assert abs(g_conj - g.conjugate()) <= 1e-12 * (1.0 + abs(g))


def test_imaginary_axis_real_part_negative():
    # Re(G(is)) < 0 for real s != 0: the roots never cross the imaginary axis.
    rng = np.random.default_rng(23)
    for _ in range(1000):
        s = rng.uniform(-500.0, 500.0)
        if s == 0.0:
            continue
        assert levy_exponent(PAPER_PARAMS, 1j * s).real < 0.0


def test_wiener_hopf_factorization():
    """alpha/(alpha - G(is)) factors over the classified roots."""
    rng = np.random.default_rng(29)
    for _ in range(200):
        alpha = complex(rng.uniform(0.2, 80.0), rng.uniform(-100.0, 100.0))
        s = rng.uniform(-200.0, 200.0)
        roots = classify_roots(solve_quartic(build_characteristic_quartic(PAPER_PARAMS, alpha)), alpha)
        x = 1j * s
        lhs = alpha / (alpha - levy_exponent(PAPER_PARAMS, x))
        rhs = (
            (1.0 - x / PAPER_PARAMS.eta1)
            / ((1.0 - x / roots.beta1) * (1.0 - x / roots.beta2))
            * (1.0 + x / PAPER_PARAMS.eta2)
            / ((1.0 + x / roots.beta3) * (1.0 + x / roots.beta4))
        )
        assert abs(lhs - rhs) <= 1e-9
