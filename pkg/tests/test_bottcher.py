import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from henon_rigidity import MonicCenteredHenon, bottcher_numeric, green_numeric, q_polynomial, q_tilde, y_series, zeta_series
from henon_rigidity.bottcher import (
    QPolynomial,
    bottcher_log_ratio,
    bottcher_radius,
    growth_constant,
    y_numeric,
)
from henon_rigidity.errors import DomainError
from henon_rigidity.henon import filtration_radius

from conftest import random_map

# Frozen from a sympy series expansion of y * prod((y_{n+1}/y_n**d)**(1/d**(n+1)))
# with x_0 = 0, four telescoping factors, in t = 1/y.
L_QUADRATIC = [0, Fraction(-1, 4), 0, 0, Fraction(-7, 32), 0, 0, Fraction(-35, 128)]
# d = 3, a_0 = 1/3, a_1 = 1/2, delta = 2
L_CUBIC = [Fraction(1, 6), Fraction(1, 9), Fraction(-1, 36), Fraction(-1, 27), Fraction(11, 216), Fraction(5, 324), Fraction(-169, 648)]


def test_zeta_series_matches_symbolic_expansion(quad):
    got = zeta_series(quad, 8)
    assert [complex(c) for c in got.coeffs] == pytest.approx([float(v) for v in L_QUADRATIC], abs=1e-15)
    cubic = MonicCenteredHenon(3, (1 / 3, 1 / 2), 2.0)
    got = zeta_series(cubic, 7)
    assert [complex(c) for c in got.coeffs] == pytest.approx([float(v) for v in L_CUBIC], abs=1e-14)


@pytest.mark.parametrize("delta", [1.0, 0.7 - 0.3j, 2j, -1.5])
def test_quadratic_delta_dependence(delta):
    # symbolic in delta: L_2 = -delta/4, L_5 = -delta (3 delta + 4)/32; D_2 = delta/4
    h = MonicCenteredHenon(2, (0.0,), delta)
    z = zeta_series(h, 5)
    assert complex(z[2]) == pytest.approx(-delta / 4, abs=1e-15)
    assert complex(z[5]) == pytest.approx(-delta * (3 * delta + 4) / 32, abs=1e-15)
    ys = y_series(h, 3)
    assert complex(ys[1]) == 0 and complex(ys[2]) == pytest.approx(delta / 4, abs=1e-15)


def fourier_laurent(h, radius, kmax, samples=64):
    """Laurent coefficients of phi(0, y) - y from samples on |y| = radius."""
    ys = radius * np.exp(2j * np.pi * np.arange(samples) / samples)
    dev = np.array([y * np.expm1(bottcher_log_ratio(h, (0.0, y))) for y in ys])
    return [np.mean(dev * ys**k) for k in range(1, kmax + 1)]


def test_zeta_series_fourier_cross_check(quad):
    fit = fourier_laurent(quad, 100.0, 8)
    series = zeta_series(quad, 8)
    # roundoff in the fit grows like 100**k, so the tolerance does too
    for k, v in enumerate(fit, start=1):
        assert abs(v - series[k]) <= 1e-15 * 100.0**k + 1e-12


@pytest.mark.parametrize("N", [2, 3])
def test_zeta_series_truncation(rng, N):
    # doubling |y| divides the truncation error by about 2**(N+1)
    h = random_map(rng, 3)
    z = zeta_series(h, N)
    errs = []
    for r in (60.0, 120.0, 240.0):  # above R', below the rounding floor
        y = r * np.exp(0.3j)
        errs.append(abs(z(y) - bottcher_numeric(h, (0.0, y))))
    for e0, e1 in zip(errs, errs[1:]):
        assert 2.0 ** -(N + 1) / 1.3 <= e1 / e0 <= 1.3 * 2.0 ** -(N + 1)


def test_bottcher_high_precision_oracle(quad):
    # direct product of the telescoping factors in 300-bit arithmetic
    with mpmath.workprec(300):
        x, y = mpmath.mpf(0), mpmath.mpf(100)
        phi = y
        for n in range(8):
            x, y1 = y, y * y - x
            phi *= (y1 / y**2) ** (mpmath.mpf(1) / 2 ** (n + 1))
            y = y1
        ref = complex(phi)
    got = bottcher_numeric(quad, (0.0, 100.0))
    assert abs(got - ref) <= 2e-16 * abs(ref)
    assert got.real == pytest.approx(99.99997500, abs=1e-8)


def test_bottcher_asymptotic(quad):
    ratios = [abs(bottcher_numeric(quad, (0.0, 10.0**k)) / 10.0**k - 1) for k in range(3, 7)]
    assert all(b < a for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] < 1e-12


def test_bottcher_domain(quad):
    Rp = bottcher_radius(quad)
    assert Rp == 20.0
    with pytest.raises(DomainError):
        bottcher_numeric(quad, (0.0, 10.0))
    with pytest.raises(DomainError):
        bottcher_numeric(quad, (50.0, 30.0))


def test_green_examples(quad):
    assert green_numeric(quad, (0, 0)).value == 0.0
    g = green_numeric(quad, (0.0, 1e6))
    assert g.value == pytest.approx(math.log(1e6), abs=1e-6)
    assert g.value == pytest.approx(math.log(abs(bottcher_numeric(quad, (0.0, 1e6)))), abs=1e-12)
    assert g.growth_constant == pytest.approx(math.log(3.0))


def test_green_functional_equation_and_sandwich(rng):
    for d in (2, 3, 4):
        h = random_map(rng, d)
        R = filtration_radius(h).value
        L = growth_constant(h)
        for _ in range(100):
            p = tuple(2 * rng.normal(size=2) + 2j * rng.normal(size=2))
            g = green_numeric(h, p)
            gh = green_numeric(h, h(p))
            assert abs(gh.value - d * g.value) <= gh.error_bound + d * g.error_bound + 1e-12
            x, y = p
            if abs(x) < abs(y) and abs(y) > R:
                assert abs(g.value - math.log(abs(y))) <= L + g.error_bound


def test_y_series_inverts_zeta_series(rng):
    h = random_map(rng, 4)
    z, y = zeta_series(h, 10), y_series(h, 10)
    for w in (60.0, 50j, -45 - 45j):
        assert abs(z(y(w)) - w) <= 100 * abs(w) ** -10


def test_q_polynomial_worked_example(quad):
    q = q_polynomial(quad, 3)
    assert q.coeffs == (0, 0.25)
    assert q(2.0) == 8.25
    with pytest.raises(ValueError):
        q_polynomial(quad, 2)


def test_q_polynomial_structure_and_stability(rng):
    for _ in range(50):
        d = int(rng.integers(2, 7))
        h = random_map(rng, d)
        q = q_polynomial(h)
        asc = q.ascending()
        assert len(asc) == d + 2 and asc[-1] == 1 and asc[d] == 0
        longer = q_polynomial(h, 2 * d + 3)
        assert np.allclose(longer.ascending(), asc, rtol=1e-12, atol=1e-14)


def test_q_polynomial_newton_oracle():
    # zeta**d y(0, zeta) - Q(zeta) = D_{d+1}/zeta + O(zeta**-2); y from Newton on phi(0, y) = zeta
    h = MonicCenteredHenon(3, (0.4 + 0.1j, -0.3j), 0.8 + 0.2j)
    q = q_polynomial(h)
    d_next = complex(y_series(h, 4)[4])
    assert abs(d_next) > 1e-3
    for r in (40.0, 80.0, 160.0):
        zeta = r * np.exp(0.7j)
        res = zeta**3 * y_numeric(h, zeta) - q(zeta)
        assert abs(res - d_next / zeta) <= 0.1 / r**2


def test_q_tilde_examples():
    q = QPolynomial(3, (0.0, 0.25))
    assert np.array_equal(q_tilde(q, 1.0), q.ascending())
    q4 = QPolynomial(4, (0.0, 0.0, 0.0))
    qt = q_tilde(q4, 1.5)
    expected = np.zeros(13, dtype=complex)
    expected[4], expected[12] = 0.5, 1.0
    assert np.array_equal(qt, expected)
    h = MonicCenteredHenon(4, (0.1, 0.2, 0.3), 1.0)
    assert len(q_tilde(h)) == 5 * 16 + 1
