import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from henon_rigidity import (
    AffineCoordMap,
    Diverged,
    Escaping,
    GeneralHenon,
    MonicCenteredHenon,
    Undecided,
    classify_point,
    filtration_radius,
    iterate,
    normalize,
)
from henon_rigidity.henon import HenonShape, eval_forward, eval_inverse, in_forward_region

from conftest import random_map


def test_rejects_bad_maps():
    with pytest.raises(ValueError):
        MonicCenteredHenon(1, (), 1.0)
    with pytest.raises(ValueError):
        MonicCenteredHenon(3, (1.0,), 1.0)
    with pytest.raises(ValueError):
        MonicCenteredHenon(2, (0.0,), 0.0)
    with pytest.raises(ValueError):
        GeneralHenon((1.0, 2.0, 0.0), 1.0)


def test_forward_examples(quad):
    assert eval_forward(quad, (0, 0)) == (0, 0)
    assert eval_forward(quad, (1, 2)) == (2, 3)
    cubic = MonicCenteredHenon(3, (0.0, 1.0), 2.0)
    assert eval_forward(cubic, (1, 1)) == (1, 0)


def test_inverse_examples(quad):
    assert eval_inverse(quad, (2, 3)) == (1, 2)
    assert eval_inverse(quad, (0, 0)) == (0, 0)
    h = MonicCenteredHenon(2, (1j,), 2j)
    assert eval_inverse(h, (0, 1j)) == (0, 0)


def test_iterate(quad):
    assert iterate(quad, (1 + 1j, 2), 0) == (1 + 1j, 2)
    assert iterate(quad, (1, 2), 2) == (3, 7)
    assert iterate(quad, (2, 3), -1) == (1, 2)
    with pytest.raises(Diverged) as info:
        iterate(quad, (0, 10), 40)
    assert info.value.step < 40
    with pytest.raises(ValueError):
        iterate(quad, (0, 0), 10, budget=5)


def test_inverse_roundtrip(rng):
    for d in range(2, 7):
        h = random_map(rng, d)
        for _ in range(50):
            p = tuple(10 * np.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random(2)) / np.sqrt(2))
            for a, b in ((eval_inverse(h, eval_forward(h, p)), p), (eval_forward(h, eval_inverse(h, p)), p)):
                scale = max(1.0, abs(b[0]), abs(b[1])) ** d
                assert abs(a[0] - b[0]) <= 1e-12 * scale
                assert abs(a[1] - b[1]) <= 1e-12 * scale


def test_filtration_radius_examples(quad):
    assert filtration_radius(quad).value == 3.0
    h = MonicCenteredHenon(3, (-2.0, 1j), 0.5)
    assert filtration_radius(h).value == pytest.approx(5.5, abs=1e-15)


def test_forward_region_invariant(rng):
    # 10^5 points with |y| > R and |x| < |y| land in V_R^+ again
    for d in (2, 3, 5):
        h = random_map(rng, d)
        R = filtration_radius(h).value
        n = 100_000
        y = R * (1 + 1e-9 + 3 * rng.random(n)) * np.exp(2j * np.pi * rng.random(n))
        x = np.abs(y) * np.sqrt(rng.random(n)) * (1 - 1e-12) * np.exp(2j * np.pi * rng.random(n))
        x1, y1 = eval_forward(h, (x, y))
        assert np.all(in_forward_region(x1, y1, R))


def test_classify_examples(quad):
    assert classify_point(quad, (0, 4), 10) == Escaping(0)
    assert classify_point(quad, (4, 0), 10) == Escaping(1)
    for budget in (1, 10, 200):
        assert classify_point(quad, (0, 0), budget) == Undecided(budget)


def test_classify_monotone_and_radius_independent(rng):
    for d in (2, 3, 4):
        h = random_map(rng, d)
        R = filtration_radius(h).value
        for _ in range(200):
            p = tuple(3 * rng.normal(size=2) + 3j * rng.normal(size=2))
            c = classify_point(h, p, 60)
            if isinstance(c, Escaping) and c.entry_step >= 1:
                assert classify_point(h, eval_forward(h, p), 60) == Escaping(c.entry_step - 1)
            # doubling R can delay entry but never changes the verdict for orbits that clearly escape
            c2 = classify_point(h, p, 80, radius=2 * R)
            if isinstance(c, Escaping) and c.entry_step <= 40:
                assert isinstance(c2, Escaping)
            if isinstance(c2, Escaping):
                assert isinstance(classify_point(h, p, 80), Escaping)


def test_normalize_examples():
    already = GeneralHenon((0.3, 0.0, 1.0), 1.0)
    nm, sigma = normalize(already)
    assert sigma.is_identity()
    assert nm.coeffs == (0.3 + 0j,)

    nm, sigma = normalize(GeneralHenon((0.0, 4.0, 2.0), 1.0))
    assert sigma.scale_x == pytest.approx(0.5) and sigma.offset_x == pytest.approx(-1.0)
    assert nm.coeffs[0] == pytest.approx(0.0, abs=1e-14) and nm.delta == 1.0

    nm, sigma = normalize(GeneralHenon((0.0, 0.0, 1.0, 1.0), 1j))
    assert sigma.scale_x == pytest.approx(1.0)
    assert sigma.offset_x == pytest.approx(-1 / 3)
    # hand conjugation: p(y - 1/3) + 1/3 + i/3
    assert nm.coeffs[1] == pytest.approx(-1 / 3, abs=1e-14)
    assert nm.coeffs[0] == pytest.approx(11 / 27 + 1j / 3, abs=1e-14)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(2, 6),
    st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False), min_size=7, max_size=7),
    st.floats(0.2, 3.0),
    st.floats(0, 2 * np.pi),
)
def test_normalize_conjugates(d, raw, lead_mod, lead_arg):
    coeffs = list(raw[:d]) + [lead_mod * cmath.exp(1j * lead_arg)]
    general = GeneralHenon(tuple(coeffs), raw[-1] if abs(raw[-1]) > 0.1 else 1.0)
    nm, sigma = normalize(general)
    assert len(nm.coeffs) == d - 1
    # A^-1 ∘ H ∘ A = H^ as polynomial maps, checked through the coefficient form
    A = AffineCoordMap(sigma.scale_x, sigma.offset_x, sigma.scale_x, sigma.offset_x)
    composed = HenonShape.of(general).precompose(A).postcompose(A.inverse())
    assert composed.residual(HenonShape.of(nm)) <= 1e-9
