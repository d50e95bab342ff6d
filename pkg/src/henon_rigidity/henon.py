"""Hénon maps ``(x, y) -> (y, p(y) - delta*x)``: evaluation, escape and normalization.

Points are plain ``(x, y)`` tuples of complex numbers. Most evaluation
helpers also accept numpy arrays for ``x`` and ``y`` so the renderer and the
scalar API share the same arithmetic.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from numpy.polynomial import Polynomial

from .errors import Diverged

__all__ = [
    "MonicCenteredHenon",
    "GeneralHenon",
    "AffineCoordMap",
    "HenonShape",
    "FiltrationRadius",
    "Escaping",
    "Undecided",
    "eval_forward",
    "eval_inverse",
    "iterate",
    "filtration_radius",
    "in_forward_region",
    "escape_steps",
    "classify_point",
    "normalize",
    "DIVERGENCE_GUARD",
    "ITERATION_BUDGET",
]

DIVERGENCE_GUARD = 1e150
ITERATION_BUDGET = 100_000

Point = tuple[complex, complex]


@dataclass(frozen=True)
class MonicCenteredHenon:
    """``H(x, y) = (y, p(y) - delta*x)`` with ``p(y) = y**d + sum(a_i y**i, i <= d-2)``.

    ``coeffs[i]`` is the coefficient of ``y**i`` for ``0 <= i <= d-2``.
    """

    degree: int
    coeffs: tuple[complex, ...]
    delta: complex

    def __post_init__(self):
        if int(self.degree) != self.degree or self.degree < 2:
            raise ValueError(f"degree must be an integer >= 2, got {self.degree!r}")
        coeffs = tuple(complex(c) for c in self.coeffs)
        if len(coeffs) != self.degree - 1:
            raise ValueError(
                f"expected {self.degree - 1} coefficients a_0..a_{self.degree - 2}, got {len(coeffs)}"
            )
        if complex(self.delta) == 0:
            raise ValueError("delta must be nonzero")
        object.__setattr__(self, "degree", int(self.degree))
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "delta", complex(self.delta))

    @classmethod
    def quadratic(cls, c: complex = 0.0, delta: complex = 1.0) -> "MonicCenteredHenon":
        return cls(2, (c,), delta)

    def p(self, y):
        """Evaluate ``p`` by Horner's rule (works for scalars, arrays, mpmath numbers)."""
        acc = y  # leading 1, then the absent y**(d-1) term
        for a in reversed(self.coeffs):
            acc = acc * y + a
        return acc

    def poly_coefficients(self) -> np.ndarray:
        """Ascending coefficients of ``p`` including the leading 1 and the zero ``y**(d-1)`` term."""
        return np.array(list(self.coeffs) + [0.0, 1.0], dtype=complex)

    @property
    def coeff_norm(self) -> float:
        return float(sum(abs(a) for a in self.coeffs))

    def __call__(self, point: Point) -> Point:
        return eval_forward(self, point)


@dataclass(frozen=True)
class GeneralHenon:
    """``(x, y) -> (y, p(y) - delta*x)`` with arbitrary ``p = sum(c_i y**i)`` of degree ``d >= 2``."""

    coeffs: tuple[complex, ...]
    delta: complex

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coeffs)
        if len(coeffs) < 3:
            raise ValueError("a Hénon polynomial needs degree >= 2 (at least 3 coefficients)")
        if coeffs[-1] == 0:
            raise ValueError("leading coefficient c_d must be nonzero")
        if complex(self.delta) == 0:
            raise ValueError("delta must be nonzero")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "delta", complex(self.delta))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def p(self, y):
        acc = self.coeffs[-1]
        for c in self.coeffs[-2::-1]:
            acc = acc * y + c
        return acc

    def __call__(self, point: Point) -> Point:
        x, y = point
        return (y, self.p(y) - self.delta * x)


@dataclass(frozen=True)
class AffineCoordMap:
    """``(x, y) -> (scale_x*x + offset_x, scale_y*y + offset_y)``."""

    scale_x: complex = 1.0
    offset_x: complex = 0.0
    scale_y: complex = 1.0
    offset_y: complex = 0.0

    def __post_init__(self):
        for name in ("scale_x", "offset_x", "scale_y", "offset_y"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if self.scale_x == 0 or self.scale_y == 0:
            raise ValueError("AffineCoordMap scales must be nonzero")

    def __call__(self, point: Point) -> Point:
        x, y = point
        return (self.scale_x * x + self.offset_x, self.scale_y * y + self.offset_y)

    def compose(self, inner: "AffineCoordMap") -> "AffineCoordMap":
        """``self ∘ inner``."""
        return AffineCoordMap(
            self.scale_x * inner.scale_x,
            self.scale_x * inner.offset_x + self.offset_x,
            self.scale_y * inner.scale_y,
            self.scale_y * inner.offset_y + self.offset_y,
        )

    def inverse(self) -> "AffineCoordMap":
        return AffineCoordMap(
            1 / self.scale_x,
            -self.offset_x / self.scale_x,
            1 / self.scale_y,
            -self.offset_y / self.scale_y,
        )

    def is_identity(self, tol: float = 0.0) -> bool:
        return (
            abs(self.scale_x - 1) <= tol
            and abs(self.scale_y - 1) <= tol
            and abs(self.offset_x) <= tol
            and abs(self.offset_y) <= tol
        )


def _substitute_affine(coeffs: Sequence[complex], a: complex, b: complex) -> list[complex]:
    """Ascending coefficients of ``P(a*y + b)`` by binomial expansion."""
    n = len(coeffs)
    out = [0j] * n
    for j, c in enumerate(coeffs):
        if c == 0:
            continue
        for m in range(j + 1):
            out[m] += c * math.comb(j, m) * a**m * b ** (j - m)
    return out


@dataclass(frozen=True)
class HenonShape:
    """Coefficient form ``(x, y) -> (s*y + t, P(y) + q*x)``.

    The family is closed under pre- and post-composition with
    :class:`AffineCoordMap`, which lets composition identities be checked
    coefficient by coefficient instead of by sampling.
    """

    s: complex
    t: complex
    poly: tuple[complex, ...]
    q: complex

    @classmethod
    def of(cls, hmap: Union[MonicCenteredHenon, GeneralHenon]) -> "HenonShape":
        if isinstance(hmap, MonicCenteredHenon):
            poly = tuple(hmap.poly_coefficients())
        else:
            poly = hmap.coeffs
        return cls(1.0, 0.0, tuple(complex(c) for c in poly), -hmap.delta)

    def precompose(self, amap: AffineCoordMap) -> "HenonShape":
        """``self ∘ amap``."""
        poly = _substitute_affine(self.poly, amap.scale_y, amap.offset_y)
        poly[0] += self.q * amap.offset_x
        return HenonShape(
            self.s * amap.scale_y,
            self.s * amap.offset_y + self.t,
            tuple(poly),
            self.q * amap.scale_x,
        )

    def postcompose(self, amap: AffineCoordMap) -> "HenonShape":
        """``amap ∘ self``."""
        poly = [amap.scale_y * c for c in self.poly]
        poly[0] += amap.offset_y
        return HenonShape(
            amap.scale_x * self.s,
            amap.scale_x * self.t + amap.offset_x,
            tuple(poly),
            amap.scale_y * self.q,
        )

    def residual(self, other: "HenonShape") -> float:
        """Largest coefficient mismatch, relative to ``max(1, |coefficient|)``."""
        n = max(len(self.poly), len(other.poly))
        a = list(self.poly) + [0j] * (n - len(self.poly))
        b = list(other.poly) + [0j] * (n - len(other.poly))
        pairs = [(self.s, other.s), (self.t, other.t), (self.q, other.q)] + list(zip(a, b))
        return max(abs(u - v) / max(1.0, abs(u), abs(v)) for u, v in pairs)


@dataclass(frozen=True)
class FiltrationRadius:
    value: float
    certificate_samples: int


@dataclass(frozen=True)
class Escaping:
    entry_step: int


@dataclass(frozen=True)
class Undecided:
    iterations_used: int


def eval_forward(hmap: MonicCenteredHenon, point: Point) -> Point:
    x, y = point
    return (y, hmap.p(y) - hmap.delta * x)


def eval_inverse(hmap: MonicCenteredHenon, point: Point) -> Point:
    x, y = point
    return ((hmap.p(x) - y) / hmap.delta, x)


def iterate(hmap: MonicCenteredHenon, point: Point, n: int, budget: int = ITERATION_BUDGET) -> Point:
    """``H**n(point)``; negative ``n`` iterates the inverse.

    Raises :class:`Diverged` once ``|x|`` or ``|y|`` exceeds ``DIVERGENCE_GUARD``.
    """
    if abs(n) > budget:
        raise ValueError(f"|n| = {abs(n)} exceeds the iteration budget {budget}")
    step = eval_forward if n >= 0 else eval_inverse
    x, y = complex(point[0]), complex(point[1])
    for i in range(1, abs(n) + 1):
        x, y = step(hmap, (x, y))
        if not (abs(x) <= DIVERGENCE_GUARD and abs(y) <= DIVERGENCE_GUARD):
            raise Diverged(i, (x, y))
    return (x, y)


@functools.lru_cache(maxsize=512)
def filtration_radius(hmap: MonicCenteredHenon, samples: int = 10_000, seed: int = 0) -> FiltrationRadius:
    """``R = 2 + |delta| + sum|a_i|`` with a sampled forward-invariance certificate.

    For ``|y| >= R`` and ``|x| < |y|`` the triangle inequality gives
    ``|p(y) - delta*x| >= 2|y|``, so ``V_R^+`` maps into itself. The samples
    on ``|y| = R + 1`` only guard against implementation mistakes.
    """
    radius = 2.0 + abs(hmap.delta) + hmap.coeff_norm
    rng = np.random.default_rng(seed)
    ymod = radius + 1.0
    y = ymod * np.exp(2j * np.pi * rng.random(samples))
    x = ymod * np.sqrt(rng.random(samples)) * np.exp(2j * np.pi * rng.random(samples)) * (1 - 1e-12)
    x1, y1 = eval_forward(hmap, (x, y))
    ok = (np.abs(y1) > np.abs(x1)) & (np.abs(y1) > radius)
    if not np.all(ok):
        raise RuntimeError(f"filtration certificate failed for {hmap} at R={radius}")
    return FiltrationRadius(radius, samples)


def in_forward_region(x, y, radius: float):
    """Membership in ``V_R^+ = {|x| < |y|, |y| > R}``."""
    ay = np.abs(y)
    return (np.abs(x) < ay) & (ay > radius)


def escape_steps(hmap: MonicCenteredHenon, x, y, max_iter: int, radius: float | None = None) -> np.ndarray:
    """Vectorized escape classification: first step in ``V_R^+`` or ``-1``.

    This is the kernel behind :func:`classify_point` and the renderer, so
    both produce identical results for identical inputs.
    """
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    if radius is None:
        radius = filtration_radius(hmap, samples=64).value
    x = np.array(x, dtype=complex, ndmin=1)
    y = np.array(y, dtype=complex, ndmin=1)
    steps = np.full(x.shape, -1, dtype=np.int64)
    active = np.ones(x.shape, dtype=bool)
    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(max_iter + 1):
            hit = active & in_forward_region(x, y, radius)
            steps[hit] = n
            active &= ~hit
            if n == max_iter or not active.any():
                break
            xa, ya = x[active], y[active]
            x[active] = ya
            y[active] = hmap.p(ya) - hmap.delta * xa
    return steps


def classify_point(
    hmap: MonicCenteredHenon, point: Point, max_iter: int, radius: float | None = None
) -> Union[Escaping, Undecided]:
    step = int(escape_steps(hmap, [point[0]], [point[1]], max_iter, radius)[0])
    return Escaping(step) if step >= 0 else Undecided(max_iter)


def _principal_root(value: complex, m: int) -> complex:
    """The ``m``-th root with the smallest non-negative argument."""
    arg = cmath.phase(value) % (2 * math.pi)
    return abs(value) ** (1.0 / m) * cmath.exp(1j * arg / m)


def normalize(hmap: GeneralHenon, tol: float = 1e-12) -> tuple[MonicCenteredHenon, AffineCoordMap]:
    """Conjugate a general Hénon map to monic-centered form.

    Returns ``(H_hat, A)`` with ``A(x, y) = (sigma(x), sigma(y))``,
    ``sigma(x) = u*x + v`` and ``A^-1 ∘ H ∘ A = H_hat``. ``u`` is the
    (d-1)-th root of ``1/c_d`` with the smallest non-negative argument; any
    other root gives an equally valid normalization.
    """
    d = hmap.degree
    cd, cd1 = hmap.coeffs[-1], hmap.coeffs[-2]
    u = 1.0 if cd == 1 else _principal_root(1 / cd, d - 1)
    v = -cd1 / (d * cd)
    sigma = Polynomial([v, u])
    p = Polynomial(list(hmap.coeffs))
    hat = (p(sigma) - v) / u
    coef = np.zeros(d + 1, dtype=complex)
    coef[: len(hat.coef)] = hat.coef[: d + 1]
    coef[0] -= hmap.delta * v / u
    if abs(coef[d] - 1) > tol or abs(coef[d - 1]) > tol * max(1.0, abs(cd1)):
        raise RuntimeError(f"normalization left leading terms {coef[d]}, {coef[d - 1]}")
    normal = MonicCenteredHenon(d, tuple(coef[: d - 1]), hmap.delta)
    amap = AffineCoordMap(u, v, u, v)

    conj = HenonShape.of(hmap).precompose(amap).postcompose(amap.inverse())
    res = conj.residual(HenonShape.of(normal))
    if res > tol * max(1.0, max(abs(c) for c in hmap.coeffs)):
        raise RuntimeError(f"A^-1 ∘ H ∘ A differs from the normal form by {res:.3e}")
    return normal, amap
