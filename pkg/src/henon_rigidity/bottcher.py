"""Böttcher and Green functions of a monic centered Hénon map.

Numerical side: :func:`bottcher_numeric` and :func:`green_numeric` evaluate
``phi`` and ``G`` at points of the forward region ``V_R^+``.

Formal side: :func:`zeta_series` expands ``zeta(0, y) = phi(0, y)`` in
powers of ``1/y`` by running the telescoping product
``phi = y * prod((y_{n+1} / y_n**d) ** (1/d**(n+1)))`` on truncated series,
:func:`y_series` reverts it, and :func:`q_polynomial` reads ``Q`` off
``zeta**d * y(0, zeta)``.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._numeric import clog1p, mp_context
from .errors import DomainError
from .henon import (
    DIVERGENCE_GUARD,
    MonicCenteredHenon,
    filtration_radius,
    in_forward_region,
)
from .series import TailSeries, UnitSeries, mul, principal_root, reciprocal, revert

__all__ = [
    "GreenValue",
    "QPolynomial",
    "bottcher_radius",
    "growth_constant",
    "bottcher_numeric",
    "bottcher_log_ratio",
    "green_numeric",
    "green_kernel",
    "zeta_series",
    "y_series",
    "q_polynomial",
    "q_tilde",
    "y_numeric",
]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class GreenValue:
    value: float
    error_bound: float
    growth_constant: float


@dataclass(frozen=True)
class QPolynomial:
    """``Q(zeta) = zeta**(d+1) + A_{d-1} zeta**(d-1) + ... + A_0``.

    ``coeffs`` holds ``(A_{d-1}, ..., A_1, A_0)``; the leading 1 and the
    vanishing ``zeta**d`` coefficient are implicit.
    """

    degree: int
    coeffs: tuple[complex, ...]

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coeffs)
        if self.degree < 3 or len(coeffs) != self.degree - 1:
            raise ValueError(f"Q of degree {self.degree} needs {self.degree - 1} coefficients")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def d(self) -> int:
        """Degree of the underlying Hénon map."""
        return self.degree - 1

    def A(self, j: int) -> complex:
        """Coefficient of ``zeta**j`` for ``0 <= j <= d-1``."""
        return self.coeffs[self.d - 1 - j]

    def ascending(self) -> np.ndarray:
        out = np.zeros(self.degree + 1, dtype=complex)
        out[-1] = 1.0
        for j in range(self.d):
            out[j] = self.A(j)
        return out

    def __call__(self, zeta):
        tail = 0
        for a in self.coeffs:
            tail = tail * zeta + a
        return zeta ** (self.d + 1) + tail


def growth_constant(hmap: MonicCenteredHenon) -> float:
    """``L = log(2 + sum|a_i| + |delta|)`` for the logarithmic sandwich."""
    return math.log(2.0 + hmap.coeff_norm + abs(hmap.delta))


def bottcher_radius(hmap: MonicCenteredHenon) -> float:
    """``R' = max(R, 10(1 + sum|a_i| + |delta|))``.

    On ``V_{R'}^+`` every telescoping factor is within 1/10 of 1, so the
    principal roots are unambiguous.
    """
    base = filtration_radius(hmap, samples=256).value
    return max(base, 10.0 * (1.0 + hmap.coeff_norm + abs(hmap.delta)))


def _factor_deviation(hmap: MonicCenteredHenon, x: complex, y: complex) -> complex:
    """``y_1 / y**d - 1`` evaluated in powers of ``1/y`` to avoid overflow."""
    w = 1.0 / y
    acc = 0j
    # sum(a_i * w**(d-i)) = w**2 * (a_{d-2} + a_{d-3} w + ... + a_0 w**(d-2))
    for a in hmap.coeffs:
        acc = acc * w + a
    acc = acc * w * w
    return acc - hmap.delta * (x * w) * w ** (hmap.degree - 1)


def bottcher_log_ratio(hmap: MonicCenteredHenon, point, precision: float = 1e-17) -> complex:
    """``log(phi(x, y) / y)`` as the sum of the logarithms of the telescoping factors."""
    x, y = complex(point[0]), complex(point[1])
    rprime = bottcher_radius(hmap)
    if not (abs(x) < abs(y) and abs(y) > rprime):
        raise DomainError(
            f"point {point} is outside V_R'^+ with R' = {rprime:g}; map it forward first"
        )
    d = hmap.degree
    spread = hmap.coeff_norm + abs(hmap.delta)
    total = 0j
    scale = 1.0 / d
    for _ in range(200):
        total += clog1p(_factor_deviation(hmap, x, y)) * scale
        x, y = y, hmap.p(y) - hmap.delta * x
        scale /= d
        # |next factor - 1| <= (sum|a_i| + |delta|) / |y_{n+1}| on V_R^+
        if spread / abs(y) * scale < precision or abs(y) > DIVERGENCE_GUARD:
            break
    return total


def bottcher_numeric(hmap: MonicCenteredHenon, point, precision: float = 1e-17) -> complex:
    """``phi(x, y)`` on ``V_{R'}^+`` via the telescoping product with principal branches."""
    y = complex(point[1])
    phi = y * cmath.exp(bottcher_log_ratio(hmap, point, precision))
    if not abs(phi) > 1:
        raise RuntimeError(f"Böttcher value {phi} fell inside the unit disc")
    return phi


def green_kernel(
    hmap: MonicCenteredHenon,
    x,
    y,
    tol: float = 1e-13,
    max_iter: int = 200,
    radius: float | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized Green's function: returns ``(value, error_bound)`` arrays.

    Each entry iterates until the orbit enters ``V_R^+``, then keeps
    iterating until successive estimates ``log|y_n| / d**n`` differ by less
    than ``tol*(d-1)/d``. Entries that never enter within ``max_iter`` steps
    get value 0 and error 0.
    """
    d = hmap.degree
    if radius is None:
        radius = filtration_radius(hmap, samples=64).value
    x = np.array(x, dtype=complex, ndmin=1)
    y = np.array(y, dtype=complex, ndmin=1)
    value = np.zeros(x.shape)
    err = np.zeros(x.shape)
    entered = np.zeros(x.shape, dtype=bool)
    active = np.ones(x.shape, dtype=bool)
    prev = np.zeros(x.shape)
    last_diff = np.full(x.shape, np.inf)
    thresh = tol * (d - 1) / d
    tail = d / (d - 1)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for n in range(max_iter + 400):
            if not active.any():
                break
            inv_scale = float(d) ** (-n)
            newly = active & ~entered & in_forward_region(x, y, radius)
            if n > max_iter:
                # never entered: presumed bounded at this budget
                gone = active & ~entered & ~newly
                active &= ~gone
            est = np.log(np.abs(y)) * inv_scale
            cont = active & entered
            diff = np.abs(est - prev)
            conv = cont & (diff < thresh)
            last_diff = np.where(cont, diff, last_diff)
            blown = cont & ~conv & (np.abs(y) > DIVERGENCE_GUARD)
            stop = conv | blown
            value[stop] = est[stop]
            err[stop] = last_diff[stop] * tail
            active &= ~stop
            prev = np.where(newly | cont, est, prev)
            entered |= newly
            if not active.any():
                break
            xa, ya = x[active], y[active]
            x[active] = ya
            y[active] = hmap.p(ya) - hmap.delta * xa
    err = err + 8 * _EPS * value
    return value, err


def green_numeric(
    hmap: MonicCenteredHenon,
    point,
    tol: float = 1e-13,
    max_iter: int = 200,
    radius: float | None = None,
) -> GreenValue:
    """``G(x, y) = lim d**-n log+ ||H**n(x, y)||`` with a geometric-tail error bound.

    The error bound adds ``8 eps |G|`` to cover rounding in ``log|y_n|``.
    On ``V_R^+`` the result is also checked against the sandwich
    ``log|y| - L <= G <= log|y| + L``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if radius is None:
        radius = filtration_radius(hmap, samples=64).value
    value, err = green_kernel(hmap, [point[0]], [point[1]], tol, max_iter, radius)
    L = growth_constant(hmap)
    g = GreenValue(float(value[0]), float(err[0]), L)
    x, y = complex(point[0]), complex(point[1])
    if abs(x) < abs(y) and abs(y) > radius:
        logy = math.log(abs(y))
        if not (logy - L - g.error_bound <= g.value <= logy + L + g.error_bound):
            raise RuntimeError(f"Green value {g.value} violates the logarithmic sandwich at {point}")
    return g


def _shift(series_full: Sequence, s: int, size: int, zero) -> list:
    """``t**s * S(t)`` truncated to ``size`` coefficients (index 0 is ``t**0``)."""
    out = [zero] * size
    for i, c in enumerate(series_full):
        if s + i >= size:
            break
        out[s + i] = c
    return out


@functools.lru_cache(maxsize=256)
def zeta_series(hmap: MonicCenteredHenon, order: int, precision: int | None = None) -> TailSeries:
    """Coefficients ``L_1..L_N`` of ``zeta(0, y) = y + L_1/y + L_2/y**2 + ...``.

    With ``x_0 = 0``, ``y_0 = y`` and ``t = 1/y``, write ``1/y_n = t**(d**n) W_n(t)``
    and ``r_n = y_{n+1} / y_n**d``. Then ``W_0 = 1``, ``W_{n+1} = W_n**d / r_n`` and

        r_n = 1 + sum(a_i t**(d**n (d-i)) W_n**(d-i)) - delta t**(d**(n-1) (d*d-1)) W_n**d / W_{n-1}

    (the last term only for ``n >= 1``, since ``x_n = y_{n-1}``). Factor
    ``n`` deviates from 1 first at order ``>= d**(n-1) (d+1)``, so only a
    handful of factors reach the requested order. ``precision`` (bits)
    switches to multi-precision coefficients.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    d = hmap.degree
    if precision is None:
        one = 1.0
        conv = complex
    else:
        ctx = mp_context(precision)
        one = ctx.mpf(1)
        conv = ctx.mpc
    zero = one * 0
    a = [conv(c) for c in hmap.coeffs]
    delta = conv(hmap.delta)
    M = order + 1  # zeta = y * U(t) and L_k = U_{k+1}

    U = UnitSeries(tuple([zero] * M))
    W = UnitSeries(tuple([zero] * M))
    W_prev = None
    n = 0
    while True:
        lowest = 2 if n == 0 else d ** (n - 1) * (d + 1)
        if lowest > M:
            break
        pows = [UnitSeries(tuple([zero] * M)), W]
        for _ in range(2, d + 1):
            pows.append(mul(pows[-1], W, M))
        r = [one] + [zero] * M
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            s = d**n * (d - i)
            for j, c in enumerate(_shift(pows[d - i].full(), s, M + 1, zero)):
                r[j] = r[j] + ai * c
        if n >= 1:
            s = d ** (n - 1) * (d * d - 1)
            if s <= M:
                quot = mul(pows[d], reciprocal(W_prev, M), M)
                for j, c in enumerate(_shift(quot.full(), s, M + 1, zero)):
                    r[j] = r[j] - delta * c
        r_series = UnitSeries(tuple(r[1:]))
        U = mul(U, principal_root(r_series, d ** (n + 1), M), M)
        W_prev, W = W, mul(pows[d], reciprocal(r_series, M), M)
        n += 1

    if U[1] != 0:
        raise ArithmeticError(f"zeta(0, y) acquired a constant term {U[1]}")
    return TailSeries(tuple(U.coeffs[1:M]))


def y_series(hmap: MonicCenteredHenon, order: int, precision: int | None = None) -> TailSeries:
    """Coefficients ``D_1..D_N`` of ``y(0, zeta) = zeta + D_1/zeta + ...`` (reversion of :func:`zeta_series`)."""
    return revert(zeta_series(hmap, order, precision), order)


def q_polynomial(
    hmap: MonicCenteredHenon, order: int | None = None, precision: int | None = None
) -> QPolynomial:
    """``Q(zeta)``: the polynomial part of ``zeta**d * y(0, zeta)``.

    ``Q = zeta**(d+1) + D_1 zeta**(d-1) + ... + D_{d-1} zeta + D_d``; the
    ``zeta**d`` coefficient would be ``D_0``, which reversion proves zero.
    """
    d = hmap.degree
    if order is None:
        order = d + 1
    if order < d + 1:
        raise ValueError(f"q_polynomial needs order >= d+1 = {d + 1}, got {order}")
    ys = y_series(hmap, order, precision)
    return QPolynomial(d + 1, tuple(complex(ys[k]) for k in range(1, d + 1)))


def q_tilde(q: QPolynomial | MonicCenteredHenon, delta: complex | None = None) -> np.ndarray:
    """Ascending coefficients of ``sum((delta/d)**(d-2-l) * Q(zeta**(d**l)), l=0..d-2)``.

    This is the polynomial in the first coordinate of the (d-1)-fold lift
    iterate ``((delta/d)**(d-1) z + Qt(zeta), zeta**(d**(d-1)))``. Pass either
    a map, or ``Q`` together with ``delta``.
    """
    if isinstance(q, MonicCenteredHenon):
        q, delta = q_polynomial(q), q.delta
    elif delta is None:
        raise TypeError("q_tilde(Q, delta) needs delta")
    d = q.d
    base = q.ascending()
    deg = (d + 1) * d ** max(d - 2, 0)
    out = np.zeros(deg + 1, dtype=complex)
    ratio = complex(delta) / d
    for l in range(d - 1):
        step = d**l
        weight = ratio ** (d - 2 - l)
        out[: (len(base) - 1) * step + 1 : step] += weight * base
    return out


def y_numeric(hmap: MonicCenteredHenon, zeta: complex, tol: float = 1e-12, max_steps: int = 50) -> complex:
    """Solve ``phi(0, y) = zeta`` by Newton's method with a finite-difference derivative.

    Independent of the series engine; used to cross-check :func:`q_polynomial`.
    """
    y = complex(zeta)
    for _ in range(max_steps):
        f = bottcher_numeric(hmap, (0.0, y)) - zeta
        h = 1e-6 * abs(y)
        fp = (bottcher_numeric(hmap, (0.0, y + h)) - bottcher_numeric(hmap, (0.0, y - h))) / (2 * h)
        step = f / fp
        y -= step
        if abs(step) <= tol * abs(y):
            return y
    raise RuntimeError(f"Newton did not converge for zeta = {zeta}")
