"""Small numeric helpers shared across modules."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

__all__ = [
    "unit_root",
    "turn_root",
    "clog1p",
    "clog1p_array",
    "mp_context",
    "rel_residual",
]

_QUARTER_TURNS = (1 + 0j, 1j, -1 + 0j, -1j)


def turn_root(turn: Fraction) -> complex:
    """Return ``exp(2*pi*i*turn)`` for a rational number of turns.

    Multiples of a quarter turn are returned exactly; everything else is
    evaluated once from the reduced fraction so repeated use never drifts.
    """
    turn = Fraction(turn) % 1
    if (4 * turn).denominator == 1:
        return _QUARTER_TURNS[int(4 * turn)]
    angle = 2.0 * math.pi * (turn.numerator / turn.denominator)
    return complex(math.cos(angle), math.sin(angle))


def unit_root(k: int, n: int) -> complex:
    """``exp(2*pi*i*k/n)``."""
    return turn_root(Fraction(k, n))


def clog1p(z: complex) -> complex:
    """Principal ``log(1 + z)`` accurate for small ``|z|``.

    ``numpy.log1p`` loses the real part for complex arguments near zero, so
    the real part is computed as ``log1p(2 Re z + |z|^2) / 2``.
    """
    z = complex(z)
    re = 0.5 * math.log1p(2.0 * z.real + (z.real * z.real + z.imag * z.imag))
    return complex(re, math.atan2(z.imag, 1.0 + z.real))


def clog1p_array(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    re = 0.5 * np.log1p(2.0 * z.real + (z.real * z.real + z.imag * z.imag))
    return re + 1j * np.arctan2(z.imag, 1.0 + z.real)


def mp_context(bits: int):
    """A private mpmath context so high-precision work never touches ``mpmath.mp``."""
    from mpmath.ctx_mp import MPContext

    if bits < 53:
        raise ValueError(f"precision must be at least 53 bits, got {bits}")
    ctx = MPContext()
    ctx.prec = int(bits)
    return ctx


def rel_residual(a, b, scale: float = 1.0) -> float:
    """``|a - b| / max(1, |a|, |b|, scale)`` for scalars or arrays (max taken)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    denom = np.maximum(np.maximum(np.abs(a), np.abs(b)), max(1.0, scale))
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b) / denom))

