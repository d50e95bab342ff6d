"""Truncated series arithmetic over complex coefficients.

Two shapes are used:

* :class:`UnitSeries` ``1 + c_1 t + ... + c_N t**N + O(t**(N+1))``
* :class:`TailSeries` ``y + c_1/y + ... + c_N/y**N + O(y**-(N+1))``

Coefficients are Python complex numbers by default. Passing mpmath numbers
created from a private context (see :func:`to_precision`) switches every
operation to that precision without changing the API; constants such as
``1/m`` are then formed in the same context.

Every operation takes the truncation order explicitly and raises
:class:`~henon_rigidity.errors.SeriesOrderError` rather than silently
returning fewer terms.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Sequence

from ._numeric import mp_context
from .errors import SeriesOrderError

__all__ = [
    "UnitSeries",
    "TailSeries",
    "ScaledTail",
    "mul",
    "reciprocal",
    "principal_root",
    "power",
    "revert",
    "compose_tail",
    "compose_tails",
    "to_precision",
    "to_complex",
    "write_csv",
]


def _one_like(*seqs: Iterable) -> object:
    for seq in seqs:
        for c in seq:
            ctx = getattr(c, "context", None)
            if ctx is not None:
                return ctx.mpf(1)
    return 1.0


@dataclass(frozen=True)
class UnitSeries:
    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def full(self) -> list:
        """Coefficients including the constant term."""
        return [_one_like(self.coeffs) * 1] + list(self.coeffs)

    @classmethod
    def from_full(cls, full: Sequence) -> "UnitSeries":
        if full[0] != 1:
            raise ValueError(f"constant term must be 1, got {full[0]}")
        return cls(tuple(full[1:]))

    def __getitem__(self, k: int):
        if k == 0:
            return _one_like(self.coeffs)
        return self.coeffs[k - 1]

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc + c) * t
        return 1 + acc


@dataclass(frozen=True)
class TailSeries:
    """``f(y) = y + sum(c_k * y**-k, k=1..N)``."""

    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) < 1:
            raise ValueError("a TailSeries needs order >= 1")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int):
        return self.coeffs[k - 1]

    def __call__(self, y):
        w = 1 / y
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc + c) * w
        return y + acc


@dataclass(frozen=True)
class ScaledTail:
    """``lead*y + sum(c_k * y**-k)``, the result of scaling a :class:`TailSeries`."""

    lead: complex
    coeffs: tuple


def _need(series, order: int) -> None:
    if series.order < order:
        raise SeriesOrderError(f"series has order {series.order}, {order} requested")


def _mul_full(a: Sequence, b: Sequence, order: int) -> list:
    out = []
    for n in range(order + 1):
        s = 0
        for k in range(max(0, n - len(b) + 1), min(n, len(a) - 1) + 1):
            s = s + a[k] * b[n - k]
        out.append(s)
    return out


def mul(a: UnitSeries, b: UnitSeries, order: int) -> UnitSeries:
    """Cauchy product through ``t**order``."""
    _need(a, order)
    _need(b, order)
    return UnitSeries(tuple(_mul_full(a.full(), b.full(), order)[1:]))


def reciprocal(a: UnitSeries, order: int) -> UnitSeries:
    _need(a, order)
    c = a.full()
    inv = [c[0]]
    for n in range(1, order + 1):
        s = 0
        for k in range(1, n + 1):
            s = s + c[k] * inv[n - k]
        inv.append(-s)
    return UnitSeries(tuple(inv[1:]))


def power(a: UnitSeries, r, order: int) -> UnitSeries:
    """``a**r`` for any exponent ``r`` (principal branch, constant term 1).

    Uses the recurrence ``n b_n = sum(((r+1)k - n) a_k b_{n-k})``, which
    needs no division other than by ``n``.
    """
    _need(a, order)
    c = a.full()
    b = [c[0]]
    for n in range(1, order + 1):
        s = 0
        for k in range(1, n + 1):
            s = s + ((r + 1) * k - n) * c[k] * b[n - k]
        b.append(s / n)
    return UnitSeries(tuple(b[1:]))


def principal_root(a: UnitSeries, m: int, order: int) -> UnitSeries:
    """The ``m``-th root of ``a`` with constant term 1."""
    if m < 1:
        raise ValueError("root index must be >= 1")
    one = _one_like(a.coeffs)
    return power(a, one / m, order)


def revert(f: TailSeries, order: int) -> TailSeries:
    """Compositional inverse ``g`` with ``g(f(y)) = y + O(y**-(order+1))``.

    Writing ``g(zeta) = zeta * u(t)`` with ``t = 1/zeta``, the defining
    identity ``f(g) = zeta`` becomes, coefficient by coefficient,
    ``e_j = -[t**j] sum(c_k t**k u**-k)``. The right side only involves
    ``e_0 .. e_{j-2}``, so the coefficients are found by forward
    substitution while the powers of ``1/u`` are extended incrementally.
    ``e_0`` is the constant term of ``g`` and must vanish.
    """
    _need(f, order)
    c = [None] + list(f.coeffs[:order])
    one = _one_like(f.coeffs)
    zero = one * 0
    e: list = []  # e_0, e_1, ... : g(zeta) = zeta + e_0 + e_1/zeta + ...
    u = [one]  # u_m = e_{m-1}
    v = [one]  # 1/u
    pw: list[list] = [[one]]  # pw[k] = v**k, pw[0] unused beyond index 0

    for j in range(order + 1):
        # v and its powers up to index j-1 depend only on e_0..e_{j-2}
        while len(u) < j:
            u.append(e[len(u) - 1])
        while len(v) < j:
            m = len(v)
            s = zero
            for i in range(1, m + 1):
                s = s + u[i] * v[m - i]
            v.append(-s)
        while len(pw) <= j:
            pw.append([one])
        for k in range(1, j + 1):
            target = j - k
            row = pw[k]
            while len(row) <= target:
                m = len(row)
                if k == 1:
                    row.append(v[m])
                else:
                    prev = pw[k - 1]
                    s = zero
                    for i in range(m + 1):
                        s = s + v[i] * prev[m - i]
                    row.append(s)
        ej = zero
        for k in range(1, j + 1):
            ej = ej - c[k] * pw[k][j - k]
        e.append(ej)

    if e[0] != 0:
        raise ArithmeticError(f"reverted series acquired a constant term {e[0]}")
    return TailSeries(tuple(e[1:]))


def compose_tails(f: TailSeries, g: TailSeries, order: int) -> TailSeries:
    """``f(g(zeta))`` as a tail series, built from :func:`reciprocal` and :func:`mul`.

    Kept independent of the incremental scheme in :func:`revert` so it can
    serve as its check.
    """
    _need(f, order)
    _need(g, order)
    one = _one_like(f.coeffs, g.coeffs)
    zero = one * 0
    m = order + 1
    # g = zeta * U(t) with t = 1/zeta and U = 1 + g_1 t^2 + g_2 t^3 + ...
    U = UnitSeries(tuple([zero] + list(g.coeffs[: m - 1])))
    Uinv = reciprocal(U, m)
    # out[j] multiplies zeta**(1 - j)
    out = U.full()
    powk = Uinv
    for k in range(1, order + 1):
        if k > 1:
            powk = mul(powk, Uinv, m)
        full = powk.full()
        for i in range(0, m - k):
            out[k + 1 + i] = out[k + 1 + i] + f.coeffs[k - 1] * full[i]
    if out[1] != 0:
        raise ArithmeticError(f"composition acquired a constant term {out[1]}")
    return TailSeries(tuple(out[2 : order + 2]))


def compose_tail(f: TailSeries, alpha: complex) -> tuple[ScaledTail, ScaledTail]:
    """Coefficients of ``alpha*f(y)`` and of ``f(alpha*y)``.

    ``f(alpha*y) = alpha*y + sum(c_k alpha**-k y**-k)``.
    """
    scaled = ScaledTail(alpha, tuple(alpha * c for c in f.coeffs))
    inv = 1 / alpha
    coeffs = []
    acc = 1
    for c in f.coeffs:
        acc = acc * inv
        coeffs.append(c * acc)
    return scaled, ScaledTail(alpha, tuple(coeffs))


def to_precision(series, bits: int | None):
    """Re-express a series' coefficients in a private mpmath context (or back to complex)."""
    if bits is None:
        return to_complex(series)
    ctx = mp_context(bits)
    return type(series)(tuple(ctx.mpc(c) for c in series.coeffs))


def to_complex(series):
    return type(series)(tuple(complex(c) for c in series.coeffs))


def write_csv(series, stream: io.TextIOBase | None = None) -> str:
    """Rows ``k, re(c_k), im(c_k)``; returns the text and writes it to ``stream`` if given."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "re", "im"])
    for k, c in enumerate(series.coeffs, start=1):
        c = complex(c)
        writer.writerow([k, repr(c.real), repr(c.imag)])
    text = buf.getvalue()
    if stream is not None:
        stream.write(text)
    return text
