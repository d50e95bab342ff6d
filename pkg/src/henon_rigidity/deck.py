"""Lifted dynamics on the cover ``C x (C minus closed unit disc)``.

The lift of ``H`` is ``H~(z, zeta) = ((delta/d) z + Q(zeta), zeta**d)`` and
the deck group is ``Z[1/d]/Z``: the class ``k/d**n`` acts by

    gamma(z, zeta) = (z + (d/delta) sum_{l<n} (d/delta)**l [Q(zeta**(d**l)) - Q((e zeta)**(d**l))], e zeta)

with ``e = exp(2 pi i k/d**n)``.

Roots of unity are always evaluated from the reduced pair ``(k, n)``;
``(e*zeta)**(d**l)`` is formed as ``e**(d**l) * zeta**(d**l)`` with the
first factor again taken from the reduced index. Keep ``|zeta| <= 2`` and
``n <= 3``: ``zeta**(d**l)`` grows doubly exponentially.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from ._numeric import turn_root
from .bottcher import QPolynomial
from .errors import DomainError
from .report import Check, VerificationReport

__all__ = [
    "CoverPoint",
    "DeckIndex",
    "CoverDynamics",
    "lift_map",
    "deck_transform",
    "cocycle_delta",
    "lift_conjugacy_check",
    "random_cover_points",
    "deck_property_suite",
]


@dataclass(frozen=True)
class CoverPoint:
    z: complex
    zeta: complex

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "zeta", complex(self.zeta))
        if not abs(self.zeta) > 1:
            raise DomainError(f"cover points need |zeta| > 1, got {self.zeta}")


@dataclass(frozen=True)
class DeckIndex:
    """The class ``k/d**n`` in ``Z[1/d]/Z``, kept reduced.

    Construct with :meth:`of`, which accepts any integers and reduces them.
    """

    k: int
    n: int
    d: int = field(repr=False)

    def __post_init__(self):
        if self.d < 2 or self.n < 0 or not (0 <= self.k < self.d**self.n):
            raise ValueError(f"invalid deck index {self.k}/{self.d}^{self.n}")
        if self.k == 0 and self.n != 0:
            raise ValueError("class 0 must be stored as 0/d^0")
        if self.n > 0 and self.k % self.d == 0:
            raise ValueError(f"{self.k}/{self.d}^{self.n} is not reduced")

    @classmethod
    def of(cls, k: int, n: int, d: int) -> "DeckIndex":
        if n < 0:
            raise ValueError("n must be >= 0")
        k %= d**n
        while n > 0 and k % d == 0:
            k //= d
            n -= 1
        if k == 0:
            n = 0
        return cls(k, n, d)

    @classmethod
    def identity(cls, d: int) -> "DeckIndex":
        return cls(0, 0, d)

    @property
    def turn(self) -> Fraction:
        return Fraction(self.k, self.d**self.n)

    def __add__(self, other: "DeckIndex") -> "DeckIndex":
        if other.d != self.d:
            raise ValueError("deck indices for different degrees")
        n = max(self.n, other.n)
        k = self.k * self.d ** (n - self.n) + other.k * self.d ** (n - other.n)
        return DeckIndex.of(k, n, self.d)

    def times_d(self) -> "DeckIndex":
        """The class ``d * k/d**n``, i.e. ``k mod d**(n-1) / d**(n-1)``."""
        if self.n == 0:
            return self
        return DeckIndex.of(self.k, self.n - 1, self.d)

    def rotation(self, power: int = 1) -> complex:
        """``exp(2 pi i k power / d**n)`` from the reduced index."""
        return turn_root(self.turn * power)


@dataclass(frozen=True)
class CoverDynamics:
    """The data ``(Q, delta)`` that determine the lift and the deck group."""

    q: QPolynomial
    delta: complex

    @property
    def d(self) -> int:
        return self.q.d

    def lift(self, p: CoverPoint) -> CoverPoint:
        return CoverPoint(self.delta / self.d * p.z + self.q(p.zeta), p.zeta**self.d)

    def lift_iterate(self, p: CoverPoint, times: int) -> CoverPoint:
        for _ in range(times):
            p = self.lift(p)
        return p

    def increment(self, zeta: complex, idx: DeckIndex) -> complex:
        """The ``z``-shift of ``gamma_idx`` at ``zeta`` (zero for the identity class)."""
        d = self.d
        if idx.d != d:
            raise ValueError(f"deck index is for degree {idx.d}, dynamics for degree {d}")
        ratio = d / self.delta
        total = 0j
        weight = ratio
        zp = complex(zeta)
        for l in range(idx.n):
            if l > 0:
                zp = zp**d
            rot = idx.rotation(d**l)
            total += weight * (self.q(zp) - self.q(rot * zp))
            weight *= ratio
        return total

    def increment_scale(self, zeta: complex, n: int) -> float:
        """Bound on the terms summed in an ``n``-level increment at ``zeta``.

        Increments are sums of large terms that cancel, so residuals of deck
        identities are measured relative to this bound rather than to the
        (possibly small) result.
        """
        d = self.d
        coeff_abs = [abs(a) for a in self.q.coeffs]
        ratio = d / abs(self.delta)
        r = abs(zeta)
        total = 0.0
        for l in range(n):
            tail = 0.0
            for a in coeff_abs:
                tail = tail * r + a
            total += ratio ** (l + 1) * 2 * (r ** (d + 1) + tail)
            r = r**d
        return total

    def deck(self, p: CoverPoint, idx: DeckIndex) -> CoverPoint:
        if idx.k == 0:
            return p
        return CoverPoint(p.z + self.increment(p.zeta, idx), idx.rotation() * p.zeta)


def lift_map(q: QPolynomial, delta: complex, p: CoverPoint) -> CoverPoint:
    return CoverDynamics(q, delta).lift(p)


def deck_transform(q: QPolynomial, delta: complex, idx: DeckIndex, p: CoverPoint) -> CoverPoint:
    return CoverDynamics(q, delta).deck(p, idx)


def cocycle_delta(q: QPolynomial, delta: complex, zeta: complex, idx: DeckIndex) -> complex:
    """Raw first-coordinate increment of ``gamma_idx`` at ``(0, zeta)``."""
    if not abs(zeta) > 1:
        raise DomainError(f"need |zeta| > 1, got {zeta}")
    return CoverDynamics(q, delta).increment(zeta, idx)


def _cover_residual(a: CoverPoint, b: CoverPoint, scale: float) -> float:
    s = max(1.0, scale, abs(a.z), abs(b.z))
    return max(abs(a.z - b.z) / s, abs(a.zeta - b.zeta) / max(1.0, abs(a.zeta)))


def lift_conjugacy_check(
    q: QPolynomial, delta: complex, idx: DeckIndex, samples: Iterable[CoverPoint]
) -> float:
    """Max residual of ``H~ ∘ gamma_{k/d**n} = gamma_{d k/d**n} ∘ H~`` over ``samples``.

    Residuals are relative to :meth:`CoverDynamics.increment_scale`, since
    the increments reach ``|zeta|**((d+1) d**(n-1))``.
    """
    if idx.n < 1:
        raise ValueError("conjugacy check needs n >= 1")
    dyn = CoverDynamics(q, delta)
    target = idx.times_d()
    worst = 0.0
    for p in samples:
        g = dyn.deck(p, idx)
        left = dyn.lift(g)
        h = dyn.lift(p)
        right = dyn.deck(h, target)
        scale = dyn.increment_scale(p.zeta, idx.n) * abs(delta) / dyn.d + abs(dyn.q(p.zeta))
        worst = max(worst, _cover_residual(left, right, scale))
    return worst


def random_cover_points(
    count: int, rng: np.random.Generator, zmax: float = 2.0, rmin: float = 1.0, rmax: float = 2.0
) -> list[CoverPoint]:
    """Points with ``|z| <= zmax`` and ``rmin < |zeta| <= rmax``."""
    out = []
    for _ in range(count):
        z = zmax * np.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
        r = rmin + (rmax - rmin) * (1.0 - rng.random())  # (rmin, rmax]
        if r <= 1.0:
            r = np.nextafter(1.0, 2.0)
        out.append(CoverPoint(z, r * np.exp(2j * np.pi * rng.random())))
    return out


def deck_property_suite(
    q: QPolynomial,
    delta: complex,
    samples: int = 100,
    max_level: int = 3,
    seed: int = 0,
    tol: float = 1e-10,
) -> VerificationReport:
    """Identity, group law, rotation and conjugacy checks for levels ``1..max_level``.

    Each level draws ``samples`` cover points with ``1 < |zeta| <= 2`` and
    random indices ``k, k'`` coprime to ``d``.
    """
    dyn = CoverDynamics(q, delta)
    d = dyn.d
    rng = np.random.default_rng(seed)
    ident = group = rot = conj = 0.0
    e0 = DeckIndex.identity(d)
    for n in range(1, max_level + 1):
        pts = random_cover_points(samples, rng)
        for p in pts:
            if dyn.deck(p, e0) != p:
                ident = float("inf")
            k1, k2 = (int(v) for v in rng.integers(0, d**n, size=2))
            i1, i2 = DeckIndex.of(k1, n, d), DeckIndex.of(k2, n, d)
            scale = dyn.increment_scale(p.zeta, n)
            a = dyn.deck(dyn.deck(p, i2), i1)
            b = dyn.deck(p, i1 + i2)
            group = max(group, _cover_residual(a, b, scale))
            g = dyn.deck(p, i1)
            rot = max(
                rot,
                abs(g.zeta - i1.rotation() * p.zeta) / abs(p.zeta),
                abs(abs(g.zeta) - abs(p.zeta)) / abs(p.zeta),
            )
            if i1.n >= 1:
                conj = max(conj, lift_conjugacy_check(q, delta, i1, [p]))
    return VerificationReport(
        [
            Check.of("deck_identity", ident, 0.0),
            Check.of("deck_group_law", group, tol),
            Check.of("deck_rotation", rot, tol),
            Check.of("deck_conjugacy", conj, tol),
        ]
    )
