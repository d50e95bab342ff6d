"""Root-of-unity parameters, partner maps and the coefficient relations they force.

For a monic centered ``H`` of degree ``d`` and roots of unity
``alpha**(d*d-1) = 1``, ``beta = alpha**(d+1)``, ``gamma**(d-1) = 1``, the
partner ``F`` has ``beta p_H(y) = alpha p_F(alpha y)`` and ``delta_F = gamma delta_H``,
and then ``F = L ∘ B ∘ H ∘ B`` with

    B(x, y) = (gamma alpha/beta x, y/alpha),    L(x, y) = (beta/gamma x, beta y).

All parameters are stored as exact turns (fractions of a full rotation);
complex values are only produced when a map is evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import numpy as np

from ._numeric import rel_residual, turn_root
from .bottcher import q_polynomial, q_tilde, zeta_series, y_series
from .deck import CoverDynamics, CoverPoint, DeckIndex, random_cover_points
from .errors import DomainError
from .henon import AffineCoordMap, HenonShape, MonicCenteredHenon
from .report import Check, VerificationReport
from .series import compose_tail

__all__ = [
    "RigidityParams",
    "Check",
    "VerificationReport",
    "enumerate_rigidity_params",
    "construct_partner",
    "affine_factors",
    "verify_composition_identity",
    "verify_q_relation",
    "verify_series_relations",
    "verify_unequal_jacobian",
    "verify_cocycle_relation",
    "find_alpha_tilde",
    "verify_pair",
    "lift_sample_radius",
]


def _unit(turn: Fraction) -> Fraction:
    return turn - (turn.numerator // turn.denominator)


@dataclass(frozen=True)
class RigidityParams:
    """``alpha = e(a/(d*d-1))``, ``gamma = e(g/(d-1))`` and ``beta = alpha**(d+1)``.

    Indices are reduced modulo ``d*d-1`` and ``d-1`` on construction, so
    every identity between the roots of unity holds exactly.
    """

    d: int
    alpha_index: int = 0
    gamma_index: int = 0

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("degree must be >= 2")
        object.__setattr__(self, "alpha_index", self.alpha_index % (self.d * self.d - 1))
        object.__setattr__(self, "gamma_index", self.gamma_index % (self.d - 1))

    @property
    def alpha_turn(self) -> Fraction:
        return Fraction(self.alpha_index, self.d * self.d - 1)

    @property
    def beta_turn(self) -> Fraction:
        return _unit(self.alpha_turn * (self.d + 1))

    @property
    def gamma_turn(self) -> Fraction:
        return Fraction(self.gamma_index, self.d - 1)

    @property
    def alpha(self) -> complex:
        return turn_root(self.alpha_turn)

    @property
    def beta(self) -> complex:
        return turn_root(self.beta_turn)

    @property
    def gamma(self) -> complex:
        return turn_root(self.gamma_turn)

    def alpha_power(self, k: int) -> complex:
        return turn_root(self.alpha_turn * k)

    @property
    def equal_jacobian(self) -> bool:
        return self.gamma_index == 0

    def __mul__(self, other: "RigidityParams") -> "RigidityParams":
        if other.d != self.d:
            raise ValueError("parameters for different degrees")
        return RigidityParams(
            self.d, self.alpha_index + other.alpha_index, self.gamma_index + other.gamma_index
        )


def enumerate_rigidity_params(d: int) -> list[RigidityParams]:
    if d < 2:
        raise ValueError("degree must be >= 2")
    return [RigidityParams(d, a, g) for a in range(d * d - 1) for g in range(d - 1)]


def _check_degree(hmap: MonicCenteredHenon, params: RigidityParams) -> None:
    if hmap.degree != params.d:
        raise ValueError(f"map has degree {hmap.degree}, parameters are for degree {params.d}")


def construct_partner(hmap: MonicCenteredHenon, params: RigidityParams) -> MonicCenteredHenon:
    """``F`` with ``p_F(y) = (beta/alpha) p_H(y/alpha)`` and ``delta_F = gamma delta_H``.

    Coefficient-wise ``a_i^F = alpha**(d-i) a_i^H``; the leading coefficient
    ``beta alpha**-(d+1)`` is 1 by construction of ``beta``.
    """
    _check_degree(hmap, params)
    d = params.d
    if _unit(params.beta_turn - params.alpha_turn * (d + 1)) != 0:
        raise AssertionError("partner would not be monic")
    coeffs = tuple(params.alpha_power(d - i) * a for i, a in enumerate(hmap.coeffs))
    return MonicCenteredHenon(d, coeffs, params.gamma * hmap.delta)


def affine_factors(params: RigidityParams) -> tuple[AffineCoordMap, AffineCoordMap, AffineCoordMap]:
    """``(L, B, A)`` with ``A = L ∘ B = (alpha x, beta/alpha y)``.

    Multipliers: ``scale_x(A) = (beta/gamma) scale_x(B)`` and ``scale_y(A) = beta scale_y(B)``.
    """
    at, bt, gt = params.alpha_turn, params.beta_turn, params.gamma_turn
    b_turns = (_unit(gt + at - bt), _unit(-at))
    l_turns = (_unit(bt - gt), bt)
    a_turns = (at, _unit(bt - at))
    if (_unit(l_turns[0] + b_turns[0]), _unit(l_turns[1] + b_turns[1])) != a_turns:
        raise AssertionError("A != L∘B at the level of turns")

    def diag(tx: Fraction, ty: Fraction) -> AffineCoordMap:
        return AffineCoordMap(turn_root(tx), 0.0, turn_root(ty), 0.0)

    return diag(*l_turns), diag(*b_turns), diag(*a_turns)


def verify_composition_identity(
    hmap: MonicCenteredHenon, partner: MonicCenteredHenon, params: RigidityParams, tol: float = 1e-12
) -> VerificationReport:
    """Compare the coefficients of ``L ∘ B ∘ H ∘ B`` with those of ``F``."""
    _check_degree(hmap, params)
    L, B, _ = affine_factors(params)
    composed = HenonShape.of(hmap).precompose(B).postcompose(B).postcompose(L)
    if partner.degree != hmap.degree:
        return VerificationReport([Check("composition_identity", float("inf"), tol, False)])
    return VerificationReport([Check.of("composition_identity", composed.residual(HenonShape.of(partner)), tol)])


def _require_equal_jacobian(params: RigidityParams) -> None:
    if not params.equal_jacobian:
        raise DomainError("relation only holds for equal Jacobians (gamma_index = 0)")


def _relation_residual(h_vals, f_vals, params: RigidityParams, exponents) -> float:
    """Max of ``|h - alpha**-e f|`` relative to the coefficient sizes."""
    worst = 0.0
    for h, f, e in zip(h_vals, f_vals, exponents):
        worst = max(worst, rel_residual(complex(h), params.alpha_power(-e) * complex(f)))
    return worst


def verify_q_relation(
    hmap: MonicCenteredHenon,
    partner: MonicCenteredHenon,
    params: RigidityParams,
    order: int | None = None,
    tol: float = 1e-9,
    precision: int | None = None,
) -> VerificationReport:
    """``A_{d-k}^H = alpha**-(k+1) A_{d-k}^F`` for ``1 <= k <= d-1``; ``A_0`` is not compared."""
    _check_degree(hmap, params)
    _require_equal_jacobian(params)
    d = params.d
    order = 2 * d if order is None else order
    qh = q_polynomial(hmap, order, precision)
    qf = q_polynomial(partner, order, precision)
    ks = range(1, d)
    res = _relation_residual([qh.A(d - k) for k in ks], [qf.A(d - k) for k in ks], params, [k + 1 for k in ks])
    return VerificationReport([Check.of("q_relation", res, tol)])


def verify_series_relations(
    hmap: MonicCenteredHenon,
    partner: MonicCenteredHenon,
    params: RigidityParams,
    order: int | None = None,
    tol: float = 1e-9,
    precision: int | None = None,
) -> VerificationReport:
    """The ``D_k`` and ``L_k`` relations and the vanishing of ``alpha zeta_H(y) - zeta_F(alpha y)`` below ``y**-d``."""
    _check_degree(hmap, params)
    _require_equal_jacobian(params)
    d = params.d
    order = 2 * d if order is None else order
    if order < d - 1:
        raise ValueError(f"order must be >= d-1 = {d - 1}")
    zh = zeta_series(hmap, order, precision)
    zf = zeta_series(partner, order, precision)
    yh = y_series(hmap, order, precision)
    yf = y_series(partner, order, precision)
    ks = list(range(1, d))
    exps = [k + 1 for k in ks]
    d_res = _relation_residual([yh[k] for k in ks], [yf[k] for k in ks], params, exps)
    l_res = _relation_residual([zh[k] for k in ks], [zf[k] for k in ks], params, exps)

    alpha = params.alpha
    scaled, _ = compose_tail(_as_complex(zh), alpha)
    _, rotated = compose_tail(_as_complex(zf), alpha)
    z_res = 0.0
    for k in ks:
        a, b = scaled.coeffs[k - 1], rotated.coeffs[k - 1]
        z_res = max(z_res, abs(a - b) / max(1.0, abs(a), abs(b)))
    return VerificationReport(
        [
            Check.of("d_relation", d_res, tol),
            Check.of("l_relation", l_res, tol),
            Check.of("zeta_low_order", z_res, tol),
        ]
    )


def _as_complex(series):
    return type(series)(tuple(complex(c) for c in series.coeffs))


def verify_cocycle_relation(
    hmap: MonicCenteredHenon,
    partner: MonicCenteredHenon,
    params: RigidityParams,
    samples: int = 100,
    tol: float = 1e-9,
    radius: float = 1.5,
) -> VerificationReport:
    """``beta Delta_H(zeta) = Delta_F(alpha zeta)`` for the deck class ``1/d`` on ``|zeta| = radius``."""
    _check_degree(hmap, params)
    _require_equal_jacobian(params)
    d = params.d
    dyn_h = CoverDynamics(q_polynomial(hmap), hmap.delta)
    dyn_f = CoverDynamics(q_polynomial(partner), partner.delta)
    idx = DeckIndex.of(1, 1, d)
    beta, alpha = params.beta, params.alpha
    worst = 0.0
    for j in range(samples):
        zeta = radius * np.exp(2j * np.pi * (j + 0.5) / samples)
        lhs = beta * dyn_h.increment(zeta, idx)
        rhs = dyn_f.increment(alpha * zeta, idx)
        worst = max(worst, rel_residual(lhs, rhs))
    return VerificationReport([Check.of("cocycle_relation", worst, tol)])


def find_alpha_tilde(
    hmap: MonicCenteredHenon, partner: MonicCenteredHenon, order: int | None = None, precision: int | None = None
) -> tuple[int, float]:
    """Search the ``(d*d-1)``-th roots of unity for the best ``A_{d-k}`` relation.

    Returns ``(index, residual)`` of the best candidate.
    """
    d = hmap.degree
    order = 2 * d if order is None else order
    qh = q_polynomial(hmap, order, precision)
    qf = q_polynomial(partner, order, precision)
    ks = range(1, d)
    best = (0, float("inf"))
    for a in range(d * d - 1):
        cand = RigidityParams(d, a, 0)
        res = _relation_residual([qh.A(d - k) for k in ks], [qf.A(d - k) for k in ks], cand, [k + 1 for k in ks])
        if res < best[1]:
            best = (a, res)
    return best


def lift_sample_radius(d: int) -> float:
    """Outer radius for iterated-lift samples: 1.3, shrunk so ``|zeta|**(d**(d-1))`` stays below ``e**200``."""
    return min(1.3, float(np.exp(200.0 / d ** (d - 1))))


def _iterated_lift_residual(hmap: MonicCenteredHenon, points: list[CoverPoint]) -> float:
    d = hmap.degree
    q = q_polynomial(hmap)
    qt = q_tilde(q, hmap.delta)  # the lift below uses the same q, so only the closed form differs
    support = np.flatnonzero(qt)
    z0 = np.array([p.z for p in points])
    zeta0 = np.array([p.zeta for p in points])
    z, zeta = z0, zeta0
    for _ in range(d - 1):  # same arithmetic as CoverDynamics.lift, on arrays
        z, zeta = hmap.delta / d * z + q(zeta), zeta**d
    # Q~ is sparse (about d*d terms out of (d+1) d**(d-2)), so sum the monomials directly
    z_closed = (hmap.delta / d) ** (d - 1) * z0 + np.power.outer(zeta0, support) @ qt[support]
    zeta_closed = zeta0 ** (d ** (d - 1))
    rz = np.abs(z - z_closed) / np.maximum.reduce([np.ones(len(z)), np.abs(z), np.abs(z_closed)])
    rzeta = np.abs(zeta - zeta_closed) / np.maximum(1.0, np.abs(zeta_closed))
    return float(max(rz.max(), rzeta.max()))


def verify_unequal_jacobian(
    hmap: MonicCenteredHenon,
    partner: MonicCenteredHenon,
    params: RigidityParams,
    tol: float = 1e-8,
    lift_tol: float = 1e-10,
    samples: int = 50,
    seed: int = 0,
) -> VerificationReport:
    """Checks for pairs whose Jacobians differ by a ``(d-1)``-th root of unity.

    * ``jacobian_power``: ``delta_F**(d-1) = delta_H**(d-1)`` (index identity
      plus a numeric comparison for user-supplied partners);
    * ``alpha_tilde_search``: some ``(d*d-1)``-th root of unity relates the
      ``A_{d-k}`` coefficients;
    * ``iterated_lift``: ``d-1`` lifts agree with the closed form through
      ``Q~`` for both maps, on ``1 < |zeta| <= 1.3`` (smaller for ``d >= 5``,
      see :func:`lift_sample_radius`).
    """
    _check_degree(hmap, params)
    d = params.d
    checks = []
    index_ok = (params.gamma_index * (d - 1)) % (d - 1) == 0
    dh, df = hmap.delta ** (d - 1), partner.delta ** (d - 1)
    jac = rel_residual(dh, df) if index_ok else float("inf")
    checks.append(Check.of("jacobian_power", jac, 1e-12))

    _, res = find_alpha_tilde(hmap, partner)
    checks.append(Check.of("alpha_tilde_search", res, tol))

    pts = random_cover_points(samples, np.random.default_rng(seed), rmin=1.0, rmax=lift_sample_radius(d))
    lift = max(_iterated_lift_residual(hmap, pts), _iterated_lift_residual(partner, pts))
    checks.append(Check.of("iterated_lift", lift, lift_tol))
    return VerificationReport(checks)


def verify_pair(
    hmap: MonicCenteredHenon,
    partner: MonicCenteredHenon,
    params: RigidityParams,
    order: int | None = None,
    tol: float = 1e-9,
    precision: int | None = None,
) -> VerificationReport:
    """Every applicable suite: the equal-Jacobian relations only when ``gamma = 1``."""
    report = verify_composition_identity(hmap, partner, params)
    if params.equal_jacobian:
        report.extend(verify_q_relation(hmap, partner, params, order, tol, precision))
        report.extend(verify_series_relations(hmap, partner, params, order, tol, precision))
        report.extend(verify_cocycle_relation(hmap, partner, params, tol=tol))
    report.extend(verify_unequal_jacobian(hmap, partner, params, tol=max(tol, 1e-8)))
    return report
