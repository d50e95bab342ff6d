"""Hénon maps whose escaping sets are biholomorphic.

Submodules:

* :mod:`~henon_rigidity.henon` maps, filtration, escape classification, normal form
* :mod:`~henon_rigidity.series` truncated series arithmetic and reversion
* :mod:`~henon_rigidity.bottcher` Böttcher and Green functions, the ``L_k``/``D_k`` series and ``Q``
* :mod:`~henon_rigidity.deck` lifted dynamics and deck transformations
* :mod:`~henon_rigidity.rigidity` partner maps and the coefficient relations
* :mod:`~henon_rigidity.render` slice images; :mod:`~henon_rigidity.cli` the command line
"""

from .bottcher import (
    GreenValue,
    QPolynomial,
    bottcher_numeric,
    green_numeric,
    q_polynomial,
    q_tilde,
    y_series,
    zeta_series,
)
from .deck import CoverDynamics, CoverPoint, DeckIndex, cocycle_delta, deck_transform, lift_conjugacy_check, lift_map
from .errors import Diverged, DomainError, SeriesOrderError
from .henon import (
    AffineCoordMap,
    Escaping,
    GeneralHenon,
    MonicCenteredHenon,
    Undecided,
    classify_point,
    filtration_radius,
    iterate,
    normalize,
)
from .render import SliceSpec, render_slice
from .report import Check, VerificationReport
from .rigidity import (
    RigidityParams,
    affine_factors,
    construct_partner,
    enumerate_rigidity_params,
    verify_cocycle_relation,
    verify_composition_identity,
    verify_pair,
    verify_q_relation,
    verify_series_relations,
    verify_unequal_jacobian,
)

__version__ = "0.1.0"

__all__ = [
    "AffineCoordMap",
    "Check",
    "CoverDynamics",
    "CoverPoint",
    "DeckIndex",
    "Diverged",
    "DomainError",
    "Escaping",
    "GeneralHenon",
    "GreenValue",
    "MonicCenteredHenon",
    "QPolynomial",
    "RigidityParams",
    "SeriesOrderError",
    "SliceSpec",
    "Undecided",
    "VerificationReport",
    "affine_factors",
    "bottcher_numeric",
    "classify_point",
    "cocycle_delta",
    "construct_partner",
    "deck_transform",
    "enumerate_rigidity_params",
    "filtration_radius",
    "green_numeric",
    "iterate",
    "lift_conjugacy_check",
    "lift_map",
    "normalize",
    "q_polynomial",
    "q_tilde",
    "render_slice",
    "verify_cocycle_relation",
    "verify_composition_identity",
    "verify_pair",
    "verify_q_relation",
    "verify_series_relations",
    "verify_unequal_jacobian",
    "y_series",
    "zeta_series",
]
