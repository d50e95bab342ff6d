"""Deck transformations of the lifted map on C x {|zeta| > 1}.

For the quadratic example Q(zeta) = zeta**3 + 1/4 and the half turn
gamma(z, zeta) = (z + 4 zeta**3, -zeta).  The lift H~ does not see the
difference between a point and its image under gamma.
"""

import numpy as np

from henon_rigidity import CoverPoint, DeckIndex, MonicCenteredHenon, lift_map, q_polynomial
from henon_rigidity.bottcher import QPolynomial
from henon_rigidity.deck import CoverDynamics, deck_property_suite

q = QPolynomial(3, (0.0, 0.25))
dyn = CoverDynamics(q, 1.0)
half = DeckIndex.of(1, 1, 2)

p = CoverPoint(0.5 + 0.2j, 1.5 * np.exp(0.3j))
g = dyn.deck(p, half)
print("p          =", p)
print("gamma(p)   =", g)
print("H~(p)      =", lift_map(q, 1.0, p))
print("H~(gamma p)=", lift_map(q, 1.0, g))

# a quarter turn at level 2 squares to the half turn
quarter = DeckIndex.of(1, 2, 2)
twice = dyn.deck(dyn.deck(p, quarter), quarter)
print("\n|gamma_1/4^2(p) - gamma_1/2(p)| =", abs(twice.z - g.z) + abs(twice.zeta - g.zeta))

rng = np.random.default_rng(0)
for d in (2, 3, 4):
    c = rng.uniform(-0.5, 0.5, d - 1) + 1j * rng.uniform(-0.5, 0.5, d - 1)
    h = MonicCenteredHenon(d, tuple(c), 1.2)
    report = deck_property_suite(q_polynomial(h), h.delta, samples=100, max_level=3)
    print(f"d={d}:", ", ".join(f"{c.name} {c.max_residual:.1e}" for c in report.checks))
