"""The quadratic map H(x, y) = (y, y**2 - x) near infinity.

Prints the first Laurent coefficients of the Böttcher coordinate on the
line x = 0, the polynomial Q, and compares the truncated series with the
numerically evaluated Böttcher function.
"""

import numpy as np

from henon_rigidity import MonicCenteredHenon, bottcher_numeric, q_polynomial, y_series, zeta_series

h = MonicCenteredHenon.quadratic()
N = 8

L = zeta_series(h, N)
D = y_series(h, N)
print("k      L_k            D_k")
for k in range(1, N + 1):
    print(f"{k:<3d} {complex(L[k]).real:+.6f}   {complex(D[k]).real:+.6f}")

q = q_polynomial(h)
print("\nQ(zeta) = zeta^3 + %g zeta + %g" % (q.A(1).real, q.A(0).real))

# truncated after L_2 the error should shrink by 2**5 = 32 per doubling of |y|
short = zeta_series(h, 2)
for r in (30.0, 60.0, 120.0, 240.0):
    y = r * np.exp(0.4j)
    err = abs(short(y) - bottcher_numeric(h, (0.0, y)))
    print(f"|y| = {r:5.0f}   |series - phi| = {err:.3e}")
