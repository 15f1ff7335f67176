"""
A half-integer element: j = 2000.5, m1 = 5/2, m2 = 1/2
======================================================

Quantum numbers are passed doubled, so this index is ``(4001, 5, 1)``.  The
Bessel order is m1 - m2 = 2 and the element vanishes like theta**2 at the
origin; the approximation keeps a small relative error there.
"""

import numpy as np

from uniform_wigner import d_approx, d_exact, d_series_highprec, make_index, small_angle_leading

idx = make_index(4001, 5, 1)
print(f"{'theta':>10} {'exact':>24} {'abs error':>10} {'rel error':>10}")
for t in np.logspace(-5, -1, 9):
    ex = d_exact(idx, t)
    err = ex - d_approx(idx, t)
    print(f"{t:10.3g} {ex:24.16e} {abs(err):10.2e} {abs(err / ex):10.2e}")

# %%
# At theta = 1e-3 the extended-precision hypergeometric sum confirms the
# recurrence.  Closer to the origin both the element and its approximation
# approach the leading monomial in theta, which is what fixes D.

t = 1e-3
print("series oracle  :", d_series_highprec(idx, t))
print("recurrence     :", d_exact(idx, t))
for t in (1e-5, 1e-6, 1e-7):
    print(f"theta = {t:.0e}: approx / leading term - 1 = {d_approx(idx, t) / small_angle_leading(idx, t) - 1:.2e}")
