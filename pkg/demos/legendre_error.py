"""
Low-angle error of the Bessel form for Legendre polynomials
===========================================================

For m1 = m2 = 0 the d-matrix element is a Legendre polynomial and the uniform
approximation reduces to ``sqrt(theta/sin theta) J_0(Delta theta)`` with
``Delta = sqrt(j(j+1) + 1/3)``.  This script tabulates the absolute error
against theta for j = 10 and j = 2000, then the j-dependence at theta = 1e-3.
"""

import numpy as np

from uniform_wigner import d_approx, d_exact, d_exact_j_range, make_index

thetas = np.logspace(-4, 0, 9)

for j in (10, 2000):
    idx = make_index(2 * j, 0, 0)
    print(f"j = {j}")
    print(f"{'theta':>10} {'exact':>22} {'abs error':>10}")
    for t in thetas:
        ex = d_exact(idx, t)
        print(f"{t:10.3g} {ex:22.15f} {abs(ex - d_approx(idx, t)):10.2e}")
    print()

# %%
# One recurrence pass yields P_j(cos 1e-3) for every j up to 2000, so the
# j-sweep costs about the same as the single largest element.

two_js, exact = d_exact_j_range(0, 0, 1e-3, 4000)
rel = [abs((ex - d_approx(make_index(int(tj), 0, 0), 1e-3)) / ex) for tj, ex in zip(two_js, exact)]
print(f"max relative error for j <= 2000 at theta = 1e-3: {max(rel):.2e}")
