"""
The wavepacket overlap integral I(rho, l)
=========================================

For a narrow Gaussian packet (eps = sigma_p/p = 1e-3) the closed form
``exp(-eps^2 (l(l+1) + 1/3)/rho) / rho`` is compared with adaptive quadrature
and with the exact modified-spherical-Bessel identity.
"""

from uniform_wigner import integral_approx, integral_bessel_form, integral_exact

eps = 1e-3
print(f"{'l':>6} {'quadrature':>22} {'closed form':>22} {'rel error':>10}")
for l in range(0, 3001, 500):
    ex = integral_exact(1.0, l, eps)
    ap = integral_approx(1.0, l, eps)
    print(f"{l:6d} {ex:22.15e} {ap:22.15e} {(ex - ap) / ex:10.2e}")

# %%
# The relative error at l = 3000 hardly depends on rho near 1.

for rho in (0.99, 1.0, 1.01):
    ex = integral_exact(rho, 3000, eps)
    print(f"rho = {rho}: R = {(ex - integral_approx(rho, 3000, eps)) / ex:.4e}")

# %%
# Far in the tail (l = 10000, about 10 widths out) the value is ~1e-44 and
# quadrature cannot resolve it; the Bessel identity still can.

print("l = 10000:", integral_bessel_form(1.0, 10000, eps), "vs closed form", integral_approx(1.0, 10000, eps))
