"""
Stretched states d^j_jj
=======================

With m1 = m2 = j the exact value is simply ``cos(theta/2)**(2j)``, which
makes this family a clean test of the prefactor D and of Delta.  The relative
error shrinks as j grows and rises with angle.
"""

from uniform_wigner import d_approx, d_exact, make_index

print(f"{'j':>6} {'theta':>8} {'relative error':>15}")
for j in (20, 200, 2000):
    idx = make_index(2 * j, 2 * j, 2 * j)
    for t in (1e-3, 1e-2, 1e-1):
        ex = d_exact(idx, t)
        print(f"{j:6d} {t:8.0e} {(ex - d_approx(idx, t)) / ex:15.3e}")
