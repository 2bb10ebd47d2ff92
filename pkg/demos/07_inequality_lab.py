"""Functional inequalities measured on analytic and random families.

Constant-free inequalities are asserted; constant-bearing ones are reported
as empirical ratios. The closing section varies the box size around a fixed
Gaussian to show how well the periodic box emulates the plane: the whole
workflow assumes data decays well inside the box, and this quantifies the
sensitivity to that choice.
"""

import math

import numpy as np

from nematic2d import (Grid2D, ScalarField2D, check_gagliardo_nirenberg,
                       check_ladyzhenskaya, check_log_sobolev,
                       check_poincare_density, gaussian_blob,
                       random_band_limited, velocity_from_stream)

grid = Grid2D(256, 256, 16.0, 16.0)

print("== Ladyzhenskaya on the unit Gaussian (all norms closed-form) ==")
rep = check_ladyzhenskaya(gaussian_blob(grid, 1.0))
print(f"lhs ||f||_L4^2      = {rep.lhs:.6f}   exact sqrt(pi/2) = "
      f"{math.sqrt(math.pi / 2):.6f}")
print(f"rhs sqrt2 |f||grad f| = {rep.rhs:.6f}   exact sqrt(2) pi = "
      f"{math.sqrt(2) * math.pi:.6f}")
print(f"ratio {rep.ratio:.4f}, holds: {rep.holds}")

print("\n== 100 random band-limited fields ==")
g128 = Grid2D(128, 128, 16.0, 16.0)
rng = np.random.default_rng(0)
ratios = []
for _ in range(100):
    r = check_ladyzhenskaya(random_band_limited(g128, rng))
    assert r.holds
    ratios.append(r.ratio)
print(f"all hold; ratio range [{min(ratios):.4f}, {max(ratios):.4f}] "
      "(sharp constant would be 1)")

print("\n== Gagliardo-Nirenberg ratios (empirical C(p)) ==")
for p in (2.0, 4.0, 6.0):
    r = check_gagliardo_nirenberg(gaussian_blob(grid, 1.0), p)
    print(f"p={p:g}: ratio {r.ratio:.6f}")

print("\n== density-weighted Poincare with a vacuum disk ==")
X, Y = g128.meshgrid()
r = np.sqrt((X - 8.0) ** 2 + (Y - 8.0) ** 2)
rho = ScalarField2D(g128, np.where(r < 3.0, 0.0, 1.0))
v = velocity_from_stream(gaussian_blob(g128, 1.0))
rep = check_poincare_density(rho, 1.0, v)
print(f"||v|| / (||rho^1/2 v|| + ||grad v||) = {rep.ratio:.4f} "
      "(finite despite the vacuum)")

print("\n== logarithmic Sobolev taming on sharpening bumps ==")
for k in range(5):
    sigma = 1.6 / (1.5**k)
    f = gaussian_blob(g128, sigma)
    rep = check_log_sobolev([0.0, 1.0], [f, f], 0.0, 1.0, 4.0)
    print(f"sigma={sigma:6.3f}: sup/H1 grows, ratio stays {rep.ratio:.4f}")

print("\n== box-size sensitivity of the plane emulation ==")
print("fixed unit Gaussian, growing box (tail cut at the edge shrinks):")
for L in (8.0, 12.0, 16.0, 24.0):
    n = int(16 * L)
    rep = check_ladyzhenskaya(gaussian_blob(Grid2D(n, n, L, L), 1.0))
    drift = abs(rep.lhs - math.sqrt(math.pi / 2))
    print(f"L={L:5.1f}: lhs error vs plane value {drift:.2e}")
print("eight e-foldings of decay before the edge keep all reported "
      "quantities at quadrature accuracy")
