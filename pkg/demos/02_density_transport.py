"""Semi-Lagrangian density transport against an exact characteristics oracle.

A shear flow u = (sin(2 pi y), 0) translates each horizontal line rigidly,
so the exact solution is rho0(x - t sin(2 pi y), y). The scheme should track
it at third-order-ish accuracy while never producing new extrema, and the
conserved L^q norms should drift only at the interpolation level.
"""

import numpy as np

from nematic2d import (Grid2D, ScalarField2D, VectorField2D, advect_density,
                       density_invariants)

for nx in (64, 128, 256):
    grid = Grid2D(nx, nx, 1.0, 1.0)
    X, Y = grid.meshgrid()
    rho0 = ScalarField2D(grid, 1.0 + 0.5 * np.exp(
        -((X - 0.5) ** 2 + (Y - 0.5) ** 2) / (2 * 0.1**2)))
    u = VectorField2D.from_arrays(grid, np.sin(2 * np.pi * Y),
                                  np.zeros(grid.shape))

    rho, nsteps, dt = rho0, 100, 1e-3
    for _ in range(nsteps):
        rho = advect_density(rho, u, dt)

    xs = np.mod(X - nsteps * dt * np.sin(2 * np.pi * Y), 1.0)
    exact = 1.0 + 0.5 * np.exp(-((xs - 0.5) ** 2 + (Y - 0.5) ** 2)
                               / (2 * 0.1**2))
    l2 = np.sqrt(((rho.values - exact) ** 2).sum() * grid.cell_area)
    inv = density_invariants(rho, rho0, 1.0, qs=(2.0, 4.0))
    print(f"nx={nx:4d}: L2 error vs characteristics {l2:.3e} | "
          f"q=2 drift {inv.drifts[2.0]:.2e} | q=4 drift {inv.drifts[4.0]:.2e}")
    print(f"         range [{rho.values.min():.12f}, {rho.values.max():.12f}] "
          f"inside initial [{rho0.values.min():.1f}, {rho0.values.max():.1f}] "
          "(maximum principle, exact)")

print("\nVacuum is preserved exactly: a density that vanishes on a disk")
grid = Grid2D(128, 128, 1.0, 1.0)
X, Y = grid.meshgrid()
r = np.sqrt((X - 0.5) ** 2 + (Y - 0.5) ** 2)
s = np.clip((r - 0.12) / 0.15, 0.0, 1.0)
vac = ScalarField2D(grid, s * s * (3 - 2 * s))
u = VectorField2D.from_arrays(grid, np.sin(2 * np.pi * Y), np.zeros(grid.shape))
for _ in range(200):
    vac = advect_density(vac, u, 1e-3)
print(f"min density after 200 shear steps: {vac.values.min()} "
      "(clamped interpolation keeps it nonnegative)")
