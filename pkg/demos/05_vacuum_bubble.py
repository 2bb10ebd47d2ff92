"""Flow with an exact interior vacuum: no density floor, no regularization.

The viscous operator rho/dt - lap/2 stays elliptic where rho = 0, so the
preconditioned CG solve converges at moderate iteration counts even though
the density ratio is infinite. The run writes heatmaps of the density before
and after so you can watch the bubble get stirred.
"""

from pathlib import Path

from nematic2d import (SimConfig, export_heatmap, initial_state, simulate)

out = Path("demo_out/vacuum_bubble")
out.mkdir(parents=True, exist_ok=True)

cfg = SimConfig(nx=64, ny=64, dt=1e-3, t_end=0.5, scenario="vacuum-bubble",
                scenario_params={"vortex_amp": 0.4}, cadence=50,
                out_dir=str(out))
export_heatmap(initial_state(cfg).rho, out / "rho_initial.pgm")
res = simulate(cfg)

print(f"status: {res.summary['status']} after {res.summary['steps']} steps")
print(f"max CG iterations across the run: {res.summary['max_cg_iterations']}")
print(f"{'t':>5} {'rho_min':>9} {'rho_max':>9} {'kinetic':>12} {'energy':>12}")
for rec in res.records:
    print(f"{rec.t:5.2f} {rec.rho_min:9.1e} {rec.rho_max:9.4f} "
          f"{rec.ke:12.5e} {rec.energy_total:12.5e}")
print(f"\nvacuum survives exactly: min rho = {res.state.rho.values.min()}")
print(f"L^2 norm conservation drift: {res.records[-1].rho_drift_q2:.2e}")
print(f"artifacts in {out}/ (diagnostics.csv, summary.json, *.pgm, final.nlc2)")
