"""Coupled stepping loop, run monitors, artifacts and the replay checker.

Operator order per step: density transport, director step, elastic stress,
momentum step with projection, then diagnostics at the configured cadence.
Density and director updates use the pre-step velocity; the momentum solve
uses the freshly transported density. Numerical breakdown (CFL breach,
director degeneracy, CG stagnation) is a logged, first-class outcome rather
than an unhandled error.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import diagnostics as diag
from .config import SimConfig
from .director import (DegenerateDirectorError, ericksen_stress, step_director,
                       unit_drift)
from .fields import (ScalarField2D, divergence, grad_arrays, integral,
                     lp_norm, spectral_tail_fraction)
from .io import export_heatmap, read_csv, write_csv, write_snapshot
from .momentum import (ConvergenceError, kinetic_energy, material_derivative,
                       step_momentum)
from .scenarios import make_scenario
from .state import SimState
from .transport import CFLError, advect_density, cfl_number

# per-step headroom of the discrete energy law: a relative floor plus the
# splitting-order term
ENERGY_SLACK_REL = 1e-6
ENERGY_SLACK_DT2 = 10.0
D3_FLOOR_SLACK = 1e-4
IDENTITY_RESIDUAL_ABS = 1e-8
IDENTITY_RESIDUAL_DRIFT = 10.0
BOUND_SLACK = 1e-3


@dataclass
class RunMonitors:
    """Everything a run accumulates across steps; carrying this object over
    (together with the state) resumes a run seamlessly."""

    e0: float
    rho0_q2: float
    rho_bar: float
    d3_min0: float
    smallness_value: float
    smallness_ok: bool
    serrin: diag.SerrinMonitor
    bound: diag.DirectorBoundMonitor = field(default_factory=diag.DirectorBoundMonitor)
    phi: diag.PhiMonitor = field(default_factory=diag.PhiMonitor)
    prev_t: float | None = None
    prev_u: object = None
    prev_d: object = None
    prev_energy: float | None = None
    prev_energy_step: int = 0
    max_energy_excess: float = 0.0
    d3_run_min: float = np.inf
    unit_drift_max: float = 0.0
    identity_excess_max: float = 0.0
    max_cg_iterations: int = 0
    samples: int = 0

    @classmethod
    def fresh(cls, cfg: SimConfig, state: SimState) -> "RunMonitors":
        e0 = kinetic_energy(state.rho, state.u) + diag.director_grad_l2_sq(state.d)
        value, ok = diag.smallness_condition(state.rho, state.u, state.d)
        rho0_q2 = lp_norm(ScalarField2D(state.grid,
                                        state.rho.values - cfg.rho_bar), 2.0)
        return cls(e0=e0, rho0_q2=rho0_q2, rho_bar=cfg.rho_bar,
                   d3_min0=diag.d3_min(state.d), smallness_value=value,
                   smallness_ok=ok, serrin=diag.SerrinMonitor(cfg.serrin_exponents()))


@dataclass
class RunResult:
    records: list
    state: SimState
    monitors: RunMonitors
    summary: dict
    csv_path: str | None = None
    snapshot_paths: list[str] = field(default_factory=list)


def initial_state(cfg: SimConfig) -> SimState:
    return make_scenario(cfg.scenario, cfg.scenario_params, cfg.grid(),
                         rho_bar=cfg.rho_bar, e=cfg.e)


def step_once(state: SimState, cfg: SimConfig, dt: float,
              info: dict | None = None) -> SimState:
    """One coupled step of size dt from the given state."""
    rho1 = advect_density(state.rho, state.u, dt, cfl_limit=cfg.cfl)
    d1 = step_director(state.d, state.u, dt)
    _, force = ericksen_stress(d1)
    u1, p1 = step_momentum(rho1, state.u, force, dt, cg_tol=cfg.cg_tol,
                           cg_max_iter=cfg.cg_max_iter, info=info)
    return SimState(rho=rho1, u=u1, p=p1, d=d1, t=state.t + dt,
                    step=state.step + 1)


def _sample(state: SimState, cfg: SimConfig, mon: RunMonitors, dt: float
            ) -> diag.DiagnosticsRecord:
    rho, u, d = state.rho, state.u, state.d
    g = state.grid
    ke = kinetic_energy(rho, u)
    gd2 = diag.director_grad_l2_sq(d)
    hess = diag.director_hessian_l2_sq(d)
    gd4 = diag.director_grad_l4_4(d)
    tension = diag.tension_l2_sq(d)
    grad_u = diag.velocity_grad_l2_sq(u)
    energy = ke + gd2
    dissipation = grad_u + tension
    residual = abs(tension - (hess - gd4))
    drift_q2 = abs(lp_norm(ScalarField2D(g, rho.values - mon.rho_bar), 2.0)
                   - mon.rho0_q2) / max(mon.rho0_q2, 1e-12)
    d3m = diag.d3_min(d)
    udrift = unit_drift(d)
    divu = lp_norm(divergence(u), 2.0)

    # higher-order monitor; time derivatives are backward differences
    # against the previous cadence sample
    rho_udot = dt_h1 = 0.0
    if mon.prev_t is not None and state.t > mon.prev_t:
        span = state.t - mon.prev_t
        udot = material_derivative(u, mon.prev_u, span)
        rho_udot = integral(g, rho.values * (udot.u1.values**2
                                             + udot.u2.values**2))
        for c1, c0 in zip(d.components, mon.prev_d.components):
            dtc = (c1.values - c0.values) / span
            gx, gy = grad_arrays(g, dtc)
            dt_h1 += integral(g, dtc * dtc + gx * gx + gy * gy)
    phi_value = mon.phi.update(diag.PhiSample(
        t=state.t, grad_u_l2_sq=grad_u, grad_d_h1_sq=gd2 + hess,
        rho_udot_l2_sq=rho_udot, dt_d_h1_sq=dt_h1,
        hess_d_h1_sq=hess + diag.director_third_deriv_l2_sq(d)))

    mon.bound.update(state.t, gd2, hess)
    mon.d3_run_min = min(mon.d3_run_min, d3m)
    mon.unit_drift_max = max(mon.unit_drift_max, udrift)
    mon.identity_excess_max = max(
        mon.identity_excess_max,
        residual - (IDENTITY_RESIDUAL_DRIFT * udrift + IDENTITY_RESIDUAL_ABS))
    if mon.prev_energy is not None:
        steps = max(state.step - mon.prev_energy_step, 1)
        slack = steps * (ENERGY_SLACK_REL * mon.e0 + ENERGY_SLACK_DT2 * dt * dt)
        mon.max_energy_excess = max(mon.max_energy_excess,
                                    energy - mon.prev_energy - slack)
    mon.prev_energy = energy
    mon.prev_energy_step = state.step
    mon.prev_t, mon.prev_u, mon.prev_d = state.t, u, d
    mon.samples += 1

    return diag.DiagnosticsRecord(
        t=state.t, energy_total=energy, dissipation=dissipation,
        grad_d_l2_sq=gd2, hess_d_l2_sq=hess, grad_d_l4_4=gd4,
        rho_min=float(rho.values.min()), rho_max=float(rho.values.max()),
        rho_drift_q2=drift_q2, d3_min=d3m, unit_drift=udrift,
        serrin_increment=mon.serrin.last_increment,
        serrin_accumulated=mon.serrin.accumulated, phi_value=phi_value,
        ke=ke, divu_res=divu, tension_identity_residual=residual)


def _summary(cfg: SimConfig, state: SimState, mon: RunMonitors,
             failure: dict | None) -> dict:
    tail = max(spectral_tail_fraction(c) for c in state.d.components)
    return {
        "status": "failed" if failure else "completed",
        "failure": failure,
        "t_final": state.t,
        "steps": state.step,
        "scenario": cfg.scenario,
        "smallness_value": mon.smallness_value,
        "smallness_satisfied": mon.smallness_ok,
        "director_bound_value": mon.bound.value,
        "director_bound_held": mon.bound.satisfied(BOUND_SLACK),
        "energy_monotone": mon.max_energy_excess <= 0.0,
        "max_energy_excess": mon.max_energy_excess,
        "d3_min_initial": mon.d3_min0,
        "d3_min_run": None if mon.d3_run_min is np.inf else mon.d3_run_min,
        "d3_floor_held": bool(mon.d3_run_min >= mon.d3_min0 - D3_FLOOR_SLACK),
        "serrin_accumulated": mon.serrin.accumulated,
        "unit_drift_max": mon.unit_drift_max,
        "identity_residual_ok": mon.identity_excess_max <= 0.0,
        "max_cg_iterations": mon.max_cg_iterations,
        "director_tail_fraction": tail,
    }


def simulate(cfg: SimConfig, state: SimState | None = None,
             monitors: RunMonitors | None = None, out_dir: str | None = None,
             write_files: bool = True, snapshot_times=()) -> RunResult:
    """Run from t = state.t (or the scenario's initial data) to cfg.t_end.

    Fixed dt when cfg.dt is set; otherwise the step adapts to the CFL target
    with cfl * min(dx, dy) as the quiescent-flow reference. Passing the state
    and monitors of an earlier segment resumes that run: accumulators carry
    over and the initial record is not re-emitted.
    """
    if state is None:
        state = initial_state(cfg)
    resuming = monitors is not None
    if monitors is None:
        monitors = RunMonitors.fresh(cfg, state)
    records: list[diag.DiagnosticsRecord] = []
    snapshot_paths: list[str] = []
    out = Path(out_dir if out_dir is not None else cfg.out_dir)
    if write_files:
        out.mkdir(parents=True, exist_ok=True)

    pending_snaps = sorted(float(s) for s in snapshot_times)
    t0, step0 = state.t, state.step
    dt_ref = cfg.cfl * min(cfg.grid().dx, cfg.grid().dy)
    if not resuming:
        records.append(_sample(state, cfg, monitors, cfg.dt or dt_ref))

    failure = None
    eps = 1e-12 * max(1.0, abs(cfg.t_end))
    try:
        while state.t < cfg.t_end - eps:
            if cfg.dt is not None:
                dt = cfg.dt
                if cfl_number(state.u, dt) > cfg.cfl:
                    raise CFLError(
                        f"CFL {cfl_number(state.u, dt):.3g} above target "
                        f"{cfg.cfl:.3g} at fixed dt")
            else:
                nu = cfl_number(state.u, 1.0)
                dt = cfg.cfl / nu if nu > 0.0 else dt_ref
                dt = min(dt, dt_ref, cfg.t_end - state.t)
            info: dict = {}
            state = step_once(state, cfg, dt, info)
            if cfg.dt is not None:
                # keep sample times exactly on the uniform step lattice
                state.t = t0 + (state.step - step0) * cfg.dt
            monitors.max_cg_iterations = max(monitors.max_cg_iterations,
                                             info.get("cg_iterations", 0))
            monitors.serrin.update(state.d, dt)
            if state.step % cfg.cadence == 0 or state.t >= cfg.t_end - eps:
                records.append(_sample(state, cfg, monitors, dt))
            while pending_snaps and state.t >= pending_snaps[0] - eps:
                pending_snaps.pop(0)
                if write_files:
                    p = out / f"snapshot_t{state.t:.6f}.nlc2"
                    write_snapshot(p, state)
                    snapshot_paths.append(str(p))
    except (CFLError, DegenerateDirectorError, ConvergenceError) as exc:
        failure = {"step": state.step, "cause": type(exc).__name__,
                   "message": str(exc)}

    summary = _summary(cfg, state, monitors, failure)
    csv_path = None
    if write_files:
        csv_path = str(out / "diagnostics.csv")
        write_csv(records, csv_path)
        snap = out / "final.nlc2"
        write_snapshot(snap, state)
        snapshot_paths.append(str(snap))
        (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n",
                                          encoding="utf-8")
        export_heatmap(state.rho, out / "rho_final.pgm")
    return RunResult(records=records, state=state, monitors=monitors,
                     summary=summary, csv_path=csv_path,
                     snapshot_paths=snapshot_paths)


def replay_csv(path) -> list[str]:
    """Re-verify the CSV-visible run invariants; returns violations."""
    cols = read_csv(path)
    out = []
    t = cols["t"]
    if len(t) == 0:
        return ["empty diagnostics file"]
    for name, v in cols.items():
        if not np.isfinite(v).all():
            out.append(f"non-finite values in column {name}")
    if np.any(np.diff(t) <= 0.0):
        out.append("time samples not strictly increasing")
    if np.any(cols["energy_total"] < 0.0):
        out.append("negative total energy")
    if np.any(cols["rho_min"] < -1e-12):
        out.append("density below the vacuum floor")
    if np.any(np.diff(cols["serrin_acc"]) < 0.0):
        out.append("Serrin accumulator decreased")
    e = cols["energy_total"]
    if len(e) > 1:
        dts = np.diff(t)
        slack = ENERGY_SLACK_REL * e[0] + ENERGY_SLACK_DT2 * dts * dts
        excess = np.diff(e) - slack
        if np.any(excess > 0.0):
            out.append(f"energy law violated by up to {excess.max():.3g}")
    return out
