import math

import numpy as np
import pytest

from nematic2d import (DiagnosticsRecord, DirectorBoundMonitor,
                       DirectorField2D, Grid2D, PhiMonitor, PhiSample,
                       ScalarField2D, SerrinExponents, SerrinMonitor,
                       SimConfig, VectorField2D, admissible_exponents,
                       basic_energy, d3_min,
                       director_grad_l4_4, director_hessian_l2_sq,
                       make_scenario, phi_functional, renormalize,
                       rigidity_report, serrin_norm, simulate,
                       smallness_condition, step_director,
                       tension_identity_residual, tension_l2_sq)
from nematic2d.fields import grad_arrays, integral

from helpers import circle_director, random_unit_director


@pytest.fixture
def grid():
    return Grid2D(64, 64, 1.0, 1.0)


class TestBasicEnergy:
    def test_rest_state(self, grid):
        rho = ScalarField2D.full(grid, 1.0)
        e, diss = basic_energy(rho, VectorField2D.zeros(grid),
                               DirectorField2D.constant(grid, (0, 0, 1)))
        assert e < 1e-20
        assert diss < 1e-20

    def test_circle_valued_closed_form(self, grid):
        # |grad d|^2 = (phi_x)^2 for equator-valued maps, so the energy of
        # phi = a sin(2 pi x) is a^2 (2 pi)^2 / 2
        a = 0.3
        X, _ = grid.meshgrid()
        d = circle_director(grid, a * np.sin(2 * np.pi * X))
        e, _ = basic_energy(ScalarField2D.full(grid, 1.0),
                            VectorField2D.zeros(grid), d)
        assert e == pytest.approx(a**2 * (2 * math.pi) ** 2 / 2, rel=1e-12)

    def test_director_dissipation_equals_identity_form(self, grid):
        rng = np.random.default_rng(3)
        d = renormalize(random_unit_director(grid, rng))
        _, diss = basic_energy(ScalarField2D.full(grid, 1.0),
                               VectorField2D.zeros(grid), d)
        alt = director_hessian_l2_sq(d) - director_grad_l4_4(d)
        assert diss == pytest.approx(alt, rel=1e-7)


class TestTensionIdentity:
    def test_constant_director(self, grid):
        assert tension_identity_residual(
            DirectorField2D.constant(grid, (0, 0, 1))) < 1e-15

    def test_circle_valued_matches_angle_laplacian(self, grid):
        # for equator-valued maps both sides equal int |lap phi|^2
        a = 0.8
        X, _ = grid.meshgrid()
        d = circle_director(grid, a * np.sin(2 * np.pi * X))
        assert tension_identity_residual(d) < 1e-9
        closed = a**2 * (2 * math.pi) ** 4 / 2
        assert tension_l2_sq(d) == pytest.approx(closed, rel=1e-12)

    def test_residual_scales_linearly_in_unit_drift(self, grid):
        rng = np.random.default_rng(8)
        d0 = renormalize(random_unit_director(grid, rng))
        res = {}
        for eps in (1e-3, 1e-4):
            stretched = DirectorField2D.from_arrays(
                grid, *(c.values * (1.0 + eps) for c in d0.components))
            res[eps] = tension_identity_residual(stretched)
        assert res[1e-3] / res[1e-4] == pytest.approx(10.0, rel=0.2)


class TestSmallness:
    def test_constant_director_trivially_small(self, grid):
        rho = ScalarField2D.full(grid, 1.0)
        X, _ = grid.meshgrid()
        u = VectorField2D.from_arrays(grid, np.sin(2 * np.pi * X),
                                      np.zeros(grid.shape))
        value, ok = smallness_condition(rho, u,
                                        DirectorField2D.constant(grid, (0, 0, 1)))
        assert value < 1e-18
        assert ok

    def test_closed_form_value(self, grid):
        # weighted kinetic energy 1 and gradient energy 0.005 give
        # exp(2.01) * 0.005, comfortably below 1/16
        st = make_scenario("small-director",
                           {"ke_target": 1.0, "grad_d_sq_target": 0.005},
                           grid)
        value, ok = smallness_condition(st.rho, st.u, st.d)
        assert value == pytest.approx(math.exp(2.01) * 0.005, rel=1e-6)
        assert ok

    def test_large_director_gradient_fails(self, grid):
        st = make_scenario("small-director", {"grad_d_sq_target": 1.0}, grid)
        value, ok = smallness_condition(st.rho, st.u, st.d)
        assert value >= math.exp(2.0)
        assert not ok

    def test_monotone_in_both_arguments(self, grid):
        st = make_scenario("small-director", {}, grid)
        base, _ = smallness_condition(st.rho, st.u, st.d)
        bigger_u = VectorField2D.from_arrays(grid, 2 * st.u.u1.values,
                                             2 * st.u.u2.values)
        v_up, _ = smallness_condition(st.rho, bigger_u, st.d)
        assert v_up > base


class TestSerrin:
    def test_admissible_examples(self):
        ok, thr = admissible_exponents(4.0, 4.0)
        assert ok and thr == pytest.approx(4.0)
        ok, thr = admissible_exponents(math.inf, 2.0)
        assert ok and thr == pytest.approx(2.0)
        ok, thr = admissible_exponents(3.0, 6.0)
        assert ok and thr == pytest.approx(6.0)
        assert not admissible_exponents(2.0, 100.0)[0]
        assert not admissible_exponents(2.5, 4.0)[0]   # 1/2.5 + 1/4 > 1/2
        assert not admissible_exponents(8.0, 2.0)[0]   # 1/8 + 1/2 > 1/2

    def test_constructor_rejects_inadmissible(self):
        with pytest.raises(ValueError):
            SerrinExponents(2.5, 4.0)
        SerrinExponents(4.0, 4.0)

    def test_constant_director_accumulates_nothing(self, grid):
        mon = SerrinMonitor(SerrinExponents(4.0, 4.0))
        d = DirectorField2D.constant(grid, (0, 0, 1))
        for _ in range(10):
            mon.update(d, 0.01)
        assert mon.accumulated < 1e-20

    def test_frozen_field_closed_form(self, grid):
        # constant integrand: accumulated = c^s * T exactly under the
        # rectangle rule
        a = 0.3
        X, _ = grid.meshgrid()
        d = circle_director(grid, a * np.sin(2 * np.pi * X))
        c = serrin_norm(d, 4.0)
        assert c == pytest.approx(a * 2 * math.pi * (3.0 / 8.0) ** 0.25,
                                  rel=1e-12)
        mon = SerrinMonitor(SerrinExponents(4.0, 4.0))
        n, dt = 50, 2e-3
        for _ in range(n):
            mon.update(d, dt)
        assert mon.accumulated == pytest.approx(c**4 * n * dt, rel=1e-12)

    def test_sup_norm_exponents(self, grid):
        # r = inf uses the grid max of |grad d|
        a = 0.3
        X, _ = grid.meshgrid()
        d = circle_director(grid, a * np.sin(2 * np.pi * X))
        c = serrin_norm(d, math.inf)
        assert c == pytest.approx(a * 2 * math.pi, rel=1e-12)
        mon = SerrinMonitor(SerrinExponents(math.inf, 2.0))
        for _ in range(10):
            mon.update(d, 1e-2)
        assert mon.accumulated == pytest.approx(c**2 * 0.1, rel=1e-12)

    def test_accumulator_never_decreases(self, grid):
        rng = np.random.default_rng(5)
        mon = SerrinMonitor(SerrinExponents(6.0, 3.0))
        prev = 0.0
        for _ in range(5):
            mon.update(random_unit_director(grid, rng), 1e-3)
            assert mon.accumulated >= prev
            prev = mon.accumulated


class TestRigidity:
    def test_constant_director_degenerate(self, grid):
        rep = rigidity_report(DirectorField2D.constant(grid, (0, 0, 1)))
        assert rep.gap_ratio is None
        assert rep.lhs < 1e-20

    def test_polar_cap_has_positive_gap(self, grid):
        st = make_scenario("angle-condition", {"epsilon": 0.5}, grid)
        assert d3_min(st.d) >= 0.5
        rep = rigidity_report(st.d)
        assert rep.rhs > 0.0
        assert rep.gap_ratio is not None and rep.gap_ratio > 0.0
        assert rep.prop_bound_ratio is not None and rep.prop_bound_ratio > 0.0

    def test_equator_touching_field_still_reports(self, grid):
        st = make_scenario("supercritical", {"w_max": 2.0}, grid)
        assert d3_min(st.d) < 0.0
        rep = rigidity_report(st.d)
        assert np.isfinite(rep.lhs) and np.isfinite(rep.rhs)


class TestD3Floor:
    def test_north_pole(self, grid):
        assert d3_min(DirectorField2D.constant(grid, (0, 0, 1))) == 1.0

    def test_heat_flow_keeps_floor(self, grid):
        st = make_scenario("angle-condition", {"epsilon": 0.3}, grid)
        d = st.d
        floor0 = d3_min(d)
        assert floor0 >= 0.3
        u0 = VectorField2D.zeros(grid)
        for _ in range(40):
            d = step_director(d, u0, 1e-3)
            assert d3_min(d) >= floor0 - 1e-6


class TestDirectorBoundMonitor:
    def test_trapezoid_arithmetic(self):
        mon = DirectorBoundMonitor()
        mon.update(0.0, 0.01, 2.0)
        mon.update(0.5, 0.03, 4.0)
        mon.update(1.0, 0.02, 0.0)
        assert mon.sup_grad_sq == pytest.approx(0.03)
        assert mon.integral_hess_sq == pytest.approx(0.5 * (2 + 4) * 0.5
                                                     + 0.5 * (4 + 0) * 0.5)
        assert mon.satisfied(slack=10.0)
        assert not mon.satisfied(slack=0.0)


class TestPhi:
    def test_rest_state_is_euler_offset(self):
        cfg = SimConfig(nx=32, ny=32, dt=1e-3, t_end=5e-3, scenario="rest")
        res = simulate(cfg, write_files=False)
        assert res.records[-1].phi_value == pytest.approx(math.e, abs=1e-12)

    def test_incremental_monitor_matches_batch(self):
        rng = np.random.default_rng(0)
        samples = [PhiSample(t=float(t), grad_u_l2_sq=rng.random(),
                             grad_d_h1_sq=rng.random(),
                             rho_udot_l2_sq=rng.random(),
                             dt_d_h1_sq=rng.random(),
                             hess_d_h1_sq=rng.random())
                   for t in np.linspace(0.0, 1.0, 17)]
        mon = PhiMonitor()
        for s in samples:
            mon.update(s)
        assert mon.value == pytest.approx(phi_functional(samples), rel=1e-14)

    def test_first_order_refinement(self):
        # halving dt roughly halves the time-integration error of phi
        values = {}
        for dt in (4e-3, 2e-3, 1e-3):
            cfg = SimConfig(nx=32, ny=32, dt=dt, t_end=0.08,
                            scenario="small-director",
                            scenario_params={"ke_target": 0.5})
            values[dt] = simulate(cfg, write_files=False).records[-1].phi_value
        e1 = abs(values[4e-3] - values[2e-3])
        e2 = abs(values[2e-3] - values[1e-3])
        assert e2 < 0.8 * e1


class TestHessianNorm:
    def test_matches_explicit_second_derivatives(self, grid):
        # laplacian-based value equals the sum over all Hessian entries
        rng = np.random.default_rng(4)
        d = renormalize(random_unit_director(grid, rng))
        total = 0.0
        for c in d.components:
            gx, gy = grad_arrays(grid, c.values)
            gxx, gxy = grad_arrays(grid, gx)
            gyx, gyy = grad_arrays(grid, gy)
            total += integral(grid, gxx**2 + gxy**2 + gyx**2 + gyy**2)
        assert director_hessian_l2_sq(d) == pytest.approx(total, rel=1e-8)


class TestRecordValidation:
    def _kwargs(self):
        names = ("t", "energy_total", "dissipation", "grad_d_l2_sq",
                 "hess_d_l2_sq", "grad_d_l4_4", "rho_min", "rho_max",
                 "rho_drift_q2", "d3_min", "unit_drift", "serrin_increment",
                 "serrin_accumulated", "phi_value", "ke", "divu_res")
        return {n: 0.0 for n in names}

    def test_rejects_nonfinite(self):
        kw = self._kwargs()
        kw["dissipation"] = math.nan
        with pytest.raises(ValueError):
            DiagnosticsRecord(**kw)

    def test_rejects_negative_energy(self):
        kw = self._kwargs()
        kw["energy_total"] = -1.0
        with pytest.raises(ValueError):
            DiagnosticsRecord(**kw)

    def test_rejects_vacuum_violation(self):
        kw = self._kwargs()
        kw["rho_min"] = -1e-6
        with pytest.raises(ValueError):
            DiagnosticsRecord(**kw)
