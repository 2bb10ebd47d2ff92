"""Theorem-linked functionals of the flow state and run-level monitors.

Instantaneous quantities (energies, norms, minima, the smallness threshold,
the rigidity gap) are plain functions of fields. Time-accumulated monitors
(the Serrin blow-up functional, the small-data director bound, and the
higher-order energy) are small stateful classes fed by the stepping loop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .director import _director_gradients
from .fields import (DirectorField2D, ScalarField2D, VectorField2D,
                     grad_arrays, integral, laplacian_array, lp_norm)
from .momentum import kinetic_energy


# ---------------------------------------------------------------------------
# norms of director and velocity derivatives

def director_grad_sq_field(d: DirectorField2D) -> np.ndarray:
    """Pointwise |grad d|^2 summed over the three components."""
    _, grad_sq = _director_gradients(d)
    return grad_sq


def director_grad_l2_sq(d: DirectorField2D) -> float:
    return integral(d.grid, director_grad_sq_field(d))


def director_grad_l4_4(d: DirectorField2D) -> float:
    """Integral of |grad d|^4."""
    gs = director_grad_sq_field(d)
    return integral(d.grid, gs * gs)


def director_hessian_l2_sq(d: DirectorField2D) -> float:
    """Squared L^2 norm of all second derivatives of d; on the torus this
    equals the squared L^2 norm of lap(d), which is how it is computed."""
    g = d.grid
    return sum(integral(g, laplacian_array(g, c.values)**2)
               for c in d.components)


def director_third_deriv_l2_sq(d: DirectorField2D) -> float:
    """Squared L^2 norm of all third derivatives, via grad(lap(d))."""
    g = d.grid
    out = 0.0
    for c in d.components:
        lx, ly = grad_arrays(g, laplacian_array(g, c.values))
        out += integral(g, lx * lx + ly * ly)
    return out


def tension_sq_field(d: DirectorField2D) -> np.ndarray:
    """Pointwise |lap(d) + |grad d|^2 d|^2 (the squared tension field)."""
    g = d.grid
    gs = director_grad_sq_field(d)
    out = np.zeros(g.shape)
    for c in d.components:
        t = laplacian_array(g, c.values) + gs * c.values
        out += t * t
    return out


def tension_l2_sq(d: DirectorField2D) -> float:
    return integral(d.grid, tension_sq_field(d))


def velocity_grad_l2_sq(u: VectorField2D) -> float:
    g = u.grid
    out = 0.0
    for c in (u.u1, u.u2):
        gx, gy = grad_arrays(g, c.values)
        out += integral(g, gx * gx + gy * gy)
    return out


def d3_min(d: DirectorField2D) -> float:
    """Spatial infimum of the third director component (the angle-condition
    quantity controlled by the maximum principle)."""
    return float(d.d3.values.min())


# ---------------------------------------------------------------------------
# energy law and the unit-constraint identity

def basic_energy(rho: ScalarField2D, u: VectorField2D,
                 d: DirectorField2D) -> tuple[float, float]:
    """Total energy int(rho |u|^2 + |grad d|^2) and the instantaneous
    dissipation rate integrand int(|grad u|^2 + |tension|^2)."""
    energy = kinetic_energy(rho, u) + director_grad_l2_sq(d)
    dissipation = velocity_grad_l2_sq(u) + tension_l2_sq(d)
    return energy, dissipation


def tension_identity_residual(d: DirectorField2D) -> float:
    """| int |lap d + |grad d|^2 d|^2 - int(|lap d|^2 - |grad d|^4) |.

    Both sides agree for exactly unit-length maps; the residual scales
    linearly in the unit-length drift and is a constraint-quality meter.
    """
    g = d.grid
    lap_sq = sum(integral(g, laplacian_array(g, c.values)**2)
                 for c in d.components)
    return abs(tension_l2_sq(d) - (lap_sq - director_grad_l4_4(d)))


def smallness_condition(rho0: ScalarField2D, u0: VectorField2D,
                        d0: DirectorField2D) -> tuple[float, bool]:
    """Global-existence data threshold
    exp(2(int rho0 |u0|^2 + int |grad d0|^2)) * int |grad d0|^2 <= 1/16."""
    ke = kinetic_energy(rho0, u0)
    gd = director_grad_l2_sq(d0)
    value = math.exp(2.0 * (ke + gd)) * gd
    return value, value <= 1.0 / 16.0


# ---------------------------------------------------------------------------
# Serrin-type blow-up functional

def admissible_exponents(r: float, s: float) -> tuple[bool, float | None]:
    """Admissibility of (r, s): 1/r + 1/s <= 1/2 with 2 < r <= inf.

    Also returns the interpolation threshold 2r/(r-2) (2.0 at r = inf,
    None for r <= 2) that s must reach for the criterion arithmetic.
    """
    if r <= 2.0:
        return False, None
    threshold = 2.0 if math.isinf(r) else 2.0 * r / (r - 2.0)
    inv_r = 0.0 if math.isinf(r) else 1.0 / r
    ok = s > 0.0 and inv_r + 1.0 / s <= 0.5
    return ok, threshold


@dataclass(frozen=True)
class SerrinExponents:
    """Admissible exponent pair for the directional-gradient criterion."""

    r: float
    s: float

    def __post_init__(self) -> None:
        ok, _ = admissible_exponents(self.r, self.s)
        if not ok:
            raise ValueError(f"inadmissible exponents (r={self.r}, s={self.s})")


def serrin_norm(d: DirectorField2D, r: float) -> float:
    """L^r norm of the pointwise gradient magnitude |grad d|."""
    mag = np.sqrt(director_grad_sq_field(d))
    return lp_norm(ScalarField2D(d.grid, mag), r)


@dataclass
class SerrinMonitor:
    """Accumulates int ||grad d||_{L^r}^s dt by per-step rectangles; a finite
    accumulated value over [0, T] rules out breakdown before T."""

    exponents: SerrinExponents
    accumulated: float = 0.0
    last_increment: float = 0.0

    def update(self, d: DirectorField2D, dt: float) -> float:
        inc = serrin_norm(d, self.exponents.r) ** self.exponents.s * dt
        self.accumulated += inc
        self.last_increment = inc
        return inc


# ---------------------------------------------------------------------------
# rigidity of maps kept away from the equator

@dataclass
class RigidityReport:
    """Both sides of the gradient-vs-hessian rigidity inequality plus the
    tension lower-bound ratio; ratios are None when undefined (zero
    denominators)."""

    lhs: float                      # int |grad d|^4
    rhs: float                      # squared hessian norm
    gap_ratio: float | None         # 1 - lhs/rhs
    tension_sq: float
    prop_bound_ratio: float | None  # tension_sq / ((lap_sq + lhs)/2)


def rigidity_report(d: DirectorField2D) -> RigidityReport:
    lhs = director_grad_l4_4(d)
    rhs = director_hessian_l2_sq(d)
    tension = tension_l2_sq(d)
    gap = None if rhs == 0.0 else 1.0 - lhs / rhs
    denom = 0.5 * (rhs + lhs)
    bound = None if denom == 0.0 else tension / denom
    return RigidityReport(lhs=lhs, rhs=rhs, gap_ratio=gap,
                          tension_sq=tension, prop_bound_ratio=bound)


# ---------------------------------------------------------------------------
# small-data director bound: sup ||grad d||^2 + int ||hess d||^2 <= 1/16

@dataclass
class DirectorBoundMonitor:
    threshold: float = 1.0 / 16.0
    sup_grad_sq: float = 0.0
    integral_hess_sq: float = 0.0
    _prev: tuple[float, float] | None = None

    def update(self, t: float, grad_l2_sq: float, hess_l2_sq: float) -> None:
        self.sup_grad_sq = max(self.sup_grad_sq, grad_l2_sq)
        if self._prev is not None:
            t0, h0 = self._prev
            self.integral_hess_sq += 0.5 * (h0 + hess_l2_sq) * (t - t0)
        self._prev = (t, hess_l2_sq)

    @property
    def value(self) -> float:
        return self.sup_grad_sq + self.integral_hess_sq

    def satisfied(self, slack: float = 1e-3) -> bool:
        return self.value <= self.threshold + slack


# ---------------------------------------------------------------------------
# higher-order energy monitor

@dataclass(frozen=True)
class PhiSample:
    """One cadence sample of the higher-order energy ingredients. Time
    derivatives are backward differences against the previous sample and
    vanish by convention on the first one."""

    t: float
    grad_u_l2_sq: float
    grad_d_h1_sq: float       # ||grad d||^2 + ||hess d||^2
    rho_udot_l2_sq: float     # int rho |udot|^2
    dt_d_h1_sq: float         # ||d_t||^2 + ||grad d_t||^2
    hess_d_h1_sq: float       # ||hess d||^2 + ||third derivs||^2


def phi_functional(samples: list[PhiSample]) -> float:
    """e + sup over samples of (||grad u||^2 + ||grad d||_{H1}^2) plus the
    trapezoid-in-time integral of the dissipation-order terms."""
    if not samples:
        return math.e
    sup = max(s.grad_u_l2_sq + s.grad_d_h1_sq for s in samples)
    acc = 0.0
    for a, b in zip(samples, samples[1:]):
        ga = a.rho_udot_l2_sq + a.dt_d_h1_sq + a.hess_d_h1_sq
        gb = b.rho_udot_l2_sq + b.dt_d_h1_sq + b.hess_d_h1_sq
        acc += 0.5 * (ga + gb) * (b.t - a.t)
    return math.e + sup + acc


@dataclass
class PhiMonitor:
    """Incremental form of phi_functional over a growing sample list."""

    sup: float = 0.0
    acc: float = 0.0
    _prev_g: float | None = None
    _prev_t: float | None = None

    def update(self, s: PhiSample) -> float:
        self.sup = max(self.sup, s.grad_u_l2_sq + s.grad_d_h1_sq)
        g = s.rho_udot_l2_sq + s.dt_d_h1_sq + s.hess_d_h1_sq
        if self._prev_t is not None:
            self.acc += 0.5 * (self._prev_g + g) * (s.t - self._prev_t)
        self._prev_g = g
        self._prev_t = s.t
        return self.value

    @property
    def value(self) -> float:
        return math.e + self.sup + self.acc


# ---------------------------------------------------------------------------
# per-sample record

@dataclass
class DiagnosticsRecord:
    """One time sample of every monitored functional."""

    t: float
    energy_total: float
    dissipation: float
    grad_d_l2_sq: float
    hess_d_l2_sq: float
    grad_d_l4_4: float
    rho_min: float
    rho_max: float
    rho_drift_q2: float
    d3_min: float
    unit_drift: float
    serrin_increment: float
    serrin_accumulated: float
    phi_value: float
    ke: float
    divu_res: float
    tension_identity_residual: float = 0.0

    def __post_init__(self) -> None:
        for name, v in vars(self).items():
            if not math.isfinite(v):
                raise ValueError(f"non-finite diagnostic {name}")
        if self.energy_total < 0.0:
            raise ValueError("negative total energy")
        if self.rho_min < -1e-12:
            raise ValueError("density fell below the vacuum floor")
