"""Local reaction kinetics: the Brusselator and the Hopf normal form.

Both models expose the same small surface (fixed point, Jacobian there,
nonlinear right-hand side in fixed-point-centered coordinates), so the
mode analysis, the closed-form criteria and the PDE integrator never need
to know which kinetics they are working on.
"""

import math
from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class FixedPoint:
    """Steady state of the local system, in original variables."""

    u_star: float
    v_star: float


@dataclass(frozen=True)
class Jacobian2x2:
    """Linearization of the local system at its fixed point."""

    a11: float
    a12: float
    a21: float
    a22: float

    def __post_init__(self):
        vals = (self.a11, self.a12, self.a21, self.a22)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError(f"non-finite Jacobian entries: {vals}")

    @property
    def trace(self) -> float:
        return self.a11 + self.a22

    @property
    def det(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a21


@dataclass(frozen=True)
class BrusselatorParams:
    """Brusselator rate constants; every field must be strictly positive.

    The kinetics in original variables (U, V) are
        dU/dt = k1*A - (k2*B + k4)*U + k3*U^2*V
        dV/dt = k2*B*U - k3*U^2*V
    """

    A: float
    B: float
    k1: float = 1.0
    k2: float = 1.0
    k3: float = 1.0
    k4: float = 1.0

    def __post_init__(self):
        for name in ("A", "B", "k1", "k2", "k3", "k4"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"Brusselator parameter {name} must be positive, got {value}")

    # Jacobian entries at the fixed point.
    @property
    def a11(self) -> float:
        return self.k2 * self.B - self.k4

    @property
    def a12(self) -> float:
        return self.A**2 * self.k1**2 * self.k3 / self.k4**2

    @property
    def a21(self) -> float:
        return -self.k2 * self.B

    @property
    def a22(self) -> float:
        return -self.a12

    def fixed_point_coords(self) -> tuple[float, float]:
        u = self.k1 * self.A / self.k4
        v = self.k2 * self.k4 * self.B / (self.A * self.k1 * self.k3)
        return u, v

    def rhs_original(self, U, V):
        """Kinetics in original variables; accepts scalars or arrays."""
        f = self.k1 * self.A - (self.k2 * self.B + self.k4) * U + self.k3 * U * U * V
        g = self.k2 * self.B * U - self.k3 * U * U * V
        return f, g

    def rhs_shifted(self, u, v):
        """Kinetics with the fixed point moved to the origin.

        The quadratic and cubic terms of the two components are exact
        negatives of each other, so the shared part is computed once.
        """
        c20 = self.B * self.k2 * self.k4 / (self.A * self.k1)
        c11 = 2.0 * self.A * self.k1 * self.k3 / self.k4
        u2 = u * u
        q = c20 * u2 + c11 * (u * v) + self.k3 * (u2 * v)
        du = self.a11 * u + self.a12 * v + q
        dv = self.a21 * u + self.a22 * v - q
        return du, dv


@dataclass(frozen=True)
class NormalFormParams:
    """Hopf normal form (Ginzburg-Landau local system in real coordinates).

        dphi1/dt = nu*phi1 - beta*phi2 + (phi1^2 + phi2^2)*(a*phi1 - b*phi2)
        dphi2/dt = beta*phi1 + nu*phi2 + (phi1^2 + phi2^2)*(a*phi2 + b*phi1)

    Classification accepts any real coefficients; simulation entry points
    call require_supercritical() because only a < 0 keeps trajectories
    bounded.
    """

    nu: float
    beta: float
    a: float = -1.0
    b: float = 0.0

    def __post_init__(self):
        for name in ("nu", "beta", "a", "b"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"normal-form parameter {name} must be finite")

    def require_supercritical(self):
        if not self.a < 0.0:
            raise ValueError(f"supercritical regime requires a < 0, got a={self.a}")

    @property
    def a11(self) -> float:
        return self.nu

    @property
    def a12(self) -> float:
        return -self.beta

    @property
    def a21(self) -> float:
        return self.beta

    @property
    def a22(self) -> float:
        return self.nu

    def fixed_point_coords(self) -> tuple[float, float]:
        return 0.0, 0.0

    def rhs_original(self, u, v):
        return self.rhs_shifted(u, v)

    def rhs_shifted(self, u, v):
        r2 = u * u + v * v
        du = self.nu * u - self.beta * v + r2 * (self.a * u - self.b * v)
        dv = self.beta * u + self.nu * v + r2 * (self.a * v + self.b * u)
        return du, dv


Model = Union[BrusselatorParams, NormalFormParams]


def fixed_point(model: Model) -> FixedPoint:
    """Unique steady state used by all downstream analysis."""
    u, v = model.fixed_point_coords()
    return FixedPoint(u, v)


def jacobian_at_fixed_point(model: Model) -> Jacobian2x2:
    return Jacobian2x2(model.a11, model.a12, model.a21, model.a22)


def eval_rhs_shifted(model: Model, u, v):
    """Nonlinear local vector field in fixed-point-centered coordinates.

    Works elementwise on numpy arrays; the PDE integrator calls this once
    per time step on the whole lattice.
    """
    return model.rhs_shifted(u, v)


def limit_cycle_radius(params: NormalFormParams) -> float:
    """Radius of the normal-form limit cycle, 0 when there is none."""
    params.require_supercritical()
    if params.nu > 0.0:
        return math.sqrt(-params.nu / params.a)
    return 0.0


def brusselator_hopf_threshold(params: BrusselatorParams) -> float:
    """Critical B of the supercritical Hopf bifurcation.

    The fixed point is locally stable iff B <= threshold; the trace of the
    Jacobian changes sign exactly there.
    """
    return params.k4 / params.k2 + params.A**2 * params.k1**2 * params.k3 / (params.k2 * params.k4**2)


def local_rk4(model: Model, u0: float, v0: float, t_total: float, dt: float = 0.002):
    """Integrate the local ODE (no diffusion) with classical fixed-step RK4.

    Used to relax onto the Brusselator limit cycle and as an independent
    check in tests. Works in shifted coordinates.
    """
    if t_total < 0 or dt <= 0:
        raise ValueError("need t_total >= 0 and dt > 0")
    n = int(round(t_total / dt))
    u, v = float(u0), float(v0)
    for _ in range(n):
        du1, dv1 = model.rhs_shifted(u, v)
        du2, dv2 = model.rhs_shifted(u + 0.5 * dt * du1, v + 0.5 * dt * dv1)
        du3, dv3 = model.rhs_shifted(u + 0.5 * dt * du2, v + 0.5 * dt * dv2)
        du4, dv4 = model.rhs_shifted(u + dt * du3, v + dt * dv3)
        u += dt * (du1 + 2.0 * du2 + 2.0 * du3 + du4) / 6.0
        v += dt * (dv1 + 2.0 * dv2 + 2.0 * dv3 + dv4) / 6.0
        if not (math.isfinite(u) and math.isfinite(v)):
            raise ValueError("local ODE integration diverged")
    return u, v
