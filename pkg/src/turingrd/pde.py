"""Explicit forward-time centered-space integration on 1D/2D grids.

Zero-flux boundaries are realized with edge-copy ghost cells on a
cell-centered grid (sample points x_i = (i + 1/2)*dx), which makes the
3/5-point Laplacian exactly conservative for pure diffusion and gives it
the half-sample cosine modes as exact eigenvectors. The scheme keeps
dt*max(D1,D2)/dx^2 at 1/6 by default.
"""

import math
from dataclasses import dataclass

import numpy as np

from .linstab import DiffusionPair
from .models import (
    BrusselatorParams,
    FixedPoint,
    Model,
    NormalFormParams,
    brusselator_hopf_threshold,
    limit_cycle_radius,
    local_rk4,
)

STABILITY_RATIO_MAX = 1.0 / 6.0
_RATIO_SLACK = 1e-12
_FINITE_CHECK_STRIDE = 50


class BlowUpError(RuntimeError):
    """Raised when the integration produces non-finite values."""

    def __init__(self, step: int, component: int, location: tuple[int, ...]):
        self.step = step
        self.component = component
        self.location = location
        super().__init__(
            f"non-finite value in phi{component} at cell {location} by step {step}"
        )


@dataclass
class Field:
    """Discretized state in shifted coordinates (fixed point at 0)."""

    k: int
    n_cells: int
    dx: float
    phi1: np.ndarray
    phi2: np.ndarray

    def __post_init__(self):
        if self.k not in (1, 2):
            raise ValueError("simulation supports k = 1 or 2")
        shape = (self.n_cells,) if self.k == 1 else (self.n_cells, self.n_cells)
        for name in ("phi1", "phi2"):
            arr = getattr(self, name)
            if arr.shape != shape:
                raise ValueError(f"{name} has shape {arr.shape}, expected {shape}")

    @property
    def S(self) -> float:
        return self.n_cells * self.dx

    def copy(self) -> "Field":
        return Field(self.k, self.n_cells, self.dx, self.phi1.copy(), self.phi2.copy())


@dataclass(frozen=True)
class IntegratorConfig:
    """Time stepping controls; the ratio dt*max(D)/dx^2 is checked at run
    time against the 1/6 default bound."""

    dt: float
    steps: int
    snapshot_stride: int = 10_000

    def __post_init__(self):
        if not (self.dt > 0.0 and math.isfinite(self.dt)):
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.steps < 0:
            raise ValueError("steps must be >= 0")
        if self.snapshot_stride < 1:
            raise ValueError("snapshot_stride must be >= 1")


@dataclass(frozen=True)
class Snapshot:
    t: float
    phi1: np.ndarray
    phi2: np.ndarray


@dataclass(frozen=True)
class ZeroReaction:
    """Reaction-free stand-in so diffusion can be exercised on its own."""

    def rhs_shifted(self, u, v):
        return np.zeros_like(u), np.zeros_like(v)

    def fixed_point_coords(self):
        return 0.0, 0.0


def derive_grid(n_cells: int, dt: float, d_max: float) -> tuple[float, float]:
    """Grid spacing and side length at the reference stability ratio 1/6:
    dx = sqrt(6*dt*d_max), S = n_cells*dx."""
    if n_cells < 1 or dt <= 0.0 or d_max <= 0.0:
        raise ValueError("n_cells, dt and d_max must all be positive")
    dx = math.sqrt(6.0 * dt * d_max)
    return dx, n_cells * dx


def stability_ratio(dt: float, dx: float, diff: DiffusionPair) -> float:
    return dt * max(diff.D1, diff.D2) / (dx * dx)


def check_stability(dt: float, dx: float, diff: DiffusionPair) -> float:
    ratio = stability_ratio(dt, dx, diff)
    if ratio > STABILITY_RATIO_MAX + _RATIO_SLACK:
        raise ValueError(
            f"stability ratio dt*max(D)/dx^2 = {ratio:.6g} exceeds 1/6"
        )
    return ratio


def _laplacian_1d(p: np.ndarray, out: np.ndarray) -> None:
    out[1:-1] = p[:-2] + p[2:]
    out[1:-1] -= 2.0 * p[1:-1]
    out[0] = p[1] - p[0]
    out[-1] = p[-2] - p[-1]


def _laplacian_2d(p: np.ndarray, out: np.ndarray) -> None:
    pad = np.pad(p, 1, mode="edge")
    np.add(pad[:-2, 1:-1], pad[2:, 1:-1], out=out)
    out += pad[1:-1, :-2]
    out += pad[1:-1, 2:]
    out -= 4.0 * p


def _laplacian(field_k: int):
    return _laplacian_1d if field_k == 1 else _laplacian_2d


def _advance(u, v, model, r1, r2, dt, lap_u, lap_v, lap):
    """One FTCS update, in place on (u, v)."""
    lap(u, lap_u)
    lap(v, lap_v)
    du, dv = model.rhs_shifted(u, v)
    du *= dt
    dv *= dt
    lap_u *= r1
    lap_v *= r2
    u += du
    u += lap_u
    v += dv
    v += lap_v


def step(field: Field, model: Model, diff: DiffusionPair, dt: float) -> Field:
    """Single FTCS step; returns a new Field and leaves the input untouched."""
    out = field.copy()
    lap_u = np.empty_like(out.phi1)
    lap_v = np.empty_like(out.phi2)
    r1 = diff.D1 * dt / field.dx**2
    r2 = diff.D2 * dt / field.dx**2
    _advance(out.phi1, out.phi2, model, r1, r2, dt, lap_u, lap_v, _laplacian(field.k))
    _raise_if_not_finite(out.phi1, out.phi2, 1)
    return out


def _raise_if_not_finite(u: np.ndarray, v: np.ndarray, step_idx: int) -> None:
    if math.isfinite(float(u.sum())) and math.isfinite(float(v.sum())):
        return
    for component, arr in ((1, u), (2, v)):
        bad = np.argwhere(~np.isfinite(arr))
        if bad.size:
            raise BlowUpError(step_idx, component, tuple(int(i) for i in bad[0]))
    raise BlowUpError(step_idx, 0, ())


def integrate(field: Field, model: Model, diff: DiffusionPair,
              config: IntegratorConfig) -> tuple[list[Snapshot], Field]:
    """Run the integrator, recording snapshots every snapshot_stride steps
    (and at the final step). The initial state is not recorded; steps = 0
    returns the initial field unchanged."""
    check_stability(config.dt, field.dx, diff)
    state = field.copy()
    u, v = state.phi1, state.phi2
    lap_u = np.empty_like(u)
    lap_v = np.empty_like(v)
    r1 = diff.D1 * config.dt / field.dx**2
    r2 = diff.D2 * config.dt / field.dx**2
    lap = _laplacian(field.k)
    snaps: list[Snapshot] = []
    for s in range(1, config.steps + 1):
        _advance(u, v, model, r1, r2, config.dt, lap_u, lap_v, lap)
        if s % _FINITE_CHECK_STRIDE == 0 or s == config.steps:
            _raise_if_not_finite(u, v, s)
        if s % config.snapshot_stride == 0 or s == config.steps:
            snaps.append(Snapshot(s * config.dt, u.copy(), v.copy()))
    return snaps, state


def _grid_shape(k: int, n_cells: int):
    return (n_cells,) if k == 1 else (n_cells, n_cells)


def random_ic(fp: FixedPoint, amplitude: float, seed: int, k: int, n_cells: int,
              dx: float) -> Field:
    """Uniform random perturbation of the steady state.

    Each cell of each component is drawn independently from
    U(-amplitude, +amplitude) around the origin of the shifted
    coordinates (the fixed point `fp` in original variables), using a
    PCG64 generator seeded with `seed`; phi1 is drawn first.
    """
    if amplitude < 0.0:
        raise ValueError("amplitude must be >= 0")
    rng = np.random.Generator(np.random.PCG64(seed))
    shape = _grid_shape(k, n_cells)
    phi1 = rng.uniform(-amplitude, amplitude, shape)
    phi2 = rng.uniform(-amplitude, amplitude, shape)
    return Field(k, n_cells, dx, phi1, phi2)


def limit_cycle_point(model: Model, relax_time: float = 500.0) -> tuple[float, float]:
    """A point on (or very near) the limit cycle, in shifted coordinates.

    The normal form gives the point analytically at radius
    sqrt(-nu/a); the Brusselator is relaxed onto its cycle by integrating
    the local ODE from a small perturbation of the fixed point.
    """
    if isinstance(model, NormalFormParams):
        r = limit_cycle_radius(model)
        if r == 0.0:
            raise ValueError("no limit cycle: need nu > 0")
        return r, 0.0
    if isinstance(model, BrusselatorParams):
        if model.B <= brusselator_hopf_threshold(model):
            raise ValueError("no limit cycle: B must exceed the Hopf threshold")
        return local_rk4(model, 0.01, 0.0, relax_time)
    raise TypeError(f"unsupported model type {type(model)!r}")


def limit_cycle_ic(model: Model, perturbation: float, seed: int, k: int, n_cells: int,
                   dx: float, relax_time: float = 500.0) -> Field:
    """Homogeneous state on the limit cycle plus a small uniform random
    perturbation (same generator contract as random_ic)."""
    u0, v0 = limit_cycle_point(model, relax_time)
    noise = random_ic(FixedPoint(0.0, 0.0), perturbation, seed, k, n_cells, dx)
    noise.phi1 += u0
    noise.phi2 += v0
    return noise
