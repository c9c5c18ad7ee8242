"""Parameter-plane sweeps combining criteria, spectral scan and simulation.

Points are embarrassingly parallel; each draws its own seed
(base_seed XOR point index) so serial and parallel execution produce the
same rows, and rows are always emitted in row-major grid order.
"""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .analysis import AsymptoticVariant, classify_asymptotic, count_spatial_periods
from .config import RunConfig, SweepAxisSpec
from .linstab import DiffusionPair, DomainSpec, scan_spectrum
from .models import (
    BrusselatorParams,
    NormalFormParams,
    fixed_point,
    jacobian_at_fixed_point,
)
from .pde import Field, IntegratorConfig, integrate, random_ic
from .theorems import classify_thm22, classify_thm23

CSV_HEADER = ("idx,param1,param2,thm_outcome,thm_case,window_lo,window_hi,"
              "oracle_lambda,oracle_class,argmax_norm2,sim_class,period_count,error")

_MODEL_AXES = {
    "brusselator": {"A", "B", "k1", "k2", "k3", "k4"},
    "normal_form": {"nu", "beta", "a", "b"},
}


@dataclass(frozen=True)
class SweepSpec:
    """Grid description: a base config plus two swept axes."""

    base: RunConfig
    axis1: SweepAxisSpec
    axis2: SweepAxisSpec
    simulate: bool
    sim_n_cells: int
    sim_dt: float
    sim_steps: int

    @classmethod
    def from_config(cls, cfg: RunConfig, full_scale: bool = False) -> "SweepSpec":
        if cfg.sweep_axis1 is None or cfg.sweep_axis2 is None:
            raise ValueError("sweep requires axis1 and axis2 in the [sweep] section")
        for axis in (cfg.sweep_axis1, cfg.sweep_axis2):
            valid = _MODEL_AXES[cfg.family] | {"D1", "D2"}
            if axis.name not in valid:
                raise ValueError(f"axis parameter {axis.name!r} not valid for {cfg.family}")
            if axis.count < 2:
                raise ValueError(f"axis {axis.name}: count must be >= 2")
        n_cells = 250 if full_scale else cfg.sweep_n_cells
        sim_time = 1000.0 if full_scale else cfg.sweep_time
        dt = 0.001 if full_scale else cfg.sweep_dt
        return cls(cfg, cfg.sweep_axis1, cfg.sweep_axis2, cfg.sweep_simulate,
                   n_cells, dt, int(round(sim_time / dt)))


@dataclass(frozen=True)
class SweepRow:
    idx: int
    param1: float
    param2: float
    thm_outcome: str = ""
    thm_case: str = ""
    window_lo: Optional[float] = None
    window_hi: Optional[float] = None
    oracle_lambda: Optional[float] = None
    oracle_class: str = ""
    argmax_norm2: Optional[int] = None
    sim_class: str = ""
    period_count: Optional[int] = None
    error: str = ""
    wall_time_s: float = 0.0


def _apply_point(spec: SweepSpec, p1: float, p2: float):
    values = dict(spec.base.model_values)
    diff = {"D1": spec.base.D1, "D2": spec.base.D2}
    for axis, value in ((spec.axis1, p1), (spec.axis2, p2)):
        if axis.name in diff:
            diff[axis.name] = value
        else:
            values[axis.name] = value
    if spec.base.family == "brusselator":
        model = BrusselatorParams(**values)
    else:
        model = NormalFormParams(**values)
    return model, DiffusionPair(diff["D1"], diff["D2"])


def _simulate_point(spec: SweepSpec, model, diff: DiffusionPair, seed: int):
    cfg = spec.base
    s_len = cfg.side_length()
    dx = s_len / spec.sim_n_cells
    field = random_ic(fixed_point(model), cfg.amplitude, seed, cfg.k,
                      spec.sim_n_cells, dx)
    stride = max(spec.sim_steps // 30, 1)
    snaps, _ = integrate(field, model, diff,
                         IntegratorConfig(spec.sim_dt, spec.sim_steps, stride))
    outcome = classify_asymptotic(snaps, cfg.theta_time, cfg.theta_space,
                                  cfg.window_fraction)
    period: Optional[int] = None
    if cfg.k == 1 and outcome.variant == AsymptoticVariant.TURING_PATTERN:
        final = Field(1, spec.sim_n_cells, dx, snaps[-1].phi1, snaps[-1].phi2)
        try:
            period = count_spatial_periods(final, min_amplitude=cfg.theta_space)
        except ValueError:
            period = None
    return outcome, period


def _point_row(args) -> SweepRow:
    spec, idx, p1, p2 = args
    start = time.perf_counter()
    try:
        model, diff = _apply_point(spec, p1, p2)
        j0 = jacobian_at_fixed_point(model)
        dom = DomainSpec(spec.base.k, spec.base.side_length())
        if diff.D1 > 0.0 and diff.D2 > 0.0:
            verdict = classify_thm22(j0, diff, dom)
        else:
            verdict = classify_thm23(j0, diff, dom)
        scan = scan_spectrum(j0, diff, dom)
        window_lo, window_hi = verdict.window if verdict.window else (None, None)
        argmax = scan.argmax_modes[0].norm2 if scan.argmax_modes else None
        sim_class = ""
        period = None
        if spec.simulate:
            outcome, period = _simulate_point(spec, model, diff,
                                              spec.base.seed ^ idx)
            sim_class = outcome.variant.value
        return SweepRow(idx, p1, p2, verdict.outcome.value, verdict.case_fired.value,
                        window_lo, window_hi, scan.capital_lambda,
                        scan.classification.value, argmax, sim_class, period, "",
                        time.perf_counter() - start)
    except Exception as exc:  # failed points are recorded, never fatal
        return SweepRow(idx, p1, p2, error=f"{type(exc).__name__}: {exc}",
                        wall_time_s=time.perf_counter() - start)


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[SweepRow]:
    """Evaluate every grid point; rows come back in row-major order."""
    points = []
    values2 = spec.axis2.values()
    for i, p1 in enumerate(spec.axis1.values()):
        for j, p2 in enumerate(values2):
            idx = i * len(values2) + j
            points.append((spec, idx, p1, p2))
    if workers <= 1:
        rows = [_point_row(p) for p in points]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_point_row, points))
    rows.sort(key=lambda r: r.idx)
    return rows


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def rows_to_csv(rows: list[SweepRow]) -> str:
    """Render rows with the stable column set (wall time is not a column)."""
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(",".join([
            str(r.idx), _cell(r.param1), _cell(r.param2), r.thm_outcome, r.thm_case,
            _cell(r.window_lo), _cell(r.window_hi), _cell(r.oracle_lambda),
            r.oracle_class, _cell(r.argmax_norm2), r.sim_class,
            _cell(r.period_count), r.error,
        ]))
    return "\n".join(lines) + "\n"


def region_summary(rows: list[SweepRow]) -> dict[tuple[str, str], int]:
    """Contingency counts of (criterion outcome, simulation class)."""
    counts: dict[tuple[str, str], int] = {}
    for r in rows:
        key = (r.thm_outcome, r.sim_class)
        counts[key] = counts.get(key, 0) + 1
    return counts
