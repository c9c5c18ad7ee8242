"""Line-based run configuration: `[section]` headers, `key = value` pairs,
`#` comments, case-sensitive keys. The same format is emitted as the
sidecar of every simulation so that a run can be reproduced bit for bit
from its own output directory.
"""

import math
from dataclasses import dataclass
from typing import Optional

from .linstab import DiffusionPair, DomainSpec
from .models import BrusselatorParams, Model, NormalFormParams
from .pde import IntegratorConfig, derive_grid

S_CONSISTENCY_ATOL = 1e-9


class ConfigError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


@dataclass(frozen=True)
class SweepAxisSpec:
    name: str
    lo: float
    hi: float
    count: int
    log: bool = False

    def values(self) -> list[float]:
        if self.count < 2:
            raise ConfigError(f"axis {self.name}: count must be >= 2")
        if self.log:
            if self.lo <= 0 or self.hi <= 0:
                raise ConfigError(f"axis {self.name}: log spacing needs positive bounds")
            step = (math.log(self.hi) - math.log(self.lo)) / (self.count - 1)
            return [math.exp(math.log(self.lo) + i * step) for i in range(self.count)]
        step = (self.hi - self.lo) / (self.count - 1)
        return [self.lo + i * step for i in range(self.count)]


@dataclass(frozen=True)
class RunConfig:
    family: str
    model_values: tuple[tuple[str, float], ...]
    k: int = 1
    n_cells: int = 250
    dt: float = 0.001
    S: Optional[float] = None
    D1: float = 0.1
    D2: float = 1.0
    steps: int = 1_000_000
    snapshot_stride: int = 10_000
    seed: int = 1
    ic: str = "random"
    amplitude: float = 0.01
    relax_time: float = 500.0
    theta_time: float = 1e-3
    theta_space: float = 1e-3
    window_fraction: float = 0.1
    halfwave: bool = False
    sweep_axis1: Optional[SweepAxisSpec] = None
    sweep_axis2: Optional[SweepAxisSpec] = None
    sweep_simulate: bool = True
    sweep_n_cells: int = 100
    sweep_time: float = 300.0
    sweep_dt: float = 0.001

    def model(self) -> Model:
        values = dict(self.model_values)
        if self.family == "brusselator":
            return BrusselatorParams(**values)
        return NormalFormParams(**values)

    def diffusion(self) -> DiffusionPair:
        return DiffusionPair(self.D1, self.D2)

    def d_max(self) -> float:
        return max(self.D1, self.D2)

    def side_length(self) -> float:
        if self.S is not None:
            return self.S
        _, s = derive_grid(self.n_cells, self.dt, self.d_max())
        return s

    def dx(self) -> float:
        return self.side_length() / self.n_cells

    def domain(self) -> DomainSpec:
        return DomainSpec(self.k, self.side_length())

    def integrator(self) -> IntegratorConfig:
        return IntegratorConfig(self.dt, self.steps, self.snapshot_stride)


_MODEL_KEYS = {
    "brusselator": {"A": 2.0, "B": None, "k1": 1.0, "k2": 1.0, "k3": 1.0, "k4": 1.0},
    "normal_form": {"nu": None, "beta": 0.0, "a": -1.0, "b": 0.0},
}

_SECTION_KEYS = {
    "model": {"family"} | set(_MODEL_KEYS["brusselator"]) | set(_MODEL_KEYS["normal_form"]),
    "domain": {"k", "n_cells", "dt", "S"},
    "diffusion": {"D1", "D2"},
    "run": {"steps", "snapshot_stride", "seed", "ic", "amplitude", "relax_time"},
    "analysis": {"theta_time", "theta_space", "window_fraction", "halfwave"},
    "sweep": {"axis1", "axis2", "simulate", "n_cells", "time", "dt"},
}

_INT_KEYS = {("domain", "k"), ("domain", "n_cells"), ("run", "steps"),
             ("run", "snapshot_stride"), ("run", "seed"), ("sweep", "n_cells")}
_BOOL_KEYS = {("analysis", "halfwave"), ("sweep", "simulate")}
_STR_KEYS = {("model", "family"), ("run", "ic")}
_AXIS_KEYS = {("sweep", "axis1"), ("sweep", "axis2")}


def _parse_bool(raw: str, line: int) -> bool:
    if raw in ("true", "false"):
        return raw == "true"
    raise ConfigError(f"expected true or false, got {raw!r}", line)


def _parse_axis(raw: str, line: int) -> SweepAxisSpec:
    parts = [p.strip() for p in raw.split(",")]
    if len(parts) != 5:
        raise ConfigError("axis needs 5 fields: name, min, max, count, linear|log", line)
    name, lo, hi, count, scale = parts
    if scale not in ("linear", "log"):
        raise ConfigError(f"axis scale must be linear or log, got {scale!r}", line)
    try:
        return SweepAxisSpec(name, float(lo), float(hi), int(count), scale == "log")
    except ValueError as exc:
        raise ConfigError(f"bad axis numbers: {exc}", line) from None


def parse_config(text: str) -> RunConfig:
    """Parse and fully validate a config, filling every default."""
    entries: dict[tuple[str, str], tuple[str, int]] = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in _SECTION_KEYS:
                raise ConfigError(f"unknown section [{section}]", lineno)
            continue
        if "=" not in line:
            raise ConfigError(f"expected key = value, got {line!r}", lineno)
        if section is None:
            raise ConfigError("key outside any [section]", lineno)
        key, value = (p.strip() for p in line.split("=", 1))
        if key not in _SECTION_KEYS[section]:
            raise ConfigError(f"unknown key {key!r} in section [{section}]", lineno)
        if (section, key) in entries:
            raise ConfigError(f"duplicate key {key!r} in section [{section}]", lineno)
        entries[(section, key)] = (value, lineno)

    def take(section: str, key: str):
        return entries.pop((section, key), None)

    family_entry = take("model", "family")
    if family_entry is None:
        raise ConfigError("model family required")
    if ("diffusion", "D1") not in entries:
        raise ConfigError("diffusion.D1 required")
    family, family_line = family_entry
    if family not in _MODEL_KEYS:
        raise ConfigError(f"unknown model family {family!r}", family_line)

    model_values = []
    for key, default in _MODEL_KEYS[family].items():
        entry = take("model", key)
        if entry is not None:
            raw, lineno = entry
            try:
                model_values.append((key, float(raw)))
            except ValueError:
                raise ConfigError(f"model.{key}: expected a number, got {raw!r}", lineno) from None
        elif default is not None:
            model_values.append((key, default))
        else:
            raise ConfigError(f"model.{key} required for family {family}")
    for (sec, key), (_, lineno) in list(entries.items()):
        if sec == "model":
            raise ConfigError(f"model.{key} does not apply to family {family}", lineno)

    values: dict[str, object] = {}
    explicit: set[tuple[str, str]] = set()
    for (sec, key), (raw, lineno) in entries.items():
        explicit.add((sec, key))
        if (sec, key) in _AXIS_KEYS:
            parsed: object = _parse_axis(raw, lineno)
        elif (sec, key) in _BOOL_KEYS:
            parsed = _parse_bool(raw, lineno)
        elif (sec, key) in _STR_KEYS:
            parsed = raw
        elif (sec, key) in _INT_KEYS:
            try:
                parsed = int(raw)
            except ValueError:
                raise ConfigError(f"{sec}.{key}: expected an integer, got {raw!r}", lineno) from None
        else:
            try:
                parsed = float(raw)
            except ValueError:
                raise ConfigError(f"{sec}.{key}: expected a number, got {raw!r}", lineno) from None
        values[f"{sec}.{key}"] = parsed

    def get(sec: str, key: str, default):
        return values.get(f"{sec}.{key}", default)

    cfg = RunConfig(
        family=family,
        model_values=tuple(model_values),
        k=get("domain", "k", 1),
        n_cells=get("domain", "n_cells", 250),
        dt=get("domain", "dt", 0.001),
        S=get("domain", "S", None),
        D1=get("diffusion", "D1", 0.1),
        D2=get("diffusion", "D2", 1.0),
        steps=get("run", "steps", 1_000_000),
        snapshot_stride=get("run", "snapshot_stride", 10_000),
        seed=get("run", "seed", 1),
        ic=get("run", "ic", "random"),
        amplitude=get("run", "amplitude", 0.01),
        relax_time=get("run", "relax_time", 500.0),
        theta_time=get("analysis", "theta_time", 1e-3),
        theta_space=get("analysis", "theta_space", 1e-3),
        window_fraction=get("analysis", "window_fraction", 0.1),
        halfwave=get("analysis", "halfwave", False),
        sweep_axis1=get("sweep", "axis1", None),
        sweep_axis2=get("sweep", "axis2", None),
        sweep_simulate=get("sweep", "simulate", True),
        sweep_n_cells=get("sweep", "n_cells", 100),
        sweep_time=get("sweep", "time", 300.0),
        sweep_dt=get("sweep", "dt", 0.001),
    )

    if cfg.k not in (1, 2):
        raise ConfigError(f"domain.k must be 1 or 2 for runs, got {cfg.k}")
    if cfg.n_cells < 2:
        raise ConfigError("domain.n_cells must be >= 2")
    if cfg.ic not in ("random", "limit_cycle"):
        raise ConfigError(f"run.ic must be random or limit_cycle, got {cfg.ic!r}")
    if cfg.seed < 0 or cfg.seed > 2**64 - 1:
        raise ConfigError("run.seed must fit in 64 bits")
    cfg.model()          # validates model parameter ranges
    cfg.diffusion()

    grid_explicit = ("domain", "n_cells") in explicit and ("domain", "dt") in explicit
    if cfg.S is not None and grid_explicit:
        _, derived = derive_grid(cfg.n_cells, cfg.dt, cfg.d_max())
        if abs(cfg.S - derived) > S_CONSISTENCY_ATOL:
            raise ConfigError(
                f"domain.S = {cfg.S!r} is inconsistent with n_cells and dt "
                f"(n_cells*sqrt(6*dt*max(D1,D2)) = {derived!r})"
            )
    return cfg


def format_config(cfg: RunConfig, header_comments: tuple[str, ...] = ()) -> str:
    """Render a config with every value spelled out, reparseable as-is."""

    def fmt(v) -> str:
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, float):
            return repr(v)
        return str(v)

    lines = [f"# {c}" for c in header_comments]
    lines += ["[model]", f"family = {cfg.family}"]
    lines += [f"{k} = {fmt(v)}" for k, v in cfg.model_values]
    lines += [
        "", "[domain]",
        f"k = {cfg.k}",
        f"n_cells = {cfg.n_cells}",
        f"dt = {fmt(cfg.dt)}",
        f"S = {fmt(cfg.side_length())}",
        "", "[diffusion]",
        f"D1 = {fmt(cfg.D1)}",
        f"D2 = {fmt(cfg.D2)}",
        "", "[run]",
        f"steps = {cfg.steps}",
        f"snapshot_stride = {cfg.snapshot_stride}",
        f"seed = {cfg.seed}",
        f"ic = {cfg.ic}",
        f"amplitude = {fmt(cfg.amplitude)}",
        f"relax_time = {fmt(cfg.relax_time)}",
        "", "[analysis]",
        f"theta_time = {fmt(cfg.theta_time)}",
        f"theta_space = {fmt(cfg.theta_space)}",
        f"window_fraction = {fmt(cfg.window_fraction)}",
        f"halfwave = {fmt(cfg.halfwave)}",
    ]
    if cfg.sweep_axis1 is not None and cfg.sweep_axis2 is not None:
        def axis_line(name: str, ax: SweepAxisSpec) -> str:
            scale = "log" if ax.log else "linear"
            return f"{name} = {ax.name}, {fmt(ax.lo)}, {fmt(ax.hi)}, {ax.count}, {scale}"

        lines += [
            "", "[sweep]",
            axis_line("axis1", cfg.sweep_axis1),
            axis_line("axis2", cfg.sweep_axis2),
            f"simulate = {fmt(cfg.sweep_simulate)}",
            f"n_cells = {cfg.sweep_n_cells}",
            f"time = {fmt(cfg.sweep_time)}",
            f"dt = {fmt(cfg.sweep_dt)}",
        ]
    return "\n".join(lines) + "\n"
