"""Command-line interface: classify, dispersion, simulate, analyze, sweep.

Exit codes: 0 success, 1 validation error, 2 numerical blow-up.
"""

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

import numpy as np

from .analysis import (
    AsymptoticVariant,
    axis_means,
    classify_asymptotic,
    cosine_spectrum,
    count_spatial_periods,
)
from .config import ConfigError, RunConfig, format_config, parse_config
from .linstab import mode_eigenvalues, mode_trace_det, spectrum_table
from .models import (
    BrusselatorParams,
    NormalFormParams,
    brusselator_hopf_threshold,
    fixed_point,
    jacobian_at_fixed_point,
)
from .pde import BlowUpError, Snapshot, check_stability, integrate, limit_cycle_ic, random_ic
from .snapshots import read_run_snapshots, write_pgm16, write_run_snapshots
from .sweep import SweepSpec, region_summary, rows_to_csv, run_sweep
from .theorems import cross_validate

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_BLOWUP = 2

SIDECAR_NAME = "run.cfg"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="turingrd")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, needs_config in (("classify", True), ("dispersion", True),
                               ("simulate", True), ("analyze", False), ("sweep", True)):
        p = sub.add_parser(name)
        p.add_argument("--config", required=needs_config, help="run configuration file")
        p.add_argument("--seed", type=int, default=None, help="override run.seed")
        p.add_argument("--out", default="out", help="artifact directory")
        p.add_argument("--workers", type=int, default=None,
                       help="worker processes for sweep (default: available cores)")
        p.add_argument("--full-scale", action="store_true",
                       help="sweep simulations at N=250, t=1000")
        p.add_argument("--json", action="store_true",
                       help="print the machine-readable verdict on stdout")
    return parser


def _load_config(args) -> RunConfig:
    text = Path(args.config).read_text(encoding="utf-8")
    cfg = parse_config(text)
    if args.seed is not None:
        cfg = dataclasses.replace(cfg, seed=args.seed)
    return cfg


def _mode_lists(modes) -> list[list[int]]:
    return [list(m.indices) for m in modes]


def _classify_payload(cfg: RunConfig) -> dict:
    model = cfg.model()
    diff = cfg.diffusion()
    dom = cfg.domain()
    j0 = jacobian_at_fixed_point(model)
    fp = fixed_point(model)
    report = cross_validate(j0, diff, dom)
    verdict, scan = report.theorem, report.scan
    tr0, det0 = mode_trace_det(j0, diff, dom, 0)
    lam_plus, lam_minus = mode_eigenvalues(tr0, det0)
    model_info = {
        "family": cfg.family,
        "parameters": dict(cfg.model_values),
        "fixed_point": {"u_star": fp.u_star, "v_star": fp.v_star},
        "jacobian": [[j0.a11, j0.a12], [j0.a21, j0.a22]],
        "trace": j0.trace,
        "det": j0.det,
    }
    if isinstance(model, BrusselatorParams):
        model_info["hopf_threshold"] = brusselator_hopf_threshold(model)
    return {
        "model": model_info,
        "domain": {"k": dom.k, "S": dom.S},
        "diffusion": {"D1": diff.D1, "D2": diff.D2},
        "zero_mode": {
            "lambda_plus": [lam_plus.real, lam_plus.imag],
            "lambda_minus": [lam_minus.real, lam_minus.imag],
        },
        "theorem": {
            "outcome": verdict.outcome.value,
            "case": verdict.case_fired.value,
            "window": list(verdict.window) if verdict.window else None,
            "witnesses": _mode_lists(verdict.witnesses),
            "witnesses_truncated": verdict.witnesses_truncated,
            "infinite_order": verdict.infinite_order,
            "zero_mode_unstable": verdict.zero_mode_unstable,
            "boundary": list(verdict.boundary),
        },
        "oracle": {
            "lambda": scan.capital_lambda,
            "classification": scan.classification.value,
            "argmax_modes": _mode_lists(scan.argmax_modes),
            "scanned_norm2_max": scan.scanned_norm2_max,
        },
        "agree": report.agree,
    }


def _cmd_classify(args) -> int:
    cfg = _load_config(args)
    payload = _classify_payload(cfg)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    text = json.dumps(payload, indent=2)
    (out_dir / "classify.json").write_text(text + "\n", encoding="utf-8")
    if args.json:
        print(text)
    else:
        thm = payload["theorem"]
        oracle = payload["oracle"]
        print(f"criterion: {thm['outcome']} ({thm['case']}); "
              f"oracle: {oracle['classification']} Lambda={oracle['lambda']:.6g}; "
              f"agree={payload['agree']}")
    return EXIT_OK


def _cmd_dispersion(args) -> int:
    cfg = _load_config(args)
    model = cfg.model()
    rows = spectrum_table(jacobian_at_fixed_point(model), cfg.diffusion(), cfg.domain())
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    header = ("norm2,n_indices,trace,det,re_lambda_plus,im_lambda_plus,"
              "re_lambda_minus,im_lambda_minus")
    lines = [header]
    for r in rows:
        lines.append(",".join([
            str(r["norm2"]), r["n_indices"], repr(r["trace"]), repr(r["det"]),
            repr(r["re_lambda_plus"]), repr(r["im_lambda_plus"]),
            repr(r["re_lambda_minus"]), repr(r["im_lambda_minus"]),
        ]))
    path = out_dir / "dispersion.csv"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(rows)} modes to {path}")
    return EXIT_OK


def _cmd_simulate(args) -> int:
    cfg = _load_config(args)
    model = cfg.model()
    if isinstance(model, NormalFormParams):
        model.require_supercritical()
    diff = cfg.diffusion()
    dx = cfg.dx()
    check_stability(cfg.dt, dx, diff)
    fp = fixed_point(model)
    if cfg.ic == "random":
        field = random_ic(fp, cfg.amplitude, cfg.seed, cfg.k, cfg.n_cells, dx)
    else:
        field = limit_cycle_ic(model, cfg.amplitude, cfg.seed, cfg.k, cfg.n_cells,
                               dx, cfg.relax_time)
    snaps, _ = integrate(field, model, diff, cfg.integrator())
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_run_snapshots(out_dir, cfg.k, cfg.n_cells, dx, cfg.dt, snaps)
    comments = ["turingrd run sidecar", "rng = PCG64"]
    if cfg.k == 2 and snaps:
        for component, values in (("phi1", snaps[-1].phi1), ("phi2", snaps[-1].phi2)):
            lo, hi = write_pgm16(out_dir / f"final_{component}.pgm", values)
            comments.append(f"{component}_pgm_min = {lo!r}")
            comments.append(f"{component}_pgm_max = {hi!r}")
    (out_dir / SIDECAR_NAME).write_text(format_config(cfg, tuple(comments)),
                                        encoding="utf-8")
    print(f"simulated {cfg.steps} steps (k={cfg.k}, N={cfg.n_cells}); "
          f"{len(snaps)} snapshots in {out_dir}")
    return EXIT_OK


def _cmd_analyze(args) -> int:
    out_dir = Path(args.out)
    if args.config:
        cfg = _load_config(args)
    else:
        sidecar = out_dir / SIDECAR_NAME
        if not sidecar.exists():
            raise ConfigError(f"no --config given and no {SIDECAR_NAME} in {out_dir}")
        cfg = parse_config(sidecar.read_text(encoding="utf-8"))
    pairs = read_run_snapshots(out_dir)
    snaps = [Snapshot(t, f.phi1, f.phi2) for t, f in pairs]
    outcome = classify_asymptotic(snaps, cfg.theta_time, cfg.theta_space,
                                  cfg.window_fraction)
    final = pairs[-1][1]
    fp = fixed_point(cfg.model())

    if final.k == 1:
        profiles = {"x": final}
    else:
        rows, cols = axis_means(final)
        profiles = {"rows": rows, "cols": cols}
    spectra = {name: cosine_spectrum(f, include_halfwave=cfg.halfwave)
               for name, f in profiles.items()}
    main_axis = "x" if final.k == 1 else "rows"
    spectrum = spectra[main_axis]

    period = None
    if final.k == 1 and outcome.variant in (AsymptoticVariant.TURING_PATTERN,
                                            AsymptoticVariant.INHOMOGENEOUS_OSCILLATORY):
        try:
            period = count_spatial_periods(final, min_amplitude=cfg.theta_space)
        except ValueError:
            period = None

    coeffs = spectrum.coefficients_phi1
    top = [[int(n), float(coeffs[n])] for n in spectrum.dominant_indices]
    report = {
        "class": outcome.variant.value,
        "temporal_amplitude": outcome.temporal_amplitude,
        "spatial_amplitude": outcome.spatial_amplitude,
        "period_count": period,
        "dominant_indices": list(spectrum.dominant_indices),
        "spectrum_top": top,
        "mean_coefficient": float(coeffs[0]),
        "fixed_point": {"u_star": fp.u_star, "v_star": fp.v_star},
        "final_range_shifted": {
            "phi1": [float(np.min(final.phi1)), float(np.max(final.phi1))],
            "phi2": [float(np.min(final.phi2)), float(np.max(final.phi2))],
        },
        "final_range_original": {
            "phi1": [float(np.min(final.phi1)) + fp.u_star, float(np.max(final.phi1)) + fp.u_star],
            "phi2": [float(np.min(final.phi2)) + fp.v_star, float(np.max(final.phi2)) + fp.v_star],
        },
    }
    if cfg.halfwave:
        half = spectrum.halfwave_phi1
        order = np.argsort(-np.abs(half[1:])) + 1
        report["halfwave_dominant_indices"] = [int(i) for i in order[:10]]

    lines = ["axis,n,c_phi1,c_phi2"]
    for name, spec in spectra.items():
        for n in range(len(spec.coefficients_phi1)):
            lines.append(f"{name},{n},{spec.coefficients_phi1[n]!r},{spec.coefficients_phi2[n]!r}")
    (out_dir / "spectrum.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    text = json.dumps(report, indent=2)
    (out_dir / "report.json").write_text(text + "\n", encoding="utf-8")
    if args.json:
        print(text)
    else:
        print(f"class: {report['class']}; periods: {period}; "
              f"dominant modes: {report['dominant_indices'][:5]}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    cfg = _load_config(args)
    spec = SweepSpec.from_config(cfg, full_scale=args.full_scale)
    workers = args.workers if args.workers else (os.cpu_count() or 1)
    rows = run_sweep(spec, workers=workers)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "sweep.csv"
    path.write_text(rows_to_csv(rows), encoding="utf-8")
    for row in rows:
        print(f"point {row.idx}: ({row.param1:.6g}, {row.param2:.6g}) "
              f"thm={row.thm_outcome or '-'} sim={row.sim_class or '-'} "
              f"[{row.wall_time_s:.2f}s]{' ERROR: ' + row.error if row.error else ''}")
    summary = region_summary(rows)
    if args.json:
        payload = {f"{k[0]}|{k[1]}": v for k, v in summary.items()}
        print(json.dumps({"rows": len(rows), "regions": payload}, indent=2))
    else:
        print(f"wrote {len(rows)} rows to {path}")
        for (thm, sim), count in sorted(summary.items()):
            print(f"  ({thm or '-'}, {sim or '-'}): {count}")
    return EXIT_OK


_COMMANDS = {
    "classify": _cmd_classify,
    "dispersion": _cmd_dispersion,
    "simulate": _cmd_simulate,
    "analyze": _cmd_analyze,
    "sweep": _cmd_sweep,
}


def dispatch(command: str, args) -> int:
    try:
        return _COMMANDS[command](args)
    except BlowUpError as exc:
        print(f"numerical blow-up: {exc}", file=sys.stderr)
        return EXIT_BLOWUP
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    return dispatch(args.command, args)


if __name__ == "__main__":
    sys.exit(main())
