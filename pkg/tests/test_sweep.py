import pytest

from turingrd.config import parse_config
from turingrd.sweep import CSV_HEADER, SweepSpec, region_summary, rows_to_csv, run_sweep

ANALYSIS_ONLY = """
[model]
family = brusselator
B = 15
[diffusion]
D1 = 0.1
[domain]
S = 19.365
[sweep]
axis1 = D1, 0.1, 1.0, 3, linear
axis2 = B, 4.0, 15.0, 3, linear
simulate = false
"""

MICRO_SIM = ANALYSIS_ONLY.replace("simulate = false", """simulate = true
n_cells = 32
time = 5.0""").replace("axis1 = D1, 0.1, 1.0, 3", "axis1 = D1, 0.1, 1.0, 2").replace(
    "axis2 = B, 4.0, 15.0, 3", "axis2 = B, 4.0, 15.0, 2")


def test_smoke_grid_rows_and_order():
    spec = SweepSpec.from_config(parse_config(ANALYSIS_ONLY))
    rows = run_sweep(spec, workers=1)
    assert len(rows) == 9
    assert [r.idx for r in rows] == list(range(9))
    assert rows[0].param1 == 0.1 and rows[0].param2 == 4.0
    assert rows[1].param2 == 9.5  # axis2 varies fastest
    assert all(r.error == "" for r in rows)
    assert all(r.thm_outcome for r in rows)
    # P-like corner: supercritical sufficient case, Turing oracle
    corner = rows[2]
    assert corner.param1 == 0.1 and corner.param2 == 15.0
    assert corner.thm_outcome == "Instability" and corner.thm_case == "T22d"
    assert corner.oracle_class == "TuringInstability"
    assert corner.argmax_norm2 == 100


def test_determinism_and_parallel_equivalence():
    spec = SweepSpec.from_config(parse_config(MICRO_SIM))
    serial = rows_to_csv(run_sweep(spec, workers=1))
    again = rows_to_csv(run_sweep(spec, workers=1))
    parallel = rows_to_csv(run_sweep(spec, workers=2))
    assert serial == again == parallel


def test_csv_header_exact():
    assert CSV_HEADER == ("idx,param1,param2,thm_outcome,thm_case,window_lo,window_hi,"
                          "oracle_lambda,oracle_class,argmax_norm2,sim_class,"
                          "period_count,error")
    spec = SweepSpec.from_config(parse_config(ANALYSIS_ONLY))
    csv = rows_to_csv(run_sweep(spec, workers=1))
    assert csv.splitlines()[0] == CSV_HEADER
    assert all(line.count(",") == 12 for line in csv.splitlines())


def test_failed_point_recorded_not_fatal():
    # B sweeps through 0 -> invalid parameter at one point, row records it
    text = ANALYSIS_ONLY.replace("axis2 = B, 4.0, 15.0, 3", "axis2 = B, 0.0, 15.0, 2")
    spec = SweepSpec.from_config(parse_config(text))
    rows = run_sweep(spec, workers=1)
    assert len(rows) == 6
    bad = [r for r in rows if r.error]
    good = [r for r in rows if not r.error]
    assert bad and good
    assert all(r.param2 == 0.0 for r in bad)


def test_region_summary():
    spec = SweepSpec.from_config(parse_config(ANALYSIS_ONLY))
    rows = run_sweep(spec, workers=1)
    counts = region_summary(rows)
    assert sum(counts.values()) == 9
    assert all(sim == "" for (_, sim) in counts)  # analysis-only: no sim class


def test_invalid_axis_rejected():
    text = ANALYSIS_ONLY.replace("axis1 = D1, 0.1, 1.0, 3, linear",
                                 "axis1 = nu, 0.1, 1.0, 3, linear")
    with pytest.raises(ValueError, match="not valid"):
        SweepSpec.from_config(parse_config(text))


def test_per_point_seed_depends_on_index():
    spec = SweepSpec.from_config(parse_config(MICRO_SIM))
    rows = run_sweep(spec, workers=1)
    assert len(rows) == 4
    assert all(r.sim_class for r in rows)
