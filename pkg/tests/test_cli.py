import json

import pytest

from turingrd.cli import main

P_CONFIG = """
[model]
family = brusselator
B = 15
[diffusion]
D1 = 0.1
"""

# micro run: N=40 cells, 20k steps (t=20), enough to exercise the pipeline
MICRO_RUN = P_CONFIG + """
[domain]
n_cells = 40
[run]
steps = 20000
snapshot_stride = 1000
seed = 7
"""


def write(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_classify_p_point(tmp_path, capsys):
    cfg = write(tmp_path, P_CONFIG + "[domain]\nS = 19.365\n")
    rc = main(["classify", "--config", cfg, "--out", str(tmp_path / "out"), "--json"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["theorem"]["case"] == "T22d"
    assert payload["oracle"]["classification"] == "TuringInstability"
    assert payload["oracle"]["argmax_modes"] == [[10]]
    assert payload["agree"] is True
    assert payload["model"]["hopf_threshold"] == 5.0
    assert (tmp_path / "out" / "classify.json").exists()


def test_dispersion_csv(tmp_path):
    cfg = write(tmp_path, P_CONFIG + "[domain]\nS = 19.365\n")
    out = tmp_path / "out"
    assert main(["dispersion", "--config", cfg, "--out", str(out)]) == 0
    lines = (out / "dispersion.csv").read_text().splitlines()
    assert lines[0] == ("norm2,n_indices,trace,det,re_lambda_plus,im_lambda_plus,"
                       "re_lambda_minus,im_lambda_minus")
    first = lines[1].split(",")
    assert first[0] == "0" and first[1] == "(0)"
    assert float(first[2]) == 10.0 and float(first[3]) == 4.0


def test_simulate_then_analyze(tmp_path, capsys):
    cfg = write(tmp_path, MICRO_RUN)
    out = tmp_path / "out"
    assert main(["simulate", "--config", cfg, "--out", str(out)]) == 0
    snaps = sorted(out.glob("snapshot_*.bin"))
    assert len(snaps) == 20
    assert (out / "run.cfg").exists()
    assert main(["analyze", "--out", str(out), "--json"]) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["class"] in ("TuringPattern", "HomogeneousOscillatory",
                               "InhomogeneousOscillatory", "HomogeneousStationary")
    assert (out / "spectrum.csv").exists()
    assert report["fixed_point"]["u_star"] == 2.0


def test_sidecar_reproduces_run_bit_identically(tmp_path):
    cfg = write(tmp_path, MICRO_RUN)
    out1 = tmp_path / "a"
    out2 = tmp_path / "b"
    assert main(["simulate", "--config", cfg, "--out", str(out1)]) == 0
    sidecar = out1 / "run.cfg"
    assert main(["simulate", "--config", str(sidecar), "--out", str(out2)]) == 0
    for p1 in sorted(out1.glob("snapshot_*.bin")):
        p2 = out2 / p1.name
        assert p2.exists()
        assert p1.read_bytes() == p2.read_bytes()
    # identical seeds, identical artifacts; different seed changes them
    out3 = tmp_path / "c"
    assert main(["simulate", "--config", cfg, "--seed", "8", "--out", str(out3)]) == 0
    changed = [(out1 / p.name).read_bytes() != p.read_bytes()
               for p in sorted(out3.glob("snapshot_*.bin"))]
    assert any(changed)


def test_simulate_rejects_unstable_ratio(tmp_path, capsys):
    # explicit S makes dx = S/N too small for the default dt
    cfg = write(tmp_path, P_CONFIG + "[domain]\nn_cells = 250\nS = 1.0\n")
    rc = main(["simulate", "--config", cfg, "--out", str(tmp_path / "out")])
    assert rc == 1
    assert "exceeds 1/6" in capsys.readouterr().err


def test_validation_error_exit_code(tmp_path, capsys):
    cfg = write(tmp_path, "[model]\nfamily = brusselator\n")
    assert main(["classify", "--config", cfg, "--out", str(tmp_path / "o")]) == 1


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_blow_up_exit_code(tmp_path, capsys):
    # reaction-dominated explosion: huge B, very small domain amplitude kick
    text = """
[model]
family = brusselator
B = 500
[diffusion]
D1 = 0.0001
D2 = 0.0001
[domain]
n_cells = 16
dt = 0.05
[run]
steps = 10000
snapshot_stride = 1000
amplitude = 5.0
"""
    cfg = write(tmp_path, text)
    rc = main(["simulate", "--config", cfg, "--out", str(tmp_path / "out")])
    assert rc == 2
    assert "blow-up" in capsys.readouterr().err


def test_simulate_2d_writes_pgm(tmp_path):
    text = P_CONFIG + """
[domain]
k = 2
n_cells = 24
[run]
steps = 2000
snapshot_stride = 500
"""
    cfg = write(tmp_path, text)
    out = tmp_path / "out"
    assert main(["simulate", "--config", cfg, "--out", str(out)]) == 0
    assert (out / "final_phi1.pgm").exists()
    assert (out / "final_phi2.pgm").exists()
    sidecar = (out / "run.cfg").read_text()
    assert "phi1_pgm_min" in sidecar
    assert main(["analyze", "--out", str(out)]) == 0


def test_sweep_cli(tmp_path):
    text = P_CONFIG + """
[domain]
S = 19.365
[sweep]
axis1 = D1, 0.1, 1.0, 2, linear
axis2 = B, 4.0, 15.0, 2, linear
simulate = false
"""
    cfg = write(tmp_path, text)
    out = tmp_path / "out"
    assert main(["sweep", "--config", cfg, "--out", str(out), "--workers", "1"]) == 0
    lines = (out / "sweep.csv").read_text().splitlines()
    assert lines[0].startswith("idx,param1,param2,thm_outcome")
    assert len(lines) == 5
