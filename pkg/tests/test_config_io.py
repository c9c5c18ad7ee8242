import numpy as np
import pytest

from turingrd.config import ConfigError, format_config, parse_config
from turingrd.snapshots import read_snapshot, write_pgm16, write_snapshot

MINIMAL = """
[model]
family = brusselator
B = 15
[diffusion]
D1 = 0.1
"""


def test_minimal_config_defaults():
    cfg = parse_config(MINIMAL)
    values = dict(cfg.model_values)
    assert values == {"A": 2.0, "B": 15.0, "k1": 1.0, "k2": 1.0, "k3": 1.0, "k4": 1.0}
    assert cfg.D2 == 1.0
    assert cfg.n_cells == 250
    assert cfg.dt == 0.001
    assert cfg.side_length() == pytest.approx(19.3649167, abs=1e-6)


def test_empty_config_requires_family():
    with pytest.raises(ConfigError, match="model family required"):
        parse_config("")


def test_unknown_key_has_line_number():
    text = "[model]\nfamily = brusselator\nB = 1\nbogus = 3\n[diffusion]\nD1 = 1\n"
    with pytest.raises(ConfigError, match="line 4"):
        parse_config(text)


def test_type_error_has_line_number():
    text = "[model]\nfamily = brusselator\nB = fifteen\n[diffusion]\nD1 = 1\n"
    with pytest.raises(ConfigError, match="line 3"):
        parse_config(text)


def test_wrong_family_key_rejected():
    text = "[model]\nfamily = brusselator\nB = 1\nnu = 2\n[diffusion]\nD1 = 1\n"
    with pytest.raises(ConfigError, match="does not apply"):
        parse_config(text)


def test_missing_required_model_parameter():
    with pytest.raises(ConfigError, match="model.B required"):
        parse_config("[model]\nfamily = brusselator\n[diffusion]\nD1 = 1\n")
    with pytest.raises(ConfigError, match="diffusion.D1 required"):
        parse_config("[model]\nfamily = brusselator\nB = 2\n")


def test_inconsistent_side_length_names_both_values():
    text = (MINIMAL + "[domain]\nn_cells = 250\ndt = 0.001\nS = 19.0\n")
    with pytest.raises(ConfigError) as err:
        parse_config(text)
    assert "19.0" in str(err.value) and "19.36" in str(err.value)


def test_standalone_side_length_is_allowed():
    cfg = parse_config(MINIMAL + "[domain]\nS = 19.365\n")
    assert cfg.side_length() == 19.365


def test_config_round_trip():
    cfg = parse_config(MINIMAL + "[run]\nseed = 42\n[sweep]\n"
                       "axis1 = D1, 0.02, 1.0, 15, linear\n"
                       "axis2 = B, 2.0, 16.0, 15, linear\n")
    again = parse_config(format_config(cfg))
    # the reformatted config pins S explicitly; everything else must match
    assert again == parse_config(format_config(again))
    assert dict(again.model_values) == dict(cfg.model_values)
    assert again.seed == cfg.seed
    assert again.sweep_axis1 == cfg.sweep_axis1


def test_normal_form_config():
    cfg = parse_config("[model]\nfamily = normal_form\nnu = 1\nbeta = -0.48\n"
                       "a = -1\nb = 0.5\n[diffusion]\nD1 = 1\nD2 = 0.001\n")
    assert cfg.family == "normal_form"
    assert dict(cfg.model_values)["beta"] == -0.48


def test_snapshot_round_trip(tmp_path):
    rng = np.random.Generator(np.random.PCG64(8))
    for k, n in ((1, 33), (2, 9)):
        shape = (n,) if k == 1 else (n, n)
        phi1 = rng.normal(size=shape)
        phi2 = rng.normal(size=shape)
        path = tmp_path / f"snap{k}.bin"
        write_snapshot(path, k, n, 0.25, 12.5, phi1, phi2)
        header = path.read_bytes()[:32]
        assert header[:8] == b"RDSNAP01"
        t, field = read_snapshot(path)
        assert t == 12.5 and field.k == k and field.dx == 0.25
        assert np.array_equal(field.phi1, phi1)
        assert np.array_equal(field.phi2, phi2)


def test_snapshot_rejects_bad_magic(tmp_path):
    path = tmp_path / "bad.bin"
    path.write_bytes(b"NOTMAGIC" + bytes(24))
    with pytest.raises(ValueError, match="magic"):
        read_snapshot(path)


def test_pgm_export(tmp_path):
    values = np.linspace(0.0, 1.0, 16).reshape(4, 4)
    path = tmp_path / "field.pgm"
    lo, hi = write_pgm16(path, values)
    assert (lo, hi) == (0.0, 1.0)
    raw = path.read_bytes()
    assert raw.startswith(b"P5\n4 4\n65535\n")
    data = np.frombuffer(raw.split(b"65535\n", 1)[1], dtype=">u2")
    assert data[0] == 0 and data[-1] == 65535
