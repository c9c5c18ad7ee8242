"""Binary snapshot files and PGM export.

Snapshot layout: a 32-byte header (magic "RDSNAP01", then little-endian
uint32 k, uint32 N, float64 dx, float64 t) followed by row-major float64
values for phi1 and then phi2.
"""

import struct
from pathlib import Path

import numpy as np

from .pde import Field, Snapshot

MAGIC = b"RDSNAP01"
_HEADER = struct.Struct("<8sIIdd")
assert _HEADER.size == 32


def write_snapshot(path: Path, field_k: int, n_cells: int, dx: float, t: float,
                   phi1: np.ndarray, phi2: np.ndarray) -> None:
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, field_k, n_cells, dx, t))
        fh.write(np.ascontiguousarray(phi1, dtype="<f8").tobytes())
        fh.write(np.ascontiguousarray(phi2, dtype="<f8").tobytes())


def read_snapshot(path: Path) -> tuple[float, Field]:
    raw = Path(path).read_bytes()
    magic, k, n_cells, dx, t = _HEADER.unpack_from(raw, 0)
    if magic != MAGIC:
        raise ValueError(f"{path}: bad magic {magic!r}")
    count = n_cells if k == 1 else n_cells * n_cells
    values = np.frombuffer(raw, dtype="<f8", count=2 * count, offset=_HEADER.size)
    if values.size != 2 * count:
        raise ValueError(f"{path}: truncated snapshot")
    shape = (n_cells,) if k == 1 else (n_cells, n_cells)
    phi1 = values[:count].reshape(shape).copy()
    phi2 = values[count:].reshape(shape).copy()
    return t, Field(k, n_cells, dx, phi1, phi2)


def snapshot_filename(step: int) -> str:
    return f"snapshot_{step:09d}.bin"


def write_run_snapshots(out_dir: Path, field_k: int, n_cells: int, dx: float,
                        dt: float, snaps: list[Snapshot]) -> list[Path]:
    paths = []
    for snap in snaps:
        step = int(round(snap.t / dt))
        path = out_dir / snapshot_filename(step)
        write_snapshot(path, field_k, n_cells, dx, snap.t, snap.phi1, snap.phi2)
        paths.append(path)
    return paths


def read_run_snapshots(out_dir: Path) -> list[tuple[float, Field]]:
    paths = sorted(Path(out_dir).glob("snapshot_*.bin"))
    if not paths:
        raise FileNotFoundError(f"no snapshot_*.bin files under {out_dir}")
    return [read_snapshot(p) for p in paths]


def write_pgm16(path: Path, values: np.ndarray) -> tuple[float, float]:
    """Write a 2D array as 16-bit binary PGM, rescaled to the full range.

    Returns the (min, max) used for the rescale so callers can record it.
    """
    if values.ndim != 2:
        raise ValueError("PGM export expects a 2D array")
    lo = float(np.min(values))
    hi = float(np.max(values))
    if hi > lo:
        scaled = np.round((values - lo) / (hi - lo) * 65535.0)
    else:
        scaled = np.zeros_like(values)
    data = scaled.astype(">u2")
    with open(path, "wb") as fh:
        fh.write(f"P5\n{values.shape[1]} {values.shape[0]}\n65535\n".encode("ascii"))
        fh.write(data.tobytes())
    return lo, hi
