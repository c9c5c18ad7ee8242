"""Asymptotic classification of simulation output and cosine spectra."""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .pde import Field, Snapshot


class AsymptoticVariant(str, Enum):
    HOMOGENEOUS_STATIONARY = "HomogeneousStationary"
    TURING_PATTERN = "TuringPattern"
    HOMOGENEOUS_OSCILLATORY = "HomogeneousOscillatory"
    INHOMOGENEOUS_OSCILLATORY = "InhomogeneousOscillatory"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class AsymptoticClass:
    """Verdict plus the two amplitudes that back it."""

    variant: AsymptoticVariant
    temporal_amplitude: float
    spatial_amplitude: float


@dataclass(frozen=True)
class SpectrumReport:
    """Projection of the final field onto whole-wave cosine modes.

    coefficients_phi1[n] is the coefficient of cos(2*pi*n*x/S) for the
    first component (index 0 holds the spatial mean), coefficients_phi2
    likewise. dominant_indices ranks n >= 1 by |coefficient| of phi1.
    halfwave_phi1 optionally carries the projection onto the half-wave
    family cos(pi*n*x/S) for comparing mode counting conventions.
    """

    coefficients_phi1: np.ndarray
    coefficients_phi2: np.ndarray
    dominant_indices: tuple[int, ...]
    halfwave_phi1: Optional[np.ndarray] = None


def classify_asymptotic(snapshots: Sequence[Snapshot], theta_time: float = 1e-3,
                        theta_space: float = 1e-3,
                        window_fraction: float = 0.1) -> AsymptoticClass:
    """Classify the tail of a run by its temporal and spatial amplitudes.

    The analysis window is the final `window_fraction` of the run.
    temporal_amplitude is the largest pointwise deviation of any window
    snapshot from the final one (both components); spatial_amplitude is
    the range of phi1 in the final snapshot. Fewer than two window
    snapshots yield Undecided.
    """
    if not snapshots:
        return AsymptoticClass(AsymptoticVariant.UNDECIDED, math.nan, math.nan)
    t_end = snapshots[-1].t
    t_lo = (1.0 - window_fraction) * t_end
    window = [s for s in snapshots if s.t >= t_lo - 1e-12]
    if len(window) < 2:
        return AsymptoticClass(AsymptoticVariant.UNDECIDED, math.nan, math.nan)
    final = window[-1]
    temporal = 0.0
    for snap in window[:-1]:
        temporal = max(temporal,
                       float(np.max(np.abs(snap.phi1 - final.phi1))),
                       float(np.max(np.abs(snap.phi2 - final.phi2))))
    spatial = float(np.max(final.phi1) - np.min(final.phi1))
    oscillating = temporal >= theta_time
    patterned = spatial >= theta_space
    if oscillating and patterned:
        variant = AsymptoticVariant.INHOMOGENEOUS_OSCILLATORY
    elif oscillating:
        variant = AsymptoticVariant.HOMOGENEOUS_OSCILLATORY
    elif patterned:
        variant = AsymptoticVariant.TURING_PATTERN
    else:
        variant = AsymptoticVariant.HOMOGENEOUS_STATIONARY
    return AsymptoticClass(variant, temporal, spatial)


def _profile_1d(field: Field) -> tuple[np.ndarray, np.ndarray]:
    if field.k == 1:
        return field.phi1, field.phi2
    raise ValueError("1D field required (reduce 2D fields with axis_means first)")


def axis_means(field: Field) -> tuple[Field, Field]:
    """Row- and column-mean profiles of a 2D field as 1D fields."""
    if field.k != 2:
        raise ValueError("axis_means expects a 2D field")
    rows = Field(1, field.n_cells, field.dx, field.phi1.mean(axis=1), field.phi2.mean(axis=1))
    cols = Field(1, field.n_cells, field.dx, field.phi1.mean(axis=0), field.phi2.mean(axis=0))
    return rows, cols


def cosine_spectrum(field: Field, n_max: Optional[int] = None, top: int = 10,
                    include_halfwave: bool = False) -> SpectrumReport:
    """Project a 1D field onto cos(2*pi*n*x/S), x sampled at cell centers.

    c_n = (2/N) * sum_i phi(x_i) cos(2*pi*n*x_i/S) for n >= 1 and c_0 is
    the mean; the sampled cosines are discretely orthogonal for
    n <= N/4, which bounds the default n_max.
    """
    phi1, phi2 = _profile_1d(field)
    n_cells = field.n_cells
    if n_max is None:
        n_max = n_cells // 4
    n_max = min(n_max, (n_cells - 1) // 2)
    centers = (np.arange(n_cells) + 0.5) / n_cells
    orders = np.arange(n_max + 1)
    basis = np.cos(2.0 * math.pi * np.outer(orders, centers))
    c1 = (2.0 / n_cells) * basis @ phi1
    c2 = (2.0 / n_cells) * basis @ phi2
    c1[0] = float(np.mean(phi1))
    c2[0] = float(np.mean(phi2))
    order = np.argsort(-np.abs(c1[1:])) + 1
    dominant = tuple(int(i) for i in order[:top])
    halfwave = None
    if include_halfwave:
        half_orders = np.arange(2 * n_max + 1)
        half_basis = np.cos(math.pi * np.outer(half_orders, centers))
        halfwave = (2.0 / n_cells) * half_basis @ phi1
        halfwave[0] = c1[0]
    return SpectrumReport(c1, c2, dominant, halfwave)


def count_spatial_periods(field: Field, min_amplitude: float = 1e-3,
                          coalesce_eps: float = 1e-9) -> int:
    """Number of spatial periods of phi1: sign changes about the spatial
    mean, halved and rounded.

    A three-point moving average is applied first so that small noise
    cannot manufacture extra crossings; deviations within coalesce_eps of
    zero are dropped before counting. Homogeneous profiles are rejected.
    """
    phi1, _ = _profile_1d(field)
    spatial_range = float(np.max(phi1) - np.min(phi1))
    if spatial_range < min_amplitude:
        raise ValueError(
            f"period count undefined for near-homogeneous field (range {spatial_range:.3g})"
        )
    d = phi1 - float(np.mean(phi1))
    padded = np.concatenate(([d[0]], d, [d[-1]]))
    smooth = (padded[:-2] + padded[1:-1] + padded[2:]) / 3.0
    signs = np.sign(smooth[np.abs(smooth) > coalesce_eps])
    changes = int(np.count_nonzero(np.diff(signs)))
    return round(changes / 2)
