"""Brute-force spectral analysis of the linearized reaction-diffusion system.

Eigenmodes on the cube [0,S]^k with zero-flux boundaries are cosine products
indexed by k-tuples of non-negative integers; their growth rates depend on
the tuple only through m = n1^2 + ... + nk^2. This module enumerates every
representable m up to an analytic cutoff, computes the per-mode trace,
determinant and eigenvalues, and classifies the instability from the
dominant eigenvalue. It is deliberately independent of the closed-form
criteria in `theorems`, which it serves as the ground-truth oracle.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .models import Jacobian2x2

FOUR_PI2 = 4.0 * math.pi**2

# Modes whose growth rate sits within this absolute distance of the maximum
# are reported as co-dominant (exact ties occur whenever two lattice points
# share the same squared norm).
ARGMAX_ATOL = 1e-12

_MAX_WITNESS_TUPLES = 64


@dataclass(frozen=True)
class DomainSpec:
    """Cubic domain [0, S]^k; analysis accepts any k >= 1."""

    k: int
    S: float

    def __post_init__(self):
        if not (isinstance(self.k, int) and self.k >= 1):
            raise ValueError(f"spatial dimension k must be a positive integer, got {self.k}")
        if not (math.isfinite(self.S) and self.S > 0.0):
            raise ValueError(f"side length S must be positive, got {self.S}")


@dataclass(frozen=True)
class DiffusionPair:
    """Non-negative diffusion coefficients of the two components."""

    D1: float
    D2: float

    def __post_init__(self):
        for name in ("D1", "D2"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0.0):
                raise ValueError(f"diffusion coefficient {name} must be >= 0, got {value}")

    def require_some_diffusion(self):
        if self.D1 == 0.0 and self.D2 == 0.0:
            raise ValueError("mode analysis requires D1 + D2 > 0")


@dataclass(frozen=True, order=False)
class ModeIndex:
    """Eigenmode label (n1, ..., nk); ordered by the squared norm."""

    indices: tuple[int, ...]

    def __post_init__(self):
        if len(self.indices) < 1 or any(n < 0 for n in self.indices):
            raise ValueError(f"mode indices must be non-negative integers, got {self.indices}")

    @property
    def norm2(self) -> int:
        return sum(n * n for n in self.indices)

    def __lt__(self, other: "ModeIndex") -> bool:
        return self.norm2 < other.norm2

    def __le__(self, other: "ModeIndex") -> bool:
        return self.norm2 <= other.norm2

    def __gt__(self, other: "ModeIndex") -> bool:
        return self.norm2 > other.norm2

    def __ge__(self, other: "ModeIndex") -> bool:
        return self.norm2 >= other.norm2


@dataclass(frozen=True)
class ModeSpectrumEntry:
    """Trace, determinant and eigenvalues of one eigenmode."""

    mode: ModeIndex
    trace: float
    det: float
    lambda_plus: complex
    lambda_minus: complex


class Classification(str, Enum):
    STABLE = "Stable"
    TURING = "TuringInstability"
    OSCILLATORY = "OscillatoryInstability"
    TURING_INFINITE = "TuringInstabilityInfiniteOrder"


TURING_CLASSES = (Classification.TURING, Classification.TURING_INFINITE)


@dataclass(frozen=True)
class ScanResult:
    """Outcome of the exhaustive mode scan.

    capital_lambda is the supremum of the real parts over all modes. For the
    infinite-order case (one diffusivity zero, supremum approached only as
    the mode norm grows without bound) argmax_modes is empty.
    """

    capital_lambda: float
    argmax_modes: list[ModeIndex]
    classification: Classification
    scanned_norm2_max: int
    entries: Optional[list[ModeSpectrumEntry]] = None


@dataclass(frozen=True)
class CutoffPolicy:
    """How far the mode scan enumerates.

    max_norm2 overrides the analytic bound when set. hard_cap guards
    against configurations (tiny diffusivities) whose analytic bound
    would be astronomically large.
    """

    max_norm2: Optional[int] = None
    hard_cap: int = 5_000_000


def mode_trace_det(j0: Jacobian2x2, diff: DiffusionPair, dom: DomainSpec, norm2: int) -> tuple[float, float]:
    """Trace and determinant of the mode matrix for squared norm `norm2`."""
    if norm2 < 0:
        raise ValueError("norm2 must be >= 0")
    c = FOUR_PI2 / dom.S**2
    tr = j0.trace - (diff.D1 + diff.D2) * c * norm2
    det = j0.det - (j0.a11 * diff.D2 + j0.a22 * diff.D1) * c * norm2 + diff.D1 * diff.D2 * c * c * norm2 * norm2
    return tr, det


def mode_eigenvalues(trace: float, det: float) -> tuple[complex, complex]:
    """Eigenvalues from the quadratic formula; '+' carries the + branch."""
    disc = trace * trace - 4.0 * det
    if disc >= 0.0:
        root = math.sqrt(disc)
        return complex((trace + root) / 2.0, 0.0), complex((trace - root) / 2.0, 0.0)
    root = math.sqrt(-disc)
    return complex(trace / 2.0, root / 2.0), complex(trace / 2.0, -root / 2.0)


def growth_function(x: float, y: float) -> float:
    """Dominant real part as a function of (trace, det) = (x, y)."""
    if y > x * x / 4.0:
        return x / 2.0
    return (x + math.sqrt(x * x - 4.0 * y)) / 2.0


def trace_det_parabola(j0: Jacobian2x2, diff: DiffusionPair) -> Callable[[float], float]:
    """Continuum curve det(trace) traced by the mode matrices.

    Returns y(x) = DetJ0 + alpha*(x - TrJ0) + delta*(x - TrJ0)^2 for
    diagnostic export; the modes live on x <= TrJ0. When one diffusivity
    is zero the curve degenerates to a line of slope alpha.
    """
    diff.require_some_diffusion()
    dsum = diff.D1 + diff.D2
    alpha = (j0.a11 * diff.D2 + j0.a22 * diff.D1) / dsum
    delta = diff.D1 * diff.D2 / dsum**2
    t0, d0 = j0.trace, j0.det

    def curve(x: float) -> float:
        z = x - t0
        return d0 + alpha * z + delta * z * z

    return curve


# ---------------------------------------------------------------------------
# Representable squared norms
# ---------------------------------------------------------------------------

def representable_norm2(k: int, cap: int) -> np.ndarray:
    """Sorted distinct values of n1^2 + ... + nk^2 up to `cap`, by direct
    enumeration over the integer lattice."""
    if cap < 0:
        return np.empty(0, dtype=np.int64)
    squares = np.arange(math.isqrt(cap) + 1, dtype=np.int64) ** 2
    sums = squares
    for _ in range(k - 1):
        grid = sums[:, None] + squares[None, :]
        sums = np.unique(grid[grid <= cap])
    return sums[sums <= cap]


def mode_tuples(k: int, norm2: int, limit: Optional[int] = None) -> list[tuple[int, ...]]:
    """All ordered k-tuples of non-negative integers with the given squared
    norm (optionally truncated to the first `limit` in lexicographic order)."""
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], remaining: int, dims: int):
        if limit is not None and len(out) >= limit:
            return
        if dims == 1:
            r = math.isqrt(remaining)
            if r * r == remaining:
                out.append(prefix + (r,))
            return
        for n in range(math.isqrt(remaining) + 1):
            rec(prefix + (n,), remaining - n * n, dims - 1)
            if limit is not None and len(out) >= limit:
                return

    rec((), norm2, k)
    return out


def is_sum_of_squares(norm2: int, k: int) -> bool:
    """Whether norm2 is expressible as a sum of k integer squares."""
    if norm2 < 0:
        return False
    if k == 1:
        r = math.isqrt(norm2)
        return r * r == norm2
    for n in range(math.isqrt(norm2), -1, -1):
        if is_sum_of_squares(norm2 - n * n, k - 1):
            return True
    return False


# ---------------------------------------------------------------------------
# Spectrum scan
# ---------------------------------------------------------------------------

def _eigen_arrays(j0: Jacobian2x2, diff: DiffusionPair, dom: DomainSpec, norm2: np.ndarray):
    """Vectorized trace/det/dominant-real-part over an array of norm2."""
    c = FOUR_PI2 / dom.S**2
    m = norm2.astype(np.float64)
    tr = j0.trace - (diff.D1 + diff.D2) * c * m
    det = j0.det - (j0.a11 * diff.D2 + j0.a22 * diff.D1) * c * m + (diff.D1 * diff.D2 * c * c) * m * m
    disc = tr * tr - 4.0 * det
    is_real = disc >= 0.0
    root = np.sqrt(np.abs(disc))
    re_plus = np.where(is_real, (tr + root) / 2.0, tr / 2.0)
    return tr, det, re_plus, is_real


def _argmax_modes(norm2: np.ndarray, re_plus: np.ndarray, lam: float, k: int) -> list[ModeIndex]:
    hits = norm2[np.abs(re_plus - lam) <= ARGMAX_ATOL]
    modes: list[ModeIndex] = []
    for m in hits.tolist():
        for tup in mode_tuples(k, int(m), limit=_MAX_WITNESS_TUPLES):
            modes.append(ModeIndex(tup))
            if len(modes) >= _MAX_WITNESS_TUPLES:
                return modes
    return modes


def _entries_for(j0, diff, dom, norm2: np.ndarray) -> list[ModeSpectrumEntry]:
    entries = []
    for m in norm2.tolist():
        tr, det = mode_trace_det(j0, diff, dom, int(m))
        lp, lm = mode_eigenvalues(tr, det)
        for tup in mode_tuples(dom.k, int(m), limit=_MAX_WITNESS_TUPLES):
            entries.append(ModeSpectrumEntry(ModeIndex(tup), tr, det, lp, lm))
    return entries


def _validate_scan_inputs(j0: Jacobian2x2, diff: DiffusionPair):
    if j0.det == 0.0:
        raise ValueError("degenerate fixed point (DetJ0 = 0), criteria inapplicable")
    diff.require_some_diffusion()


def scan_spectrum(
    j0: Jacobian2x2,
    diff: DiffusionPair,
    dom: DomainSpec,
    cutoff: CutoffPolicy = CutoffPolicy(),
    include_entries: bool = False,
) -> ScanResult:
    """Enumerate all eigenmodes up to an analytic cutoff and classify.

    With both diffusivities positive the dominant real part tends to
    -infinity, so the maximum is attained and the cutoff is chosen so that
    every unscanned mode provably sits below both zero and the best value
    already found. With exactly one diffusivity zero the dominant real
    part converges to the undamped diagonal entry; the scan covers every
    mode up to the point where the approach is provably one-sided and
    monotone, and compares the analytic limit against the best finite
    mode. A limit that strictly exceeds every finite mode is an
    instability attained by no mode of finite order.
    """
    _validate_scan_inputs(j0, diff)
    if diff.D1 > 0.0 and diff.D2 > 0.0:
        return _scan_both_positive(j0, diff, dom, cutoff, include_entries)
    return _scan_one_zero(j0, diff, dom, cutoff, include_entries)


def _capped(m_star: float, cutoff: CutoffPolicy) -> int:
    m = int(min(m_star, float(cutoff.hard_cap)))
    if cutoff.max_norm2 is not None:
        m = min(m, cutoff.max_norm2)
    return max(m, 1)


def _scan_both_positive(j0, diff, dom, cutoff, include_entries) -> ScanResult:
    gersh = max(j0.a11, j0.a22) + math.sqrt(abs(j0.a12 * j0.a21))
    c_min = FOUR_PI2 * min(diff.D1, diff.D2) / dom.S**2

    def m_star(lam_best: float) -> int:
        bound = max(0.0, gersh + abs(lam_best)) / c_min
        return _capped(math.ceil(bound) + 1, cutoff)

    tr0, det0 = mode_trace_det(j0, diff, dom, 0)
    lam_best = growth_function(tr0, det0)
    m_max = m_star(lam_best)
    while True:
        norm2 = representable_norm2(dom.k, m_max)
        tr, det, re_plus, is_real = _eigen_arrays(j0, diff, dom, norm2)
        lam_best = float(np.max(re_plus))
        m_next = m_star(lam_best)
        if m_next <= m_max:
            break
        m_max = m_next

    real_max = float(np.max(re_plus[is_real])) if np.any(is_real) else -math.inf
    complex_max = float(np.max(re_plus[~is_real])) if np.any(~is_real) else -math.inf
    lam = lam_best
    if lam <= 0.0:
        cls = Classification.STABLE
    elif real_max >= complex_max:
        # Ties between a real eigenvalue and a complex pair of equal real
        # part count as attained by the real branch.
        cls = Classification.TURING
    else:
        cls = Classification.OSCILLATORY
    modes = _argmax_modes(norm2, re_plus, lam, dom.k)
    entries = _entries_for(j0, diff, dom, norm2) if include_entries else None
    return ScanResult(lam, modes, cls, int(m_max), entries)


def _scan_one_zero(j0, diff, dom, cutoff, include_entries) -> ScanResult:
    d_pos = diff.D1 + diff.D2
    if diff.D1 == 0.0:
        alpha_lim, other_diag = j0.a11, j0.a22
    else:
        alpha_lim, other_diag = j0.a22, j0.a11
    coupling = j0.a12 * j0.a21

    # Beyond s = 4*pi^2*(D1+D2)*m/S^2 >= 2*sqrt(|a12*a21|) + (other - alpha)
    # the dominant eigenvalue is real and approaches alpha_lim monotonically
    # from one side (above iff a12*a21 > 0), so scanning that far is enough.
    c = FOUR_PI2 * d_pos / dom.S**2
    s_needed = max(0.0, 2.0 * math.sqrt(abs(coupling)) + (other_diag - alpha_lim))
    m_max = _capped(math.ceil(s_needed / c) + 2, cutoff)
    m_max = max(m_max, 8)

    norm2 = representable_norm2(dom.k, m_max)
    tr, det, re_plus, is_real = _eigen_arrays(j0, diff, dom, norm2)
    finite_max = float(np.max(re_plus))

    if alpha_lim > finite_max:
        # Supremum approached only in the infinite-norm limit, attained by
        # no finite mode.
        cls = Classification.TURING_INFINITE if alpha_lim > 0.0 else Classification.STABLE
        entries = _entries_for(j0, diff, dom, norm2) if include_entries else None
        return ScanResult(float(alpha_lim), [], cls, int(m_max), entries)

    real_max = float(np.max(re_plus[is_real])) if np.any(is_real) else -math.inf
    complex_max = float(np.max(re_plus[~is_real])) if np.any(~is_real) else -math.inf
    lam = finite_max
    if lam <= 0.0:
        cls = Classification.STABLE
    elif real_max >= complex_max:
        cls = Classification.TURING
    else:
        cls = Classification.OSCILLATORY
    modes = _argmax_modes(norm2, re_plus, lam, dom.k)
    entries = _entries_for(j0, diff, dom, norm2) if include_entries else None
    return ScanResult(lam, modes, cls, int(m_max), entries)


def unstable_real_mode_range(j0: Jacobian2x2, diff: DiffusionPair, dom: DomainSpec,
                             cutoff: CutoffPolicy = CutoffPolicy()) -> list[int]:
    """Squared norms (within the scan cutoff) whose dominant eigenvalue is
    real and strictly positive."""
    result = scan_spectrum(j0, diff, dom, cutoff)
    norm2 = representable_norm2(dom.k, result.scanned_norm2_max)
    tr, det, re_plus, is_real = _eigen_arrays(j0, diff, dom, norm2)
    mask = is_real & (re_plus > 0.0)
    return [int(m) for m in norm2[mask]]


def spectrum_table(j0: Jacobian2x2, diff: DiffusionPair, dom: DomainSpec,
                   cutoff: CutoffPolicy = CutoffPolicy()) -> list[dict]:
    """Per-norm2 dispersion rows for CSV export (one row per squared norm,
    mode tuples packed into a single column)."""
    result = scan_spectrum(j0, diff, dom, cutoff)
    norm2 = representable_norm2(dom.k, result.scanned_norm2_max)
    rows = []
    for m in norm2.tolist():
        tr, det = mode_trace_det(j0, diff, dom, int(m))
        lp, lm = mode_eigenvalues(tr, det)
        tuples = mode_tuples(dom.k, int(m), limit=_MAX_WITNESS_TUPLES)
        packed = ";".join("(" + ",".join(str(n) for n in t) + ")" for t in tuples)
        rows.append({
            "norm2": int(m),
            "n_indices": packed,
            "trace": tr,
            "det": det,
            "re_lambda_plus": lp.real,
            "im_lambda_plus": lp.imag,
            "re_lambda_minus": lm.real,
            "im_lambda_minus": lm.imag,
        })
    return rows
