"""Closed-form Turing-instability criteria and their cross-validation.

The criteria come in two families: T22a..T22f for strictly positive
diffusivities and T23a..T23e when exactly one diffusivity vanishes.
Cases a-d are sufficient on their own; the windowed cases e/f are
necessary and become sufficient exactly when the real interval they
define on the squared mode norm contains an integer representable as a
sum of k squares. `cross_validate` checks every verdict against the
brute-force spectral scan, which is the ground truth.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .linstab import (
    DiffusionPair,
    DomainSpec,
    ModeIndex,
    ScanResult,
    TURING_CLASSES,
    is_sum_of_squares,
    mode_tuples,
    scan_spectrum,
)
from .models import BrusselatorParams, Jacobian2x2, NormalFormParams, jacobian_at_fixed_point

BOUNDARY_RTOL = 1e-12

_MAX_WITNESSES = 64
_MAX_WITNESS_CANDIDATES = 10_000


class ThmOutcome(str, Enum):
    INSTABILITY = "Instability"
    NO_INSTABILITY = "NoInstability"
    WINDOW_EMPTY = "ConditionalWindowEmpty"


class ThmCase(str, Enum):
    T22A = "T22a"
    T22B = "T22b"
    T22C = "T22c"
    T22D = "T22d"
    T22E = "T22e"
    T22F = "T22f"
    T23A = "T23a"
    T23B = "T23b"
    T23C = "T23c"
    T23D = "T23d"
    T23E = "T23e"
    NONE = "None"


@dataclass(frozen=True)
class ThmParams:
    """Reduced coefficients entering every criterion.

    alpha = (a11*D2 + a22*D1)/(D1+D2), delta = D1*D2/(D1+D2)^2 (always
    <= 1/4), eps = 4*pi^2*(D1+D2)/S^2 (spacing of the squared mode norms
    along the trace axis).
    """

    alpha: float
    delta: float
    eps: float

    def __post_init__(self):
        if not (0.0 <= self.delta <= 0.25 + 1e-15):
            raise ValueError(f"delta out of range [0, 1/4]: {self.delta}")
        if not self.eps > 0.0:
            raise ValueError(f"eps must be positive: {self.eps}")


@dataclass(frozen=True)
class TuringVerdict:
    """Criterion-side verdict with the evidence that produced it."""

    outcome: ThmOutcome
    case_fired: ThmCase
    window: Optional[tuple[float, float]] = None
    witnesses: tuple[ModeIndex, ...] = ()
    infinite_order: bool = False
    zero_mode_unstable: bool = False
    boundary: tuple[str, ...] = ()
    witnesses_truncated: bool = False


def thm_params(j0: Jacobian2x2, diff: DiffusionPair, dom: DomainSpec) -> ThmParams:
    diff.require_some_diffusion()
    dsum = diff.D1 + diff.D2
    alpha = (j0.a11 * diff.D2 + j0.a22 * diff.D1) / dsum
    delta = diff.D1 * diff.D2 / dsum**2
    eps = 4.0 * math.pi**2 * dsum / dom.S**2
    return ThmParams(alpha, delta, eps)


def _near(a: float, b: float) -> bool:
    return abs(a - b) <= BOUNDARY_RTOL * max(1.0, abs(a), abs(b))


def _zero_mode_real_unstable(trace: float, det: float) -> bool:
    """Whether the zero eigenmode carries a real, strictly positive eigenvalue."""
    return det < 0.0 or (trace > 0.0 and 4.0 * det <= trace * trace)


# ---------------------------------------------------------------------------
# Integer witnesses inside a window on the squared mode norm
# ---------------------------------------------------------------------------

def find_witnesses(k: int, lo: float, hi: float, inclusive: bool,
                   max_witnesses: int = _MAX_WITNESSES) -> tuple[list[int], bool]:
    """Representable integers in the window, ascending.

    Returns (witnesses, truncated). Only integers >= 1 count. For k = 1 the
    squares are enumerated directly; otherwise ascending candidates are
    tested for representability, with a candidate budget so that very wide
    windows report the leading witnesses and set the truncation flag
    rather than enumerating millions of values.
    """
    if not (hi >= lo) or hi < 1.0:
        return [], False

    def in_window(m: int) -> bool:
        return (lo <= m <= hi) if inclusive else (lo < m < hi)

    found: list[int] = []
    if k == 1:
        n = max(1, math.isqrt(max(0, math.floor(lo))))
        # back up one in case of float edges
        n = max(1, n - 1)
        while n * n <= hi + 1.0:
            m = n * n
            if in_window(m):
                found.append(m)
                if len(found) >= max_witnesses:
                    return found, n * n + 1 <= hi
            n += 1
        return found, False

    start = max(1, math.floor(lo))
    m = start
    candidates = 0
    while m <= hi + 1.0 and candidates < _MAX_WITNESS_CANDIDATES:
        if in_window(m) and is_sum_of_squares(m, k):
            found.append(m)
            if len(found) >= max_witnesses:
                return found, m + 1 <= hi
        m += 1
        candidates += 1
    return found, candidates >= _MAX_WITNESS_CANDIDATES


def _witness_modes(k: int, witnesses: list[int]) -> tuple[ModeIndex, ...]:
    modes: list[ModeIndex] = []
    for m in witnesses:
        for tup in mode_tuples(k, m, limit=_MAX_WITNESSES):
            modes.append(ModeIndex(tup))
            if len(modes) >= _MAX_WITNESSES:
                return tuple(modes)
    return tuple(modes)


# ---------------------------------------------------------------------------
# Criterion family T22 (both diffusivities positive)
# ---------------------------------------------------------------------------

def _windows(j0: Jacobian2x2, p: ThmParams):
    """Window bounds on the squared mode norm for the two conditional cases.

    Case e asks for a mode with negative determinant (a real positive
    eigenvalue while the zero mode is stable); the bounds are the roots of
    det(m) = 0. Case f has an unstable complex zero mode with real part
    TrJ0/2, so a real mode only wins if its eigenvalue reaches that level;
    the bounds are the roots of det(m) = (TrJ0/2)*trace(m) - TrJ0^2/4. In
    both cases the quadratic in m has leading coefficient eps^2*delta and
    the roots come out as (center +- sqrt(radicand))/(2*eps*delta).
    """
    t0, d0 = j0.trace, j0.det
    e_radicand = p.alpha * p.alpha - 4.0 * p.delta * d0
    f_shift = p.alpha - t0 / 2.0
    f_radicand = f_shift * f_shift - 4.0 * p.delta * (d0 - t0 * t0 / 4.0)
    return e_radicand, f_shift, f_radicand


def thm22_case_conditions(j0: Jacobian2x2, diff: DiffusionPair, dom: DomainSpec) -> dict[str, bool]:
    """Evaluate each T22 case's inequality block independently.

    Requires D1 > 0 and D2 > 0. The windowed cases e/f report their full
    necessary condition (sign pattern plus a non-degenerate window); they
    say nothing about integer witnesses.
    """
    if not (diff.D1 > 0.0 and diff.D2 > 0.0):
        raise ValueError("this criterion family requires D1 > 0 and D2 > 0")
    p = thm_params(j0, diff, dom)
    t0, d0 = j0.trace, j0.det
    e_rad, f_shift, f_rad = _windows(j0, p)
    return {
        "a": p.alpha <= 0.0 and t0 <= 0.0 and d0 < 0.0,
        "b": p.alpha <= 0.0 and t0 > 0.0 and 4.0 * d0 <= t0 * t0,
        "c": p.alpha > 0.0 and t0 <= 0.0 and d0 < 0.0,
        "d": p.alpha > 0.0 and t0 > 0.0 and 4.0 * d0 <= t0 * t0,
        "e": p.alpha > 0.0 and t0 <= 0.0 and d0 > 0.0 and e_rad > 0.0,
        "f": p.alpha > 0.0 and t0 > 0.0 and 4.0 * d0 > t0 * t0 and f_shift > 0.0 and f_rad >= 0.0,
    }


def classify_thm22(j0: Jacobian2x2, diff: DiffusionPair, dom: DomainSpec) -> TuringVerdict:
    """Closed-form classification for strictly positive diffusivities.

    Cases a-d are sufficient. For e/f the window on the squared mode norm
    is computed and searched for representable integer witnesses: a hit is
    an instability, an empty window is reported as ConditionalWindowEmpty.
    Inputs with a degenerate fixed point (DetJ0 = 0) are rejected.
    """
    if j0.det == 0.0:
        raise ValueError("degenerate fixed point (DetJ0 = 0), criteria inapplicable")
    if not (diff.D1 > 0.0 and diff.D2 > 0.0):
        raise ValueError("classify_thm22 requires D1 > 0 and D2 > 0 (use classify_thm23 otherwise)")

    p = thm_params(j0, diff, dom)
    t0, d0 = j0.trace, j0.det
    boundary: list[str] = []
    if _near(p.alpha, 0.0):
        boundary.append("alpha")
    if _near(t0, 0.0):
        boundary.append("trace")
    if _near(4.0 * d0, t0 * t0):
        boundary.append("discriminant")
    zero_unstable = _zero_mode_real_unstable(t0, d0)
    cases = thm22_case_conditions(j0, diff, dom)

    for name in ("a", "b", "c", "d"):
        if cases[name]:
            return TuringVerdict(ThmOutcome.INSTABILITY, ThmCase("T22" + name),
                                 zero_mode_unstable=zero_unstable, boundary=tuple(boundary))

    e_rad, f_shift, f_rad = _windows(j0, p)
    two_ed = 2.0 * p.eps * p.delta

    if cases["e"]:
        half = math.sqrt(e_rad) / two_ed
        center = p.alpha / two_ed
        window = (center - half, center + half)
        if _near(d0, p.alpha * p.alpha / (4.0 * p.delta)):
            boundary.append("window")
        witnesses, truncated = find_witnesses(dom.k, window[0], window[1], inclusive=False)
        outcome = ThmOutcome.INSTABILITY if witnesses else ThmOutcome.WINDOW_EMPTY
        return TuringVerdict(outcome, ThmCase.T22E, window=window,
                             witnesses=_witness_modes(dom.k, witnesses),
                             zero_mode_unstable=zero_unstable, boundary=tuple(boundary),
                             witnesses_truncated=truncated)

    if cases["f"]:
        half = math.sqrt(f_rad) / two_ed
        center = f_shift / two_ed
        window = (center - half, center + half)
        if _near(f_rad, 0.0):
            boundary.append("window")
        # A mode sitting exactly on the window edge ties the complex zero
        # mode's real part, and ties go to the real branch, so the window
        # is closed.
        witnesses, truncated = find_witnesses(dom.k, window[0], window[1], inclusive=True)
        outcome = ThmOutcome.INSTABILITY if witnesses else ThmOutcome.WINDOW_EMPTY
        return TuringVerdict(outcome, ThmCase.T22F, window=window,
                             witnesses=_witness_modes(dom.k, witnesses),
                             zero_mode_unstable=zero_unstable, boundary=tuple(boundary),
                             witnesses_truncated=truncated)

    return TuringVerdict(ThmOutcome.NO_INSTABILITY, ThmCase.NONE,
                         zero_mode_unstable=zero_unstable, boundary=tuple(boundary))


# ---------------------------------------------------------------------------
# Criterion family T23 (exactly one diffusivity zero)
# ---------------------------------------------------------------------------

def classify_thm23(j0: Jacobian2x2, diff: DiffusionPair, dom: DomainSpec) -> TuringVerdict:
    """Closed-form classification when exactly one diffusivity is zero.

    With one diffusivity zero the trace-determinant curve is a line of
    slope alpha (= a11 if D1 = 0, a22 if D2 = 0) and the five cases are
    jointly necessary and sufficient; none of them depends on the domain
    size. Case T23d is the infinite-order instability: the growth-rate
    supremum equals alpha but is attained by no finite mode.
    """
    if j0.det == 0.0:
        raise ValueError("degenerate fixed point (DetJ0 = 0), criteria inapplicable")
    one_zero = (diff.D1 == 0.0) != (diff.D2 == 0.0)
    if not one_zero:
        raise ValueError("classify_thm23 requires exactly one zero diffusivity")

    alpha = j0.a11 if diff.D1 == 0.0 else j0.a22
    t0, d0 = j0.trace, j0.det
    boundary: list[str] = []
    if _near(alpha, 0.0):
        boundary.append("alpha")
    if _near(t0, 0.0):
        boundary.append("trace")
    if _near(4.0 * d0, t0 * t0):
        boundary.append("discriminant")
    if _near(d0 - alpha * t0, -alpha * alpha):
        boundary.append("level-line")
    if _near(t0, 2.0 * alpha):
        boundary.append("zero-mode-level")
    zero_unstable = _zero_mode_real_unstable(t0, d0)

    def verdict(case: ThmCase, infinite: bool = False) -> TuringVerdict:
        return TuringVerdict(ThmOutcome.INSTABILITY, case, infinite_order=infinite,
                             zero_mode_unstable=zero_unstable, boundary=tuple(boundary))

    if alpha <= 0.0:
        if t0 <= 0.0 and d0 < 0.0:
            return verdict(ThmCase.T23A)
        if t0 > 0.0 and 4.0 * d0 <= t0 * t0:
            return verdict(ThmCase.T23B)
    else:
        if d0 - alpha * t0 <= -alpha * alpha:
            return verdict(ThmCase.T23C)
        if 4.0 * d0 > t0 * t0 and t0 < 2.0 * alpha:
            return verdict(ThmCase.T23D, infinite=True)
        if 4.0 * d0 <= t0 * t0:
            return verdict(ThmCase.T23E)
    return TuringVerdict(ThmOutcome.NO_INSTABILITY, ThmCase.NONE,
                         zero_mode_unstable=zero_unstable, boundary=tuple(boundary))


# ---------------------------------------------------------------------------
# Brusselator specializations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BrusselatorCriteria:
    """Per-case closed forms for the Brusselator, solved for B.

    case_b/case_d/case_e restate the matching general criteria purely in
    terms of B, the rate constants and the diffusivity ratio. case_f is
    the general windowed criterion evaluated on the Brusselator Jacobian
    (the authoritative form); case_f_printed is a historically circulated
    variant kept for diagnostic comparison only. d1_zero_sufficient /
    d2_zero_sufficient are the necessary-and-sufficient one-zero-
    diffusivity conditions and are None when the corresponding
    diffusivity is positive.
    """

    case_b: bool
    case_d: bool
    case_e: bool
    case_f: bool
    case_f_printed: bool
    d1_zero_sufficient: Optional[bool]
    d2_zero_sufficient: Optional[bool]
    necessary_any: Optional[bool]
    verdict: str


def brusselator_conditions(params: BrusselatorParams, diff: DiffusionPair,
                           dom: DomainSpec) -> BrusselatorCriteria:
    """Evaluate the Brusselator closed forms and the overall verdict.

    With both diffusivities positive the union of the per-case conditions
    is necessary only ("InstabilityPossible"); with one diffusivity zero
    the single condition is necessary and sufficient.
    """
    A, B = params.A, params.B
    k1, k2, k3, k4 = params.k1, params.k2, params.k3, params.k4
    w = params.a12                      # A^2 k1^2 k3 / k4^2
    hopf = k4 / k2 + w / k2
    band = 2.0 * A * k1 * math.sqrt(k3) / (k2 * math.sqrt(k4))
    band_printed = 2.0 * A * k1 * math.sqrt(k3) / (k2 * k4)

    if diff.D1 > 0.0 and diff.D2 > 0.0:
        rho = diff.D1 / diff.D2
        alpha_zero_b = k4 / k2 + (w / k2) * rho   # B at which alpha changes sign
        case_b = B <= alpha_zero_b and B > hopf and B >= hopf + band
        case_d = B > alpha_zero_b and B >= hopf + band
        case_e = B <= hopf and B > alpha_zero_b + band * math.sqrt(rho)
        # Verbatim historical form of the windowed supercritical case.
        sqrt_arg = 2.0 * (w / k2) * rho + 2.0 * (w / k2) * rho * rho + (rho / k2) ** 2
        case_f_printed = (
            diff.D1 <= diff.D2
            and B > hopf
            and B < hopf + band_printed
            and B > k4 / k2 + (w / k2) * rho + rho / k2 + math.sqrt(sqrt_arg)
        )
        j0 = jacobian_at_fixed_point(params)
        case_f = thm22_case_conditions(j0, diff, dom)["f"]
        necessary_any = case_b or case_d or case_e or case_f
        verdict = "InstabilityPossible" if necessary_any else "NoInstability"
        return BrusselatorCriteria(case_b, case_d, case_e, case_f, case_f_printed,
                                   None, None, necessary_any, verdict)

    diff.require_some_diffusion()
    if diff.D2 == 0.0:
        sufficient = B >= hopf + band
        return BrusselatorCriteria(False, False, False, False, False,
                                   None, sufficient, None,
                                   "Instability" if sufficient else "NoInstability")
    sufficient = B > k4 / k2
    return BrusselatorCriteria(False, False, False, False, False,
                               sufficient, None, None,
                               "Instability" if sufficient else "NoInstability")


# ---------------------------------------------------------------------------
# Normal-form conditions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormalFormFlags:
    """Normal-form instability conditions as usually quoted.

    both_positive_beta_zero is necessary and sufficient for D1, D2 > 0.
    both_positive_window_necessary restates the (historically printed)
    windowed necessary condition; it can hold at points where the
    spectral scan nonetheless finds no Turing instability, which is
    exactly why it is reported as a flag and not a verdict. d1_zero /
    d2_zero are the one-zero-diffusivity conditions as quoted (nu > 0
    with the matching diffusivity zero); classify_thm23 gives the
    authoritative verdict there.
    """

    both_positive_beta_zero: bool
    both_positive_window_necessary: bool
    d1_zero: bool
    d2_zero: bool


def normal_form_conditions(params: NormalFormParams, diff: DiffusionPair,
                           dom: DomainSpec) -> NormalFormFlags:
    nu, beta = params.nu, params.beta
    both = diff.D1 > 0.0 and diff.D2 > 0.0
    flag_i = both and nu > 0.0 and beta == 0.0
    flag_ii = False
    if both and nu > 0.0 and beta != 0.0:
        flag_ii = beta * beta < nu * nu * (diff.D1 - diff.D2) ** 2 / (4.0 * diff.D1 * diff.D2) - nu
    flag_iii = nu > 0.0 and diff.D1 == 0.0 and diff.D2 > 0.0
    flag_iv = nu > 0.0 and diff.D1 > 0.0 and diff.D2 == 0.0
    return NormalFormFlags(flag_i, flag_ii, flag_iii, flag_iv)


# ---------------------------------------------------------------------------
# Cross-validation against the spectral oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AgreementReport:
    theorem: TuringVerdict
    scan: ScanResult
    agree: bool
    note: str


def cross_validate(j0: Jacobian2x2, diff: DiffusionPair, dom: DomainSpec) -> AgreementReport:
    """Run the closed-form classification and the spectral scan, and check
    that "criterion says instability" coincides with "scan attains a
    Turing-class maximum" (finite or infinite order)."""
    if diff.D1 > 0.0 and diff.D2 > 0.0:
        verdict = classify_thm22(j0, diff, dom)
    else:
        verdict = classify_thm23(j0, diff, dom)
    scan = scan_spectrum(j0, diff, dom)
    scan_turing = scan.classification in TURING_CLASSES
    agree = (verdict.outcome == ThmOutcome.INSTABILITY) == scan_turing
    note = (f"criterion case {verdict.case_fired.value} -> {verdict.outcome.value}; "
            f"scan -> {scan.classification.value} (Lambda = {scan.capital_lambda:.6g})")
    return AgreementReport(verdict, scan, agree, note)
