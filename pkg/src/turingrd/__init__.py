"""Turing instability analysis and pattern simulation for two-component
reaction-diffusion systems on cubes with zero-flux boundaries."""

from .analysis import (
    AsymptoticClass,
    AsymptoticVariant,
    SpectrumReport,
    classify_asymptotic,
    cosine_spectrum,
    count_spatial_periods,
)
from .linstab import (
    Classification,
    CutoffPolicy,
    DiffusionPair,
    DomainSpec,
    ModeIndex,
    ModeSpectrumEntry,
    ScanResult,
    growth_function,
    mode_eigenvalues,
    mode_trace_det,
    scan_spectrum,
    trace_det_parabola,
    unstable_real_mode_range,
)
from .models import (
    BrusselatorParams,
    FixedPoint,
    Jacobian2x2,
    NormalFormParams,
    brusselator_hopf_threshold,
    eval_rhs_shifted,
    fixed_point,
    jacobian_at_fixed_point,
    limit_cycle_radius,
)
from .pde import (
    BlowUpError,
    Field,
    IntegratorConfig,
    Snapshot,
    derive_grid,
    integrate,
    limit_cycle_ic,
    random_ic,
    step,
)
from .theorems import (
    AgreementReport,
    BrusselatorCriteria,
    NormalFormFlags,
    ThmCase,
    ThmOutcome,
    ThmParams,
    TuringVerdict,
    brusselator_conditions,
    classify_thm22,
    classify_thm23,
    cross_validate,
    normal_form_conditions,
    thm_params,
)

__version__ = "0.1.0"
