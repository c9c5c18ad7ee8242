import math

import numpy as np
import pytest

from turingrd import (
    BrusselatorParams,
    Classification,
    DiffusionPair,
    DomainSpec,
    Jacobian2x2,
    NormalFormParams,
    growth_function,
    jacobian_at_fixed_point,
    mode_eigenvalues,
    mode_trace_det,
    scan_spectrum,
    trace_det_parabola,
    unstable_real_mode_range,
)
from turingrd.linstab import (
    is_sum_of_squares,
    mode_tuples,
    representable_norm2,
    spectrum_table,
)

from conftest import P_DIFF, P_DOMAIN, P_DOMAIN_2D, P_POINT


def p_jacobian():
    return jacobian_at_fixed_point(P_POINT)


def test_mode_trace_det_zero_mode_is_local_jacobian():
    j0 = p_jacobian()
    assert mode_trace_det(j0, P_DIFF, P_DOMAIN, 0) == (j0.trace, j0.det)


def test_mode_trace_det_p_point_values():
    j0 = p_jacobian()
    tr, det = mode_trace_det(j0, P_DIFF, P_DOMAIN, 100)
    assert tr == pytest.approx(-1.580, abs=0.01)
    assert det == pytest.approx(-128.09, abs=0.01)
    tr, det = mode_trace_det(j0, P_DIFF, P_DOMAIN, 81)
    assert tr == pytest.approx(0.620, abs=0.01)
    assert det == pytest.approx(-104.70, abs=0.01)
    # direct form: trace drops linearly, det is quadratic in the norm
    c = 4 * math.pi**2 / P_DOMAIN.S**2
    assert tr == pytest.approx(j0.trace - (P_DIFF.D1 + P_DIFF.D2) * c * 81, rel=1e-14)


def test_mode_eigenvalues():
    lp, lm = mode_eigenvalues(0.0, 1.0)
    assert lp == 1j and lm == -1j
    lp, lm = mode_eigenvalues(-1.580, -128.09)
    assert lp.real == pytest.approx(10.555, abs=5e-3)
    assert lm.real == pytest.approx(-12.135, abs=5e-3)
    lp, lm = mode_eigenvalues(2.0, 1.2304)
    assert lp == pytest.approx(1 + 0.48j, abs=1e-12)
    assert lm == pytest.approx(1 - 0.48j, abs=1e-12)


def test_eigenvalue_identities(rng):
    for _ in range(300):
        tr = rng.uniform(-20, 20)
        det = rng.uniform(-200, 200)
        lp, lm = mode_eigenvalues(tr, det)
        tol = 1e-9 * max(1.0, abs(tr), abs(det))
        assert abs((lp + lm) - tr) <= tol
        assert abs((lp * lm) - det) <= tol
        assert lp.real >= lm.real


def test_growth_function():
    assert growth_function(0.0, 1.0) == 0.0
    assert growth_function(2.0, 0.0) == 2.0
    assert growth_function(-2.0, -3.0) == 1.0


def test_growth_function_matches_eigenvalues(rng):
    for _ in range(200):
        tr = rng.uniform(-10, 10)
        det = rng.uniform(-100, 100)
        lp, _ = mode_eigenvalues(tr, det)
        assert growth_function(tr, det) == pytest.approx(lp.real, rel=1e-12, abs=1e-12)


def test_growth_function_level_sets():
    # stay off the level-curve corner at x = 2c, where the radicand
    # cancellation limits float accuracy to ~sqrt(eps)
    for c in np.linspace(0.1, 3.0, 12):
        for x in np.linspace(-10.0, 2 * c - 0.05, 23):
            y = c * x - c * c
            assert growth_function(x, y) == pytest.approx(c, abs=1e-10)


def test_trace_det_parabola():
    j0 = p_jacobian()
    curve = trace_det_parabola(j0, P_DIFF)
    assert curve(j0.trace) == j0.det
    assert curve(j0.trace - 1.0) == pytest.approx(-8.281, abs=1e-3)
    # one vanishing diffusivity degenerates the curve to a line of slope a11
    line = trace_det_parabola(j0, DiffusionPair(0.0, 1.0))
    slopes = {(line(x) - line(x - 1.0)) for x in (-3.0, 0.0, 5.0)}
    assert all(s == pytest.approx(j0.a11, rel=1e-12) for s in slopes)


def test_scan_p_point_1d():
    res = scan_spectrum(p_jacobian(), P_DIFF, P_DOMAIN)
    assert res.classification is Classification.TURING
    assert [m.indices for m in res.argmax_modes] == [(10,)]
    assert res.capital_lambda == pytest.approx(10.555, abs=5e-3)


def test_scan_p_point_2d():
    res = scan_spectrum(p_jacobian(), P_DIFF, P_DOMAIN_2D)
    assert res.classification is Classification.TURING
    assert {m.indices for m in res.argmax_modes} == {(4, 9), (9, 4)}


def test_scan_stable_case():
    j0 = jacobian_at_fixed_point(BrusselatorParams(A=2, B=2))
    res = scan_spectrum(j0, DiffusionPair(1.0, 1.0), P_DOMAIN)
    assert res.classification is Classification.STABLE
    assert res.capital_lambda == pytest.approx(-1.5, abs=1e-12)


def test_scan_oscillatory_normal_form():
    j0 = jacobian_at_fixed_point(NormalFormParams(nu=1.0, beta=-0.48))
    res = scan_spectrum(j0, DiffusionPair(1.0, 0.001), P_DOMAIN)
    assert res.classification is Classification.OSCILLATORY
    assert res.capital_lambda == pytest.approx(1.0, abs=1e-9)
    assert [m.indices for m in res.argmax_modes] == [(0,)]


def test_scan_rejects_degenerate_inputs():
    with pytest.raises(ValueError):
        scan_spectrum(Jacobian2x2(1.0, 1.0, 1.0, 1.0), P_DIFF, P_DOMAIN)  # det = 0
    with pytest.raises(ValueError):
        scan_spectrum(p_jacobian(), DiffusionPair(0.0, 0.0), P_DOMAIN)


def test_unstable_real_band_at_p():
    band = unstable_real_mode_range(p_jacobian(), P_DIFF, P_DOMAIN)
    assert band == [n * n for n in range(36)]


def test_unstable_real_band_empty_when_stable():
    j0 = jacobian_at_fixed_point(BrusselatorParams(A=2, B=2))
    assert unstable_real_mode_range(j0, DiffusionPair(1.0, 1.0), P_DOMAIN) == []


def test_unstable_real_band_b4():
    j0 = jacobian_at_fixed_point(BrusselatorParams(A=2, B=4))
    band = unstable_real_mode_range(j0, P_DIFF, P_DOMAIN)
    assert band == [n * n for n in range(4, 16)]


def test_mode_symmetry_2d():
    rows = spectrum_table(p_jacobian(), P_DIFF, DomainSpec(2, 3.098))
    by_norm = {r["norm2"]: r for r in rows}
    assert "(1,2)" in by_norm[5]["n_indices"] and "(2,1)" in by_norm[5]["n_indices"]


def test_monotone_tail_beyond_cutoff(rng):
    for _ in range(20):
        j0 = jacobian_at_fixed_point(BrusselatorParams(*rng.uniform(0.5, 3.0, 6)))
        diff = DiffusionPair(rng.uniform(0.05, 2.0), rng.uniform(0.05, 2.0))
        dom = DomainSpec(1, float(rng.choice([3.098, 19.365])))
        res = scan_spectrum(j0, diff, dom)
        cut = res.scanned_norm2_max
        for m in np.linspace(cut + 1, 10 * cut, 10).astype(int):
            tr, det = mode_trace_det(j0, diff, dom, int(m))
            assert growth_function(tr, det) < 0.0
            assert growth_function(tr, det) < res.capital_lambda


def test_swap_invariance(rng):
    """Swapping the two components (rows/columns of J0 and the
    diffusivities) must not change the classification."""
    for _ in range(100):
        a11, a12, a21, a22 = rng.uniform(-4, 4, 4)
        j0 = Jacobian2x2(a11, a12, a21, a22)
        if j0.det == 0.0:
            continue
        diff = DiffusionPair(rng.uniform(0.01, 2.0), rng.uniform(0.01, 2.0))
        dom = DomainSpec(int(rng.choice([1, 2])), float(rng.choice([3.098, 19.365])))
        res = scan_spectrum(j0, diff, dom)
        swapped = scan_spectrum(Jacobian2x2(a22, a21, a12, a11),
                                DiffusionPair(diff.D2, diff.D1), dom)
        assert res.classification == swapped.classification
        assert res.capital_lambda == pytest.approx(swapped.capital_lambda, rel=1e-12, abs=1e-12)


def test_infinite_order_detection():
    # undamped first component with positive growth in the limit
    j0 = jacobian_at_fixed_point(BrusselatorParams(A=2, B=2))  # a11 = 1
    res = scan_spectrum(j0, DiffusionPair(0.0, 1.0), P_DOMAIN)
    assert res.classification is Classification.TURING_INFINITE
    assert res.capital_lambda == pytest.approx(j0.a11, abs=1e-12)
    assert res.argmax_modes == []


def test_representable_norm2():
    assert representable_norm2(1, 10).tolist() == [0, 1, 4, 9]
    assert representable_norm2(2, 10).tolist() == [0, 1, 2, 4, 5, 8, 9, 10]
    assert representable_norm2(3, 7).tolist() == [0, 1, 2, 3, 4, 5, 6]


def test_mode_tuples_and_representability():
    assert set(mode_tuples(2, 5)) == {(1, 2), (2, 1)}
    assert mode_tuples(1, 9) == [(3,)]
    assert mode_tuples(1, 8) == []
    assert is_sum_of_squares(8, 2) and not is_sum_of_squares(7, 2)
    assert is_sum_of_squares(7, 4)
