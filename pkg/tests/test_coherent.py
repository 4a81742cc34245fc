"""Tests for truncated coherent states: builds, eigenvalue and completeness checks."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qmodes.coherent import (
    CoherentSpec,
    InsufficientCutoffError,
    WeightVariant,
    build_coherent,
    check_completeness,
    check_eigenvalue,
    mode_coefficients,
    mode_tail_bound,
    spec_grid,
    suggest_cutoff,
)
from qmodes.fock import FockSpaceConfig
from qmodes.qcore import DeformationParams, DomainError, q_factorial, q_number

Q_GRID = (0.3, 0.5, 0.9)


def make_spec(q: float, z: tuple, cutoff: int) -> CoherentSpec:
    params = DeformationParams(q)
    return CoherentSpec(tuple(z), FockSpaceConfig(len(z), cutoff, params))


# ---------------------------------------------------------------------------
# spec validation and the shift map


def test_spec_validates_length_and_domain():
    params = DeformationParams(0.5)
    cfg = FockSpaceConfig(2, 6, params)
    with pytest.raises(ValueError):
        CoherentSpec((0.1,), cfg)
    outside = math.sqrt(params.radius) + 0.01
    with pytest.raises(DomainError):
        CoherentSpec((0.1, outside), cfg)


def test_shifted_twists_only_later_modes():
    spec = make_spec(0.5, (0.4, 0.3j, 0.2), 6)
    after_first = spec.shifted(1)
    assert after_first.z == (0.4, 0.15j, 0.1)
    after_last = spec.shifted(3)
    assert after_last.z == spec.z
    with pytest.raises(ValueError):
        spec.shifted(0)
    with pytest.raises(ValueError):
        spec.shifted(4)


# ---------------------------------------------------------------------------
# single-mode coefficients and tail bounds


@given(
    q=st.sampled_from(Q_GRID),
    magnitude=st.floats(min_value=0.0, max_value=0.9),
    angle=st.floats(min_value=-math.pi, max_value=math.pi),
)
@settings(max_examples=40, deadline=None)
def test_mode_coefficients_match_closed_form(q, magnitude, angle):
    params = DeformationParams(q)
    z = cmath.rect(magnitude * math.sqrt(params.radius), angle)
    coeff = mode_coefficients(params, z, 12)
    for m in range(12):
        expected = z**m / math.sqrt(q_factorial(params, m))
        assert coeff[m] == pytest.approx(expected, rel=1e-12, abs=1e-300)


def test_mode_tail_bound_dominates_true_tail():
    params = DeformationParams(0.5)
    z = 0.95
    x = abs(z) ** 2
    for cutoff in (4, 8, 16):
        bound = mode_tail_bound(params, z, cutoff)
        term = 1.0
        partial = 1.0
        dropped = 0.0
        for m in range(1, 200):
            term *= x / q_number(params, m)
            if m < cutoff:
                partial += term
            else:
                dropped += term
        assert dropped / partial <= bound
        assert math.isfinite(bound)


def test_mode_tail_bound_is_inf_before_decay_sets_in():
    # at q = 0.9 the brackets grow toward 1/(1-q^2) ~ 5.26; pick |z|^2 above
    # the early brackets so the geometric majorant cannot apply yet
    params = DeformationParams(0.9)
    z = math.sqrt(0.9 * params.radius)
    assert mode_tail_bound(params, z, 2) == math.inf


# ---------------------------------------------------------------------------
# cutoff selection and state construction


def test_suggest_cutoff_meets_requested_tail():
    params = DeformationParams(0.5)
    z = (0.9, 0.4 + 0.3j)
    cutoff = suggest_cutoff(params, z, tail_tol=1e-10)
    spec = CoherentSpec(z, FockSpaceConfig(len(z), cutoff, params))
    state = build_coherent(spec, tail_tol=1e-10)
    assert state.tail_mass <= 1e-10


def test_suggest_cutoff_shrinks_for_smaller_amplitudes():
    params = DeformationParams(0.5)
    big = suggest_cutoff(params, (0.9,))
    small = suggest_cutoff(params, (0.2,))
    assert small < big


def test_suggest_cutoff_domain_and_exhaustion():
    params = DeformationParams(0.5)
    with pytest.raises(DomainError):
        suggest_cutoff(params, (math.sqrt(params.radius),))
    with pytest.raises(ValueError):
        suggest_cutoff(params, ())
    with pytest.raises(InsufficientCutoffError):
        suggest_cutoff(params, (0.9,), tail_tol=1e-14, max_cutoff=4)


def test_zero_amplitude_gives_the_ground_state():
    spec = make_spec(0.5, (0.0, 0.0), 4)
    state = build_coherent(spec)
    expected = np.zeros(16)
    expected[0] = 1.0
    np.testing.assert_array_equal(state.vector, expected)
    assert state.norm_constant == 1.0
    assert state.tail_mass == 0.0


def test_built_state_norm_shortfall_is_within_tail_mass():
    for q in Q_GRID:
        params = DeformationParams(q)
        z = (0.55 * math.sqrt(params.radius), 0.3j * math.sqrt(params.radius))
        cutoff = suggest_cutoff(params, z, tail_tol=1e-12)
        state = build_coherent(
            CoherentSpec(z, FockSpaceConfig(2, cutoff, params)), tail_tol=1e-12
        )
        shortfall = 1.0 - float(np.vdot(state.vector, state.vector).real)
        assert -1e-13 <= shortfall <= state.tail_mass + 1e-13


def test_build_refuses_underresolved_cutoff():
    spec = make_spec(0.5, (1.0,), 4)
    with pytest.raises(InsufficientCutoffError):
        build_coherent(spec, tail_tol=1e-10)


# ---------------------------------------------------------------------------
# twisted eigenvalue relation


def test_eigenvalue_residual_is_truncation_only():
    params = DeformationParams(0.5)
    z = (0.9, 0.5j)
    cutoff = suggest_cutoff(params, z, tail_tol=1e-14)
    state = build_coherent(
        CoherentSpec(z, FockSpaceConfig(2, cutoff, params)), tail_tol=1e-14
    )
    for mode in (1, 2):
        report = check_eigenvalue(state, mode, tol=1e-9)
        assert report.passed
        assert report.residual < 1e-6


def test_eigenvalue_residual_decreases_with_cutoff():
    params = DeformationParams(0.5)
    z = (0.9, 0.5j)
    residuals = []
    for cutoff in (12, 24):
        state = build_coherent(
            CoherentSpec(z, FockSpaceConfig(2, cutoff, params)), tail_tol=math.inf
        )
        residuals.append(check_eigenvalue(state, 1).residual)
    assert residuals[1] < residuals[0]


def test_norm_ratio_compensates_later_modes_only():
    params = DeformationParams(0.5)
    z = (0.4, 0.7)
    state = build_coherent(
        CoherentSpec(z, FockSpaceConfig(2, 10, params)), tail_tol=math.inf
    )
    first = check_eigenvalue(state, 1)
    second = check_eigenvalue(state, 2)
    assert first.norm_ratio == pytest.approx(
        math.sqrt(1.0 - (1.0 - params.q_sq) * abs(z[1]) ** 2)
    )
    assert second.norm_ratio == 1.0


def test_uncompensated_eigenvalue_relation_visibly_fails():
    # dropping the norm-ratio compensation leaves an order 1e-2 residual:
    # the shifted state is normalized differently from a_i |z>
    from qmodes.fock import annihilator

    params = DeformationParams(0.5)
    z = (0.9, 0.5j)
    cutoff = suggest_cutoff(params, z, tail_tol=1e-14)
    cfg = FockSpaceConfig(2, cutoff, params)
    state = build_coherent(CoherentSpec(z, cfg), tail_tol=1e-14)
    shifted = build_coherent(CoherentSpec(z, cfg).shifted(1), tail_tol=1e-14)
    naive = float(np.linalg.norm(annihilator(cfg, 1) @ state.vector - z[0] * shifted.vector))
    compensated = check_eigenvalue(state, 1).residual
    assert naive > 1e-3
    assert compensated < 1e-6


# ---------------------------------------------------------------------------
# completeness adjudication


@pytest.mark.parametrize("q", Q_GRID)
def test_completeness_holds_for_squared_weight(q):
    cfg = FockSpaceConfig(1, 8, DeformationParams(q))
    report = check_completeness(cfg, tol=1e-10)
    assert report.passed
    assert report.max_deviation < 1e-12
    assert len(report.deviations) == cfg.cutoff - 1
    assert report.consistent_variant is WeightVariant.SQUARED_Q
    assert report.alternate_max_deviation > 0.1


def test_completeness_rejects_plain_weight():
    cfg = FockSpaceConfig(1, 8, DeformationParams(0.5))
    report = check_completeness(cfg, tol=1e-10, variant=WeightVariant.PAPER_Q)
    assert not report.passed
    assert report.consistent_variant is WeightVariant.SQUARED_Q
    assert report.max_deviation == pytest.approx(0.39, abs=0.05)


def test_completeness_mode_guard():
    cfg = FockSpaceConfig(3, 4, DeformationParams(0.5))
    with pytest.raises(ValueError):
        check_completeness(cfg)


# ---------------------------------------------------------------------------
# deterministic spec grids


def test_spec_grid_is_deterministic_and_in_domain():
    params = DeformationParams(0.9)
    first = spec_grid(params, modes=2, points=6)
    second = spec_grid(params, modes=2, points=6)
    assert [s.z for s in first] == [s.z for s in second]
    assert len(first) == 6
    for spec in first:
        for v in spec.z:
            assert abs(v) ** 2 <= 0.8 * params.radius + 1e-12
        state = build_coherent(spec)
        assert state.tail_mass <= 1e-10


def test_spec_grid_respects_pinned_cutoff():
    params = DeformationParams(0.5)
    specs = spec_grid(params, modes=1, points=3, cutoff=40)
    assert all(s.cfg.cutoff == 40 for s in specs)


def test_spec_grid_input_checks():
    params = DeformationParams(0.5)
    with pytest.raises(ValueError):
        spec_grid(params, modes=0, points=3)
    with pytest.raises(ValueError):
        spec_grid(params, modes=1, points=0)
