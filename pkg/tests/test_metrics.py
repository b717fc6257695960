import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from gensqueeze import (
    NonConvergent,
    SpectrumModel,
    StateParams,
    TruncationTooTight,
    UndefinedMandel,
    commutator_from_matrices,
    commutator_from_spectrum,
    k,
    mandel_report,
    mandel_sweep,
    quadrature_report,
    scaled_coefficients,
    squeezing_sweep,
    sweep,
)
from gensqueeze.metrics import SWEEP_COLUMNS, ladder_matrix

HO = SpectrumModel.harmonic()
RM11 = SpectrumModel.rosen_morse(1.0, 1.0)


def state(model, alpha, xi, **kw):
    return scaled_coefficients(model, StateParams(alpha, xi, **kw))


def test_vacuum_identity(models):
    for model in models.values():
        rep = quadrature_report([1.0, 0, 0, 0, 0], model)
        k1 = k(model, 1)
        assert rep.dQ0 == pytest.approx(math.sqrt(k1 / 2), rel=1e-15)
        assert rep.dP0 == pytest.approx(math.sqrt(k1 / 2), rel=1e-15)
        assert rep.bound0 == pytest.approx(k1 / 2, rel=1e-15)
        assert rep.dQ == pytest.approx(rep.dQ0, rel=1e-15)
        assert rep.product_gap == pytest.approx(0, abs=1e-14 * k1)


@pytest.mark.parametrize("alpha", [0.5, 1 + 2j, 3.0])
def test_ho_coherent_is_minimum_uncertainty(alpha):
    rep = quadrature_report(state(HO, alpha, 0))
    assert rep.dQ**2 == pytest.approx(0.5, abs=1e-10)
    assert rep.dP**2 == pytest.approx(0.5, abs=1e-10)
    assert rep.bound == pytest.approx(0.5, abs=1e-10)
    assert rep.squeezed_quadrature == "none"


@pytest.mark.parametrize("xi", [0.2, -0.5, 0.8])
def test_ho_squeezed_variances(xi):
    rep = quadrature_report(state(HO, 1.3, xi, tail_tolerance=1e-16))
    r = (1 - xi) / (1 + xi)
    assert rep.dQ**2 == pytest.approx(0.5 * r, rel=1e-10)
    assert rep.dP**2 == pytest.approx(0.5 / r, rel=1e-10)
    assert rep.product_gap == pytest.approx(0, abs=1e-10)
    assert rep.squeezed_quadrature == ("Q" if xi > 0 else "P")


@pytest.mark.parametrize("xi", [0.2, -0.2, 0.5, -0.5])
def test_real_xi_states_are_ideal_squeezed(models, xi):
    for name, model in models.items():
        try:
            s = state(model, 1.7, xi)
        except NonConvergent:
            continue
        rep = quadrature_report(s)
        assert rep.dQ**2 / rep.bound == pytest.approx((1 - xi) / (1 + xi), rel=1e-8), name
        assert abs(rep.product_gap) < 1e-8 * rep.bound


def test_commutator_two_ways(models):
    for model in models.values():
        for alpha, xi in [(0.3, 0.1), (2 - 1j, 0.5j), (1.0, -0.7)]:
            try:
                s = state(model, alpha, xi)
            except NonConvergent:
                continue
            a = commutator_from_matrices(s)
            b = commutator_from_spectrum(s)
            assert abs(a - b) <= 1e-12 * abs(b)
            assert abs(a.real) < 1e-12 * abs(b)


def test_ladder_matrix_layout():
    A = ladder_matrix(RM11, 4)
    assert A[0, 1] == pytest.approx(math.sqrt(185 / 36))
    assert np.count_nonzero(A) == 3


def test_truncation_guard():
    c = np.zeros(6)
    c[-1] = 1.0
    with pytest.raises(TruncationTooTight):
        quadrature_report(c, HO)
    with pytest.raises(TypeError):
        quadrature_report([1.0, 0.0])


@settings(max_examples=80, deadline=None)
@given(
    alpha=st.complex_numbers(max_magnitude=4.0, allow_nan=False, allow_infinity=False),
    xi=st.complex_numbers(max_magnitude=0.9, allow_nan=False, allow_infinity=False),
    key=st.sampled_from(["ho", "rosen_morse_b1_d1", "rosen_morse_b2_d0.5", "rosen_morse_b0_d0", "table_random"]),
)
def test_uncertainty_inequality(models, alpha, xi, key):
    try:
        rep = quadrature_report(state(models[key], alpha, xi, truncation=2048))
    except (NonConvergent, TruncationTooTight):
        assume(False)
    assert rep.product_gap >= -1e-9 * max(rep.bound, 1.0)


# Mandel


@pytest.mark.parametrize("alpha", [0.5, 2.0, 4 - 3j])
def test_mandel_coherent_is_poissonian(alpha):
    assert mandel_report(state(HO, alpha, 0)).Q == pytest.approx(0, abs=1e-8)


@pytest.mark.parametrize("m", [1, 2, 7])
def test_mandel_fock(m):
    c = np.zeros(m + 3)
    c[m] = 1
    rep = mandel_report(c)
    assert rep.Q == -1
    assert rep.mean_n == m


def test_mandel_undefined_at_vacuum():
    with pytest.raises(UndefinedMandel):
        mandel_report(state(RM11, 0, 0))
    with pytest.raises(ZeroDivisionError):
        mandel_report([1.0, 0.0])


@settings(max_examples=40, deadline=None)
@given(
    alpha=st.complex_numbers(min_magnitude=0.1, max_magnitude=4.0, allow_nan=False, allow_infinity=False),
    xi=st.complex_numbers(max_magnitude=0.8, allow_nan=False, allow_infinity=False),
    theta=st.floats(0, 2 * math.pi),
)
def test_mandel_invariant_under_joint_rotation(alpha, xi, theta):
    rot = cmath.exp(1j * theta)
    a = mandel_report(state(RM11, alpha, xi)).Q
    b = mandel_report(state(RM11, alpha * rot, xi * rot**2)).Q
    assert a == pytest.approx(b, abs=1e-10)


# sweeps


def test_sweep_layout_and_order():
    rows = sweep(RM11, [0.5, 1.0, 1.5], [0.2, -0.2])
    assert [(r.xi.real, r.alpha.real) for r in rows] == [
        (x, a) for x in (0.2, -0.2) for a in (0.5, 1.0, 1.5)
    ]
    rec = rows[0].as_record()
    assert set(SWEEP_COLUMNS) <= set(rec)
    assert {r.squeezed_quadrature for r in rows[:3]} == {"Q"}
    assert {r.squeezed_quadrature for r in rows[3:]} == {"P"}


def test_sweep_threads_match_serial():
    alphas = np.linspace(0.1, 5, 12)
    a = sweep(RM11, alphas, [0.0, 0.4], threads=1)
    b = sweep(RM11, alphas, [0.0, 0.4], threads=4)
    assert [r.as_record() for r in a] == [r.as_record() for r in b]


def test_sweep_marks_failed_rows():
    rows = squeezing_sweep(HO, [1.0, 30.0], 0.0, truncation=64)
    assert rows[0].status == "ok"
    assert rows[1].status == "failed"
    assert "NonConvergent" in rows[1].error
    assert math.isnan(rows[1].dQ)


def test_sweep_coherent_limit_rows():
    rows = squeezing_sweep(RM11, np.linspace(0, 8, 17), 0.0)
    for r in rows:
        assert r.squeezed_quadrature == "none"
        assert abs(r.dQ - r.dP) < 1e-10
        assert abs(r.product_gap) < 1e-10
    assert math.isnan(rows[0].mandel_Q)


def test_mandel_sweep_shape():
    curves = mandel_sweep(RM11, np.linspace(0.1, 3, 7), [0.0, 0.4])
    assert set(curves) == {0.0, 0.4}
    assert all(c.shape == (7,) for c in curves.values())
    assert np.all(curves[0.0] < 0)


def test_table_end_is_too_tight():
    model = SpectrumModel.tabulated(np.arange(1.0, 7.0))
    with pytest.raises(TruncationTooTight):
        quadrature_report([0.6, 0.8, 0, 0, 0, 0], model)
    assert quadrature_report([0.6, 0.8, 0, 0, 0], model).bound > 0
