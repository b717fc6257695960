import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import eval_genlaguerre, eval_laguerre, gammaln

from gensqueeze import (
    DensityMatrix,
    NonHermitianInput,
    SpectrumModel,
    StateParams,
    benchmark,
    default_grid,
    f_kernel,
    negativity_summary,
    scaled_coefficients,
    wigner_fast,
    wigner_naive,
    wigner_naive_grid,
)
from gensqueeze.cli import random_density

HO = SpectrumModel.harmonic()
RM11 = SpectrumModel.rosen_morse(1.0, 1.0)


def kernel_oracle(m1, m2, z):
    """Closed form through scipy's generalized Laguerre polynomials."""
    z = complex(z)
    lo, d = min(m1, m2), abs(m1 - m2)
    x = 4 * abs(z) ** 2
    zz = z if m2 >= m1 else z.conjugate()
    pref = math.exp(0.5 * (gammaln(lo + 1) - gammaln(lo + d + 1)))
    return math.exp(-x) * (2 * zz) ** d * (-1) ** lo * pref * eval_genlaguerre(lo, d, x)


def fock_closed_form(m, z):
    x = 4 * np.abs(z) ** 2
    return (-1) ** m * np.exp(-x / 2) * eval_laguerre(m, x)


# kernel


def test_kernel_examples():
    z = 0.3 - 0.7j
    e = math.exp(-4 * abs(z) ** 2)
    assert f_kernel(0, 0, z) == pytest.approx(e, rel=1e-15)
    assert f_kernel(1, 1, z) == pytest.approx(-e * (1 - 4 * abs(z) ** 2), rel=1e-14)
    with pytest.raises(ValueError):
        f_kernel(-1, 0, z)


@pytest.mark.parametrize("m1,m2", [(0, 3), (3, 0), (2, 5), (7, 7), (10, 4), (12, 19)])
@pytest.mark.parametrize("z", [0.05 + 0.1j, 0.4 - 0.2j, -0.9 + 0.6j, 1.5j])
def test_kernel_matches_laguerre_oracle(m1, m2, z):
    ref = kernel_oracle(m1, m2, z)
    assert abs(f_kernel(m1, m2, z) - ref) <= 1e-12 * max(abs(ref), 1e-300)


@settings(max_examples=60, deadline=None)
@given(
    m1=st.integers(0, 25),
    m2=st.integers(0, 25),
    z=st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False),
)
def test_kernel_hermitian_pair(m1, m2, z):
    a, b = f_kernel(m1, m2, z), f_kernel(m2, m1, z)
    tol = 1e-13 * abs(a) + 1e-300
    assert abs(a - b.conjugate()) <= tol
    assert abs((a + b) - 2 * a.real) <= 2 * tol


def test_kernel_vectorised():
    z = np.array([[0.1, 0.2j], [-0.3, 1.0 + 1.0j]])
    out = f_kernel(2, 4, z)
    assert out.shape == (2, 2)
    assert out[1, 1] == pytest.approx(f_kernel(2, 4, 1.0 + 1.0j))


# closed forms


@pytest.mark.parametrize("m", range(11))
def test_fock_closed_form(m):
    rho = DensityMatrix.fock(m)
    z = np.linspace(-2.5, 2.5, 41) + 0.3j
    np.testing.assert_allclose(wigner_naive(rho, z), fock_closed_form(m, z), atol=1e-12)
    grid = wigner_fast(rho, [0.0], [0.0])
    assert grid.values[0, 0] == pytest.approx((-1) ** m, abs=1e-12)


def test_vacuum_and_fock1_examples():
    assert wigner_naive(DensityMatrix.fock(0), 0) == pytest.approx(1)
    assert wigner_naive(DensityMatrix.fock(1), 0) == pytest.approx(-1)
    re, im = default_grid(0.0, 201)
    assert re[-1] == 4.0
    assert wigner_fast(DensityMatrix.fock(0), re, im).integral == pytest.approx(1, abs=1e-3)


@pytest.mark.parametrize("alpha", [1.0, 0.5 - 1.2j, 2.0j])
def test_coherent_gaussian(alpha):
    rho = DensityMatrix.from_state(scaled_coefficients(HO, StateParams(alpha, 0, tail_tolerance=1e-16)))
    axis = np.linspace(-3, 3, 25)
    grid = wigner_fast(rho, axis, axis)
    Z = axis[None, :] + 1j * axis[:, None]
    np.testing.assert_allclose(grid.values, np.exp(-2 * np.abs(Z - alpha) ** 2), atol=1e-10)


def test_large_fock_state_far_out():
    # exercises the rescaled Laguerre recurrence: terms far beyond 1e150
    m = 300
    z = np.array([0.5, 3.0, 8.0, 12.0 + 3j])
    ref = fock_closed_form(m, z)
    got = wigner_fast(DensityMatrix.fock(m), z.real, [0.0]).values[0, :3]
    np.testing.assert_allclose(got, ref[:3], atol=1e-10)
    assert np.all(np.isfinite(wigner_fast(DensityMatrix.fock(m), [12.0, 30.0], [3.0]).values))


# fast vs naive


@pytest.mark.parametrize("seed", range(5))
def test_fast_matches_naive_random(seed):
    rng = np.random.default_rng(seed)
    rho = DensityMatrix(random_density(int(rng.integers(2, 16)), rng))
    axis = np.linspace(-3, 3, 21)
    fast = wigner_fast(rho, axis, axis)
    naive = wigner_naive_grid(rho, axis, axis)
    np.testing.assert_allclose(fast.values, naive.values, atol=1e-12)
    assert naive.imag_residue < 1e-12


def test_mixed_state_origin():
    rho = DensityMatrix.diagonal([0.5, 0.5])
    assert wigner_fast(rho, [0.0], [0.0]).values[0, 0] == pytest.approx(0, abs=1e-15)
    assert wigner_naive(rho, 0.0) == pytest.approx(0, abs=1e-15)


def test_threads_do_not_change_values():
    rho = DensityMatrix(random_density(12, np.random.default_rng(3)))
    axis = np.linspace(-3, 3, 31)
    a = wigner_fast(rho, axis, axis, threads=1).values
    b = wigner_fast(rho, axis, axis, threads=4).values
    np.testing.assert_array_equal(a, b)


def test_integral_of_squeezed_state():
    state = scaled_coefficients(RM11, StateParams(2.0, 0.4))
    re, im = default_grid(state.mean_n, 201, 6.0)
    grid = wigner_fast(DensityMatrix.from_state(state), re, im)
    assert grid.integral == pytest.approx(1, abs=1e-6)
    assert grid.tail_mass == state.tail_mass


# validation


def test_non_hermitian_rejected():
    C = np.array([[0.5, 0.1], [0.3, 0.5]])
    with pytest.raises(NonHermitianInput):
        DensityMatrix(C)
    with pytest.raises(NonHermitianInput):
        wigner_fast(C, [0.0], [0.0])


def test_trace_and_shape_checked():
    with pytest.raises(ValueError):
        DensityMatrix(np.eye(2))
    with pytest.raises(ValueError):
        DensityMatrix(np.ones(3))


def test_density_helpers():
    rho = DensityMatrix.diagonal([0.25, 0.75])
    assert rho.is_psd()
    assert rho.mean_n == 0.75
    assert DensityMatrix.fock(2, dim=5).dim == 5


# negativity and grids


def test_negativity_summaries():
    axis = np.linspace(-4, 4, 101)
    vac = negativity_summary(wigner_fast(DensityMatrix.fock(0), axis, axis))
    assert vac.min_value >= -1e-10
    assert vac.negative_volume == pytest.approx(0, abs=1e-12)
    one = negativity_summary(wigner_fast(DensityMatrix.fock(1), axis, axis))
    assert one.min_value == pytest.approx(-1, abs=1e-9)
    # closed form: int_{|z|<1/2} (1 - 4|z|^2) e^{-2|z|^2} d^2z
    exact = math.pi / 2 * (2 * math.exp(-0.5) - 1)
    assert one.negative_volume == pytest.approx(exact, rel=2e-3)


def test_default_grid_radius_rule():
    assert default_grid(0.0, 11)[0][-1] == 4.0
    assert default_grid(9.0, 11)[0][-1] == 8.0
    assert default_grid(9.0, 11, radius=3.0)[0][-1] == 3.0


def test_grid_lookup():
    grid = wigner_fast(DensityMatrix.fock(1), np.linspace(-1, 1, 21), np.linspace(-1, 1, 21))
    assert grid.at(0j) == pytest.approx(-1)
    assert grid.values.shape == (21, 21)


def test_benchmark_report_keys():
    rho = random_density(6, np.random.default_rng(0))
    rep = benchmark(rho, np.linspace(-2, 2, 9), np.linspace(-2, 2, 9))
    assert set(rep) == {"N", "grid", "threads", "naive_ms", "fast_ms", "speedup", "max_abs_diff"}
    assert rep["N"] == 5
    assert rep["max_abs_diff"] < 1e-12
