"""Wigner quasi-probability of Fock-basis density matrices.

With ``x = 4|z|^2`` the Wigner function is ``W(z) = sum_{m1,m2} Phi[m1, m2]``,

    Phi[m, m+d] = C[m, m+d] e^{-x/2} (2z)^d (-1)^m sqrt(m!/(m+d)!) L_m^d(x)

and ``Phi[m+d, m]`` the same with ``z -> z*``.  In this convention the vacuum
is ``exp(-2|z|^2)`` and ``(2/pi) \\int W d^2z = tr(rho)``.

Two kernels are provided.  :func:`wigner_naive` evaluates every term of the
double sum independently.  :func:`wigner_fast` visits each upper pair once,
``W = sum_m Phi[m,m] + 2 sum_{m1<m2} Re Phi[m1,m2]`` (valid for Hermitian
``C``), and shares the Laguerre recurrence and the powers of ``2z`` between
all pairs on the same diagonal.

Nothing is evaluated in factored form: ``e^{2|z|^2} e^{-4|z|^2}`` is fused
to ``e^{-x/2}``, factorial ratios are accumulated as running sums of
logarithms, and the normalised Laguerre recurrence is periodically rescaled
so that large grids and large Fock cut-offs neither overflow nor underflow.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import trapezoid

from .errors import NonHermitianInput
from .states import StateVector

__all__ = [
    "DensityMatrix",
    "WignerGrid",
    "NegativitySummary",
    "f_kernel",
    "wigner_naive",
    "wigner_naive_grid",
    "wigner_fast",
    "negativity_summary",
    "default_grid",
    "benchmark",
]

HERMITIAN_TOL = 1e-10
_RENORM = 1e150
_LOG_RENORM = math.log(_RENORM)
_RENORM_EVERY = 8
# clamp for log|2z| at the origin; exp(d * log) underflows to zero for d >= 2
_TINY = 1e-300


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace matrix ``C[m1, m2] = <m1|rho|m2>``.

    ``tail_mass`` is carried through to Wigner grids as a truncation
    diagnostic when the matrix comes from a truncated state.
    """

    C: np.ndarray
    tail_mass: float = 0.0

    def __post_init__(self):
        C = np.array(self.C, dtype=complex)
        if C.ndim != 2 or C.shape[0] != C.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {C.shape}")
        herm = np.max(np.abs(C - C.conj().T)) if C.size else 0.0
        if herm > 1e-12:
            raise NonHermitianInput(f"max |C - C^H| = {herm:.3e}")
        tr = np.trace(C).real
        if abs(tr - 1) > 1e-12:
            raise ValueError(f"trace must be 1, got {tr!r}")
        C.setflags(write=False)
        object.__setattr__(self, "C", C)

    @property
    def dim(self) -> int:
        return self.C.shape[0]

    @classmethod
    def from_state(cls, state) -> "DensityMatrix":
        """Pure state ``|c><c|`` from a :class:`StateVector` or coefficient vector."""
        tail = 0.0
        if isinstance(state, StateVector):
            tail = state.tail_mass
            state = state.coeffs
        c = np.asarray(state, dtype=complex)
        c = c / np.linalg.norm(c)
        return cls(np.outer(c, c.conj()), tail_mass=tail)

    @classmethod
    def fock(cls, m: int, dim: int = None) -> "DensityMatrix":
        dim = m + 1 if dim is None else dim
        C = np.zeros((dim, dim))
        C[m, m] = 1.0
        return cls(C)

    @classmethod
    def diagonal(cls, probs) -> "DensityMatrix":
        """Incoherent mixture of Fock states with the given weights."""
        return cls(np.diag(np.asarray(probs, dtype=float)))

    def is_psd(self, tol: float = 1e-12) -> bool:
        return bool(np.linalg.eigvalsh(self.C).min() >= -tol)

    @property
    def mean_n(self) -> float:
        return float(np.real(np.diag(self.C)) @ np.arange(self.dim))


@dataclass
class WignerGrid:
    """Wigner values on a rectangular grid.

    ``values[i, j]`` is ``W(re_z[j] + 1j * im_z[i])``.  ``integral`` is the
    trapezoidal estimate of ``(2/pi) \\int W d^2z``.
    """

    re_z: np.ndarray
    im_z: np.ndarray
    values: np.ndarray
    kernel: str
    eval_time: float
    min_value: float = field(init=False)
    integral: float = field(init=False)
    imag_residue: float = 0.0
    tail_mass: float = 0.0
    threads: int = 1

    def __post_init__(self):
        self.min_value = float(np.min(self.values))
        self.integral = float(2 / np.pi * _integrate(self.values, self.re_z, self.im_z))

    @property
    def eval_ms(self) -> float:
        return 1e3 * self.eval_time

    def at(self, z: complex) -> float:
        """Value at the grid node nearest to ``z``."""
        j = int(np.argmin(np.abs(self.re_z - z.real)))
        i = int(np.argmin(np.abs(self.im_z - z.imag)))
        return float(self.values[i, j])


@dataclass(frozen=True)
class NegativitySummary:
    min_value: float
    negative_volume: float


def _integrate(values, re, im):
    return trapezoid(trapezoid(values, re, axis=1), im)


def _polar(z):
    z = np.asarray(z, dtype=complex)
    r = np.abs(z)
    x = 4.0 * r * r
    log2z = np.log(np.maximum(2.0 * r, _TINY))
    phase = np.where(r > 0, z / np.where(r > 0, r, 1.0), 1.0 + 0j)
    return x, log2z, phase


def _pair(m, d, x, log2z, phase):
    """Fused kernel ``e^{2|z|^2} F[m, m+d](z)`` as ``(w, shift, phase**d)``.

    The true value is ``phase**d * exp(shift) * w`` with real ``w``.  The
    recurrence runs on ``(-1)^m sqrt(m! d!/(m+d)!) L_m^d(x)``, which keeps
    the sign of the kernel and stays bounded for ``x`` inside the
    oscillatory region.
    """
    shift = -0.5 * x
    for j in range(1, d + 1):
        shift = shift + log2z - 0.5 * math.log(j)
    w_prev = np.zeros_like(x)
    w = np.ones_like(x)
    for j in range(m):
        w_next = ((x - (2 * j + 1 + d)) * w - math.sqrt(j * (j + d)) * w_prev) / math.sqrt(
            (j + 1) * (j + 1 + d)
        )
        w_prev, w = w, w_next
        if (j + 1) % _RENORM_EVERY == 0:
            big = np.abs(w) > _RENORM
            if big.any():
                w = np.where(big, w / _RENORM, w)
                w_prev = np.where(big, w_prev / _RENORM, w_prev)
                shift = np.where(big, shift + _LOG_RENORM, shift)
    return w, shift, phase**d


def _fused(m1, m2, x, log2z, phase):
    if m2 >= m1:
        w, shift, ph = _pair(m1, m2 - m1, x, log2z, phase)
    else:
        w, shift, ph = _pair(m2, m1 - m2, x, log2z, phase.conj())
    return ph * np.exp(shift) * w


def f_kernel(m1: int, m2: int, z) -> np.ndarray:
    """Kernel ``F[m1, m2](z)`` including its ``e^{-4|z|^2}`` factor.

    Vectorised over ``z``; ``f_kernel(m1, m2, z) == conj(f_kernel(m2, m1, z))``.
    """
    if m1 < 0 or m2 < 0:
        raise ValueError("Fock indices must be non-negative")
    x, log2z, phase = _polar(z)
    out = _fused(m1, m2, x, log2z, phase) * np.exp(-0.5 * x)
    return out if out.ndim else complex(out)


def _as_matrix(rho):
    if isinstance(rho, DensityMatrix):
        return rho.C, rho.tail_mass
    C = np.asarray(rho, dtype=complex)
    if C.ndim != 2 or C.shape[0] != C.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {C.shape}")
    return C, 0.0


def _naive_points(C, z):
    x, log2z, phase = _polar(z)
    total = np.zeros(x.shape, dtype=complex)
    n = C.shape[0]
    for m1 in range(n):
        for m2 in range(n):
            total += C[m1, m2] * _fused(m1, m2, x, log2z, phase)
    return total


def _fast_points(C, z):
    x, log2z, phase = _polar(z)
    n = C.shape[0]
    W = np.zeros(x.shape)
    lead = -0.5 * x
    ph = np.ones(x.shape, dtype=complex)
    for d in range(n):
        if d:
            lead = lead + log2z - 0.5 * math.log(d)
            ph = ph * phase
        shift = lead
        w_prev = np.zeros_like(x)
        w = np.ones_like(x)
        diag = np.diagonal(C, d)
        acc_re = diag[0].real * w
        acc_im = diag[0].imag * w
        for j in range(n - d - 1):
            w_next = ((x - (2 * j + 1 + d)) * w - math.sqrt(j * (j + d)) * w_prev) / math.sqrt(
                (j + 1) * (j + 1 + d)
            )
            w_prev, w = w, w_next
            acc_re += diag[j + 1].real * w
            acc_im += diag[j + 1].imag * w
            if (j + 1) % _RENORM_EVERY == 0:
                big = np.abs(w) > _RENORM
                if big.any():
                    w = np.where(big, w / _RENORM, w)
                    w_prev = np.where(big, w_prev / _RENORM, w_prev)
                    acc_re = np.where(big, acc_re / _RENORM, acc_re)
                    acc_im = np.where(big, acc_im / _RENORM, acc_im)
                    shift = np.where(big, shift + _LOG_RENORM, shift)
        term = np.exp(shift) * (ph.real * acc_re - ph.imag * acc_im)
        W += term if d == 0 else 2.0 * term
    return W


def _chunked(fn, C, z, threads):
    z = np.asarray(z, dtype=complex)
    flat = z.ravel()
    if threads <= 1 or flat.size < 2 * threads:
        return fn(C, flat).reshape(z.shape)
    parts = np.array_split(flat, threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        out = list(pool.map(lambda p: fn(C, p), parts))
    return np.concatenate(out).reshape(z.shape)


def wigner_naive(rho, z, *, threads: int = 1, return_residue: bool = False):
    """Reference kernel: every ``Phi[m1, m2]`` of the double sum, one at a time.

    Returns the real part of the sum (same shape as ``z``).  With
    ``return_residue=True`` also returns the largest imaginary part seen.
    """
    C, _ = _as_matrix(rho)
    total = _chunked(_naive_points, C, z, threads)
    W = total.real if total.ndim else float(total.real)
    if return_residue:
        return W, float(np.max(np.abs(total.imag)))
    return W


def _mesh(re_z, im_z):
    re_z = np.asarray(re_z, dtype=float)
    im_z = np.asarray(im_z, dtype=float)
    return re_z, im_z, re_z[None, :] + 1j * im_z[:, None]


def wigner_naive_grid(rho, re_z, im_z, *, threads: int = 1) -> WignerGrid:
    C, tail = _as_matrix(rho)
    re_z, im_z, Z = _mesh(re_z, im_z)
    t0 = time.perf_counter()
    W, residue = wigner_naive(C, Z, threads=threads, return_residue=True)
    elapsed = time.perf_counter() - t0
    return WignerGrid(re_z, im_z, W, "naive", elapsed, imag_residue=residue, tail_mass=tail, threads=threads)


def wigner_fast(rho, re_z, im_z, *, threads: int = 1) -> WignerGrid:
    """Hermitian-decomposition kernel on the grid ``re_z x im_z``.

    Raises
    ------
    NonHermitianInput
        If ``C`` deviates from Hermitian by more than ``HERMITIAN_TOL``; the
        decomposition would silently drop the anti-Hermitian part.
    """
    C, tail = _as_matrix(rho)
    if C.size:
        herm = float(np.max(np.abs(C - C.conj().T)))
        if herm > HERMITIAN_TOL:
            raise NonHermitianInput(f"max |C - C^H| = {herm:.3e} exceeds {HERMITIAN_TOL}")
    re_z, im_z, Z = _mesh(re_z, im_z)
    t0 = time.perf_counter()
    W = _chunked(_fast_points, C, Z, threads)
    elapsed = time.perf_counter() - t0
    return WignerGrid(re_z, im_z, W, "fast", elapsed, tail_mass=tail, threads=threads)


def negativity_summary(grid: WignerGrid) -> NegativitySummary:
    """Minimum of W and the integral of ``|W|`` over the region ``W < 0``."""
    neg = np.minimum(grid.values, 0.0)
    return NegativitySummary(
        min_value=grid.min_value,
        negative_volume=float(-_integrate(neg, grid.re_z, grid.im_z)),
    )


def default_grid(mean_n: float = 0.0, points: int = 201, radius: float = None):
    """Square grid of half-width ``max(4, 2 + 2 sqrt(<n>))`` unless given."""
    if radius is None:
        radius = max(4.0, 2.0 + 2.0 * math.sqrt(max(mean_n, 0.0)))
    axis = np.linspace(-radius, radius, points)
    return axis, axis.copy()


def benchmark(rho, re_z, im_z, *, threads: int = 1, repeats: int = 1) -> dict:
    """Time both kernels on the same grid; best of ``repeats`` runs each."""
    C, _ = _as_matrix(rho)
    naive = min((wigner_naive_grid(C, re_z, im_z, threads=threads) for _ in range(repeats)), key=lambda g: g.eval_time)
    fast = min((wigner_fast(C, re_z, im_z, threads=threads) for _ in range(repeats)), key=lambda g: g.eval_time)
    return {
        "N": C.shape[0] - 1,
        "grid": [len(re_z), len(im_z)],
        "threads": threads,
        "naive_ms": naive.eval_ms,
        "fast_ms": fast.eval_ms,
        "speedup": naive.eval_time / fast.eval_time,
        "max_abs_diff": float(np.max(np.abs(naive.values - fast.values))),
    }
