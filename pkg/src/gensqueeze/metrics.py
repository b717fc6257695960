"""Nonclassicality diagnostics: quadrature variances and the Mandel parameter.

Quadratures are built from the deformed ladder operators,
``Q = (A + A+)/sqrt(2)`` and ``P = (A - A+)/(sqrt(2) i)``, so that
``[Q, P] = i [A, A+]`` with ``[A, A+] |n> = (k(n+1) - k(n)) |n>``.  Because
the commutator is not a c-number, squeezing is judged against the
state-dependent bound ``1/2 |<[Q, P]>|`` rather than the vacuum variance.

The Mandel parameter uses the plain photon number ``n = a+ a``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import GenSqueezeError, TruncationTooTight, UndefinedMandel
from .spectrum import SpectrumModel, k_values
from .states import StateParams, StateVector, scaled_coefficients

__all__ = [
    "QuadratureReport",
    "MandelReport",
    "SweepRow",
    "ladder_matrix",
    "quadrature_matrices",
    "quadrature_report",
    "commutator_from_matrices",
    "commutator_from_spectrum",
    "mandel_report",
    "sweep",
    "squeezing_sweep",
    "mandel_sweep",
    "SWEEP_COLUMNS",
]

# relative weight the top two coefficients may carry in <Q^2> + <P^2>
TRUNCATION_GUARD = 1e-8
# relative margin below the bound before a quadrature counts as squeezed
SQUEEZE_TOL = 1e-9


@dataclass(frozen=True)
class QuadratureReport:
    dQ: float
    dP: float
    bound: float
    dQ0: float
    dP0: float
    bound0: float
    product_gap: float

    @property
    def squeezed_quadrature(self) -> str:
        """``"Q"``, ``"P"`` or ``"none"`` relative to the state's own bound."""
        limit = self.bound * (1 - SQUEEZE_TOL)
        if self.dQ**2 < limit:
            return "Q"
        if self.dP**2 < limit:
            return "P"
        return "none"

    @property
    def squeeze_ratio(self) -> float:
        """``min(dQ^2, dP^2) / bound``; below one means squeezing."""
        return min(self.dQ**2, self.dP**2) / self.bound


@dataclass(frozen=True)
class MandelReport:
    mean_n: float
    var_n: float
    Q: float


def _coeffs_and_model(state, model):
    if isinstance(state, StateVector):
        return np.asarray(state.coeffs, dtype=complex), state.model
    if model is None:
        raise TypeError("a SpectrumModel is required for raw coefficient vectors")
    return np.asarray(state, dtype=complex), model


def ladder_matrix(model: SpectrumModel, dim: int) -> np.ndarray:
    """Dense ``dim x dim`` matrix of A with ``A[n-1, n] = sqrt(k(n))``."""
    sk = np.sqrt(k_values(model, np.arange(1, dim)))
    return np.diag(sk.astype(complex), 1)


def quadrature_matrices(model: SpectrumModel, dim: int):
    A = ladder_matrix(model, dim)
    Ad = A.conj().T
    return (A + Ad) / math.sqrt(2), (A - Ad) / (math.sqrt(2) * 1j)


def _moments(psi, Q, P):
    Qpsi, Ppsi = Q @ psi, P @ psi
    eQ = np.vdot(psi, Qpsi).real
    eP = np.vdot(psi, Ppsi).real
    eQ2 = np.vdot(Qpsi, Qpsi).real
    eP2 = np.vdot(Ppsi, Ppsi).real
    return eQ2 - eQ**2, eP2 - eP**2


def _commutator_mean(probs, model):
    n = np.arange(len(probs))
    return float(probs @ (k_values(model, n + 1) - k_values(model, n)))


def quadrature_report(state, model: SpectrumModel = None) -> QuadratureReport:
    """Quadrature variances, generalized uncertainty bound and vacuum references.

    ``state`` is a :class:`StateVector` or a normalized coefficient vector
    (then ``model`` is required).  Matrices are assembled at size ``N + 3`` so
    that ``Q^2`` and ``P^2`` reach ``n +- 2`` without clipping.

    Raises
    ------
    TruncationTooTight
        If the two highest retained coefficients carry more than
        ``TRUNCATION_GUARD`` of ``<Q^2> + <P^2>``, or a tabulated spectrum
        ends before ``k(N + 2)``.
    """
    c, model = _coeffs_and_model(state, model)
    N = len(c) - 1
    if N + 2 > model.max_n:
        # Q^2 and P^2 reach n + 2, past the last tabulated k
        raise TruncationTooTight(f"second moments need k({N + 2}) but the spectrum ends at k({model.max_n})")
    probs = np.abs(c) ** 2
    n = np.arange(N + 1)
    second = probs * (k_values(model, n) + k_values(model, n + 1))
    total = second.sum()
    if total > 0 and second[-2:].sum() > TRUNCATION_GUARD * total:
        raise TruncationTooTight(
            f"top coefficients carry {second[-2:].sum() / total:.2e} of the second moments at N={N}"
        )

    dim = N + 3
    Q, P = quadrature_matrices(model, dim)
    psi = np.zeros(dim, dtype=complex)
    psi[: N + 1] = c
    varQ, varP = _moments(psi, Q, P)
    bound = 0.5 * abs(_commutator_mean(probs, model))

    vac = np.zeros(dim, dtype=complex)
    vac[0] = 1.0
    varQ0, varP0 = _moments(vac, Q, P)
    bound0 = 0.5 * abs(_commutator_mean(np.ones(1), model))

    dQ, dP = math.sqrt(max(varQ, 0.0)), math.sqrt(max(varP, 0.0))
    return QuadratureReport(
        dQ=dQ,
        dP=dP,
        bound=bound,
        dQ0=math.sqrt(varQ0),
        dP0=math.sqrt(varP0),
        bound0=bound0,
        product_gap=dQ * dP - bound,
    )


def commutator_from_matrices(state, model: SpectrumModel = None) -> complex:
    """``<[Q, P]>`` from explicitly assembled Q and P matrices."""
    c, model = _coeffs_and_model(state, model)
    dim = len(c) + 2
    Q, P = quadrature_matrices(model, dim)
    psi = np.zeros(dim, dtype=complex)
    psi[: len(c)] = c
    return complex(np.vdot(psi, (Q @ P - P @ Q) @ psi))


def commutator_from_spectrum(state, model: SpectrumModel = None) -> complex:
    """``<[Q, P]> = i sum |c_n|^2 (k(n+1) - k(n))``."""
    c, model = _coeffs_and_model(state, model)
    return 1j * _commutator_mean(np.abs(c) ** 2, model)


def mandel_report(state) -> MandelReport:
    """Mandel parameter ``var(n)/<n> - 1`` of a state or coefficient vector."""
    c = state.coeffs if isinstance(state, StateVector) else np.asarray(state)
    p = np.abs(c) ** 2
    n = np.arange(len(p))
    mean_n = float(p @ n)
    if mean_n < 1e-14:
        raise UndefinedMandel(f"<n> = {mean_n:.3e}; Mandel parameter undefined")
    var_n = max(float(p @ n**2) - mean_n**2, 0.0)
    return MandelReport(mean_n=mean_n, var_n=var_n, Q=var_n / mean_n - 1)


SWEEP_COLUMNS = (
    "alpha_re",
    "alpha_im",
    "xi_re",
    "xi_im",
    "dQ",
    "dP",
    "bound",
    "dQ0",
    "dP0",
    "product_gap",
    "squeezed_quadrature",
    "mandel_Q",
    "mean_n",
    "N_used",
    "status",
)


@dataclass
class SweepRow:
    """One (alpha, xi) point of a sweep; failed rows carry NaNs and ``error``."""

    alpha: complex
    xi: complex
    dQ: float = math.nan
    dP: float = math.nan
    bound: float = math.nan
    dQ0: float = math.nan
    dP0: float = math.nan
    product_gap: float = math.nan
    squeezed_quadrature: str = "none"
    mandel_Q: float = math.nan
    mean_n: float = math.nan
    N_used: int = -1
    tail_mass: float = math.nan
    status: str = "ok"
    error: str = ""
    squeeze_ratio: float = math.nan

    def as_record(self) -> dict:
        rec = asdict(self)
        a, x = rec.pop("alpha"), rec.pop("xi")
        rec.update(alpha_re=a.real, alpha_im=a.imag, xi_re=x.real, xi_im=x.imag)
        return rec


def _row(model, alpha, xi, truncation, tail_tolerance):
    row = SweepRow(alpha=complex(alpha), xi=complex(xi))
    try:
        state = scaled_coefficients(
            model, StateParams(alpha, xi, truncation=truncation, tail_tolerance=tail_tolerance)
        )
        row.N_used, row.tail_mass, row.mean_n = state.n_used, state.tail_mass, state.mean_n
        rep = quadrature_report(state)
    except GenSqueezeError as exc:
        row.status, row.error = "failed", f"{type(exc).__name__}: {exc}"
        return row
    row.dQ, row.dP, row.bound = rep.dQ, rep.dP, rep.bound
    row.dQ0, row.dP0, row.product_gap = rep.dQ0, rep.dP0, rep.product_gap
    row.squeezed_quadrature = rep.squeezed_quadrature
    row.squeeze_ratio = rep.squeeze_ratio
    try:
        row.mandel_Q = mandel_report(state).Q
    except UndefinedMandel:
        pass
    return row


def sweep(
    model: SpectrumModel,
    alphas: Iterable[complex],
    xis: Sequence[complex],
    *,
    truncation: int = 512,
    tail_tolerance: float = 1e-12,
    threads: int = 1,
) -> list:
    """Quadrature and Mandel diagnostics over the product ``xis x alphas``.

    Rows are ordered by ``xi`` first, then ``alpha``.  Errors in one row do
    not stop the sweep; the row is returned with ``status == "failed"``.
    """
    alphas = list(alphas)
    points = [(a, x) for x in xis for a in alphas]
    if not points:
        raise ValueError("sweep needs at least one alpha and one xi")

    def work(p):
        return _row(model, p[0], p[1], truncation, tail_tolerance)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(work, points))
    return [work(p) for p in points]


def squeezing_sweep(model: SpectrumModel, alphas, xi: complex, **kwargs) -> list:
    """One :class:`SweepRow` per alpha at fixed ``xi``."""
    return sweep(model, alphas, [xi], **kwargs)


def mandel_sweep(model: SpectrumModel, alphas, xis, **kwargs) -> dict:
    """Mandel parameter curves, ``{xi: ndarray}`` aligned with ``alphas``."""
    alphas = list(alphas)
    rows = sweep(model, alphas, list(xis), **kwargs)
    out = {}
    for i, xi in enumerate(xis):
        out[xi] = np.array([r.mandel_Q for r in rows[i * len(alphas) : (i + 1) * len(alphas)]])
    return out
