"""Fock-basis construction of generalized squeezed states.

A generalized squeezed state solves ``(A + xi A+) |alpha, xi> = alpha |alpha, xi>``
for the deformed ladder operators of a :class:`~gensqueeze.spectrum.SpectrumModel`.
Writing ``|alpha, xi> ∝ sum_n J(n) / sqrt(k(n)!) |n>`` gives the three-term
recurrence

    J(n+1) = alpha J(n) - xi k(n) J(n-1),   J(0) = 1,  J(1) = alpha.

Three independent routes are provided:

* :func:`recurrence_J` / :func:`closed_form_J` evaluate ``J`` itself, the
  second by the explicit nested sums ``g(n, m)``;
* :func:`scaled_coefficients` is the production path: it recurs directly on
  ``J(n) / sqrt(k(n)!)`` so nothing overflows, and truncates adaptively;
* :func:`ho_hermite_coefficients` is the closed form for ``k(n) = n``.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidXi, NonConvergent
from .spectrum import SpectrumModel, k_values

__all__ = [
    "StateParams",
    "StateVector",
    "IdentityReport",
    "xi_from_delta",
    "recurrence_J",
    "closed_form_g",
    "closed_form_J",
    "scaled_recurrence",
    "scaled_coefficients",
    "ho_hermite_coefficients",
    "eigen_residual",
    "appendix_identity_check",
]

DEFAULT_TRUNCATION = 512
DEFAULT_TAIL_TOLERANCE = 1e-12
# number of trailing coefficients whose weight defines the tail estimate
TAIL_WINDOW = 5
_RESCALE_AT = 1e150


@dataclass(frozen=True)
class StateParams:
    """Parameters of one squeezed state.

    ``truncation`` is the hard cap on the Fock index; the expansion usually
    stops earlier, as soon as the tail estimate drops below
    ``tail_tolerance``.
    """

    alpha: complex
    xi: complex = 0.0
    truncation: int = DEFAULT_TRUNCATION
    tail_tolerance: float = DEFAULT_TAIL_TOLERANCE

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "xi", complex(self.xi))
        if not (cmath.isfinite(self.alpha) and cmath.isfinite(self.xi)):
            raise ValueError("alpha and xi must be finite")
        if abs(self.xi) >= 1:
            raise InvalidXi(f"|xi| must be < 1, got |xi| = {abs(self.xi)}")
        if int(self.truncation) != self.truncation or self.truncation < 2:
            raise ValueError("truncation must be an integer >= 2")
        object.__setattr__(self, "truncation", int(self.truncation))
        if not 0 < self.tail_tolerance < 1:
            raise ValueError("tail_tolerance must lie in (0, 1)")


@dataclass(frozen=True)
class StateVector:
    """Normalized, truncated Fock coefficients ``c_0 .. c_N``.

    Attributes
    ----------
    coeffs : ndarray of complex
        Read-only coefficient vector with unit 2-norm.
    norm_constant : float
        Norm of the unnormalized series ``sum J(n)/sqrt(k(n)!) |n>``; may be
        ``inf`` for very large ``|alpha|``, in which case
        ``log_norm_constant`` still holds the exact value.
    tail_mass : float
        Weight of the last few retained coefficients relative to the total;
        an estimate of the discarded mass.
    """

    coeffs: np.ndarray
    params: StateParams
    model: SpectrumModel
    norm_constant: float
    tail_mass: float
    log_norm_constant: float = field(default=0.0, repr=False)

    @property
    def n_used(self) -> int:
        return len(self.coeffs) - 1

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.coeffs) ** 2

    @property
    def mean_n(self) -> float:
        return float(self.probabilities @ np.arange(len(self.coeffs)))

    def padded(self, size: int) -> np.ndarray:
        """Coefficients zero-padded to ``size`` entries."""
        out = np.zeros(size, dtype=complex)
        out[: len(self.coeffs)] = self.coeffs
        return out


def xi_from_delta(delta: complex) -> complex:
    """Map the squeezing amplitude delta to ``xi = (delta/|delta|) tanh|delta|``."""
    delta = complex(delta)
    r = abs(delta)
    if r == 0:
        return 0j
    return delta / r * math.tanh(r)


def recurrence_J(model: SpectrumModel, alpha: complex, xi: complex, n_max: int) -> np.ndarray:
    """``J(0) .. J(n_max)`` from the raw three-term recurrence.

    The values grow super-exponentially for growing ``k(n)``; a
    ``RuntimeWarning`` is issued if they leave the floating-point range.
    Use :func:`scaled_coefficients` for anything but small ``n``.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    kv = k_values(model, np.arange(n_max))
    J = np.empty(n_max + 1, dtype=complex)
    J[0] = 1.0
    J[1] = alpha
    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(1, n_max):
            J[n + 1] = alpha * J[n] - xi * kv[n] * J[n - 1]
    if not np.all(np.isfinite(J)):
        warnings.warn("recurrence overflowed the floating-point range", RuntimeWarning, stacklevel=2)
    return J


def closed_form_g(model: SpectrumModel, n: int, m: int, *, max_n: int = 20) -> float:
    """Nested sum ``g(n, m) = sum k(j_1) ... k(j_m)``.

    The indices run over ``1 <= j_1``, ``j_{i+1} >= j_i + 2`` and
    ``j_i <= n - 2m + 2i - 1``; ``g(n, 0) = 1``.  The cost grows like
    ``binom(n - m, m)``, so this is a verification oracle only and refuses
    ``n > max_n`` unless asked.
    """
    if n < 0 or not 0 <= m <= n // 2:
        raise ValueError(f"g(n, m) needs 0 <= m <= floor(n/2), got n={n}, m={m}")
    if n > max_n:
        raise ValueError(f"closed_form_g capped at n <= {max_n}; pass max_n to override")
    if m == 0:
        return 1.0
    kv = k_values(model, np.arange(n)).tolist()

    def nested(i, lo):
        hi = n - 2 * m + 2 * i - 1
        if i == m:
            return sum(kv[lo : hi + 1])
        return sum(kv[j] * nested(i + 1, j + 2) for j in range(lo, hi + 1))

    return float(nested(1, 1))


def closed_form_J(model: SpectrumModel, alpha: complex, xi: complex, n: int, *, max_n: int = 20) -> complex:
    """``J(n) = sum_m (-xi)**m alpha**(n-2m) g(n, m)`` for ``m <= floor(n/2)``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    alpha, xi = complex(alpha), complex(xi)
    return sum(
        (-xi) ** m * alpha ** (n - 2 * m) * closed_form_g(model, n, m, max_n=max_n)
        for m in range(n // 2 + 1)
    )


def scaled_recurrence(model: SpectrumModel, alpha: complex, xi: complex, n: int) -> np.ndarray:
    """Unnormalized coefficients ``J(j)/sqrt(k(j)!)`` for ``j = 0 .. n``.

    Fixed length, no truncation logic, no rescaling; mainly for convergence
    studies at prescribed ``n``.
    """
    sk = np.sqrt(k_values(model, np.arange(n + 1)))
    c = np.zeros(n + 1, dtype=complex)
    c[0] = 1.0
    if n >= 1:
        c[1] = alpha / sk[1]
    for j in range(1, n):
        c[j + 1] = (alpha * c[j] - xi * sk[j] * c[j - 1]) / sk[j + 1]
    return c


def scaled_coefficients(model: SpectrumModel, params: StateParams) -> StateVector:
    """Build the normalized state ``|alpha, xi>`` with adaptive truncation.

    Recurs on ``c~(n) = J(n)/sqrt(k(n)!)``::

        c~(n+1) = (alpha c~(n) - xi sqrt(k(n)) c~(n-1)) / sqrt(k(n+1))

    and stops at the first ``N`` where the last ``TAIL_WINDOW`` terms carry
    at most ``params.tail_tolerance`` of the accumulated weight.

    Raises
    ------
    InvalidXi
        If ``|xi| >= 1``.
    NonConvergent
        If the tail criterion is still unmet at ``params.truncation`` (or at
        the end of a tabulated spectrum).  The partial state is attached as
        ``exc.state``.
    """
    if abs(params.xi) >= 1:
        raise InvalidXi(f"|xi| must be < 1, got {abs(params.xi)}")
    alpha, xi, eps = params.alpha, params.xi, params.tail_tolerance
    cap = int(min(params.truncation, model.max_n))
    sk = np.sqrt(k_values(model, np.arange(cap + 1)))

    c = np.zeros(cap + 1, dtype=complex)
    c[0] = 1.0
    c[1] = alpha / sk[1]
    total = 1.0 + abs(c[1]) ** 2
    log_scale = 0.0
    tail = 1.0
    last = cap
    for n in range(1, cap):
        c[n + 1] = (alpha * c[n] - xi * sk[n] * c[n - 1]) / sk[n + 1]
        total += abs(c[n + 1]) ** 2
        if abs(c[n + 1]) > _RESCALE_AT:
            c[: n + 2] /= _RESCALE_AT
            total /= _RESCALE_AT**2
            log_scale += math.log(_RESCALE_AT)
        if n + 2 > TAIL_WINDOW:
            window = c[n + 2 - TAIL_WINDOW : n + 2]
            tail = float(np.sum(np.abs(window) ** 2) / total)
            if tail <= eps:
                last = n + 1
                break
    c = c[: last + 1]
    norm = float(np.linalg.norm(c))
    log_norm = math.log(norm) + log_scale
    coeffs = c / norm
    coeffs.setflags(write=False)
    state = StateVector(
        coeffs=coeffs,
        params=params,
        model=model,
        norm_constant=math.exp(log_norm) if log_norm < 709 else math.inf,
        tail_mass=tail,
        log_norm_constant=log_norm,
    )
    if tail > eps:
        exc = NonConvergent(
            f"tail estimate {tail:.3e} > {eps:.1e} at N={last} "
            f"(alpha={alpha}, xi={xi}, model={model.kind.value})"
        )
        exc.state = state
        raise exc
    return state


def ho_hermite_coefficients(alpha: complex, xi: complex, n_max: int) -> np.ndarray:
    """Harmonic-oscillator coefficients from complex Hermite polynomials.

    Returns ``(xi/2)**(n/2) H_n(alpha/sqrt(2 xi)) / sqrt(n!)`` for
    ``n = 0 .. n_max`` (unnormalized), with ``H_n`` from its own three-term
    recurrence and principal square roots.  ``xi = 0`` is outside the
    formula's domain.
    """
    xi = complex(xi)
    if xi == 0:
        raise ValueError("Hermite form needs xi != 0; use the coherent-state branch")
    if abs(xi) >= 1:
        raise InvalidXi(f"|xi| must be < 1, got {abs(xi)}")
    x = complex(alpha) / cmath.sqrt(2 * xi)
    s = cmath.sqrt(xi / 2)
    H = np.empty(n_max + 1, dtype=complex)
    H[0] = 1.0
    if n_max >= 1:
        H[1] = 2 * x
    for n in range(1, n_max):
        H[n + 1] = 2 * x * H[n] - 2 * n * H[n - 1]
    n = np.arange(n_max + 1)
    inv_sqrt_fact = np.exp(-0.5 * np.array([math.lgamma(j + 1) for j in n]))
    return s**n * H * inv_sqrt_fact


def eigen_residual(state: StateVector) -> float:
    """``|| (A + xi A+) psi - alpha psi ||`` for the truncated state.

    A tabulated spectrum ends the Hilbert space at its last entry, so no
    raised component is kept beyond it.
    """
    c = state.padded(int(min(len(state.coeffs) + 1, state.model.max_n + 1)))
    sk = np.sqrt(k_values(state.model, np.arange(len(c))))
    lowered = np.zeros_like(c)
    lowered[:-1] = sk[1:] * c[1:]
    raised = np.zeros_like(c)
    raised[1:] = sk[1:] * c[:-1]
    r = lowered + state.params.xi * raised - state.params.alpha * c
    return float(np.linalg.norm(r))


@dataclass
class IdentityReport:
    """Worst relative deviation per recurrence identity.

    ``worst`` maps identity name to the ``(n, m)`` where the maximum was hit.
    """

    n_max: int
    max_deviation: dict = field(default_factory=dict)
    checked: dict = field(default_factory=dict)
    worst: dict = field(default_factory=dict)

    def passed(self, tol: float = 1e-10) -> bool:
        return all(v < tol for v in self.max_deviation.values())

    def failures(self, tol: float = 1e-10) -> dict:
        return {name: v for name, v in self.max_deviation.items() if not v < tol}

    def as_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "max_deviation": dict(self.max_deviation),
            "checked": dict(self.checked),
            "worst": {k: list(v) for k, v in self.worst.items()},
        }


def appendix_identity_check(model: SpectrumModel, n_max: int) -> IdentityReport:
    """Check the five identities that make the nested sums solve the recurrence.

    For ``1 <= n <= n_max`` (``0 <= n`` for id3) and ``1 <= m <= n-1``::

        id1  g(2n+1, 1)   = g(2n, 1)   + k(2n)
        id2  g(2n+1, m+1) = g(2n, m+1) + k(2n)   g(2n-1, m)
        id3  g(2n+2, n+1) = k(2n+1) g(2n, n)
        id4  g(2n+2, 1)   = g(2n+1, 1) + k(2n+1)
        id5  g(2n+2, m+1) = g(2n+1, m+1) + k(2n+1) g(2n, m)
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    cap = 2 * n_max + 2
    cache = {}

    def g(n, m):
        if (n, m) not in cache:
            cache[(n, m)] = closed_form_g(model, n, m, max_n=cap)
        return cache[(n, m)]

    def kk(n):
        return k_values(model, n)

    cases = {name: [] for name in ("id1", "id2", "id3", "id4", "id5")}
    for n in range(0, n_max + 1):
        cases["id3"].append(((n, n), g(2 * n + 2, n + 1), kk(2 * n + 1) * g(2 * n, n)))
        if n == 0:
            continue
        cases["id1"].append(((n, 0), g(2 * n + 1, 1), g(2 * n, 1) + kk(2 * n)))
        cases["id4"].append(((n, 0), g(2 * n + 2, 1), g(2 * n + 1, 1) + kk(2 * n + 1)))
        for m in range(1, n):
            cases["id2"].append(
                ((n, m), g(2 * n + 1, m + 1), g(2 * n, m + 1) + kk(2 * n) * g(2 * n - 1, m))
            )
            cases["id5"].append(
                ((n, m), g(2 * n + 2, m + 1), g(2 * n + 1, m + 1) + kk(2 * n + 1) * g(2 * n, m))
            )

    report = IdentityReport(n_max=n_max)
    for name, rows in cases.items():
        worst, where = 0.0, (0, 0)
        for loc, lhs, rhs in rows:
            scale = max(abs(lhs), abs(rhs), np.finfo(float).tiny)
            dev = abs(lhs - rhs) / scale
            if dev >= worst:
                worst, where = dev, loc
        report.max_deviation[name] = worst
        report.checked[name] = len(rows)
        report.worst[name] = where
    return report
