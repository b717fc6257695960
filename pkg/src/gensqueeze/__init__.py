"""Generalized squeezed states for arbitrary spectra in a truncated Fock basis.

The package builds the states ``|alpha, xi>`` that solve
``(A + xi A+) |alpha, xi> = alpha |alpha, xi>`` for deformed ladder operators
defined by a spectrum function ``k(n)``, and evaluates their nonclassicality
diagnostics:

``spectrum``
    spectrum functions (harmonic oscillator, trigonometric Rosen-Morse,
    tabulated) and ladder matrix elements
``states``
    recurrence, closed-form and Hermite constructions of the Fock coefficients
``metrics``
    quadrature variances against the generalized uncertainty bound, Mandel
    parameter, parameter sweeps
``wigner``
    Wigner function on phase-space grids, naive and Hermitian-decomposition
    kernels
``cli``
    command-line runner writing CSV/JSON artifacts and run manifests
"""

__version__ = "0.1.0"

from .errors import (
    ConfigInvalid,
    GenSqueezeError,
    InvalidXi,
    InvariantBreach,
    NonConvergent,
    NonHermitianInput,
    TabulatedOutOfRange,
    TaskFailed,
    TruncationTooTight,
    UndefinedMandel,
)
from .spectrum import (
    SpectrumKind,
    SpectrumModel,
    k,
    k_values,
    ladder_factor_sqrt,
    registered_models,
    rosen_morse_energy,
)
from .states import (
    IdentityReport,
    StateParams,
    StateVector,
    appendix_identity_check,
    closed_form_g,
    closed_form_J,
    eigen_residual,
    ho_hermite_coefficients,
    recurrence_J,
    scaled_coefficients,
    scaled_recurrence,
    xi_from_delta,
)
from .metrics import (
    MandelReport,
    QuadratureReport,
    SweepRow,
    commutator_from_matrices,
    commutator_from_spectrum,
    mandel_report,
    mandel_sweep,
    quadrature_report,
    squeezing_sweep,
    sweep,
)
from .wigner import (
    DensityMatrix,
    NegativitySummary,
    WignerGrid,
    benchmark,
    default_grid,
    f_kernel,
    negativity_summary,
    wigner_fast,
    wigner_naive,
    wigner_naive_grid,
)
