"""Exception hierarchy shared by every module."""


class GenSqueezeError(Exception):
    """Base class for all errors raised by this package."""


class TabulatedOutOfRange(GenSqueezeError, IndexError):
    """A tabulated spectrum was queried beyond its last entry."""


class InvalidXi(GenSqueezeError, ValueError):
    """The squeezing parameter lies outside the open unit disc."""


class NonConvergent(GenSqueezeError):
    """The Fock expansion did not meet its tail criterion before the hard cap."""


class TruncationTooTight(GenSqueezeError):
    """Top coefficients carry too much weight for the requested moments."""


class UndefinedMandel(GenSqueezeError, ZeroDivisionError):
    """Mandel parameter requested for a state with vanishing mean photon number."""


class NonHermitianInput(GenSqueezeError, ValueError):
    """A density matrix failed the Hermiticity check."""


class ConfigInvalid(GenSqueezeError, ValueError):
    """A run configuration failed validation."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class TaskFailed(GenSqueezeError):
    """A dispatched task raised a domain error."""


class InvariantBreach(GenSqueezeError):
    """A computed result violates a property that must hold by construction."""
