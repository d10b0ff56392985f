"""Exception hierarchy shared by all squeezenet modules."""


class SqueezeNetError(Exception):
    """Base class for library errors."""


class PreconditionError(SqueezeNetError, ValueError):
    """An input violates a structural requirement (symmetry, unitarity, ...)."""


class InputError(SqueezeNetError, ValueError):
    """An input contains non-finite values or has the wrong shape."""


class UncertaintyViolation(SqueezeNetError, ValueError):
    """A covariance matrix violates the Robertson-Schroedinger uncertainty relation."""


class CutoffError(SqueezeNetError):
    """The Fock-space cutoff is too small for the requested accuracy."""

    def __init__(self, message, tail_mass, suggested_cutoff):
        super().__init__(message)
        self.tail_mass = tail_mass
        self.suggested_cutoff = suggested_cutoff
