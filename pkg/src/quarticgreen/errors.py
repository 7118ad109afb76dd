"""Exception and warning types raised across the package."""


class QuarticGreenError(Exception):
    """Base class for package errors."""


class DomainError(QuarticGreenError, ValueError):
    """Argument lies outside the supported mathematical domain."""


class ArgumentError(QuarticGreenError, ValueError):
    pass


class ParameterError(QuarticGreenError, ValueError):
    """Physical parameter (mass, coupling, ...) is invalid."""


class RegulatorError(ParameterError):
    pass


class ConfigurationError(QuarticGreenError, ValueError):
    """Lattice or run configuration violates a precondition."""


class DivergenceError(QuarticGreenError, FloatingPointError):
    def __init__(self, step, message="non-finite field"):
        super().__init__(f"{message} at time step {step}")
        self.step = step


class ShapeError(QuarticGreenError, ValueError):
    pass


class CapabilityError(QuarticGreenError, ValueError):
    """Requested order exceeds what the supplied objects provide."""


class ConsistencyError(QuarticGreenError, ValueError):
    pass


class LightlikeMomentumError(QuarticGreenError, ValueError):
    pass


class PrecisionWarning(UserWarning):
    """Finite-difference table indicates cancellation noise."""
