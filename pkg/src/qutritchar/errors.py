"""Exception types shared across the package."""


class QutritCharError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(QutritCharError):
    """A configuration file or profile is malformed (CLI exit code 2)."""


class InvalidState(QutritCharError):
    """A density matrix or state vector violates its physical contract."""


class MatrixExpFailure(QutritCharError):
    """The matrix exponential produced non-finite entries."""


class UnsupportedOrder(QutritCharError):
    """A Taylor expansion order outside {0, 1, 2} was requested."""


class NonAffineDependence(QutritCharError):
    """A coefficient extracted from the generator varied with step size.

    The second-order expansion coefficients are affine in each of the
    perturbed parameters; a step-size dependence beyond rounding signals a
    unit-convention bug somewhere upstream.
    """


class DegenerateUpdate(QutritCharError):
    """Every particle weight underflowed to zero in a Bayes update."""


class SingularCovariance(QutritCharError):
    """The ensemble covariance is unusable even as per-parameter variances."""


class MissingReferencePulse(QutritCharError):
    """Gate validation was requested without a reference pulse file."""
