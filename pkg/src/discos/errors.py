"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: configuration / precondition / size
problems are validation failures (exit 2), numeric-domain problems are
exit 3.
"""


class DiscosError(Exception):
    """Base class for all package-specific errors."""


class ConfigurationError(DiscosError, ValueError):
    """Invalid filter/model/run configuration (bad enum, odd exponent, ...)."""


class DomainError(DiscosError, ValueError):
    """Evaluation point outside the admissible domain."""


class PreconditionError(DiscosError, ValueError):
    """Structural precondition violated (spacing, ordering, step sizes)."""


class SizeError(DiscosError, ValueError):
    """Problem size exceeds a hard guard (enumeration width, support cap)."""


class NumericDomainError(DiscosError, ArithmeticError):
    """Numerical evaluation left its valid domain (non-finite value, pole)."""
