"""Exception types shared across the package.

The CLI maps these onto exit codes: bad argument values are usage errors
(exit 2), file/parse/resource problems are exit 3, and failed numerical
checks are exit 1 (reported, never raised).
"""


class CoefficientParseError(ValueError):
    """A coefficient file is structurally malformed."""


class DomainError(ValueError):
    """An input violates a mathematical precondition (odd weight, c(1) != 1,
    eigenvalue outside the unitarity bound, evaluation point outside the
    proven convergence region, ...)."""


class DepthError(ValueError):
    """A local factor was requested beyond its truncation depth."""


class RankError(ValueError):
    """A least-squares fit has too few or degenerate sample points."""


class ResourceLimitError(RuntimeError):
    """A requested computation exceeds the configured size ceiling."""
