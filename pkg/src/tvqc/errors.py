"""Exception types raised by the library."""


class DomainError(ValueError):
    """An argument lies outside the domain of the function."""


class DegenerateDistributionError(DomainError):
    """A zero-variance distribution was passed where a density is required."""


class UndefinedAsymmetryError(DomainError):
    """The asymmetry ratio p_z / p_x is undefined because p_x = 0."""


class NoSolutionError(ValueError):
    """A monotone map cannot be inverted at the requested level."""


class NotBracketedError(ValueError):
    """A curve never crosses the requested level."""
