"""Exception types shared across the package."""


class DomainError(ValueError):
    """A value falls outside the open domain (or gradient image) of a generator."""


class DegenerateParameterError(ValueError):
    """A parameter value makes a closed form degenerate (zero exponent, division by zero)."""


class LimitParameterError(DegenerateParameterError):
    """A parameter sits on the boundary of a family and is only reachable as a limit."""


class ParseError(ValueError):
    """Input data cannot be read (bad header, missing field, non-numeric entry)."""
