"""Exception types shared across the package.

``DataError`` covers problems with the data itself (constant attributes,
rank-deficient designs, estimates hitting a boundary). ``ParameterError``
covers invalid arguments. The CLI maps the former to exit code 1 and the
latter to exit code 2.
"""


class DataError(ValueError):
    """The input data cannot support the requested computation."""


class ParameterError(ValueError):
    """An argument is outside its valid domain."""


class BoundaryError(DataError):
    """A maximum-likelihood estimate landed on the edge of its interval."""
