"""Exception types shared across the toolkit.

The CLI maps these onto exit codes: ``InputError`` -> 1,
``SearchExhausted`` -> 2, anything else -> 3.
"""


class InputError(ValueError):
    """An argument violates a precondition (zero element, composite prime, ...)."""


class DyadicPlaceError(InputError):
    """A symbol operation was asked to work at a prime above 2."""


class ResourceError(InputError):
    """A requested size exceeds a configured hard cap."""


class SearchExhausted(RuntimeError):
    """A bounded search ran out of candidates before succeeding.

    ``partial`` carries whatever was found before the bound was hit.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
