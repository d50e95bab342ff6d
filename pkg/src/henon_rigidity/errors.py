"""Exception types raised across the package."""


class DomainError(ValueError):
    """Input lies outside the region where an operation is defined."""


class SeriesOrderError(ValueError):
    """A truncated series does not carry enough terms for the requested order."""


class Diverged(ArithmeticError):
    """An orbit left the representable range before the requested step count.

    ``step`` is the index of the first iterate whose modulus exceeded the guard
    and ``point`` is that iterate.
    """

    def __init__(self, step: int, point: tuple[complex, complex]):
        super().__init__(f"orbit exceeded the divergence guard at step {step}")
        self.step = step
        self.point = point
