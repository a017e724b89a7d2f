"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    pass


class PreconditionError(ValueError):
    pass


class EmptySeriesError(ValueError):
    """A series operation would leave no known coefficients."""


class PrecisionError(ArithmeticError):
    pass


class NeedsMorePrimes(ValueError):
    def __init__(self, bad_primes):
        self.bad_primes = list(bad_primes)
        super().__init__(f"no good prime among {self.bad_primes}")
