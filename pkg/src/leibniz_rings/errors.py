"""Exception types raised across the package."""


class LeibnizError(Exception):
    """Base class for all errors raised by leibniz_rings."""


class FactorOne(LeibnizError, ValueError):
    pass


class LengthMismatch(LeibnizError, ValueError):
    pass


class AmbientMismatch(LeibnizError, ValueError):
    pass


class IllDefinedMap(LeibnizError, ValueError):
    pass


class InfiniteGroup(LeibnizError, ValueError):
    pass


class NotPrime(LeibnizError, ValueError):
    pass


class IllDefinedBracket(LeibnizError, ValueError):
    """A structure constant is not annihilated by the order of its generators."""

    def __init__(self, i, j, factor, message=None):
        self.i, self.j, self.factor = i, j, factor
        super().__init__(
            message
            or f"bracket [e{i}, e{j}] is not annihilated by the order of factor {factor}"
        )


class NotLeftLeibniz(LeibnizError, ValueError):
    pass


class NotAnIdeal(LeibnizError, ValueError):
    pass


class ClosureStepLimit(LeibnizError, RuntimeError):
    pass


class BadParameters(LeibnizError, ValueError):
    pass


class BudgetExceeded(LeibnizError, ValueError):
    pass


class NotAutomorphism(LeibnizError, ValueError):
    pass


class RingFileError(LeibnizError, ValueError):
    """Malformed ring or census file; message carries the offending field."""
