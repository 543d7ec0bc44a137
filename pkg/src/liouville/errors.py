class LiouvilleError(ValueError):
    pass


class NonMonotone(LiouvilleError):
    pass


class BadSlope(LiouvilleError):
    pass


class DuplicateX(LiouvilleError):
    pass


class SizeMismatch(LiouvilleError):
    pass


class OutOfUnitInterval(LiouvilleError):
    pass


class TooSmall(LiouvilleError):
    pass


class TooShort(LiouvilleError):
    pass


class DimensionMismatch(LiouvilleError):
    pass


class BadDimension(LiouvilleError):
    pass


class BudgetExceeded(LiouvilleError):
    """Raised when a computation would exceed its configured size budget.

    ``result`` carries the best partial answer when one exists.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
