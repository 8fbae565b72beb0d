class SuperZenoError(ValueError):
    """Base class for all errors raised by this package."""


class InvalidDimension(SuperZenoError):
    pass


class InvalidNorm(SuperZenoError):
    pass


class ShapeError(SuperZenoError):
    pass


class InvalidState(SuperZenoError):
    pass


class InvalidTolerance(SuperZenoError):
    pass


class InvalidCandidate(SuperZenoError):
    pass


class UnsupportedOrder(SuperZenoError):
    pass


class UnsupportedParameter(SuperZenoError):
    pass


class DegenerateCase(SuperZenoError):
    pass
