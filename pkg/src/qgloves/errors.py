"""Exception types raised by the library."""


class QGlovesError(ValueError):
    """Base class for all library errors."""


class NotHermitian(QGlovesError):
    pass


class BadAxis(QGlovesError):
    pass


class BadDim(QGlovesError):
    pass


class DimMismatch(QGlovesError):
    pass


class BadState(QGlovesError):
    """Input is not a valid density matrix or state vector."""


class NotRotation(QGlovesError):
    pass


class NotNormalized(QGlovesError):
    pass
