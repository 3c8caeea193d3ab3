"""Exception hierarchy. Every error raised by the package derives from LagisoError."""


class LagisoError(Exception):
    pass


class DimensionMismatch(LagisoError, ValueError):
    pass


class WrongAmbient(LagisoError):
    pass


class OutOfChart(LagisoError, ValueError):
    pass


class NoExactJet(LagisoError):
    pass


class NotLorentzian(LagisoError):
    pass


class DegenerateTangent(LagisoError):
    pass


class NullVector(LagisoError, ValueError):
    pass


class NotLightlikeIsotropic(LagisoError):
    pass


class DegenerateCurve(LagisoError):
    pass


class InvalidParameter(LagisoError, ValueError):
    pass


class SelfCheckFailed(LagisoError):
    """A family's hard-coded constants failed their initial-condition check."""


class NotOnSphere(LagisoError):
    pass


class NotHorizontal(LagisoError):
    pass


class NumericalBlowup(LagisoError, FloatingPointError):
    pass


class SystemMismatch(LagisoError):
    pass
