""" Exceptions raised by the scaling app. """


class ScalingError(Exception):
    """
    Base class for failures of the scaling solvers.
    """

    def __init__(self, message):
        super().__init__(message)
        self.message = message


class InversionError(ScalingError):
    """
    The root of x^{-alpha} L(x) = y could not be bracketed or did not converge.
    """
