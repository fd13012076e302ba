""" Exceptions raised by the gw_numerics app. """


class GaltonWatsonNumericsError(Exception):
    """
    Base class for numerical failures in the Galton-Watson machinery.
    """

    def __init__(self, message):
        super().__init__(message)
        self.message = message


class DomainError(GaltonWatsonNumericsError):
    """
    An argument lies outside the domain of the requested function.
    """


class ConvergenceError(GaltonWatsonNumericsError):
    """
    A root finder, ODE solve, fixed-point iteration or quadrature missed its tolerance.
    """


class CoefficientExtractionError(GaltonWatsonNumericsError):
    """
    Cauchy-circle extraction left more truncated mass than the tolerance allows.
    """
