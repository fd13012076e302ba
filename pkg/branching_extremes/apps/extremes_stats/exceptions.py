""" Exceptions raised by the extremes_stats app. """


class ExtremesStatsError(Exception):
    """
    Base class for estimator and sampler failures.
    """

    def __init__(self, message):
        super().__init__(message)
        self.message = message


class InsufficientSamplesError(ExtremesStatsError):
    """
    A statistic was requested from a sample too small to define it.
    """


class RejectionBudgetExhausted(ExtremesStatsError):
    """
    A rejection sampler used up its attempt budget without an accepted draw.
    """

    def __init__(self, budget, what):
        super().__init__(f'No accepted {what} within {budget} attempts.')
        self.budget = budget


class MissingWLawError(ExtremesStatsError):
    """
    A sampler needs draws of W but the bundle has neither an exact law nor simulated values.
    """
