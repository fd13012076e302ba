""" Constants for the scaling app. """


class SlowVariationFamilies:
    """ Families of slowly varying functions L. """

    CONSTANT = 'constant'
    LOG_POWER = 'log_power'

    CHOICES = (
        (CONSTANT, 'L(x) = c'),
        (LOG_POWER, 'L(x) = log(e + x)^r'),
    )


class ThresholdKinds:
    """ Families of deviation thresholds Lambda(t). """

    H_MULTIPLE = 'h_multiple'
    EXPONENTIAL = 'exponential'
    INFINITE = 'infinite'
    POWER_EXPONENTIAL = 'power_exponential'
    CUSTOM = 'custom'

    CHOICES = (
        (H_MULTIPLE, 'Lambda(t) = x h(t)'),
        (EXPONENTIAL, 'Lambda(t) = exp(c lambda t / alpha)'),
        (INFINITE, 'Lambda(t) = inf'),
        (POWER_EXPONENTIAL, 'Lambda(t) = a t^p exp(c lambda t / alpha)'),
        (CUSTOM, 'Lambda(t) given by a callable'),
    )

    # Kinds whose regime the caller must declare.
    DECLARED = (POWER_EXPONENTIAL, CUSTOM)


class ThresholdRegimes:
    """ Growth of Lambda(t) relative to h(t). """

    SUPER = 'super'
    SUB = 'sub'
    CRITICAL = 'critical'

    CHOICES = (
        (SUPER, 'Lambda / h -> inf'),
        (SUB, 'Lambda / h -> 0'),
        (CRITICAL, 'Lambda / h constant'),
    )


class NormingKinds:
    """ Normings of the almost-sure statements. """

    LIMINF = 'liminf'
    LOGSCALE = 'logscale'

    CHOICES = (
        (LIMINF, 'H(exp(-lambda t) log t)'),
        (LOGSCALE, 'H(exp(-lambda t) / t)'),
    )


# Bisection on log x.
INVERSION_MAX_ITERATIONS = 200
INVERSION_XTOL = 1e-14
INVERSION_BRACKET_STEPS = 200

# x^{-alpha} L(x) must be strictly decreasing on this log grid.
MONOTONICITY_GRID = (-12.0, 12.0, 481)
LOG_POWER_MAX_EXPONENT = 4.0

# Grid on which declared threshold regimes are checked.
REGIME_CHECK_HORIZONS = (1.0, 20.0, 20)
REGIME_CHECK_SLACK = 1e-9

# Partial-sum heuristic for sum_n n Lambda(n)^{-alpha} L(Lambda(n)).
SUMMABILITY_TERMS = 400
SUMMABILITY_TAIL_FRACTION = 1e-3
