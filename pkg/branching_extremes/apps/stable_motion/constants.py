""" Constants for the stable_motion app. """


class TailSides:
    """ Half-lines of the Levy measure. """

    UPPER = 'upper'
    LOWER = 'lower'

    CHOICES = (
        (UPPER, 'Upper tail (x, inf)'),
        (LOWER, 'Lower tail (-inf, -x)'),
    )


class DriftConventions:
    """ How the exponent is compensated, by the range of alpha. """

    UNCOMPENSATED = 'uncompensated'  # alpha < 1
    SYMMETRIC = 'symmetric'  # alpha = 1, q1 = q2 and no drift
    COMPENSATED = 'compensated'  # alpha > 1

    CHOICES = (
        (UNCOMPENSATED, 'int (e^{i theta y} - 1) v(dy)'),
        (SYMMETRIC, 'Symmetric Cauchy'),
        (COMPENSATED, 'int (e^{i theta y} - 1 - i theta y) v(dy)'),
    )


TAILS_ROUND_TRIP_TOLERANCE = 1e-12
STRICT_STABILITY_SLACK = 1e-12

# Running-supremum proxy: sub-increments per edge.
DEFAULT_PATH_SUBSTEPS = 16

# Brute-force Levy-measure quadrature.
LEVY_QUADRATURE_LIMIT = 400
