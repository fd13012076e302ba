"""
Levy tails of the stable motion and the correspondence c* <-> (q1, q2).
"""

import math

import numpy as np
from django.core.exceptions import ValidationError
from scipy import integrate
from scipy.special import gamma

from branching_extremes.apps.stable_motion.constants import (
    LEVY_QUADRATURE_LIMIT,
    TAILS_ROUND_TRIP_TOLERANCE,
    DriftConventions,
    TailSides
)


def c_star_from_tails(alpha, q1, q2):
    """
    c* = (Gamma(1 - alpha) / alpha) (q1 e^{-i pi alpha / 2} + q2 e^{i pi alpha / 2}) for alpha != 1.

    For alpha = 1 the symmetric rule c* = pi q1 applies and asymmetric tails are rejected.
    """
    if alpha == 1.0:
        if abs(q1 - q2) > TAILS_ROUND_TRIP_TOLERANCE * max(q1, q2):
            raise ValidationError({'q2': 'For alpha = 1 the tails must be symmetric.'})
        return complex(math.pi * q1, 0.0)
    rotation = np.exp(-0.5j * math.pi * alpha)
    return complex(gamma(1.0 - alpha) / alpha * (q1 * rotation + q2 * np.conj(rotation)))


def tails_from_c_star(alpha, c_star):
    """
    Invert ``c_star_from_tails``; for alpha = 1, q1 = q2 = Re(c*) / pi.
    """
    if alpha == 1.0:
        if abs(c_star.imag) > TAILS_ROUND_TRIP_TOLERANCE * abs(c_star.real):
            raise ValidationError({'c_star': 'For alpha = 1 only the driftless case Im(c*) = 0 is supported.'})
        weight = c_star.real / math.pi
        return weight, weight
    factor = gamma(1.0 - alpha) / alpha
    total = c_star.real / (factor * math.cos(math.pi * alpha / 2.0))
    difference = -c_star.imag / (factor * math.sin(math.pi * alpha / 2.0))
    return 0.5 * (total + difference), 0.5 * (total - difference)


def levy_tail(params, x, side=TailSides.UPPER):
    """
    v_alpha((x, inf)) = (q1 / alpha) x^{-alpha} or v_alpha((-inf, -x)) = (q2 / alpha) x^{-alpha}.
    """
    values = np.asarray(x, dtype=float)
    if np.any(values <= 0.0):
        raise ValueError(f'Levy tails are evaluated at x > 0, got {x!r}.')
    result = params.tail_weight(side) / params.alpha * values ** -params.alpha
    return float(result) if np.ndim(result) == 0 else result


def tail_asymptote(params, s, x, side=TailSides.UPPER, slow_variation=None):
    """
    The regularly varying approximation P(+-xi_s >= x) ~ (q_side / alpha) s x^{-alpha} L(x).

    ``slow_variation`` is any callable L; it defaults to L = 1, the strictly stable case.
    """
    if not s > 0:
        raise ValueError(f'The duration must be positive, got {s!r}.')
    tail = s * levy_tail(params, x, side)
    if slow_variation is not None:
        tail = tail * slow_variation(x)
    return tail


def _one_sided_integrals(alpha, theta, convention):
    """
    Return int_0^inf (cos(theta y) - 1) y^{-1-alpha} dy and the matching sine integral,
    compensated by theta y under the compensated convention.
    """
    decay = -1.0 - alpha

    def density(y):
        return y ** decay

    cosine_near, _ = integrate.quad(
        lambda y: (math.cos(theta * y) - 1.0) * y ** decay, 0.0, 1.0, limit=LEVY_QUADRATURE_LIMIT,
    )
    cosine_far, _ = integrate.quad(density, 1.0, np.inf, weight='cos', wvar=theta, limit=LEVY_QUADRATURE_LIMIT)
    cosine = cosine_near + cosine_far - 1.0 / alpha
    if convention == DriftConventions.SYMMETRIC:
        return cosine, 0.0

    if convention == DriftConventions.COMPENSATED:
        sine_near, _ = integrate.quad(
            lambda y: (math.sin(theta * y) - theta * y) * y ** decay, 0.0, 1.0, limit=LEVY_QUADRATURE_LIMIT,
        )
        compensation = theta / (alpha - 1.0)
    else:
        # y^{-alpha} singularity at 0 handled by the algebraic weight.
        sine_near, _ = integrate.quad(
            lambda y: theta * np.sinc(theta * y / math.pi), 0.0, 1.0, weight='alg', wvar=(-alpha, 0.0),
            limit=LEVY_QUADRATURE_LIMIT,
        )
        compensation = 0.0
    sine_far, _ = integrate.quad(density, 1.0, np.inf, weight='sin', wvar=theta, limit=LEVY_QUADRATURE_LIMIT)
    return cosine, sine_near + sine_far - compensation


def levy_measure_exponent(params, theta):
    """
    psi(theta) = int (e^{i theta y} - 1 [- i theta y]) v_alpha(dy) by direct quadrature, theta > 0.

    The compensation follows ``params.drift_convention``. Cross-checks c*: the result equals
    -c* theta^alpha, which the selftest oracle suite asserts.
    """
    if not theta > 0:
        raise ValueError(f'theta must be positive, got {theta!r}.')
    cosine, sine = _one_sided_integrals(params.alpha, theta, params.drift_convention)
    return complex((params.q1 + params.q2) * cosine, (params.q1 - params.q2) * sine)
